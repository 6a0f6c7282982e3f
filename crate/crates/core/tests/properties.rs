use monocrystal::cartan::{canonical_shift, fundamental_seed, CartanData};
use monocrystal::crystal::{export_graph, generate_quotient, load_graph, Format};
use monocrystal::embed::{phi_embed, tensor_eps_phi, tensor_op};
use monocrystal::monomial::Monomial;
use monocrystal::tableaux::{enumerate_tableaux, Indexed, Realization, Rules, Tableau};
use proptest::prelude::*;

const TYPES: [&str; 12] =
    ["A1~3", "B1~3", "C1~2", "D1~4", "A2~4", "A2dag~4", "A2~5", "D2~3", "E1~6", "F1~4", "G1~2", "D3~4"];

fn monomial_in(cd: &CartanData) -> impl Strategy<Value = Monomial> {
    let n = cd.n();
    let s = cd.s.clone();
    (any::<bool>(), prop::collection::vec((0..=n, -6i32..=6, prop::sample::select(vec![-2, -1, 1, 2])), 1..7))
        .prop_map(move |(flip, terms)| {
            Monomial::from_terms(
                terms.into_iter().map(|(i, g, e)| (i, 2 * g + (s[i] as i32 + flip as i32) % 2, e)),
            )
        })
}

fn typed_monomial() -> impl Strategy<Value = (CartanData, Monomial)> {
    prop::sample::select(TYPES.to_vec()).prop_flat_map(|name| {
        let cd = CartanData::parse(name).unwrap();
        monomial_in(&cd).prop_map(move |m| (cd.clone(), m))
    })
}

/// A seed together with a random walk of `f` and `e` steps.
fn walk() -> impl Strategy<Value = (CartanData, usize, Vec<(usize, bool)>)> {
    prop::sample::select(vec![("A1~3", 1), ("D1~4", 2), ("G1~2", 2), ("C1~2", 1), ("B1~3", 3)]).prop_flat_map(
        |(name, ell)| {
            let cd = CartanData::parse(name).unwrap();
            let n = cd.n();
            prop::collection::vec((0..=n, any::<bool>()), 0..8).prop_map(move |w| (cd.clone(), ell, w))
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn text_form_round_trips((_cd, m) in typed_monomial()) {
        let text = m.to_string();
        prop_assert_eq!(text.parse::<Monomial>().unwrap(), m);
    }

    #[test]
    fn raise_and_lower_are_inverse((cd, m) in typed_monomial()) {
        let c = cd.matrix();
        for i in cd.all_nodes() {
            if let Some(f) = m.lower(c, i) {
                prop_assert_eq!(f.raise(c, i), Some(m.clone()));
                prop_assert_eq!(f.eps(i), m.eps(i) + 1);
                prop_assert_eq!(f.phi(i), m.phi(i) - 1);
            } else {
                prop_assert_eq!(m.phi(i), 0);
            }
            if let Some(e) = m.raise(c, i) {
                prop_assert_eq!(e.lower(c, i), Some(m.clone()));
            } else {
                prop_assert_eq!(m.eps(i), 0);
            }
            prop_assert_eq!(m.phi(i) - m.eps(i), m.u_total(i));
        }
    }

    #[test]
    fn operators_keep_parity((cd, m) in typed_monomial()) {
        let c = cd.matrix();
        let before = m.admissibility(&cd.s);
        for i in cd.all_nodes() {
            for next in [m.lower(c, i), m.raise(c, i)].into_iter().flatten() {
                prop_assert_eq!(next.admissibility(&cd.s), before);
            }
        }
    }

    #[test]
    fn operators_commute_with_grade_shifts((cd, m) in typed_monomial(), k in -5i32..=5) {
        let c = cd.matrix();
        let k = 2 * k;
        for i in cd.all_nodes() {
            let a = m.tau(k).lower(c, i).map(|x| x.forget_ledger());
            let b = m.lower(c, i).map(|x| x.tau(k).forget_ledger());
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn ledger_counts_lowerings((cd, m) in typed_monomial(), word in prop::collection::vec(0usize..9, 0..10)) {
        let c = cd.matrix();
        let mut x = m.clone();
        let mut count = vec![0i32; cd.n() + 1];
        for i in word {
            let i = i % (cd.n() + 1);
            if let Some(y) = x.lower(c, i) {
                x = y;
                count[i] += 1;
            }
        }
        for i in cd.all_nodes() {
            prop_assert_eq!(x.ledger_at(i) - m.ledger_at(i), count[i]);
            let drop: i32 = cd.all_nodes().iter().map(|&j| c.entry(i, j) * count[j]).sum();
            prop_assert_eq!(x.u_total(i), m.u_total(i) - drop);
        }
    }

    #[test]
    fn embedding_tracks_the_monomial((cd, ell, word) in walk()) {
        let c = cd.matrix();
        let shift = canonical_shift(&cd);
        let seed = fundamental_seed(&cd, ell, &shift).unwrap();
        let mut m = seed.clone();
        for (i, raise) in word {
            if let Some(y) = if raise { m.raise(c, i) } else { m.lower(c, i) } {
                m = y;
            }
        }
        let window = (-40, 40);
        let w = phi_embed(&cd, &m, &seed, &shift, window).unwrap();
        for i in cd.all_nodes() {
            prop_assert_eq!(tensor_eps_phi(c, &w, i), (Some(m.eps(i)), Some(m.phi(i))));
            for raise in [true, false] {
                let by_word = tensor_op(c, &w, i, raise);
                let next = if raise { m.raise(c, i) } else { m.lower(c, i) };
                let by_mono = next.map(|y| phi_embed(&cd, &y, &seed, &shift, window).unwrap());
                prop_assert_eq!(by_word, by_mono);
            }
        }
    }

    #[test]
    fn tableau_text_round_trips(n in 4usize..=6, pick in any::<prop::sample::Index>()) {
        let tabs = enumerate_tableaux(Rules::D, n, 2, 1, 1);
        let t = pick.get(&tabs);
        prop_assert_eq!(t.to_string().parse::<Tableau>().unwrap(), t.clone());
        let x = Indexed::new(t.entries.clone(), 3, 1);
        prop_assert_eq!(x.to_string().parse::<Indexed>().unwrap(), x);
    }

    #[test]
    fn realization_labels_are_tau_periodic(j in -6i32..6, pick in any::<prop::sample::Index>()) {
        let rz = Realization::new("C1~3".parse().unwrap(), 2).unwrap();
        let els = rz.elements();
        let x = pick.get(&els);
        let y = Indexed::new(x.entries.clone(), x.j + j, x.k);
        let m = rz.monomial(&y).unwrap();
        prop_assert_eq!(rz.locate(&m), Some(y));
    }
}

#[test]
fn exports_are_deterministic_and_reload() {
    let cd = CartanData::parse("G1~2").unwrap();
    let seed: Monomial = "2_0 0_2^-1".parse().unwrap();
    let a = generate_quotient(&cd, &seed, 4, 1000).unwrap();
    let b = generate_quotient(&cd, &seed, 4, 1000).unwrap();
    let json = export_graph(&a, Format::Json);
    assert_eq!(json, export_graph(&b, Format::Json));
    assert_eq!(export_graph(&a, Format::Dot), export_graph(&b, Format::Dot));
    let back = load_graph(&json).unwrap();
    assert_eq!(export_graph(&back, Format::Json), json);
}
