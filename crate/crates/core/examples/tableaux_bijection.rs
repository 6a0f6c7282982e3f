//! Admissible tableaux against the monomial crystal they should index.

use monocrystal::tableaux::{enumerate_tableaux, rules_for, sigma, sigma_prime, BoxTable, Tableau};
use monocrystal::verify::oracle_bijection;

fn main() {
    let ty = "D1~6".parse().unwrap();
    let table = BoxTable::new(ty, false).unwrap();
    let rules = rules_for(ty).unwrap();
    for (ell, h, r) in [(2, 2, 0), (4, 2, 1), (4, 1, 2), (3, 1, 1)] {
        let size = oracle_bijection(&table, rules, ell, h, r).unwrap();
        println!("l={ell} h={h} r={r}: {size} tableaux, same graph as the monomials");
    }
    let tabs = enumerate_tableaux(rules, 6, 4, 2, 1);
    let sample: Vec<&Tableau> = tabs.iter().step_by(tabs.len() / 5 + 1).collect();
    for t in sample {
        let s = sigma(rules, 6, t);
        println!("{t}  sigma-> {s}  back-> {}", sigma_prime(rules, 6, &s));
    }
}
