//! Embeds a fundamental component into a tensor product of elementary crystals.

use monocrystal::cartan::{canonical_shift, fundamental_seed, CartanData};
use monocrystal::embed::{phi_embed, verify_strict, ElemFactor};

fn main() {
    let cd = CartanData::parse("G1~2").unwrap();
    let shift = canonical_shift(&cd);
    let seed = fundamental_seed(&cd, 1, &shift).unwrap();
    let m = seed.lower(cd.matrix(), 1).and_then(|m| m.lower(cd.matrix(), 2)).unwrap();
    let w = phi_embed(&cd, &m, &seed, &shift, (-12, 12)).unwrap();
    println!("{m} has {} factors; the ones away from zero:", w.factors.len());
    for (pos, x) in w.factors.iter().enumerate() {
        let trivial = match x {
            ElemFactor::Bi { l, .. } => *l == 0,
            ElemFactor::Tlambda(p) => p.iter().all(|&v| v == 0),
            ElemFactor::Cunit => true,
        };
        if !trivial {
            println!("  {pos:>3}: {x}");
        }
    }
    let report = verify_strict(&cd, &seed, &shift, 6);
    println!("{} nodes, {} checks, {} violations", report.nodes, report.checks, report.violations.len());
}
