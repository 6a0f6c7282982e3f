//! Weyl's dimension formula next to breadth-first counts of finite crystals.

use monocrystal::cartan::FiniteType;
use monocrystal::verify::{bfs_dim, weyl_dim};

fn main() {
    for (ft, hw) in [
        (FiniteType::G2, vec![1, 0]),
        (FiniteType::F4, vec![0, 0, 0, 1]),
        (FiniteType::E6, vec![1, 0, 0, 0, 0, 0]),
        (FiniteType::B(4), vec![0, 0, 0, 1]),
        (FiniteType::C(3), vec![0, 1, 1]),
    ] {
        let w = weyl_dim(ft, &hw);
        let b = bfs_dim(ft, &hw, 100_000).unwrap();
        println!("{ft:?} {hw:?}: weyl {w}, crystal {b}");
    }
}
