//! Indexed tableaux for a whole level-zero component, with e_0 and f_0.

use monocrystal::tableaux::Realization;
use monocrystal::verify::oracle_realization;

fn main() {
    let rz = Realization::new("C1~3".parse().unwrap(), 2).unwrap();
    println!("seed {}  period {}", rz.seed().unwrap(), rz.period());
    println!("{} elements in one period", oracle_realization(&rz).unwrap());
    for x in rz.elements().into_iter().take(12) {
        let m = rz.monomial(&x).unwrap();
        let f0 = rz.affine_op(&x, false).map(|y| y.to_string()).unwrap_or("0".into());
        println!("{x:<24} {m:<40} f0 -> {f0}");
    }
}
