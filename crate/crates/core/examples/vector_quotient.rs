//! The vector representation of D_n^(1) as a quotient of a box monomial.

use monocrystal::crystal::{export_graph, generate_quotient, Format};
use monocrystal::tableaux::{BoxTable, Symbol};

fn main() {
    let n = 5;
    let table = BoxTable::new(format!("D1~{n}").parse().unwrap(), false).unwrap();
    let seed = table.entry(Symbol::Num(1), 0).unwrap();
    let g = generate_quotient(table.cartan(), &seed, 2 * n as i32 - 4, 10_000).unwrap();
    println!("seed {seed}: {} classes", g.len());
    for k in 0..g.len() {
        for i in table.cartan().all_nodes() {
            if let Some(t) = g.f_target(k, i) {
                println!("  {} --{i}--> {}", g.node(k), g.node(t));
            }
        }
    }
    println!("{}", export_graph(&g, Format::Dot));
}
