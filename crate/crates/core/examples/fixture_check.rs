//! Runs every fixture in the corpus against the crystal engine.

use monocrystal::verify::{check_fixture, fixture_dir, fixture_names, load_fixture};

fn main() {
    let dir = fixture_dir();
    let mut bad = 0;
    for name in fixture_names(&dir).unwrap() {
        let f = load_fixture(&dir, &name).unwrap();
        let report = check_fixture(&f);
        println!("{:<12} {} checks {}", name, report.checks.len(), if report.passed() { "pass" } else { "FAIL" });
        for c in report.failures() {
            println!("    {}: {}", c.name, c.detail);
            bad += 1;
        }
    }
    std::process::exit(if bad == 0 { 0 } else { 1 });
}
