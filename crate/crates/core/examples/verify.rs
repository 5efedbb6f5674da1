// Runs every verification suite once and prints a line per suite; pass a
// sample count as the first argument.

use diffchar::verify::{run_suite, SuiteOptions, SUITES};

fn main() -> diffchar::Result<()> {
    let samples = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let opts = SuiteOptions { samples, ..SuiteOptions::default() };
    for name in SUITES {
        let t = std::time::Instant::now();
        let r = run_suite(name, &opts)?;
        let probes = r.checks.iter().filter(|c| c.informational && !c.passed).count();
        println!("{name:>15}: {} — {} checks, {probes} probes disagree ({:.1?})", if r.passed() { "pass" } else { "FAIL" }, r.checks.len(), t.elapsed());
        for f in r.failures() {
            println!("    {}: {}", f.name, f.witness.as_deref().unwrap_or(""));
        }
    }
    Ok(())
}
