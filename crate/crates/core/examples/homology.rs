// Integral homology of every fixture complex, with torsion orders and the
// Euler characteristic as a sanity check.

use diffchar::fixtures;

fn main() {
    for name in fixtures::FIXTURE_NAMES {
        let cx = fixtures::complex_by_name(name).unwrap();
        let groups: Vec<String> = (0..=cx.dim())
            .map(|n| {
                let h = cx.homology(n);
                let mut parts: Vec<String> = h.torsion.iter().map(|d| format!("Z/{d}")).collect();
                if h.betti > 0 {
                    parts.insert(0, if h.betti == 1 { "Z".into() } else { format!("Z^{}", h.betti) });
                }
                format!("H{n} = {}", if parts.is_empty() { "0".into() } else { parts.join(" + ") })
            })
            .collect();
        println!("{name:>10}  χ = {:>2}   {}", cx.euler_characteristic(), groups.join(", "));
    }
}
