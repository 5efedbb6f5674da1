// The external product evaluated two ways on S1_3 × RP2_6: directly, and by
// splitting cycles through Künneth and evaluating factor by factor.

use diffchar::fixtures;
use diffchar::product::{bb_evaluate, external_product, kunneth_split};
use diffchar::random;
use diffchar::simplicial::{Chain, ProductComplex};

fn main() -> diffchar::Result<()> {
    let prod = ProductComplex::new(fixtures::circle(), fixtures::rp2());
    let mut rng = random::rng(11);
    let h = random::character(&mut rng, prod.left(), 1);
    let others = [("random degree-1", random::character(&mut rng, prod.right(), 1)), ("j(u)", fixtures::rp2_flat_character(prod.right()))];
    for (label, f) in others {
        let hf = external_product(&prod, &h, &f)?;
        let n = h.degree() + f.degree() - 1;
        let hn = prod.complex().homology(n);
        println!("h × {label}, on H_{n}(S1_3 × RP2_6) (betti {}, torsion {:?}):", hn.betti, hn.torsion);
        for g in &hn.generators {
            let c = Chain::new(n, g.clone());
            let split = kunneth_split(&prod, &c)?;
            println!("  direct {:>6}   factorwise {:>6}   Künneth order {}", hf.evaluate(&c)?.to_string(), bb_evaluate(&prod, &h, &f, &c)?.to_string(), split.order);
        }
    }
    Ok(())
}
