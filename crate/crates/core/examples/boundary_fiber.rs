// Fibers with boundary: integrating over the edge fiber of S1_3 × I yields a
// topologically trivial character, and the homotopy formula for the
// rotation of the circle.

use diffchar::fiber::{boundary_fiber_integrate, homotopy_defect};
use diffchar::fixtures;
use diffchar::random;
use diffchar::simplicial::ProductComplex;
use diffchar::verify::{fmt_cochain, rotation_homotopy};

fn main() -> diffchar::Result<()> {
    let prod = ProductComplex::new(fixtures::circle(), fixtures::interval());
    let edge = prod.right().fundamental_cycle()?;
    let mut rng = random::rng(3);
    for k in 1..=2 {
        let h = random::product_character(&mut rng, &prod, k);
        let b = boundary_fiber_integrate(&h, &prod, &edge)?;
        println!("degree {k}: ∂-fiber integral = ι(±∮ curv): {}", b.boundary.equals(&b.predicted));
        println!("          p̆ of the relative character agrees: {}", b.relative.project().equals(&b.boundary));
        println!("          cov = {}", fmt_cochain(b.relative.cov()));
    }

    // rotation of S1_3 by one step, realised on S1_6 × I
    let (hprod, f0, f1, hmap) = rotation_homotopy();
    let i = fixtures::winding_character(f0.target());
    let d = homotopy_defect(&i, &f0, &f1, &hprod, &hmap)?;
    println!("rotation {:?} ≃ {:?}: f₁^*i − f₀^*i − ι(∮ H^* curv) = 0: {}", f0.vertex_map(), f1.vertex_map(), d.is_zero());
    Ok(())
}
