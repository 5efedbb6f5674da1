// The Poincaré character i×i on the torus: values on the coordinate circles,
// total curvature, and the internal product with its commutativity defect.

use diffchar::cochain::pair;
use diffchar::fixtures;
use diffchar::product::{commutativity_defect, internal_product};
use diffchar::verify::fmt_cochain;

fn main() -> diffchar::Result<()> {
    let t2 = fixtures::torus();
    let h = fixtures::poincare_character(&t2);
    let (g1, g2, fund) = fixtures::torus_cycles(&t2);
    println!("i×i(γ₁) = {}", h.evaluate(&g1)?);
    println!("i×i(γ₂) = {}", h.evaluate(&g2)?);
    println!("⟨curv(i×i), [T2_9]⟩ = {}", pair(h.curvature(), &fund)?);
    println!("c(i×i) = {}", h.char_class());

    let a = fixtures::winding_character(t2.left()).pullback(t2.proj_left())?;
    let b = fixtures::winding_character(t2.right()).pullback(t2.proj_right())?;
    let ab = internal_product(&a, &b)?;
    println!("p₁^*i * p₂^*i = i×i: {}", ab.equals(&h));
    let (defect, curv) = commutativity_defect(&b, &a)?;
    println!("b*a + a*b: topologically trivial {}, curvature {}", defect.char_class().is_zero(), fmt_cochain(&curv));
    Ok(())
}
