// The structure maps around a character: curvature, characteristic class,
// topological trivializations ι and flat characters j.

use diffchar::character::DiffChar;
use diffchar::cochain::{q, Cochain};
use diffchar::fixtures;

fn main() -> diffchar::Result<()> {
    let s1 = fixtures::circle();
    let i = fixtures::winding_character(&s1);
    let fund = s1.fundamental_cycle()?;
    println!("winding character i on S1_3");
    println!("  i(v1 − v0)   = {}", i.evaluate(&s1.chain(0, &[(&[1], 1), (&[0], -1)])?)?);
    println!("  c(i)         = {}", i.char_class());
    println!("  ∫ curv i     = {}", diffchar::cochain::pair(i.curvature(), &fund)?);
    println!("  trivializable: {}", i.trivialization().is_ok());

    // a topologically trivial character and its trivialization
    let eta = Cochain::from_terms(&s1, 0, &[(&[0], q(1, 4)), (&[2], q(-2, 5))])?;
    let t = DiffChar::iota(s1.clone(), &eta);
    let back = DiffChar::iota(s1.clone(), &t.trivialization()?);
    println!("ι(η) with η = 1/4·v0 − 2/5·v2: c = {}, ι(trivialization) = ι(η): {}", t.char_class(), back.equals(&t));

    // characters with prescribed curvature
    let omega = i.curvature().scale_int(2);
    let h = DiffChar::from_curvature(s1.clone(), &omega)?;
    println!("from_curvature(2·curv i): curv matches {}, c = {}", h.curvature() == &omega, h.char_class());

    // the flat Z/2 character on RP2
    let rp2 = fixtures::rp2();
    let ju = fixtures::rp2_flat_character(&rp2);
    let z = fixtures::rp2_torsion_cycle(&rp2);
    println!("j(u) on RP2_6: flat {}, value on the torsion loop {}, via torsion formula {}", ju.is_flat(), ju.evaluate(&z)?, ju.evaluate_torsion(&z)?);
    println!("  c(j(u)) = {}   (a torsion class)", ju.char_class());
    Ok(())
}
