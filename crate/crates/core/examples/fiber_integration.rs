// Integration over the fiber of product bundles: i×i integrated over the
// second circle gives back i, and a finite fiber just sums the sheets.

use diffchar::character::GradedChar;
use diffchar::fiber::{fiber_integrate, TransferData};
use diffchar::fixtures;
use diffchar::random;
use diffchar::simplicial::ProductComplex;

fn main() -> diffchar::Result<()> {
    let t2 = fixtures::torus();
    let fiber = t2.right().fundamental_cycle()?;
    let t = TransferData::product(&t2, &fiber)?;
    println!("transfer EZ(− ⊗ [S1_3]) is a chain map: {}", t.is_chain_map());
    let out = fiber_integrate(&fixtures::poincare_character(&t2), &t)?;
    let i = fixtures::winding_character(t2.left());
    println!("π̂_!(i×i) = i: {}", out.equals(&GradedChar::Positive(i)));

    // degree equal to the fiber dimension lands in degree 0
    let ext = fixtures::winding_character(t2.right()).pullback(t2.proj_right())?;
    match fiber_integrate(&ext, &t)? {
        GradedChar::Low(c) => println!("π̂_!(p₂^*i) has degree {}: {:?}", c.degree(), c.cocycle().map(diffchar::verify::fmt_cochain)),
        GradedChar::Positive(p) => println!("unexpected positive degree {}", p.degree()),
    }

    // two points: a sum over the sheets
    let two = fixtures::two_points();
    let prod = ProductComplex::new(fixtures::circle(), two.clone());
    let sheets = two.chain(0, &[(&[0], 1), (&[1], 1)])?;
    let t = TransferData::product(&prod, &sheets)?;
    let mut rng = random::rng(5);
    let h = random::product_character(&mut rng, &prod, 1);
    let summed = fiber_integrate(&h, &t)?;
    let by_hand = h.pullback(&prod.left_section(0)?)?.add(&h.pullback(&prod.left_section(1)?)?)?;
    println!("two-point fiber sums the sheets: {}", summed.equals(&GradedChar::Positive(by_hand)));
    Ok(())
}
