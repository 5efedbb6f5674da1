// Holonomy along closed curves and surfaces, transition factors between
// fillings of a common boundary, and the hermitian pairing they induce.

use diffchar::cochain::{q, Cochain};
use diffchar::character::DiffChar;
use diffchar::fixtures;
use diffchar::holonomy::{hermitian_pairing, holonomy, transition_factor, Amplitude, Filling};
use diffchar::simplicial::SimplicialMap;

fn main() -> diffchar::Result<()> {
    let t2 = fixtures::torus();
    let h = fixtures::poincare_character(&t2);
    let s1 = t2.left().clone();
    let gamma1 = t2.left_section(0)?;
    println!("hol(i×i, γ₁) = {}", holonomy(&h, &gamma1, &s1.fundamental_cycle()?)?);
    let gamma2 = SimplicialMap::new(s1.clone(), t2.complex().clone(), (0..3).map(|b| t2.vertex(0, b)).collect())?;
    println!("hol(i×i, γ₂) = {}", holonomy(&h, &gamma2, &s1.fundamental_cycle()?)?);

    // two paths from v0 to v1 on S1_3 under a topologically trivial character
    let eta = Cochain::from_terms(&s1, 1, &[(&[0, 1], q(1, 5)), (&[0, 2], q(2, 7)), (&[1, 2], q(-1, 3))])?;
    let g = DiffChar::iota(s1.clone(), &eta);
    let w = fixtures::interval();
    let direct = Filling::new(SimplicialMap::new(w.clone(), s1.clone(), vec![0, 1])?, w.fundamental_cycle()?)?;
    let w2 = fixtures::interval2();
    let around = Filling::new(SimplicialMap::new(w2.clone(), s1.clone(), vec![0, 2, 1])?, w2.fundamental_cycle()?)?;
    let t = transition_factor(&g, &direct, &around)?;
    println!("t(direct, around) = {t}   (∫ η over the loop around − direct)");
    let one = Amplitude::one();
    println!("⟨[direct,1],[direct,1]⟩ phase = {}", hermitian_pairing(&g, &direct, &one, &direct, &one)?.phase);
    println!("⟨[direct,1],[around,1]⟩ phase = {}", hermitian_pairing(&g, &direct, &one, &around, &one)?.phase);
    Ok(())
}
