// Sections along a map: find_section either produces a relative character
// projecting to h or reports the obstruction φ^*c(h).

use std::sync::Arc;

use diffchar::error::Error;
use diffchar::fixtures;
use diffchar::random;
use diffchar::relative::{descend_kernel, find_section, identity_cone, incl_flat};
use diffchar::simplicial::MappingCone;
use diffchar::verify::fmt_cochain;

fn main() -> diffchar::Result<()> {
    let (s2, equator) = fixtures::sphere_with_equator();
    let cone = Arc::new(MappingCone::new(equator));
    let mut rng = random::rng(9);
    let h = random::character(&mut rng, &s2, 2);
    let sec = find_section(&cone, &h)?;
    println!("section of a degree-2 character along the equator of S2_4':");
    println!("  p̆(section) = h: {}", sec.project().equals(&h));
    println!("  cov = {}", fmt_cochain(sec.cov()));

    // ĩ of a flat character on the equator lies in ker p̆ and descends again
    let g = random::flat_character(&mut rng, cone.a(), 2);
    let f = incl_flat(&cone, &g)?;
    println!("  p̆∘ĩ = 0: {}, descend_kernel∘ĩ = id: {}", f.project().is_zero(), descend_kernel(&f)?.equals(&g));

    // on the identity of RP2_6 the torsion class obstructs
    let rp2 = fixtures::rp2();
    match find_section(&identity_cone(&rp2), &fixtures::rp2_flat_character(&rp2)) {
        Err(Error::NoSection { witness }) => println!("j(u) along id(RP2_6): no section, obstruction {witness}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
