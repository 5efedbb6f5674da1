//! The bundled fixture corpus: small complexes, maps between them, and the
//! named characters `i`, `i × i` and `j(u)`.

use std::sync::Arc;

use crate::character::{DiffChar, FlatClass};
use crate::cochain::{q, Cochain};
use crate::product::external_product;
use crate::simplicial::{Chain, Complex, ProductComplex, Simplex, SimplicialMap};

fn build(name: &str, n: usize, gens: &[Simplex]) -> Arc<Complex> {
    Arc::new(Complex::new(name, n, gens).expect("fixture complexes are valid"))
}

pub fn point() -> Arc<Complex> {
    build("point", 1, &[])
}

pub fn two_points() -> Arc<Complex> {
    build("two_points", 2, &[])
}

/// One edge `[0,1]`.
pub fn interval() -> Arc<Complex> {
    build("interval", 2, &[vec![0, 1]])
}

/// Two edges `[0,1], [1,2]`.
pub fn interval2() -> Arc<Complex> {
    build("interval2", 3, &[vec![0, 1], vec![1, 2]])
}

pub fn circle() -> Arc<Complex> {
    build("S1_3", 3, &[vec![0, 1], vec![0, 2], vec![1, 2]])
}

pub fn hexagon() -> Arc<Complex> {
    let gens: Vec<Simplex> = (0..6).map(|i| {
        let mut e = vec![i, (i + 1) % 6];
        e.sort();
        e
    }).collect();
    build("S1_6", 6, &gens)
}

/// The solid 3-simplex.
pub fn simplex3() -> Arc<Complex> {
    build("D3", 4, &[vec![0, 1, 2, 3]])
}

pub fn sphere() -> Arc<Complex> {
    build("S2_4", 4, &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])
}

/// `∂Δ³` again, viewed as two discs glued along the equator `[0,1,2]`
/// (the face `[0,1,2]` is the southern cap). The equator is returned as the
/// inclusion of a copy of `S1_3`.
pub fn sphere_with_equator() -> (Arc<Complex>, SimplicialMap) {
    let s2 = build("S2_4'", 4, &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);
    let eq = SimplicialMap::new(circle(), s2.clone(), vec![0, 1, 2]).expect("equator is a subcomplex");
    (s2, eq)
}

/// `S1_3 × S1_3`, nine vertices, staircase triangulation.
pub fn torus() -> ProductComplex {
    let s1 = circle();
    ProductComplex::named(s1.clone(), s1, "T2_9")
}

/// Minimal six-vertex real projective plane.
pub fn rp2() -> Arc<Complex> {
    let faces = [
        [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
        [1, 2, 4], [1, 3, 4], [1, 3, 5], [2, 3, 5], [2, 4, 5],
    ];
    build("RP2_6", 6, &faces.iter().map(|f| f.to_vec()).collect::<Vec<_>>())
}

/// The loop `[0,1] + [1,3] − [0,3]` generates `H_1(RP2_6) = Z/2`.
pub fn rp2_torsion_cycle(rp2: &Complex) -> Chain {
    rp2.chain(1, &[(&[0, 1], 1), (&[1, 3], 1), (&[0, 3], -1)]).expect("edges exist")
}

/// Inclusion of the torsion loop, as a map `S1_3 → RP2_6`.
pub fn rp2_torsion_loop(rp2: &Arc<Complex>) -> SimplicialMap {
    SimplicialMap::new(circle(), rp2.clone(), vec![0, 1, 3]).expect("loop edges exist")
}

/// Klein bottle on a 3×3 grid: squares `(i,j)` glued straight in the first
/// direction and with the flip `i ↦ −i` across the second.
pub fn klein() -> Arc<Complex> {
    let (m, n) = (3usize, 3usize);
    let v = |i: usize, j: usize| if j < n { i % m + m * j } else { (m - i % m) % m };
    let mut gens = Vec::new();
    for i in 0..m {
        for j in 0..n {
            let (a, b, c, d) = (v(i, j), v(i + 1, j), v(i, j + 1), v(i + 1, j + 1));
            for mut t in [vec![a, b, d], vec![a, c, d]] {
                t.sort();
                gens.push(t);
            }
        }
    }
    build("Klein_K", m * n, &gens)
}

/// The closed fixtures of the 3×3-diagram checks.
pub fn closed_surfaces() -> Vec<Arc<Complex>> {
    vec![circle(), sphere(), torus().complex().clone(), rp2(), klein()]
}

/// Named lookup for the CLI.
pub fn complex_by_name(name: &str) -> Option<Arc<Complex>> {
    Some(match name {
        "point" => point(),
        "two_points" => two_points(),
        "interval" => interval(),
        "interval2" => interval2(),
        "S1_3" => circle(),
        "S1_6" => hexagon(),
        "D3" => simplex3(),
        "S2_4" => sphere(),
        "S2_4'" => sphere_with_equator().0,
        "T2_9" => torus().complex().clone(),
        "RP2_6" => rp2(),
        "Klein_K" => klein(),
        _ => return None,
    })
}

pub const FIXTURE_NAMES: [&str; 12] =
    ["point", "two_points", "interval", "interval2", "S1_3", "S1_6", "D3", "S2_4", "S2_4'", "T2_9", "RP2_6", "Klein_K"];

/// The winding character `i` on `S1_3`: `h̃(v) = v/3`, curvature `1/3` on
/// `[0,1]` and `[1,2]`, `−1/3` on `[0,2]`.
pub fn winding_character(s1: &Arc<Complex>) -> DiffChar {
    let omega = Cochain::from_terms(s1, 1, &[(&[0, 1], q(1, 3)), (&[1, 2], q(1, 3)), (&[0, 2], q(-1, 3))]).expect("S1_3 edges");
    DiffChar::new(s1.clone(), omega, Cochain::rational(0, vec![q(0, 1), q(1, 3), q(2, 3)])).expect("valid character")
}

/// `i × i` on `T2_9`.
pub fn poincare_character(t2: &ProductComplex) -> DiffChar {
    let i = winding_character(t2.left());
    let i2 = winding_character(t2.right());
    external_product(t2, &i, &i2).expect("factors match")
}

/// The two coordinate circles `γ₁ = [S¹] × {0}` and `γ₂ = {0} × [S¹]` of a
/// product of circles, and its product fundamental class.
pub fn torus_cycles(t2: &ProductComplex) -> (Chain, Chain, Chain) {
    let f1 = t2.left().fundamental_cycle().expect("circle");
    let f2 = t2.right().fundamental_cycle().expect("circle");
    let g1 = t2.ez(&f1, &t2.right().basis_chain(0, 0));
    let g2 = t2.ez(&t2.left().basis_chain(0, 0), &f2);
    (g1, g2, t2.ez(&f1, &f2))
}

/// The `Z/2` generator of `H^1(RP2_6; Q/Z)`.
pub fn rp2_flat_class(rp2: &Arc<Complex>) -> FlatClass {
    FlatClass::dual(rp2.clone(), 1, 0, &q(1, 1))
}

/// `j(u)` for the `Z/2` class.
pub fn rp2_flat_character(rp2: &Arc<Complex>) -> DiffChar {
    DiffChar::j(&rp2_flat_class(rp2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::pair;
    use crate::error::Error;
    use crate::phase::Phase;
    use num_bigint::BigInt;

    #[test]
    fn homology_of_fixtures() {
        let show = |cx: &Complex, n: usize| cx.homology(n).to_string();
        assert_eq!(show(&point(), 0), "Z");
        assert_eq!(show(&circle(), 1), "Z");
        assert_eq!(show(&sphere(), 2), "Z");
        assert_eq!(show(&sphere(), 1), "0");
        let t2 = torus();
        assert_eq!(show(t2.complex(), 1), "Z^2");
        assert_eq!(show(t2.complex(), 2), "Z");
        let p = rp2();
        assert_eq!(show(&p, 1), "Z/2");
        assert_eq!(show(&p, 2), "0");
        assert_eq!(p.fundamental_cycle().unwrap_err(), Error::NonOrientable);
        let k = klein();
        assert_eq!(k.euler_characteristic(), 0);
        assert_eq!(show(&k, 1), "Z + Z/2");
        assert_eq!(show(&k, 2), "0");
        assert_eq!(show(&hexagon(), 1), "Z");
        for name in FIXTURE_NAMES {
            assert_eq!(complex_by_name(name).unwrap().name(), name);
        }
    }

    #[test]
    fn torsion_loop_generates() {
        let p = rp2();
        let z = rp2_torsion_cycle(&p);
        assert_eq!(p.homology(1).class_order(z.coeffs()), Some(BigInt::from(2)));
        let loop_map = rp2_torsion_loop(&p);
        assert_eq!(loop_map.pushforward(&circle().fundamental_cycle().unwrap()), z);
    }

    #[test]
    fn named_characters() {
        let t2 = torus();
        let ixi = poincare_character(&t2);
        let (g1, g2, fund) = torus_cycles(&t2);
        assert!(ixi.evaluate(&g1).unwrap().is_zero());
        assert!(ixi.evaluate(&g2).unwrap().is_zero());
        assert_eq!(pair(ixi.curvature(), &fund).unwrap(), q(1, 1));

        let p = rp2();
        let ju = rp2_flat_character(&p);
        let z = rp2_torsion_cycle(&p);
        assert_eq!(ju.evaluate(&z).unwrap(), Phase::from_ratio(1, 2));
        assert_eq!(ju.evaluate_torsion(&z).unwrap(), Phase::from_ratio(1, 2));
    }
}
