//! Internal and external products of characters, the Künneth splitting of
//! product cycles, and the closed evaluation formula for cross products.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::character::{same_complex, DiffChar, GradedChar, LowDegreeChar};
use crate::cochain::{coboundary, cross, cup, cup1, pair, pair_vec, Cochain};
use crate::error::{Error, Result};
use crate::phase::Phase;
use crate::simplicial::{Chain, ProductComplex, TensorChain};

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `h * f = (ω_h ∪ ω_f, h̃ ∪ ω_f + (−1)^k μ_h ∪ h̃_f)`; its integral cocycle
/// is `μ_h ∪ μ_f`.
pub fn internal_product(h: &DiffChar, f: &DiffChar) -> Result<DiffChar> {
    if !same_complex(h.complex(), f.complex()) {
        return Err(Error::ComplexMismatch);
    }
    let cx = h.complex();
    let k = h.degree();
    let curvature = cup(cx, h.curvature(), f.curvature());
    let lift = &cup(cx, h.lift(), f.curvature()) + &cup(cx, &h.characteristic_cocycle(), f.lift()).scale_int(sign(k));
    Ok(DiffChar::from_parts_unchecked(cx.clone(), curvature, lift))
}

/// `h × h′ = p^*h * p′^*h′` on the staircase product. At cochain level this
/// is the Alexander–Whitney pullback of the tensor formula, since
/// `p^*a ∪ p′^*b = (a ⊗ b) ∘ AW`.
pub fn external_product(prod: &ProductComplex, h: &DiffChar, h2: &DiffChar) -> Result<DiffChar> {
    if !same_complex(prod.left(), h.complex()) || !same_complex(prod.right(), h2.complex()) {
        return Err(Error::ComplexMismatch);
    }
    internal_product(&h.pullback(prod.proj_left())?, &h2.pullback(prod.proj_right())?)
}

/// The product extended to degree-zero classes: an integral 0-cocycle `c`
/// acts as a character with curvature `c` and lift 0, so
/// `h * c = (ω_h ∪ c, h̃ ∪ c)` and `c * f = (c ∪ ω_f, c ∪ h̃_f)`. Negative
/// degrees are zero.
pub fn graded_product(a: &GradedChar, b: &GradedChar) -> Result<GradedChar> {
    if !same_complex(a.complex(), b.complex()) {
        return Err(Error::ComplexMismatch);
    }
    let cx = a.complex().clone();
    let degree = a.degree() + b.degree();
    let low0 = |l: &LowDegreeChar| l.cocycle().cloned();
    Ok(match (a, b) {
        (GradedChar::Positive(h), GradedChar::Positive(f)) => GradedChar::Positive(internal_product(h, f)?),
        (GradedChar::Positive(h), GradedChar::Low(l)) => match low0(l) {
            Some(c) => GradedChar::Positive(DiffChar::from_parts_unchecked(cx.clone(), cup(&cx, h.curvature(), &c), cup(&cx, h.lift(), &c))),
            None => GradedChar::zero(cx, degree),
        },
        (GradedChar::Low(l), GradedChar::Positive(f)) => match low0(l) {
            Some(c) => GradedChar::Positive(DiffChar::from_parts_unchecked(cx.clone(), cup(&cx, &c, f.curvature()), cup(&cx, &c, f.lift()))),
            None => GradedChar::zero(cx, degree),
        },
        (GradedChar::Low(l), GradedChar::Low(l2)) => match (low0(l), low0(l2)) {
            (Some(c), Some(c2)) => GradedChar::Low(LowDegreeChar::degree_zero(cx.clone(), cup(&cx, &c, &c2))?),
            _ => GradedChar::zero(cx, degree),
        },
    })
}

pub fn graded_external_product(prod: &ProductComplex, a: &GradedChar, b: &GradedChar) -> Result<GradedChar> {
    graded_product(&a.pullback(prod.proj_left())?, &b.pullback(prod.proj_right())?)
}

/// `f * h − (−1)^{kl} h * f` and the `∪₁` prediction for its curvature,
/// `(−1)^k δ(ω_f ∪₁ ω_h)`.
pub fn commutativity_defect(h: &DiffChar, f: &DiffChar) -> Result<(DiffChar, Cochain)> {
    let (k, l) = (h.degree(), f.degree());
    let hf = internal_product(h, f)?;
    let fh = internal_product(f, h)?;
    let defect = fh.sub(&hf.scale(sign(k * l)))?;
    let cx = h.complex();
    let predicted = coboundary(cx, &cup1(cx, f.curvature(), h.curvature())).scale_int(sign(k));
    Ok((defect, predicted))
}

/// Decomposition of a product cycle along the Künneth splitting.
#[derive(Clone, Debug)]
pub struct KunnethSplit {
    /// `S(z) = (s ⊗ s′) AW(z)`, a sum of cycle ⊗ cycle.
    pub s: TensorChain,
    /// Coordinates of `S(z)` against the factor cycle bases, per bidegree:
    /// `(p, q) → [(a, b, coefficient)]`.
    pub coordinates: BTreeMap<(usize, usize), Vec<(usize, usize, BigInt)>>,
    pub ks: Chain,
    pub remainder: Chain,
    /// Minimal `N` with `N·(z − K S z) = ∂x`.
    pub order: BigInt,
    pub filling: Chain,
}

pub fn kunneth_split(prod: &ProductComplex, z: &Chain) -> Result<KunnethSplit> {
    let cx = prod.complex();
    cx.check_chain(z)?;
    if !cx.is_cycle(z) {
        return Err(Error::NotACycle);
    }
    let d = z.degree();
    let (left, right) = (prod.left(), prod.right());
    let aw = prod.alexander_whitney(z);

    let mut proj_left: BTreeMap<(usize, usize), Vec<BigInt>> = BTreeMap::new();
    let mut proj_right: BTreeMap<(usize, usize), Vec<BigInt>> = BTreeMap::new();
    let mut s = TensorChain::new();
    for (&(p, i, q, j), k) in aw.terms() {
        let si = proj_left.entry((p, i)).or_insert_with(|| left.cycle_splitting(p).project(left.basis_chain(p, i).coeffs())).clone();
        let sj = proj_right.entry((q, j)).or_insert_with(|| right.cycle_splitting(q).project(right.basis_chain(q, j).coeffs())).clone();
        for (a, x) in si.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in sj.iter().enumerate() {
                if !y.is_zero() {
                    s.add_term((p, a, q, b), k * x * y);
                }
            }
        }
    }

    let mut coordinates = BTreeMap::new();
    for p in 0..=d {
        let q = d - p;
        if p > left.dim() || q > right.dim() {
            continue;
        }
        let block = s.block(left, right, p, q);
        if block.is_zero() {
            continue;
        }
        let (zl, zr) = (left.cycle_splitting(p), right.cycle_splitting(q));
        // columns are right-factor chains; reduce rows then columns
        let rows: Vec<Vec<BigInt>> = (0..block.cols()).map(|c| zl.cycle_coordinates(&block.column(c))).collect();
        let mut entries = Vec::new();
        for a in 0..zl.cycle_rank() {
            let col: Vec<BigInt> = rows.iter().map(|r| r[a].clone()).collect();
            for (b, v) in zr.cycle_coordinates(&col).into_iter().enumerate() {
                if !v.is_zero() {
                    entries.push((a, b, v));
                }
            }
        }
        coordinates.insert((p, q), entries);
    }

    let ks = prod.eilenberg_zilber(d, &s);
    let remainder = z - &ks;
    let order = cx.homology(d).class_order(remainder.coeffs()).ok_or(Error::NotTorsion)?;
    let target: Vec<BigInt> = remainder.coeffs().iter().map(|c| c * &order).collect();
    let filling = Chain::new(d + 1, cx.cycle_splitting(d + 1).boundary_section(&target).expect("torsion remainder has a filling"));
    Ok(KunnethSplit { s, coordinates, ks, remainder, order, filling })
}

/// Closed-form value of `(h × h′)(z)` from evaluations of `h`, `h′` on factor
/// cycles, the pairings of their classes, and the curvature on the torsion
/// filling. Never touches the lift of the product character.
pub fn bb_evaluate(prod: &ProductComplex, h: &DiffChar, h2: &DiffChar, z: &Chain) -> Result<Phase> {
    let (k, k2) = (h.degree(), h2.degree());
    if z.degree() + 1 != k + k2 {
        return Err(Error::DegreeMismatch { expected: k + k2 - 1, found: z.degree() });
    }
    let split = kunneth_split(prod, z)?;
    let (left, right) = (prod.left(), prod.right());
    let (mu, mu2) = (h.characteristic_cocycle(), h2.characteristic_cocycle());
    let mut total = Phase::zero();
    for (&(p, q), entries) in &split.coordinates {
        let (zl, zr) = (left.cycle_splitting(p), right.cycle_splitting(q));
        for (a, b, c) in entries {
            let y = Chain::new(p, zl.cycle_basis[*a].clone());
            let y2 = Chain::new(q, zr.cycle_basis[*b].clone());
            if p + 1 == k && q == k2 {
                // h(y)^{⟨c(h′), y′⟩}
                let power = pair(&mu2, &y2)?;
                total = total + h.evaluate(&y)?.scale(&(c * power.to_integer()));
            } else if p == k && q + 1 == k2 {
                // h′(y′)^{(−1)^k ⟨c(h), y⟩}
                let power = pair(&mu, &y)?.to_integer() * sign(k);
                total = total + h2.evaluate(&y2)?.scale(&(c * power));
            }
        }
    }
    let curv = cross(prod, h.curvature(), h2.curvature())?;
    let mux = cross(prod, &mu, &mu2)?;
    let x = split.filling.coeffs();
    let torsion = (pair_vec(&curv, x) - pair_vec(&mux, x)) / BigRational::from_integer(split.order.clone());
    Ok(total + Phase::new(torsion))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::q;
    use crate::simplicial::Complex;
    use num_traits::Signed;
    use std::sync::Arc;

    fn circle() -> Arc<Complex> {
        Arc::new(Complex::new("S1_3", 3, &[vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap())
    }

    fn winding(s1: &Arc<Complex>) -> DiffChar {
        let omega = Cochain::from_terms(s1, 1, &[(&[0, 1], q(1, 3)), (&[1, 2], q(1, 3)), (&[0, 2], q(-1, 3))]).unwrap();
        DiffChar::new(s1.clone(), omega, Cochain::rational(0, vec![q(0, 1), q(1, 3), q(2, 3)])).unwrap()
    }

    #[test]
    fn poincare_character_on_coordinate_circles() {
        let s1 = circle();
        let t2 = ProductComplex::new(s1.clone(), s1.clone());
        let i = winding(&s1);
        let ixi = external_product(&t2, &i, &i).unwrap();
        let fund = s1.fundamental_cycle().unwrap();
        let pt = s1.basis_chain(0, 0);
        let g1 = t2.ez(&fund, &pt);
        let g2 = t2.ez(&pt, &fund);
        assert!(ixi.evaluate(&g1).unwrap().is_zero());
        assert!(ixi.evaluate(&g2).unwrap().is_zero());
        let vol = t2.complex().fundamental_cycle().unwrap();
        assert_eq!(pair(ixi.curvature(), &vol).unwrap().abs(), q(1, 1));
        assert_eq!(ixi.curvature(), &cross(&t2, i.curvature(), i.curvature()).unwrap());
        for z in [&g1, &g2] {
            assert_eq!(bb_evaluate(&t2, &i, &i, z).unwrap(), ixi.evaluate(z).unwrap());
        }
    }

    #[test]
    fn kunneth_on_coordinate_circle() {
        let s1 = circle();
        let t2 = ProductComplex::new(s1.clone(), s1.clone());
        let fund = s1.fundamental_cycle().unwrap();
        let g1 = t2.ez(&fund, &s1.basis_chain(0, 0));
        let split = kunneth_split(&t2, &g1).unwrap();
        assert_eq!(split.order, BigInt::from(1));
        assert_eq!(t2.complex().boundary(&split.filling), split.remainder);
    }

    #[test]
    fn internal_product_class_is_cup() {
        let s1 = circle();
        let i = winding(&s1);
        let ii = internal_product(&i, &i).unwrap();
        assert_eq!(ii.degree(), 2);
        assert!(ii.characteristic_cocycle().is_zero());
    }
}
