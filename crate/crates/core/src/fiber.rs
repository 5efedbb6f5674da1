//! Fiber integration through chain-level transfer maps.
//!
//! For a product bundle `E = X × F` with fiber chain `c_F` the transfer is
//! `λ(c) = EZ(c ⊗ c_F)`, and `π̂_! h = (ω ∘ λ, h̃ ∘ λ)`. Any other chain map
//! `λ : C_m(X) → C_{m+n}(E)` can be supplied as matrices.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::character::{same_complex, DiffChar, GradedChar, LowDegreeChar};
use crate::cochain::{slant_fiber, Cochain};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::relative::{cov_inverse, identity_cone, RelChar};
use crate::simplicial::{Chain, Complex, ProductComplex, SimplicialMap};

#[derive(Clone, Debug)]
pub struct TransferData {
    base: Arc<Complex>,
    total: Arc<Complex>,
    fiber_dim: usize,
    /// `λ_m` as a `|C_{m+n}(E)| × |C_m(X)|` matrix, `m = 0..=dim X`.
    lambda: Vec<IntMatrix>,
    closed: bool,
}

impl TransferData {
    pub fn from_matrices(base: Arc<Complex>, total: Arc<Complex>, fiber_dim: usize, lambda: Vec<IntMatrix>) -> Result<TransferData> {
        if lambda.len() != base.dim() + 1 {
            return Err(Error::DimensionMismatch("one transfer matrix per base degree"));
        }
        for (m, l) in lambda.iter().enumerate() {
            if l.cols() != base.count(m) || l.rows() != total.count(m + fiber_dim) {
                return Err(Error::DimensionMismatch("transfer matrix shape"));
            }
        }
        let mut t = TransferData { base, total, fiber_dim, lambda, closed: false };
        t.closed = t.is_chain_map();
        Ok(t)
    }

    /// `λ = EZ(− ⊗ c_F)` on the staircase product.
    pub fn product(prod: &ProductComplex, fiber_chain: &Chain) -> Result<TransferData> {
        prod.right().check_chain(fiber_chain)?;
        let base = prod.left();
        let lambda = (0..=base.dim())
            .map(|m| {
                let n = m + fiber_chain.degree();
                let mut mat = IntMatrix::zeros(prod.complex().count(n), base.count(m));
                for i in 0..base.count(m) {
                    let img = prod.ez(&base.basis_chain(m, i), fiber_chain);
                    for (r, k) in img.terms() {
                        mat.set(r, i, k.clone());
                    }
                }
                mat
            })
            .collect();
        TransferData::from_matrices(base.clone(), prod.complex().clone(), fiber_chain.degree(), lambda)
    }

    /// Transfer of the composite bundle `E′ → E → X`: `λ = λ_inner ∘ λ_outer`.
    pub fn compose(outer: &TransferData, inner: &TransferData) -> Result<TransferData> {
        if !same_complex(&outer.total, &inner.base) {
            return Err(Error::ComplexMismatch);
        }
        let n = outer.fiber_dim + inner.fiber_dim;
        let lambda = (0..=outer.base.dim()).map(|m| inner.lambda(m + outer.fiber_dim).mul(&outer.lambda[m])).collect();
        TransferData::from_matrices(outer.base.clone(), inner.total.clone(), n, lambda)
    }

    pub fn base(&self) -> &Arc<Complex> {
        &self.base
    }

    pub fn total(&self) -> &Arc<Complex> {
        &self.total
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber_dim
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn lambda(&self, m: usize) -> IntMatrix {
        match self.lambda.get(m) {
            Some(l) => l.clone(),
            None => IntMatrix::zeros(self.total.count(m + self.fiber_dim), 0),
        }
    }

    pub fn apply(&self, c: &Chain) -> Chain {
        let m = c.degree();
        match self.lambda.get(m) {
            Some(l) => Chain::new(m + self.fiber_dim, l.mul_vec(c.coeffs())),
            None => self.total.zero_chain(m + self.fiber_dim),
        }
    }

    /// `∂λ = λ∂` in every degree, checked column by column (the total
    /// complexes can be large).
    pub fn is_chain_map(&self) -> bool {
        let n = self.fiber_dim;
        (0..=self.base.dim()).all(|m| {
            (0..self.base.count(m)).all(|i| {
                let img = Chain::new(m + n, self.lambda[m].column(i));
                if m + n == 0 {
                    return true;
                }
                let lhs = self.total.boundary(&img);
                if m == 0 {
                    return lhs.is_zero();
                }
                lhs == self.apply(&self.base.boundary(&self.base.basis_chain(m, i)))
            })
        })
    }

    /// `b ∘ λ`, of degree `deg b − n`.
    pub fn pushforward_cochain(&self, b: &Cochain) -> Result<Cochain> {
        if !b.lives_on(&self.total) {
            return Err(Error::ComplexMismatch);
        }
        let m = b.degree().checked_sub(self.fiber_dim).ok_or(Error::DegreeUnderflow("cochain degree below fiber dimension"))?;
        Ok(b.precompose(&self.lambda(m), m))
    }
}

/// `π̂_! h = (ω ∘ λ, h̃ ∘ λ)` for `k > n`; for `k = n` the class `[μ ∘ λ]` in
/// `H^0`; zero below.
pub fn fiber_integrate(h: &DiffChar, t: &TransferData) -> Result<GradedChar> {
    if !same_complex(h.complex(), &t.total) {
        return Err(Error::ComplexMismatch);
    }
    if !t.closed {
        return Err(Error::FiberNotClosed);
    }
    let (k, n) = (h.degree(), t.fiber_dim);
    if k < n {
        return Ok(GradedChar::Low(LowDegreeChar::zero(t.base.clone(), k as i64 - n as i64)));
    }
    if k == n {
        let c = t.pushforward_cochain(&h.characteristic_cocycle())?;
        return Ok(GradedChar::Low(LowDegreeChar::degree_zero(t.base.clone(), c)?));
    }
    let curvature = t.pushforward_cochain(h.curvature())?;
    let lift = t.pushforward_cochain(h.lift())?;
    Ok(GradedChar::Positive(DiffChar::new(t.base.clone(), curvature, lift)?))
}

/// `c_F` has `±1` on every top simplex and its boundary is `±1` exactly on
/// the codimension-one faces with a single coface.
pub fn is_fundamental_chain(fiber: &Complex, c: &Chain) -> bool {
    let n = c.degree();
    if n == 0 || n != fiber.dim() || fiber.check_chain(c).is_err() {
        return false;
    }
    if !c.coeffs().iter().all(|k| k.abs().is_one()) {
        return false;
    }
    let mut cofaces = vec![0usize; fiber.count(n - 1)];
    for t in 0..fiber.count(n) {
        for (_, f) in fiber.faces(n, t) {
            cofaces[f] += 1;
        }
    }
    let b = fiber.boundary(c);
    !b.is_zero()
        && b.coeffs().iter().zip(&cofaces).all(|(k, &m)| match m {
            1 => k.abs().is_one(),
            _ => k.is_zero(),
        })
}

/// Integration over a fiber with boundary.
#[derive(Clone, Debug)]
pub struct BoundaryIntegral {
    /// `π̂^{∂F}_! h`, via the transfer along `∂c_F`.
    pub boundary: DiffChar,
    /// `ι((−1)^{k−n} ∮_F curv h)`.
    pub predicted: DiffChar,
    /// `cov^{−1}((−1)^{k−n} ∮_F curv h)` in `Ĥ^{k−n+1}(X, X)`.
    pub relative: RelChar,
}

pub fn boundary_fiber_integrate(h: &DiffChar, prod: &ProductComplex, fiber_chain: &Chain) -> Result<BoundaryIntegral> {
    if !same_complex(h.complex(), prod.complex()) {
        return Err(Error::ComplexMismatch);
    }
    if !is_fundamental_chain(prod.right(), fiber_chain) {
        return Err(Error::NotFundamentalChain);
    }
    let (k, n) = (h.degree(), fiber_chain.degree());
    if k < n {
        return Err(Error::DegreeUnderflow("character degree below fiber dimension"));
    }
    let rim = prod.right().boundary(fiber_chain);
    let t = TransferData::product(prod, &rim)?;
    let boundary = fiber_integrate(h, &t)?.positive().expect("degree k − n + 1 ≥ 1");
    let sign = if (k - n) % 2 == 0 { 1 } else { -1 };
    let theta = slant_fiber(prod, h.curvature(), fiber_chain)?.scale_int(sign);
    let predicted = DiffChar::iota(prod.left().clone(), &theta);
    let relative = cov_inverse(&identity_cone(prod.left()), &theta)?;
    Ok(BoundaryIntegral { boundary, predicted, relative })
}

/// `f₁^*h − f₀^*h − ι((−1)^{k−1} ∮_I H^* curv h)` for a homotopy
/// `H : X × I → Y` from `f₀` to `f₁`; zero by Stokes.
pub fn homotopy_defect(h: &DiffChar, f0: &SimplicialMap, f1: &SimplicialMap, prod: &ProductComplex, homotopy: &SimplicialMap) -> Result<DiffChar> {
    if !same_complex(homotopy.source(), prod.complex()) || !same_complex(homotopy.target(), h.complex()) {
        return Err(Error::ComplexMismatch);
    }
    let interval = prod.right();
    let ci = interval.fundamental_cycle()?;
    if interval.dim() != 1 || !is_fundamental_chain(interval, &ci) {
        return Err(Error::NotFundamentalChain);
    }
    let rim = interval.boundary(&ci);
    let end = |s: &BigInt| rim.terms().find(|(_, k)| *k == s).map(|(v, _)| v).expect("interval has two ends");
    let (start, stop) = (end(&-BigInt::one()), end(&BigInt::one()));
    for (f, v) in [(f0, start), (f1, stop)] {
        let restricted = SimplicialMap::compose(homotopy, &prod.left_section(v)?)?;
        if restricted.vertex_map() != f.vertex_map() || !same_complex(f.source(), prod.left()) {
            return Err(Error::EndpointMismatch);
        }
    }
    let k = h.degree();
    let pulled = h.pullback(homotopy)?;
    let sign = if (k - 1).is_multiple_of(2) { 1 } else { -1 };
    let theta = slant_fiber(prod, pulled.curvature(), &ci)?.scale_int(sign);
    h.pullback(f1)?.sub(&h.pullback(f0)?)?.sub(&DiffChar::iota(prod.left().clone(), &theta))
}

/// Sign `(−1)^{(k′−n′)·n}` of the fiber-product formula.
pub fn fiber_product_sign(k2: usize, n2: usize, n: usize) -> i64 {
    if (k2.abs_diff(n2) * n).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn poincare_character_integrates_to_winding() {
        let t2 = fixtures::torus();
        let ixi = fixtures::poincare_character(&t2);
        let cf = t2.right().fundamental_cycle().unwrap();
        let t = TransferData::product(&t2, &cf).unwrap();
        assert!(t.is_closed());
        let pi = fiber_integrate(&ixi, &t).unwrap().positive().unwrap();
        assert!(pi.equals(&fixtures::winding_character(t2.left())));
    }

    #[test]
    fn edge_fiber_degree_one() {
        let s1 = fixtures::circle();
        let prod = ProductComplex::new(s1.clone(), fixtures::interval());
        let h = DiffChar::from_curvature(prod.complex().clone(), &Cochain::zero(prod.complex(), 1)).unwrap();
        let h = h.add(&DiffChar::iota(prod.complex().clone(), &Cochain::rational(0, (0..6).map(|v| crate::cochain::q(v, 7)).collect()))).unwrap();
        let cf = prod.right().fundamental_cycle().unwrap();
        let out = boundary_fiber_integrate(&h, &prod, &cf).unwrap();
        assert!(out.boundary.equals(&out.predicted));
        assert!(out.relative.project().equals(&out.boundary));
        // (h∘j⁺)·(h∘j⁻)^{−1} on 0-cycles
        let plus = h.pullback(&prod.left_section(1).unwrap()).unwrap();
        let minus = h.pullback(&prod.left_section(0).unwrap()).unwrap();
        for v in 0..3 {
            let z = s1.basis_chain(0, v);
            assert_eq!(out.boundary.evaluate(&z).unwrap(), plus.evaluate(&z).unwrap() - minus.evaluate(&z).unwrap());
        }
    }
}
