//! Relative characters on the mapping cone of `φ : A → X`.
//!
//! A relative character of degree `k` is `(ω, θ, a, b)`: curvature `ω` on `X`,
//! covariant derivative `θ` on `A`, and a lift pair `(a, b)` in
//! `C^{k−1}(X) ⊕ C^{k−2}(A)` such that `(ω, θ) − δ_φ(a, b)` is integral, where
//! `δ_φ(a, b) = (δa, φ^*a − δb)` is the transpose of `∂_φ`. It evaluates a
//! cone cycle `(s, t)` to `a(s) + b(t) mod 1`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::character::{same_complex, DiffChar, FlatClass, IntegralClass};
use crate::cochain::{coboundary, pair_vec, pullback, Cochain};
use crate::error::{Error, Result};
use crate::homology::{ChainComplex, CycleSplitting};
use crate::linalg::IntMatrix;
use crate::phase::{is_integer, Phase};
use crate::simplicial::{Complex, MappingCone, SimplicialMap};

#[derive(Clone)]
pub struct RelChar {
    cone: Arc<MappingCone>,
    degree: usize,
    curvature: Cochain,
    cov: Cochain,
    lift_x: Cochain,
    /// Absent in degree 1, where `C^{−1}(A) = 0`.
    lift_a: Option<Cochain>,
}

impl fmt::Debug for RelChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RelChar")
            .field("degree", &self.degree)
            .field("curvature", &self.curvature.values())
            .field("cov", &self.cov.values())
            .field("lift_x", &self.lift_x.values())
            .field("lift_a", &self.lift_a.as_ref().map(Cochain::values))
            .finish()
    }
}

pub fn same_cone(a: &MappingCone, b: &MappingCone) -> bool {
    std::ptr::eq(a, b)
        || (same_complex(a.x(), b.x()) && same_complex(a.a(), b.a()) && a.map().vertex_map() == b.map().vertex_map())
}

/// `δ_φ(a, b) = (δa, φ^*a − δb)`.
pub fn cone_coboundary(cone: &MappingCone, a: &Cochain, b: Option<&Cochain>) -> (Cochain, Cochain) {
    let da = coboundary(cone.x(), a);
    let mut second = pullback(cone.map(), a).expect("lift lives on X");
    if let Some(b) = b {
        second = &second - &coboundary(cone.a(), b);
    }
    (da, second)
}

impl RelChar {
    pub fn new(cone: Arc<MappingCone>, curvature: Cochain, cov: Cochain, lift_x: Cochain, lift_a: Option<Cochain>) -> Result<RelChar> {
        let k = curvature.degree();
        if k == 0 {
            return Err(Error::DegreeUnderflow("relative characters of degree 0"));
        }
        if cov.degree() + 1 != k || lift_x.degree() + 1 != k {
            return Err(Error::DegreeMismatch { expected: k - 1, found: cov.degree().min(lift_x.degree()) });
        }
        match (&lift_a, k) {
            (None, 1) => {}
            (Some(b), k) if k >= 2 && b.degree() + 2 == k => {}
            (Some(b), _) => return Err(Error::DegreeMismatch { expected: k.saturating_sub(2), found: b.degree() }),
            (None, _) => return Err(Error::DegreeUnderflow("lift on A is required in degree ≥ 2")),
        }
        if !curvature.lives_on(cone.x()) || !lift_x.lives_on(cone.x()) || !cov.lives_on(cone.a()) {
            return Err(Error::ComplexMismatch);
        }
        if lift_a.as_ref().is_some_and(|b| !b.lives_on(cone.a())) {
            return Err(Error::ComplexMismatch);
        }
        if !coboundary(cone.x(), &curvature).is_zero() {
            return Err(Error::NotConeClosed);
        }
        let phi_omega = pullback(cone.map(), &curvature)?;
        if !(&phi_omega - &coboundary(cone.a(), &cov)).is_zero() {
            return Err(Error::NotConeClosed);
        }
        let (d1, d2) = cone_coboundary(&cone, &lift_x, lift_a.as_ref());
        if !(&curvature - &d1).is_integral() || !(&cov - &d2).is_integral() {
            return Err(Error::NotIntegrallyCompatible);
        }
        let mut f = RelChar {
            cone,
            degree: k,
            curvature: curvature.as_rational(),
            cov: cov.as_rational(),
            lift_x: lift_x.as_rational(),
            lift_a: lift_a.map(Cochain::as_rational),
        };
        f.normalize();
        Ok(f)
    }

    /// In degree 1 the covariant derivative is only defined up to a locally
    /// constant integer function on `A`; pin it by putting its value at the
    /// least vertex of every component into `[0, 1)`.
    fn normalize(&mut self) {
        if self.degree != 1 {
            return;
        }
        let a = self.cone.a().clone();
        let mut values = self.cov.values().to_vec();
        for comp in a.components() {
            let v0 = comp[0];
            let shift = BigRational::from_integer(values[v0].numer().div_floor(values[v0].denom()));
            for &v in &comp {
                values[v] -= &shift;
            }
        }
        self.cov = Cochain::rational(0, values);
    }

    pub fn zero(cone: Arc<MappingCone>, degree: usize) -> RelChar {
        assert!(degree >= 1);
        let (x, a) = (cone.x().clone(), cone.a().clone());
        RelChar {
            degree,
            curvature: Cochain::zero(&x, degree).as_rational(),
            cov: Cochain::zero(&a, degree - 1).as_rational(),
            lift_x: Cochain::zero(&x, degree - 1).as_rational(),
            lift_a: (degree >= 2).then(|| Cochain::zero(&a, degree - 2).as_rational()),
            cone,
        }
    }

    pub fn cone(&self) -> &Arc<MappingCone> {
        &self.cone
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn curvature(&self) -> &Cochain {
        &self.curvature
    }

    pub fn cov(&self) -> &Cochain {
        &self.cov
    }

    pub fn lift_x(&self) -> &Cochain {
        &self.lift_x
    }

    pub fn lift_a(&self) -> Option<&Cochain> {
        self.lift_a.as_ref()
    }

    /// The integral cone cocycle `(ω, θ) − δ_φ(a, b)`.
    pub fn characteristic_cocycle(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        let (d1, d2) = cone_coboundary(&self.cone, &self.lift_x, self.lift_a.as_ref());
        let m1 = (&self.curvature - &d1).to_integers().expect("validated");
        let m2 = (&self.cov - &d2).to_integers().expect("validated");
        (m1, m2)
    }

    /// Class in `H^k_φ(X, A; Z)`.
    pub fn char_class(&self) -> Vec<BigInt> {
        let (m1, m2) = self.characteristic_cocycle();
        self.cone.cohomology(self.degree).coordinates(&self.cone.join(&m1, &m2))
    }

    fn lift_pair_value(&self, s: &[BigInt], t: &[BigInt], a: &Cochain, b: Option<&Cochain>) -> BigRational {
        let mut v = pair_vec(a, s);
        if let Some(b) = b {
            v += pair_vec(b, t);
        }
        v
    }

    /// `f(s, t) = a(s) + b(t) mod 1` on a cone cycle of degree `k − 1`.
    pub fn evaluate(&self, s: &[BigInt], t: &[BigInt]) -> Result<Phase> {
        let n = self.degree - 1;
        let (nx, na) = self.cone.parts(n);
        if s.len() != nx || t.len() != na {
            return Err(Error::DimensionMismatch("cone chain has the wrong shape"));
        }
        let v = self.cone.join(s, t);
        if !self.cone.boundary(n, &v).iter().all(Zero::is_zero) {
            return Err(Error::NotAConeCycle);
        }
        Ok(Phase::new(self.lift_pair_value(s, t, &self.lift_x, self.lift_a.as_ref())))
    }

    pub fn equals(&self, o: &RelChar) -> bool {
        if self.degree != o.degree || !same_cone(&self.cone, &o.cone) {
            return false;
        }
        if self.curvature.values() != o.curvature.values() || self.cov.values() != o.cov.values() {
            return false;
        }
        let a = &self.lift_x - &o.lift_x;
        let b = match (&self.lift_a, &o.lift_a) {
            (Some(x), Some(y)) => Some(x - y),
            _ => None,
        };
        let n = self.degree - 1;
        self.cone.cycle_splitting(n).cycle_basis.iter().all(|v| {
            let (s, t) = self.cone.split(n, v);
            is_integer(&self.lift_pair_value(&s, &t, &a, b.as_ref()))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.equals(&RelChar::zero(self.cone.clone(), self.degree))
    }

    fn combine(&self, o: &RelChar, sign: i64) -> Result<RelChar> {
        if self.degree != o.degree || !same_cone(&self.cone, &o.cone) {
            return Err(Error::ComplexMismatch);
        }
        let lin = |x: &Cochain, y: &Cochain| x + &y.scale_int(sign);
        let mut f = RelChar {
            cone: self.cone.clone(),
            degree: self.degree,
            curvature: lin(&self.curvature, &o.curvature),
            cov: lin(&self.cov, &o.cov),
            lift_x: lin(&self.lift_x, &o.lift_x),
            lift_a: match (&self.lift_a, &o.lift_a) {
                (Some(x), Some(y)) => Some(lin(x, y)),
                _ => None,
            },
        };
        f.normalize();
        Ok(f)
    }

    pub fn add(&self, o: &RelChar) -> Result<RelChar> {
        self.combine(o, 1)
    }

    pub fn sub(&self, o: &RelChar) -> Result<RelChar> {
        self.combine(o, -1)
    }

    /// `p̆(f) = (ω, a)`, the restriction to cone cycles of the form `(z, 0)`.
    pub fn project(&self) -> DiffChar {
        DiffChar::new(self.cone.x().clone(), self.curvature.clone(), self.lift_x.clone()).expect("first component of an integral cone cocycle")
    }
}

/// `ĩ(g) = (0, −ω_g, 0, h̃_g)`, evaluating `(s, t) ↦ g(t)`. Into degree 1 the
/// map is zero by convention, so `g` must have degree at least 1.
pub fn incl_flat(cone: &Arc<MappingCone>, g: &DiffChar) -> Result<RelChar> {
    if !same_complex(g.complex(), cone.a()) {
        return Err(Error::ComplexMismatch);
    }
    let k = g.degree() + 1;
    let x = cone.x();
    RelChar::new(
        cone.clone(),
        Cochain::zero(x, k),
        -g.curvature(),
        Cochain::zero(x, k - 1),
        Some(g.lift().clone()),
    )
}

/// A section of `h` along `φ`: solve `δt = φ^*μ_h` over the integers on `A`
/// and return `(ω_h, φ^*h̃ + t, h̃, 0)`. Fails exactly when `φ^*c(h) ≠ 0`,
/// carrying that class as witness.
pub fn find_section(cone: &Arc<MappingCone>, h: &DiffChar) -> Result<RelChar> {
    if !same_complex(h.complex(), cone.x()) {
        return Err(Error::ComplexMismatch);
    }
    let k = h.degree();
    let a = cone.a();
    let pulled_mu = pullback(cone.map(), &h.characteristic_cocycle())?.to_integers().expect("integral");
    let t = match a.cocycle_splitting(k - 1).boundary_section(&pulled_mu) {
        Some(t) => t,
        None => {
            let class = IntegralClass::of_cocycle(a, k, &pulled_mu);
            return Err(Error::NoSection { witness: class.to_string() });
        }
    };
    let cov = &pullback(cone.map(), h.lift())? + &Cochain::integer(k - 1, &t);
    let lift_a = (k >= 2).then(|| Cochain::zero(a, k - 2));
    RelChar::new(cone.clone(), h.curvature().clone(), cov, h.lift().clone(), lift_a)
}

/// For `f` with `p̆(f) = 0`, a character `g` on `A` with `ĩ(g) = f`.
///
/// `p̆(f) = 0` means `ω = 0` and `a` is integral on cycles, so
/// `a = a∘s + δc` with `a∘s` integral; then `g = (−θ, b − φ^*c)`.
pub fn descend_kernel(f: &RelChar) -> Result<DiffChar> {
    let k = f.degree;
    if k < 2 {
        return Err(Error::DegreeUnderflow("descent needs degree ≥ 2; ĩ vanishes into degree 1"));
    }
    if !f.project().is_zero() {
        return Err(Error::KernelConditionFailed);
    }
    let x = f.cone.x();
    let a = &f.lift_x;
    let integral_part = x.cycle_splitting(k - 1).precompose_projection(a.values());
    let rest = a - &Cochain::rational(k - 1, integral_part);
    let c = x.cocycle_splitting(k - 2).solve_rational(rest.values()).expect("vanishes on cycles, hence a coboundary");
    let c = Cochain::rational(k - 2, c);
    let b = f.lift_a.as_ref().expect("degree ≥ 2");
    let lift = b - &pullback(f.cone.map(), &c)?;
    DiffChar::new(f.cone.a().clone(), -&f.cov, lift)
}

/// Inverse of `cov` on `Ĥ^k(X, X)`: `θ ↦ (δθ, θ, θ, 0)` on the cone of the
/// identity. Its projection is `ι(θ)`.
pub fn cov_inverse(cone: &Arc<MappingCone>, theta: &Cochain) -> Result<RelChar> {
    if !same_complex(cone.x(), cone.a()) || !cone.map().vertex_map().iter().enumerate().all(|(i, &v)| i == v) {
        return Err(Error::ComplexMismatch);
    }
    let x = cone.x();
    let k = theta.degree() + 1;
    let lift_a = (k >= 2).then(|| Cochain::zero(x, k - 2));
    RelChar::new(cone.clone(), coboundary(x, theta), theta.clone(), theta.clone(), lift_a)
}

pub fn identity_cone(x: &Arc<Complex>) -> Arc<MappingCone> {
    Arc::new(MappingCone::new(SimplicialMap::identity(x.clone())))
}

/// Cycles of `A` in degree `n` whose image under `φ_*` bounds in `X`.
pub fn kernel_cycles(phi: &SimplicialMap, n: usize) -> Vec<Vec<BigInt>> {
    let (a, x) = (phi.source(), phi.target());
    let za = a.cycle_splitting(n);
    let images: Vec<Vec<BigInt>> = za.cycle_basis.iter().map(|z| phi.chain_matrix(n).mul_vec(z)).collect();
    let dx = x.boundary_matrix(n + 1);
    let rows = x.count(n);
    let m = IntMatrix::from_fn(rows, images.len() + dx.cols(), |r, c| {
        if c < images.len() {
            images[c][r].clone()
        } else {
            -dx.get(r, c - images.len()).clone()
        }
    });
    CycleSplitting::new(0, &m)
        .cycle_basis
        .iter()
        .map(|v| {
            let mut z = vec![BigInt::zero(); a.count(n)];
            for (coef, basis) in v.iter().zip(&za.cycle_basis) {
                for (zi, bi) in z.iter_mut().zip(basis) {
                    *zi += coef * bi;
                }
            }
            z
        })
        .filter(|z| z.iter().any(|c| !c.is_zero()))
        .collect()
}

/// Whether a flat class on `A` is restricted from `X`, i.e. vanishes on
/// `ker φ_*` (`Q/Z` is injective).
pub fn is_pulled_back(u: &FlatClass, phi: &SimplicialMap) -> bool {
    kernel_cycles(phi, u.degree()).iter().all(|z| is_integer(&pair_vec(u.cochain(), z)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use num_traits::Signed;

    #[test]
    fn winding_section_along_equator_and_descent() {
        let (s2, eq) = fixtures::sphere_with_equator();
        let cone = Arc::new(MappingCone::new(eq));
        // degree-2 character with class the generator of H^2(S^2)
        let mu = Cochain::indicator(&s2, 2, 0);
        let h = DiffChar::new(s2.clone(), mu.clone(), Cochain::zero(&s2, 1)).unwrap();
        assert!(!h.char_class().is_zero());
        let f = find_section(&cone, &h).unwrap();
        assert!(f.project().equals(&h));
        assert_eq!(coboundary(cone.a(), f.cov()), pullback(cone.map(), h.curvature()).unwrap());

        let g = fixtures::winding_character(cone.a());
        let ig = incl_flat(&cone, &g).unwrap();
        assert!(ig.project().is_zero());
        let back = descend_kernel(&ig).unwrap();
        assert!(incl_flat(&cone, &back).unwrap().equals(&ig));
    }

    #[test]
    fn no_section_for_torsion_class() {
        let p = fixtures::rp2();
        let cone = identity_cone(&p);
        let gen = p.cohomology(2).generators[0].clone();
        let h = DiffChar::new(p.clone(), Cochain::integer(2, &gen), Cochain::zero(&p, 1)).unwrap();
        assert!(matches!(find_section(&cone, &h), Err(Error::NoSection { .. })));
    }

    #[test]
    fn cov_inverse_projects_to_iota() {
        let s1 = fixtures::circle();
        let cone = identity_cone(&s1);
        let theta = Cochain::rational(0, vec![crate::cochain::q(1, 5), crate::cochain::q(7, 3), crate::cochain::q(-2, 1)]);
        let f = cov_inverse(&cone, &theta).unwrap();
        assert!(f.project().equals(&DiffChar::iota(s1.clone(), &theta)));
        // degree one: cov is normalized, so compare modulo locally constant integers
        assert!(f.cov().values()[0] < BigRational::from_integer(1.into()));
        assert!(f.curvature() == &coboundary(&s1, &theta));
    }

    #[test]
    fn kernel_of_loop_inclusion() {
        let p = fixtures::rp2();
        let l = fixtures::rp2_torsion_loop(&p);
        let ker = kernel_cycles(&l, 1);
        assert_eq!(ker.len(), 1);
        // twice the loop bounds
        assert_eq!(ker[0].iter().map(|c| c.abs()).collect::<Vec<_>>(), vec![BigInt::from(2); 3]);
    }
}
