//! Differential characters in the pair model: a closed rational curvature
//! `ω` of degree `k` and a rational lift `h̃` of degree `k − 1` with
//! `μ = ω − δh̃` integral. The character sends a `(k−1)`-cycle `z` to
//! `h̃(z) mod 1`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cochain::{coboundary, pair, pair_vec, pullback as pullback_cochain, Cochain};
use crate::error::{Error, Result};
use crate::phase::{is_integer, Phase};
use crate::simplicial::{Chain, Complex, SimplicialMap};

/// Integral cohomology class: SNF coordinates plus a representing cocycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralClass {
    pub degree: usize,
    /// Torsion coordinates (reduced) first, then free ones.
    pub coordinates: Vec<BigInt>,
    pub representative: Vec<BigInt>,
}

impl IntegralClass {
    pub fn of_cocycle(cx: &Complex, degree: usize, mu: &[BigInt]) -> IntegralClass {
        let coordinates = cx.cohomology(degree).coordinates(mu);
        IntegralClass { degree, coordinates, representative: mu.to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(Zero::is_zero)
    }

    pub fn same_class(&self, other: &IntegralClass) -> bool {
        self.degree == other.degree && self.coordinates == other.coordinates
    }
}

impl fmt::Display for IntegralClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coordinates.iter().map(|x| x.to_string()).collect();
        write!(f, "H^{}[{}]", self.degree, c.join(","))
    }
}

#[derive(Clone)]
pub struct DiffChar {
    complex: Arc<Complex>,
    degree: usize,
    curvature: Cochain,
    lift: Cochain,
}

impl fmt::Debug for DiffChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DiffChar")
            .field("complex", &self.complex.name())
            .field("degree", &self.degree)
            .field("curvature", &self.curvature.values())
            .field("lift", &self.lift.values())
            .finish()
    }
}

pub fn same_complex(a: &Arc<Complex>, b: &Arc<Complex>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// `δω = 0` and `ω` pairs integrally with a basis of `Z_k`.
pub fn has_integral_periods(cx: &Complex, omega: &Cochain) -> bool {
    let k = omega.degree();
    coboundary(cx, omega).is_zero() && cx.cycle_splitting(k).cycle_basis.iter().all(|z| is_integer(&pair_vec(omega, z)))
}

impl DiffChar {
    pub fn new(complex: Arc<Complex>, curvature: Cochain, lift: Cochain) -> Result<DiffChar> {
        let k = curvature.degree();
        if k == 0 {
            return Err(Error::DegreeUnderflow("differential characters of degree 0 are LowDegreeChar"));
        }
        if lift.degree() + 1 != k {
            return Err(Error::DegreeMismatch { expected: k - 1, found: lift.degree() });
        }
        if !curvature.lives_on(&complex) || !lift.lives_on(&complex) {
            return Err(Error::ComplexMismatch);
        }
        if !coboundary(&complex, &curvature).is_zero() {
            return Err(Error::NotClosed);
        }
        if !(&curvature - &coboundary(&complex, &lift)).is_integral() {
            return Err(Error::NotIntegrallyCompatible);
        }
        Ok(DiffChar { complex, degree: k, curvature: curvature.as_rational(), lift: lift.as_rational() })
    }

    pub fn zero(complex: Arc<Complex>, degree: usize) -> DiffChar {
        assert!(degree >= 1, "characters have degree at least one");
        let curvature = Cochain::zero(&complex, degree).as_rational();
        let lift = Cochain::zero(&complex, degree - 1).as_rational();
        DiffChar { complex, degree, curvature, lift }
    }

    pub fn complex(&self) -> &Arc<Complex> {
        &self.complex
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn curvature(&self) -> &Cochain {
        &self.curvature
    }

    pub fn lift(&self) -> &Cochain {
        &self.lift
    }

    /// `μ = ω − δh̃`, an integral cocycle.
    pub fn characteristic_cocycle(&self) -> Cochain {
        (&self.curvature - &coboundary(&self.complex, &self.lift)).normalized_ring()
    }

    fn mu_integers(&self) -> Vec<BigInt> {
        self.characteristic_cocycle().to_integers().expect("validated at construction")
    }

    pub fn char_class(&self) -> IntegralClass {
        IntegralClass::of_cocycle(&self.complex, self.degree, &self.mu_integers())
    }

    pub fn is_flat(&self) -> bool {
        self.curvature.is_zero()
    }

    pub fn evaluate(&self, z: &Chain) -> Result<Phase> {
        if z.degree() + 1 != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree - 1, found: z.degree() });
        }
        self.complex.check_chain(z)?;
        if !self.complex.is_cycle(z) {
            return Err(Error::NotACycle);
        }
        Ok(Phase::new(pair(&self.lift, z)?))
    }

    /// Same curvature and lifts differing by an integer on every
    /// `(k−1)`-cycle.
    pub fn equals(&self, other: &DiffChar) -> bool {
        if self.degree != other.degree || !same_complex(&self.complex, &other.complex) {
            return false;
        }
        if self.curvature.values() != other.curvature.values() {
            return false;
        }
        let diff = &self.lift - &other.lift;
        self.complex.cycle_splitting(self.degree - 1).cycle_basis.iter().all(|z| is_integer(&pair_vec(&diff, z)))
    }

    pub fn is_zero(&self) -> bool {
        self.equals(&DiffChar::zero(self.complex.clone(), self.degree))
    }

    /// `ι(η) = (δη, η)`.
    pub fn iota(complex: Arc<Complex>, eta: &Cochain) -> DiffChar {
        assert!(eta.lives_on(&complex), "cochain does not live on this complex");
        let curvature = coboundary(&complex, eta).as_rational();
        DiffChar { degree: eta.degree() + 1, complex, curvature, lift: eta.clone().as_rational() }
    }

    /// `j(u) = (0, u)`.
    pub fn j(u: &FlatClass) -> DiffChar {
        let complex = u.complex.clone();
        let curvature = Cochain::zero(&complex, u.degree() + 1).as_rational();
        DiffChar { degree: u.degree() + 1, complex, curvature, lift: u.u.clone() }
    }

    /// `η` with `ι(η) = h`, available exactly when `c(h) = 0`.
    pub fn trivialization(&self) -> Result<Cochain> {
        let mu = self.mu_integers();
        let t = self.complex.cocycle_splitting(self.degree - 1).boundary_section(&mu).ok_or(Error::NoTrivialization)?;
        // δt = μ, so ι(h̃ + t) = (δh̃ + μ, h̃ + t) = h
        Ok(&self.lift + &Cochain::integer(self.degree - 1, &t))
    }

    /// A character with curvature exactly `ω`. The integral cocycle is
    /// `ω ∘ s` for the cycle projection `s`, and the lift solves
    /// `δh̃ = ω − ω ∘ s`.
    pub fn from_curvature(complex: Arc<Complex>, omega: &Cochain) -> Result<DiffChar> {
        let k = omega.degree();
        if k == 0 {
            return Err(Error::DegreeUnderflow("curvature of degree 0"));
        }
        if !omega.lives_on(&complex) {
            return Err(Error::ComplexMismatch);
        }
        if !coboundary(&complex, omega).is_zero() {
            return Err(Error::NotClosed);
        }
        if !has_integral_periods(&complex, omega) {
            return Err(Error::NotIntegralPeriods);
        }
        let mu = Cochain::rational(k, complex.cycle_splitting(k).precompose_projection(omega.values()));
        debug_assert!(mu.is_integral());
        let rhs = omega - &mu;
        let lift = complex
            .cocycle_splitting(k - 1)
            .solve_rational(rhs.values())
            .expect("a cocycle vanishing on cycles is a rational coboundary");
        DiffChar::new(complex, omega.clone(), Cochain::rational(k - 1, lift))
    }

    pub fn flat_holonomy_class(&self) -> Result<FlatClass> {
        if !self.is_flat() {
            return Err(Error::NotFlat);
        }
        FlatClass::new(self.complex.clone(), self.lift.clone())
    }

    /// `φ^* h = (φ^* ω, φ^* h̃)`.
    pub fn pullback(&self, phi: &SimplicialMap) -> Result<DiffChar> {
        if !same_complex(phi.target(), &self.complex) {
            return Err(Error::ComplexMismatch);
        }
        let curvature = pullback_cochain(phi, &self.curvature)?;
        let lift = pullback_cochain(phi, &self.lift)?;
        Ok(DiffChar { complex: phi.source().clone(), degree: self.degree, curvature, lift })
    }

    /// Evaluation on a torsion cycle through a filling: with `N·z = ∂x`,
    /// `h(z) = (ω(x) − μ(x)) / N mod 1`.
    pub fn evaluate_torsion(&self, z: &Chain) -> Result<Phase> {
        let (n, x) = torsion_filling(&self.complex, z)?;
        let value = (pair(&self.curvature, &x)? - pair(&self.characteristic_cocycle(), &x)?) / BigRational::from_integer(n);
        Ok(Phase::new(value))
    }

    fn check_compatible(&self, o: &DiffChar) -> Result<()> {
        if self.degree != o.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: o.degree });
        }
        if !same_complex(&self.complex, &o.complex) {
            return Err(Error::ComplexMismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &DiffChar) -> Result<DiffChar> {
        self.check_compatible(o)?;
        Ok(DiffChar { complex: self.complex.clone(), degree: self.degree, curvature: &self.curvature + &o.curvature, lift: &self.lift + &o.lift })
    }

    pub fn sub(&self, o: &DiffChar) -> Result<DiffChar> {
        self.check_compatible(o)?;
        Ok(DiffChar { complex: self.complex.clone(), degree: self.degree, curvature: &self.curvature - &o.curvature, lift: &self.lift - &o.lift })
    }

    pub fn neg(&self) -> DiffChar {
        DiffChar { complex: self.complex.clone(), degree: self.degree, curvature: -&self.curvature, lift: -&self.lift }
    }

    pub fn scale(&self, k: i64) -> DiffChar {
        DiffChar { complex: self.complex.clone(), degree: self.degree, curvature: self.curvature.scale_int(k), lift: self.lift.scale_int(k) }
    }

    /// Raw constructor for internal formulas already known to be valid.
    pub(crate) fn from_parts_unchecked(complex: Arc<Complex>, curvature: Cochain, lift: Cochain) -> DiffChar {
        debug_assert!(DiffChar::new(complex.clone(), curvature.clone(), lift.clone()).is_ok());
        DiffChar { degree: curvature.degree(), complex, curvature: curvature.as_rational(), lift: lift.as_rational() }
    }
}

/// Minimal `N > 0` and an integral `x` with `N·z = ∂x`, for a cycle `z`
/// whose class is torsion.
pub fn torsion_filling(cx: &Complex, z: &Chain) -> Result<(BigInt, Chain)> {
    cx.check_chain(z)?;
    if !cx.is_cycle(z) {
        return Err(Error::NotACycle);
    }
    let n = z.degree();
    let order = cx.homology(n).class_order(z.coeffs()).ok_or(Error::NotTorsion)?;
    let target: Vec<BigInt> = z.coeffs().iter().map(|c| c * &order).collect();
    let x = cx.cycle_splitting(n + 1).boundary_section(&target).expect("a cycle of finite order N has N·z a boundary");
    Ok((order, Chain::new(n + 1, x)))
}

/// A rational cochain `u` with `δu` integral, up to integral cochains and
/// coboundaries: an element of `H^deg(X; Q/Z)`.
#[derive(Clone)]
pub struct FlatClass {
    complex: Arc<Complex>,
    u: Cochain,
}

impl fmt::Debug for FlatClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FlatClass({}, deg {}, {:?})", self.complex.name(), self.u.degree(), self.u.values())
    }
}

impl FlatClass {
    pub fn new(complex: Arc<Complex>, u: Cochain) -> Result<FlatClass> {
        if !u.lives_on(&complex) {
            return Err(Error::ComplexMismatch);
        }
        if !coboundary(&complex, &u).is_integral() {
            return Err(Error::NotCocycle);
        }
        Ok(FlatClass { complex, u: u.as_rational() })
    }

    /// Dual of the `i`-th generator of `H_deg`: `κ_i ∘ s / d_i` for a torsion
    /// generator of order `d_i`, or `κ_i ∘ s · r` (any rational `r`) for a free
    /// one.
    pub fn dual(complex: Arc<Complex>, degree: usize, i: usize, scale: &BigRational) -> FlatClass {
        let h = complex.homology(degree);
        let kappa = Cochain::integer(degree, h.coordinate_functional(i));
        let u = match h.order(i) {
            Some(d) => kappa.scale(&(scale / BigRational::from_integer(d.clone()))),
            None => kappa.scale(scale),
        };
        FlatClass::new(complex, u).expect("dual functionals are Q/Z cocycles")
    }

    pub fn complex(&self) -> &Arc<Complex> {
        &self.complex
    }

    pub fn degree(&self) -> usize {
        self.u.degree()
    }

    pub fn cochain(&self) -> &Cochain {
        &self.u
    }

    /// Value on a cycle, mod 1.
    pub fn evaluate(&self, z: &Chain) -> Result<Phase> {
        if !self.complex.is_cycle(z) {
            return Err(Error::NotACycle);
        }
        Ok(Phase::new(pair(&self.u, z)?))
    }

    pub fn equals(&self, o: &FlatClass) -> bool {
        if self.degree() != o.degree() || !same_complex(&self.complex, &o.complex) {
            return false;
        }
        let diff = &self.u - &o.u;
        self.complex.cycle_splitting(self.degree()).cycle_basis.iter().all(|z| is_integer(&pair_vec(&diff, z)))
    }

    pub fn is_zero(&self) -> bool {
        let z = FlatClass { complex: self.complex.clone(), u: Cochain::zero(&self.complex, self.degree()) };
        self.equals(&z)
    }

    /// Order in `H^deg(X; Q/Z) ≅ Hom(H_deg, Q/Z)`; `None` if infinite, which
    /// cannot happen for rational classes but is kept for clarity.
    pub fn order(&self) -> BigInt {
        let h = self.complex.homology(self.degree());
        let mut n = BigInt::one();
        for g in &h.generators {
            let v = Phase::new(pair_vec(&self.u, g));
            n = n.lcm(v.value().denom());
        }
        n
    }

    pub fn add(&self, o: &FlatClass) -> Result<FlatClass> {
        if self.degree() != o.degree() || !same_complex(&self.complex, &o.complex) {
            return Err(Error::ComplexMismatch);
        }
        Ok(FlatClass { complex: self.complex.clone(), u: &self.u + &o.u })
    }

    pub fn scale(&self, k: i64) -> FlatClass {
        FlatClass { complex: self.complex.clone(), u: self.u.scale_int(k) }
    }

    pub fn pullback(&self, phi: &SimplicialMap) -> Result<FlatClass> {
        if !same_complex(phi.target(), &self.complex) {
            return Err(Error::ComplexMismatch);
        }
        FlatClass::new(phi.source().clone(), pullback_cochain(phi, &self.u)?)
    }
}

/// `Ĥ^k = H^k(X; Z)` for `k ≤ 0`: an integral 0-cocycle in degree 0 and the
/// zero group below.
#[derive(Clone, Debug)]
pub struct LowDegreeChar {
    complex: Arc<Complex>,
    degree: i64,
    cocycle: Option<Cochain>,
}

impl LowDegreeChar {
    pub fn degree_zero(complex: Arc<Complex>, cocycle: Cochain) -> Result<LowDegreeChar> {
        if cocycle.degree() != 0 {
            return Err(Error::DegreeMismatch { expected: 0, found: cocycle.degree() });
        }
        if !cocycle.lives_on(&complex) {
            return Err(Error::ComplexMismatch);
        }
        if !cocycle.is_integral() {
            return Err(Error::NotIntegrallyCompatible);
        }
        if !coboundary(&complex, &cocycle).is_zero() {
            return Err(Error::NotClosed);
        }
        Ok(LowDegreeChar { complex, degree: 0, cocycle: Some(cocycle.normalized_ring()) })
    }

    pub fn zero(complex: Arc<Complex>, degree: i64) -> LowDegreeChar {
        assert!(degree <= 0, "low-degree characters have degree at most zero");
        let cocycle = (degree == 0).then(|| Cochain::zero(&complex, 0));
        LowDegreeChar { complex, degree, cocycle }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn complex(&self) -> &Arc<Complex> {
        &self.complex
    }

    pub fn cocycle(&self) -> Option<&Cochain> {
        self.cocycle.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.cocycle.as_ref().is_none_or(Cochain::is_zero)
    }

    pub fn pullback(&self, phi: &SimplicialMap) -> Result<LowDegreeChar> {
        if !same_complex(phi.target(), &self.complex) {
            return Err(Error::ComplexMismatch);
        }
        let cocycle = match &self.cocycle {
            Some(c) => Some(pullback_cochain(phi, c)?),
            None => None,
        };
        Ok(LowDegreeChar { complex: phi.source().clone(), degree: self.degree, cocycle })
    }

    /// `H^0` has no coboundaries, so classes are compared as cocycles.
    pub fn equals(&self, o: &LowDegreeChar) -> bool {
        self.degree == o.degree
            && same_complex(&self.complex, &o.complex)
            && self.cocycle.as_ref().map(Cochain::values) == o.cocycle.as_ref().map(Cochain::values)
    }
}

/// Either a character of positive degree or a cohomology class in degree ≤ 0.
#[derive(Clone, Debug)]
pub enum GradedChar {
    Positive(DiffChar),
    Low(LowDegreeChar),
}

impl GradedChar {
    pub fn degree(&self) -> i64 {
        match self {
            GradedChar::Positive(h) => h.degree() as i64,
            GradedChar::Low(l) => l.degree(),
        }
    }

    pub fn equals(&self, o: &GradedChar) -> bool {
        match (self, o) {
            (GradedChar::Positive(a), GradedChar::Positive(b)) => a.equals(b),
            (GradedChar::Low(a), GradedChar::Low(b)) => a.equals(b),
            _ => false,
        }
    }

    pub fn complex(&self) -> &Arc<Complex> {
        match self {
            GradedChar::Positive(h) => h.complex(),
            GradedChar::Low(l) => l.complex(),
        }
    }

    pub fn zero(complex: Arc<Complex>, degree: i64) -> GradedChar {
        if degree >= 1 {
            GradedChar::Positive(DiffChar::zero(complex, degree as usize))
        } else {
            GradedChar::Low(LowDegreeChar::zero(complex, degree))
        }
    }

    pub fn pullback(&self, phi: &SimplicialMap) -> Result<GradedChar> {
        Ok(match self {
            GradedChar::Positive(h) => GradedChar::Positive(h.pullback(phi)?),
            GradedChar::Low(l) => GradedChar::Low(l.pullback(phi)?),
        })
    }

    pub fn scale(&self, k: i64) -> GradedChar {
        match self {
            GradedChar::Positive(h) => GradedChar::Positive(h.scale(k)),
            GradedChar::Low(l) => GradedChar::Low(LowDegreeChar {
                complex: l.complex.clone(),
                degree: l.degree,
                cocycle: l.cocycle.as_ref().map(|c| c.scale_int(k)),
            }),
        }
    }

    pub fn positive(self) -> Option<DiffChar> {
        match self {
            GradedChar::Positive(h) => Some(h),
            GradedChar::Low(_) => None,
        }
    }

    pub fn low(self) -> Option<LowDegreeChar> {
        match self {
            GradedChar::Low(l) => Some(l),
            GradedChar::Positive(_) => None,
        }
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::q;

    fn circle() -> Arc<Complex> {
        Arc::new(Complex::new("S1_3", 3, &[vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap())
    }

    fn winding(s1: &Arc<Complex>) -> DiffChar {
        let omega = Cochain::from_terms(s1, 1, &[(&[0, 1], q(1, 3)), (&[1, 2], q(1, 3)), (&[0, 2], q(-1, 3))]).unwrap();
        let lift = Cochain::rational(0, vec![q(0, 1), q(1, 3), q(2, 3)]);
        DiffChar::new(s1.clone(), omega, lift).unwrap()
    }

    #[test]
    fn winding_character_data() {
        let s1 = circle();
        let i = winding(&s1);
        let mu = i.characteristic_cocycle();
        // edge order [0,1], [0,2], [1,2]
        assert_eq!(mu.values(), &[q(0, 1), q(-1, 1), q(0, 1)]);
        assert_eq!(mu.ring(), crate::cochain::Ring::Integer);
        let z = s1.chain(0, &[(&[1], 1), (&[0], -1)]).unwrap();
        assert_eq!(i.evaluate(&z).unwrap(), Phase::from_ratio(1, 3));
        let fund = s1.fundamental_cycle().unwrap();
        assert_eq!(pair(&mu, &fund).unwrap(), BigRational::one());
        assert!(matches!(i.trivialization(), Err(Error::NoTrivialization)));
    }

    #[test]
    fn rejects_unclosed_and_nonintegral() {
        let d = Arc::new(Complex::new("D", 3, &[vec![0, 1, 2]]).unwrap());
        let omega = Cochain::from_terms(&d, 1, &[(&[0, 1], q(1, 2))]).unwrap();
        assert_eq!(DiffChar::new(d.clone(), omega, Cochain::zero(&d, 0)).unwrap_err(), Error::NotClosed);
        let s1 = circle();
        let omega = Cochain::from_terms(&s1, 1, &[(&[0, 1], q(1, 2))]).unwrap();
        assert_eq!(DiffChar::new(s1.clone(), omega, Cochain::zero(&s1, 0)).unwrap_err(), Error::NotIntegrallyCompatible);
    }

    #[test]
    fn equality_detects_half_shift() {
        let s1 = circle();
        let i = winding(&s1);
        let shifted = DiffChar::new(s1.clone(), i.curvature().clone(), &i.lift().clone() + &Cochain::rational(0, vec![q(1, 2), q(0, 1), q(0, 1)]));
        assert!(matches!(shifted, Err(Error::NotIntegrallyCompatible)));
        let shifted_int = DiffChar::new(s1.clone(), i.curvature().clone(), &i.lift().clone() + &Cochain::rational(0, vec![q(3, 1), q(0, 1), q(0, 1)])).unwrap();
        assert!(i.equals(&shifted_int));
    }

    #[test]
    fn from_winding_curvature() {
        let s1 = circle();
        let i = winding(&s1);
        let h = DiffChar::from_curvature(s1.clone(), i.curvature()).unwrap();
        assert_eq!(h.curvature(), i.curvature());
        assert!(h.sub(&i).unwrap().is_flat());
        let iota = DiffChar::iota(s1.clone(), i.curvature());
        assert!(iota.is_zero());
    }
}
