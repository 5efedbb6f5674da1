//! Rational and integer cochains: coboundary, cup and cup-one products,
//! pairing with chains, pullback, cross product and the fiber slant.

use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::phase::is_integer;
use crate::simplicial::{Chain, Complex, ProductComplex, SimplicialMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integer,
    Rational,
}

impl Ring {
    fn meet(self, o: Ring) -> Ring {
        if self == Ring::Integer && o == Ring::Integer {
            Ring::Integer
        } else {
            Ring::Rational
        }
    }
}

/// Cochain of a fixed degree, dense against the simplex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    degree: usize,
    values: Vec<BigRational>,
    ring: Ring,
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Cochain {
    pub fn zero(cx: &Complex, degree: usize) -> Cochain {
        Cochain { degree, values: vec![BigRational::zero(); cx.count(degree)], ring: Ring::Integer }
    }

    pub fn new(degree: usize, values: Vec<BigRational>, ring: Ring) -> Result<Cochain> {
        if ring == Ring::Integer && !values.iter().all(is_integer) {
            return Err(Error::Parse("integer-tagged cochain has non-integer values".into()));
        }
        Ok(Cochain { degree, values, ring })
    }

    pub fn rational(degree: usize, values: Vec<BigRational>) -> Cochain {
        Cochain { degree, values, ring: Ring::Rational }
    }

    pub fn integer(degree: usize, values: &[BigInt]) -> Cochain {
        Cochain { degree, values: values.iter().cloned().map(BigRational::from_integer).collect(), ring: Ring::Integer }
    }

    /// Cochain given on named simplices; omitted simplices are zero.
    pub fn from_terms(cx: &Complex, degree: usize, terms: &[(&[usize], BigRational)]) -> Result<Cochain> {
        let mut c = Cochain::zero(cx, degree);
        c.ring = Ring::Rational;
        for (s, v) in terms {
            if s.len() != degree + 1 {
                return Err(Error::DegreeMismatch { expected: degree, found: s.len().saturating_sub(1) });
            }
            let i = cx.index_of(s).ok_or_else(|| Error::UnknownSimplex(s.to_vec()))?;
            c.values[i] += v;
        }
        Ok(c)
    }

    pub fn indicator(cx: &Complex, degree: usize, i: usize) -> Cochain {
        let mut c = Cochain::zero(cx, degree);
        c.values[i] = BigRational::one();
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &BigRational {
        &self.values[i]
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(is_integer)
    }

    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.values.iter().map(|v| is_integer(v).then(|| v.numer().clone())).collect()
    }

    /// Same values, retagged as integral if they are.
    pub fn normalized_ring(mut self) -> Cochain {
        self.ring = if self.is_integral() { Ring::Integer } else { Ring::Rational };
        self
    }

    pub fn as_rational(mut self) -> Cochain {
        self.ring = Ring::Rational;
        self
    }

    pub fn scale(&self, k: &BigRational) -> Cochain {
        let ring = if is_integer(k) { self.ring } else { Ring::Rational };
        Cochain { degree: self.degree, values: self.values.iter().map(|v| v * k).collect(), ring }
    }

    pub fn scale_int(&self, k: i64) -> Cochain {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    pub fn lives_on(&self, cx: &Complex) -> bool {
        self.values.len() == cx.count(self.degree)
    }

    fn check(&self, cx: &Complex) -> Result<()> {
        if self.lives_on(cx) {
            Ok(())
        } else {
            Err(Error::ComplexMismatch)
        }
    }

    /// `w ∘ M` for an integer matrix `M : C_m → C_degree` of some other
    /// complex, producing a cochain of degree `m`.
    pub fn precompose(&self, m: &IntMatrix, degree: usize) -> Cochain {
        Cochain { degree, values: m.transpose_mul_vec_rational(&self.values), ring: self.ring }
    }
}

impl Add for &Cochain {
    type Output = Cochain;
    fn add(self, o: &Cochain) -> Cochain {
        assert_eq!((self.degree, self.values.len()), (o.degree, o.values.len()), "adding cochains of different shape");
        Cochain {
            degree: self.degree,
            values: self.values.iter().zip(&o.values).map(|(a, b)| a + b).collect(),
            ring: self.ring.meet(o.ring),
        }
    }
}

impl Sub for &Cochain {
    type Output = Cochain;
    fn sub(self, o: &Cochain) -> Cochain {
        assert_eq!((self.degree, self.values.len()), (o.degree, o.values.len()), "subtracting cochains of different shape");
        Cochain {
            degree: self.degree,
            values: self.values.iter().zip(&o.values).map(|(a, b)| a - b).collect(),
            ring: self.ring.meet(o.ring),
        }
    }
}

impl Neg for &Cochain {
    type Output = Cochain;
    fn neg(self) -> Cochain {
        Cochain { degree: self.degree, values: self.values.iter().map(|a| -a).collect(), ring: self.ring }
    }
}

/// `(δa)(σ) = a(∂σ)`.
pub fn coboundary(cx: &Complex, a: &Cochain) -> Cochain {
    assert!(a.lives_on(cx), "cochain does not live on this complex");
    let n = a.degree + 1;
    let values = (0..cx.count(n))
        .map(|i| {
            let mut acc = BigRational::zero();
            for (j, f) in cx.faces(n, i) {
                if j % 2 == 0 {
                    acc += &a.values[f];
                } else {
                    acc -= &a.values[f];
                }
            }
            acc
        })
        .collect();
    Cochain { degree: n, values, ring: a.ring }
}

/// `(a ∪ b)(σ) = a(σ[0..p]) · b(σ[p..p+q])`.
pub fn cup(cx: &Complex, a: &Cochain, b: &Cochain) -> Cochain {
    assert!(a.lives_on(cx) && b.lives_on(cx), "cochains do not live on this complex");
    let (p, qd) = (a.degree, b.degree);
    let n = p + qd;
    let values = cx
        .simplices(n)
        .iter()
        .map(|s| {
            let front = cx.index_of(&s[..=p]).expect("faces exist");
            let back = cx.index_of(&s[p..]).expect("faces exist");
            &a.values[front] * &b.values[back]
        })
        .collect();
    Cochain { degree: n, values, ring: a.ring.meet(b.ring) }
}

/// Steenrod's `∪₁`, degree `p + q − 1`:
/// `(a ∪₁ b)(0…n) = Σ_{j−i=q} (−1)^{i(q+1)} a(0…i, j…n) · b(i…j)`.
///
/// With this sign the coboundary is
/// `δ(a ∪₁ b) = (−1)^{pq+q+1} a∪b + (−1)^q b∪a + (−1)^{q+1} δa ∪₁ b + a ∪₁ δb`
/// (pinned by the test below). Diagnostic use only.
pub fn cup1(cx: &Complex, a: &Cochain, b: &Cochain) -> Cochain {
    assert!(a.lives_on(cx) && b.lives_on(cx), "cochains do not live on this complex");
    let (p, qd) = (a.degree, b.degree);
    if p + qd == 0 {
        return Cochain { degree: 0, values: Vec::new(), ring: a.ring.meet(b.ring) };
    }
    let n = p + qd - 1;
    let values = cx
        .simplices(n)
        .iter()
        .map(|s| {
            let mut acc = BigRational::zero();
            if qd == 0 {
                return acc;
            }
            for i in 0..=n {
                let j = i + qd;
                if j > n {
                    break;
                }
                let mut front: Vec<usize> = s[..=i].to_vec();
                front.extend_from_slice(&s[j..]);
                let fa = cx.index_of(&front).expect("faces exist");
                let fb = cx.index_of(&s[i..=j]).expect("faces exist");
                let term = &a.values[fa] * &b.values[fb];
                if (i * (qd + 1)) % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        })
        .collect();
    Cochain { degree: n, values, ring: a.ring.meet(b.ring) }
}

/// `Σ a(σ)·c(σ)`.
pub fn pair(a: &Cochain, c: &Chain) -> Result<BigRational> {
    if a.degree != c.degree() {
        return Err(Error::DegreeMismatch { expected: a.degree, found: c.degree() });
    }
    if a.values.len() != c.coeffs().len() {
        return Err(Error::ComplexMismatch);
    }
    let mut acc = BigRational::zero();
    for (i, k) in c.terms() {
        acc += &a.values[i] * BigRational::from_integer(k.clone());
    }
    Ok(acc)
}

/// Pairing with a raw coefficient vector of matching length.
pub fn pair_vec(a: &Cochain, c: &[BigInt]) -> BigRational {
    assert_eq!(a.values.len(), c.len(), "pairing vectors of different length");
    let mut acc = BigRational::zero();
    for (v, k) in a.values.iter().zip(c) {
        if !k.is_zero() {
            acc += v * BigRational::from_integer(k.clone());
        }
    }
    acc
}

/// `φ^* a = a ∘ φ_*`.
pub fn pullback(phi: &SimplicialMap, a: &Cochain) -> Result<Cochain> {
    a.check(phi.target())?;
    let n = a.degree;
    let src = phi.source();
    let values = (0..src.count(n))
        .map(|i| match phi.image(n, i) {
            Some((j, true)) => a.values[j].clone(),
            Some((j, false)) => -a.values[j].clone(),
            None => BigRational::zero(),
        })
        .collect();
    Ok(Cochain { degree: n, values, ring: a.ring })
}

/// `(a × b)(σ) = (a ⊗ b)(AW σ)` on the staircase product.
pub fn cross(prod: &ProductComplex, a: &Cochain, b: &Cochain) -> Result<Cochain> {
    a.check(prod.left())?;
    b.check(prod.right())?;
    let n = a.degree + b.degree;
    let cx = prod.complex();
    let values = (0..cx.count(n))
        .map(|i| {
            let mut acc = BigRational::zero();
            for (p, fi, _, bi) in prod.aw_basis(n, i) {
                if p == a.degree {
                    acc += &a.values[fi] * &b.values[bi];
                }
            }
            acc
        })
        .collect();
    Ok(Cochain { degree: n, values, ring: a.ring.meet(b.ring) })
}

/// `(∮ b)(c) = b(EZ(c ⊗ c_F))`, a cochain of degree `k − n` on the left factor.
pub fn slant_fiber(prod: &ProductComplex, b: &Cochain, fiber_chain: &Chain) -> Result<Cochain> {
    b.check(prod.complex())?;
    prod.right().check_chain(fiber_chain)?;
    let n = fiber_chain.degree();
    if b.degree < n {
        return Err(Error::DegreeUnderflow("cochain degree below fiber dimension"));
    }
    let m = b.degree - n;
    let base = prod.left();
    let values = (0..base.count(m))
        .map(|i| {
            let c = base.basis_chain(m, i);
            pair(b, &prod.ez(&c, fiber_chain)).expect("degrees agree")
        })
        .collect();
    Ok(Cochain { degree: m, values, ring: b.ring })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn circle() -> Complex {
        Complex::new("S1_3", 3, &[vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap()
    }

    fn tetra_boundary() -> Complex {
        Complex::new("S2_4", 4, &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap()
    }

    fn simplex3() -> Complex {
        Complex::new("D3", 4, &[vec![0, 1, 2, 3]]).unwrap()
    }

    fn cochain(cx: &Complex, k: usize, seed: i64) -> Cochain {
        let vals = (0..cx.count(k)).map(|i| q(((i as i64 * 7 + seed * 13) % 11) - 5, 1 + (i as i64 + seed) % 4)).collect();
        Cochain::rational(k, vals)
    }

    #[test]
    fn winding_lift_coboundary() {
        let s1 = circle();
        let a = Cochain::rational(0, vec![q(0, 1), q(1, 3), q(2, 3)]);
        let d = coboundary(&s1, &a);
        // edges in order [0,1], [0,2], [1,2]
        assert_eq!(d.values(), &[q(1, 3), q(2, 3), q(1, 3)]);
        let c = Cochain::rational(0, vec![q(5, 7); 3]);
        assert!(coboundary(&s1, &c).is_zero());
    }

    #[test]
    fn coboundary_squares_to_zero() {
        let s2 = tetra_boundary();
        for k in 0..=0 {
            let a = cochain(&s2, k, 3);
            assert!(coboundary(&s2, &coboundary(&s2, &a)).is_zero());
        }
    }

    #[test]
    fn leibniz_and_associativity() {
        let cx = simplex3();
        for (p, qd) in [(0, 1), (1, 1), (1, 2), (0, 2), (2, 1)] {
            let a = cochain(&cx, p, 1);
            let b = cochain(&cx, qd, 2);
            let lhs = coboundary(&cx, &cup(&cx, &a, &b));
            let sign = if p % 2 == 0 { 1 } else { -1 };
            let rhs = &cup(&cx, &coboundary(&cx, &a), &b) + &cup(&cx, &a, &coboundary(&cx, &b)).scale_int(sign);
            assert_eq!(lhs, rhs, "Leibniz fails for ({p},{qd})");
        }
        let (a, b, c) = (cochain(&cx, 1, 1), cochain(&cx, 1, 2), cochain(&cx, 1, 3));
        assert_eq!(cup(&cx, &cup(&cx, &a, &b), &c), cup(&cx, &a, &cup(&cx, &b, &c)));
    }

    #[test]
    fn cup_one_coboundary_formula() {
        let cx = Complex::new("D5", 6, &[vec![0, 1, 2, 3, 4, 5]]).unwrap();
        let sgn = |e: usize| if e.is_multiple_of(2) { 1 } else { -1 };
        for (p, qd) in [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1), (0, 2), (2, 0)] {
            let a = cochain(&cx, p, 5);
            let b = cochain(&cx, qd, 9);
            let lhs = coboundary(&cx, &cup1(&cx, &a, &b));
            let rhs = &(&cup(&cx, &a, &b).scale_int(sgn(p * qd + qd + 1)) + &cup(&cx, &b, &a).scale_int(sgn(qd)))
                + &(&cup1(&cx, &coboundary(&cx, &a), &b).scale_int(sgn(qd + 1)) + &cup1(&cx, &a, &coboundary(&cx, &b)));
            assert_eq!(lhs, rhs, "cup-one formula fails for ({p},{qd})");
        }
    }

    #[test]
    fn pairing_basics() {
        let s1 = circle();
        let ind = Cochain::indicator(&s1, 1, 0);
        assert_eq!(pair(&ind, &s1.basis_chain(1, 0)).unwrap(), BigRational::one());
        assert!(pair(&ind, &s1.zero_chain(1)).unwrap().is_zero());
        assert!(pair(&ind, &s1.zero_chain(0)).is_err());
        let w = Cochain::from_terms(&s1, 1, &[(&[0, 1], q(1, 3)), (&[1, 2], q(1, 3)), (&[0, 2], q(-1, 3))]).unwrap();
        assert_eq!(pair(&w, &s1.fundamental_cycle().unwrap()).unwrap(), BigRational::one());
    }

    #[test]
    fn slant_over_point_restricts() {
        let s1 = Arc::new(circle());
        let pt = Arc::new(Complex::new("pt", 1, &[]).unwrap());
        let prod = ProductComplex::new(s1.clone(), pt.clone());
        let b = cochain(prod.complex(), 1, 4);
        let s = slant_fiber(&prod, &b, &pt.basis_chain(0, 0)).unwrap();
        assert_eq!(s.values(), b.values());
        let prod2 = ProductComplex::new(pt.clone(), s1.clone());
        let b2 = cochain(prod2.complex(), 1, 4);
        let z = s1.fundamental_cycle().unwrap();
        let s2 = slant_fiber(&prod2, &b2, &z).unwrap();
        assert_eq!(s2.values()[0], pair(&b2, &z).unwrap());
    }
}
