//! Holonomy along closed oriented complexes and transition factors between
//! fillings of a common boundary.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::character::{same_complex, DiffChar};
use crate::error::{Error, Result};
use crate::fiber::is_fundamental_chain;
use crate::phase::Phase;
use crate::simplicial::{Chain, Complex, SimplicialMap};

/// `hol^h(φ) = h(φ_* c_Σ)`.
pub fn holonomy(h: &DiffChar, phi: &SimplicialMap, fundamental: &Chain) -> Result<Phase> {
    if !same_complex(phi.target(), h.complex()) {
        return Err(Error::ComplexMismatch);
    }
    if fundamental.degree() + 1 != h.degree() {
        return Err(Error::DimensionMismatch("cycle dimension must be one less than the character degree"));
    }
    phi.source().check_chain(fundamental)?;
    if !phi.source().is_cycle(fundamental) {
        return Err(Error::NotACycle);
    }
    h.evaluate(&phi.pushforward(fundamental))
}

/// A map `Φ : W → X` from a compact oriented complex with boundary, with its
/// fundamental chain and the boundary restriction.
#[derive(Clone, Debug)]
pub struct Filling {
    map: SimplicialMap,
    chain: Chain,
    rim: Arc<Complex>,
    rim_chain: Chain,
    rim_map: SimplicialMap,
}

impl Filling {
    pub fn new(map: SimplicialMap, chain: Chain) -> Result<Filling> {
        let w = map.source().clone();
        if !is_fundamental_chain(&w, &chain) {
            return Err(Error::NotFundamentalChain);
        }
        let (rim, incl) = w.boundary_subcomplex()?;
        // ∂c_W, read on the boundary subcomplex
        let b = w.boundary(&chain);
        let n = b.degree();
        let mut coeffs = vec![num_bigint::BigInt::zero(); rim.count(n)];
        for (i, k) in b.terms() {
            let verts: Vec<usize> = w.simplex(n, i).iter().map(|v| incl.vertex_map().binary_search(v).expect("boundary vertex")).collect();
            coeffs[rim.index_of(&verts).expect("boundary simplex")] = k.clone();
        }
        let rim_map = SimplicialMap::compose(&map, &incl)?;
        Ok(Filling { map, chain, rim, rim_chain: Chain::new(n, coeffs), rim_map })
    }

    /// `Φ` with the orientation of `W` reversed.
    pub fn reversed(&self) -> Filling {
        Filling::new(self.map.clone(), self.chain.scale(&-num_bigint::BigInt::one())).expect("reversal keeps a fundamental chain")
    }

    pub fn map(&self) -> &SimplicialMap {
        &self.map
    }

    pub fn chain(&self) -> &Chain {
        &self.chain
    }

    pub fn rim(&self) -> &Arc<Complex> {
        &self.rim
    }

    pub fn pushed(&self) -> Chain {
        self.map.pushforward(&self.chain)
    }

    fn same_boundary(&self, o: &Filling) -> bool {
        *self.rim == *o.rim && self.rim_chain == o.rim_chain && self.rim_map.vertex_map() == o.rim_map.vertex_map() && same_complex(self.map.target(), o.map.target())
    }
}

/// `t(Φ, Φ′) = hol^h(Φ′ ∪_φ −Φ) = h(Φ′_* c_{W′} − Φ_* c_W)`, so that
/// `(Φ, c) ∼ (Φ′, c′)` iff `c = t(Φ, Φ′)·c′`.
pub fn transition_factor(h: &DiffChar, phi: &Filling, phi2: &Filling) -> Result<Phase> {
    if !phi.same_boundary(phi2) {
        return Err(Error::BoundaryMismatch);
    }
    if phi.chain.degree() + 1 != h.degree() {
        return Err(Error::DimensionMismatch("filling dimension must be one less than the character degree"));
    }
    h.evaluate(&(&phi2.pushed() - &phi.pushed()))
}

/// A complex number `r·exp(2πi t)` with rational modulus and phase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Amplitude {
    pub modulus: BigRational,
    pub phase: Phase,
}

impl Amplitude {
    pub fn new(modulus: BigRational, phase: Phase) -> Amplitude {
        Amplitude { modulus, phase }
    }

    pub fn one() -> Amplitude {
        Amplitude { modulus: BigRational::one(), phase: Phase::zero() }
    }

    pub fn rotate(&self, t: &Phase) -> Amplitude {
        Amplitude { modulus: self.modulus.clone(), phase: self.phase.clone() + t.clone() }
    }
}

/// `⟨[Φ₁, c₁], [Φ₂, c₂]⟩ = hol^h(Φ₁ ∪ −Φ₂)·c₁·c̄₂`.
pub fn hermitian_pairing(h: &DiffChar, phi1: &Filling, c1: &Amplitude, phi2: &Filling, c2: &Amplitude) -> Result<Amplitude> {
    let hol = transition_factor(h, phi2, phi1)?;
    Ok(Amplitude { modulus: &c1.modulus * &c2.modulus, phase: hol + c1.phase.clone() - c2.phase.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::{pair, q, Cochain};
    use crate::fixtures;

    fn paths() -> (Arc<Complex>, Filling, Filling, DiffChar, Cochain) {
        let s1 = fixtures::circle();
        let eta = Cochain::from_terms(&s1, 1, &[(&[0, 1], q(1, 5)), (&[0, 2], q(2, 7)), (&[1, 2], q(-1, 3))]).unwrap();
        let h = DiffChar::iota(s1.clone(), &eta);
        let w = fixtures::interval();
        let direct = Filling::new(SimplicialMap::new(w.clone(), s1.clone(), vec![0, 1]).unwrap(), w.fundamental_cycle().unwrap()).unwrap();
        let w2 = fixtures::interval2();
        let around = Filling::new(SimplicialMap::new(w2.clone(), s1.clone(), vec![0, 2, 1]).unwrap(), w2.fundamental_cycle().unwrap()).unwrap();
        (s1, direct, around, h, eta)
    }

    #[test]
    fn two_paths_differ_by_the_loop() {
        let (s1, direct, around, h, eta) = paths();
        let t = transition_factor(&h, &direct, &around).unwrap();
        let lp = &around.pushed() - &direct.pushed();
        assert!(s1.is_cycle(&lp));
        assert_eq!(t, Phase::new(pair(&eta, &lp).unwrap()));
        assert!(transition_factor(&h, &direct, &direct).unwrap().is_zero());
        let back = transition_factor(&h, &around, &direct).unwrap();
        assert_eq!(back, -t);
    }

    #[test]
    fn pairing_is_unit_on_the_diagonal() {
        let (_, direct, around, h, _) = paths();
        let one = Amplitude::one();
        assert_eq!(hermitian_pairing(&h, &direct, &one, &direct, &one).unwrap(), one);
        let p = hermitian_pairing(&h, &direct, &one, &around, &one).unwrap();
        assert_eq!(p.phase, transition_factor(&h, &around, &direct).unwrap());
    }

    #[test]
    fn mismatched_boundaries_rejected() {
        let (s1, direct, _, h, _) = paths();
        let w = fixtures::interval();
        let other = Filling::new(SimplicialMap::new(w.clone(), s1.clone(), vec![1, 2]).unwrap(), w.fundamental_cycle().unwrap()).unwrap();
        assert_eq!(transition_factor(&h, &direct, &other).unwrap_err(), Error::BoundaryMismatch);
    }
}
