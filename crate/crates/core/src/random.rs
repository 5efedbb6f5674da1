//! Seeded generators of random cochains and characters for property checks.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::character::{DiffChar, FlatClass};
use crate::cochain::{coboundary, Cochain};
use crate::product::external_product;
use crate::simplicial::{Complex, ProductComplex};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rational `n/d` with `|n| ≤ 6`, `1 ≤ d ≤ 6`.
pub fn rational<R: Rng>(rng: &mut R) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(-6..=6)), BigInt::from(rng.gen_range(1..=6)))
}

pub fn integer<R: Rng>(rng: &mut R, bound: i64) -> BigInt {
    BigInt::from(rng.gen_range(-bound..=bound))
}

pub fn rational_cochain<R: Rng>(rng: &mut R, cx: &Complex, degree: usize) -> Cochain {
    Cochain::rational(degree, (0..cx.count(degree)).map(|_| rational(rng)).collect())
}

pub fn integer_cochain<R: Rng>(rng: &mut R, cx: &Complex, degree: usize, bound: i64) -> Cochain {
    let v: Vec<BigInt> = (0..cx.count(degree)).map(|_| integer(rng, bound)).collect();
    Cochain::integer(degree, &v)
}

/// Random combination of the cohomology generators plus an integral
/// coboundary.
pub fn integral_cocycle<R: Rng>(rng: &mut R, cx: &Complex, degree: usize) -> Cochain {
    let h = cx.cohomology(degree);
    let mut v = vec![BigInt::from(0); cx.count(degree)];
    for g in &h.generators {
        let c = integer(rng, 2);
        for (x, y) in v.iter_mut().zip(g) {
            *x += &c * y;
        }
    }
    let mut out = Cochain::integer(degree, &v);
    if degree > 0 {
        out = &out + &coboundary(cx, &integer_cochain(rng, cx, degree - 1, 1));
    }
    out.normalized_ring()
}

/// `(μ + δh̃, h̃)` for a random integral cocycle `μ` and rational `h̃`.
pub fn character<R: Rng>(rng: &mut R, cx: &Arc<Complex>, degree: usize) -> DiffChar {
    assert!(degree >= 1);
    let mu = integral_cocycle(rng, cx, degree);
    let lift = rational_cochain(rng, cx, degree - 1);
    let omega = &mu + &coboundary(cx, &lift);
    DiffChar::new(cx.clone(), omega, lift).expect("valid by construction")
}

pub fn flat_character<R: Rng>(rng: &mut R, cx: &Arc<Complex>, degree: usize) -> DiffChar {
    DiffChar::j(&flat_class(rng, cx, degree - 1))
}

/// `Σ r_i κ_i + δs`: rational multiples of the homology coordinate
/// functionals (multiples of `1/d_i` on torsion) plus a rational coboundary.
pub fn flat_class<R: Rng>(rng: &mut R, cx: &Arc<Complex>, degree: usize) -> FlatClass {
    let h = cx.homology(degree);
    let mut u = Cochain::zero(cx, degree).as_rational();
    for i in 0..h.num_generators() {
        let r = match h.order(i) {
            Some(_) => BigRational::from_integer(integer(rng, 3)),
            None => rational(rng),
        };
        u = &u + FlatClass::dual(cx.clone(), degree, i, &r).cochain();
    }
    if degree > 0 {
        u = &u + &coboundary(cx, &rational_cochain(rng, cx, degree - 1));
    }
    FlatClass::new(cx.clone(), u).expect("Q/Z cocycle by construction")
}

/// A character on a product assembled from its factors — pulled-back and
/// external products of random factor characters, plus `ι` of a random
/// cochain — so the cohomology of the (possibly large) product is never
/// computed. Tor classes of the product are not reached.
pub fn product_character<R: Rng>(rng: &mut R, prod: &ProductComplex, degree: usize) -> DiffChar {
    assert!(degree >= 1);
    let (l, r) = (prod.left(), prod.right());
    let mut h = DiffChar::iota(prod.complex().clone(), &rational_cochain(rng, prod.complex(), degree - 1));
    let add = |h: DiffChar, g: DiffChar| h.add(&g).expect("same complex");
    if degree <= l.dim() + 1 {
        h = add(h, character(rng, l, degree).pullback(prod.proj_left()).expect("projection"));
    }
    if degree <= r.dim() + 1 {
        h = add(h, character(rng, r, degree).pullback(prod.proj_right()).expect("projection"));
    }
    for p in 1..degree {
        let q = degree - p;
        if p <= l.dim() && q <= r.dim() {
            let x = external_product(prod, &character(rng, l, p), &character(rng, r, q)).expect("factors");
            h = add(h, x);
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn generated_objects_are_valid() {
        let mut r = rng(7);
        for cx in fixtures::closed_surfaces() {
            for k in 1..=cx.dim().min(2) + 1 {
                let h = character(&mut r, &cx, k);
                assert_eq!(h.degree(), k);
                let f = flat_character(&mut r, &cx, k);
                assert!(f.is_flat());
            }
        }
    }

    #[test]
    fn seeded_runs_repeat() {
        let cx = fixtures::sphere();
        let a = character(&mut rng(3), &cx, 2);
        let b = character(&mut rng(3), &cx, 2);
        assert_eq!(a.lift(), b.lift());
    }
}
