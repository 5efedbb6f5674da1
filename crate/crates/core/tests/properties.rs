// Property tests for the algebraic invariants. Random characters are drawn
// from seeded generators, so proptest shrinks over the seed.

#[path = "support/brute.rs"]
mod brute;

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use diffchar::character::DiffChar;
use diffchar::cochain::{coboundary, cup, cup1, pair};
use diffchar::fixtures;
use diffchar::io::{parse, to_pretty, CharacterFile};
use diffchar::linalg::{smith_normal_form, IntMatrix};
use diffchar::phase::Phase;
use diffchar::product::internal_product;
use diffchar::random;
use diffchar::simplicial::{Chain, Complex};

fn surfaces() -> Vec<Arc<Complex>> {
    fixtures::closed_surfaces()
}

fn cycles(cx: &Complex, n: usize) -> Vec<Chain> {
    cx.homology(n).generators.iter().map(|g| Chain::new(n, g.clone())).collect()
}

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) { 1 } else { -1 }
}

fn ratio() -> impl Strategy<Value = BigRational> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn phases_form_a_group(a in ratio(), b in ratio(), c in ratio()) {
        let (a, b, c) = (Phase::new(a), Phase::new(b), Phase::new(c));
        prop_assert_eq!(a.clone() + (b.clone() + c.clone()), (a.clone() + b.clone()) + c);
        prop_assert_eq!(a.clone() + b.clone() - b, a.clone());
        prop_assert!((a.clone() - a).is_zero());
    }

    #[test]
    fn coboundary_squares_to_zero(seed in any::<u64>(), which in 0usize..5, k in 0usize..2) {
        let cx = &surfaces()[which];
        let mut rng = random::rng(seed);
        let a = random::rational_cochain(&mut rng, cx, k);
        prop_assert!(coboundary(cx, &coboundary(cx, &a)).is_zero());
    }

    #[test]
    fn cup_satisfies_leibniz(seed in any::<u64>(), which in 0usize..5, p in 0usize..2) {
        let cx = &surfaces()[which];
        let mut rng = random::rng(seed);
        let q = 1 - p.min(1);
        let a = random::rational_cochain(&mut rng, cx, p);
        let b = random::rational_cochain(&mut rng, cx, q);
        let lhs = coboundary(cx, &cup(cx, &a, &b));
        let rhs = &cup(cx, &coboundary(cx, &a), &b) + &cup(cx, &a, &coboundary(cx, &b)).scale_int(sign(p));
        prop_assert_eq!(lhs.values(), rhs.values());
    }

    #[test]
    fn cup1_coboundary_formula(seed in any::<u64>(), which in 0usize..5, p in 1usize..3) {
        let cx = &surfaces()[which];
        let mut rng = random::rng(seed);
        let q = 3 - p;
        if p + q > cx.dim() + 1 { return Ok(()); }
        let a = random::rational_cochain(&mut rng, cx, p);
        let b = random::rational_cochain(&mut rng, cx, q);
        let lhs = coboundary(cx, &cup1(cx, &a, &b));
        let rhs = &(&(&cup(cx, &a, &b).scale_int(sign(p * q + q + 1)) + &cup(cx, &b, &a).scale_int(sign(q)))
            + &cup1(cx, &coboundary(cx, &a), &b).scale_int(sign(q + 1)))
            + &cup1(cx, &a, &coboundary(cx, &b));
        prop_assert_eq!(lhs.values(), rhs.values());
    }

    #[test]
    fn evaluation_is_additive(seed in any::<u64>(), which in 0usize..5, k in 1usize..3) {
        let cx = &surfaces()[which];
        let mut rng = random::rng(seed);
        let h = random::character(&mut rng, cx, k);
        let f = random::character(&mut rng, cx, k);
        let s = h.add(&f).unwrap();
        for z in cycles(cx, k - 1) {
            prop_assert_eq!(s.evaluate(&z).unwrap(), h.evaluate(&z).unwrap() + f.evaluate(&z).unwrap());
        }
        prop_assert!(h.sub(&h).unwrap().is_zero());
    }

    #[test]
    fn curvature_governs_boundaries(seed in any::<u64>(), which in 0usize..5, k in 1usize..3) {
        // h(∂c) = ∫_c curv mod 1
        let cx = &surfaces()[which];
        let mut rng = random::rng(seed);
        let h = random::character(&mut rng, cx, k);
        for i in 0..cx.count(k) {
            let c = cx.basis_chain(k, i);
            let want = Phase::new(pair(h.curvature(), &c).unwrap());
            prop_assert_eq!(h.evaluate(&cx.boundary(&c)).unwrap(), want);
        }
    }

    #[test]
    fn iota_is_linear_and_kills_integral_coboundaries(seed in any::<u64>(), which in 0usize..5, k in 1usize..3) {
        let cx = &surfaces()[which];
        let mut rng = random::rng(seed);
        let a = random::rational_cochain(&mut rng, cx, k - 1);
        let b = random::rational_cochain(&mut rng, cx, k - 1);
        let sum = DiffChar::iota(cx.clone(), &(&a + &b));
        prop_assert!(sum.equals(&DiffChar::iota(cx.clone(), &a).add(&DiffChar::iota(cx.clone(), &b)).unwrap()));
        let z = random::integral_cocycle(&mut rng, cx, k - 1);
        prop_assert!(DiffChar::iota(cx.clone(), &z).is_zero());
    }

    #[test]
    fn product_distributes_over_sums(seed in any::<u64>(), which in 0usize..5) {
        let cx = &surfaces()[which];
        let mut rng = random::rng(seed);
        let h = random::character(&mut rng, cx, 1);
        let f = random::character(&mut rng, cx, 1);
        let g = random::character(&mut rng, cx, 1);
        let lhs = internal_product(&h, &f.add(&g).unwrap()).unwrap();
        let rhs = internal_product(&h, &f).unwrap().add(&internal_product(&h, &g).unwrap()).unwrap();
        prop_assert!(lhs.equals(&rhs));
    }

    #[test]
    fn character_json_round_trips(seed in any::<u64>(), which in 0usize..5, k in 1usize..3) {
        let cx = &surfaces()[which];
        let h = random::character(&mut random::rng(seed), cx, k);
        let text = to_pretty(&CharacterFile::of(&h));
        let back = parse::<CharacterFile>(&text).unwrap().build(cx.clone()).unwrap();
        prop_assert!(back.equals(&h));
        prop_assert_eq!(back.lift(), h.lift());
    }

    #[test]
    fn smith_form_matches_brute_force(rows in prop::collection::vec(prop::collection::vec(-4i64..5, 4), 1..6)) {
        let a = IntMatrix::from_rows(&rows);
        let snf = smith_normal_form(&a);
        prop_assert_eq!(&snf.u.mul(&snf.d).mul(&snf.v), &a);
        prop_assert_eq!(snf.u.mul(&snf.u_inv), IntMatrix::identity(a.rows()));
        prop_assert_eq!(snf.v.mul(&snf.v_inv), IntMatrix::identity(a.cols()));
        let want = brute::diagonal(&rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect());
        let got: Vec<i128> = snf.invariant_factors().iter().map(|d| i128::try_from(d).unwrap()).collect();
        prop_assert_eq!(got, want);
    }
}

#[test]
fn brute_force_homology_of_fixtures() {
    for name in fixtures::FIXTURE_NAMES {
        let cx = fixtures::complex_by_name(name).unwrap();
        for n in 0..=cx.dim() {
            let want = brute::homology(&cx, n);
            let got = cx.homology(n);
            assert_eq!(got.betti, want.betti, "betti H_{n}({name})");
            let t: Vec<i128> = got.torsion.iter().map(|d| i128::try_from(d).unwrap()).collect();
            assert_eq!(t, want.torsion, "torsion H_{n}({name})");
        }
    }
}
