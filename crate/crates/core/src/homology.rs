//! Homology, cohomology and cycle splittings of finite free chain complexes.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::linalg::{smith_normal_form, solve_integer_with, solve_rational_with, IntMatrix, SnfDecomposition};

/// A bounded chain complex of finitely generated free abelian groups.
pub trait ChainComplex {
    fn rank(&self, n: usize) -> usize;

    /// `∂_n : C_n → C_{n−1}` as a `rank(n−1) × rank(n)` matrix; for `n = 0`
    /// the matrix has zero rows.
    fn boundary_matrix(&self, n: usize) -> IntMatrix;

    /// Coboundary `δ_n : C^n → C^{n+1}`, i.e. `∂_{n+1}ᵀ`.
    fn coboundary_matrix(&self, n: usize) -> IntMatrix {
        self.boundary_matrix(n + 1).transpose()
    }
}

/// Splitting `C_n = Z_n ⊕ W` of a chain group along the kernel of an
/// outgoing map, with the projection `s : C_n → Z_n` along `W`.
///
/// With `d_out = U·D·V` and `r = rank d_out`, the kernel is spanned by the
/// last columns of `V⁻¹` and the complement by the first `r` columns, so
/// `s = V⁻¹ · diag(0,…,0,1,…,1) · V`.
#[derive(Clone, Debug)]
pub struct CycleSplitting {
    pub degree: usize,
    snf: SnfDecomposition,
    pub cycle_basis: Vec<Vec<BigInt>>,
    pub complement_basis: Vec<Vec<BigInt>>,
}

impl CycleSplitting {
    pub fn new(degree: usize, d_out: &IntMatrix) -> Self {
        let snf = smith_normal_form(d_out);
        let r = snf.rank();
        let c = d_out.cols();
        let cycle_basis = (r..c).map(|j| snf.v_inv.column(j)).collect();
        let complement_basis = (0..r).map(|j| snf.v_inv.column(j)).collect();
        CycleSplitting { degree, snf, cycle_basis, complement_basis }
    }

    /// Rank of the chain group being split.
    pub fn chain_rank(&self) -> usize {
        self.snf.v.rows()
    }

    pub fn cycle_rank(&self) -> usize {
        self.cycle_basis.len()
    }

    pub fn snf(&self) -> &SnfDecomposition {
        &self.snf
    }

    pub fn is_cycle(&self, c: &[BigInt]) -> bool {
        self.snf.u.mul_vec(&self.snf.d.mul_vec(&self.snf.v.mul_vec(c))).iter().all(Zero::is_zero)
    }

    /// Coefficients of `s(c)` in [`Self::cycle_basis`].
    pub fn cycle_coordinates(&self, c: &[BigInt]) -> Vec<BigInt> {
        let r = self.snf.rank();
        self.snf.v.mul_vec(c).split_off(r)
    }

    pub fn cycle_coordinates_rational(&self, c: &[BigRational]) -> Vec<BigRational> {
        let r = self.snf.rank();
        self.snf.v.mul_vec_rational(c).split_off(r)
    }

    /// The projection `s : C_n → Z_n`.
    pub fn project(&self, c: &[BigInt]) -> Vec<BigInt> {
        let r = self.snf.rank();
        let mut y = self.snf.v.mul_vec(c);
        y[..r].iter_mut().for_each(|x| *x = BigInt::zero());
        self.snf.v_inv.mul_vec(&y)
    }

    /// The cochain `w ∘ s` for a cochain `w` on `C_n`.
    pub fn precompose_projection(&self, w: &[BigRational]) -> Vec<BigRational> {
        let r = self.snf.rank();
        let mut y = self.snf.v_inv.transpose_mul_vec_rational(w);
        y[..r].iter_mut().for_each(|x| *x = BigRational::zero());
        self.snf.v.transpose_mul_vec_rational(&y)
    }

    /// Integer `x` with `d_out · x = b`, supported on the complement.
    pub fn boundary_section(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        solve_integer_with(&self.snf, b)
    }

    /// Rational `x` with `d_out · x = b`, supported on the complement.
    pub fn solve_rational(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        solve_rational_with(&self.snf, b)
    }
}

/// `H ≅ Z^betti ⊕ ⊕ Z/d_i`, with explicit generators and a coordinate
/// functional defined on the whole chain group.
#[derive(Clone, Debug)]
pub struct HomologyGroup {
    pub degree: usize,
    pub betti: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
    /// Torsion generators first (in the order of `torsion`), then free ones.
    pub generators: Vec<Vec<BigInt>>,
    coordinates: IntMatrix,
}

impl HomologyGroup {
    /// Homology of `prev --d_in--> C --d_out--> next` at `C`, with `splitting`
    /// the kernel splitting of `d_out`.
    pub fn from_splitting(splitting: &CycleSplitting, d_in: &IntMatrix) -> Self {
        let snf1 = splitting.snf();
        let r = snf1.rank();
        let c = splitting.chain_rank();
        assert_eq!(d_in.rows(), c, "incoming map has the wrong codomain");
        // image of d_in in kernel coordinates
        let m = snf1.v.mul(d_in).row_block(r, c);
        let snf2 = smith_normal_form(&m);
        let z = c - r;
        let factors = snf2.invariant_factors();
        let zb = snf1.v_inv.col_block(r, c);
        let gens = zb.mul(&snf2.u);
        let kernel_coords = snf1.v.row_block(r, c);
        let coord_all = snf2.u_inv.mul(&kernel_coords);

        let mut keep = Vec::new();
        let mut torsion = Vec::new();
        for (i, d) in factors.iter().enumerate() {
            if !d.is_one() {
                keep.push(i);
                torsion.push(d.clone());
            }
        }
        let betti = z - factors.len();
        keep.extend(factors.len()..z);
        let generators = keep.iter().map(|&i| gens.column(i)).collect();
        let coordinates = IntMatrix::from_fn(keep.len(), c, |a, b| coord_all.get(keep[a], b).clone());
        HomologyGroup { degree: splitting.degree, betti, torsion, generators, coordinates }
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn num_torsion(&self) -> usize {
        self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// `Some(d)` for a torsion generator of order `d`, `None` for a free one.
    pub fn order(&self, i: usize) -> Option<&BigInt> {
        self.torsion.get(i)
    }

    /// Integer functional giving the `i`-th coordinate of `s(c)`.
    pub fn coordinate_functional(&self, i: usize) -> &[BigInt] {
        self.coordinates.row(i)
    }

    pub fn coordinate_matrix(&self) -> &IntMatrix {
        &self.coordinates
    }

    /// Raw coordinates of a cycle; torsion entries are not reduced.
    pub fn raw_coordinates(&self, c: &[BigInt]) -> Vec<BigInt> {
        self.coordinates.mul_vec(c)
    }

    /// Coordinates of a cycle with torsion entries reduced into `[0, d)`.
    pub fn coordinates(&self, c: &[BigInt]) -> Vec<BigInt> {
        let mut x = self.raw_coordinates(c);
        for (xi, d) in x.iter_mut().zip(&self.torsion) {
            *xi = xi.mod_floor(d);
        }
        x
    }

    pub fn is_zero_class(&self, c: &[BigInt]) -> bool {
        self.coordinates(c).iter().all(Zero::is_zero)
    }

    /// Order of the class of `c`, or `None` when it has infinite order.
    pub fn class_order(&self, c: &[BigInt]) -> Option<BigInt> {
        let x = self.coordinates(c);
        if x[self.num_torsion()..].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let mut n = BigInt::one();
        for (t, d) in x.iter().zip(&self.torsion) {
            n = n.lcm(&(d / t.gcd(d)));
        }
        Some(n)
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

pub fn cycle_splitting<C: ChainComplex + ?Sized>(cx: &C, n: usize) -> CycleSplitting {
    CycleSplitting::new(n, &cx.boundary_matrix(n))
}

/// Splitting of `C^n` along the cocycles `ker δ_n`.
pub fn cocycle_splitting<C: ChainComplex + ?Sized>(cx: &C, n: usize) -> CycleSplitting {
    CycleSplitting::new(n, &cx.coboundary_matrix(n))
}

pub fn homology<C: ChainComplex + ?Sized>(cx: &C, n: usize) -> HomologyGroup {
    HomologyGroup::from_splitting(&cycle_splitting(cx, n), &cx.boundary_matrix(n + 1))
}

pub fn cohomology<C: ChainComplex + ?Sized>(cx: &C, n: usize) -> HomologyGroup {
    let d_in = if n == 0 { IntMatrix::zeros(cx.rank(0), 0) } else { cx.coboundary_matrix(n - 1) };
    HomologyGroup::from_splitting(&cocycle_splitting(cx, n), &d_in)
}

/// Whether the map induced on homology by a chain map is injective. `map`
/// sends `C_n(source)` to `C_n(target)`.
pub fn induced_map_is_injective(source: &HomologyGroup, target: &HomologyGroup, map: &IntMatrix) -> bool {
    let m = source.num_generators();
    let t = target.num_torsion();
    let g = target.num_generators();
    // x ↦ coordinates of map(gen · x); kernel of [M | −D_target]
    let mut block = IntMatrix::zeros(g, m + t);
    for (a, gen) in source.generators.iter().enumerate() {
        let img = target.raw_coordinates(&map.mul_vec(gen));
        for (i, v) in img.into_iter().enumerate() {
            block.set(i, a, v);
        }
    }
    for (i, d) in target.torsion.iter().enumerate() {
        block.set(i, m + i, -d.clone());
    }
    let split = CycleSplitting::new(0, &block);
    split.cycle_basis.iter().all(|v| {
        v[..m].iter().enumerate().all(|(i, x)| match source.order(i) {
            Some(d) => x.is_multiple_of(d),
            None => x.is_zero(),
        })
    })
}

/// Per-degree memo safe for concurrent readers.
pub struct Memo<T> {
    slots: Mutex<HashMap<usize, Arc<T>>>,
}

impl<T> Default for Memo<T> {
    fn default() -> Self {
        Memo { slots: Mutex::new(HashMap::new()) }
    }
}

impl<T> Memo<T> {
    pub fn get_or_compute(&self, n: usize, f: impl FnOnce() -> T) -> Arc<T> {
        if let Some(v) = self.slots.lock().unwrap().get(&n) {
            return v.clone();
        }
        let v = Arc::new(f());
        self.slots.lock().unwrap().entry(n).or_insert(v).clone()
    }
}

/// Cached homological data of a chain complex.
#[derive(Default)]
pub struct HomologyCache {
    cycles: Memo<CycleSplitting>,
    cocycles: Memo<CycleSplitting>,
    homology: Memo<HomologyGroup>,
    cohomology: Memo<HomologyGroup>,
}

impl HomologyCache {
    pub fn cycle_splitting<C: ChainComplex + ?Sized>(&self, cx: &C, n: usize) -> Arc<CycleSplitting> {
        self.cycles.get_or_compute(n, || cycle_splitting(cx, n))
    }

    pub fn cocycle_splitting<C: ChainComplex + ?Sized>(&self, cx: &C, n: usize) -> Arc<CycleSplitting> {
        self.cocycles.get_or_compute(n, || cocycle_splitting(cx, n))
    }

    pub fn homology<C: ChainComplex + ?Sized>(&self, cx: &C, n: usize) -> Arc<HomologyGroup> {
        self.homology.get_or_compute(n, || {
            HomologyGroup::from_splitting(&self.cycle_splitting(cx, n), &cx.boundary_matrix(n + 1))
        })
    }

    pub fn cohomology<C: ChainComplex + ?Sized>(&self, cx: &C, n: usize) -> Arc<HomologyGroup> {
        self.cohomology.get_or_compute(n, || {
            let d_in = if n == 0 { IntMatrix::zeros(cx.rank(0), 0) } else { cx.coboundary_matrix(n - 1) };
            HomologyGroup::from_splitting(&self.cocycle_splitting(cx, n), &d_in)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Z --2--> Z, i.e. the cellular chains of RP².
    struct Moore;

    impl ChainComplex for Moore {
        fn rank(&self, n: usize) -> usize {
            usize::from(n <= 2)
        }
        fn boundary_matrix(&self, n: usize) -> IntMatrix {
            match n {
                0 => IntMatrix::zeros(0, 1),
                1 => IntMatrix::zeros(1, 1),
                2 => IntMatrix::from_rows(&[vec![2]]),
                3 => IntMatrix::zeros(1, 0),
                _ => IntMatrix::zeros(0, 0),
            }
        }
    }

    #[test]
    fn moore_space() {
        assert_eq!(homology(&Moore, 0).to_string(), "Z");
        let h1 = homology(&Moore, 1);
        assert_eq!(h1.to_string(), "Z/2");
        assert_eq!(h1.coordinates(&[BigInt::from(3)]), vec![BigInt::one()]);
        assert_eq!(homology(&Moore, 2).to_string(), "0");
        assert_eq!(cohomology(&Moore, 1).to_string(), "0");
        assert_eq!(cohomology(&Moore, 2).to_string(), "Z/2");
    }

    #[test]
    fn splitting_projection_is_identity_on_cycles() {
        let d = IntMatrix::from_rows(&[vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]);
        let s = CycleSplitting::new(1, &d);
        assert_eq!(s.cycle_rank(), 1);
        assert_eq!(s.complement_basis.len(), 2);
        let z = &s.cycle_basis[0];
        assert_eq!(&s.project(z), z);
        let e = vec![BigInt::one(), BigInt::zero(), BigInt::zero()];
        let p = s.project(&e);
        assert!(s.is_cycle(&p));
        assert_eq!(s.project(&p), p);
    }

    #[test]
    fn injectivity_of_doubling() {
        let g = homology(&Moore, 0);
        let id = IntMatrix::identity(1);
        assert!(induced_map_is_injective(&g, &g, &id));
        assert!(!induced_map_is_injective(&g, &g, &IntMatrix::zeros(1, 1)));
        let t = homology(&Moore, 1);
        assert!(induced_map_is_injective(&t, &t, &IntMatrix::from_rows(&[vec![3]])));
        assert!(!induced_map_is_injective(&t, &t, &IntMatrix::from_rows(&[vec![2]])));
    }
}
