//! Exact integer matrix algebra.
//!
//! Everything here works over arbitrary-precision integers. The Smith normal
//! form is the single engine behind homology, cohomology, integer solving and
//! the cycle splittings used by the Künneth decomposition.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Builds a matrix from small integer rows. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// Product with a rational vector.
    pub fn mul_vec_rational(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigRational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += b * BigRational::from_integer(a.clone());
                    }
                }
                acc
            })
            .collect()
    }

    /// `selfᵀ · v` without materializing the transpose.
    pub fn transpose_mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.rows, v.len(), "dimension mismatch in transposed product");
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, a) in self.row(i).iter().enumerate() {
                if !a.is_zero() {
                    out[j] += a * x;
                }
            }
        }
        out
    }

    pub fn transpose_mul_vec_rational(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.rows, v.len(), "dimension mismatch in transposed product");
        let mut out = vec![BigRational::zero(); self.cols];
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, a) in self.row(i).iter().enumerate() {
                if !a.is_zero() {
                    out[j] += x * BigRational::from_integer(a.clone());
                }
            }
        }
        out
    }

    /// Rows `start..end` as a new matrix.
    pub fn row_block(&self, start: usize, end: usize) -> IntMatrix {
        IntMatrix {
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    /// Columns `start..end` as a new matrix.
    pub fn col_block(&self, start: usize, end: usize) -> IntMatrix {
        Self::from_fn(self.rows, end - start, |i, j| self.get(i, start + j).clone())
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1).clone()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let s = &self.data[src * self.cols + c];
            if !s.is_zero() {
                let v = s * q;
                self.data[dst * self.cols + c] += v;
            }
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let s = &self.data[r * self.cols + src];
            if !s.is_zero() {
                let v = s * q;
                self.data[r * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -std::mem::take(&mut self.data[i * self.cols + c]);
            self.data[i * self.cols + c] = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            let v = -std::mem::take(&mut self.data[r * self.cols + j]);
            self.data[r * self.cols + j] = v;
        }
    }
}

/// `A = U · D · V` with unimodular `U`, `V` and diagonal `D` whose nonzero
/// entries form a divisibility chain. Inverses of `U` and `V` are tracked
/// alongside so no matrix inversion is ever needed.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    rank: usize,
}

impl SnfDecomposition {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The nonzero diagonal entries `d_1 | d_2 | …`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

struct SnfWork {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl SnfWork {
    // D <- E D, U <- U E^{-1}, U^{-1} <- E U^{-1}
    fn row_add(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.d.add_row_multiple(dst, src, q);
        self.u_inv.add_row_multiple(dst, src, q);
        self.u.add_col_multiple(src, dst, &-q);
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.d.swap_rows(i, j);
        self.u_inv.swap_rows(i, j);
        self.u.swap_cols(i, j);
    }

    fn row_negate(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u_inv.negate_row(i);
        self.u.negate_col(i);
    }

    // D <- D F, V <- F^{-1} V, V^{-1} <- V^{-1} F
    fn col_add(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.d.add_col_multiple(dst, src, q);
        self.v_inv.add_col_multiple(dst, src, q);
        self.v.add_row_multiple(src, dst, &-q);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        self.d.swap_cols(i, j);
        self.v_inv.swap_cols(i, j);
        self.v.swap_rows(i, j);
    }
}

/// Smith normal form with minimal-absolute-value pivoting.
pub fn smith_normal_form(a: &IntMatrix) -> SnfDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut w = SnfWork {
        d: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    let mut rank = 0;
    for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = w.d.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => x.abs() < w.d.get(bi, bj).abs(),
                    };
                    if better {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(w, rank);
            };
            w.row_swap(t, pi);
            w.col_swap(t, pj);
            let pivot = w.d.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..m {
                if w.d.get(i, t).is_zero() {
                    continue;
                }
                let q = w.d.get(i, t).div_floor(&pivot);
                w.row_add(i, t, &-q);
                dirty |= !w.d.get(i, t).is_zero();
            }
            for j in t + 1..n {
                if w.d.get(t, j).is_zero() {
                    continue;
                }
                let q = w.d.get(t, j).div_floor(&pivot);
                w.col_add(j, t, &-q);
                dirty |= !w.d.get(t, j).is_zero();
            }
            if dirty {
                continue;
            }
            // divisibility of the remaining block
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.d.get(i, j).is_multiple_of(&pivot)));
            if let Some(i) = offender {
                w.row_add(t, i, &BigInt::one());
                continue;
            }
            break;
        }
        if w.d.get(t, t).is_negative() {
            w.row_negate(t);
        }
        rank += 1;
    }
    finish(w, rank)
}

fn finish(w: SnfWork, rank: usize) -> SnfDecomposition {
    SnfDecomposition { u: w.u, u_inv: w.u_inv, d: w.d, v: w.v, v_inv: w.v_inv, rank }
}

/// Integer solution of `A x = b`, or `None` when none exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    solve_integer_with(&smith_normal_form(a), b)
}

/// Same as [`solve_integer`] against a precomputed decomposition. The
/// returned solution lies in the span of the first `rank` columns of `V⁻¹`.
pub fn solve_integer_with(snf: &SnfDecomposition, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), snf.d.rows(), "right-hand side has wrong length");
    let c = snf.u_inv.mul_vec(b);
    let r = snf.rank();
    if c[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut y = vec![BigInt::zero(); snf.d.cols()];
    for i in 0..r {
        let (q, rem) = c[i].div_rem(snf.d.get(i, i));
        if !rem.is_zero() {
            return None;
        }
        y[i] = q;
    }
    Some(snf.v_inv.mul_vec(&y))
}

/// Rational solution of `A x = b` for rational `b`.
pub fn solve_rational(a: &IntMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    solve_rational_with(&smith_normal_form(a), b)
}

pub fn solve_rational_with(snf: &SnfDecomposition, b: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(b.len(), snf.d.rows(), "right-hand side has wrong length");
    let c = snf.u_inv.mul_vec_rational(b);
    let r = snf.rank();
    if c[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut y = vec![BigRational::zero(); snf.d.cols()];
    for i in 0..r {
        y[i] = &c[i] / BigRational::from_integer(snf.d.get(i, i).clone());
    }
    Some(snf.v_inv.mul_vec_rational(&y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn check_decomposition(a: &IntMatrix) -> SnfDecomposition {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(&s.d).mul(&s.v), *a);
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(a.rows()));
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(a.cols()));
        assert_eq!(s.u.determinant().abs(), BigInt::one());
        assert_eq!(s.v.determinant().abs(), BigInt::one());
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        for i in s.rank()..a.rows().min(a.cols()) {
            assert!(s.d.get(i, i).is_zero());
        }
        s
    }

    #[test]
    fn identity_is_its_own_normal_form() {
        let s = check_decomposition(&IntMatrix::identity(2));
        assert_eq!(s.invariant_factors(), vec![bi(1), bi(1)]);
    }

    #[test]
    fn diag_2_3_becomes_1_6() {
        let s = check_decomposition(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.invariant_factors(), vec![bi(1), bi(6)]);
    }

    #[test]
    fn triangle_boundary() {
        // columns [0,1], [0,2], [1,2]; rows vertices 0, 1, 2
        let a = IntMatrix::from_rows(&[vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]);
        let s = check_decomposition(&a);
        assert_eq!(s.invariant_factors(), vec![bi(1), bi(1)]);
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn empty_and_zero_matrices() {
        check_decomposition(&IntMatrix::zeros(0, 3));
        check_decomposition(&IntMatrix::zeros(3, 0));
        let s = check_decomposition(&IntMatrix::zeros(2, 2));
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn determinant_small() {
        let a = IntMatrix::from_rows(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        assert_eq!(a.determinant(), bi(18));
        let b = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(b.determinant(), bi(-1));
    }

    #[test]
    fn solve_identity_and_parity() {
        let b = vec![bi(4), bi(-7)];
        assert_eq!(solve_integer(&IntMatrix::identity(2), &b), Some(b.clone()));
        assert_eq!(solve_integer(&IntMatrix::from_rows(&[vec![2]]), &[bi(3)]), None);
        assert_eq!(solve_integer(&IntMatrix::from_rows(&[vec![2]]), &[bi(6)]), Some(vec![bi(3)]));
    }

    #[test]
    fn rational_solve() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 0]]);
        let half = BigRational::new(bi(1), bi(2));
        let x = solve_rational(&a, &[BigRational::one(), BigRational::zero()]).unwrap();
        assert_eq!(x[0], half);
        assert!(solve_rational(&a, &[BigRational::one(), BigRational::one()]).is_none());
    }

    #[test]
    fn coefficient_growth_stays_exact() {
        let a = IntMatrix::from_rows(&[
            vec![123456789, 987654321, 5],
            vec![-55555, 777777, 31],
            vec![42, -1, 999999999],
        ]);
        let s = check_decomposition(&a);
        let prod: BigInt = s.invariant_factors().iter().product();
        assert_eq!(prod.abs(), a.determinant().abs());
    }
}
