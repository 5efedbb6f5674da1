// Brute-force homology straight from boundary matrices: ranks by fraction-free
// elimination over Q and over F_p, torsion by naive integer diagonalization.
// Deliberately shares nothing with the library's Smith normal form path.

use diffchar::simplicial::Complex;

pub type Mat = Vec<Vec<i128>>;

/// Boundary matrix of degree `n` (rows: (n−1)-simplices, columns: n-simplices),
/// built from the vertex lists alone.
pub fn boundary_matrix(cx: &Complex, n: usize) -> Mat {
    let rows = if n == 0 { 0 } else { cx.count(n - 1) };
    let mut m = vec![vec![0i128; cx.count(n)]; rows];
    if n == 0 {
        return m;
    }
    for (j, s) in cx.simplices(n).iter().enumerate() {
        for i in 0..s.len() {
            let face: Vec<usize> = s.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &v)| v).collect();
            let r = cx.simplices(n - 1).iter().position(|t| *t == face).expect("face present");
            m[r][j] += if i % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

/// Rank over Q (Bareiss elimination, entries stay integral).
pub fn rank_q(m: &Mat) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.len(), a.first().map_or(0, Vec::len));
    let mut rank = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        rank += 1;
    }
    rank
}

pub fn rank_mod(m: &Mat, p: i128) -> usize {
    let mut a: Mat = m.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let (rows, cols) = (a.len(), a.first().map_or(0, Vec::len));
    let inv = |x: i128| (1..p).find(|y| x * y % p == 1).unwrap();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, piv);
        let s = inv(a[rank][c]);
        for k in 0..cols {
            a[rank][k] = a[rank][k] * s % p;
        }
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                for k in 0..cols {
                    a[r][k] = (a[r][k] - f * a[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Nonzero diagonal entries after naive integer diagonalization, normalized
/// so that each divides the next.
pub fn diagonal(m: &Mat) -> Vec<i128> {
    let mut a = m.clone();
    let (rows, cols) = (a.len(), a.first().map_or(0, Vec::len));
    let mut d = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block as pivot
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                if a[r][c] != 0 && best.is_none_or(|(br, bc)| a[r][c].abs() < a[br][bc].abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((r, c)) = best else { break };
        a.swap(t, r);
        for row in a.iter_mut() {
            row.swap(t, c);
        }
        let p = a[t][t];
        let mut clean = true;
        for r in t + 1..rows {
            let q = a[r][t] / p;
            for k in t..cols {
                a[r][k] -= q * a[t][k];
            }
            clean &= a[r][t] == 0;
        }
        for c in t + 1..cols {
            let q = a[t][c] / p;
            for row in a.iter_mut().skip(t) {
                row[c] -= q * row[t];
            }
            clean &= a[t][c] == 0;
        }
        if !clean {
            continue;
        }
        // the pivot must divide the rest of the block; fold an offending row in
        if let Some(r) = (t + 1..rows).find(|&r| a[r][t + 1..].iter().any(|x| x % p != 0)) {
            for k in t..cols {
                a[t][k] += a[r][k];
            }
            continue;
        }
        d.push(p.abs());
        t += 1;
    }
    d
}

#[derive(Debug, PartialEq, Eq)]
pub struct Brute {
    pub betti: usize,
    pub torsion: Vec<i128>,
}

pub fn homology(cx: &Complex, n: usize) -> Brute {
    let dn = boundary_matrix(cx, n);
    let dn1 = boundary_matrix(cx, n + 1);
    let (rn, rn1) = (rank_q(&dn), rank_q(&dn1));
    let betti = cx.count(n) - rn - rn1;
    let diag = diagonal(&dn1);
    assert_eq!(diag.len(), rn1, "diagonalization rank disagrees with Bareiss rank");
    let torsion: Vec<i128> = diag.into_iter().filter(|&x| x != 1).collect();
    // cross-check against ranks mod p: the rank drop counts summands divisible by p
    for p in [2, 3, 5, 7] {
        let drop = rn1 - rank_mod(&dn1, p);
        assert_eq!(drop, torsion.iter().filter(|&&d| d % p == 0).count(), "mod {p} rank drop");
    }
    Brute { betti, torsion }
}
