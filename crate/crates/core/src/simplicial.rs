//! Ordered simplicial complexes, chains, simplicial maps, staircase products
//! with the Eilenberg–Zilber / Alexander–Whitney maps, and mapping cones.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::homology::{ChainComplex, CycleSplitting, HomologyCache, HomologyGroup};
use crate::linalg::IntMatrix;

/// Strictly increasing vertex tuple.
pub type Simplex = Vec<usize>;

pub struct Complex {
    name: String,
    n_vertices: usize,
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
    cache: HomologyCache,
}

impl Clone for Complex {
    fn clone(&self) -> Self {
        Complex {
            name: self.name.clone(),
            n_vertices: self.n_vertices,
            simplices: self.simplices.clone(),
            index: self.index.clone(),
            cache: HomologyCache::default(),
        }
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<usize> = self.simplices.iter().map(Vec::len).collect();
        write!(f, "Complex({:?}, f-vector {:?})", self.name, counts)
    }
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.n_vertices == other.n_vertices && self.simplices == other.simplices
    }
}

impl Eq for Complex {}

impl Complex {
    /// Face closure of `generators` on vertices `0..n_vertices`. Every vertex
    /// is a 0-simplex whether or not it is listed.
    pub fn new(name: impl Into<String>, n_vertices: usize, generators: &[Vec<usize>]) -> Result<Complex> {
        let mut sets: Vec<BTreeSet<Simplex>> = vec![(0..n_vertices).map(|v| vec![v]).collect()];
        for g in generators {
            if g.is_empty() {
                return Err(Error::InvalidSimplex(g.clone(), "empty simplex"));
            }
            if g.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidSimplex(g.clone(), "vertices must be strictly increasing"));
            }
            if g.iter().any(|&v| v >= n_vertices) {
                return Err(Error::InvalidSimplex(g.clone(), "vertex out of range"));
            }
            let d = g.len() - 1;
            while sets.len() <= d {
                sets.push(BTreeSet::new());
            }
            if sets[d].contains(g) {
                continue;
            }
            // all nonempty subsets
            let k = g.len();
            for mask in 1u64..(1u64 << k) {
                let face: Simplex = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| g[i]).collect();
                sets[face.len() - 1].insert(face);
            }
        }
        while sets.len() > 1 && sets.last().is_some_and(BTreeSet::is_empty) {
            sets.pop();
        }
        let simplices: Vec<Vec<Simplex>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let index = simplices
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        Ok(Complex { name: name.into(), n_vertices, simplices, index, cache: HomologyCache::default() })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(&self, name: impl Into<String>) -> Complex {
        let mut c = self.clone();
        c.name = name.into();
        c
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Top degree carrying a simplex (0 for an empty complex).
    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn count(&self, n: usize) -> usize {
        self.simplices.get(n).map_or(0, Vec::len)
    }

    pub fn simplices(&self, n: usize) -> &[Simplex] {
        self.simplices.get(n).map_or(&[], |v| v.as_slice())
    }

    pub fn simplex(&self, n: usize, i: usize) -> &Simplex {
        &self.simplices[n][i]
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        if s.is_empty() {
            return None;
        }
        self.index.get(s.len() - 1)?.get(s).copied()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.index_of(s).is_some()
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.dim()).map(|n| if n % 2 == 0 { self.count(n) as i64 } else { -(self.count(n) as i64) }).sum()
    }

    /// Maximal simplices, in degree then lexicographic order.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for n in 0..=self.dim() {
            for s in self.simplices(n) {
                let has_coface = self.simplices(n + 1).iter().any(|t| is_face(s, t));
                if !has_coface {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    pub fn zero_chain(&self, degree: usize) -> Chain {
        Chain { degree, coeffs: vec![BigInt::zero(); self.count(degree)] }
    }

    pub fn basis_chain(&self, degree: usize, i: usize) -> Chain {
        let mut c = self.zero_chain(degree);
        c.coeffs[i] = BigInt::one();
        c
    }

    /// Chain from `(simplex, coefficient)` terms. The simplex tuples must be
    /// strictly increasing and of the stated degree.
    pub fn chain(&self, degree: usize, terms: &[(&[usize], i64)]) -> Result<Chain> {
        let mut c = self.zero_chain(degree);
        for (s, k) in terms {
            if s.len() != degree + 1 {
                return Err(Error::DegreeMismatch { expected: degree, found: s.len().saturating_sub(1) });
            }
            let i = self.index_of(s).ok_or_else(|| Error::UnknownSimplex(s.to_vec()))?;
            c.coeffs[i] += BigInt::from(*k);
        }
        Ok(c)
    }

    pub fn check_chain(&self, c: &Chain) -> Result<()> {
        if c.coeffs.len() != self.count(c.degree) {
            return Err(Error::ComplexMismatch);
        }
        Ok(())
    }

    /// `∂ = Σ (−1)^i face_i`. `C_{−1} = 0`, so a 0-chain has an empty boundary
    /// vector.
    pub fn boundary(&self, c: &Chain) -> Chain {
        assert_eq!(c.coeffs.len(), self.count(c.degree), "chain does not live on this complex");
        if c.degree == 0 {
            return Chain { degree: 0, coeffs: Vec::new() };
        }
        let mut out = self.zero_chain(c.degree - 1);
        for (i, k) in c.coeffs.iter().enumerate() {
            if k.is_zero() {
                continue;
            }
            for (j, f) in self.faces(c.degree, i) {
                if j % 2 == 0 {
                    out.coeffs[f] += k;
                } else {
                    out.coeffs[f] -= k;
                }
            }
        }
        out
    }

    pub fn is_cycle(&self, c: &Chain) -> bool {
        c.degree == 0 || self.boundary(c).is_zero()
    }

    /// `(i, index of face_i)` for the `i`-th face of simplex `idx` in degree `n ≥ 1`.
    pub fn faces(&self, n: usize, idx: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let s = &self.simplices[n][idx];
        (0..=n).map(move |j| {
            let mut f = s.clone();
            f.remove(j);
            (j, self.index[n - 1][&f])
        })
    }

    pub fn homology(&self, n: usize) -> Arc<HomologyGroup> {
        self.cache.homology(self, n)
    }

    pub fn cohomology(&self, n: usize) -> Arc<HomologyGroup> {
        self.cache.cohomology(self, n)
    }

    pub fn cycle_splitting(&self, n: usize) -> Arc<CycleSplitting> {
        self.cache.cycle_splitting(self, n)
    }

    pub fn cocycle_splitting(&self, n: usize) -> Arc<CycleSplitting> {
        self.cache.cocycle_splitting(self, n)
    }

    /// Vertex sets of the connected components, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n_vertices).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in self.simplices(1) {
            let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..self.n_vertices {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }

    /// A coherently oriented sum of top simplices. For a pseudomanifold with
    /// boundary the result is a fundamental chain whose boundary is a
    /// fundamental cycle of the boundary.
    pub fn fundamental_cycle(&self) -> Result<Chain> {
        let d = self.dim();
        if self.maximal_simplices().iter().any(|s| s.len() != d + 1) {
            return Err(Error::NotPure(d));
        }
        let mut out = self.zero_chain(d);
        if d == 0 {
            out.coeffs.iter_mut().for_each(|c| *c = BigInt::one());
            return Ok(out);
        }
        let mut cofaces: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.count(d - 1)];
        for t in 0..self.count(d) {
            for (j, f) in self.faces(d, t) {
                cofaces[f].push((t, j));
            }
        }
        if cofaces.iter().any(|c| c.len() > 2) {
            return Err(Error::NotManifold);
        }
        let mut sign: Vec<i8> = vec![0; self.count(d)];
        for start in 0..self.count(d) {
            if sign[start] != 0 {
                continue;
            }
            sign[start] = 1;
            let mut queue = VecDeque::from([start]);
            while let Some(t) = queue.pop_front() {
                for (j, f) in self.faces(d, t) {
                    for &(u, ju) in &cofaces[f] {
                        if u == t {
                            continue;
                        }
                        // ε_u [f:u] = −ε_t [f:t]
                        let inc_t: i8 = if j % 2 == 0 { 1 } else { -1 };
                        let inc_u: i8 = if ju % 2 == 0 { 1 } else { -1 };
                        let want = -sign[t] * inc_t * inc_u;
                        if sign[u] == 0 {
                            sign[u] = want;
                            queue.push_back(u);
                        } else if sign[u] != want {
                            return Err(Error::NonOrientable);
                        }
                    }
                }
            }
        }
        for (c, s) in out.coeffs.iter_mut().zip(sign) {
            *c = BigInt::from(s);
        }
        Ok(out)
    }

    /// The subcomplex generated by `generators`, with vertices relabelled
    /// order-preservingly, together with its inclusion.
    pub fn subcomplex(self: &Arc<Self>, name: &str, generators: &[Simplex]) -> Result<(Arc<Complex>, SimplicialMap)> {
        let verts: BTreeSet<usize> = generators.iter().flatten().copied().collect();
        let verts: Vec<usize> = verts.into_iter().collect();
        let relabel: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        for g in generators {
            if !self.contains(g) {
                return Err(Error::UnknownSimplex(g.clone()));
            }
        }
        let gens: Vec<Simplex> = generators.iter().map(|g| g.iter().map(|v| relabel[v]).collect()).collect();
        let sub = Arc::new(Complex::new(name, verts.len(), &gens)?);
        let incl = SimplicialMap::new(sub.clone(), self.clone(), verts)?;
        Ok((sub, incl))
    }

    /// Codimension-one simplices with exactly one coface, as a subcomplex.
    pub fn boundary_subcomplex(self: &Arc<Self>) -> Result<(Arc<Complex>, SimplicialMap)> {
        let d = self.dim();
        if d == 0 {
            return self.subcomplex(&format!("boundary({})", self.name), &[]);
        }
        let mut n_cofaces = vec![0usize; self.count(d - 1)];
        for t in 0..self.count(d) {
            for (_, f) in self.faces(d, t) {
                n_cofaces[f] += 1;
            }
        }
        let gens: Vec<Simplex> = (0..self.count(d - 1))
            .filter(|&f| n_cofaces[f] == 1)
            .map(|f| self.simplex(d - 1, f).clone())
            .collect();
        self.subcomplex(&format!("boundary({})", self.name), &gens)
    }
}

impl ChainComplex for Complex {
    fn rank(&self, n: usize) -> usize {
        self.count(n)
    }

    fn boundary_matrix(&self, n: usize) -> IntMatrix {
        if n == 0 {
            return IntMatrix::zeros(0, self.count(0));
        }
        let mut m = IntMatrix::zeros(self.count(n - 1), self.count(n));
        for i in 0..self.count(n) {
            for (j, f) in self.faces(n, i) {
                m.set(f, i, if j % 2 == 0 { BigInt::one() } else { -BigInt::one() });
            }
        }
        m
    }
}

fn is_face(s: &[usize], t: &[usize]) -> bool {
    s.iter().all(|v| t.binary_search(v).is_ok())
}

/// Integer chain of a fixed degree, stored densely against the simplex order
/// of its complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    degree: usize,
    coeffs: Vec<BigInt>,
}

impl Chain {
    pub fn new(degree: usize, coeffs: Vec<BigInt>) -> Chain {
        Chain { degree, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigInt) -> Chain {
        Chain { degree: self.degree, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Nonzero terms as `(simplex index, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// Human-readable form such as `[0,1] + [1,2] - [0,2]`.
    pub fn display(&self, cx: &Complex) -> String {
        let mut s = String::new();
        for (i, c) in self.terms() {
            let simplex = format!("{:?}", cx.simplex(self.degree, i)).replace(' ', "");
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if s.is_empty() {
                if sign == "-" {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            if !mag.is_one() {
                s.push_str(&format!("{mag}"));
            }
            s.push_str(&simplex);
        }
        if s.is_empty() {
            "0".into()
        } else {
            s
        }
    }
}

impl Add for &Chain {
    type Output = Chain;
    fn add(self, o: &Chain) -> Chain {
        assert_eq!((self.degree, self.coeffs.len()), (o.degree, o.coeffs.len()), "adding chains of different shape");
        Chain { degree: self.degree, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Chain {
    type Output = Chain;
    fn sub(self, o: &Chain) -> Chain {
        assert_eq!((self.degree, self.coeffs.len()), (o.degree, o.coeffs.len()), "subtracting chains of different shape");
        Chain { degree: self.degree, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Chain {
    type Output = Chain;
    fn neg(self) -> Chain {
        Chain { degree: self.degree, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

/// Vertex map between ordered complexes sending simplices to simplices.
#[derive(Clone)]
pub struct SimplicialMap {
    source: Arc<Complex>,
    target: Arc<Complex>,
    vertex_map: Vec<usize>,
    // per degree: image simplex index and orientation sign, None if collapsed
    images: Arc<Vec<Vec<Option<(usize, bool)>>>>,
}

impl fmt::Debug for SimplicialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialMap({} -> {}, {:?})", self.source.name(), self.target.name(), self.vertex_map)
    }
}

impl PartialEq for SimplicialMap {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_map == other.vertex_map && *self.source == *other.source && *self.target == *other.target
    }
}

impl SimplicialMap {
    pub fn new(source: Arc<Complex>, target: Arc<Complex>, vertex_map: Vec<usize>) -> Result<SimplicialMap> {
        if vertex_map.len() != source.n_vertices() {
            return Err(Error::VertexMapLength { expected: source.n_vertices(), found: vertex_map.len() });
        }
        let mut images = Vec::with_capacity(source.dim() + 1);
        for n in 0..=source.dim() {
            let mut level = Vec::with_capacity(source.count(n));
            for s in source.simplices(n) {
                let img: Vec<usize> = s.iter().map(|&v| vertex_map[v]).collect();
                let mut sorted = img.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if !target.contains(&sorted) {
                    return Err(Error::NotSimplicial(s.clone()));
                }
                if sorted.len() < img.len() {
                    level.push(None);
                } else {
                    let idx = target.index_of(&sorted).expect("checked above");
                    level.push(Some((idx, permutation_is_even(&img))));
                }
            }
            images.push(level);
        }
        Ok(SimplicialMap { source, target, vertex_map, images: Arc::new(images) })
    }

    pub fn identity(cx: Arc<Complex>) -> SimplicialMap {
        let vm = (0..cx.n_vertices()).collect();
        SimplicialMap::new(cx.clone(), cx, vm).expect("identity is simplicial")
    }

    pub fn constant(source: Arc<Complex>, target: Arc<Complex>, v: usize) -> Result<SimplicialMap> {
        let vm = vec![v; source.n_vertices()];
        SimplicialMap::new(source, target, vm)
    }

    pub fn source(&self) -> &Arc<Complex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Complex> {
        &self.target
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    /// Image of the basis simplex `i` in degree `n`: target index and sign.
    pub fn image(&self, n: usize, i: usize) -> Option<(usize, bool)> {
        self.images[n][i]
    }

    /// Induced chain map `φ_*`.
    pub fn pushforward(&self, c: &Chain) -> Chain {
        let n = c.degree();
        let mut out = self.target.zero_chain(n);
        for (i, k) in c.terms() {
            if let Some((j, even)) = self.images[n][i] {
                if even {
                    out.coeffs[j] += k;
                } else {
                    out.coeffs[j] -= k;
                }
            }
        }
        out
    }

    /// `φ_*` in degree `n` as a matrix.
    pub fn chain_matrix(&self, n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.target.count(n), self.source.count(n));
        if n > self.source.dim() {
            return m;
        }
        for (i, img) in self.images[n].iter().enumerate() {
            if let Some((j, even)) = img {
                m.set(*j, i, if *even { BigInt::one() } else { -BigInt::one() });
            }
        }
        m
    }

    /// `g ∘ f`.
    pub fn compose(g: &SimplicialMap, f: &SimplicialMap) -> Result<SimplicialMap> {
        if *f.target != *g.source {
            return Err(Error::ComplexMismatch);
        }
        let vm = f.vertex_map.iter().map(|&v| g.vertex_map[v]).collect();
        SimplicialMap::new(f.source.clone(), g.target.clone(), vm)
    }

    /// Whether the vertex map is weakly increasing along every simplex. Such
    /// maps commute with front and back faces, hence with cup products.
    /// Inverse of a simplicial isomorphism.
    pub fn inverse(&self) -> Result<SimplicialMap> {
        let n = self.target.n_vertices();
        let mut inv = vec![usize::MAX; n];
        for (v, &w) in self.vertex_map.iter().enumerate() {
            if inv[w] != usize::MAX {
                return Err(Error::NotSimplicial(vec![inv[w], v]));
            }
            inv[w] = v;
        }
        if inv.contains(&usize::MAX) || (0..=self.target.dim()).any(|d| self.target.count(d) != self.source.count(d)) {
            return Err(Error::VertexMapLength { expected: n, found: self.vertex_map.len() });
        }
        SimplicialMap::new(self.target.clone(), self.source.clone(), inv)
    }

    pub fn is_order_preserving(&self) -> bool {
        (1..=self.source.dim()).all(|n| {
            self.source.simplices(n).iter().all(|s| s.windows(2).all(|w| self.vertex_map[w[0]] <= self.vertex_map[w[1]]))
        })
    }

    pub fn is_chain_map(&self) -> bool {
        (1..=self.source.dim()).all(|n| {
            self.target.boundary_matrix(n).mul(&self.chain_matrix(n)) == self.chain_matrix(n - 1).mul(&self.source.boundary_matrix(n))
        })
    }
}

fn permutation_is_even(seq: &[usize]) -> bool {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    inversions.is_multiple_of(2)
}

/// Element of `C_*(K) ⊗ C_*(K′)` keyed by `(p, i, q, j)` for the basis
/// element `σ^p_i ⊗ τ^q_j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorChain {
    terms: BTreeMap<(usize, usize, usize, usize), BigInt>,
}

impl TensorChain {
    pub fn new() -> TensorChain {
        TensorChain::default()
    }

    pub fn basis(p: usize, i: usize, q: usize, j: usize) -> TensorChain {
        let mut t = TensorChain::new();
        t.add_term((p, i, q, j), BigInt::one());
        t
    }

    /// `c ⊗ c′`.
    pub fn tensor(c: &Chain, c2: &Chain) -> TensorChain {
        let mut t = TensorChain::new();
        for (i, a) in c.terms() {
            for (j, b) in c2.terms() {
                t.add_term((c.degree(), i, c2.degree(), j), a * b);
            }
        }
        t
    }

    pub fn add_term(&mut self, key: (usize, usize, usize, usize), k: BigInt) {
        if k.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(BigInt::zero);
        *e += k;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize, usize, usize), &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn plus(&self, o: &TensorChain) -> TensorChain {
        let mut t = self.clone();
        for (k, v) in &o.terms {
            t.add_term(*k, v.clone());
        }
        t
    }

    pub fn scale(&self, k: &BigInt) -> TensorChain {
        let mut t = TensorChain::new();
        for (key, v) in &self.terms {
            t.add_term(*key, v * k);
        }
        t
    }

    /// `∂(σ ⊗ τ) = ∂σ ⊗ τ + (−1)^p σ ⊗ ∂τ`.
    pub fn boundary(&self, left: &Complex, right: &Complex) -> TensorChain {
        let mut t = TensorChain::new();
        for (&(p, i, q, j), k) in &self.terms {
            if p > 0 {
                for (r, f) in left.faces(p, i) {
                    let s = if r % 2 == 0 { k.clone() } else { -k };
                    t.add_term((p - 1, f, q, j), s);
                }
            }
            if q > 0 {
                for (r, f) in right.faces(q, j) {
                    let s = if (r + p) % 2 == 0 { k.clone() } else { -k };
                    t.add_term((p, i, q - 1, f), s);
                }
            }
        }
        t
    }

    /// The `(p, q)` block as a dense `count_p(K) × count_q(K′)` matrix.
    pub fn block(&self, left: &Complex, right: &Complex, p: usize, q: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(left.count(p), right.count(q));
        for (&(pp, i, qq, j), k) in &self.terms {
            if pp == p && qq == q {
                m.set(i, j, k.clone());
            }
        }
        m
    }
}

/// Staircase triangulation of `K × K′` on the vertex grid ordered
/// lexicographically (`K` major): vertex `(a, b)` has index `a·|V(K′)| + b`.
#[derive(Clone, Debug)]
pub struct ProductComplex {
    left: Arc<Complex>,
    right: Arc<Complex>,
    complex: Arc<Complex>,
    proj_left: SimplicialMap,
    proj_right: SimplicialMap,
}

/// Lattice paths from `(0,0)` to `(p,q)` with their shuffle signs. A path is
/// the list of steps, `false` = advance in the first factor.
fn shuffles(p: usize, q: usize) -> Vec<(Vec<bool>, bool)> {
    fn rec(p: usize, q: usize, path: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if p == 0 && q == 0 {
            out.push(path.clone());
            return;
        }
        if p > 0 {
            path.push(false);
            rec(p - 1, q, path, out);
            path.pop();
        }
        if q > 0 {
            path.push(true);
            rec(p, q - 1, path, out);
            path.pop();
        }
    }
    let mut paths = Vec::new();
    rec(p, q, &mut Vec::new(), &mut paths);
    paths
        .into_iter()
        .map(|path| {
            // (−1)^{#(second-factor step, later first-factor step)}
            let mut verticals = 0usize;
            let mut parity = 0usize;
            for &v in &path {
                if v {
                    verticals += 1;
                } else {
                    parity += verticals;
                }
            }
            (path, parity.is_multiple_of(2))
        })
        .collect()
}

impl ProductComplex {
    pub fn new(left: Arc<Complex>, right: Arc<Complex>) -> ProductComplex {
        let name = format!("{}x{}", left.name(), right.name());
        ProductComplex::named(left, right, name)
    }

    pub fn named(left: Arc<Complex>, right: Arc<Complex>, name: impl Into<String>) -> ProductComplex {
        let m = right.n_vertices();
        let mut gens = Vec::new();
        let lmax = left.maximal_simplices();
        let rmax = right.maximal_simplices();
        for s in &lmax {
            for t in &rmax {
                for (path, _) in shuffles(s.len() - 1, t.len() - 1) {
                    gens.push(path_vertices(s, t, &path, m));
                }
            }
        }
        let complex = Arc::new(Complex::new(name, left.n_vertices() * m, &gens).expect("staircase simplices are valid"));
        let pl = (0..complex.n_vertices()).map(|v| v / m).collect();
        let pr = (0..complex.n_vertices()).map(|v| v % m).collect();
        let proj_left = SimplicialMap::new(complex.clone(), left.clone(), pl).expect("projection is simplicial");
        let proj_right = SimplicialMap::new(complex.clone(), right.clone(), pr).expect("projection is simplicial");
        ProductComplex { left, right, complex, proj_left, proj_right }
    }

    pub fn left(&self) -> &Arc<Complex> {
        &self.left
    }

    pub fn right(&self) -> &Arc<Complex> {
        &self.right
    }

    pub fn complex(&self) -> &Arc<Complex> {
        &self.complex
    }

    pub fn proj_left(&self) -> &SimplicialMap {
        &self.proj_left
    }

    pub fn proj_right(&self) -> &SimplicialMap {
        &self.proj_right
    }

    pub fn vertex(&self, a: usize, b: usize) -> usize {
        a * self.right.n_vertices() + b
    }

    pub fn coords(&self, v: usize) -> (usize, usize) {
        (v / self.right.n_vertices(), v % self.right.n_vertices())
    }

    /// `EZ(σ^p_i ⊗ τ^q_j)` as signed simplex indices in degree `p + q`.
    pub fn ez_basis(&self, p: usize, i: usize, q: usize, j: usize) -> Vec<(usize, bool)> {
        let s = self.left.simplex(p, i);
        let t = self.right.simplex(q, j);
        shuffles(p, q)
            .into_iter()
            .map(|(path, even)| {
                let verts = path_vertices(s, t, &path, self.right.n_vertices());
                (self.complex.index_of(&verts).expect("shuffle path is a simplex"), even)
            })
            .collect()
    }

    /// EZ of a homogeneous tensor chain of total degree `degree`.
    pub fn eilenberg_zilber(&self, degree: usize, t: &TensorChain) -> Chain {
        let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (&(p, i, q, j), k) in t.terms() {
            assert_eq!(degree, p + q, "tensor chain is not homogeneous of the stated degree");
            for (idx, even) in self.ez_basis(p, i, q, j) {
                let e = acc.entry(idx).or_insert_with(BigInt::zero);
                if even {
                    *e += k;
                } else {
                    *e -= k;
                }
            }
        }
        let mut out = self.complex.zero_chain(degree);
        for (idx, k) in acc {
            out.coeffs[idx] = k;
        }
        out
    }

    /// `EZ(c ⊗ c′)`.
    pub fn ez(&self, c: &Chain, c2: &Chain) -> Chain {
        self.eilenberg_zilber(c.degree() + c2.degree(), &TensorChain::tensor(c, c2))
    }

    /// Front/back split of one product simplex: `Σ_i p_*[front_i] ⊗ p′_*[back_i]`
    /// with degenerate projections dropped.
    pub fn aw_basis(&self, d: usize, idx: usize) -> Vec<(usize, usize, usize, usize)> {
        let verts = self.complex.simplex(d, idx);
        let a: Vec<usize> = verts.iter().map(|&v| self.coords(v).0).collect();
        let b: Vec<usize> = verts.iter().map(|&v| self.coords(v).1).collect();
        let mut out = Vec::new();
        for i in 0..=d {
            let front = &a[..=i];
            let back = &b[i..];
            if front.windows(2).all(|w| w[0] < w[1]) && back.windows(2).all(|w| w[0] < w[1]) {
                let fi = self.left.index_of(front).expect("projection of a face is a simplex");
                let bi = self.right.index_of(back).expect("projection of a face is a simplex");
                out.push((i, fi, d - i, bi));
            }
        }
        out
    }

    pub fn alexander_whitney(&self, c: &Chain) -> TensorChain {
        let mut t = TensorChain::new();
        for (idx, k) in c.terms() {
            for key in self.aw_basis(c.degree(), idx) {
                t.add_term(key, k.clone());
            }
        }
        t
    }

    /// `f × g` between staircase products; needs both factors order-preserving
    /// on simplices for the image of a staircase to be a staircase.
    pub fn product_map(f: &SimplicialMap, g: &SimplicialMap, source: &ProductComplex, target: &ProductComplex) -> Result<SimplicialMap> {
        if *source.left != **f.source() || *source.right != **g.source() || *target.left != **f.target() || *target.right != **g.target() {
            return Err(Error::ComplexMismatch);
        }
        let vm = (0..source.complex.n_vertices())
            .map(|v| {
                let (a, b) = source.coords(v);
                target.vertex(f.vertex_map()[a], g.vertex_map()[b])
            })
            .collect();
        SimplicialMap::new(source.complex.clone(), target.complex.clone(), vm)
    }

    /// Diagonal `K → K × K`.
    pub fn diagonal(&self) -> Result<SimplicialMap> {
        if *self.left != *self.right {
            return Err(Error::ComplexMismatch);
        }
        let vm = (0..self.left.n_vertices()).map(|v| self.vertex(v, v)).collect();
        SimplicialMap::new(self.left.clone(), self.complex.clone(), vm)
    }

    /// Sheet inclusion `K → K × {b}`.
    pub fn left_section(&self, b: usize) -> Result<SimplicialMap> {
        let vm = (0..self.left.n_vertices()).map(|a| self.vertex(a, b)).collect();
        SimplicialMap::new(self.left.clone(), self.complex.clone(), vm)
    }

    /// Transposition `K × K′ → K′ × K` (not order-preserving in general).
    pub fn swap(&self, swapped: &ProductComplex) -> Result<SimplicialMap> {
        let vm = (0..self.complex.n_vertices())
            .map(|v| {
                let (a, b) = self.coords(v);
                swapped.vertex(b, a)
            })
            .collect();
        SimplicialMap::new(self.complex.clone(), swapped.complex.clone(), vm)
    }
}

fn path_vertices(s: &[usize], t: &[usize], path: &[bool], m: usize) -> Simplex {
    let (mut x, mut y) = (0, 0);
    let mut out = vec![s[0] * m + t[0]];
    for &v in path {
        if v {
            y += 1;
        } else {
            x += 1;
        }
        out.push(s[x] * m + t[y]);
    }
    out
}

/// Vertex relabelling between nested products `(X × F) × (X′ × F′)` and
/// `(X × X′) × (F × F′)`. Both vertex orders extend the componentwise
/// partial order, so this is an orientation-preserving isomorphism.
pub fn regroup_four(
    from: &ProductComplex, // (X×F) × (X′×F′)
    e: &ProductComplex,    // X × F
    e2: &ProductComplex,   // X′ × F′
    to: &ProductComplex,   // (X×X′) × (F×F′)
    base: &ProductComplex, // X × X′
    fiber: &ProductComplex, // F × F′
) -> Result<SimplicialMap> {
    let vm = (0..from.complex.n_vertices())
        .map(|v| {
            let (ef, ef2) = from.coords(v);
            let (x, f) = e.coords(ef);
            let (x2, f2) = e2.coords(ef2);
            to.vertex(base.vertex(x, x2), fiber.vertex(f, f2))
        })
        .collect();
    SimplicialMap::new(from.complex.clone(), to.complex.clone(), vm)
}

/// Reassociation `(X × F) × F′ → X × (F × F′)`.
pub fn associator(
    from: &ProductComplex,   // (X×F) × F′
    inner: &ProductComplex,  // X × F
    to: &ProductComplex,     // X × (F×F′)
    fiber: &ProductComplex,  // F × F′
) -> Result<SimplicialMap> {
    let vm = (0..from.complex.n_vertices())
        .map(|v| {
            let (e, f2) = from.coords(v);
            let (x, f) = inner.coords(e);
            to.vertex(x, fiber.vertex(f, f2))
        })
        .collect();
    SimplicialMap::new(from.complex.clone(), to.complex.clone(), vm)
}

/// Chain complex of the mapping cone of `φ : A → X`:
/// `C^φ_k = C_k(X) ⊕ C_{k−1}(A)`, `∂_φ(s, t) = (∂s + φ_* t, −∂t)`.
pub struct MappingCone {
    map: SimplicialMap,
    cache: HomologyCache,
}

impl fmt::Debug for MappingCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MappingCone({:?})", self.map)
    }
}

impl MappingCone {
    pub fn new(map: SimplicialMap) -> MappingCone {
        MappingCone { map, cache: HomologyCache::default() }
    }

    pub fn map(&self) -> &SimplicialMap {
        &self.map
    }

    pub fn x(&self) -> &Arc<Complex> {
        self.map.target()
    }

    pub fn a(&self) -> &Arc<Complex> {
        self.map.source()
    }

    /// `(rank C_k(X), rank C_{k−1}(A))`.
    pub fn parts(&self, k: usize) -> (usize, usize) {
        (self.x().count(k), if k == 0 { 0 } else { self.a().count(k - 1) })
    }

    pub fn join(&self, s: &[BigInt], t: &[BigInt]) -> Vec<BigInt> {
        s.iter().chain(t).cloned().collect()
    }

    pub fn split<T: Clone>(&self, k: usize, v: &[T]) -> (Vec<T>, Vec<T>) {
        let (nx, _) = self.parts(k);
        (v[..nx].to_vec(), v[nx..].to_vec())
    }

    pub fn boundary(&self, k: usize, v: &[BigInt]) -> Vec<BigInt> {
        self.boundary_matrix(k).mul_vec(v)
    }

    pub fn homology(&self, n: usize) -> Arc<HomologyGroup> {
        self.cache.homology(self, n)
    }

    pub fn cohomology(&self, n: usize) -> Arc<HomologyGroup> {
        self.cache.cohomology(self, n)
    }

    pub fn cycle_splitting(&self, n: usize) -> Arc<CycleSplitting> {
        self.cache.cycle_splitting(self, n)
    }

    pub fn cocycle_splitting(&self, n: usize) -> Arc<CycleSplitting> {
        self.cache.cocycle_splitting(self, n)
    }

    pub fn top_degree(&self) -> usize {
        self.x().dim().max(self.a().dim() + 1)
    }
}

impl ChainComplex for MappingCone {
    fn rank(&self, n: usize) -> usize {
        let (a, b) = self.parts(n);
        a + b
    }

    fn boundary_matrix(&self, k: usize) -> IntMatrix {
        let (nx, na) = self.parts(k);
        if k == 0 {
            return IntMatrix::zeros(0, nx + na);
        }
        let (mx, ma) = self.parts(k - 1);
        let dx = self.x().boundary_matrix(k);
        let phi = self.map.chain_matrix(k - 1);
        let da = if k >= 2 { Some(self.a().boundary_matrix(k - 1)) } else { None };
        IntMatrix::from_fn(mx + ma, nx + na, |r, c| match (r < mx, c < nx) {
            (true, true) => dx.get(r, c).clone(),
            (true, false) => phi.get(r, c - nx).clone(),
            (false, true) => BigInt::zero(),
            (false, false) => -da.as_ref().expect("block exists only for k ≥ 2").get(r - mx, c - nx).clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_circle() -> Arc<Complex> {
        Arc::new(Complex::new("S1_3", 3, &[vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap())
    }

    fn edge(name: &str) -> Arc<Complex> {
        Arc::new(Complex::new(name, 2, &[vec![0, 1]]).unwrap())
    }

    #[test]
    fn boundary_of_triangle() {
        let cx = Complex::new("D", 3, &[vec![0, 1, 2]]).unwrap();
        let c = cx.chain(2, &[(&[0, 1, 2], 1)]).unwrap();
        let expected = cx.chain(1, &[(&[1, 2], 1), (&[0, 2], -1), (&[0, 1], 1)]).unwrap();
        assert_eq!(cx.boundary(&c), expected);
    }

    #[test]
    fn boundary_squares_to_zero_on_tetrahedron() {
        let cx = Complex::new("T", 4, &[vec![0, 1, 2, 3]]).unwrap();
        for n in 2..=3 {
            assert!(cx.boundary_matrix(n - 1).mul(&cx.boundary_matrix(n)).is_zero());
        }
    }

    #[test]
    fn rejects_bad_simplices() {
        assert!(matches!(Complex::new("x", 3, &[vec![1, 0]]), Err(Error::InvalidSimplex(..))));
        assert!(matches!(Complex::new("x", 2, &[vec![0, 2]]), Err(Error::InvalidSimplex(..))));
    }

    #[test]
    fn circle_fundamental_cycle() {
        let s1 = triangle_circle();
        let z = s1.fundamental_cycle().unwrap();
        assert_eq!(z, s1.chain(1, &[(&[0, 1], 1), (&[1, 2], 1), (&[0, 2], -1)]).unwrap());
        assert!(s1.is_cycle(&z));
    }

    #[test]
    fn pushforward_collapses_and_signs() {
        let s1 = triangle_circle();
        let e = edge("I");
        let collapse = SimplicialMap::new(e.clone(), s1.clone(), vec![0, 0]).unwrap();
        assert!(collapse.pushforward(&e.basis_chain(1, 0)).is_zero());
        let rot = SimplicialMap::new(s1.clone(), s1.clone(), vec![1, 2, 0]).unwrap();
        let z = s1.fundamental_cycle().unwrap();
        // [0,1]→[1,2], [1,2]→[2,0] = −[0,2], [0,2]→[1,0] = −[0,1]
        assert_eq!(rot.pushforward(&z), z);
        assert!(rot.is_chain_map());
        assert!(!rot.is_order_preserving());
    }

    #[test]
    fn prism_is_two_triangles() {
        let p = ProductComplex::new(edge("I"), edge("J"));
        assert_eq!(p.complex().count(2), 2);
        assert_eq!(p.complex().count(1), 5);
        let t = TensorChain::basis(1, 0, 0, 0);
        let c = p.eilenberg_zilber(1, &t);
        assert_eq!(c, p.complex().chain(1, &[(&[0, 2], 1)]).unwrap());
    }

    #[test]
    fn torus_counts() {
        let t = ProductComplex::new(triangle_circle(), triangle_circle());
        let cx = t.complex();
        assert_eq!((cx.count(0), cx.count(1), cx.count(2)), (9, 27, 18));
        assert_eq!(cx.euler_characteristic(), 0);
    }

    #[test]
    fn ez_is_chain_map_and_aw_inverts_it() {
        let s1 = triangle_circle();
        let p = ProductComplex::new(s1.clone(), s1.clone());
        for a in 0..=1 {
            for b in 0..=1 {
                for i in 0..s1.count(a) {
                    for j in 0..s1.count(b) {
                        let t = TensorChain::basis(a, i, b, j);
                        let ez = p.eilenberg_zilber(a + b, &t);
                        assert_eq!(p.alexander_whitney(&ez), t);
                        if a + b > 0 {
                            let lhs = p.complex().boundary(&ez);
                            let rhs = p.eilenberg_zilber(a + b - 1, &t.boundary(&s1, &s1));
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cone_of_identity_on_point_is_acyclic() {
        let pt = Arc::new(Complex::new("pt", 1, &[]).unwrap());
        let cone = MappingCone::new(SimplicialMap::identity(pt));
        for k in 0..3 {
            assert!(cone.homology(k).is_trivial());
        }
    }
}
