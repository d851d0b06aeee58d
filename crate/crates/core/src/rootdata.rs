//! Root systems, weights and Weyl combinatorics for Hermitian symmetric pairs.
//!
//! Convention: `a[i][j] = 2(α_i, α_j) / (α_i, α_i)`, so `s_i(α_j) = α_j - a[i][j] α_i`
//! and the simple root α_j has fundamental-weight coordinates `(a[0][j], ..., a[l-1][j])`.
//! Node indices are 0-based internally.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RootError {
    #[error("Cartan matrix is empty or not square")]
    Shape,
    #[error("Cartan matrix entry a[{i}][{j}] = {value} violates the generalized Cartan conditions")]
    Entry { i: usize, j: usize, value: i64 },
    #[error("Cartan matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("Cartan matrix is not of finite type: leading principal minor of size {size} is {value}")]
    NotFinite { size: usize, value: String },
    #[error("Dynkin diagram is not connected")]
    Disconnected,
    #[error("unsupported type {kind}{rank}")]
    UnsupportedType { kind: char, rank: usize },
    #[error("node {0} is out of range 1..={1}")]
    NodeOutOfRange(usize, usize),
    #[error("not Hermitian: coefficient c_l0 of the maximal root is {c}")]
    NotHermitian { c: i64 },
    #[error("grading violated: a positive root has l0-coefficient {c}")]
    Grading { c: i64 },
    #[error("strongly orthogonal cascade failed: {0}")]
    Cascade(String),
    #[error("found {found} spherical generators within bound {bound}, expected {expected}")]
    InsufficientBound { found: usize, expected: usize, bound: i64 },
    #[error("spherical weight {0:?} is not in the span of the strongly orthogonal roots")]
    NotInGammaSpan(Vec<i64>),
    #[error("spherical oracle failed: {0}")]
    Oracle(String),
}

/// Weight in the fundamental-weight basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Weight(pub Vec<i64>);

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = vec![0; rank];
        w[i] = 1;
        Weight(w)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    pub fn level(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn coord(&self, i: usize) -> i64 {
        self.0[i]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanMatrix {
    pub a: Vec<Vec<i64>>,
    pub d: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CartanType {
    A,
    B,
    C,
    D,
}

impl CartanType {
    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Some(CartanType::A),
            "B" => Some(CartanType::B),
            "C" => Some(CartanType::C),
            "D" => Some(CartanType::D),
            _ => None,
        }
    }

    pub fn letter(self) -> char {
        match self {
            CartanType::A => 'A',
            CartanType::B => 'B',
            CartanType::C => 'C',
            CartanType::D => 'D',
        }
    }
}

fn det_rational(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut m = m.to_vec();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &m[c][c];
            for j in c..n {
                let v = &m[c][j] * &f;
                m[r][j] -= v;
            }
        }
    }
    det
}

fn inverse_rational(m: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = m.len();
    let mut aug: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !aug[r][c].is_zero()).expect("invertible");
        aug.swap(p, c);
        let inv = aug[c][c].recip();
        for x in aug[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !aug[r][c].is_zero() {
                let f = aug[r][c].clone();
                for j in 0..2 * n {
                    let v = &aug[c][j] * &f;
                    aug[r][j] -= v;
                }
            }
        }
    }
    aug.into_iter().map(|r| r[n..].to_vec()).collect()
}

impl CartanMatrix {
    /// Validate a matrix and compute its symmetrizer.
    pub fn new(a: Vec<Vec<i64>>) -> Result<Self, RootError> {
        let l = a.len();
        if l == 0 || a.iter().any(|r| r.len() != l) {
            return Err(RootError::Shape);
        }
        for i in 0..l {
            for j in 0..l {
                let v = a[i][j];
                let ok = if i == j { v == 2 } else { v <= 0 && ((v == 0) == (a[j][i] == 0)) };
                if !ok {
                    return Err(RootError::Entry { i, j, value: v });
                }
            }
        }
        // Symmetrizer via propagation along the (connected) Dynkin graph, rationally.
        let mut d: Vec<Option<BigRational>> = vec![None; l];
        d[0] = Some(BigRational::one());
        let mut stack = vec![0usize];
        while let Some(i) = stack.pop() {
            for j in 0..l {
                if j == i || a[i][j] == 0 {
                    continue;
                }
                // d_i a_ij = d_j a_ji
                let dj = d[i].clone().unwrap() * BigRational::from_integer(a[i][j].into())
                    / BigRational::from_integer(a[j][i].into());
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                    Some(existing) if *existing != dj => return Err(RootError::NotSymmetrizable),
                    _ => {}
                }
            }
        }
        if d.iter().any(|x| x.is_none()) {
            return Err(RootError::Disconnected);
        }
        let d: Vec<BigRational> = d.into_iter().map(|x| x.unwrap()).collect();
        let den = d.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = d.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let d: Vec<i64> = ints.iter().map(|x| (x / &g).to_i64().unwrap()).collect();
        let sym: Vec<Vec<BigRational>> = (0..l)
            .map(|i| (0..l).map(|j| BigRational::from_integer((d[i] * a[i][j]).into())).collect())
            .collect();
        for size in 1..=l {
            let minor: Vec<Vec<BigRational>> = sym[..size].iter().map(|r| r[..size].to_vec()).collect();
            let det = det_rational(&minor);
            if !det.is_positive() {
                return Err(RootError::NotFinite { size, value: det.to_string() });
            }
        }
        Ok(CartanMatrix { a, d })
    }

    pub fn of_type(kind: CartanType, n: usize) -> Result<Self, RootError> {
        let bad = Err(RootError::UnsupportedType { kind: kind.letter(), rank: n });
        let min = match kind {
            CartanType::A => 1,
            CartanType::B | CartanType::C => 2,
            CartanType::D => 4,
        };
        if n < min {
            return bad;
        }
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let chain = if kind == CartanType::D { n - 1 } else { n };
        for i in 0..chain.saturating_sub(1) {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
        match kind {
            CartanType::B => {
                // α_n short
                a[n - 2][n - 1] = -1;
                a[n - 1][n - 2] = -2;
            }
            CartanType::C => {
                // α_n long
                a[n - 2][n - 1] = -2;
                a[n - 1][n - 2] = -1;
            }
            CartanType::D => {
                a[n - 3][n - 1] = -1;
                a[n - 1][n - 3] = -1;
            }
            CartanType::A => {}
        }
        CartanMatrix::new(a)
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }
}

/// A root stored by its coordinates in the simple-root basis.
pub type RootVec = Vec<i64>;

#[derive(Clone, Debug, Serialize)]
pub struct RootDatum {
    pub cartan: CartanMatrix,
    /// Simple roots as weights.
    pub simple_roots: Vec<Weight>,
    /// Positive roots β_1..β_M in simple-root coordinates, in the convex order of `w0_word`.
    pub positive_roots: Vec<RootVec>,
    pub w0_word: Vec<usize>,
    /// Maximal root in simple-root coordinates (the c_i).
    pub delta: RootVec,
    /// `(ϖ_i, ϖ_j)`
    #[serde(skip)]
    pub fundamental_pairing: Vec<Vec<BigRational>>,
    /// Least common denominator of the fundamental pairing.
    pub root_order: u32,
}

impl RootDatum {
    pub fn new(cartan: CartanMatrix) -> Self {
        let l = cartan.rank();
        let a = &cartan.a;
        let simple_roots: Vec<Weight> = (0..l).map(|j| Weight((0..l).map(|i| a[i][j]).collect())).collect();
        // Greedy descent from rho to -rho.
        let mut v = vec![1i64; l];
        let mut word = Vec::new();
        while let Some(i) = (0..l).find(|&i| v[i] > 0) {
            let c = v[i];
            for (k, x) in v.iter_mut().enumerate() {
                *x -= c * a[k][i];
            }
            word.push(i);
        }
        let mut positive_roots = Vec::with_capacity(word.len());
        for m in 0..word.len() {
            let mut beta = vec![0i64; l];
            beta[word[m]] = 1;
            for &i in word[..m].iter().rev() {
                beta = reflect_root(a, i, &beta);
            }
            positive_roots.push(beta);
        }
        let delta = positive_roots
            .iter()
            .max_by_key(|b| b.iter().sum::<i64>())
            .cloned()
            .expect("at least one root");
        let ar: Vec<Vec<BigRational>> =
            a.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
        let ainv = inverse_rational(&ar);
        // (ϖ_i, ϖ_j) = (A^{-1})_{ji} d_j
        let fundamental_pairing: Vec<Vec<BigRational>> = (0..l)
            .map(|i| {
                (0..l).map(|j| &ainv[j][i] * BigRational::from_integer(cartan.d[j].into())).collect()
            })
            .collect();
        let root_order = fundamental_pairing
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
            .to_u32()
            .expect("small root order");
        RootDatum { cartan, simple_roots, positive_roots, w0_word: word, delta, fundamental_pairing, root_order }
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn d(&self, i: usize) -> u32 {
        self.cartan.d[i] as u32
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.cartan.a[i][j]
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn simple_root(&self, i: usize) -> &Weight {
        &self.simple_roots[i]
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }

    /// `(α, β)` for roots in simple-root coordinates.
    pub fn root_pairing(&self, x: &[i64], y: &[i64]) -> i64 {
        let l = self.rank();
        let mut s = 0;
        for i in 0..l {
            for j in 0..l {
                s += x[i] * y[j] * self.cartan.d[i] * self.cartan.a[i][j];
            }
        }
        s
    }

    /// `(λ, β)` for a weight λ and a root β in simple-root coordinates.
    pub fn weight_root_pairing(&self, w: &Weight, beta: &[i64]) -> i64 {
        (0..self.rank()).map(|j| beta[j] * self.cartan.d[j] * w.0[j]).sum()
    }

    /// `(λ, μ)` as an exact rational.
    pub fn weight_pairing(&self, x: &Weight, y: &Weight) -> BigRational {
        let l = self.rank();
        let mut s = BigRational::zero();
        for i in 0..l {
            if x.0[i] == 0 {
                continue;
            }
            for j in 0..l {
                if y.0[j] != 0 {
                    s += &self.fundamental_pairing[i][j] * BigRational::from_integer((x.0[i] * y.0[j]).into());
                }
            }
        }
        s
    }

    /// `D (λ, μ)`, an integer by construction of the root order.
    pub fn scaled_pairing(&self, x: &Weight, y: &Weight) -> i64 {
        let v = self.weight_pairing(x, y) * BigRational::from_integer(self.root_order.into());
        assert!(v.is_integer());
        v.to_integer().to_i64().unwrap()
    }

    pub fn root_to_weight(&self, beta: &[i64]) -> Weight {
        let l = self.rank();
        Weight((0..l).map(|i| (0..l).map(|j| beta[j] * self.cartan.a[i][j]).sum()).collect())
    }

    /// Simple-root coordinates of a weight in the root lattice, if it is one.
    pub fn weight_to_root(&self, w: &Weight) -> Option<RootVec> {
        let l = self.rank();
        let ar: Vec<Vec<BigRational>> = self
            .cartan
            .a
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        let ainv = inverse_rational(&ar);
        let mut out = Vec::with_capacity(l);
        for ainv_row in ainv.iter() {
            let c: BigRational =
                (0..l).map(|k| &ainv_row[k] * BigRational::from_integer(w.0[k].into())).sum();
            if !c.is_integer() {
                return None;
            }
            out.push(c.to_integer().to_i64()?);
        }
        Some(out)
    }

    pub fn in_root_lattice(&self, w: &Weight) -> bool {
        self.weight_to_root(w).is_some()
    }

    /// `s_i` on a weight.
    pub fn reflect_weight(&self, i: usize, w: &Weight) -> Weight {
        let c = w.0[i];
        Weight(w.0.iter().enumerate().map(|(k, &x)| x - c * self.cartan.a[k][i]).collect())
    }

    pub fn reflect_root(&self, i: usize, beta: &[i64]) -> RootVec {
        reflect_root(&self.cartan.a, i, beta)
    }

    /// `w0` applied to a root.
    pub fn w0_root(&self, beta: &[i64]) -> RootVec {
        let mut b = beta.to_vec();
        for &i in self.w0_word.iter().rev() {
            b = self.reflect_root(i, &b);
        }
        b
    }

    pub fn is_root(&self, beta: &[i64]) -> bool {
        let neg: Vec<i64> = beta.iter().map(|x| -x).collect();
        self.positive_roots.iter().any(|b| b == beta || *b == neg)
    }

    /// Weyl dimension formula.
    pub fn weyl_dimension(&self, lambda: &Weight) -> u64 {
        let lr = lambda.add(&self.rho());
        let rho = self.rho();
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for beta in &self.positive_roots {
            num *= self.weight_root_pairing(&lr, beta);
            den *= self.weight_root_pairing(&rho, beta);
        }
        (num / den).to_u64().expect("dimension fits")
    }

    /// All dominant weights with coordinate sum at most `bound`, ordered by level then lexicographically.
    pub fn dominant_weights(&self, bound: i64) -> Vec<Weight> {
        let l = self.rank();
        let mut out = Vec::new();
        fn rec(prefix: &mut Vec<i64>, l: usize, left: i64, out: &mut Vec<Weight>) {
            if prefix.len() == l {
                out.push(Weight(prefix.clone()));
                return;
            }
            for x in 0..=left {
                prefix.push(x);
                rec(prefix, l, left - x, out);
                prefix.pop();
            }
        }
        rec(&mut Vec::new(), l, bound, &mut out);
        out.sort_by(|a, b| a.level().cmp(&b.level()).then(a.cmp(b)));
        out
    }
}

fn reflect_root(a: &[Vec<i64>], i: usize, beta: &[i64]) -> RootVec {
    // ⟨β, α_i^∨⟩ = Σ_j β_j a_ij
    let c: i64 = beta.iter().enumerate().map(|(j, &b)| b * a[i][j]).sum();
    let mut out = beta.to_vec();
    out[i] -= c;
    out
}

pub fn build_root_datum(cartan: CartanMatrix) -> RootDatum {
    RootDatum::new(cartan)
}

#[derive(Clone, Debug, Serialize)]
pub struct HermitianPair {
    pub datum: RootDatum,
    pub l0: usize,
    /// `α_i(h0)`
    pub h0: Vec<i64>,
    pub k_nodes: Vec<usize>,
}

impl HermitianPair {
    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    /// Positive roots with l0-coefficient 1.
    pub fn noncompact_roots(&self) -> Vec<RootVec> {
        self.datum.positive_roots.iter().filter(|b| b[self.l0] == 1).cloned().collect()
    }

    pub fn is_k_node(&self, i: usize) -> bool {
        i != self.l0
    }

    /// Fixture constructor for the tests and the command line (1-based `l0`).
    pub fn of_type(kind: CartanType, rank: usize, l0: usize) -> Result<Self, RootError> {
        let datum = RootDatum::new(CartanMatrix::of_type(kind, rank)?);
        check_hermitian(datum, l0)
    }
}

/// Validate the marked node (1-based) and build the pair.
pub fn check_hermitian(datum: RootDatum, l0: usize) -> Result<HermitianPair, RootError> {
    let l = datum.rank();
    if l0 == 0 || l0 > l {
        return Err(RootError::NodeOutOfRange(l0, l));
    }
    let l0 = l0 - 1;
    let c = datum.delta[l0];
    if c != 1 {
        return Err(RootError::NotHermitian { c });
    }
    if let Some(b) = datum.positive_roots.iter().find(|b| b[l0] > 1) {
        return Err(RootError::Grading { c: b[l0] });
    }
    let h0 = (0..l).map(|i| if i == l0 { 2 } else { 0 }).collect();
    let k_nodes = (0..l).filter(|&i| i != l0).collect();
    Ok(HermitianPair { datum, l0, h0, k_nodes })
}

#[derive(Clone, Debug, Serialize)]
pub struct SphericalData {
    pub gammas: Vec<RootVec>,
    pub rank: usize,
    pub fundamental_spherical: Vec<Weight>,
}

/// Cascade of strongly orthogonal noncompact roots starting at the maximal root.
pub fn strongly_orthogonal_roots(pair: &HermitianPair) -> Result<SphericalData, RootError> {
    let dat = &pair.datum;
    let mut gammas: Vec<RootVec> = vec![dat.delta.clone()];
    loop {
        let next = pair
            .noncompact_roots()
            .into_iter()
            .filter(|b| {
                gammas.iter().all(|g| {
                    let sum: Vec<i64> = g.iter().zip(b).map(|(x, y)| x + y).collect();
                    let diff: Vec<i64> = g.iter().zip(b).map(|(x, y)| x - y).collect();
                    dat.root_pairing(g, b) == 0 && !dat.is_root(&sum) && !dat.is_root(&diff) && g != b
                })
            })
            .max_by(|x, y| x.iter().sum::<i64>().cmp(&y.iter().sum::<i64>()).then(y.cmp(x)));
        match next {
            Some(b) => gammas.push(b),
            None => break,
        }
    }
    for g in &gammas {
        let w = dat.w0_root(g);
        let neg: Vec<i64> = w.iter().map(|x| -x).collect();
        if &neg != g {
            return Err(RootError::Cascade(format!("-w0 does not fix {g:?}")));
        }
    }
    let rank = gammas.len();
    Ok(SphericalData { gammas, rank, fundamental_spherical: Vec::new() })
}

/// Discover the spherical semigroup by brute force within `bound`.
///
/// `is_spherical` decides whether L(λ) has a one-dimensional space of invariants.
pub fn spherical_weight_semigroup<F>(pair: &HermitianPair, bound: i64, mut is_spherical: F) -> Result<SphericalData, RootError>
where
    F: FnMut(&Weight) -> Result<bool, String>,
{
    let mut data = strongly_orthogonal_roots(pair)?;
    let dat = &pair.datum;
    let mut found: BTreeSet<Weight> = BTreeSet::new();
    for w in dat.dominant_weights(bound) {
        if w.is_zero() || !dat.in_root_lattice(&w) {
            continue;
        }
        if is_spherical(&w).map_err(RootError::Oracle)? {
            found.insert(w);
        }
    }
    let gens: Vec<Weight> = found
        .iter()
        .filter(|w| !found.iter().any(|x| x != *w && found.contains(&w.sub(x)) && w.sub(x).is_dominant()))
        .cloned()
        .collect();
    if gens.len() != data.rank {
        return Err(RootError::InsufficientBound { found: gens.len(), expected: data.rank, bound });
    }
    // Each generator must lie in the rational span of the gammas.
    for g in &gens {
        let root = dat.weight_to_root(g).ok_or_else(|| RootError::NotInGammaSpan(g.0.clone()))?;
        if !in_rational_span(&data.gammas, &root) {
            return Err(RootError::NotInGammaSpan(g.0.clone()));
        }
    }
    // Everything found must be generated, and nothing generated within the bound may be missing.
    let generated = semigroup_within(&gens, bound);
    let found_nonzero: BTreeSet<Weight> = found.into_iter().collect();
    if generated != found_nonzero {
        return Err(RootError::Oracle(format!(
            "spherical set {found_nonzero:?} differs from the semigroup generated by {gens:?}"
        )));
    }
    // Order the generators along the cascade: μ_k lies in the span of γ_1..γ_k but not γ_1..γ_{k-1}.
    let mut keyed: Vec<(usize, Weight)> = gens
        .into_iter()
        .map(|g| {
            let root = dat.weight_to_root(&g).expect("checked above");
            let k = (1..=data.gammas.len()).find(|&k| in_rational_span(&data.gammas[..k], &root)).unwrap_or(usize::MAX);
            (k, g)
        })
        .collect();
    keyed.sort();
    data.fundamental_spherical = keyed.into_iter().map(|(_, g)| g).collect();
    Ok(data)
}

fn semigroup_within(gens: &[Weight], bound: i64) -> BTreeSet<Weight> {
    let mut out: BTreeSet<Weight> = BTreeSet::new();
    let mut frontier: Vec<Weight> = gens.iter().filter(|g| g.level() <= bound).cloned().collect();
    while let Some(w) = frontier.pop() {
        if !out.insert(w.clone()) {
            continue;
        }
        for g in gens {
            let n = w.add(g);
            if n.level() <= bound && !out.contains(&n) {
                frontier.push(n);
            }
        }
    }
    out
}

fn in_rational_span(vectors: &[RootVec], v: &[i64]) -> bool {
    let rank_of = |rows: &[Vec<i64>]| -> usize {
        let mut m: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        let cols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
            m.swap(rank, p);
            for r in 0..m.len() {
                if r != rank && !m[r][c].is_zero() {
                    let f = &m[r][c] / &m[rank][c];
                    for j in 0..cols {
                        let x = &m[rank][j] * &f;
                        m[r][j] -= x;
                    }
                }
            }
            rank += 1;
        }
        rank
    };
    let mut with = vectors.to_vec();
    with.push(v.to_vec());
    rank_of(vectors) == rank_of(&with)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetrizers() {
        assert_eq!(CartanMatrix::of_type(CartanType::B, 3).unwrap().d, vec![2, 2, 1]);
        assert_eq!(CartanMatrix::of_type(CartanType::C, 3).unwrap().d, vec![1, 1, 2]);
        assert_eq!(CartanMatrix::of_type(CartanType::D, 4).unwrap().d, vec![1, 1, 1, 1]);
    }

    #[test]
    fn rejects_affine() {
        let err = CartanMatrix::new(vec![vec![2, -2], vec![-2, 2]]).unwrap_err();
        assert!(matches!(err, RootError::NotFinite { size: 2, .. }));
    }

    #[test]
    fn reduced_word_lengths() {
        for (k, n, m) in [(CartanType::A, 3, 6), (CartanType::B, 3, 9), (CartanType::C, 2, 4), (CartanType::D, 4, 12)] {
            let d = RootDatum::new(CartanMatrix::of_type(k, n).unwrap());
            assert_eq!(d.w0_word.len(), m);
            assert_eq!(d.num_positive_roots(), m);
        }
    }

    #[test]
    fn pairing_matches_simple_roots() {
        let d = RootDatum::new(CartanMatrix::of_type(CartanType::C, 2).unwrap());
        // (α_1, α_2) = d_1 a_12 = -2
        let p = d.weight_pairing(d.simple_root(0), d.simple_root(1));
        assert_eq!(p, BigRational::from_integer((-2).into()));
    }

    #[test]
    fn d4_hermitian_nodes() {
        for l0 in [1, 3, 4] {
            assert!(HermitianPair::of_type(CartanType::D, 4, l0).is_ok());
        }
        assert!(matches!(
            HermitianPair::of_type(CartanType::D, 4, 2),
            Err(RootError::NotHermitian { c: 2 })
        ));
    }
}
