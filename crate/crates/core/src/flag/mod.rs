//! The graded algebra `⊕ L(λ)` with the Cartan multiplication, its spherical
//! vectors ψ_k, right fractions with ψ-denominators and conjugation operators.

mod conjugation;
mod localized;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::linalg::{is_zero_vector, Matrix, Vector};
use crate::modules::{cartan_embedding, cartan_multiplication, invariant_vector, simple_module, star_on_spherical, tensor_product, ModuleError, MultMap, WeightModule};
use crate::par::Exec;
use crate::rootdata::{spherical_weight_semigroup, HermitianPair, RootError, SphericalData, Weight};
use crate::scalars::QScalar;

pub use conjugation::{conjugation_operator, ore_stabilization_check, ConjugationOperator, Krylov};
pub use localized::LocalizedFunction;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlagError {
    #[error("module L({0:?}) lies beyond the configured bound; rebuild with a larger level")]
    BuildRequired(Vec<i64>),
    #[error("Ore swap for ψ_{k} did not close within {max} steps")]
    Ore { k: usize, max: usize },
    #[error("conjugation operator: {0}")]
    Conjugation(String),
    #[error("{0}")]
    Inconsistent(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Root(#[from] RootError),
}

/// Finite sum of components, one vector per highest weight.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct GradedFunction {
    comps: BTreeMap<Weight, Vector>,
}

impl GradedFunction {
    pub fn zero() -> Self {
        GradedFunction { comps: BTreeMap::new() }
    }

    pub fn homogeneous(lambda: Weight, v: Vector) -> Self {
        let mut g = GradedFunction::zero();
        g.insert(lambda, v);
        g
    }

    fn insert(&mut self, lambda: Weight, v: Vector) {
        if is_zero_vector(&v) {
            self.comps.remove(&lambda);
        } else {
            self.comps.insert(lambda, v);
        }
    }

    pub fn components(&self) -> impl Iterator<Item = (&Weight, &Vector)> {
        self.comps.iter()
    }

    pub fn component(&self, lambda: &Weight) -> Option<&Vector> {
        self.comps.get(lambda)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn add(&self, o: &GradedFunction) -> GradedFunction {
        let mut out = self.clone();
        for (w, v) in &o.comps {
            let sum = match out.comps.get(w) {
                Some(a) => crate::linalg::add_vectors(a, v),
                None => v.clone(),
            };
            out.insert(w.clone(), sum);
        }
        out
    }

    pub fn sub(&self, o: &GradedFunction) -> GradedFunction {
        self.add(&o.scale(&-QScalar::one()))
    }

    pub fn scale(&self, c: &QScalar) -> GradedFunction {
        if c.is_zero() {
            return GradedFunction::zero();
        }
        let mut out = GradedFunction::zero();
        for (w, v) in &self.comps {
            out.insert(w.clone(), crate::linalg::scale_vector(c, v));
        }
        out
    }

    /// Serializable form: (λ, coordinates as scalar strings).
    pub fn to_data(&self) -> Vec<(Vec<i64>, Vec<String>)> {
        self.comps.iter().map(|(w, v)| (w.0.clone(), v.iter().map(|c| c.to_string()).collect())).collect()
    }
}

type MultKey = (Weight, Weight);

/// Module and multiplication cache for one Hermitian pair.
pub struct FlagAlgebra {
    pub pair: HermitianPair,
    pub spherical: SphericalData,
    /// ψ_k as vectors of `L(μ_k)`.
    pub psi: Vec<Vector>,
    bound: i64,
    modules: RwLock<HashMap<Weight, Arc<WeightModule>>>,
    mults: RwLock<HashMap<MultKey, Arc<MultMap>>>,
    /// Right and left multiplication by ψ_k, per (λ, k, source block).
    psi_maps: RwLock<HashMap<(Weight, usize, bool, usize), Arc<Matrix>>>,
    powers: RwLock<HashMap<(usize, u32), Arc<Vector>>>,
    /// Row selection and inverse of the selected square part of each ψ block map.
    psi_solvers: RwLock<HashMap<(Weight, usize, bool, usize), Arc<PsiSolver>>>,
}

/// `y = inv · x[rows]` recovers y from `x = M y` when M is injective.
#[derive(Debug)]
struct PsiSolver {
    rows: Vec<usize>,
    inv: Option<Matrix>,
}

impl std::fmt::Debug for FlagAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FlagAlgebra").field("pair", &self.pair.datum.cartan).field("bound", &self.bound).finish()
    }
}

impl FlagAlgebra {
    /// Discover the spherical generators and normalize ψ_k.
    ///
    /// `bound` caps the coordinate sum of every module the algebra may build.
    pub fn new(pair: HermitianPair, bound: i64) -> Result<Self, FlagError> {
        let mut alg = FlagAlgebra {
            spherical: SphericalData { gammas: Vec::new(), rank: 0, fundamental_spherical: Vec::new() },
            pair,
            psi: Vec::new(),
            bound,
            modules: RwLock::new(HashMap::new()),
            mults: RwLock::new(HashMap::new()),
            psi_maps: RwLock::new(HashMap::new()),
            powers: RwLock::new(HashMap::new()),
            psi_solvers: RwLock::new(HashMap::new()),
        };
        let search = DISCOVERY_BOUND;
        let pair = alg.pair.clone();
        let sph = spherical_weight_semigroup(&pair, search, |w| {
            let m = simple_module(&pair.datum, w).map_err(|e| e.to_string())?;
            Ok(invariant_vector(&pair, &m).len() == 1)
        })?;
        for mu in &sph.fundamental_spherical {
            if mu.level() > alg.bound {
                return Err(FlagError::BuildRequired(mu.0.clone()));
            }
            let m = alg.module(mu)?;
            let star = star_on_spherical(&alg.pair, &m)?;
            // The invariant vector comes normalized with leading coordinate one, and the
            // star involution is normalized to fix it.
            alg.psi.push(star.spherical);
        }
        alg.spherical = sph;
        Ok(alg)
    }

    pub fn rank(&self) -> usize {
        self.spherical.fundamental_spherical.len()
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn mu(&self, k: usize) -> &Weight {
        &self.spherical.fundamental_spherical[k]
    }

    /// `Σ n_k μ_k`.
    pub fn level_weight(&self, n: &[u32]) -> Weight {
        let mut w = Weight::zero(self.pair.rank());
        for (k, &c) in n.iter().enumerate() {
            w = w.add(&self.mu(k).scale(c as i64));
        }
        w
    }

    pub fn module(&self, lambda: &Weight) -> Result<Arc<WeightModule>, FlagError> {
        if let Some(m) = self.modules.read().unwrap().get(lambda) {
            return Ok(m.clone());
        }
        if lambda.level() > self.bound {
            return Err(FlagError::BuildRequired(lambda.0.clone()));
        }
        let m = Arc::new(simple_module(&self.pair.datum, lambda)?);
        Ok(self.modules.write().unwrap().entry(lambda.clone()).or_insert(m).clone())
    }

    /// Build a batch of modules up front.
    pub fn prebuild(&self, weights: &[Weight], exec: Exec) -> Result<(), FlagError> {
        let todo: Vec<Weight> = weights.iter().filter(|w| !self.modules.read().unwrap().contains_key(*w)).cloned().collect();
        let built = exec.map(&todo, |w| self.module(w).map(|_| ()));
        built.into_iter().collect()
    }

    pub fn mult(&self, l1: &Weight, l2: &Weight) -> Result<Arc<MultMap>, FlagError> {
        let key = (l1.clone(), l2.clone());
        if let Some(m) = self.mults.read().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let m1 = self.module(l1)?;
        let m2 = self.module(l2)?;
        let l = self.module(&l1.add(l2))?;
        let t = Arc::new(tensor_product(&m1, &m2));
        let emb = cartan_embedding(l, t)?;
        let mm = Arc::new(cartan_multiplication(&emb, m1, m2)?);
        Ok(self.mults.write().unwrap().entry(key).or_insert(mm).clone())
    }

    /// Product of homogeneous components.
    pub fn multiply_hom(&self, l1: &Weight, f: &[QScalar], l2: &Weight, g: &[QScalar]) -> Result<Vector, FlagError> {
        if l2.is_zero() {
            return Ok(scale_by_unit(f, g));
        }
        if l1.is_zero() {
            return Ok(scale_by_unit(g, f));
        }
        Ok(self.mult(l1, l2)?.apply(f, g))
    }

    pub fn multiply(&self, f: &GradedFunction, g: &GradedFunction) -> Result<GradedFunction, FlagError> {
        let mut out = GradedFunction::zero();
        for (l1, a) in f.components() {
            for (l2, b) in g.components() {
                let p = self.multiply_hom(l1, a, l2, b)?;
                out = out.add(&GradedFunction::homogeneous(l1.add(l2), p));
            }
        }
        Ok(out)
    }

    pub fn unit(&self) -> GradedFunction {
        GradedFunction::homogeneous(Weight::zero(self.pair.rank()), vec![QScalar::one()])
    }

    pub fn psi_function(&self, k: usize) -> GradedFunction {
        GradedFunction::homogeneous(self.mu(k).clone(), self.psi[k].clone())
    }

    /// `ψ_k^n` as a vector of `L(n μ_k)`.
    pub fn psi_power(&self, k: usize, n: u32) -> Result<Arc<Vector>, FlagError> {
        if let Some(v) = self.powers.read().unwrap().get(&(k, n)) {
            return Ok(v.clone());
        }
        let v = if n == 0 {
            vec![QScalar::one()]
        } else {
            let prev = self.psi_power(k, n - 1)?;
            self.multiply_hom(&self.mu(k).scale(n as i64 - 1), &prev, self.mu(k), &self.psi[k])?
        };
        let v = Arc::new(v);
        Ok(self.powers.write().unwrap().entry((k, n)).or_insert(v).clone())
    }

    /// Matrix of `x ↦ x ψ_k` (or `ψ_k x` when `left`) on the block of L(λ) with the given weight,
    /// into the block of the same weight in `L(λ + μ_k)`.
    pub fn psi_block_map(&self, lambda: &Weight, k: usize, left: bool, block: usize) -> Result<Arc<Matrix>, FlagError> {
        let key = (lambda.clone(), k, left, block);
        if let Some(m) = self.psi_maps.read().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let src = self.module(lambda)?;
        let tgt = self.module(&lambda.add(self.mu(k)))?;
        let b = &src.blocks[block];
        let tb = tgt.block_index(&b.weight).expect("ψ has weight zero");
        let tblk = tgt.blocks[tb].clone();
        let mut m = Matrix::zeros(tblk.dim, b.dim);
        for c in 0..b.dim {
            let x = src.unit(b.offset + c);
            let img = if left {
                self.multiply_hom(self.mu(k), &self.psi[k], lambda, &x)?
            } else {
                self.multiply_hom(lambda, &x, self.mu(k), &self.psi[k])?
            };
            for r in 0..tblk.dim {
                m[(r, c)] = img[tblk.offset + r].clone();
            }
        }
        let m = Arc::new(m);
        Ok(self.psi_maps.write().unwrap().entry(key).or_insert(m).clone())
    }

    /// `x ψ_k` (or `ψ_k x`) for x in L(λ), computed blockwise.
    pub fn psi_mul(&self, lambda: &Weight, x: &[QScalar], k: usize, left: bool) -> Result<Vector, FlagError> {
        let src = self.module(lambda)?;
        let tgt = self.module(&lambda.add(self.mu(k)))?;
        let mut out = vec![QScalar::zero(); tgt.dim()];
        for bi in 0..src.blocks.len() {
            let local = src.restrict(x, bi);
            if is_zero_vector(local) {
                continue;
            }
            let m = self.psi_block_map(lambda, k, left, bi)?;
            let tb = tgt.block_index(&src.blocks[bi].weight).unwrap();
            let off = tgt.blocks[tb].offset;
            for (r, v) in m.mul_vec(local).into_iter().enumerate() {
                out[off + r] = v;
            }
        }
        Ok(out)
    }

    /// Solve `y ψ_k = x` (or `ψ_k y = x`) for y in L(λ − μ_k); `None` if x is not in the image.
    pub fn psi_divide(&self, lambda: &Weight, x: &[QScalar], k: usize, left: bool) -> Result<Option<Vector>, FlagError> {
        let smaller = lambda.sub(self.mu(k));
        if !smaller.is_dominant() {
            return Ok(None);
        }
        let src = self.module(&smaller)?;
        let tgt = self.module(lambda)?;
        let mut out = vec![QScalar::zero(); src.dim()];
        for tb in 0..tgt.blocks.len() {
            let local = tgt.restrict(x, tb);
            if is_zero_vector(local) {
                continue;
            }
            let Some(sb) = src.block_index(&tgt.blocks[tb].weight) else { return Ok(None) };
            let m = self.psi_block_map(&smaller, k, left, sb)?;
            let solver = self.psi_solver(&smaller, k, left, sb, &m);
            let Some(inv) = &solver.inv else { return Ok(None) };
            let picked: Vec<QScalar> = solver.rows.iter().map(|&r| local[r].clone()).collect();
            let y = inv.mul_vec(&picked);
            if m.mul_vec(&y) != local {
                return Ok(None);
            }
            let off = src.blocks[sb].offset;
            for (r, v) in y.into_iter().enumerate() {
                out[off + r] = v;
            }
        }
        Ok(Some(out))
    }

    fn psi_solver(&self, lambda: &Weight, k: usize, left: bool, block: usize, m: &Matrix) -> Arc<PsiSolver> {
        let key = (lambda.clone(), k, left, block);
        if let Some(s) = self.psi_solvers.read().unwrap().get(&key) {
            return s.clone();
        }
        let rows = m.transpose().independent_columns();
        let inv = if rows.len() == m.cols() {
            let cols: Vec<usize> = (0..m.cols()).collect();
            m.select(&rows, &cols).inverse()
        } else {
            None
        };
        let s = Arc::new(PsiSolver { rows, inv });
        self.psi_solvers.write().unwrap().entry(key).or_insert(s).clone()
    }

    /// Apply a generator letter to a homogeneous component.
    pub fn act_letter(&self, lambda: &Weight, l: crate::uqg::Letter, x: &[QScalar]) -> Result<Vector, FlagError> {
        Ok(self.module(lambda)?.apply_letter(l, x))
    }
}

fn scale_by_unit(f: &[QScalar], unit: &[QScalar]) -> Vector {
    crate::linalg::scale_vector(&unit[0], f)
}

/// Highest coordinate sum searched when discovering the spherical semigroup; the
/// generators have coordinate sum at most 2 and the larger window checks closure.
const DISCOVERY_BOUND: i64 = 4;

#[cfg(test)]
mod tests;
