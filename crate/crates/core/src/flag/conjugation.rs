use crate::linalg::{Matrix, Vector};
use crate::modules::k_highest_vectors;
use crate::rootdata::Weight;
use crate::scalars::QScalar;

use super::{FlagAlgebra, FlagError, GradedFunction, LocalizedFunction};

/// Cyclic subspace of `A_k: f ↦ ψ_k f ψ_k^{-1}` generated by one fraction.
#[derive(Clone, Debug)]
pub struct Krylov {
    pub k: usize,
    /// `A^j x` for `j < m`.
    pub vectors: Vec<LocalizedFunction>,
    /// `A^m x = Σ_j relation[j] A^j x`.
    pub relation: Vec<QScalar>,
}

impl Krylov {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Local minimal polynomial, lowest coefficient first and monic.
    pub fn min_poly(&self) -> Vec<QScalar> {
        let mut p: Vec<QScalar> = self.relation.iter().map(|c| -c.clone()).collect();
        p.push(QScalar::one());
        p
    }

    /// Matrix of A in the basis `A^j x` (companion matrix).
    pub fn companion(&self) -> Matrix {
        let m = self.dim();
        let mut c = Matrix::zeros(m, m);
        for j in 0..m {
            if j + 1 < m {
                c[(j + 1, j)] = QScalar::one();
            }
            c[(j, m - 1)] = self.relation[j].clone();
        }
        c
    }
}

impl FlagAlgebra {
    /// `ψ_k^n g ψ^{-j} ψ_k^{-n}`.
    pub fn conjugate(&self, k: usize, x: &LocalizedFunction, n: u32) -> Result<LocalizedFunction, FlagError> {
        let num = self.left_psi(&x.num, k, n)?;
        let mut den = x.den.clone();
        den[k] += n;
        Ok(LocalizedFunction::new(num, den))
    }

    /// Krylov sequence of x under A_k, stopping at the first linear dependency.
    pub fn krylov(&self, k: usize, x: &LocalizedFunction, max_len: usize) -> Result<Krylov, FlagError> {
        if x.is_zero() {
            return Ok(Krylov { k, vectors: Vec::new(), relation: Vec::new() });
        }
        let mut vectors = vec![x.clone()];
        loop {
            let next = self.conjugate(k, vectors.last().unwrap(), 1)?;
            let mut all = vectors.clone();
            all.push(next.clone());
            let (_, coords) = self.common_coords(&all)?;
            let m = vectors.len();
            let basis = Matrix::from_cols(&coords[..m], coords[0].len());
            if let Some(c) = basis.solve(&coords[m]) {
                return Ok(Krylov { k, vectors, relation: c });
            }
            if vectors.len() >= max_len {
                return Err(FlagError::Conjugation(format!("Krylov space of A_{} exceeds {} vectors", k + 1, max_len)));
            }
            vectors.push(next);
        }
    }
}

/// Matrix of `A_k` on the multiplicity space of the 𝔨-type τ in `L(n μ_k) ψ_k^{-n}`.
#[derive(Clone, Debug)]
pub struct ConjugationOperator {
    pub k: usize,
    pub tau: Weight,
    pub level: u32,
    pub matrix: Matrix,
    /// 𝔨-highest vectors of weight τ in `L(n μ_k)` (local coordinates on the τ block).
    pub basis: Vec<Vector>,
}

/// 𝔨-highest vectors of weight τ in L(λ), as local vectors on the τ block.
fn highest_of(alg: &FlagAlgebra, lambda: &Weight, tau: &Weight) -> Result<(usize, Vec<Vector>), FlagError> {
    let m = alg.module(lambda)?;
    for (w, bi, ker) in k_highest_vectors(&alg.pair, &m) {
        if &w == tau {
            return Ok((bi, ker));
        }
    }
    Ok((usize::MAX, Vec::new()))
}

/// Images of the given vectors of L(λ)_τ under right or left multiplication by ψ_k,
/// in coordinates of the τ block of L(λ + μ_k).
fn psi_images(alg: &FlagAlgebra, lambda: &Weight, block: usize, vs: &[Vector], k: usize, left: bool) -> Result<Vec<Vector>, FlagError> {
    let m = alg.psi_block_map(lambda, k, left, block)?;
    Ok(vs.iter().map(|v| m.mul_vec(v)).collect())
}

/// `A = R^{-1} L` on `H_{n,τ}`, where R and L are right and left multiplication by ψ_k
/// into `H_{n+1,τ}`; requires the two spaces to have equal dimension.
pub fn conjugation_operator(alg: &FlagAlgebra, k: usize, tau: &Weight, n: u32) -> Result<ConjugationOperator, FlagError> {
    let lam = alg.mu(k).scale(n as i64);
    let lam1 = alg.mu(k).scale(n as i64 + 1);
    let (b0, h0) = highest_of(alg, &lam, tau)?;
    let (_, h1) = highest_of(alg, &lam1, tau)?;
    if h0.is_empty() {
        return Err(FlagError::Conjugation(format!("type {:?} does not occur at level {}", tau, n)));
    }
    if h0.len() != h1.len() {
        return Err(FlagError::Conjugation(format!(
            "type {:?} has not stabilized at level {} ({} vs {})",
            tau,
            n,
            h0.len(),
            h1.len()
        )));
    }
    let r = psi_images(alg, &lam, b0, &h0, k, false)?;
    let l = psi_images(alg, &lam, b0, &h0, k, true)?;
    let dim = r[0].len();
    let rm = Matrix::from_cols(&r, dim);
    let lm = Matrix::from_cols(&l, dim);
    let a = rm
        .solve_matrix(&lm)
        .ok_or_else(|| FlagError::Conjugation(format!("ψ_k·H is not contained in H·ψ_k for type {:?}", tau)))?;
    if a.det().is_zero() {
        return Err(FlagError::Conjugation("conjugation operator is singular".into()));
    }
    Ok(ConjugationOperator { k, tau: tau.clone(), level: n, matrix: a, basis: h0 })
}

impl ConjugationOperator {
    /// Check `A_{n+1} R = R A_n`, with R the right multiplication by ψ_k.
    pub fn consistent_with(&self, alg: &FlagAlgebra, next: &ConjugationOperator) -> Result<bool, FlagError> {
        let lam = alg.mu(self.k).scale(self.level as i64);
        let m = alg.module(&lam)?;
        let b0 = m.block_index(&self.tau).expect("τ block");
        let r = psi_images(alg, &lam, b0, &self.basis, self.k, false)?;
        // Coordinates of R h_i in the next basis.
        let dim = r[0].len();
        let nb = Matrix::from_cols(&next.basis, dim);
        let rc = nb
            .solve_matrix(&Matrix::from_cols(&r, dim))
            .ok_or_else(|| FlagError::Conjugation("right multiplication leaves the multiplicity space".into()))?;
        Ok(next.matrix.mul(&rc) == rc.mul(&self.matrix))
    }
}

/// Least `j ≤ jmax` with `dim L(λ + jλ')_μ = dim L(λ + (j−1)λ')_μ ψ` for the 𝔨-type μ,
/// where ψ spans the invariants of L(λ'); multiplicity spaces are compared.
pub fn ore_stabilization_check(
    alg: &FlagAlgebra,
    lambda: &Weight,
    lambda_prime: &Weight,
    mu: &Weight,
    jmax: u32,
) -> Result<Option<u32>, FlagError> {
    let mp = alg.module(lambda_prime)?;
    let inv = crate::modules::invariant_vector(&alg.pair, &mp);
    if inv.len() != 1 {
        return Err(FlagError::Module(crate::modules::ModuleError::NotSpherical(lambda_prime.0.clone())));
    }
    let psi = GradedFunction::homogeneous(lambda_prime.clone(), inv[0].clone());
    for j in 1..=jmax {
        let lo = lambda.add(&lambda_prime.scale(j as i64 - 1));
        let hi = lambda.add(&lambda_prime.scale(j as i64));
        let (b_lo, h_lo) = highest_of(alg, &lo, mu)?;
        let (_, h_hi) = highest_of(alg, &hi, mu)?;
        // Dimension of the image H_lo · ψ.
        let image_dim = if h_lo.is_empty() {
            0
        } else {
            let m_lo = alg.module(&lo)?;
            let mut imgs = Vec::new();
            for v in &h_lo {
                let g = GradedFunction::homogeneous(lo.clone(), m_lo.extend(v, b_lo));
                let p = alg.multiply(&g, &psi)?;
                imgs.push(p.component(&hi).cloned().unwrap_or_else(|| vec![QScalar::zero(); alg.module(&hi).map(|m| m.dim()).unwrap_or(0)]));
            }
            Matrix::from_cols(&imgs, imgs[0].len()).rank()
        };
        if image_dim == h_hi.len() {
            return Ok(Some(j));
        }
    }
    Ok(None)
}
