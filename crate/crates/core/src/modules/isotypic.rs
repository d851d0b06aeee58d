use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::linalg::{Matrix, Vector};
use crate::rootdata::{HermitianPair, Weight};
use crate::scalars::QScalar;

use super::{ModuleError, WeightModule};

/// Sum of all copies of one simple `U_q𝔨`-module inside a weight module.
#[derive(Clone, Debug)]
pub struct IsotypicComponent {
    /// 𝔨-highest weight.
    pub mu: Weight,
    pub multiplicity: usize,
    /// 𝔨-highest vectors of weight μ (global coordinates).
    pub highest: Vec<Vector>,
    /// Basis of the component, grouped by block: `(block, local columns)`.
    pub blocks: Vec<(usize, Matrix)>,
}

impl IsotypicComponent {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|(_, m)| m.cols()).sum()
    }

    /// Basis vectors in global coordinates (the inclusion matrix columns).
    pub fn basis(&self, m: &WeightModule) -> Vec<Vector> {
        let mut out = Vec::new();
        for (bi, cols) in &self.blocks {
            for c in 0..cols.cols() {
                out.push(m.extend(&cols.col(c), *bi));
            }
        }
        out
    }
}

/// Dimension of the simple `U_q𝔨`-module with highest weight μ.
pub fn k_dimension(pair: &HermitianPair, mu: &Weight) -> u64 {
    let dat = &pair.datum;
    let rho = dat.rho();
    let mr = mu.add(&rho);
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for beta in &dat.positive_roots {
        if beta[pair.l0] != 0 {
            continue;
        }
        num *= dat.weight_root_pairing(&mr, beta);
        den *= dat.weight_root_pairing(&rho, beta);
    }
    (num / den).to_u64().expect("dimension fits")
}

fn is_k_dominant(pair: &HermitianPair, w: &Weight) -> bool {
    pair.k_nodes.iter().all(|&i| w.coord(i) >= 0)
}

/// Local kernel on a block of the stacked maps of the given letters.
fn block_kernel(m: &WeightModule, block: usize, nodes: &[usize], with_f: bool) -> Vec<Vector> {
    let dim = m.blocks[block].dim;
    let mut stacked = Matrix::zeros(0, dim);
    for &i in nodes {
        if let Some((_, a)) = m.e_map(i, block) {
            stacked = stacked.vstack(a);
        }
        if with_f {
            if let Some((_, a)) = m.f_map(i, block) {
                stacked = stacked.vstack(a);
            }
        }
    }
    if stacked.rows() == 0 {
        return (0..dim).map(|k| unit(dim, k)).collect();
    }
    stacked.kernel()
}

fn unit(n: usize, k: usize) -> Vector {
    let mut v = vec![QScalar::zero(); n];
    v[k] = QScalar::one();
    v
}

/// Scale so that the first nonzero coordinate is one.
pub(crate) fn normalize_first(v: &mut [QScalar]) {
    if let Some(c) = v.iter().find(|x| !x.is_zero()).cloned() {
        let inv = c.inv();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
    }
}

/// Basis of the `U_q𝔨`-invariants: weight zero and killed by `E_i, F_i` for `i ≠ l0`.
/// Each vector is normalized to have leading coordinate one.
pub fn invariant_vector(pair: &HermitianPair, m: &WeightModule) -> Vec<Vector> {
    let zero = Weight::zero(m.rank);
    let Some(b) = m.block_index(&zero) else {
        return Vec::new();
    };
    block_kernel(m, b, &pair.k_nodes, true)
        .into_iter()
        .map(|mut v| {
            normalize_first(&mut v);
            m.extend(&v, b)
        })
        .collect()
}

/// 𝔨-highest vectors grouped by weight, as local vectors on their block.
pub fn k_highest_vectors(pair: &HermitianPair, m: &WeightModule) -> Vec<(Weight, usize, Vec<Vector>)> {
    let mut out = Vec::new();
    for (bi, b) in m.blocks.iter().enumerate() {
        if !is_k_dominant(pair, &b.weight) {
            continue;
        }
        let ker = block_kernel(m, bi, &pair.k_nodes, false);
        if !ker.is_empty() {
            out.push((b.weight.clone(), bi, ker));
        }
    }
    out
}

/// Decompose a module into `U_q𝔨`-isotypic components by generating from
/// 𝔨-highest vectors with the compact lowering operators.
pub fn isotypic_decomposition(pair: &HermitianPair, m: &WeightModule) -> Result<Vec<IsotypicComponent>, ModuleError> {
    let mut comps = Vec::new();
    for (mu, bi, ker) in k_highest_vectors(pair, m) {
        let mut spans: BTreeMap<usize, Matrix> = BTreeMap::new();
        let start = Matrix::from_cols(&ker, m.blocks[bi].dim);
        spans.insert(bi, start);
        let mut work = vec![bi];
        while let Some(b) = work.pop() {
            let cols = spans[&b].clone();
            for &i in &pair.k_nodes {
                let Some((t, fm)) = m.f_map(i, b) else { continue };
                let img = fm.mul(&cols);
                if img.is_zero() {
                    continue;
                }
                let (merged, grew) = match spans.get(t) {
                    None => {
                        let keep = img.independent_columns();
                        (select_cols(&img, &keep), true)
                    }
                    Some(old) => {
                        let joint = old.hstack(&img);
                        let keep = joint.independent_columns();
                        let grew = keep.len() > old.cols();
                        (select_cols(&joint, &keep), grew)
                    }
                };
                if grew {
                    spans.insert(*t, merged);
                    work.push(*t);
                }
            }
        }
        let comp = IsotypicComponent { mu: mu.clone(), multiplicity: ker.len(), highest: ker.iter().map(|v| m.extend(v, bi)).collect(), blocks: spans.into_iter().collect() };
        let kd = k_dimension(pair, &mu);
        if comp.dim() as u64 != kd * comp.multiplicity as u64 {
            return Err(ModuleError::Partition(format!(
                "component {:?} has dimension {} but multiplicity {} times {}",
                mu,
                comp.dim(),
                comp.multiplicity,
                kd
            )));
        }
        if comp.multiplicity as u64 > kd {
            return Err(ModuleError::Partition(format!("multiplicity {} of {:?} exceeds {}", comp.multiplicity, mu, kd)));
        }
        comps.push(comp);
    }
    check_partition(m, &comps)?;
    Ok(comps)
}

fn select_cols(a: &Matrix, keep: &[usize]) -> Matrix {
    let rows: Vec<usize> = (0..a.rows()).collect();
    a.select(&rows, keep)
}

fn check_partition(m: &WeightModule, comps: &[IsotypicComponent]) -> Result<(), ModuleError> {
    let total: usize = comps.iter().map(|c| c.dim()).sum();
    if total != m.dim() {
        return Err(ModuleError::Partition(format!("components span {} of {} dimensions", total, m.dim())));
    }
    for (bi, b) in m.blocks.iter().enumerate() {
        let mut acc = Matrix::zeros(b.dim, 0);
        for c in comps {
            for (cb, cols) in &c.blocks {
                if *cb == bi {
                    acc = acc.hstack(cols);
                }
            }
        }
        if acc.cols() != b.dim || acc.rank() != b.dim {
            return Err(ModuleError::Partition(format!("weight space {:?} is not a direct sum of components", b.weight)));
        }
    }
    Ok(())
}
