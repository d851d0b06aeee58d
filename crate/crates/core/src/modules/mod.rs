//! Finite-dimensional weight modules: simple modules L(λ) carved out of the
//! Verma module, tensor products, Cartan maps and the star involution.

mod build;
mod cartan;
mod isotypic;
mod shapovalov;
mod star;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{zero_vector, Matrix, Vector};
use crate::rootdata::Weight;
use crate::scalars::{QScalar, ScalarError};
use crate::uqg::{Gen, Letter, UqElement};

pub use build::{simple_module, simple_module_for};
pub use cartan::{cartan_embedding, cartan_multiplication, cartan_pair, tensor_product, Embedding, MultMap};
pub use isotypic::{invariant_vector, isotypic_decomposition, k_dimension, k_highest_vectors, IsotypicComponent};
pub use shapovalov::shapovalov_pair;
pub use star::{star_on_spherical, StarInvolution};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModuleError {
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("constructed dimension {got} differs from the Weyl dimension {expected} for highest weight {hw:?}")]
    DimensionMismatch { hw: Vec<i64>, expected: u64, got: usize },
    #[error("vector of length {got} does not fit a module of dimension {expected}")]
    VectorLength { expected: usize, got: usize },
    #[error("node {node} out of range for rank {rank}")]
    Node { node: usize, rank: usize },
    #[error("intertwiner check failed: {0}")]
    Intertwiner(String),
    #[error("isotypic decomposition failed: {0}")]
    Partition(String),
    #[error("weight {0:?} is not spherical")]
    NotSpherical(Vec<i64>),
    #[error("star involution failed: {0}")]
    Star(String),
    #[error("cache format error: {0}")]
    Cache(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// One weight space of a module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub weight: Weight,
    pub offset: usize,
    pub dim: usize,
}

/// Label of a basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    /// `F_{j_1} ... F_{j_m} v(λ)`, nodes 0-based, leftmost letter first.
    Word(Vec<usize>),
    /// Pure tensor of two basis vectors.
    Pair(usize, usize),
}

/// Map from one block to another: `(target block, matrix target_dim × source_dim)`.
pub type BlockMap = Option<(usize, Matrix)>;

/// Finite-dimensional weight module with an invariant form.
#[derive(Clone, Debug)]
pub struct WeightModule {
    pub hw: Weight,
    pub rank: usize,
    /// Symmetrizer, so that `q_i = q^{d_i}`.
    pub d: Vec<u32>,
    /// Simple roots in the fundamental-weight basis.
    pub alphas: Vec<Weight>,
    pub blocks: Vec<Block>,
    pub labels: Vec<Label>,
    /// For simple modules: basis vector `F_i b'` records `(i, b')`.
    pub parents: Vec<Option<(usize, usize)>>,
    block_of: Vec<usize>,
    index: HashMap<Weight, usize>,
    /// `e[i][block]`
    e: Vec<Vec<BlockMap>>,
    f: Vec<Vec<BlockMap>>,
    gram: Vec<Matrix>,
}

impl WeightModule {
    pub(crate) fn assemble(
        hw: Weight,
        d: Vec<u32>,
        alphas: Vec<Weight>,
        blocks: Vec<Block>,
        labels: Vec<Label>,
        parents: Vec<Option<(usize, usize)>>,
        e: Vec<Vec<BlockMap>>,
        f: Vec<Vec<BlockMap>>,
        gram: Vec<Matrix>,
    ) -> Self {
        let rank = d.len();
        let mut block_of = vec![0; labels.len()];
        let mut index = HashMap::new();
        for (bi, b) in blocks.iter().enumerate() {
            index.insert(b.weight.clone(), bi);
            for k in b.offset..b.offset + b.dim {
                block_of[k] = bi;
            }
        }
        WeightModule { hw, rank, d, alphas, blocks, labels, parents, block_of, index, e, f, gram }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn block_index(&self, w: &Weight) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn block(&self, w: &Weight) -> Option<&Block> {
        self.block_index(w).map(|i| &self.blocks[i])
    }

    pub fn block_of(&self, k: usize) -> usize {
        self.block_of[k]
    }

    pub fn weight_of(&self, k: usize) -> &Weight {
        &self.blocks[self.block_of[k]].weight
    }

    pub fn gram(&self, block: usize) -> &Matrix {
        &self.gram[block]
    }

    pub fn e_map(&self, i: usize, block: usize) -> &BlockMap {
        &self.e[i][block]
    }

    pub fn f_map(&self, i: usize, block: usize) -> &BlockMap {
        &self.f[i][block]
    }

    /// Map of a letter on a block: `None` means the letter acts by zero there.
    pub fn letter_map(&self, l: Letter, block: usize) -> Option<(usize, Matrix)> {
        match l.gen {
            Gen::E => self.e[l.node][block].clone(),
            Gen::F => self.f[l.node][block].clone(),
            Gen::K | Gen::KInv => {
                let s = self.k_eigen(l.node, &self.blocks[block].weight, l.gen == Gen::KInv);
                Some((block, Matrix::identity(self.blocks[block].dim).scale(&s)))
            }
        }
    }

    /// Eigenvalue `q_i^{±ν_i}` of `K_i^{±1}` on weight ν.
    pub fn k_eigen(&self, i: usize, w: &Weight, inverse: bool) -> QScalar {
        let e = self.d[i] as i64 * w.coord(i);
        QScalar::q_pow(if inverse { -e } else { e })
    }

    /// Local coordinates of a global vector on one block.
    pub fn restrict<'a>(&self, v: &'a [QScalar], block: usize) -> &'a [QScalar] {
        let b = &self.blocks[block];
        &v[b.offset..b.offset + b.dim]
    }

    /// Global vector supported on one block.
    pub fn extend(&self, local: &[QScalar], block: usize) -> Vector {
        let b = &self.blocks[block];
        let mut v = zero_vector(self.dim());
        v[b.offset..b.offset + b.dim].clone_from_slice(local);
        v
    }

    pub fn unit(&self, k: usize) -> Vector {
        let mut v = zero_vector(self.dim());
        v[k] = QScalar::one();
        v
    }

    fn check_len(&self, v: &[QScalar]) -> Result<(), ModuleError> {
        if v.len() != self.dim() {
            return Err(ModuleError::VectorLength { expected: self.dim(), got: v.len() });
        }
        Ok(())
    }

    /// Apply one generator to a global vector.
    pub fn apply_letter(&self, l: Letter, v: &[QScalar]) -> Vector {
        let mut out = zero_vector(self.dim());
        for (bi, b) in self.blocks.iter().enumerate() {
            let local = &v[b.offset..b.offset + b.dim];
            if local.iter().all(|x| x.is_zero()) {
                continue;
            }
            match l.gen {
                Gen::K | Gen::KInv => {
                    let s = self.k_eigen(l.node, &b.weight, l.gen == Gen::KInv);
                    for (k, x) in local.iter().enumerate() {
                        out[b.offset + k] = &s * x;
                    }
                }
                Gen::E | Gen::F => {
                    let map = if l.gen == Gen::E { &self.e[l.node][bi] } else { &self.f[l.node][bi] };
                    if let Some((t, m)) = map {
                        let img = m.mul_vec(local);
                        let tb = &self.blocks[*t];
                        for (k, x) in img.into_iter().enumerate() {
                            if !x.is_zero() {
                                let slot = &mut out[tb.offset + k];
                                *slot = &*slot + &x;
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Apply a word, rightmost letter first.
    pub fn apply_word(&self, w: &[Letter], v: &[QScalar]) -> Vector {
        let mut cur = v.to_vec();
        for &l in w.iter().rev() {
            if cur.iter().all(|x| x.is_zero()) {
                break;
            }
            cur = self.apply_letter(l, &cur);
        }
        cur
    }

    /// Operator matrix of a word restricted to one source block.
    pub fn word_block_map(&self, w: &[Letter], block: usize) -> Option<(usize, Matrix)> {
        let mut cur = (block, Matrix::identity(self.blocks[block].dim));
        for &l in w.iter().rev() {
            let (t, m) = self.letter_map(l, cur.0)?;
            cur = (t, m.mul(&cur.1));
        }
        Some(cur)
    }

    /// Operator of an element on one source block; `None` if it vanishes identically
    /// because every word leaves the module.
    pub fn element_block_map(&self, x: &UqElement, block: usize) -> Option<(usize, Matrix)> {
        let mut acc: Option<(usize, Matrix)> = None;
        for (w, c) in x.terms() {
            if let Some((t, m)) = self.word_block_map(w, block) {
                let m = m.scale(c);
                acc = Some(match acc {
                    None => (t, m),
                    Some((t0, a)) => {
                        assert_eq!(t0, t, "element is not weight-homogeneous");
                        (t0, a.add(&m))
                    }
                });
            }
        }
        acc
    }

    /// Names of the relations that fail to act by zero, with the weight where they fail.
    pub fn relation_failures(&self, rels: &[crate::uqg::Relation]) -> Vec<String> {
        let mut out = Vec::new();
        for r in rels {
            for bi in 0..self.blocks.len() {
                if let Some((_, m)) = self.element_block_map(&r.element, bi) {
                    if !m.is_zero() {
                        out.push(format!("{} on weight {:?}", r.name, self.blocks[bi].weight));
                        break;
                    }
                }
            }
        }
        out
    }

    /// `Σ` over the blocks of the element action on v.
    pub fn act(&self, x: &UqElement, v: &[QScalar]) -> Result<Vector, ModuleError> {
        self.check_len(v)?;
        for (w, _) in x.terms() {
            if let Some(l) = w.iter().find(|l| l.node >= self.rank) {
                return Err(ModuleError::Node { node: l.node + 1, rank: self.rank });
            }
        }
        let mut out = zero_vector(self.dim());
        for (w, c) in x.terms() {
            let r = self.apply_word(w, v);
            crate::linalg::axpy(&mut out, c, &r);
        }
        Ok(out)
    }

    /// Invariant form of two global vectors.
    pub fn form(&self, x: &[QScalar], y: &[QScalar]) -> QScalar {
        let mut acc = QScalar::zero();
        for (bi, b) in self.blocks.iter().enumerate() {
            let xs = &x[b.offset..b.offset + b.dim];
            if xs.iter().all(|c| c.is_zero()) {
                continue;
            }
            let ys = &y[b.offset..b.offset + b.dim];
            if ys.iter().all(|c| c.is_zero()) {
                continue;
            }
            acc = acc + crate::linalg::dot(xs, &self.gram[bi].mul_vec(ys));
        }
        acc
    }

    /// The basis vector spanning the lowest weight space, if it is one-dimensional.
    pub fn lowest_vector(&self) -> Option<usize> {
        // The lowest weight space is the unique block without F-successors.
        let mut cand = None;
        for (bi, b) in self.blocks.iter().enumerate() {
            if (0..self.rank).all(|i| self.f[i][bi].is_none()) {
                if cand.is_some() {
                    return None;
                }
                cand = Some((bi, b.dim));
            }
        }
        match cand {
            Some((bi, 1)) => Some(self.blocks[bi].offset),
            _ => None,
        }
    }

    pub fn to_data(&self) -> ModuleData {
        let mat = |m: &BlockMap| {
            m.as_ref().map(|(t, x)| (*t, x.rows(), x.cols(), x.entries().iter().map(|c| c.to_string()).collect()))
        };
        ModuleData {
            version: 1,
            hw: self.hw.0.clone(),
            d: self.d.clone(),
            alphas: self.alphas.iter().map(|a| a.0.clone()).collect(),
            blocks: self.blocks.iter().map(|b| (b.weight.0.clone(), b.offset, b.dim)).collect(),
            words: self
                .labels
                .iter()
                .map(|l| match l {
                    Label::Word(w) => w.clone(),
                    Label::Pair(a, b) => vec![usize::MAX, *a, *b],
                })
                .collect(),
            parents: self.parents.clone(),
            e: self.e.iter().map(|row| row.iter().map(mat).collect()).collect(),
            f: self.f.iter().map(|row| row.iter().map(mat).collect()).collect(),
            gram: self
                .gram
                .iter()
                .map(|g| (g.rows(), g.cols(), g.entries().iter().map(|c| c.to_string()).collect()))
                .collect(),
        }
    }

    pub fn from_data(data: &ModuleData) -> Result<Self, ModuleError> {
        if data.version != 1 {
            return Err(ModuleError::Cache(format!("unsupported version {}", data.version)));
        }
        let parse_mat = |rows: usize, cols: usize, cs: &[String]| -> Result<Matrix, ModuleError> {
            if cs.len() != rows * cols {
                return Err(ModuleError::Cache("matrix size".into()));
            }
            let entries: Result<Vec<QScalar>, ScalarError> = cs.iter().map(|s| crate::scalars::from_text(s)).collect();
            let entries = entries?;
            Ok(Matrix::from_flat(rows, cols, entries))
        };
        let conv = |row: &Vec<Option<(usize, usize, usize, Vec<String>)>>| -> Result<Vec<BlockMap>, ModuleError> {
            row.iter()
                .map(|m| match m {
                    None => Ok(None),
                    Some((t, r, c, cs)) => Ok(Some((*t, parse_mat(*r, *c, cs)?))),
                })
                .collect()
        };
        let e = data.e.iter().map(conv).collect::<Result<Vec<_>, _>>()?;
        let f = data.f.iter().map(conv).collect::<Result<Vec<_>, _>>()?;
        let gram = data.gram.iter().map(|(r, c, cs)| parse_mat(*r, *c, cs)).collect::<Result<Vec<_>, _>>()?;
        let blocks = data.blocks.iter().map(|(w, o, d)| Block { weight: Weight(w.clone()), offset: *o, dim: *d }).collect();
        let labels = data
            .words
            .iter()
            .map(|w| if w.first() == Some(&usize::MAX) { Label::Pair(w[1], w[2]) } else { Label::Word(w.clone()) })
            .collect();
        Ok(WeightModule::assemble(Weight(data.hw.clone()), data.d.clone(), data.alphas.iter().map(|a| Weight(a.clone())).collect(), blocks, labels, data.parents.clone(), e, f, gram))
    }
}

/// Serializable form of a module, with scalars in their text form.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ModuleData {
    pub version: u32,
    pub hw: Vec<i64>,
    pub d: Vec<u32>,
    pub alphas: Vec<Vec<i64>>,
    pub blocks: Vec<(Vec<i64>, usize, usize)>,
    pub words: Vec<Vec<usize>>,
    pub parents: Vec<Option<(usize, usize)>>,
    #[allow(clippy::type_complexity)]
    pub e: Vec<Vec<Option<(usize, usize, usize, Vec<String>)>>>,
    #[allow(clippy::type_complexity)]
    pub f: Vec<Vec<Option<(usize, usize, usize, Vec<String>)>>>,
    pub gram: Vec<(usize, usize, Vec<String>)>,
}

#[cfg(test)]
mod tests;
