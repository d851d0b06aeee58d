use std::collections::BTreeMap;

use crate::linalg::Matrix;
use crate::rootdata::{HermitianPair, RootDatum, Weight};
use crate::scalars::{q_int, QScalar};

use super::{Block, BlockMap, Label, ModuleError, WeightModule};

struct Candidate {
    word: Vec<usize>,
    node: usize,
    /// Global index of the parent basis vector.
    parent: usize,
}

/// Build L(λ) inside the Verma module.
///
/// Basis vectors are F-words, generated breadth first. A candidate `F_i b` is
/// kept when its E-signature `(E_j F_i b)_j` is independent of the signatures
/// already kept in its weight space; in the simple quotient a vector of lower
/// weight vanishes exactly when every `E_j` kills it, so signature rank equals
/// the rank of the Shapovalov Gram block.
pub fn simple_module(dat: &RootDatum, lambda: &Weight) -> Result<WeightModule, ModuleError> {
    if !lambda.is_dominant() || lambda.rank() != dat.rank() {
        return Err(ModuleError::NotDominant(lambda.0.clone()));
    }
    let l = dat.rank();
    let d: Vec<u32> = (0..l).map(|i| dat.d(i)).collect();
    let mut blocks: Vec<Block> = vec![Block { weight: lambda.clone(), offset: 0, dim: 1 }];
    let mut index: BTreeMap<Weight, usize> = BTreeMap::new();
    index.insert(lambda.clone(), 0);
    let mut labels = vec![Label::Word(Vec::new())];
    let mut parents: Vec<Option<(usize, usize)>> = vec![None];
    let mut e: Vec<Vec<BlockMap>> = vec![vec![None]; l];
    let mut f: Vec<Vec<BlockMap>> = vec![vec![None]; l];
    let mut gram = vec![Matrix::identity(1)];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];

    let mut level_blocks = vec![0usize];
    while !level_blocks.is_empty() {
        // Gather candidates by target weight.
        let mut cands: BTreeMap<Weight, Vec<Candidate>> = BTreeMap::new();
        for &pb in &level_blocks {
            let b = &blocks[pb];
            for i in 0..l {
                let target = b.weight.sub(dat.simple_root(i));
                for k in b.offset..b.offset + b.dim {
                    let mut word = vec![i];
                    word.extend(words[k].iter().copied());
                    cands.entry(target.clone()).or_default().push(Candidate { word, node: i, parent: k });
                }
            }
        }
        let mut next_level = Vec::new();
        for (nu, mut cs) in cands {
            cs.sort_by(|a, b| a.word.cmp(&b.word));
            // Signature rows: one group per j with a block at ν + α_j.
            let groups: Vec<(usize, usize)> = (0..l)
                .filter_map(|j| index.get(&nu.add(dat.simple_root(j))).map(|&bj| (j, bj)))
                .collect();
            let nrows: usize = groups.iter().map(|&(_, bj)| blocks[bj].dim).sum();
            let mut sig = Matrix::zeros(nrows, cs.len());
            for (ci, c) in cs.iter().enumerate() {
                let pb = block_of(&blocks, c.parent);
                let mu = &blocks[pb].weight;
                let local_parent = c.parent - blocks[pb].offset;
                let mut row0 = 0;
                for &(j, bj) in &groups {
                    // E_j F_i b = F_i E_j b + δ_ij [μ_i]_{q_i} b
                    if let Some((t, ej)) = &e[j][pb] {
                        if let Some((t2, fi)) = &f[c.node][*t] {
                            debug_assert_eq!(*t2, bj);
                            let col = ej.col(local_parent);
                            let img = fi.mul_vec(&col);
                            for (r, x) in img.into_iter().enumerate() {
                                sig[(row0 + r, ci)] = x;
                            }
                        }
                    }
                    if j == c.node {
                        debug_assert_eq!(bj, pb);
                        let v = q_int(mu.coord(j), d[j]);
                        let slot = &mut sig[(row0 + local_parent, ci)];
                        *slot = &*slot + &v;
                    }
                    row0 += blocks[bj].dim;
                }
            }
            let keep = sig.independent_columns();
            if keep.is_empty() {
                continue;
            }
            let all_rows: Vec<usize> = (0..nrows).collect();
            let sig_sel = sig.select(&all_rows, &keep);
            let coords = sig_sel.solve_matrix(&sig).expect("candidates lie in the span of the kept ones");
            let bi = blocks.len();
            let offset = labels.len();
            blocks.push(Block { weight: nu.clone(), offset, dim: keep.len() });
            index.insert(nu.clone(), bi);
            for &k in &keep {
                labels.push(Label::Word(cs[k].word.clone()));
                words.push(cs[k].word.clone());
                parents.push(Some((cs[k].node, cs[k].parent)));
            }
            for i in 0..l {
                e[i].push(None);
                f[i].push(None);
            }
            // F matrices into the new block, one per (node, parent block).
            for (ci, c) in cs.iter().enumerate() {
                let pb = block_of(&blocks, c.parent);
                let local_parent = c.parent - blocks[pb].offset;
                let pdim = blocks[pb].dim;
                let entry = f[c.node][pb].get_or_insert_with(|| (bi, Matrix::zeros(keep.len(), pdim)));
                for r in 0..keep.len() {
                    entry.1[(r, local_parent)] = coords[(r, ci)].clone();
                }
            }
            // E matrices out of the new block are the kept signatures.
            let mut row0 = 0;
            for &(j, bj) in &groups {
                let dim_j = blocks[bj].dim;
                let rows: Vec<usize> = (row0..row0 + dim_j).collect();
                let m = sig_sel.select(&rows, &(0..keep.len()).collect::<Vec<_>>());
                if !m.is_zero() {
                    e[j][bi] = Some((bj, m));
                }
                row0 += dim_j;
            }
            // Gram block: <F_i b, y> = q_i^{-ν_i} <b, E_i y>.
            let mut g = Matrix::zeros(keep.len(), keep.len());
            for (r, &kr) in keep.iter().enumerate() {
                let c = &cs[kr];
                let pb = block_of(&blocks, c.parent);
                let local_parent = c.parent - blocks[pb].offset;
                let factor = QScalar::q_pow(-(d[c.node] as i64) * nu.coord(c.node));
                let gp = &gram[pb];
                if let Some((t, ei)) = &e[c.node][bi] {
                    debug_assert_eq!(*t, pb);
                    let row = gp.row(local_parent);
                    for col in 0..keep.len() {
                        let y = ei.col(col);
                        let v = crate::linalg::dot(row, &y);
                        if !v.is_zero() {
                            g[(r, col)] = &factor * &v;
                        }
                    }
                }
            }
            gram.push(g);
            next_level.push(bi);
        }
        level_blocks = next_level;
    }
    let expected = dat.weyl_dimension(lambda);
    if expected != labels.len() as u64 {
        return Err(ModuleError::DimensionMismatch { hw: lambda.0.clone(), expected, got: labels.len() });
    }
    Ok(WeightModule::assemble(lambda.clone(), d, (0..l).map(|i| dat.simple_root(i).clone()).collect(), blocks, labels, parents, e, f, gram))
}

fn block_of(blocks: &[Block], k: usize) -> usize {
    // Blocks are contiguous and sorted by offset.
    match blocks.binary_search_by(|b| {
        if k < b.offset {
            std::cmp::Ordering::Greater
        } else if k >= b.offset + b.dim {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Equal
        }
    }) {
        Ok(i) => i,
        Err(_) => panic!("basis index {k} outside all blocks"),
    }
}

pub fn simple_module_for(pair: &HermitianPair, lambda: &Weight) -> Result<WeightModule, ModuleError> {
    simple_module(&pair.datum, lambda)
}
