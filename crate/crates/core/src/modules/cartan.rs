use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::{Arc, RwLock};

use crate::linalg::{Matrix, Vector};
use crate::rootdata::{RootDatum, Weight};
use crate::scalars::QScalar;

use super::{build::simple_module, Block, BlockMap, Label, ModuleError, WeightModule};

/// BFS depth of each block along the F maps, starting from the blocks nobody maps into.
fn block_depths(m: &WeightModule) -> Vec<usize> {
    let nb = m.blocks.len();
    let mut has_pred = vec![false; nb];
    for i in 0..m.rank {
        for b in 0..nb {
            if let Some((t, _)) = m.f_map(i, b) {
                has_pred[*t] = true;
            }
        }
    }
    let mut depth = vec![usize::MAX; nb];
    let mut queue = VecDeque::new();
    for b in 0..nb {
        if !has_pred[b] {
            depth[b] = 0;
            queue.push_back(b);
        }
    }
    while let Some(b) = queue.pop_front() {
        for i in 0..m.rank {
            if let Some((t, _)) = m.f_map(i, b) {
                if depth[*t] == usize::MAX {
                    depth[*t] = depth[b] + 1;
                    queue.push_back(*t);
                }
            }
        }
    }
    depth
}

/// `M1 ⊗ M2` with the generators acting through the coproduct.
pub fn tensor_product(m1: &WeightModule, m2: &WeightModule) -> WeightModule {
    assert_eq!(m1.d, m2.d, "factors over different algebras");
    let rank = m1.rank;
    let d1 = block_depths(m1);
    let d2 = block_depths(m2);
    // Group block pairs by weight, ordered by depth then weight.
    let mut by_weight: BTreeMap<Weight, (usize, Vec<(usize, usize)>)> = BTreeMap::new();
    for (a, ba) in m1.blocks.iter().enumerate() {
        for (b, bb) in m2.blocks.iter().enumerate() {
            let w = ba.weight.add(&bb.weight);
            let entry = by_weight.entry(w).or_insert((d1[a] + d2[b], Vec::new()));
            entry.0 = entry.0.min(d1[a] + d2[b]);
            entry.1.push((a, b));
        }
    }
    let mut order: Vec<(usize, Weight, Vec<(usize, usize)>)> = by_weight.into_iter().map(|(w, (dp, ps))| (dp, w, ps)).collect();
    order.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| y.1.cmp(&x.1)));

    let mut blocks = Vec::new();
    let mut labels = Vec::new();
    let mut pair_index: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    let mut index: HashMap<Weight, usize> = HashMap::new();
    for (bi, (_, w, ps)) in order.iter().enumerate() {
        let offset = labels.len();
        let mut local = 0;
        for &(a, b) in ps {
            let ba = &m1.blocks[a];
            let bb = &m2.blocks[b];
            for x in ba.offset..ba.offset + ba.dim {
                for y in bb.offset..bb.offset + bb.dim {
                    pair_index.insert((x, y), (bi, local));
                    labels.push(Label::Pair(x, y));
                    local += 1;
                }
            }
        }
        blocks.push(Block { weight: w.clone(), offset, dim: local });
        index.insert(w.clone(), bi);
    }
    let nb = blocks.len();
    let mut e: Vec<Vec<BlockMap>> = vec![vec![None; nb]; rank];
    let mut f: Vec<Vec<BlockMap>> = vec![vec![None; nb]; rank];
    let mut gram = Vec::with_capacity(nb);
    for (bi, (_, w, ps)) in order.iter().enumerate() {
        let dim = blocks[bi].dim;
        for i in 0..rank {
            for (is_e, maps) in [(true, &mut e), (false, &mut f)] {
                let target_w = if is_e { w.add(&m1.alphas[i]) } else { w.sub(&m1.alphas[i]) };
                let Some(&tb) = index.get(&target_w) else { continue };
                let mut mat = Matrix::zeros(blocks[tb].dim, dim);
                let mut any = false;
                for &(a, b) in ps {
                    let ba = &m1.blocks[a];
                    let bb = &m2.blocks[b];
                    let (map1, map2) = if is_e { (m1.e_map(i, a), m2.e_map(i, b)) } else { (m1.f_map(i, a), m2.f_map(i, b)) };
                    // E(x⊗y) = Ex⊗y + q_i^{wt(x)_i} x⊗Ey ; F(x⊗y) = q_i^{-wt(y)_i} Fx⊗y + x⊗Fy
                    let c1 = if is_e { QScalar::one() } else { m2.k_eigen(i, &bb.weight, true) };
                    let c2 = if is_e { m1.k_eigen(i, &ba.weight, false) } else { QScalar::one() };
                    for x in 0..ba.dim {
                        for y in 0..bb.dim {
                            let (_, src) = pair_index[&(ba.offset + x, bb.offset + y)];
                            if let Some((ta, ma)) = map1 {
                                let tba = &m1.blocks[*ta];
                                for r in 0..tba.dim {
                                    let v = &ma[(r, x)];
                                    if v.is_zero() {
                                        continue;
                                    }
                                    let (t, dst) = pair_index[&(tba.offset + r, bb.offset + y)];
                                    debug_assert_eq!(t, tb);
                                    mat[(dst, src)] = &mat[(dst, src)] + &(&c1 * v);
                                    any = true;
                                }
                            }
                            if let Some((tbb, mb)) = map2 {
                                let tbb = &m2.blocks[*tbb];
                                for r in 0..tbb.dim {
                                    let v = &mb[(r, y)];
                                    if v.is_zero() {
                                        continue;
                                    }
                                    let (t, dst) = pair_index[&(ba.offset + x, tbb.offset + r)];
                                    debug_assert_eq!(t, tb);
                                    mat[(dst, src)] = &mat[(dst, src)] + &(&c2 * v);
                                    any = true;
                                }
                            }
                        }
                    }
                }
                if any && !mat.is_zero() {
                    maps[i][bi] = Some((tb, mat));
                }
            }
        }
        let mut g = Matrix::zeros(dim, dim);
        for &(a, b) in ps {
            let ba = &m1.blocks[a];
            let bb = &m2.blocks[b];
            let ga = m1.gram(a);
            let gb = m2.gram(b);
            for x in 0..ba.dim {
                for y in 0..bb.dim {
                    let (_, r) = pair_index[&(ba.offset + x, bb.offset + y)];
                    for x2 in 0..ba.dim {
                        if ga[(x, x2)].is_zero() {
                            continue;
                        }
                        for y2 in 0..bb.dim {
                            if gb[(y, y2)].is_zero() {
                                continue;
                            }
                            let (_, c) = pair_index[&(ba.offset + x2, bb.offset + y2)];
                            g[(r, c)] = &ga[(x, x2)] * &gb[(y, y2)];
                        }
                    }
                }
            }
        }
        gram.push(g);
    }
    let parents = vec![None; labels.len()];
    WeightModule::assemble(m1.hw.add(&m2.hw), m1.d.clone(), m1.alphas.clone(), blocks, labels, parents, e, f, gram)
}

/// The embedding `ι: L(λ1+λ2) → L(λ1) ⊗ L(λ2)` with `ι(v) = v ⊗ v`.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub source: Arc<WeightModule>,
    pub tensor: Arc<WeightModule>,
    /// Per source block: (tensor block, matrix tensor_dim × source_dim).
    pub maps: Vec<(usize, Matrix)>,
}

impl Embedding {
    pub fn apply(&self, v: &[QScalar]) -> Vector {
        let mut out = vec![QScalar::zero(); self.tensor.dim()];
        for (bi, (tb, m)) in self.maps.iter().enumerate() {
            let local = self.source.restrict(v, bi);
            if local.iter().all(|x| x.is_zero()) {
                continue;
            }
            let img = m.mul_vec(local);
            let off = self.tensor.blocks[*tb].offset;
            for (k, x) in img.into_iter().enumerate() {
                out[off + k] = x;
            }
        }
        out
    }
}

/// Build ι from parents: `ι(F_i b) = Δ(F_i) ι(b)`, blockwise, then check it intertwines E and F.
pub fn cartan_embedding(l: Arc<WeightModule>, tensor: Arc<WeightModule>) -> Result<Embedding, ModuleError> {
    let hw_pair = match tensor.labels.iter().position(|lab| *lab == Label::Pair(0, 0)) {
        Some(k) => k,
        None => return Err(ModuleError::Intertwiner("tensor product has no highest pair".into())),
    };
    // Local image of every basis vector, with its tensor block.
    let mut cols: Vec<(usize, Vector)> = Vec::with_capacity(l.dim());
    for k in 0..l.dim() {
        let img = match l.parents[k] {
            None => {
                if k != 0 {
                    return Err(ModuleError::Intertwiner("source is not a simple module".into()));
                }
                let tb = tensor.block_of(hw_pair);
                let off = tensor.blocks[tb].offset;
                let mut v = vec![QScalar::zero(); tensor.blocks[tb].dim];
                v[hw_pair - off] = QScalar::one();
                (tb, v)
            }
            Some((i, p)) => {
                let (ptb, pv) = &cols[p];
                match tensor.f_map(i, *ptb) {
                    Some((tb, m)) => (*tb, m.mul_vec(pv)),
                    None => return Err(ModuleError::Intertwiner(format!("F{} leaves the tensor product", i + 1))),
                }
            }
        };
        cols.push(img);
    }
    let mut maps = Vec::with_capacity(l.blocks.len());
    for b in l.blocks.iter() {
        let tb = tensor
            .block_index(&b.weight)
            .ok_or_else(|| ModuleError::Intertwiner(format!("weight {:?} missing in tensor product", b.weight)))?;
        let tdim = tensor.blocks[tb].dim;
        let mut m = Matrix::zeros(tdim, b.dim);
        for c in 0..b.dim {
            let (ctb, v) = &cols[b.offset + c];
            if *ctb != tb {
                return Err(ModuleError::Intertwiner(format!("image of weight {:?} has the wrong weight", b.weight)));
            }
            for r in 0..tdim {
                m[(r, c)] = v[r].clone();
            }
        }
        maps.push((tb, m));
    }
    let emb = Embedding { source: l, tensor, maps };
    check_intertwines(&emb.source, &emb.tensor, &emb.maps)?;
    Ok(emb)
}

/// Check `X ∘ φ = φ ∘ X` for all E_i, F_i where φ is given blockwise on the source.
fn check_intertwines(src: &WeightModule, dst: &WeightModule, maps: &[(usize, Matrix)]) -> Result<(), ModuleError> {
    for (bi, (tb, phi)) in maps.iter().enumerate() {
        for i in 0..src.rank {
            for is_e in [true, false] {
                let s = if is_e { src.e_map(i, bi) } else { src.f_map(i, bi) };
                let d = if is_e { dst.e_map(i, *tb) } else { dst.f_map(i, *tb) };
                let lhs = d.as_ref().map(|(t, m)| (*t, m.mul(phi)));
                let rhs = s.as_ref().map(|(t, m)| (maps[*t].0, maps[*t].1.mul(m)));
                let ok = match (lhs, rhs) {
                    (None, None) => true,
                    (Some((_, a)), None) | (None, Some((_, a))) => a.is_zero(),
                    (Some((t1, a)), Some((t2, b))) => t1 == t2 && a == b,
                };
                if !ok {
                    return Err(ModuleError::Intertwiner(format!(
                        "{}{} fails on weight {:?}",
                        if is_e { 'E' } else { 'F' },
                        i + 1,
                        src.blocks[bi].weight
                    )));
                }
            }
        }
    }
    Ok(())
}

type Piece = Option<Arc<(usize, Matrix)>>;

/// The Cartan multiplication `m: L(λ1) ⊗ L(λ2) → L(λ1+λ2)`, the form adjoint of ι.
/// Pieces `L(λ1)_a ⊗ L(λ2)_b → L(λ1+λ2)_{a+b}` are computed on first use.
#[derive(Debug)]
pub struct MultMap {
    pub left: Arc<WeightModule>,
    pub right: Arc<WeightModule>,
    pub target: Arc<WeightModule>,
    emb: Embedding,
    /// Tensor block → source block of ι.
    source_of: HashMap<usize, usize>,
    /// `(left block, right block) → (tensor block, first local index)`.
    pair_start: HashMap<(usize, usize), (usize, usize)>,
    glinv: RwLock<HashMap<usize, Arc<Matrix>>>,
    pieces: RwLock<HashMap<(usize, usize), Piece>>,
}

impl MultMap {
    fn gram_inverse(&self, bi: usize) -> Arc<Matrix> {
        if let Some(g) = self.glinv.read().unwrap().get(&bi) {
            return g.clone();
        }
        let g = Arc::new(self.target.gram(bi).inverse().expect("Gram blocks of simple modules are invertible"));
        self.glinv.write().unwrap().entry(bi).or_insert(g).clone()
    }

    /// `G_L^{-1} ι_{ab}^T (G_a ⊗ G_b)`, the piece of m on a pair of factor blocks.
    fn piece(&self, a: usize, b: usize) -> Piece {
        if let Some(p) = self.pieces.read().unwrap().get(&(a, b)) {
            return p.clone();
        }
        let computed = self.compute_piece(a, b);
        self.pieces.write().unwrap().entry((a, b)).or_insert(computed).clone()
    }

    fn compute_piece(&self, a: usize, b: usize) -> Piece {
        let &(tb, start) = self.pair_start.get(&(a, b))?;
        let &bi = self.source_of.get(&tb)?;
        let iota = &self.emb.maps[bi].1;
        let ga = self.left.gram(a);
        let gb = self.right.gram(b);
        let (da, db) = (ga.rows(), gb.rows());
        let ldim = iota.cols();
        let mut w = Matrix::zeros(ldim, da * db);
        for c in 0..ldim {
            let mut x = Matrix::zeros(da, db);
            let mut nonzero = false;
            for i in 0..da {
                for j in 0..db {
                    let v = &iota[(start + i * db + j, c)];
                    if !v.is_zero() {
                        x[(i, j)] = v.clone();
                        nonzero = true;
                    }
                }
            }
            if !nonzero {
                continue;
            }
            let y = ga.transpose().mul(&x).mul(gb);
            for i in 0..da {
                for j in 0..db {
                    w[(c, i * db + j)] = y[(i, j)].clone();
                }
            }
        }
        if w.is_zero() {
            return None;
        }
        let p = self.gram_inverse(bi).mul(&w);
        Some(Arc::new((bi, p)))
    }

    /// `m(f ⊗ g)` for f in the left module and g in the right one.
    pub fn apply(&self, f: &[QScalar], g: &[QScalar]) -> Vector {
        let mut out = vec![QScalar::zero(); self.target.dim()];
        let la: Vec<(usize, &[QScalar])> = (0..self.left.blocks.len())
            .map(|a| (a, self.left.restrict(f, a)))
            .filter(|(_, s)| s.iter().any(|x| !x.is_zero()))
            .collect();
        let rb: Vec<(usize, &[QScalar])> = (0..self.right.blocks.len())
            .map(|b| (b, self.right.restrict(g, b)))
            .filter(|(_, s)| s.iter().any(|x| !x.is_zero()))
            .collect();
        for &(a, fa) in &la {
            for &(b, gb) in &rb {
                let Some(piece) = self.piece(a, b) else { continue };
                let (tb, p) = &*piece;
                let mut tens = Vec::with_capacity(fa.len() * gb.len());
                for x in fa {
                    for y in gb {
                        tens.push(if x.is_zero() || y.is_zero() { QScalar::zero() } else { x * y });
                    }
                }
                let img = p.mul_vec(&tens);
                let off = self.target.blocks[*tb].offset;
                for (k, v) in img.into_iter().enumerate() {
                    if !v.is_zero() {
                        out[off + k] = &out[off + k] + &v;
                    }
                }
            }
        }
        out
    }

    /// `m` applied to a vector of the tensor product module.
    pub fn apply_tensor(&self, tensor: &WeightModule, t: &[QScalar]) -> Vector {
        let mut out = vec![QScalar::zero(); self.target.dim()];
        for (k, c) in t.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let Label::Pair(x, y) = tensor.labels[k] else { continue };
            let f = self.left.unit(x);
            let g = self.right.unit(y);
            let img = self.apply(&f, &g);
            crate::linalg::axpy(&mut out, c, &img);
        }
        out
    }

    /// Full check: `m ∘ ι = id` and m commutes with every E_i and F_i.
    pub fn verify(&self) -> Result<(), ModuleError> {
        let t = &self.emb.tensor;
        // Assemble P on each tensor block from the pieces, in local tensor order.
        let mut full: Vec<Option<(usize, Matrix)>> = vec![None; t.blocks.len()];
        for (&tb, &bi) in &self.source_of {
            full[tb] = Some((bi, Matrix::zeros(self.target.blocks[bi].dim, t.blocks[tb].dim)));
        }
        for (&(a, b), &(tb, start)) in &self.pair_start {
            let Some(piece) = self.piece(a, b) else { continue };
            let (_, p) = &*piece;
            let slot = &mut full[tb].as_mut().expect("piece on a block outside the image").1;
            for r in 0..p.rows() {
                for c in 0..p.cols() {
                    slot[(r, start + c)] = p[(r, c)].clone();
                }
            }
        }
        for (bi, (tb, iota)) in self.emb.maps.iter().enumerate() {
            let (_, p) = full[*tb].as_ref().expect("image block");
            if !p.mul(iota).is_identity() {
                return Err(ModuleError::Intertwiner(format!("m∘ι differs from the identity at {:?}", self.target.blocks[bi].weight)));
            }
        }
        for (tb, slot) in full.iter().enumerate() {
            let Some((bi, p)) = slot else { continue };
            for i in 0..t.rank {
                for is_e in [true, false] {
                    let dt = if is_e { t.e_map(i, tb) } else { t.f_map(i, tb) };
                    let dl = if is_e { self.target.e_map(i, *bi) } else { self.target.f_map(i, *bi) };
                    let lhs = dl.as_ref().map(|(_, m)| m.mul(p));
                    let rhs = dt.as_ref().and_then(|(t2, m)| full[*t2].as_ref().map(|(_, p2)| p2.mul(m)));
                    let ok = match (lhs, rhs) {
                        (None, None) => true,
                        (Some(a), None) | (None, Some(a)) => a.is_zero(),
                        (Some(a), Some(b)) => a == b,
                    };
                    if !ok {
                        return Err(ModuleError::Intertwiner(format!("multiplication fails to commute with generator {} on {:?}", i + 1, t.blocks[tb].weight)));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The Cartan multiplication adjoint to ι; pieces are built lazily, see [`MultMap::verify`].
pub fn cartan_multiplication(emb: &Embedding, left: Arc<WeightModule>, right: Arc<WeightModule>) -> Result<MultMap, ModuleError> {
    let t = &emb.tensor;
    let source_of: HashMap<usize, usize> = emb.maps.iter().enumerate().map(|(bi, (tb, _))| (*tb, bi)).collect();
    let mut pair_start = HashMap::new();
    for (k, lab) in t.labels.iter().enumerate() {
        let Label::Pair(x, y) = *lab else {
            return Err(ModuleError::Intertwiner("tensor basis is not made of pairs".into()));
        };
        let a = left.block_of(x);
        let b = right.block_of(y);
        if x == left.blocks[a].offset && y == right.blocks[b].offset {
            let tb = t.block_of(k);
            pair_start.insert((a, b), (tb, k - t.blocks[tb].offset));
        }
    }
    Ok(MultMap {
        left,
        right,
        target: emb.source.clone(),
        emb: emb.clone(),
        source_of,
        pair_start,
        glinv: RwLock::new(HashMap::new()),
        pieces: RwLock::new(HashMap::new()),
    })
}

/// Convenience: build `L(λ1)`, `L(λ2)`, `L(λ1+λ2)`, the tensor product, ι and m.
pub fn cartan_pair(dat: &RootDatum, l1: &Weight, l2: &Weight) -> Result<(Embedding, MultMap), ModuleError> {
    let m1 = Arc::new(simple_module(dat, l1)?);
    let m2 = Arc::new(simple_module(dat, l2)?);
    let l = Arc::new(simple_module(dat, &l1.add(l2))?);
    let t = Arc::new(tensor_product(&m1, &m2));
    let emb = cartan_embedding(l, t)?;
    let mm = cartan_multiplication(&emb, m1, m2)?;
    mm.verify()?;
    Ok((emb, mm))
}
