use crate::linalg::{Matrix, Vector};
use crate::rootdata::HermitianPair;
use crate::scalars::QScalar;
use crate::uqg::Letter;

use super::isotypic::invariant_vector;
use super::{ModuleError, WeightModule};

/// The involution on a spherical L(λ) satisfying `(ξf)^⋆ = S(ξ)^⋆ f^⋆`,
/// normalized to fix the spherical vector.
#[derive(Clone, Debug)]
pub struct StarInvolution {
    /// Per source block: (target block of weight −ν, matrix).
    pub maps: Vec<(usize, Matrix)>,
    /// The fixed spherical vector.
    pub spherical: Vector,
}

impl StarInvolution {
    pub fn apply(&self, m: &WeightModule, v: &[QScalar]) -> Vector {
        let mut out = vec![QScalar::zero(); m.dim()];
        for (bi, (tb, j)) in self.maps.iter().enumerate() {
            let local = m.restrict(v, bi);
            if local.iter().all(|x| x.is_zero()) {
                continue;
            }
            let off = m.blocks[*tb].offset;
            for (k, x) in j.mul_vec(local).into_iter().enumerate() {
                out[off + k] = x;
            }
        }
        out
    }
}

/// Build J from `J(v_λ) = v_lowest`, `J(F_i x) = −q_i^2 E_i J(x)`, check the twisted
/// intertwining on all generators, rescale so that J fixes the spherical vector and
/// check `J² = id`.
pub fn star_on_spherical(pair: &HermitianPair, m: &WeightModule) -> Result<StarInvolution, ModuleError> {
    let inv = invariant_vector(pair, m);
    if inv.len() != 1 {
        return Err(ModuleError::NotSpherical(m.hw.0.clone()));
    }
    let w = inv.into_iter().next().unwrap();
    let low = m.lowest_vector().ok_or_else(|| ModuleError::Star("lowest weight space is not a line".into()))?;
    if *m.weight_of(low) != m.hw.scale(-1) {
        return Err(ModuleError::Star(format!("lowest weight of L({:?}) is not −λ", m.hw)));
    }
    let mut cols: Vec<Vector> = Vec::with_capacity(m.dim());
    for k in 0..m.dim() {
        let img = match m.parents[k] {
            None => m.unit(low),
            Some((i, p)) => {
                let c = -QScalar::q_pow(2 * m.d[i] as i64);
                let e = m.apply_letter(Letter::e(i), &cols[p]);
                e.iter().map(|x| if x.is_zero() { x.clone() } else { &c * x }).collect()
            }
        };
        cols.push(img);
    }
    let mut maps = Vec::with_capacity(m.blocks.len());
    for b in &m.blocks {
        let neg = b.weight.scale(-1);
        let tb = m.block_index(&neg).ok_or_else(|| ModuleError::Star(format!("weight {:?} has no opposite", b.weight)))?;
        let tblk = &m.blocks[tb];
        let mut j = Matrix::zeros(tblk.dim, b.dim);
        for c in 0..b.dim {
            for r in 0..tblk.dim {
                j[(r, c)] = cols[b.offset + c][tblk.offset + r].clone();
            }
        }
        maps.push((tb, j));
    }
    check_twisted(m, &maps)?;
    // Normalize on the spherical vector.
    let zb = m.block_index(&crate::rootdata::Weight::zero(m.rank)).expect("spherical module has weight zero");
    let wl = m.restrict(&w, zb).to_vec();
    let jw = maps[zb].1.mul_vec(&wl);
    let k = wl.iter().position(|x| !x.is_zero()).expect("nonzero spherical vector");
    let c = &jw[k] / &wl[k];
    if c.is_zero() || (0..wl.len()).any(|r| jw[r] != &c * &wl[r]) {
        return Err(ModuleError::Star("J does not preserve the spherical line".into()));
    }
    let cinv = c.inv();
    for (_, j) in maps.iter_mut() {
        *j = j.scale(&cinv);
    }
    for (bi, (tb, j)) in maps.iter().enumerate() {
        let (back, j2) = &maps[*tb];
        if *back != bi || !j2.mul(j).is_identity() {
            return Err(ModuleError::Star(format!("J² differs from the identity on {:?}", m.blocks[bi].weight)));
        }
    }
    Ok(StarInvolution { maps, spherical: w })
}

/// `J E_i = −q_i^{-2} F_i J` and `J F_i = −q_i^2 E_i J` blockwise.
fn check_twisted(m: &WeightModule, maps: &[(usize, Matrix)]) -> Result<(), ModuleError> {
    for (bi, (tb, j)) in maps.iter().enumerate() {
        for i in 0..m.rank {
            let qi2 = QScalar::q_pow(2 * m.d[i] as i64);
            for is_e in [true, false] {
                let src = if is_e { m.e_map(i, bi) } else { m.f_map(i, bi) };
                let lhs = src.as_ref().map(|(t, x)| maps[*t].1.mul(x));
                let dst = if is_e { m.f_map(i, *tb) } else { m.e_map(i, *tb) };
                let c = if is_e { -qi2.inv() } else { -qi2.clone() };
                let rhs = dst.as_ref().map(|(_, y)| y.mul(j).scale(&c));
                let ok = match (lhs, rhs) {
                    (None, None) => true,
                    (Some(a), None) | (None, Some(a)) => a.is_zero(),
                    (Some(a), Some(b)) => a == b,
                };
                if !ok {
                    return Err(ModuleError::Star(format!(
                        "twisted relation for {}{} fails on {:?}",
                        if is_e { 'E' } else { 'F' },
                        i + 1,
                        m.blocks[bi].weight
                    )));
                }
            }
        }
    }
    Ok(())
}
