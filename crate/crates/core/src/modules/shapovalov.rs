use std::collections::HashMap;

use crate::rootdata::{RootDatum, Weight};
use crate::scalars::{q_int, QScalar};

/// `⟨F_I v_λ, F_J v_λ⟩` on the Verma module, by moving the leftmost `F_i` of `I`
/// across as `E_i K_i^{-1}` and commuting `E_i` to the right.
pub fn shapovalov_pair(dat: &RootDatum, lambda: &Weight, x: &[usize], y: &[usize]) -> QScalar {
    let mut memo = HashMap::new();
    pair_rec(dat, lambda, x, y, &mut memo)
}

fn word_weight(dat: &RootDatum, lambda: &Weight, w: &[usize]) -> Weight {
    w.iter().fold(lambda.clone(), |acc, &j| acc.sub(dat.simple_root(j)))
}

fn pair_rec(
    dat: &RootDatum,
    lambda: &Weight,
    x: &[usize],
    y: &[usize],
    memo: &mut HashMap<(Vec<usize>, Vec<usize>), QScalar>,
) -> QScalar {
    if x.len() != y.len() {
        return QScalar::zero();
    }
    if x.is_empty() {
        return QScalar::one();
    }
    let mut cx = x.to_vec();
    let mut cy = y.to_vec();
    cx.sort_unstable();
    cy.sort_unstable();
    if cx != cy {
        return QScalar::zero();
    }
    let key = (x.to_vec(), y.to_vec());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let i = x[0];
    let di = dat.d(i);
    let wy = word_weight(dat, lambda, y);
    let factor = QScalar::q_pow(-(di as i64) * wy.coord(i));
    // E_i F_J v = Σ_{t : j_t = i} [wt(F_{J>t} v)_i]_{q_i} F_{J∖t} v
    let mut acc = QScalar::zero();
    for t in 0..y.len() {
        if y[t] != i {
            continue;
        }
        let tail = word_weight(dat, lambda, &y[t + 1..]);
        let c = q_int(tail.coord(i), di);
        if c.is_zero() {
            continue;
        }
        let mut rest = y[..t].to_vec();
        rest.extend_from_slice(&y[t + 1..]);
        let v = pair_rec(dat, lambda, &x[1..], &rest, memo);
        if !v.is_zero() {
            acc = acc + c * v;
        }
    }
    let out = factor * acc;
    memo.insert(key, out.clone());
    out
}
