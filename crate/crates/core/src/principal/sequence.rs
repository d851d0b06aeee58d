use crate::linalg::{add_vectors, scale_vector, Matrix, Vector};
use crate::scalars::QScalar;

use super::continued::Continued;

/// One summand `a λ^n n^j` with `λ = q^{m/D}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpTerm {
    pub coeff: Vector,
    pub exponent: i64,
    pub power: u32,
}

/// `x_n = Σ a_{ij} λ_i^n n^j`, vector valued.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpPolySequence {
    pub root: u32,
    pub dim: usize,
    terms: Vec<ExpTerm>,
}

impl ExpPolySequence {
    pub fn new(root: u32, dim: usize, terms: Vec<ExpTerm>) -> Self {
        let mut s = ExpPolySequence { root, dim, terms: Vec::new() };
        for t in terms {
            s.push(t);
        }
        s
    }

    fn push(&mut self, t: ExpTerm) {
        assert_eq!(t.coeff.len(), self.dim, "coefficient length");
        if let Some(x) = self.terms.iter_mut().find(|x| x.exponent == t.exponent && x.power == t.power) {
            x.coeff = add_vectors(&x.coeff, &t.coeff);
        } else {
            self.terms.push(t);
        }
        self.terms.retain(|x| x.coeff.iter().any(|c| !c.is_zero()));
        self.terms.sort_by_key(|x| (x.exponent, x.power));
    }

    pub fn terms(&self) -> &[ExpTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Scalar sequence read off a one-parameter Continued element: `t^m u^j ↦ λ = q^{m/D}, n^j`.
    pub fn from_continued(x: &Continued, root: u32) -> Self {
        let terms = x
            .terms()
            .map(|(m, c)| {
                assert_eq!(m.arity(), 1, "one parameter expected");
                ExpTerm { coeff: vec![c.clone()], exponent: m.t[0], power: m.u[0] }
            })
            .collect();
        ExpPolySequence::new(root, 1, terms)
    }

    pub fn value(&self, n: i64) -> Vector {
        let mut acc = vec![QScalar::zero(); self.dim];
        for t in &self.terms {
            let s = &QScalar::q_frac_pow(t.exponent * n, self.root) * &QScalar::from_int(n.pow(t.power));
            acc = add_vectors(&acc, &scale_vector(&s, &t.coeff));
        }
        acc
    }

    /// The shift `(T x)_n = x_{n+1}`.
    pub fn shift(&self) -> Self {
        let mut out = ExpPolySequence::new(self.root, self.dim, Vec::new());
        for t in &self.terms {
            let lam = QScalar::q_frac_pow(t.exponent, self.root);
            // (n+1)^j = Σ_b C(j,b) n^b
            let mut c = 1i64;
            for b in 0..=t.power {
                let coef = &lam * &QScalar::from_int(c);
                out.push(ExpTerm { coeff: scale_vector(&coef, &t.coeff), exponent: t.exponent, power: b });
                c = c * (t.power - b) as i64 / (b as i64 + 1);
            }
        }
        out
    }

    pub fn sub(&self, o: &ExpPolySequence) -> Self {
        let mut out = self.clone();
        for t in &o.terms {
            out.push(ExpTerm { coeff: scale_vector(&-QScalar::one(), &t.coeff), exponent: t.exponent, power: t.power });
        }
        out
    }

    /// Two sequences of this shape agreeing on this many consecutive n ≥ 0 are equal.
    pub fn determining_length(&self) -> usize {
        let mut top: Vec<(i64, u32)> = Vec::new();
        for t in &self.terms {
            match top.iter_mut().find(|(m, _)| *m == t.exponent) {
                Some(e) => e.1 = e.1.max(t.power),
                None => top.push((t.exponent, t.power)),
            }
        }
        top.iter().map(|(_, p)| *p as usize + 1).sum()
    }
}

/// Matrix sending the coefficient data of `Σ_{i,j≤maxpower} a_{ij} λ_i^n n^j` to the values
/// `x_0..x_{N−1}` with `N = #bases · (maxpower+1)`; uniqueness means full rank.
pub fn uniqueness_matrix(exponents: &[i64], max_power: u32, root: u32) -> Matrix {
    let cols: Vec<(i64, u32)> = exponents.iter().flat_map(|&m| (0..=max_power).map(move |j| (m, j))).collect();
    let n = cols.len();
    let mut a = Matrix::zeros(n, n);
    for r in 0..n {
        for (c, &(m, j)) in cols.iter().enumerate() {
            a[(r, c)] = &QScalar::q_frac_pow(m * r as i64, root) * &QScalar::from_int((r as i64).pow(j));
        }
    }
    a
}

pub fn uniqueness_holds(exponents: &[i64], max_power: u32, root: u32) -> bool {
    let m = uniqueness_matrix(exponents, max_power, root);
    m.rank() == m.rows()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_and_values() {
        let s = ExpPolySequence::new(
            1,
            1,
            vec![
                ExpTerm { coeff: vec![QScalar::one()], exponent: 2, power: 1 },
                ExpTerm { coeff: vec![QScalar::from_int(3)], exponent: 0, power: 2 },
            ],
        );
        let t = s.shift();
        for n in -3..5 {
            assert_eq!(t.value(n), s.value(n + 1));
        }
        assert!(s.sub(&s).is_zero());
    }

    #[test]
    fn distinct_bases_are_unique() {
        assert!(uniqueness_holds(&[0, 2, -2, 3], 2, 1));
        assert!(uniqueness_holds(&[1, -1], 3, 2));
    }
}
