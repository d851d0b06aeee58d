use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::linalg::{Matrix, Vector};
use crate::scalars::QScalar;

use super::bernoulli::binomial_sum;
use super::continued::{Continued, ContinuedOperator};
use super::PrincipalError;

/// Roots `q^{m/D}` of a split polynomial, with multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub root: u32,
    /// `(m, multiplicity)`: the root is `q^{m/root}`.
    pub roots: Vec<(i64, usize)>,
}

impl Spectrum {
    pub fn degree(&self) -> usize {
        self.roots.iter().map(|(_, k)| k).sum()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.roots.iter().map(|(_, k)| *k).max().unwrap_or(0)
    }

    pub fn value(&self, m: i64) -> QScalar {
        QScalar::q_frac_pow(m, self.root)
    }
}

/// `p(x)` with coefficients lowest first.
fn eval_poly(p: &[QScalar], x: &QScalar) -> QScalar {
    p.iter().rev().fold(QScalar::zero(), |acc, c| &(&acc * x) + c)
}

/// Quotient of `p(x)` by `(x − r)`, assuming r is a root.
fn deflate(p: &[QScalar], r: &QScalar) -> Vec<QScalar> {
    let n = p.len() - 1;
    let mut q = vec![QScalar::zero(); n];
    let mut carry = QScalar::zero();
    for i in (0..n).rev() {
        carry = &p[i + 1] + &(&carry * r);
        q[i] = carry.clone();
    }
    q
}

/// Root exponents allowed by the Newton polygon of p at q = 0, in units of `q^{1/root}`.
///
/// A root `q^{m/D}` has valuation m/D, and root valuations are the negated slopes of the lower hull.
pub fn newton_exponents(p: &[QScalar], root: u32) -> Vec<i64> {
    let pts: Vec<(i64, BigRational)> = p.iter().enumerate().filter_map(|(i, c)| c.valuation().map(|v| (i as i64, v))).collect();
    let mut hull: Vec<(i64, BigRational)> = Vec::new();
    for pt in pts {
        while hull.len() >= 2 {
            let (x1, y1) = &hull[hull.len() - 2];
            let (x2, y2) = &hull[hull.len() - 1];
            // Drop the middle point when it lies on or above the chord.
            let lhs = (y2 - y1) * BigRational::from_integer(BigInt::from(pt.0 - x1));
            let rhs = (&pt.1 - y1) * BigRational::from_integer(BigInt::from(x2 - x1));
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let d = BigRational::from_integer(BigInt::from(root));
    let mut out = Vec::new();
    for w in hull.windows(2) {
        let slope = (&w[1].1 - &w[0].1) / BigRational::from_integer(BigInt::from(w[1].0 - w[0].0));
        let m = -slope * &d;
        if m.is_integer() {
            if let Some(m) = m.to_integer().to_i64() {
                out.push(m);
            }
        }
    }
    out
}

/// Split a monic polynomial (lowest coefficient first) over `{q^{m/D}}` by exact trial division.
///
/// Candidate exponents come from the Newton polygon, then the hints, then every `|m| ≤ sweep`.
pub fn split_polynomial(p: &[QScalar], root: u32, hints: &[i64], sweep: i64) -> Result<Spectrum, PrincipalError> {
    let mut rest = p.to_vec();
    let mut roots: Vec<(i64, usize)> = Vec::new();
    let mut candidates: Vec<i64> = newton_exponents(p, root);
    candidates.extend_from_slice(hints);
    candidates.extend(-sweep..=sweep);
    let mut seen = std::collections::HashSet::new();
    for m in candidates {
        if rest.len() <= 1 {
            break;
        }
        if !seen.insert(m) {
            continue;
        }
        let r = QScalar::q_frac_pow(m, root);
        let mut mult = 0;
        while rest.len() > 1 && eval_poly(&rest, &r).is_zero() {
            rest = deflate(&rest, &r);
            mult += 1;
        }
        if mult > 0 {
            roots.push((m, mult));
        }
    }
    if rest.len() > 1 {
        return Err(PrincipalError::Spectrum(format!(
            "a factor of degree {} has no roots q^(m/{root}) on its Newton polygon or with |m| ≤ {sweep}",
            rest.len() - 1
        )));
    }
    roots.sort();
    Ok(Spectrum { root, roots })
}

/// Which function of λ is interpolated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// `φ_u(λ) = (λ^u − 1)/(λ − 1)`, giving `Σ_{j<u} A^j`.
    Geometric,
    /// `λ^u`, giving `A^u`.
    Power,
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |a, b| a * BigInt::from(b))
}

fn binom(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

/// `f^{(a)}(ρ)` for the target function at `ρ = q^{m/D}`, as an element of the Continued ring in `u_p`.
fn target_derivative(target: Target, m: i64, root: u32, a: usize, arity: usize, p: usize) -> Continued {
    let rho = QScalar::q_frac_pow(m, root);
    let tm = Continued::t(arity, p, m);
    // g(λ) = λ^u: g^{(b)}(ρ) = u^{(b)} t^m ρ^{−b}
    let power_deriv = |b: usize| Continued::falling(arity, p, b).mul(&tm).scale(&rho.pow(-(b as i64)));
    match target {
        Target::Power => power_deriv(a),
        Target::Geometric if m == 0 => {
            // φ^{(a)}(1) = a! Σ_{j<u} C(j, a)
            Continued::from_rat_poly(arity, p, &binomial_sum(a)).scale(&QScalar::from_bigint(factorial(a)))
        }
        Target::Geometric => {
            // φ = (λ^u − 1)·h with h = 1/(λ − 1), h^{(c)}(ρ) = (−1)^c c! (ρ − 1)^{−c−1}
            let inv = (&rho - &QScalar::one()).inv();
            let mut out = Continued::zero();
            for b in 0..=a {
                let g = if b == 0 { tm.sub(&Continued::one(arity)) } else { power_deriv(b) };
                let c = a - b;
                let sign = if c.is_multiple_of(2) { 1 } else { -1 };
                let h = QScalar::from_bigint(factorial(c) * BigInt::from(sign)) * inv.pow(c as i64 + 1);
                out = out.add(&g.scale(&(&h * &QScalar::from_int(binom(a, b)))));
            }
            out
        }
    }
}

/// Coefficients `c_j(u)` with `f(A) = Σ_{j<deg} c_j(u) A^j` for any A whose minimal
/// polynomial has the given spectrum (confluent Hermite interpolation).
pub fn interpolation_coefficients(spectrum: &Spectrum, target: Target, arity: usize, p: usize) -> Vec<Continued> {
    let n = spectrum.degree();
    let mut v = Matrix::zeros(n, n);
    let mut rhs = Vec::with_capacity(n);
    let mut row = 0;
    for &(m, k) in &spectrum.roots {
        let rho = spectrum.value(m);
        for a in 0..k {
            for j in a..n {
                // d^a/dλ^a λ^j = j^{(a)} λ^{j−a}
                let ff: i64 = (0..a).map(|i| (j - i) as i64).product();
                v[(row, j)] = QScalar::from_int(ff) * rho.pow((j - a) as i64);
            }
            rhs.push(target_derivative(target, m, spectrum.root, a, arity, p));
            row += 1;
        }
    }
    let vinv = v.inverse().expect("confluent Vandermonde matrices are invertible");
    (0..n)
        .map(|j| {
            let mut acc = Continued::zero();
            for (r, b) in rhs.iter().enumerate() {
                let c = &vinv[(j, r)];
                if !c.is_zero() {
                    acc = acc.add(&b.scale(c));
                }
            }
            acc
        })
        .collect()
}

/// Minimal polynomial of a square matrix, lowest coefficient first and monic.
pub fn minimal_polynomial(a: &Matrix) -> Vec<QScalar> {
    let n = a.rows();
    let mut powers: Vec<Vector> = vec![Matrix::identity(n).entries().to_vec()];
    let mut cur = Matrix::identity(n);
    loop {
        cur = cur.mul(a);
        let flat = cur.entries().to_vec();
        let basis = Matrix::from_cols(&powers, n * n);
        if let Some(c) = basis.solve(&flat) {
            let mut p: Vec<QScalar> = c.iter().map(|x| -x.clone()).collect();
            p.push(QScalar::one());
            return p;
        }
        powers.push(flat);
    }
}

/// Candidate exponents and sweep used when no hints are supplied.
pub fn default_sweep(root: u32) -> i64 {
    4 * root as i64
}

fn matrix_function(a: &Matrix, root: u32, hints: &[i64], target: Target) -> Result<(Spectrum, ContinuedOperator), PrincipalError> {
    if !a.is_square() || a.det().is_zero() {
        return Err(PrincipalError::Invalid("matrix functions need an invertible square matrix".into()));
    }
    let p = minimal_polynomial(a);
    let spectrum = split_polynomial(&p, root, hints, default_sweep(root))?;
    let coeffs = interpolation_coefficients(&spectrum, target, 1, 0);
    let mut mats = Vec::with_capacity(coeffs.len());
    let mut cur = Matrix::identity(a.rows());
    for _ in 0..coeffs.len() {
        mats.push(cur.clone());
        cur = cur.mul(a);
    }
    Ok((spectrum, ContinuedOperator::combine(&coeffs, &mats)))
}

/// `S(A, u) = Σ_{j<u} A^j`, continued to all u.
pub fn geometric_sum(a: &Matrix, root: u32, hints: &[i64]) -> Result<(Spectrum, ContinuedOperator), PrincipalError> {
    matrix_function(a, root, hints, Target::Geometric)
}

/// `A^u`, continued to all u.
pub fn matrix_power(a: &Matrix, root: u32, hints: &[i64]) -> Result<(Spectrum, ContinuedOperator), PrincipalError> {
    matrix_function(a, root, hints, Target::Power)
}

/// Brute-force `Σ_{j=0}^{n−1} A^j` for n ≥ 0 and `−Σ_{j=1}^{|n|} A^{−j}` for n < 0.
pub fn brute_geometric(a: &Matrix, n: i64) -> Matrix {
    let dim = a.rows();
    let mut acc = Matrix::zeros(dim, dim);
    if n >= 0 {
        let mut p = Matrix::identity(dim);
        for _ in 0..n {
            acc = acc.add(&p);
            p = p.mul(a);
        }
    } else {
        let inv = a.inverse().expect("invertible");
        let mut p = inv.clone();
        for _ in 0..(-n) {
            acc = acc.sub(&p);
            p = p.mul(&inv);
        }
    }
    acc
}

/// Check the substitution contract of `S(A,u)` at the given integer points.
pub fn check_geometric_contract(a: &Matrix, s: &ContinuedOperator, root: u32, points: &[i64]) -> bool {
    points.iter().all(|&n| s.specialize(&[n], root) == brute_geometric(a, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: i64) -> QScalar {
        QScalar::q_pow(k)
    }

    #[test]
    fn identity_gives_u() {
        let (spectrum, s) = geometric_sum(&Matrix::identity(1), 1, &[]).unwrap();
        assert_eq!(spectrum.roots, vec![(0, 1)]);
        assert_eq!(*s.get(0, 0), Continued::u(1, 0));
    }

    #[test]
    fn scalar_q_squared() {
        let a = Matrix::diagonal(&[q(2)]);
        let (_, s) = geometric_sum(&a, 1, &[]).unwrap();
        let want = Continued::t(1, 0, 2).sub(&Continued::one(1)).scale(&(&q(2) - &QScalar::one()).inv());
        assert_eq!(*s.get(0, 0), want);
        assert_eq!(s.specialize(&[3], 1)[(0, 0)], &(&QScalar::one() + &q(2)) + &q(4));
        assert!(check_geometric_contract(&a, &s, 1, &(-4..=6).collect::<Vec<_>>()));
    }

    #[test]
    fn jordan_block_at_q() {
        let a = Matrix::from_rows(vec![vec![q(1), QScalar::one()], vec![QScalar::zero(), q(1)]]);
        let (spectrum, s) = geometric_sum(&a, 1, &[]).unwrap();
        assert_eq!(spectrum.roots, vec![(1, 2)]);
        assert!(check_geometric_contract(&a, &s, 1, &(-4..=6).collect::<Vec<_>>()));
        assert!(s.u_degree() >= 1);
    }

    #[test]
    fn jordan_block_at_one_and_mixed_roots() {
        let a = Matrix::from_rows(vec![
            vec![QScalar::one(), QScalar::one(), QScalar::zero()],
            vec![QScalar::zero(), QScalar::one(), QScalar::zero()],
            vec![QScalar::zero(), QScalar::zero(), QScalar::q_frac_pow(-3, 2)],
        ]);
        let (spectrum, s) = geometric_sum(&a, 2, &[]).unwrap();
        assert_eq!(spectrum.roots, vec![(-3, 1), (0, 2)]);
        assert!(check_geometric_contract(&a, &s, 2, &(-4..=6).collect::<Vec<_>>()));
        let (_, p) = matrix_power(&a, 2, &[]).unwrap();
        for n in -3..4i64 {
            let want = if n >= 0 { (0..n).fold(Matrix::identity(3), |acc, _| acc.mul(&a)) } else { (0..-n).fold(Matrix::identity(3), |acc, _| acc.mul(&a.inverse().unwrap())) };
            assert_eq!(p.specialize(&[n], 2), want);
        }
    }

    #[test]
    fn non_q_power_spectrum_is_rejected() {
        let a = Matrix::diagonal(&[QScalar::from_int(3)]);
        assert!(matches!(geometric_sum(&a, 1, &[]), Err(PrincipalError::Spectrum(_))));
    }
}
