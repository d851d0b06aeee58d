//! Exact coefficient field Q(s), s^D = q, and q-combinatorics.

mod analysis;
pub mod poly;
mod qscalar;
mod text;

use thiserror::Error;

pub use analysis::{evaluate, evaluate_at_s, pole_free_on_unit_interval, NumericValue, PoleReport};
pub use poly::Poly;
pub use qscalar::QScalar;
pub use text::{from_text, to_text};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScalarError {
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("sample point q0 = {0} is outside (0,1)")]
    SampleOutOfRange(String),
    #[error("pole at q0 = {0}")]
    Pole(String),
    #[error("q-binomial [{m} choose {n}] needs 0 <= n <= m")]
    BinomialRange { m: i64, n: i64 },
}

/// `[n]_{q^d} = (q^{dn} - q^{-dn}) / (q^d - q^{-d})`, a Laurent polynomial.
pub fn q_int(n: i64, d: u32) -> QScalar {
    if n == 0 {
        return QScalar::zero();
    }
    if n < 0 {
        return -q_int(-n, d);
    }
    let d = d as i64;
    // sum_{j=0}^{n-1} q^{d(n-1-2j)}, stored with exponents shifted to start at 0
    let mut coeffs = vec![num_bigint::BigInt::from(0); (2 * d * (n - 1)) as usize + 1];
    for j in 0..n {
        coeffs[(2 * d * j) as usize] = 1.into();
    }
    QScalar::from_parts(-d * (n - 1), Poly::from_coeffs(coeffs), Poly::one(), 1)
}

pub fn q_factorial(n: i64, d: u32) -> QScalar {
    (1..=n).fold(QScalar::one(), |acc, k| &acc * &q_int(k, d))
}

/// Gaussian binomial with base q^d.
pub fn q_binom(m: i64, n: i64, d: u32) -> Result<QScalar, ScalarError> {
    if n < 0 || n > m {
        return Err(ScalarError::BinomialRange { m, n });
    }
    Ok(q_factorial(m, d) / (q_factorial(n, d) * q_factorial(m - n, d)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_integers() {
        let q = QScalar::q_pow(1);
        assert!(q_int(1, 1).is_one());
        assert_eq!(q_int(2, 1), &q + &q.inv());
        assert_eq!(q_int(3, 1), QScalar::q_pow(2) + QScalar::one() + QScalar::q_pow(-2));
        assert_eq!(q_int(-2, 1), -q_int(2, 1));
        assert_eq!(q_int(2, 2), QScalar::q_pow(2) + QScalar::q_pow(-2));
    }

    #[test]
    fn q_binomials() {
        assert!(q_binom(5, 0, 1).unwrap().is_one());
        assert_eq!(q_binom(2, 1, 1).unwrap(), q_int(2, 1));
        assert_eq!(q_binom(3, 1, 1).unwrap(), q_int(3, 1));
        assert!(q_binom(4, 3, 1).unwrap().is_laurent());
        assert!(q_binom(2, 3, 1).is_err());
    }
}
