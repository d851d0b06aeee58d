//! Real-root isolation for denominators and numeric evaluation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Poly;
use super::qscalar::QScalar;
use super::ScalarError;

type RatPoly = Vec<BigRational>;

fn to_rat(p: &Poly) -> RatPoly {
    p.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

fn trim(p: &mut RatPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn rem(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lc = b.last().unwrap().clone();
    while r.len() > db {
        let top = r.last().unwrap() / &lc;
        let shift = r.len() - 1 - db;
        for (j, c) in b.iter().enumerate() {
            r[shift + j] -= &top * c;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

/// Scale by a positive rational so coefficients stay small; signs are unaffected.
fn tidy(p: RatPoly) -> RatPoly {
    let l = p.iter().fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| num_integer::Integer::gcd(&acc, c));
    ints.into_iter().map(|c| BigRational::from_integer(c / &g)).collect()
}

fn eval(p: &RatPoly, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

struct Sturm {
    chain: Vec<RatPoly>,
}

impl Sturm {
    fn new(p: &Poly) -> Self {
        let sqf = squarefree(p);
        let p0 = to_rat(&sqf);
        let p1 = to_rat(&sqf.derivative());
        let mut chain = vec![p0, p1];
        loop {
            let n = chain.len();
            if chain[n - 1].is_empty() {
                chain.pop();
                break;
            }
            if chain[n - 1].len() == 1 {
                break;
            }
            let r = rem(&chain[n - 2], &chain[n - 1]);
            if r.is_empty() {
                break;
            }
            chain.push(tidy(r.into_iter().map(|c| -c).collect()));
        }
        Sturm { chain }
    }

    fn variations(&self, x: &BigRational) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for p in &self.chain {
            let v = eval(p, x);
            let s = if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            };
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Distinct roots in (a, b]; requires p(a) != 0.
    fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a) - self.variations(b)
    }
}

fn squarefree(p: &Poly) -> Poly {
    let g = p.gcd(&p.derivative());
    if g.is_constant() {
        p.clone()
    } else {
        p.div_exact(&g).expect("gcd divides").primitive().1
    }
}

/// Outcome of the pole analysis on q ∈ (0, 1].
#[derive(Clone, Debug, PartialEq)]
pub struct PoleReport {
    pub pole_free: bool,
    /// Interval (lo, hi] in s = q^{1/D} containing a denominator root.
    pub witness_s: Option<(BigRational, BigRational)>,
    /// The same interval mapped to q.
    pub witness_q: Option<(BigRational, BigRational)>,
}

/// Check that the reduced denominator has no root with q in (0, 1].
///
/// With s the positive D-th root of q, this is the interval s ∈ (0, 1].
pub fn pole_free_on_unit_interval(x: &QScalar) -> PoleReport {
    let den = x.denominator();
    if den.is_constant() {
        return PoleReport { pole_free: true, witness_s: None, witness_q: None };
    }
    let sturm = Sturm::new(den);
    let zero = BigRational::zero();
    let one = BigRational::one();
    if sturm.count(&zero, &one) == 0 {
        return PoleReport { pole_free: true, witness_s: None, witness_q: None };
    }
    let (mut lo, mut hi) = (zero, one);
    let tol = BigRational::new(BigInt::one(), BigInt::from(1u64 << 30));
    while &hi - &lo > tol {
        let mid = (&lo + &hi) / BigRational::from_integer(2.into());
        if sturm.count(&lo, &mid) > 0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let d = x.root_order() as usize;
    let wq = (num_traits::pow(lo.clone(), d), num_traits::pow(hi.clone(), d));
    PoleReport { pole_free: false, witness_s: Some((lo, hi)), witness_q: Some(wq) }
}

/// A value computed at a sample point q0.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericValue {
    pub value: f64,
    /// Present when q0^{1/D} is rational, so the value is known exactly.
    pub exact: Option<BigRational>,
}

fn exact_root(r: &BigRational, d: u32) -> Option<BigRational> {
    if d == 1 {
        return Some(r.clone());
    }
    let n = r.numer().nth_root(d);
    let m = r.denom().nth_root(d);
    if num_traits::pow(n.clone(), d as usize) == *r.numer() && num_traits::pow(m.clone(), d as usize) == *r.denom() {
        Some(BigRational::new(n, m))
    } else {
        None
    }
}

/// Evaluate at q = q0 ∈ (0,1). Exact when q0^{1/D} is rational, else one rounding to f64.
pub fn evaluate(x: &QScalar, q0: &BigRational) -> Result<NumericValue, ScalarError> {
    if !q0.is_positive() || q0 >= &BigRational::one() {
        return Err(ScalarError::SampleOutOfRange(q0.to_string()));
    }
    let d = x.root_order();
    if let Some(s0) = exact_root(q0, d) {
        let v = x.eval_exact_s(&s0).ok_or_else(|| ScalarError::Pole(q0.to_string()))?;
        return Ok(NumericValue { value: v.to_f64().unwrap_or(f64::NAN), exact: Some(v) });
    }
    // s0 is irrational: a pole means den shares the positive root of b s^D - a.
    let mut cs = vec![BigInt::zero(); d as usize + 1];
    cs[0] = -q0.numer().clone();
    cs[d as usize] = q0.denom().clone();
    let g = x.denominator().gcd(&Poly::from_coeffs(cs));
    if !g.is_constant() && Sturm::new(&g).count(&BigRational::zero(), &BigRational::one()) > 0 {
        return Err(ScalarError::Pole(q0.to_string()));
    }
    let s0 = q0.to_f64().unwrap().powf(1.0 / d as f64);
    Ok(NumericValue { value: x.eval_f64_s(s0), exact: None })
}

/// Evaluate at a rational s directly (used by the deterministic sign rule).
pub fn evaluate_at_s(x: &QScalar, s0: &BigRational) -> Option<BigRational> {
    x.eval_exact_s(s0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn pole_outside_interval() {
        let x = QScalar::one() / (QScalar::q_pow(1) - QScalar::from_int(2));
        assert!(pole_free_on_unit_interval(&x).pole_free);
    }

    #[test]
    fn pole_at_one_detected() {
        let x = QScalar::one() / (QScalar::q_pow(1) - QScalar::one());
        let rep = pole_free_on_unit_interval(&x);
        assert!(!rep.pole_free);
        let (lo, hi) = rep.witness_q.unwrap();
        assert!(lo < BigRational::one() && hi >= BigRational::one());
    }

    #[test]
    fn interior_double_root() {
        let t = QScalar::q_pow(1) - QScalar::from_ratio(1, 3);
        let x = QScalar::one() / (&t * &t);
        let rep = pole_free_on_unit_interval(&x);
        assert!(!rep.pole_free);
        let (lo, hi) = rep.witness_s.unwrap();
        assert!(lo < r(1, 3) && r(1, 3) <= hi);
    }

    #[test]
    fn evaluate_examples() {
        let q = QScalar::q_pow(1);
        let two = &q + &q.inv();
        assert_eq!(evaluate(&two, &r(1, 2)).unwrap().exact, Some(r(5, 2)));
        let s = QScalar::q_frac_pow(1, 2);
        assert_eq!(evaluate(&s, &r(1, 4)).unwrap().exact, Some(r(1, 2)));
        let approx = evaluate(&s, &r(1, 2)).unwrap();
        assert!(approx.exact.is_none() && (approx.value - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn evaluate_rejects_poles() {
        let x = QScalar::one() / (QScalar::q_pow(1) - QScalar::from_ratio(1, 2));
        assert!(matches!(evaluate(&x, &r(1, 2)), Err(ScalarError::Pole(_))));
        let s = QScalar::q_frac_pow(1, 2);
        let y = QScalar::one() / (&s * &s - QScalar::from_ratio(1, 2));
        assert!(evaluate(&y, &r(1, 2)).is_err());
    }
}
