use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Polynomial with rational coefficients, lowest degree first.
pub type RatPoly = Vec<BigRational>;

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `B_0, …, B_n` with `B_1 = −1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        let mut s = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            s += BigRational::from_integer(binomial(m as u64 + 1, j as u64)) * bj;
        }
        b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// `Σ_{j=0}^{n−1} j^{k−1} = (B_k(n) − B_k(0))/k` as a polynomial in n.
pub fn bernoulli_sum(k: usize) -> RatPoly {
    assert!(k >= 1, "bernoulli_sum needs k ≥ 1");
    let b = bernoulli_numbers(k);
    let kk = BigRational::from_integer(BigInt::from(k));
    let mut out = vec![BigRational::zero(); k + 1];
    for (j, slot) in out.iter_mut().enumerate().skip(1) {
        *slot = BigRational::from_integer(binomial(k as u64, j as u64)) * &b[k - j] / &kk;
    }
    trim(out)
}

/// Signed Stirling numbers of the first kind: `x(x−1)…(x−a+1) = Σ_i s(a,i) x^i`.
pub fn falling_factorial_coeffs(a: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::one()];
    for m in 0..a {
        let mut next = vec![BigInt::zero(); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * BigInt::from(m);
        }
        p = next;
    }
    p
}

/// `Σ_{j=0}^{n−1} C(j, a)` as a polynomial in n, assembled from Bernoulli sums.
pub fn binomial_sum(a: usize) -> RatPoly {
    let s = falling_factorial_coeffs(a);
    let mut fact = BigInt::one();
    for i in 1..=a {
        fact *= BigInt::from(i);
    }
    let mut out = vec![BigRational::zero(); a + 2];
    for (i, c) in s.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let coef = BigRational::new(c.clone(), fact.clone());
        for (d, x) in bernoulli_sum(i + 1).iter().enumerate() {
            out[d] += &coef * x;
        }
    }
    trim(out)
}

pub fn eval_rat_poly(p: &[BigRational], n: i64) -> BigRational {
    let x = BigRational::from_integer(BigInt::from(n));
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
}

fn trim(mut p: RatPoly) -> RatPoly {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn direct(k: usize, n: i64) -> BigRational {
        (0..n).map(|j| BigRational::from_integer(BigInt::from(j).pow(k as u32 - 1))).sum()
    }

    #[test]
    fn bernoulli_sum_examples() {
        let r = |p: i64, q: i64| BigRational::new(p.into(), q.into());
        assert_eq!(bernoulli_sum(1), vec![r(0, 1), r(1, 1)]);
        assert_eq!(bernoulli_sum(2), vec![r(0, 1), r(-1, 2), r(1, 2)]);
        assert_eq!(bernoulli_sum(3), vec![r(0, 1), r(1, 6), r(-1, 2), r(1, 3)]);
        for k in 1..=7 {
            let p = bernoulli_sum(k);
            for n in 0..=10 {
                assert_eq!(eval_rat_poly(&p, n), direct(k, n), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn binomial_sums_follow_hockey_stick() {
        for a in 0..5 {
            let p = binomial_sum(a);
            for n in 0..9i64 {
                let want = BigRational::from_integer(binomial(n as u64, a as u64 + 1));
                assert_eq!(eval_rat_poly(&p, n), want);
            }
        }
    }

    #[test]
    fn stirling_rows() {
        let s = falling_factorial_coeffs(3);
        assert_eq!(s, vec![0.into(), 2.into(), (-3).into(), 1.into()]);
    }
}
