//! Dense univariate polynomials over the integers.
//!
//! Coefficients are stored lowest degree first with no trailing zeros; the
//! zero polynomial is the empty vector. The GCD is computed by a dense
//! multi-modular algorithm with trial-division verification, which keeps
//! coefficient growth out of the Euclidean remainder sequence.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * s^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Poly::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> &BigInt {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Number of trailing zero coefficients, i.e. the largest k with s^k | self.
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn shift_down(&self, k: usize) -> Poly {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        Poly::from_coeffs(self.coeffs[k.min(self.coeffs.len())..].to_vec())
    }

    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Substitute `s -> s^k`.
    pub fn inflate(&self, k: usize) -> Poly {
        if k == 1 || self.is_constant() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); self.degree() * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Poly { coeffs }
    }

    /// Inverse of [`Poly::inflate`]; caller guarantees all exponents are multiples of `k`.
    pub fn deflate(&self, k: usize) -> Poly {
        if k == 1 {
            return self.clone();
        }
        Poly::from_coeffs(self.coeffs.iter().step_by(k).cloned().collect())
    }

    /// gcd of the exponents carrying nonzero coefficients (0 for constants).
    pub fn exponent_gcd(&self) -> usize {
        let mut g = 0usize;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                g = g.gcd(&i);
                if g == 1 {
                    return 1;
                }
            }
        }
        g
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, o) in coeffs.iter_mut().zip(short.coeffs.iter()) {
            *c += o;
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, BigInt::zero());
        for (c, o) in coeffs.iter_mut().zip(other.coeffs.iter()) {
            *c -= o;
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if other.coeffs.len() == 1 {
            return self.scale(&other.coeffs[0]);
        }
        if self.coeffs.len() == 1 {
            return other.scale(&self.coeffs[0]);
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Poly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Exact division of every coefficient by `c`.
    pub fn div_scalar(&self, c: &BigInt) -> Poly {
        if c.is_one() {
            return self.clone();
        }
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .map(|x| {
                    debug_assert!((x % c).is_zero());
                    x / c
                })
                .collect(),
        }
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient, and the signed content removed.
    pub fn primitive(&self) -> (BigInt, Poly) {
        if self.is_zero() {
            return (BigInt::zero(), Poly::zero());
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        (c.clone(), self.div_scalar(&c))
    }

    /// `self / d` if `d` divides `self` exactly in Z[s].
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if d.coeffs.len() == 1 {
            let c = &d.coeffs[0];
            if self.coeffs.iter().all(|x| (x % c).is_zero()) {
                return Some(Poly { coeffs: self.coeffs.iter().map(|x| x / c).collect() });
            }
            return None;
        }
        if self.degree() < d.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dd = d.degree();
        let dlc = d.lc();
        let mut quot = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qk, r) = top.div_rem(dlc);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[k + j] -= &qk * dc;
                }
            }
            quot[k] = qk;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Poly::from_coeffs(quot))
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Total size in bits of the coefficients, used to rank pivots.
    pub fn weight(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits() + 1).sum()
    }

    /// GCD in Z[s], normalized with positive leading coefficient.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.primitive_signed();
        }
        if other.is_zero() {
            return self.primitive_signed();
        }
        let (ca, a) = self.primitive();
        let (cb, b) = other.primitive();
        let c = ca.gcd(&cb);
        if a.is_constant() || b.is_constant() {
            return Poly::constant(c);
        }
        if a == b {
            return a.scale(&c);
        }
        // Divisibility shortcuts before going modular.
        if a.degree() <= b.degree() && b.div_exact(&a).is_some() {
            return a.scale(&c);
        }
        if b.degree() < a.degree() && a.div_exact(&b).is_some() {
            return b.scale(&c);
        }
        modular_gcd(&a, &b).scale(&c)
    }

    fn primitive_signed(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        if self.lc().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn cmp_size(&self, other: &Poly) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len())
    }

    pub fn to_f64_at(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(256);
        let mut n: u64 = (1 << 31) - 1;
        while out.len() < 256 {
            if is_prime_u64(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

fn reduce(a: &Poly, p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut out: Vec<u64> = a
        .coeffs
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits"))
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Monic gcd over Z/p.
fn gcd_mod_p(a: Vec<u64>, b: Vec<u64>, p: u64) -> Vec<u64> {
    let (mut r0, mut r1) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    while !r1.is_empty() {
        // r0 <- r0 mod r1
        let inv = mod_inv(*r1.last().unwrap(), p);
        let d1 = r1.len() - 1;
        while r0.len() >= r1.len() {
            let shift = r0.len() - 1 - d1;
            let factor = r0.last().unwrap() * inv % p;
            if factor != 0 {
                for (j, &c) in r1.iter().enumerate() {
                    let idx = shift + j;
                    r0[idx] = (r0[idx] + p - factor * c % p) % p;
                }
            }
            r0.pop();
            while r0.last() == Some(&0) {
                r0.pop();
            }
        }
        std::mem::swap(&mut r0, &mut r1);
    }
    if let Some(&lc) = r0.last() {
        let inv = mod_inv(lc, p);
        for c in r0.iter_mut() {
            *c = *c * inv % p;
        }
    }
    r0
}

fn symmetric(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// GCD of two primitive polynomials of positive degree.
fn modular_gcd(a: &Poly, b: &Poly) -> Poly {
    let gamma = a.lc().gcd(b.lc());
    let mut acc: Option<(Vec<BigInt>, BigInt, usize)> = None;
    let mut last_candidate: Option<Poly> = None;
    for &p in primes() {
        let pb = BigInt::from(p);
        if (a.lc() % &pb).is_zero() || (b.lc() % &pb).is_zero() {
            continue;
        }
        let gp = gcd_mod_p(reduce(a, p), reduce(b, p), p);
        let dp = gp.len() - 1;
        if dp == 0 {
            return Poly::one();
        }
        let gmod = gamma.mod_floor(&pb).to_u64().unwrap();
        let gp: Vec<u64> = gp.iter().map(|&c| c * gmod % p).collect();
        match &mut acc {
            Some((_, _, deg)) if dp > *deg => continue,
            Some((coeffs, modulus, deg)) if dp == *deg => {
                // CRT: x = c + M * ((g - c) * M^{-1} mod p)
                let minv = mod_inv(modulus.mod_floor(&pb).to_u64().unwrap(), p);
                for (c, &g) in coeffs.iter_mut().zip(gp.iter()) {
                    let cm = c.mod_floor(&pb).to_u64().unwrap();
                    let t = (g + p - cm) % p * minv % p;
                    *c += &*modulus * BigInt::from(t);
                }
                *modulus *= &pb;
            }
            _ => {
                acc = Some((gp.iter().map(|&c| BigInt::from(c)).collect(), pb.clone(), dp));
                last_candidate = None;
            }
        }
        let (coeffs, modulus, _) = acc.as_ref().unwrap();
        let lifted = Poly::from_coeffs(coeffs.iter().map(|c| symmetric(c, modulus)).collect());
        let (_, cand) = lifted.primitive();
        if (last_candidate.as_ref() == Some(&cand) || coeffs.iter().all(|c| c.bits() < 24))
            && a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
                return cand;
            }
        last_candidate = Some(cand);
    }
    panic!("modular gcd did not converge within the prime table");
}
