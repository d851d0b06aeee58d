use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::poly::Poly;

/// An element of Q(s) where s is the positive root of s^D = q.
///
/// Stored as `s^shift * num / den` with `num, den` integer polynomials not
/// divisible by `s`, coprime in Z[s], and `lc(den) > 0`. The root order is
/// kept minimal, so structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    shift: i64,
    num: Poly,
    den: Poly,
    root: u32,
}

impl Default for QScalar {
    fn default() -> Self {
        QScalar::zero()
    }
}

fn lcm_u32(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar { shift: 0, num: Poly::zero(), den: Poly::one(), root: 1 }
    }

    pub fn one() -> Self {
        QScalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        QScalar::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        if n.is_zero() {
            return QScalar::zero();
        }
        QScalar { shift: 0, num: Poly::constant(n), den: Poly::one(), root: 1 }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        QScalar::from_parts(0, Poly::constant(r.numer().clone()), Poly::constant(r.denom().clone()), 1)
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        QScalar::from_rational(&BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// q^k
    pub fn q_pow(k: i64) -> Self {
        QScalar { shift: k, num: Poly::one(), den: Poly::one(), root: 1 }.compressed()
    }

    /// q^{m/d}, i.e. s^m with s^d = q.
    pub fn q_frac_pow(m: i64, d: u32) -> Self {
        assert!(d > 0, "root order must be positive");
        QScalar { shift: m, num: Poly::one(), den: Poly::one(), root: d }.compressed()
    }

    /// Build `s^shift * num / den` (with s^root = q) and bring it to canonical form.
    pub fn from_parts(shift: i64, num: Poly, den: Poly, root: u32) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        assert!(root > 0, "root order must be positive");
        if num.is_zero() {
            return QScalar::zero();
        }
        let mut shift = shift;
        let (num, den) = {
            let a = num.low_order();
            let b = den.low_order();
            shift += a as i64 - b as i64;
            (num.shift_down(a), den.shift_down(b))
        };
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        if den.lc().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        QScalar { shift, num, den, root }.compressed()
    }

    /// Reduce the root order to the smallest one that still represents the value.
    fn compressed(mut self) -> Self {
        if self.num.is_zero() {
            return QScalar::zero();
        }
        if self.root == 1 {
            return self;
        }
        let mut g = self.root as usize;
        g = g.gcd(&(self.shift.unsigned_abs() as usize));
        if g > 1 {
            g = g.gcd(&self.num.exponent_gcd());
        }
        if g > 1 {
            g = g.gcd(&self.den.exponent_gcd());
        }
        if g > 1 {
            self.root /= g as u32;
            self.shift /= g as i64;
            self.num = self.num.deflate(g);
            self.den = self.den.deflate(g);
        }
        self
    }

    /// Re-express in terms of a finer root s' with s'^new_root = q.
    fn lifted(&self, new_root: u32) -> (i64, Poly, Poly) {
        debug_assert_eq!(new_root % self.root, 0);
        let k = (new_root / self.root) as usize;
        (self.shift * k as i64, self.num.inflate(k), self.den.inflate(k))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Order of vanishing at q = 0, in powers of q; `None` for zero.
    pub fn valuation(&self) -> Option<BigRational> {
        if self.is_zero() {
            return None;
        }
        Some(BigRational::new(BigInt::from(self.shift), BigInt::from(self.root)))
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// Minimal root order D with the value in Q(q^{1/D}).
    pub fn root_order(&self) -> u32 {
        self.root
    }

    /// True if the value is a Laurent polynomial in s.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// If the value is `c * q^{m/D}` for a rational c, return `(c, m, D)`.
    pub fn as_monomial(&self) -> Option<(BigRational, i64, u32)> {
        if self.is_zero() || !self.num.is_constant() || !self.den.is_constant() {
            return None;
        }
        Some((
            BigRational::new(self.num.coeff(0), self.den.coeff(0)),
            self.shift,
            self.root,
        ))
    }

    /// The rational value, if the scalar is a constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        match self.as_monomial() {
            Some((c, 0, _)) => Some(c),
            _ => None,
        }
    }

    /// Heuristic size, used to pick simple pivots.
    pub fn weight(&self) -> u64 {
        self.num.weight() + self.den.weight()
    }

    pub fn inv(&self) -> QScalar {
        assert!(!self.is_zero(), "inverse of zero");
        let (mut num, mut den) = (self.den.clone(), self.num.clone());
        if den.lc().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        QScalar { shift: -self.shift, num, den, root: self.root }
    }

    pub fn pow(&self, e: i64) -> QScalar {
        if e < 0 {
            return self.inv().pow(-e);
        }
        let mut base = self.clone();
        let mut acc = QScalar::one();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale_int(&self, c: i64) -> QScalar {
        self * &QScalar::from_int(c)
    }

    fn add_impl(&self, other: &QScalar) -> QScalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let root = lcm_u32(self.root, other.root);
        let (x, a, b) = self.lifted(root);
        let (y, c, e) = other.lifted(root);
        let m = x.min(y);
        let sa = (x - m) as usize;
        let sc = (y - m) as usize;
        if b == e {
            let num = a.shift_up(sa).add(&c.shift_up(sc));
            if b.is_one() {
                return QScalar::from_parts_laurent(m, num, root);
            }
            return QScalar::from_parts(m, num, b, root);
        }
        let g = b.gcd(&e);
        if g.is_one() {
            let num = a.shift_up(sa).mul(&e).add(&c.shift_up(sc).mul(&b));
            let den = b.mul(&e);
            // Already coprime to den; only the s-adic valuation and root need fixing.
            return QScalar::from_coprime_parts(m, num, den, root);
        }
        let b1 = b.div_exact(&g).unwrap();
        let e1 = e.div_exact(&g).unwrap();
        let num = a.shift_up(sa).mul(&e1).add(&c.shift_up(sc).mul(&b1));
        let den = b1.mul(&e1).mul(&g);
        QScalar::from_parts(m, num, den, root)
    }

    fn from_parts_laurent(shift: i64, num: Poly, root: u32) -> QScalar {
        if num.is_zero() {
            return QScalar::zero();
        }
        let a = num.low_order();
        QScalar { shift: shift + a as i64, num: num.shift_down(a), den: Poly::one(), root }.compressed()
    }

    fn from_coprime_parts(shift: i64, num: Poly, den: Poly, root: u32) -> QScalar {
        if num.is_zero() {
            return QScalar::zero();
        }
        let a = num.low_order();
        let (mut num, mut den) = (num.shift_down(a), den);
        if den.lc().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        QScalar { shift: shift + a as i64, num, den, root }.compressed()
    }

    fn mul_impl(&self, other: &QScalar) -> QScalar {
        if self.is_zero() || other.is_zero() {
            return QScalar::zero();
        }
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        let root = lcm_u32(self.root, other.root);
        let (x, a, b) = self.lifted(root);
        let (y, c, e) = other.lifted(root);
        let shift = x + y;
        if b.is_one() && e.is_one() {
            return QScalar { shift, num: a.mul(&c), den: Poly::one(), root }.compressed();
        }
        let g1 = if e.is_one() { Poly::one() } else { a.gcd(&e) };
        let g2 = if b.is_one() { Poly::one() } else { c.gcd(&b) };
        let (a, e) = if g1.is_one() { (a, e) } else { (a.div_exact(&g1).unwrap(), e.div_exact(&g1).unwrap()) };
        let (c, b) = if g2.is_one() { (c, b) } else { (c.div_exact(&g2).unwrap(), b.div_exact(&g2).unwrap()) };
        let mut num = a.mul(&c);
        let mut den = b.mul(&e);
        if den.lc().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        // Cancelled contents can leave a common integer factor only through
        // the constant parts, which the Z[s]-gcd above already accounts for.
        QScalar { shift, num, den, root }.compressed()
    }

    /// Evaluate the numerator and denominator at a rational point `s0`.
    pub fn eval_exact_s(&self, s0: &BigRational) -> Option<BigRational> {
        let den = eval_rat(&self.den, s0);
        if den.is_zero() {
            return None;
        }
        let mut v = eval_rat(&self.num, s0) / den;
        if self.shift != 0 {
            if s0.is_zero() {
                return None;
            }
            let p = num_traits::pow::pow(s0.clone(), self.shift.unsigned_abs() as usize);
            if self.shift > 0 {
                v *= p;
            } else {
                v /= p;
            }
        }
        Some(v)
    }

    pub fn eval_f64_s(&self, s0: f64) -> f64 {
        self.num.to_f64_at(s0) / self.den.to_f64_at(s0) * s0.powi(self.shift as i32)
    }
}

pub(crate) fn eval_rat(p: &Poly, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc * x + BigRational::from_integer(c.clone());
    }
    acc
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::to_text(self))
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::to_text(self))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a QScalar> for &'a QScalar {
            type Output = QScalar;
            fn $m(self, rhs: &'a QScalar) -> QScalar {
                let f: fn(&QScalar, &QScalar) -> QScalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar {
                let f: fn(&QScalar, &QScalar) -> QScalar = $body;
                f(&self, &rhs)
            }
        }
        impl<'a> $tr<QScalar> for &'a QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar {
                let f: fn(&QScalar, &QScalar) -> QScalar = $body;
                f(self, &rhs)
            }
        }
        impl<'a> $tr<&'a QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: &'a QScalar) -> QScalar {
                let f: fn(&QScalar, &QScalar) -> QScalar = $body;
                f(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b));
forward_binop!(Sub, sub, |a, b| a.add_impl(&-b));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));
forward_binop!(Div, div, |a, b| a.mul_impl(&b.inv()));

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar { shift: self.shift, num: self.num.neg(), den: self.den.clone(), root: self.root }
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

impl std::iter::Sum for QScalar {
    fn sum<I: Iterator<Item = QScalar>>(iter: I) -> QScalar {
        iter.fold(QScalar::zero(), |a, b| a + b)
    }
}

impl From<i64> for QScalar {
    fn from(n: i64) -> Self {
        QScalar::from_int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms_agree() {
        let q = QScalar::q_pow(1);
        let a = (&q * &q - QScalar::one()) / (&q - QScalar::one());
        assert_eq!(a, &q + &QScalar::one());
        assert!(a.is_laurent());
    }

    #[test]
    fn root_order_compresses() {
        let s = QScalar::q_frac_pow(1, 2);
        assert_eq!(s.root_order(), 2);
        assert_eq!(&s * &s, QScalar::q_pow(1));
        assert_eq!((&s * &s).root_order(), 1);
    }

    #[test]
    fn inverse_round_trip() {
        let q = QScalar::q_pow(1);
        let x = (&q + &QScalar::from_int(3)) / (&q * &q - QScalar::from_int(2));
        assert!((&x * &x.inv()).is_one());
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn rational_constants() {
        let h = QScalar::from_ratio(1, 2);
        assert_eq!(&h + &h, QScalar::one());
        assert_eq!(h.as_rational(), Some(BigRational::new(1.into(), 2.into())));
    }
}
