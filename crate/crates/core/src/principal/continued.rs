use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::linalg::Matrix;
use crate::scalars::QScalar;

/// `Π_p t_p^{t[p]} u_p^{u[p]}`, where `t_p^m` stands for `q^{m u_p / D}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub t: Vec<i64>,
    pub u: Vec<u32>,
}

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial { t: vec![0; arity], u: vec![0; arity] }
    }

    pub fn arity(&self) -> usize {
        self.t.len()
    }

    pub fn is_one(&self) -> bool {
        self.t.iter().all(|&m| m == 0) && self.u.iter().all(|&j| j == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial {
            t: self.t.iter().zip(&o.t).map(|(a, b)| a + b).collect(),
            u: self.u.iter().zip(&o.u).map(|(a, b)| a + b).collect(),
        }
    }
}

/// Element of `ℚ(s)[u_1..u_r] ⊗ span{t^m}`: a finite sum of monomials with QScalar coefficients.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Continued {
    terms: BTreeMap<Monomial, QScalar>,
}

impl Continued {
    pub fn zero() -> Self {
        Continued::default()
    }

    pub fn constant(arity: usize, c: QScalar) -> Self {
        Continued::term(Monomial::one(arity), c)
    }

    pub fn one(arity: usize) -> Self {
        Continued::constant(arity, QScalar::one())
    }

    pub fn term(m: Monomial, c: QScalar) -> Self {
        let mut x = Continued::zero();
        x.add_term(m, c);
        x
    }

    /// The parameter `u_p`.
    pub fn u(arity: usize, p: usize) -> Self {
        let mut m = Monomial::one(arity);
        m.u[p] = 1;
        Continued::term(m, QScalar::one())
    }

    /// `t_p^m`, i.e. `q^{m u_p / D}`.
    pub fn t(arity: usize, p: usize, m: i64) -> Self {
        let mut mono = Monomial::one(arity);
        mono.t[p] = m;
        Continued::term(mono, QScalar::one())
    }

    /// `u_p (u_p − 1) … (u_p − a + 1)`.
    pub fn falling(arity: usize, p: usize, a: usize) -> Self {
        let mut acc = Continued::one(arity);
        for m in 0..a {
            let f = Continued::u(arity, p).sub(&Continued::constant(arity, QScalar::from_int(m as i64)));
            acc = acc.mul(&f);
        }
        acc
    }

    /// A rational polynomial in `u_p`.
    pub fn from_rat_poly(arity: usize, p: usize, coeffs: &[BigRational]) -> Self {
        let mut out = Continued::zero();
        for (j, c) in coeffs.iter().enumerate() {
            let mut m = Monomial::one(arity);
            m.u[p] = j as u32;
            out.add_term(m, QScalar::from_rational(c));
        }
        out
    }

    pub fn add_term(&mut self, m: Monomial, c: QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x = &*x + &c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &QScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Continued) -> Continued {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Continued) -> Continued {
        self.add(&o.scale(&-QScalar::one()))
    }

    pub fn scale(&self, c: &QScalar) -> Continued {
        if c.is_zero() {
            return Continued::zero();
        }
        Continued { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul(&self, o: &Continued) -> Continued {
        let mut out = Continued::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// Substitute `u_p → u_p − n`: `t_p^m ↦ q^{−mn/D} t_p^m` and the binomial expansion in u_p.
    pub fn shift(&self, p: usize, n: i64, root: u32) -> Continued {
        if n == 0 {
            return self.clone();
        }
        let mut out = Continued::zero();
        for (m, c) in &self.terms {
            let qf = QScalar::q_frac_pow(-m.t[p] * n, root);
            let c = c * &qf;
            let j = m.u[p];
            let mut binom = BigInt::one();
            for b in (0..=j).rev() {
                // coefficient of u^b in (u − n)^j is C(j, b) (−n)^{j−b}
                let pow = BigInt::from(-n).pow(j - b);
                let coef = QScalar::from_bigint(&binom * pow);
                let mut mm = m.clone();
                mm.u[p] = b;
                out.add_term(mm, &c * &coef);
                if b > 0 {
                    binom = binom * BigInt::from(b) / BigInt::from(j - b + 1);
                }
            }
        }
        out
    }

    /// Value at `u = n`, with `t_p^m = q^{m n_p / D}`.
    pub fn specialize(&self, n: &[i64], root: u32) -> QScalar {
        let mut acc = QScalar::zero();
        for (m, c) in &self.terms {
            let e: i64 = m.t.iter().zip(n).map(|(a, b)| a * b).sum();
            let mut v = c * &QScalar::q_frac_pow(e, root);
            for (p, &j) in m.u.iter().enumerate() {
                if j > 0 {
                    v = &v * &QScalar::from_bigint(BigInt::from(n[p]).pow(j));
                }
            }
            acc = &acc + &v;
        }
        acc
    }

    /// Largest power of any u_p occurring.
    pub fn u_degree(&self) -> u32 {
        self.terms.keys().flat_map(|m| m.u.iter().copied()).max().unwrap_or(0)
    }

    pub fn is_u_free(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The textual form `Σ c·t^m·u^j` (exponents of t in units of 1/D).
    pub fn to_text(&self) -> String {
        format!("{self}")
    }
}

impl fmt::Display for Continued {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            let single = m.arity() == 1;
            for p in 0..m.arity() {
                let idx = if single { String::new() } else { (p + 1).to_string() };
                if m.t[p] != 0 {
                    write!(f, "·t{idx}^{}", m.t[p])?;
                }
                if m.u[p] != 0 {
                    write!(f, "·u{idx}^{}", m.u[p])?;
                }
            }
        }
        Ok(())
    }
}

/// Matrix with Continued entries, row major.
#[derive(Clone, Debug, PartialEq)]
pub struct ContinuedOperator {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Continued>,
}

impl ContinuedOperator {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ContinuedOperator { rows, cols, entries: vec![Continued::zero(); rows * cols] }
    }

    pub fn get(&self, r: usize, c: usize) -> &Continued {
        &self.entries[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Continued {
        &mut self.entries[r * self.cols + c]
    }

    /// `Σ_j c_j M_j` for scalar matrices M_j.
    pub fn combine(coeffs: &[Continued], mats: &[Matrix]) -> Self {
        assert_eq!(coeffs.len(), mats.len());
        let (rows, cols) = mats.first().map(|m| (m.rows(), m.cols())).unwrap_or((0, 0));
        let mut out = ContinuedOperator::zeros(rows, cols);
        for (c, m) in coeffs.iter().zip(mats) {
            for r in 0..rows {
                for k in 0..cols {
                    let x = &m[(r, k)];
                    if !x.is_zero() {
                        let e = out.get_mut(r, k);
                        *e = e.add(&c.scale(x));
                    }
                }
            }
        }
        out
    }

    pub fn specialize(&self, n: &[i64], root: u32) -> Matrix {
        Matrix::from_flat(self.rows, self.cols, self.entries.iter().map(|e| e.specialize(n, root)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn u_degree(&self) -> u32 {
        self.entries.iter().map(|e| e.u_degree()).max().unwrap_or(0)
    }

    pub fn to_text(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c).to_text()).collect()).collect()
    }
}
