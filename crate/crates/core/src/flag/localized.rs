use crate::linalg::Vector;
use crate::rootdata::Weight;
use crate::scalars::QScalar;
use crate::uqg::{coproduct, Gen, Letter, UqElement};

use super::{FlagAlgebra, FlagError, GradedFunction};

/// Largest exponent tried when moving ψ_k^{-1} to the right of a function.
const MAX_ORE: u32 = 8;

/// Right fraction `g ψ_1^{-j_1} … ψ_r^{-j_r}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalizedFunction {
    pub num: GradedFunction,
    pub den: Vec<u32>,
}

impl LocalizedFunction {
    pub fn new(num: GradedFunction, den: Vec<u32>) -> Self {
        LocalizedFunction { num, den }
    }

    pub fn zero(r: usize) -> Self {
        LocalizedFunction { num: GradedFunction::zero(), den: vec![0; r] }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        LocalizedFunction { num: self.num.scale(c), den: self.den.clone() }
    }
}

fn max_den(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

impl FlagAlgebra {
    pub fn localize(&self, f: GradedFunction, den: Vec<u32>) -> LocalizedFunction {
        assert_eq!(den.len(), self.rank());
        LocalizedFunction::new(f, den)
    }

    pub fn lf_one(&self) -> LocalizedFunction {
        LocalizedFunction::new(self.unit(), vec![0; self.rank()])
    }

    /// `ψ_k^{-1}` as a fraction.
    pub fn psi_inverse(&self, k: usize) -> LocalizedFunction {
        let mut den = vec![0; self.rank()];
        den[k] = 1;
        LocalizedFunction::new(self.unit(), den)
    }

    /// Right multiplication of a graded function by ψ_k^{n}.
    pub fn right_psi(&self, g: &GradedFunction, k: usize, n: u32) -> Result<GradedFunction, FlagError> {
        let mut cur = g.clone();
        for _ in 0..n {
            let mut next = GradedFunction::zero();
            for (w, v) in cur.components() {
                let p = self.psi_mul(w, v, k, false)?;
                next = next.add(&GradedFunction::homogeneous(w.add(self.mu(k)), p));
            }
            cur = next;
        }
        Ok(cur)
    }

    /// Left multiplication of a graded function by ψ_k^{n}.
    pub fn left_psi(&self, g: &GradedFunction, k: usize, n: u32) -> Result<GradedFunction, FlagError> {
        let mut cur = g.clone();
        for _ in 0..n {
            let mut next = GradedFunction::zero();
            for (w, v) in cur.components() {
                let p = self.psi_mul(w, v, k, true)?;
                next = next.add(&GradedFunction::homogeneous(w.add(self.mu(k)), p));
            }
            cur = next;
        }
        Ok(cur)
    }

    /// Solve `y ψ_k = g` (or `ψ_k y = g`) componentwise.
    fn divide_psi(&self, g: &GradedFunction, k: usize, left: bool) -> Result<Option<GradedFunction>, FlagError> {
        let mut out = GradedFunction::zero();
        for (w, v) in g.components() {
            match self.psi_divide(w, v, k, left)? {
                Some(y) => out = out.add(&GradedFunction::homogeneous(w.sub(self.mu(k)), y)),
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    }

    /// Numerator of x rewritten over the larger denominator `den`.
    pub fn lift(&self, x: &LocalizedFunction, den: &[u32]) -> Result<GradedFunction, FlagError> {
        let mut g = x.num.clone();
        for k in 0..self.rank() {
            assert!(den[k] >= x.den[k], "lift to a smaller denominator");
            g = self.right_psi(&g, k, den[k] - x.den[k])?;
        }
        Ok(g)
    }

    pub fn lf_add(&self, x: &LocalizedFunction, y: &LocalizedFunction) -> Result<LocalizedFunction, FlagError> {
        if x.is_zero() {
            return Ok(y.clone());
        }
        if y.is_zero() {
            return Ok(x.clone());
        }
        let den = max_den(&x.den, &y.den);
        let a = self.lift(x, &den)?;
        let b = self.lift(y, &den)?;
        Ok(LocalizedFunction::new(a.add(&b), den))
    }

    pub fn lf_sub(&self, x: &LocalizedFunction, y: &LocalizedFunction) -> Result<LocalizedFunction, FlagError> {
        self.lf_add(x, &y.scale(&-QScalar::one()))
    }

    /// Cross-multiplication equality.
    pub fn lf_equals(&self, x: &LocalizedFunction, y: &LocalizedFunction) -> Result<bool, FlagError> {
        Ok(self.lf_sub(x, y)?.is_zero())
    }

    /// Remove every ψ_k factor that divides the numerator on the right.
    pub fn canonicalize(&self, x: &LocalizedFunction) -> Result<LocalizedFunction, FlagError> {
        let mut cur = x.clone();
        if cur.is_zero() {
            return Ok(LocalizedFunction::zero(self.rank()));
        }
        for k in 0..self.rank() {
            while cur.den[k] > 0 {
                match self.divide_psi(&cur.num, k, false)? {
                    Some(g) => {
                        cur.num = g;
                        cur.den[k] -= 1;
                    }
                    None => break,
                }
            }
        }
        Ok(cur)
    }

    /// `ψ_k^{-1} h = h' ψ_k^{-m}` with the least m that works.
    pub fn ore_swap(&self, k: usize, h: &GradedFunction) -> Result<(GradedFunction, u32), FlagError> {
        if h.is_zero() {
            return Ok((GradedFunction::zero(), 0));
        }
        let mut hm = h.clone();
        for m in 1..=MAX_ORE {
            hm = self.right_psi(&hm, k, 1)?;
            if let Some(hp) = self.divide_psi(&hm, k, true)? {
                return Ok((hp, m));
            }
        }
        Err(FlagError::Ore { k: k + 1, max: MAX_ORE as usize })
    }

    /// `ψ^{-j} h` as a right fraction.
    pub fn left_divide(&self, den: &[u32], h: &GradedFunction) -> Result<LocalizedFunction, FlagError> {
        let mut cur = LocalizedFunction::new(h.clone(), vec![0; self.rank()]);
        for k in 0..self.rank() {
            for _ in 0..den[k] {
                let (hp, m) = self.ore_swap(k, &cur.num)?;
                cur.num = hp;
                cur.den[k] += m;
            }
        }
        Ok(cur)
    }

    /// `(g ψ^{-j})(h ψ^{-k}) = g (ψ^{-j} h) ψ^{-k}`.
    pub fn lf_mul(&self, x: &LocalizedFunction, y: &LocalizedFunction) -> Result<LocalizedFunction, FlagError> {
        if x.is_zero() || y.is_zero() {
            return Ok(LocalizedFunction::zero(self.rank()));
        }
        let swapped = self.left_divide(&x.den, &y.num)?;
        let num = self.multiply(&x.num, &swapped.num)?;
        let den = swapped.den.iter().zip(&y.den).map(|(a, b)| a + b).collect();
        Ok(LocalizedFunction::new(num, den))
    }

    /// `ψ^{j}` as a graded function.
    pub fn psi_monomial(&self, j: &[u32]) -> Result<GradedFunction, FlagError> {
        let mut g = self.unit();
        for (k, &n) in j.iter().enumerate() {
            if n > 0 {
                let p = self.psi_power(k, n)?;
                g = self.multiply(&g, &GradedFunction::homogeneous(self.mu(k).scale(n as i64), (*p).clone()))?;
            }
        }
        Ok(g)
    }

    pub fn act_graded(&self, l: Letter, g: &GradedFunction) -> Result<GradedFunction, FlagError> {
        let mut out = GradedFunction::zero();
        for (w, v) in g.components() {
            out = out.add(&GradedFunction::homogeneous(w.clone(), self.act_letter(w, l, v)?));
        }
        Ok(out)
    }

    /// Action of one generator on a right fraction, with
    /// `X(ψ^{-j}) = −ψ^{-j} X(ψ^{j}) ψ^{-j}` for X = E_i, F_i.
    pub fn localized_action(&self, l: Letter, x: &LocalizedFunction) -> Result<LocalizedFunction, FlagError> {
        if x.is_zero() {
            return Ok(x.clone());
        }
        let plain = LocalizedFunction::new(self.act_graded(l, &x.num)?, x.den.clone());
        if matches!(l.gen, Gen::K | Gen::KInv) || x.den.iter().all(|&d| d == 0) {
            return Ok(plain);
        }
        // X(ψ^{-j})
        let pj = self.psi_monomial(&x.den)?;
        let xp = self.act_graded(Letter { gen: l.gen, node: l.node }, &pj)?;
        if xp.is_zero() {
            return Ok(plain);
        }
        let inner = self.left_divide(&x.den, &xp)?;
        let mut xinv = inner;
        for k in 0..self.rank() {
            xinv.den[k] += x.den[k];
        }
        let xinv = xinv.scale(&-QScalar::one());
        // E(g ψ^{-j}) = E(g)ψ^{-j} + K(g) E(ψ^{-j});  F(g ψ^{-j}) = F(g)ψ^{-j} + g F(ψ^{-j})
        let left = match l.gen {
            Gen::E => self.act_graded(Letter::k(l.node), &x.num)?,
            _ => x.num.clone(),
        };
        let corr = self.lf_mul(&LocalizedFunction::new(left, vec![0; self.rank()]), &xinv)?;
        self.lf_add(&plain, &corr)
    }

    /// Action of an algebra element, word letters applied right to left.
    pub fn act_element(&self, xi: &UqElement, x: &LocalizedFunction) -> Result<LocalizedFunction, FlagError> {
        let mut out = LocalizedFunction::zero(self.rank());
        for (w, c) in xi.terms() {
            let mut cur = x.clone();
            for &l in w.iter().rev() {
                cur = self.localized_action(l, &cur)?;
                if cur.is_zero() {
                    break;
                }
            }
            out = self.lf_add(&out, &cur.scale(c))?;
        }
        Ok(out)
    }

    /// `ξ(f1 f2) = Σ (ξ' f1)(ξ'' f2)` checked exactly.
    pub fn leibniz_check(&self, xi: &UqElement, f1: &LocalizedFunction, f2: &LocalizedFunction) -> Result<bool, FlagError> {
        let lhs = self.act_element(xi, &self.lf_mul(f1, f2)?)?;
        let mut rhs = LocalizedFunction::zero(self.rank());
        for ((a, b), c) in coproduct(xi).terms() {
            let x = self.act_element(&UqElement::word(a.clone()), f1)?;
            let y = self.act_element(&UqElement::word(b.clone()), f2)?;
            rhs = self.lf_add(&rhs, &self.lf_mul(&x, &y)?.scale(c))?;
        }
        self.lf_equals(&lhs, &rhs)
    }

    /// Degree of a fraction: `Σ λ − Σ j_k μ_k` for homogeneous numerators.
    pub fn degree(&self, x: &LocalizedFunction) -> Option<Weight> {
        let mut it = x.num.components();
        let (w, _) = it.next()?;
        if it.next().is_some() {
            return None;
        }
        Some(w.sub(&self.level_weight(&x.den)))
    }

    /// Flattened coordinates of a family of fractions over a common denominator.
    pub fn common_coords(&self, xs: &[LocalizedFunction]) -> Result<(Vec<u32>, Vec<Vector>), FlagError> {
        let mut den = vec![0; self.rank()];
        for x in xs {
            if !x.is_zero() {
                den = max_den(&den, &x.den);
            }
        }
        let lifted: Vec<GradedFunction> = xs.iter().map(|x| if x.is_zero() { Ok(GradedFunction::zero()) } else { self.lift(x, &den) }).collect::<Result<_, _>>()?;
        let mut keys: Vec<Weight> = lifted.iter().flat_map(|g| g.components().map(|(w, _)| w.clone())).collect();
        keys.sort();
        keys.dedup();
        let mut out = Vec::with_capacity(xs.len());
        for g in &lifted {
            let mut v = Vec::new();
            for w in &keys {
                match g.component(w) {
                    Some(c) => v.extend(c.iter().cloned()),
                    None => {
                        let n = self.module(w)?.dim();
                        v.extend(std::iter::repeat_n(QScalar::zero(), n));
                    }
                }
            }
            out.push(v);
        }
        Ok((den, out))
    }
}
