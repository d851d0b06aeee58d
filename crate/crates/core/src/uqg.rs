//! The quantized enveloping algebra as formal combinations of words.
//!
//! No normal form is computed. Words act on modules letter by letter,
//! rightmost letter first.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::rootdata::{HermitianPair, RootDatum};
use crate::scalars::{q_int, QScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    E,
    F,
    K,
    KInv,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: Gen,
    pub node: usize,
}

impl Letter {
    pub fn e(i: usize) -> Self {
        Letter { gen: Gen::E, node: i }
    }
    pub fn f(i: usize) -> Self {
        Letter { gen: Gen::F, node: i }
    }
    pub fn k(i: usize) -> Self {
        Letter { gen: Gen::K, node: i }
    }
    pub fn kinv(i: usize) -> Self {
        Letter { gen: Gen::KInv, node: i }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.node + 1;
        match self.gen {
            Gen::E => write!(f, "E{n}"),
            Gen::F => write!(f, "F{n}"),
            Gen::K => write!(f, "K{n}"),
            Gen::KInv => write!(f, "K{n}^-1"),
        }
    }
}

pub type UqWord = Vec<Letter>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WordError {
    #[error("cannot parse letter `{0}`")]
    Letter(String),
    #[error("node index {node} out of range for rank {rank}")]
    Node { node: usize, rank: usize },
}

/// Parse `E1*F2*K1^-1`; nodes are 1-based in the text form. The empty string is the unit.
pub fn parse_word(s: &str) -> Result<UqWord, WordError> {
    let s = s.trim();
    if s.is_empty() || s == "1" {
        return Ok(Vec::new());
    }
    s.split('*')
        .map(|tok| {
            let tok = tok.trim();
            let bad = || WordError::Letter(tok.to_string());
            let (head, inv) = match tok.strip_suffix("^-1") {
                Some(h) => (h, true),
                None => (tok, false),
            };
            let mut chars = head.chars();
            let g = chars.next().ok_or_else(bad)?;
            let node: usize = chars.as_str().parse().map_err(|_| bad())?;
            if node == 0 {
                return Err(bad());
            }
            let gen = match (g, inv) {
                ('E', false) => Gen::E,
                ('F', false) => Gen::F,
                ('K', false) => Gen::K,
                ('K', true) => Gen::KInv,
                _ => return Err(bad()),
            };
            Ok(Letter { gen, node: node - 1 })
        })
        .collect()
}

pub fn check_word(w: &[Letter], rank: usize) -> Result<(), WordError> {
    match w.iter().find(|l| l.node >= rank) {
        Some(l) => Err(WordError::Node { node: l.node + 1, rank }),
        None => Ok(()),
    }
}

/// Finite linear combination of words.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UqElement {
    terms: BTreeMap<UqWord, QScalar>,
}

impl fmt::Debug for UqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c})*{w:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl FromStr for UqElement {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(UqElement::word(parse_word(s)?))
    }
}

impl UqElement {
    pub fn zero() -> Self {
        UqElement::default()
    }

    pub fn one() -> Self {
        UqElement::word(Vec::new())
    }

    pub fn word(w: UqWord) -> Self {
        UqElement::term(QScalar::one(), w)
    }

    pub fn letter(l: Letter) -> Self {
        UqElement::word(vec![l])
    }

    pub fn scalar(c: QScalar) -> Self {
        UqElement::term(c, Vec::new())
    }

    pub fn term(c: QScalar, w: UqWord) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        UqElement { terms }
    }

    pub fn e(i: usize) -> Self {
        UqElement::letter(Letter::e(i))
    }
    pub fn f(i: usize) -> Self {
        UqElement::letter(Letter::f(i))
    }
    pub fn k(i: usize) -> Self {
        UqElement::letter(Letter::k(i))
    }
    pub fn kinv(i: usize) -> Self {
        UqElement::letter(Letter::kinv(i))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&UqWord, &QScalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, w: UqWord, c: QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                *x = &*x + &c;
                if x.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, o: &UqElement) -> UqElement {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &UqElement) -> UqElement {
        self.add(&o.scale(&QScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &QScalar) -> UqElement {
        if c.is_zero() {
            return UqElement::zero();
        }
        UqElement { terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    pub fn mul(&self, o: &UqElement) -> UqElement {
        let mut out = UqElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let mut w = w1.clone();
                w.extend(w2.iter().copied());
                out.add_term(w, c1 * c2);
            }
        }
        out
    }

    /// Apply a map letter -> element multiplicatively (or anti-multiplicatively).
    fn map_letters(&self, f: impl Fn(Letter) -> UqElement, anti: bool) -> UqElement {
        let mut out = UqElement::zero();
        for (w, c) in &self.terms {
            let mut acc = UqElement::scalar(c.clone());
            if anti {
                for &l in w.iter().rev() {
                    acc = acc.mul(&f(l));
                }
            } else {
                for &l in w {
                    acc = acc.mul(&f(l));
                }
            }
            out = out.add(&acc);
        }
        out
    }

    /// True if no letter E_{l0}, F_{l0} occurs in any word.
    pub fn is_in_k(&self, pair: &HermitianPair) -> bool {
        self.terms.keys().all(|w| is_in_k(w, pair))
    }
}

pub fn is_in_k(w: &[Letter], pair: &HermitianPair) -> bool {
    w.iter().all(|l| matches!(l.gen, Gen::K | Gen::KInv) || l.node != pair.l0)
}

/// Sum of `left ⊗ right` pairs with coefficients in the left slot.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TensorElement {
    terms: BTreeMap<(UqWord, UqWord), QScalar>,
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|((a, b), c)| format!("({c})*{a:?}⊗{b:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl TensorElement {
    pub fn zero() -> Self {
        TensorElement::default()
    }

    pub fn pure(c: QScalar, a: UqWord, b: UqWord) -> Self {
        let mut t = TensorElement::zero();
        t.add_term(a, b, c);
        t
    }

    fn add_term(&mut self, a: UqWord, b: UqWord, c: QScalar) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        match self.terms.get_mut(&key) {
            Some(x) => {
                *x = &*x + &c;
                if x.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(UqWord, UqWord), &QScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for ((a, b), c) in &o.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, o: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &o.terms {
                let mut a = a1.clone();
                a.extend(a2.iter().copied());
                let mut b = b1.clone();
                b.extend(b2.iter().copied());
                out.add_term(a, b, c1 * c2);
            }
        }
        out
    }

    /// `(ε ⊗ id)` applied to the tensor.
    pub fn counit_left(&self) -> UqElement {
        let mut out = UqElement::zero();
        for ((a, b), c) in &self.terms {
            out = out.add(&UqElement::term(c * &counit_word(a), b.clone()));
        }
        out
    }

    pub fn counit_right(&self) -> UqElement {
        let mut out = UqElement::zero();
        for ((a, b), c) in &self.terms {
            out = out.add(&UqElement::term(c * &counit_word(b), a.clone()));
        }
        out
    }
}

fn coproduct_letter(l: Letter) -> TensorElement {
    let one = QScalar::one();
    let i = l.node;
    match l.gen {
        Gen::E => TensorElement::pure(one.clone(), vec![l], vec![])
            .add(&TensorElement::pure(one, vec![Letter::k(i)], vec![l])),
        Gen::F => TensorElement::pure(one.clone(), vec![l], vec![Letter::kinv(i)])
            .add(&TensorElement::pure(one, vec![], vec![l])),
        Gen::K | Gen::KInv => TensorElement::pure(one, vec![l], vec![l]),
    }
}

pub fn coproduct_word(w: &[Letter]) -> TensorElement {
    let mut acc = TensorElement::pure(QScalar::one(), vec![], vec![]);
    for &l in w {
        acc = acc.mul(&coproduct_letter(l));
    }
    acc
}

pub fn coproduct(x: &UqElement) -> TensorElement {
    let mut out = TensorElement::zero();
    for (w, c) in x.terms() {
        let t = coproduct_word(w);
        for ((a, b), d) in t.terms() {
            out.add_term(a.clone(), b.clone(), c * d);
        }
    }
    out
}

fn counit_word(w: &[Letter]) -> QScalar {
    if w.iter().any(|l| matches!(l.gen, Gen::E | Gen::F)) {
        QScalar::zero()
    } else {
        QScalar::one()
    }
}

pub fn counit(x: &UqElement) -> QScalar {
    x.terms().fold(QScalar::zero(), |acc, (w, c)| acc + c * &counit_word(w))
}

pub fn antipode(x: &UqElement) -> UqElement {
    let m1 = QScalar::from_int(-1);
    x.map_letters(
        |l| match l.gen {
            Gen::E => UqElement::term(m1.clone(), vec![Letter::kinv(l.node), l]),
            Gen::F => UqElement::term(m1.clone(), vec![l, Letter::k(l.node)]),
            Gen::K => UqElement::kinv(l.node),
            Gen::KInv => UqElement::k(l.node),
        },
        true,
    )
}

/// Antilinear antihomomorphism; coefficients are real so conjugation is trivial.
pub fn star(x: &UqElement) -> UqElement {
    x.map_letters(
        |l| match l.gen {
            Gen::E => UqElement::word(vec![Letter::k(l.node), Letter::f(l.node)]),
            Gen::F => UqElement::word(vec![Letter::e(l.node), Letter::kinv(l.node)]),
            Gen::K | Gen::KInv => UqElement::letter(l),
        },
        true,
    )
}

/// Antilinear homomorphism fixing the generators.
pub fn bar(x: &UqElement) -> UqElement {
    x.clone()
}

/// One defining relation written as `lhs - rhs`.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub element: UqElement,
}

/// `[n]_{q_i}` for node i.
pub fn q_int_node(dat: &RootDatum, n: i64, i: usize) -> QScalar {
    q_int(n, dat.d(i))
}

/// All defining relations of U_q g as elements that must act by zero.
pub fn defining_relations(dat: &RootDatum) -> Vec<Relation> {
    let l = dat.rank();
    let mut out = Vec::new();
    let one = UqElement::one();
    for i in 0..l {
        out.push(Relation {
            name: format!("K{0}*K{0}^-1 = 1", i + 1),
            element: UqElement::k(i).mul(&UqElement::kinv(i)).sub(&one),
        });
        out.push(Relation {
            name: format!("K{0}^-1*K{0} = 1", i + 1),
            element: UqElement::kinv(i).mul(&UqElement::k(i)).sub(&one),
        });
        for j in 0..l {
            if i < j {
                out.push(Relation {
                    name: format!("K{}*K{} = K{}*K{}", i + 1, j + 1, j + 1, i + 1),
                    element: UqElement::k(i).mul(&UqElement::k(j)).sub(&UqElement::k(j).mul(&UqElement::k(i))),
                });
            }
            let qa = QScalar::q_pow(dat.d(i) as i64 * dat.a(i, j));
            // K_i E_j K_i^{-1} = q_i^{a_ij} E_j
            out.push(Relation {
                name: format!("K{i1}*E{j1}*K{i1}^-1 = q_{i1}^a E{j1}", i1 = i + 1, j1 = j + 1),
                element: UqElement::word(vec![Letter::k(i), Letter::e(j), Letter::kinv(i)])
                    .sub(&UqElement::e(j).scale(&qa)),
            });
            out.push(Relation {
                name: format!("K{i1}*F{j1}*K{i1}^-1 = q_{i1}^-a F{j1}", i1 = i + 1, j1 = j + 1),
                element: UqElement::word(vec![Letter::k(i), Letter::f(j), Letter::kinv(i)])
                    .sub(&UqElement::f(j).scale(&qa.inv())),
            });
            let comm = UqElement::e(i).mul(&UqElement::f(j)).sub(&UqElement::f(j).mul(&UqElement::e(i)));
            let rhs = if i == j {
                let qi = QScalar::q_pow(dat.d(i) as i64);
                let c = (&qi - &qi.inv()).inv();
                UqElement::k(i).sub(&UqElement::kinv(i)).scale(&c)
            } else {
                UqElement::zero()
            };
            out.push(Relation {
                name: format!("E{}*F{} - F{}*E{} = delta (K-K^-1)/(q-q^-1)", i + 1, j + 1, j + 1, i + 1),
                element: comm.sub(&rhs),
            });
            if i != j {
                let n = 1 - dat.a(i, j);
                for (g, name) in [(Gen::E, "E"), (Gen::F, "F")] {
                    let mut el = UqElement::zero();
                    for m in 0..=n {
                        let binom = crate::scalars::q_binom(n, m, dat.d(i)).expect("range");
                        let sign = if m % 2 == 0 { 1 } else { -1 };
                        let mut w = vec![Letter { gen: g, node: i }; (n - m) as usize];
                        w.push(Letter { gen: g, node: j });
                        w.extend(vec![Letter { gen: g, node: i }; m as usize]);
                        el = el.add(&UqElement::term(binom.scale_int(sign), w));
                    }
                    out.push(Relation { name: format!("Serre {name}{}{}", i + 1, j + 1), element: el });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coproduct_examples() {
        assert_eq!(coproduct(&UqElement::k(0)).len(), 1);
        let one = coproduct(&UqElement::one());
        assert_eq!(one.len(), 1);
        let ef = coproduct(&UqElement::e(0).mul(&UqElement::f(0)));
        assert_eq!(ef.len(), 4);
    }

    #[test]
    fn counit_examples() {
        assert!(counit(&UqElement::k(0).mul(&UqElement::kinv(1))).is_one());
        assert!(counit(&UqElement::e(0)).is_zero());
        let x = UqElement::one().add(&UqElement::e(0).mul(&UqElement::f(0)));
        assert!(counit(&x).is_one());
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(antipode(&UqElement::k(0)), UqElement::kinv(0));
        assert_eq!(antipode(&UqElement::one()), UqElement::one());
        let x = antipode(&UqElement::e(0).mul(&UqElement::f(1)));
        let expected = UqElement::word(vec![Letter::f(1), Letter::k(1), Letter::kinv(0), Letter::e(0)]);
        assert_eq!(x, expected);
    }

    #[test]
    fn star_examples() {
        assert_eq!(star(&UqElement::e(0)), UqElement::word(vec![Letter::k(0), Letter::f(0)]));
        // E^** = (KF)^* = F^* K^* = E K^{-1} K, which is E only modulo K K^{-1} = 1.
        let ss = star(&star(&UqElement::e(0)));
        assert_eq!(ss, UqElement::word(vec![Letter::e(0), Letter::kinv(0), Letter::k(0)]));
        let qe = UqElement::e(0).scale(&QScalar::q_pow(1));
        assert_eq!(bar(&qe), qe);
    }

    #[test]
    fn word_syntax() {
        let w = parse_word("E1*F2*K1^-1").unwrap();
        assert_eq!(w, vec![Letter::e(0), Letter::f(1), Letter::kinv(0)]);
        assert!(parse_word("X1").is_err());
        assert!(parse_word("E0").is_err());
        assert_eq!(parse_word("").unwrap(), Vec::<Letter>::new());
    }
}
