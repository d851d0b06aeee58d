use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::flag::{FlagAlgebra, GradedFunction, LocalizedFunction};
use crate::linalg::{is_zero_vector, Matrix};
use crate::par::Exec;
use crate::rootdata::Weight;
use crate::scalars::QScalar;
use crate::uqg::{counit, defining_relations, Gen, Letter, UqElement};

use super::continued::{Continued, ContinuedOperator, Monomial};
use super::spectral::{brute_geometric, default_sweep, interpolation_coefficients, split_polynomial, Spectrum, Target};
use super::PrincipalError;

/// Longest Krylov sequence accepted for one correction vector.
const MAX_KRYLOV: usize = 8;

/// Which spherical vectors carry a continuous exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SeriesMode {
    /// `π_{k,u}`: only ψ_k (0-based index) is raised to the power u.
    Degenerate(usize),
    /// `π_𝐮`: every ψ_j gets its own exponent u_j.
    Nondegenerate,
}

/// `c(𝐯) ∋ coeff(𝐯) · z`, one summand of `X(Ψ^𝐯)Ψ^{−𝐯}`.
#[derive(Clone, Debug)]
pub struct CorrectionTerm {
    pub coeff: Continued,
    pub z: LocalizedFunction,
}

/// `π(X)(gΨ^{−𝐧}) = X(g)Ψ^{−𝐧} + K(g)·c_X(𝐮−𝐧)·Ψ^{−𝐧}` (K present for X = E_i only).
#[derive(Clone, Debug)]
pub struct Correction {
    pub letter: Letter,
    pub twist: bool,
    pub terms: Vec<CorrectionTerm>,
}

/// Spectral data of one Krylov space met while building corrections.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralRecord {
    pub generator: String,
    /// 1-based index of the conjugating ψ.
    pub psi: usize,
    pub krylov_dim: usize,
    /// `(m, multiplicity)` for eigenvalues `q^{m/D}`.
    pub exponents: Vec<(i64, usize)>,
    /// `S(A,u)` at `u ∈ {−4..6}` equals the brute-force geometric sums.
    pub contract_ok: bool,
}

/// Vector-valued element of the Continued ring: per monomial, a sum of right fractions
/// kept apart by denominator.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ContinuedVector {
    terms: BTreeMap<Monomial, BTreeMap<Vec<u32>, GradedFunction>>,
}

impl ContinuedVector {
    pub fn zero() -> Self {
        ContinuedVector::default()
    }

    pub fn from_fraction(arity: usize, x: &LocalizedFunction) -> Self {
        let mut out = ContinuedVector::zero();
        out.add_entry(Monomial::one(arity), x.den.clone(), x.num.clone());
        out
    }

    pub fn add_entry(&mut self, m: Monomial, den: Vec<u32>, g: GradedFunction) {
        if g.is_zero() {
            return;
        }
        let per = self.terms.entry(m.clone()).or_default();
        let merged = match per.get(&den) {
            Some(old) => old.add(&g),
            None => g,
        };
        if merged.is_zero() {
            per.remove(&den);
        } else {
            per.insert(den, merged);
        }
        if per.is_empty() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &ContinuedVector) -> ContinuedVector {
        let mut out = self.clone();
        for (m, per) in &o.terms {
            for (den, g) in per {
                out.add_entry(m.clone(), den.clone(), g.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &QScalar) -> ContinuedVector {
        let mut out = ContinuedVector::zero();
        for (m, per) in &self.terms {
            for (den, g) in per {
                out.add_entry(m.clone(), den.clone(), g.scale(c));
            }
        }
        out
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Monomial, &Vec<u32>, &GradedFunction)> {
        self.terms.iter().flat_map(|(m, per)| per.iter().map(move |(d, g)| (m, d, g)))
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Outcome of one relation over all guarded sources.
#[derive(Clone, Debug, Serialize)]
pub struct RelationStatus {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DjReport {
    pub guard: u32,
    pub sources: usize,
    pub relations: Vec<RelationStatus>,
}

impl DjReport {
    pub fn all_passed(&self) -> bool {
        self.relations.iter().all(|r| r.passed)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecializationReport {
    pub points: Vec<Vec<i64>>,
    pub comparisons: usize,
    pub mismatches: Vec<String>,
}

impl SpecializationReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// `π_{k,u}` or `π_𝐮` on the localized algebra, with u kept symbolic.
pub struct PrincipalSeries {
    pub alg: Arc<FlagAlgebra>,
    pub mode: SeriesMode,
    /// ψ index carried by each parameter, in product order.
    pub params: Vec<usize>,
    pub level: u32,
    pub root: u32,
    corrections: Vec<Correction>,
    pub spectra: Vec<SpectralRecord>,
}

fn letter_name(l: Letter) -> String {
    let i = l.node + 1;
    match l.gen {
        Gen::E => format!("E{i}"),
        Gen::F => format!("F{i}"),
        Gen::K => format!("K{i}"),
        Gen::KInv => format!("K{i}^-1"),
    }
}

/// Exponent candidates `±D(x, y)` for x, y among 0, the μ_k and the simple roots.
pub fn pairing_hints(alg: &FlagAlgebra) -> Vec<i64> {
    let dat = &alg.pair.datum;
    let mut ws: Vec<Weight> = vec![Weight::zero(dat.rank())];
    ws.extend((0..alg.rank()).map(|k| alg.mu(k).clone()));
    ws.extend(dat.simple_roots.iter().cloned());
    let mut hints = Vec::new();
    for x in &ws {
        for y in &ws {
            let p = dat.scaled_pairing(x, y);
            hints.push(-p);
            hints.push(p);
        }
    }
    hints.sort();
    hints.dedup();
    hints
}

impl PrincipalSeries {
    /// `π_{k,u}` (k is 0-based) valid up to denominator level N.
    pub fn degenerate(alg: Arc<FlagAlgebra>, k: usize, level: u32) -> Result<Self, PrincipalError> {
        if k >= alg.rank() {
            return Err(PrincipalError::Invalid(format!("k = {} but there are {} spherical generators", k + 1, alg.rank())));
        }
        PrincipalSeries::build(alg, SeriesMode::Degenerate(k), vec![k], level)
    }

    /// `π_𝐮` with one parameter per spherical generator.
    pub fn nondegenerate(alg: Arc<FlagAlgebra>, level: u32) -> Result<Self, PrincipalError> {
        let params = (0..alg.rank()).collect();
        PrincipalSeries::build(alg, SeriesMode::Nondegenerate, params, level)
    }

    fn build(alg: Arc<FlagAlgebra>, mode: SeriesMode, params: Vec<usize>, level: u32) -> Result<Self, PrincipalError> {
        let root = alg.pair.datum.root_order;
        let mut rep = PrincipalSeries { alg, mode, params, level, root, corrections: Vec::new(), spectra: Vec::new() };
        let hints = pairing_hints(&rep.alg);
        for i in 0..rep.alg.pair.rank() {
            for (letter, twist) in [(Letter::e(i), true), (Letter::f(i), false)] {
                let terms = rep.correction_terms(letter, &hints)?;
                if !terms.is_empty() {
                    rep.corrections.push(Correction { letter, twist, terms });
                }
            }
        }
        Ok(rep)
    }

    pub fn arity(&self) -> usize {
        self.params.len()
    }

    pub fn corrections(&self) -> &[Correction] {
        &self.corrections
    }

    fn unit_den(&self, k: usize) -> Vec<u32> {
        let mut d = vec![0; self.alg.rank()];
        d[k] = 1;
        d
    }

    /// Krylov space of x under A_k with its split minimal polynomial; records the spectrum.
    fn spectral(&mut self, name: &str, k: usize, x: &LocalizedFunction, hints: &[i64]) -> Result<(Vec<LocalizedFunction>, Spectrum), PrincipalError> {
        let kr = self.alg.krylov(k, x, MAX_KRYLOV)?;
        let spectrum = split_polynomial(&kr.min_poly(), self.root, hints, default_sweep(self.root))?;
        let comp = kr.companion();
        let s = interpolation_coefficients(&spectrum, Target::Geometric, 1, 0);
        let mut mats = Vec::with_capacity(s.len());
        let mut cur = Matrix::identity(comp.rows());
        for _ in 0..s.len() {
            mats.push(cur.clone());
            cur = cur.mul(&comp);
        }
        let op = ContinuedOperator::combine(&s, &mats);
        let contract_ok = (-4..=6).all(|n| op.specialize(&[n], self.root) == brute_geometric(&comp, n));
        self.spectra.push(SpectralRecord {
            generator: name.to_string(),
            psi: k + 1,
            krylov_dim: kr.dim(),
            exponents: spectrum.roots.clone(),
            contract_ok,
        });
        Ok((kr.vectors, spectrum))
    }

    /// `c_X(𝐯) = Σ_p (Π_{p'<p} A_{p'}^{v_{p'}}) S_{v_p}(A_p) e_p` with `e_p = X(ψ_p)ψ_p^{−1}`.
    fn correction_terms(&mut self, letter: Letter, hints: &[i64]) -> Result<Vec<CorrectionTerm>, PrincipalError> {
        let arity = self.arity();
        let name = letter_name(letter);
        let mut out = Vec::new();
        for p in 0..arity {
            let k = self.params[p];
            let num = self.alg.act_graded(letter, &self.alg.psi_function(k))?;
            if num.is_zero() {
                continue;
            }
            let e = LocalizedFunction::new(num, self.unit_den(k));
            let (vectors, spectrum) = self.spectral(&name, k, &e, hints)?;
            let coeffs = interpolation_coefficients(&spectrum, Target::Geometric, arity, p);
            let mut terms: Vec<CorrectionTerm> = coeffs.into_iter().zip(vectors).map(|(coeff, z)| CorrectionTerm { coeff, z }).collect();
            for pp in (0..p).rev() {
                let kk = self.params[pp];
                let mut next = Vec::new();
                for t in terms {
                    let (vs, sp) = self.spectral(&name, kk, &t.z, hints)?;
                    let pc = interpolation_coefficients(&sp, Target::Power, arity, pp);
                    for (c, z) in pc.into_iter().zip(vs) {
                        next.push(CorrectionTerm { coeff: t.coeff.mul(&c), z });
                    }
                }
                terms = next;
            }
            for t in terms {
                if t.coeff.is_zero() {
                    continue;
                }
                let z = self.alg.canonicalize(&t.z)?;
                out.push(CorrectionTerm { coeff: t.coeff, z });
            }
        }
        self.reduce_terms(out)
    }

    /// Rewrite the terms over a basis of their fractions, preferring small denominators.
    fn reduce_terms(&self, mut terms: Vec<CorrectionTerm>) -> Result<Vec<CorrectionTerm>, PrincipalError> {
        terms.sort_by_key(|t| t.z.den.iter().sum::<u32>());
        let mut basis: Vec<CorrectionTerm> = Vec::new();
        for t in terms {
            if !basis.is_empty() {
                let mut fracs: Vec<LocalizedFunction> = basis.iter().map(|b| b.z.clone()).collect();
                fracs.push(t.z.clone());
                let (_, coords) = self.alg.common_coords(&fracs)?;
                let target = coords.last().expect("target coordinates").clone();
                let m = Matrix::from_cols(&coords[..basis.len()], target.len());
                if let Some(x) = m.solve(&target) {
                    for (b, c) in basis.iter_mut().zip(&x) {
                        if !c.is_zero() {
                            b.coeff = b.coeff.add(&t.coeff.scale(c));
                        }
                    }
                    continue;
                }
            }
            basis.push(t);
        }
        basis.retain(|b| !b.coeff.is_zero());
        Ok(basis)
    }

    fn correction(&self, l: Letter) -> Option<&Correction> {
        self.corrections.iter().find(|c| c.letter == l)
    }

    fn shifted(&self, c: &Continued, den: &[u32]) -> Continued {
        let mut out = c.clone();
        for (p, &k) in self.params.iter().enumerate() {
            out = out.shift(p, den[k] as i64, self.root);
        }
        out
    }

    /// `π(l) x`.
    pub fn act(&self, l: Letter, x: &ContinuedVector) -> Result<ContinuedVector, PrincipalError> {
        let mut out = ContinuedVector::zero();
        let corr = self.correction(l);
        // Group by fraction so the flag work is shared between monomials.
        let mut by_fraction: Vec<(&Vec<u32>, &GradedFunction, Vec<&Monomial>)> = Vec::new();
        for (m, den, g) in x.entries() {
            match by_fraction.iter_mut().find(|(d, h, _)| *d == den && *h == g) {
                Some(slot) => slot.2.push(m),
                None => by_fraction.push((den, g, vec![m])),
            }
        }
        for (den, g, monos) in by_fraction {
            let plain = self.alg.canonicalize(&LocalizedFunction::new(self.alg.act_graded(l, g)?, den.clone()))?;
            if !plain.is_zero() {
                for m in &monos {
                    out.add_entry((*m).clone(), plain.den.clone(), plain.num.clone());
                }
            }
            let Some(c) = corr else { continue };
            let left = if c.twist { self.alg.act_graded(Letter::k(l.node), g)? } else { g.clone() };
            for t in &c.terms {
                let prod = self.alg.multiply(&left, &t.z.num)?;
                let new_den: Vec<u32> = den.iter().zip(&t.z.den).map(|(a, b)| a + b).collect();
                let lf = self.alg.canonicalize(&LocalizedFunction::new(prod, new_den))?;
                if lf.is_zero() {
                    continue;
                }
                let coeff = self.shifted(&t.coeff, den);
                for m in &monos {
                    for (m2, s) in coeff.terms() {
                        out.add_entry(m.mul(m2), lf.den.clone(), lf.num.scale(s));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `π(ξ) x` with word suffixes memoized across calls.
    pub fn act_element(&self, xi: &UqElement, x: &ContinuedVector, memo: &mut HashMap<Vec<Letter>, ContinuedVector>) -> Result<ContinuedVector, PrincipalError> {
        let mut out = ContinuedVector::zero();
        for (w, c) in xi.terms() {
            let v = self.act_word(w, x, memo)?;
            out = out.add(&v.scale(c));
        }
        Ok(out)
    }

    fn act_word(&self, w: &[Letter], x: &ContinuedVector, memo: &mut HashMap<Vec<Letter>, ContinuedVector>) -> Result<ContinuedVector, PrincipalError> {
        if w.is_empty() {
            return Ok(x.clone());
        }
        if let Some(v) = memo.get(w) {
            return Ok(v.clone());
        }
        let inner = self.act_word(&w[1..], x, memo)?;
        let v = if inner.is_empty() { inner } else { self.act(w[0], &inner)? };
        memo.insert(w.to_vec(), v.clone());
        Ok(v)
    }

    /// `None` if x is the zero element of the Continued ring, otherwise a witness.
    pub fn zero_witness(&self, x: &ContinuedVector) -> Result<Option<String>, PrincipalError> {
        for m in x.monomials() {
            let acc = self.collapse(x.entries().filter(|(mm, _, _)| *mm == m).map(|(_, d, g)| (d, g)))?;
            if !acc.is_zero() {
                let (lam, v) = acc.num.components().next().expect("nonzero numerator");
                let k = v.iter().position(|c| !c.is_zero()).unwrap_or(0);
                return Ok(Some(format!(
                    "coefficient of {} is nonzero: over ψ^{:?}, component L({:?}) entry {} = {}",
                    Continued::term(m.clone(), QScalar::one()),
                    acc.den,
                    lam.0,
                    k,
                    v[k]
                )));
            }
        }
        Ok(None)
    }

    /// Sum of fractions; equal denominators are merged and reduced before any lifting.
    fn collapse<'a>(&self, fracs: impl Iterator<Item = (&'a Vec<u32>, &'a GradedFunction)>) -> Result<LocalizedFunction, PrincipalError> {
        let mut grouped: BTreeMap<Vec<u32>, GradedFunction> = BTreeMap::new();
        for (d, g) in fracs {
            let e = grouped.entry(d.clone()).or_default();
            *e = e.add(g);
        }
        let mut reduced: BTreeMap<Vec<u32>, GradedFunction> = BTreeMap::new();
        for (d, g) in grouped {
            if g.is_zero() {
                continue;
            }
            let c = self.alg.canonicalize(&LocalizedFunction::new(g, d))?;
            let e = reduced.entry(c.den).or_default();
            *e = e.add(&c.num);
        }
        let mut acc = LocalizedFunction::zero(self.alg.rank());
        for (d, g) in reduced {
            if !g.is_zero() {
                acc = self.alg.lf_add(&acc, &LocalizedFunction::new(g, d))?;
            }
        }
        Ok(acc)
    }

    /// Basis of the guarded components: `L(g Σ μ_p) Ψ^{−g}` over the parameters.
    pub fn guarded_sources(&self, guard: u32) -> Result<Vec<LocalizedFunction>, PrincipalError> {
        let mut den = vec![0; self.alg.rank()];
        for &k in &self.params {
            den[k] = guard;
        }
        let lam = self.alg.level_weight(&den);
        let m = self.alg.module(&lam)?;
        Ok((0..m.dim()).map(|j| LocalizedFunction::new(GradedFunction::homogeneous(lam.clone(), m.unit(j)), den.clone())).collect())
    }

    /// Every defining relation applied to every guarded source must vanish identically in u.
    pub fn verify_dj_relations(&self, guard: u32, exec: Exec) -> Result<DjReport, PrincipalError> {
        let rels = defining_relations(&self.alg.pair.datum);
        let sources = self.guarded_sources(guard)?;
        let arity = self.arity();
        let per_source: Vec<Result<Vec<Option<String>>, PrincipalError>> = exec.map(&sources, |src| {
            let x = ContinuedVector::from_fraction(arity, src);
            let mut memo = HashMap::new();
            rels.iter()
                .map(|r| {
                    let v = self.act_element(&r.element, &x, &mut memo)?;
                    self.zero_witness(&v)
                })
                .collect()
        });
        let mut statuses: Vec<RelationStatus> = rels.iter().map(|r| RelationStatus { name: r.name.clone(), passed: true, witness: None }).collect();
        for (si, res) in per_source.into_iter().enumerate() {
            for (st, w) in statuses.iter_mut().zip(res?) {
                if let Some(w) = w {
                    if st.passed {
                        st.passed = false;
                        st.witness = Some(format!("source {si}: {w}"));
                    }
                }
            }
        }
        Ok(DjReport { guard, sources: sources.len(), relations: statuses })
    }

    /// `Σ_m m(u0) · fraction_m` as one fraction.
    pub fn specialize_vector(&self, x: &ContinuedVector, u0: &[i64]) -> Result<LocalizedFunction, PrincipalError> {
        let mut acc = LocalizedFunction::zero(self.alg.rank());
        let mut grouped: BTreeMap<Vec<u32>, GradedFunction> = BTreeMap::new();
        for (m, den, g) in x.entries() {
            let c = Continued::term(m.clone(), QScalar::one()).specialize(u0, self.root);
            if c.is_zero() {
                continue;
            }
            let e = grouped.entry(den.clone()).or_default();
            *e = e.add(&g.scale(&c));
        }
        for (den, g) in grouped {
            acc = self.alg.lf_add(&acc, &LocalizedFunction::new(g, den))?;
        }
        Ok(acc)
    }

    /// `x ψ_k^a` for any integer a.
    fn times_psi_power(&self, x: &LocalizedFunction, k: usize, a: i64) -> Result<LocalizedFunction, PrincipalError> {
        let mut out = x.clone();
        if a >= 0 {
            let cancel = (a as u32).min(out.den[k]);
            out.den[k] -= cancel;
            out.num = self.alg.right_psi(&out.num, k, a as u32 - cancel)?;
        } else {
            out.den[k] += (-a) as u32;
        }
        Ok(out)
    }

    /// `l(x Ψ^{u0}) Ψ^{−u0}` computed directly in the localized algebra.
    pub fn direct_action(&self, l: Letter, x: &LocalizedFunction, u0: &[i64]) -> Result<LocalizedFunction, PrincipalError> {
        let mut y = x.clone();
        for (p, &k) in self.params.iter().enumerate() {
            y = self.times_psi_power(&y, k, u0[p])?;
        }
        let mut z = self.alg.localized_action(l, &y)?;
        for (p, &k) in self.params.iter().enumerate().rev() {
            z = self.times_psi_power(&z, k, -u0[p])?;
        }
        Ok(z)
    }

    /// Compare `π_{u0}(l)` with the direct action for every generator letter, source and point.
    pub fn integer_specialization(&self, points: &[Vec<i64>], sources: &[LocalizedFunction], exec: Exec) -> Result<SpecializationReport, PrincipalError> {
        let n = self.alg.pair.rank();
        let mut letters = Vec::new();
        for i in 0..n {
            letters.extend([Letter::e(i), Letter::f(i), Letter::k(i), Letter::kinv(i)]);
        }
        let arity = self.arity();
        let mut jobs = Vec::new();
        for (si, s) in sources.iter().enumerate() {
            for &l in &letters {
                jobs.push((si, s, l));
            }
        }
        let results: Vec<Result<Vec<String>, PrincipalError>> = exec.map(&jobs, |(si, s, l)| {
            let sym = self.act(*l, &ContinuedVector::from_fraction(arity, s))?;
            let mut bad = Vec::new();
            for u0 in points {
                let a = self.specialize_vector(&sym, u0)?;
                let b = self.direct_action(*l, s, u0)?;
                if !self.alg.lf_equals(&a, &b)? {
                    bad.push(format!("{} on source {} at u = {:?}", letter_name(*l), si, u0));
                }
            }
            Ok(bad)
        });
        let mut mismatches = Vec::new();
        for r in results {
            mismatches.extend(r?);
        }
        Ok(SpecializationReport { points: points.to_vec(), comparisons: jobs.len() * points.len(), mismatches })
    }

    /// `π(ξ)1 = ε(ξ)1` for the generators of U_q𝔨, identically in u.
    pub fn spherical_vector_check(&self) -> Result<Vec<(String, bool)>, PrincipalError> {
        let l0 = self.alg.pair.l0;
        let one = ContinuedVector::from_fraction(self.arity(), &self.alg.lf_one());
        let mut out = Vec::new();
        for i in 0..self.alg.pair.rank() {
            let mut gens = vec![Letter::k(i), Letter::kinv(i)];
            if i != l0 {
                gens.extend([Letter::e(i), Letter::f(i)]);
            }
            for l in gens {
                let v = self.act(l, &one)?;
                let eps = counit(&UqElement::letter(l));
                let diff = v.add(&one.scale(&-eps));
                out.push((letter_name(l), self.zero_witness(&diff)?.is_none()));
            }
        }
        Ok(out)
    }

    /// Matrix of `π(l)` from the basis of `L(nΣμ)Ψ^{−n}` to the basis of the target level
    /// (`n+1` for letters with a correction, n otherwise).
    pub fn operator_block(&self, l: Letter, n: u32) -> Result<ContinuedOperator, PrincipalError> {
        let sources = self.guarded_sources(n)?;
        let target_level = if self.correction(l).is_some() { n + 1 } else { n };
        let mut tden = vec![0; self.alg.rank()];
        for &k in &self.params {
            tden[k] = target_level;
        }
        let tlam = self.alg.level_weight(&tden);
        let rows = self.alg.module(&tlam)?.dim();
        let mut op = ContinuedOperator::zeros(rows, sources.len());
        for (c, s) in sources.iter().enumerate() {
            let v = self.act(l, &ContinuedVector::from_fraction(self.arity(), s))?;
            for (m, den, g) in v.entries() {
                if den.iter().zip(&tden).any(|(a, b)| a > b) {
                    return Err(PrincipalError::Inconsistent(format!("π({}) leaves level {} on source {}", letter_name(l), target_level, c)));
                }
                let lifted = self.alg.lift(&LocalizedFunction::new(g.clone(), den.clone()), &tden)?;
                let Some(col) = lifted.component(&tlam) else { continue };
                if is_zero_vector(col) {
                    continue;
                }
                for (r, x) in col.iter().enumerate() {
                    if !x.is_zero() {
                        let e = op.get_mut(r, c);
                        *e = e.add(&Continued::term(m.clone(), x.clone()));
                    }
                }
            }
        }
        Ok(op)
    }
}
