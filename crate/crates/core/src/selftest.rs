//! Self-test battery over the four fixture pairs, one check per acceptance criterion.

use std::sync::{Arc, OnceLock};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::flag::{conjugation_operator, ore_stabilization_check, FlagAlgebra, GradedFunction, LocalizedFunction};
use crate::linalg::{Matrix, Vector};
use crate::modules::{invariant_vector, k_highest_vectors, simple_module, simple_module_for, star_on_spherical, WeightModule};
use crate::par::Exec;
use crate::principal::{
    check_geometric_contract, default_sweep, geometric_sum, minimal_polynomial, pairing_hints, split_polynomial, PrincipalSeries,
};
use crate::rootdata::{spherical_weight_semigroup, strongly_orthogonal_roots, CartanType, HermitianPair, Weight};
use crate::scalars::{pole_free_on_unit_interval, QScalar};
use crate::uqg::{defining_relations, Letter, UqElement};

/// A Hermitian pair used by the battery; `l0` is 1-based.
#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub kind: CartanType,
    pub rank: usize,
    pub l0: usize,
    /// Expected number of strongly orthogonal roots.
    pub real_rank: usize,
    /// Largest coordinate sum the flag algebra may build.
    pub bound: i64,
}

pub const FIXTURES: [Fixture; 4] = [
    Fixture { name: "A1", kind: CartanType::A, rank: 1, l0: 1, real_rank: 1, bound: 16 },
    Fixture { name: "A2", kind: CartanType::A, rank: 2, l0: 1, real_rank: 1, bound: 10 },
    Fixture { name: "C2", kind: CartanType::C, rank: 2, l0: 2, real_rank: 2, bound: 10 },
    Fixture { name: "A3", kind: CartanType::A, rank: 3, l0: 2, real_rank: 2, bound: 6 },
];

impl Fixture {
    pub fn pair(&self) -> HermitianPair {
        HermitianPair::of_type(self.kind, self.rank, self.l0).expect("fixture pair")
    }
}

/// Outcome of one criterion.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

pub const TITLES: [&str; 12] = [
    "relation suite",
    "Shapovalov nondegeneracy",
    "dimension oracle",
    "sphericity",
    "commutativity of spherical vectors",
    "integral domain sampling",
    "Ore stabilization",
    "spectrum",
    "continuation contract",
    "principal series",
    "star involution",
    "Leibniz on localization",
];

/// One principal series case: fixture index, parameter (None for π_𝐮), level, source guard.
struct SeriesCase {
    fixture: usize,
    k: Option<usize>,
    level: u32,
    guard: u32,
}

const SERIES_CASES: [SeriesCase; 5] = [
    SeriesCase { fixture: 0, k: Some(0), level: 6, guard: 4 },
    SeriesCase { fixture: 1, k: Some(0), level: 3, guard: 1 },
    SeriesCase { fixture: 2, k: Some(0), level: 2, guard: 0 },
    SeriesCase { fixture: 2, k: Some(1), level: 2, guard: 0 },
    SeriesCase { fixture: 3, k: None, level: 2, guard: 0 },
];

/// Largest numerator level of the random fractions in the Leibniz battery.
const LEIBNIZ_LEVELS: [i64; 4] = [2, 2, 2, 2];

/// Whether the left factor may carry a denominator; on A3 the Ore swap needs modules past the bound.
const LEIBNIZ_LEFT_DEN: [bool; 4] = [true, true, true, false];

/// Conjugation-operator levels per fixture.
const SPECTRUM_LEVELS: [u32; 4] = [4, 2, 2, 2];

/// A conjugation operator met while sweeping the isotypic components.
struct Encountered {
    label: String,
    root: u32,
    hints: Vec<i64>,
    matrix: Matrix,
}

/// Shared state; expensive objects are built once and reused across criteria.
pub struct Selftest {
    pub seed: u64,
    pub exec: Exec,
    algebras: [OnceLock<Result<Arc<FlagAlgebra>, String>>; 4],
    series: OnceLock<Vec<Result<PrincipalSeries, String>>>,
    operators: OnceLock<Result<Vec<Encountered>, String>>,
}

fn fail(detail: impl Into<String>) -> (bool, String) {
    (false, detail.into())
}

impl Selftest {
    pub fn new(seed: u64, exec: Exec) -> Self {
        Selftest { seed, exec, algebras: Default::default(), series: OnceLock::new(), operators: OnceLock::new() }
    }

    fn algebra(&self, i: usize) -> Result<Arc<FlagAlgebra>, String> {
        self.algebras[i]
            .get_or_init(|| {
                let fx = &FIXTURES[i];
                FlagAlgebra::new(fx.pair(), fx.bound).map(Arc::new).map_err(|e| format!("{}: {e}", fx.name))
            })
            .clone()
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    pub fn run(&self, id: u32) -> CriterionResult {
        let start = Instant::now();
        let (passed, detail) = match id {
            1 => self.relation_suite(),
            2 => self.shapovalov(),
            3 => self.dimensions(),
            4 => self.sphericity(),
            5 => self.commutativity(),
            6 => self.integral_domain(),
            7 => self.ore(),
            8 => self.spectrum(),
            9 => self.continuation(),
            10 => self.principal(),
            11 => self.star(),
            12 => self.leibniz(),
            _ => fail(format!("no criterion {id}")),
        };
        let title = TITLES.get(id.wrapping_sub(1) as usize).copied().unwrap_or("unknown");
        CriterionResult { id, title, passed, detail, seconds: start.elapsed().as_secs_f64() }
    }

    pub fn run_all(&self) -> Vec<CriterionResult> {
        (1..=12).map(|id| self.run(id)).collect()
    }

    /// Every fixture module with coordinate sum at most four.
    fn small_modules(&self) -> Vec<(usize, Weight, Result<WeightModule, String>)> {
        let mut jobs = Vec::new();
        for (fi, fx) in FIXTURES.iter().enumerate() {
            for w in fx.pair().datum.dominant_weights(4) {
                jobs.push((fi, w));
            }
        }
        let built = self.exec.map(&jobs, |(fi, w)| simple_module(&FIXTURES[*fi].pair().datum, w).map_err(|e| e.to_string()));
        jobs.into_iter().zip(built).map(|((fi, w), m)| (fi, w, m)).collect()
    }

    fn relation_suite(&self) -> (bool, String) {
        let mods = self.small_modules();
        let rels: Vec<_> = FIXTURES.iter().map(|fx| defining_relations(&fx.pair().datum)).collect();
        let res = self.exec.map(&mods, |(fi, w, m)| match m {
            Ok(m) => m.relation_failures(&rels[*fi]).into_iter().map(|f| format!("{} {:?}: {f}", FIXTURES[*fi].name, w.0)).collect(),
            Err(e) => vec![e.clone()],
        });
        let bad: Vec<String> = res.into_iter().flatten().collect();
        let nrel: usize = rels.iter().map(|r| r.len()).sum();
        if bad.is_empty() {
            (true, format!("{} relations on {} modules vanish", nrel, mods.len()))
        } else {
            (false, format!("{} failures, first: {}", bad.len(), bad[0]))
        }
    }

    fn shapovalov(&self) -> (bool, String) {
        let mods = self.small_modules();
        let res = self.exec.map(&mods, |(fi, w, m)| -> Result<usize, String> {
            let m = m.as_ref().map_err(|e| e.clone())?;
            for bi in 0..m.blocks.len() {
                let det = m.gram(bi).det();
                if det.is_zero() {
                    return Err(format!("{} {:?}: singular Gram block {:?}", FIXTURES[*fi].name, w.0, m.blocks[bi].weight.0));
                }
                if !pole_free_on_unit_interval(&det).pole_free {
                    return Err(format!("{} {:?}: Gram determinant has a pole in (0,1] on {:?}", FIXTURES[*fi].name, w.0, m.blocks[bi].weight.0));
                }
            }
            Ok(m.blocks.len())
        });
        let mut blocks = 0;
        for r in res {
            match r {
                Ok(n) => blocks += n,
                Err(e) => return (false, e),
            }
        }
        (true, format!("{blocks} Gram blocks nonsingular and pole-free"))
    }

    fn dimensions(&self) -> (bool, String) {
        let mods = self.small_modules();
        let mut checked = 0;
        for (fi, w, m) in &mods {
            let m = match m {
                Ok(m) => m,
                Err(e) => return fail(e.clone()),
            };
            let expect = FIXTURES[*fi].pair().datum.weyl_dimension(w) as usize;
            if m.dim() != expect {
                return fail(format!("{} {:?}: dim {} but Weyl gives {}", FIXTURES[*fi].name, w.0, m.dim(), expect));
            }
            checked += 1;
        }
        (checked >= 12, format!("{checked} weights agree with the Weyl dimension formula"))
    }

    fn sphericity(&self) -> (bool, String) {
        let mut parts = Vec::new();
        for fx in &FIXTURES {
            let pair = fx.pair();
            let sph = spherical_weight_semigroup(&pair, 4, |w| {
                let m = simple_module(&pair.datum, w).map_err(|e| e.to_string())?;
                Ok(invariant_vector(&pair, &m).len() == 1)
            });
            let sph = match sph {
                Ok(s) => s,
                Err(e) => return fail(format!("{}: {e}", fx.name)),
            };
            let cascade = match strongly_orthogonal_roots(&pair) {
                Ok(c) => c.rank,
                Err(e) => return fail(format!("{}: {e}", fx.name)),
            };
            let n = sph.fundamental_spherical.len();
            if n != fx.real_rank || cascade != fx.real_rank {
                return fail(format!("{}: {} generators, cascade length {}, expected {}", fx.name, n, cascade, fx.real_rank));
            }
            if fx.name == "A1" && sph.fundamental_spherical != vec![Weight(vec![2])] {
                return fail(format!("A1 generator {:?}", sph.fundamental_spherical));
            }
            let gens: Vec<Vec<i64>> = sph.fundamental_spherical.iter().map(|w| w.0.clone()).collect();
            parts.push(format!("{} μ={:?}", fx.name, gens));
        }
        (true, parts.join(", "))
    }

    fn commutativity(&self) -> (bool, String) {
        for fi in [2, 3] {
            let alg = match self.algebra(fi) {
                Ok(a) => a,
                Err(e) => return fail(e),
            };
            let p1 = alg.psi_function(0);
            let p2 = alg.psi_function(1);
            let ok = match (alg.multiply(&p1, &p2), alg.multiply(&p2, &p1)) {
                (Ok(a), Ok(b)) => a == b,
                (Err(e), _) | (_, Err(e)) => return fail(e.to_string()),
            };
            if !ok {
                return fail(format!("ψ1ψ2 ≠ ψ2ψ1 on {}", FIXTURES[fi].name));
            }
        }
        (true, "ψ1ψ2 = ψ2ψ1 on C2 and A3".into())
    }

    /// A random nonzero element of one weight block of L(λ), λ of level at most `max_level`.
    fn random_homogeneous(&self, alg: &FlagAlgebra, rng: &mut ChaCha8Rng, max_level: i64) -> Result<GradedFunction, String> {
        let dat = &alg.pair.datum;
        let ws: Vec<Weight> = dat.dominant_weights(max_level).into_iter().filter(|w| !w.is_zero()).collect();
        let lam = ws[rng.gen_range(0..ws.len())].clone();
        let m = alg.module(&lam).map_err(|e| e.to_string())?;
        let b = rng.gen_range(0..m.blocks.len());
        let mut local: Vector = (0..m.blocks[b].dim).map(|_| QScalar::from_int(rng.gen_range(-3..=3))).collect();
        if local.iter().all(|x| x.is_zero()) {
            local[0] = QScalar::one();
        }
        Ok(GradedFunction::homogeneous(lam, m.extend(&local, b)))
    }

    fn integral_domain(&self) -> (bool, String) {
        let levels = [4, 2, 2, 2];
        for fi in 0..FIXTURES.len() {
            let alg = match self.algebra(fi) {
                Ok(a) => a,
                Err(e) => return fail(e),
            };
            let mut rng = self.rng(600 + fi as u64);
            let mut pairs = Vec::new();
            for _ in 0..50 {
                let a = self.random_homogeneous(&alg, &mut rng, levels[fi]);
                let b = self.random_homogeneous(&alg, &mut rng, levels[fi]);
                match (a, b) {
                    (Ok(a), Ok(b)) => pairs.push((a, b)),
                    (Err(e), _) | (_, Err(e)) => return fail(e),
                }
            }
            let res = self.exec.map(&pairs, |(a, b)| alg.multiply(a, b).map(|p| !p.is_zero()).map_err(|e| e.to_string()));
            for (t, r) in res.into_iter().enumerate() {
                match r {
                    Ok(true) => {}
                    Ok(false) => return fail(format!("{} sample {t}: product of nonzero elements vanishes", FIXTURES[fi].name)),
                    Err(e) => return fail(e),
                }
            }
        }
        (true, "50 products per fixture are nonzero".into())
    }

    fn ore(&self) -> (bool, String) {
        let battery: [(usize, Vec<i64>, Vec<i64>, Vec<i64>); 6] = [
            (0, vec![0], vec![2], vec![0]),
            (0, vec![2], vec![2], vec![2]),
            (0, vec![1], vec![2], vec![1]),
            (1, vec![0, 0], vec![1, 1], vec![0, 0]),
            (1, vec![1, 1], vec![1, 1], vec![0, 0]),
            (1, vec![1, 0], vec![1, 1], vec![1, 0]),
        ];
        let mut js = Vec::new();
        for (fi, l, lp, mu) in &battery {
            let alg = match self.algebra(*fi) {
                Ok(a) => a,
                Err(e) => return fail(e),
            };
            match ore_stabilization_check(&alg, &Weight(l.clone()), &Weight(lp.clone()), &Weight(mu.clone()), 6) {
                Ok(Some(j)) => js.push(j),
                Ok(None) => return fail(format!("{} {:?} {:?} {:?}: no stabilization within 6", FIXTURES[*fi].name, l, lp, mu)),
                Err(e) => return fail(e.to_string()),
            }
        }
        (true, format!("stabilization indices {js:?}"))
    }

    /// Conjugation operators on every stabilized 𝔨-type up to the fixture level.
    fn operators(&self) -> &Result<Vec<Encountered>, String> {
        self.operators.get_or_init(|| {
            let mut jobs = Vec::new();
            for fi in 0..FIXTURES.len() {
                let alg = self.algebra(fi)?;
                for k in 0..alg.rank() {
                    for n in 1..=SPECTRUM_LEVELS[fi] {
                        let lam = alg.mu(k).scale(n as i64);
                        let m = alg.module(&lam).map_err(|e| e.to_string())?;
                        for (tau, _, _) in k_highest_vectors(&alg.pair, &m) {
                            jobs.push((fi, alg.clone(), k, n, tau));
                        }
                    }
                }
            }
            let res = self.exec.map(&jobs, |(fi, alg, k, n, tau)| match conjugation_operator(alg, *k, tau, *n) {
                Ok(op) => Some(Encountered {
                    label: format!("{} A_{}(τ={:?}, n={})", FIXTURES[*fi].name, k + 1, tau.0, n),
                    root: alg.pair.datum.root_order,
                    hints: pairing_hints(alg),
                    matrix: op.matrix,
                }),
                // Types that have not stabilized yet carry no operator.
                Err(_) => None,
            });
            Ok(res.into_iter().flatten().collect())
        })
    }

    fn series(&self) -> &Vec<Result<PrincipalSeries, String>> {
        self.series.get_or_init(|| {
            SERIES_CASES
                .iter()
                .map(|c| {
                    let alg = self.algebra(c.fixture)?;
                    let s = match c.k {
                        Some(k) => PrincipalSeries::degenerate(alg, k, c.level),
                        None => PrincipalSeries::nondegenerate(alg, c.level),
                    };
                    s.map_err(|e| format!("{}: {e}", FIXTURES[c.fixture].name))
                })
                .collect()
        })
    }

    fn spectrum(&self) -> (bool, String) {
        let ops = match self.operators() {
            Ok(o) => o,
            Err(e) => return fail(e.clone()),
        };
        let res = self.exec.map(ops, |op| {
            split_polynomial(&minimal_polynomial(&op.matrix), op.root, &op.hints, default_sweep(op.root)).map_err(|e| format!("{}: {e}", op.label))
        });
        for r in &res {
            if let Err(e) = r {
                return fail(e.clone());
            }
        }
        let mut series_spectra = 0;
        for s in self.series() {
            match s {
                Ok(s) => series_spectra += s.spectra.len(),
                Err(e) => return fail(e.clone()),
            }
        }
        (true, format!("{} conjugation operators and {} series operators split over q^(m/D)", ops.len(), series_spectra))
    }

    fn continuation(&self) -> (bool, String) {
        let ops = match self.operators() {
            Ok(o) => o,
            Err(e) => return fail(e.clone()),
        };
        let points: Vec<i64> = (-4..=6).collect();
        let res = self.exec.map(ops, |op| match geometric_sum(&op.matrix, op.root, &op.hints) {
            Ok((_, s)) if check_geometric_contract(&op.matrix, &s, op.root, &points) => Ok(()),
            Ok(_) => Err(format!("{}: continued sum disagrees with the finite sums", op.label)),
            Err(e) => Err(format!("{}: {e}", op.label)),
        });
        for r in res {
            if let Err(e) = r {
                return fail(e);
            }
        }
        for s in self.series().iter().flatten() {
            if let Some(bad) = s.spectra.iter().find(|r| !r.contract_ok) {
                return fail(format!("series operator for {} on ψ{}", bad.generator, bad.psi));
            }
        }
        (true, format!("{} operators match brute-force sums at u = -4..6", ops.len()))
    }

    fn principal(&self) -> (bool, String) {
        let mut parts = Vec::new();
        for (case, s) in SERIES_CASES.iter().zip(self.series()) {
            let name = FIXTURES[case.fixture].name;
            let s = match s {
                Ok(s) => s,
                Err(e) => return fail(e.clone()),
            };
            let dj = match s.verify_dj_relations(case.guard, self.exec) {
                Ok(r) => r,
                Err(e) => return fail(format!("{name}: {e}")),
            };
            if let Some(bad) = dj.relations.iter().find(|r| !r.passed) {
                return fail(format!("{name}: relation {} fails: {}", bad.name, bad.witness.clone().unwrap_or_default()));
            }
            let (points, guard) = if s.arity() == 1 {
                ((-2..=2).map(|u| vec![u]).collect::<Vec<_>>(), 1)
            } else {
                let mut p = Vec::new();
                for a in -2..=2 {
                    p.push(vec![a, 0]);
                    p.push(vec![0, a]);
                }
                for a in [-1, 1] {
                    for b in [-1, 1] {
                        p.push(vec![a, b]);
                    }
                }
                (p, 0)
            };
            let sources = match s.guarded_sources(guard) {
                Ok(x) => x,
                Err(e) => return fail(e.to_string()),
            };
            match s.integer_specialization(&points, &sources, self.exec) {
                Ok(r) if r.passed() => {}
                Ok(r) => return fail(format!("{name}: {}", r.mismatches.first().cloned().unwrap_or_default())),
                Err(e) => return fail(format!("{name}: {e}")),
            }
            match s.spherical_vector_check() {
                Ok(v) if v.iter().all(|(_, ok)| *ok) => {}
                Ok(v) => return fail(format!("{name}: spherical vector not fixed by {:?}", v.iter().find(|(_, ok)| !ok))),
                Err(e) => return fail(format!("{name}: {e}")),
            }
            let label = match case.k {
                Some(k) => format!("{name} π_{},u level {}", k + 1, case.level),
                None => format!("{name} π_u level {}", case.level),
            };
            parts.push(label);
        }
        (true, parts.join("; "))
    }

    fn star(&self) -> (bool, String) {
        let mut count = 0;
        for (fi, fx) in FIXTURES.iter().enumerate() {
            let pair = fx.pair();
            let alg = match self.algebra(fi) {
                Ok(a) => a,
                Err(e) => return fail(e),
            };
            // Spherical weights of level at most four are the ℕ-combinations of the generators.
            let mut weights: Vec<Weight> = vec![Weight::zero(pair.rank())];
            let mut frontier = weights.clone();
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for w in &frontier {
                    for mu in &alg.spherical.fundamental_spherical {
                        let x = w.add(mu);
                        if x.level() <= 4 && !weights.contains(&x) {
                            weights.push(x.clone());
                            next.push(x);
                        }
                    }
                }
                frontier = next;
            }
            let res = self.exec.map(&weights, |w| -> Result<(), String> {
                let m = simple_module_for(&pair, w).map_err(|e| e.to_string())?;
                let j = star_on_spherical(&pair, &m).map_err(|e| format!("{} {:?}: {e}", fx.name, w.0))?;
                if j.apply(&m, &j.spherical) != j.spherical {
                    return Err(format!("{} {:?}: spherical vector not fixed", fx.name, w.0));
                }
                Ok(())
            });
            for r in res {
                if let Err(e) = r {
                    return fail(e);
                }
            }
            count += weights.len();
            for (k, mu) in alg.spherical.fundamental_spherical.iter().enumerate() {
                let m = match alg.module(mu) {
                    Ok(m) => m,
                    Err(e) => return fail(e.to_string()),
                };
                match star_on_spherical(&pair, &m) {
                    Ok(j) if j.apply(&m, &alg.psi[k]) == alg.psi[k] => {}
                    Ok(_) => return fail(format!("{}: ψ{} is not star-fixed", fx.name, k + 1)),
                    Err(e) => return fail(e.to_string()),
                }
            }
        }
        (true, format!("{count} spherical modules carry an involutive intertwining star fixing ψ"))
    }

    fn random_fraction(&self, alg: &FlagAlgebra, rng: &mut ChaCha8Rng, level: i64, with_den: bool) -> Result<LocalizedFunction, String> {
        let g = self.random_homogeneous(alg, rng, level)?;
        let mut den = vec![0; alg.rank()];
        if with_den && rng.gen_bool(0.5) {
            den[rng.gen_range(0..alg.rank())] = 1;
        }
        Ok(LocalizedFunction::new(g, den))
    }

    fn leibniz(&self) -> (bool, String) {
        for fi in 0..FIXTURES.len() {
            let alg = match self.algebra(fi) {
                Ok(a) => a,
                Err(e) => return fail(e),
            };
            let n = alg.pair.rank();
            let mut rng = self.rng(1200 + fi as u64);
            let mut triples = Vec::new();
            for _ in 0..20 {
                let mut xi = UqElement::one();
                for _ in 0..rng.gen_range(1..=2) {
                    let i = rng.gen_range(0..n);
                    let l = match rng.gen_range(0..4) {
                        0 => Letter::e(i),
                        1 => Letter::f(i),
                        2 => Letter::k(i),
                        _ => Letter::kinv(i),
                    };
                    xi = xi.mul(&UqElement::letter(l));
                }
                let f1 = self.random_fraction(&alg, &mut rng, LEIBNIZ_LEVELS[fi], LEIBNIZ_LEFT_DEN[fi]);
                let f2 = self.random_fraction(&alg, &mut rng, LEIBNIZ_LEVELS[fi], true);
                match (f1, f2) {
                    (Ok(a), Ok(b)) => triples.push((xi, a, b)),
                    (Err(e), _) | (_, Err(e)) => return fail(e),
                }
            }
            let res = self.exec.map(&triples, |(xi, a, b)| alg.leibniz_check(xi, a, b).map_err(|e| e.to_string()));
            for (t, r) in res.into_iter().enumerate() {
                match r {
                    Ok(true) => {}
                    Ok(false) => return fail(format!("{} triple {t}: Leibniz rule fails", FIXTURES[fi].name)),
                    Err(e) => return fail(format!("{} triple {t}: {e}", FIXTURES[fi].name)),
                }
            }
        }
        (true, "20 triples per fixture satisfy the Leibniz rule".into())
    }
}
