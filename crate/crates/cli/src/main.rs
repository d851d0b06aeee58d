//! `qhc`: batch front end printing versioned JSON reports.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use qhc::flag::FlagAlgebra;
use qhc::modules::{invariant_vector, isotypic_decomposition, simple_module};
use qhc::par::{set_jobs, Exec};
use qhc::principal::{ContinuedVector, PrincipalSeries};
use qhc::rootdata::{
    build_root_datum, check_hermitian, spherical_weight_semigroup, strongly_orthogonal_roots, CartanMatrix, CartanType, HermitianPair, RootDatum, Weight,
};
use qhc::scalars::{evaluate, pole_free_on_unit_interval, to_text, QScalar};
use qhc::selftest::Selftest;
use qhc::uqg::Letter;

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "qhc", version, about = "Quantum Harish-Chandra modules and spherical principal series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    job: JobArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Root datum, Hermitian check, strongly orthogonal roots and spherical generators.
    Roots(PairArgs),
    /// Build L(λ): dimension, weight blocks, Gram determinants, 𝔨-isotypic table.
    Module(ModuleArgs),
    /// Build π_{k,u} (with --k) or π_𝐮 (without) to a level and verify it.
    Series(SeriesArgs),
    /// Run the full acceptance battery on the fixture pairs.
    Selftest,
}

#[derive(Args)]
struct JobArgs {
    /// Seed for all random sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Directory where finished reports are stored and reused.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Sample point q0 ∈ (0,1) for numeric evaluation, e.g. 1/2.
    #[arg(long, global = true)]
    q0: Option<String>,
}

#[derive(Args, Clone)]
struct PairArgs {
    /// Cartan type A, B, C or D.
    #[arg(long = "type")]
    kind: Option<String>,
    #[arg(long)]
    rank: Option<usize>,
    /// Explicit Cartan matrix as JSON, e.g. [[2,-1],[-1,2]].
    #[arg(long)]
    cartan: Option<String>,
    /// Marked node (1-based).
    #[arg(long)]
    l0: usize,
}

#[derive(Args)]
struct ModuleArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// Highest weight in fundamental-weight coordinates, e.g. 1,1.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    hw: Vec<i64>,
}

#[derive(Args)]
struct SeriesArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// Spherical generator (1-based) for π_{k,u}; omit for π_𝐮.
    #[arg(long)]
    k: Option<usize>,
    /// Integer parameter point; replaces the default specialization sweep.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    u: Vec<i64>,
    /// Denominator level N.
    #[arg(long, default_value_t = 2)]
    level: u32,
}

/// A validation failure: reported as JSON with exit code 2.
struct Invalid(String);

impl<E: std::fmt::Display> From<E> for Invalid {
    fn from(e: E) -> Self {
        Invalid(e.to_string())
    }
}

fn parse_q0(s: &Option<String>) -> Result<Option<BigRational>, Invalid> {
    let Some(s) = s else { return Ok(None) };
    let (n, d) = s.split_once('/').unwrap_or((s.as_str(), "1"));
    let n: BigInt = n.trim().parse().map_err(|_| Invalid(format!("q0 {s:?} is not a rational number")))?;
    let d: BigInt = d.trim().parse().map_err(|_| Invalid(format!("q0 {s:?} is not a rational number")))?;
    if d == BigInt::from(0) {
        return Err(Invalid("q0 has zero denominator".into()));
    }
    let q = BigRational::new(n, d);
    if q <= BigRational::from_integer(0.into()) || q >= BigRational::from_integer(1.into()) {
        return Err(Invalid(format!("q0 = {q} is not in (0,1)")));
    }
    Ok(Some(q))
}

fn datum(p: &PairArgs) -> Result<RootDatum, Invalid> {
    let cartan = match (&p.cartan, &p.kind, p.rank) {
        (Some(m), None, None) => {
            let a: Vec<Vec<i64>> = serde_json::from_str(m).map_err(|e| Invalid(format!("--cartan: {e}")))?;
            CartanMatrix::new(a)?
        }
        (None, Some(t), Some(n)) => {
            let kind = CartanType::parse(t).ok_or_else(|| Invalid(format!("unknown type {t:?}")))?;
            CartanMatrix::of_type(kind, n)?
        }
        _ => return Err(Invalid("give either --type and --rank or --cartan".into())),
    };
    Ok(build_root_datum(cartan))
}

fn pair(p: &PairArgs) -> Result<HermitianPair, Invalid> {
    Ok(check_hermitian(datum(p)?, p.l0)?)
}

fn weight(pair: &HermitianPair, hw: &[i64]) -> Result<Weight, Invalid> {
    let w = Weight(hw.to_vec());
    if w.rank() != pair.rank() {
        return Err(Invalid(format!("--hw has {} entries but the rank is {}", w.rank(), pair.rank())));
    }
    if !w.is_dominant() {
        return Err(Invalid(format!("{hw:?} is not dominant")));
    }
    Ok(w)
}

/// Scalar as exact text plus its value at q0 when requested.
fn scalar(x: &QScalar, q0: &Option<BigRational>) -> Value {
    let mut v = json!({ "exact": to_text(x) });
    if let Some(q) = q0 {
        v["at_q0"] = match evaluate(x, q) {
            Ok(n) => json!(n.value),
            Err(e) => json!(e.to_string()),
        };
    }
    v
}

/// Report body and whether every check in it passed.
type Outcome = (Value, bool);

fn spherical_generators(pair: &HermitianPair) -> Result<Vec<Vec<i64>>, String> {
    let sph = spherical_weight_semigroup(pair, 4, |w| {
        let m = simple_module(&pair.datum, w).map_err(|e| e.to_string())?;
        Ok(invariant_vector(pair, &m).len() == 1)
    })
    .map_err(|e| e.to_string())?;
    Ok(sph.fundamental_spherical.iter().map(|w| w.0.clone()).collect())
}

fn cmd_roots(args: &PairArgs) -> Result<Outcome, Invalid> {
    let dat = datum(args)?;
    let base = json!({
        "cartan": dat.cartan.a,
        "rank": dat.rank(),
        "l0": args.l0,
        "positive_roots": dat.positive_roots.len(),
        "maximal_root": dat.delta,
    });
    let pair = match check_hermitian(dat, args.l0) {
        Ok(p) => p,
        Err(e) => {
            let mut v = base;
            v["hermitian"] = json!(false);
            v["error"] = json!(e.to_string());
            return Err(Invalid(v.to_string()));
        }
    };
    let cascade = strongly_orthogonal_roots(&pair)?;
    let mut v = base;
    v["hermitian"] = json!(true);
    v["noncompact_roots"] = json!(pair.noncompact_roots());
    v["gammas"] = json!(cascade.gammas);
    v["real_rank"] = json!(cascade.rank);
    let ok = match spherical_generators(&pair) {
        Ok(mu) => {
            let ok = mu.len() == cascade.rank;
            v["mu"] = json!(mu);
            ok
        }
        Err(e) => {
            v["mu_error"] = json!(e);
            false
        }
    };
    Ok((v, ok))
}

fn cmd_module(args: &ModuleArgs, q0: &Option<BigRational>) -> Result<Outcome, Invalid> {
    let pair = pair(&args.pair)?;
    let lam = weight(&pair, &args.hw)?;
    let m = simple_module(&pair.datum, &lam)?;
    let weyl = pair.datum.weyl_dimension(&lam) as usize;
    let mut ok = m.dim() == weyl;
    let mut blocks = Vec::new();
    for (bi, b) in m.blocks.iter().enumerate() {
        let det = m.gram(bi).det();
        let pole_free = pole_free_on_unit_interval(&det).pole_free;
        ok &= !det.is_zero() && pole_free;
        blocks.push(json!({ "weight": b.weight.0, "dim": b.dim, "gram_det": scalar(&det, q0), "pole_free": pole_free }));
    }
    let iso: Vec<Value> = isotypic_decomposition(&pair, &m)?
        .iter()
        .map(|c| json!({ "k_highest_weight": c.mu.0, "multiplicity": c.multiplicity, "dim": c.dim() }))
        .collect();
    let iso_total: usize = iso.iter().map(|c| c["dim"].as_u64().unwrap_or(0) as usize).sum();
    ok &= iso_total == m.dim();
    let v = json!({
        "hw": lam.0,
        "dim": m.dim(),
        "weyl_dimension": weyl,
        "spherical": invariant_vector(&pair, &m).len() == 1,
        "blocks": blocks,
        "isotypic": iso,
    });
    Ok((v, ok))
}

/// Default specialization points: u ∈ −2..2 for one parameter, the axes and (±1,±1) for two.
fn default_points(arity: usize) -> Vec<Vec<i64>> {
    match arity {
        1 => (-2..=2).map(|u| vec![u]).collect(),
        _ => {
            let mut pts = Vec::new();
            for a in -2..=2 {
                for p in 0..arity {
                    let mut u = vec![0; arity];
                    u[p] = a;
                    if !pts.contains(&u) {
                        pts.push(u);
                    }
                }
            }
            for s in [-1, 1] {
                for t in [-1, 1] {
                    let mut u = vec![0; arity];
                    u[0] = s;
                    u[1] = t;
                    pts.push(u);
                }
            }
            pts
        }
    }
}

fn cmd_series(args: &SeriesArgs, q0: &Option<BigRational>, exec: Exec) -> Result<Outcome, Invalid> {
    let pair = pair(&args.pair)?;
    let mus = spherical_generators(&pair).map_err(Invalid)?;
    let r = mus.len();
    if let Some(k) = args.k {
        if k == 0 || k > r {
            return Err(Invalid(format!("--k {k} is out of range 1..={r}")));
        }
    }
    let params: Vec<usize> = match args.k {
        Some(k) => vec![k - 1],
        None => (0..r).collect(),
    };
    if !args.u.is_empty() && args.u.len() != params.len() {
        return Err(Invalid(format!("--u has {} entries but the series has {} parameters", args.u.len(), params.len())));
    }
    // Each relation word carries at most two correction letters above the source level.
    let guard = args.level.saturating_sub(2);
    let mu_size: i64 = params.iter().map(|&k| mus[k].iter().sum::<i64>()).sum();
    let bound = args.level as i64 * mu_size + 4;
    let alg = Arc::new(FlagAlgebra::new(pair, bound)?);
    let rep = match args.k {
        Some(k) => PrincipalSeries::degenerate(alg.clone(), k - 1, args.level)?,
        None => PrincipalSeries::nondegenerate(alg.clone(), args.level)?,
    };
    let dj = rep.verify_dj_relations(guard, exec)?;
    let points = if args.u.is_empty() { default_points(rep.arity()) } else { vec![args.u.clone()] };
    let sources = rep.guarded_sources(if rep.arity() == 1 { 1 } else { 0 })?;
    let specialization = rep.integer_specialization(&points, &sources, exec)?;
    let spherical = rep.spherical_vector_check()?;
    let spherical_ok = spherical.iter().all(|(_, ok)| *ok);
    let contracts_ok = rep.spectra.iter().all(|s| s.contract_ok);
    let ok = dj.all_passed() && specialization.passed() && spherical_ok && contracts_ok;
    let mut v = json!({
        "mode": if args.k.is_some() { "degenerate" } else { "nondegenerate" },
        "psi": params.iter().map(|k| k + 1).collect::<Vec<_>>(),
        "mu": params.iter().map(|&k| alg.mu(k).0.clone()).collect::<Vec<_>>(),
        "level": args.level,
        "guard": guard,
        "corrections": rep.corrections().iter().map(|c| c.terms.len()).sum::<usize>(),
        "spectra": rep.spectra,
        "relations": dj,
        "specialization": specialization,
        "spherical": spherical.iter().map(|(g, ok)| json!({ "generator": g, "passed": ok })).collect::<Vec<_>>(),
    });
    if !args.u.is_empty() {
        v["vacuum"] = vacuum_images(&rep, &args.u, q0)?;
    }
    Ok((v, ok))
}

/// `π_{u0}(l) 1` for each generator letter, with numerator entries as scalars.
fn vacuum_images(rep: &PrincipalSeries, u0: &[i64], q0: &Option<BigRational>) -> Result<Value, Invalid> {
    let one = ContinuedVector::from_fraction(rep.arity(), &rep.alg.lf_one());
    let mut out = serde_json::Map::new();
    for i in 0..rep.alg.pair.rank() {
        for (name, l) in [("E", Letter::e(i)), ("F", Letter::f(i)), ("K", Letter::k(i))] {
            let x = rep.specialize_vector(&rep.act(l, &one)?, u0)?;
            let parts: Vec<Value> = x
                .num
                .components()
                .map(|(lam, coords)| {
                    let nz: Vec<Value> = coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| json!([j, scalar(c, q0)])).collect();
                    json!({ "weight": lam.0, "entries": nz })
                })
                .collect();
            out.insert(format!("{name}{}", i + 1), json!({ "denominator": x.den, "components": parts }));
        }
    }
    Ok(Value::Object(out))
}

fn cmd_selftest(seed: u64, exec: Exec) -> Outcome {
    let results = Selftest::new(seed, exec).run_all();
    let ok = results.iter().all(|r| r.passed);
    (json!({ "criteria": results }), ok)
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema: u32,
    command: &'a str,
    passed: bool,
    #[serde(flatten)]
    body: Value,
}

fn cache_key(argv: &[String]) -> String {
    const SKIP: [&str; 3] = ["--out", "--cache-dir", "--jobs"];
    let mut kept = Vec::new();
    let mut it = argv[1..].iter();
    while let Some(a) = it.next() {
        if SKIP.contains(&a.as_str()) {
            it.next();
        } else if !SKIP.iter().any(|f| a.starts_with(&format!("{f}="))) {
            kept.push(a.as_str());
        }
    }
    kept.join("_").chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '.' }).collect()
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), String> {
    match out {
        Some(p) => std::fs::write(p, format!("{text}\n")).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            use std::io::Write;
            match writeln!(std::io::stdout().lock(), "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.to_string()),
                _ => Ok(()),
            }
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    if let Some(j) = cli.job.jobs {
        set_jobs(j);
    }
    let exec = if cli.job.jobs == Some(1) { Exec::Sequential } else { Exec::Parallel };
    let command = match &cli.command {
        Command::Roots(_) => "roots",
        Command::Module(_) => "module",
        Command::Series(_) => "series",
        Command::Selftest => "selftest",
    };

    let cached = cli.job.cache_dir.as_ref().map(|d| d.join(format!("{}.json", cache_key(&argv))));
    if let Some(path) = &cached {
        if let Ok(text) = std::fs::read_to_string(path) {
            if let Ok(v) = serde_json::from_str::<Value>(&text) {
                let passed = v["passed"].as_bool().unwrap_or(false);
                if let Err(e) = emit(text.trim_end(), &cli.job.out) {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
                return if passed { ExitCode::SUCCESS } else { ExitCode::from(1) };
            }
        }
    }

    let result = parse_q0(&cli.job.q0).and_then(|q0| match &cli.command {
        Command::Roots(a) => cmd_roots(a),
        Command::Module(a) => cmd_module(a, &q0),
        Command::Series(a) => cmd_series(a, &q0, exec),
        Command::Selftest => Ok(cmd_selftest(cli.job.seed, exec)),
    });

    let (text, code) = match result {
        Ok((body, passed)) => {
            let text = serde_json::to_string_pretty(&Envelope { schema: SCHEMA, command, passed, body }).expect("serializable report");
            (text, if passed { 0 } else { 1 })
        }
        Err(Invalid(msg)) => {
            // Reports that failed validation keep their partial body when it is JSON.
            let body = serde_json::from_str::<Value>(&msg).ok().filter(Value::is_object).unwrap_or_else(|| json!({ "error": msg }));
            let text = serde_json::to_string_pretty(&Envelope { schema: SCHEMA, command, passed: false, body }).expect("serializable report");
            (text, 2)
        }
    };
    if code != 2 {
        if let Some(path) = &cached {
            let stored = path.parent().map(std::fs::create_dir_all).transpose().and_then(|_| std::fs::write(path, &text));
            if let Err(e) = stored {
                eprintln!("cache {}: {e}", path.display());
            }
        }
    }
    if let Err(e) = emit(&text, &cli.job.out) {
        eprintln!("{e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
