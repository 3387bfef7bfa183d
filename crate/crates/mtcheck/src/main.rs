//! Command-line driver: curve ingestion, check orchestration, coefficient
//! and theta caching, and machine-readable reports.

use clap::{Args, Parser, Subcommand};
use mtcheck::conjectures::{classify_primes, leading_term_check, vanishing_order_check, C2Rule};
use mtcheck::curve::CurveData;
use mtcheck::groupring::AbelianFieldSpec;
use mtcheck::report::{CheckReport, RunReport, Verdict};
use mtcheck::{Error, Result};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(name = "mtcheck", about = "Exact verification of Mazur-Tate element identities")]
struct Cli {
    /// Directory for coefficient and series caches.
    #[arg(long, global = true, default_value = ".mtcache")]
    cache_dir: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CurveArg {
    /// Path to the curve input file (JSON).
    #[arg(long)]
    curve: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a Mazur-Tate element and print it (or write it to a file).
    Theta {
        #[command(flatten)]
        curve: CurveArg,
        /// Field spec "m=<int>;H=<residues>".
        #[arg(long)]
        field: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a single named check.
    Check {
        /// One of: norm, funceq, interp, integrality, otsuki, trace, nu,
        /// honda, gh, order, leading-term.
        kind: String,
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        m: Option<i64>,
        #[arg(long)]
        ell: Option<i64>,
        #[arg(long)]
        p: Option<i64>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        chi: Option<usize>,
        /// Character exponent s for the gh check (chi = tau^s).
        #[arg(long)]
        s: Option<i64>,
        #[arg(long, default_value_t = 8)]
        k: u32,
        #[arg(long, default_value_t = 30)]
        digits: u32,
        #[arg(long, default_value_t = 120)]
        deg: usize,
        #[arg(long)]
        rank: Option<u32>,
        #[arg(long)]
        target: Option<u32>,
        /// Second field spec (the base field K) for leading-term.
        #[arg(long)]
        base_field: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Prime-set classification for (curve, field, p).
    Classify {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long)]
        field: String,
        #[arg(long)]
        p: i64,
    },
    /// Coefficient-cache maintenance: warm, verify, or purge.
    Cache {
        /// One of: warm, verify, purge.
        action: String,
        #[command(flatten)]
        curve: CurveArg,
        /// Number of coefficients to warm.
        #[arg(long, default_value_t = 4000)]
        nmax: usize,
    },
    /// Execute a suite of checks described by a JSON config file.
    Suite {
        /// Path to the run configuration.
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads for independent checks.
        #[arg(long, default_value_t = 2)]
        jobs: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}

fn load_curve(path: &Path) -> Result<CurveData> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::BadInput(format!("cannot read {}: {e}", path.display())))?;
    CurveData::from_json(&text)
}

fn run(cli: Cli) -> Result<i32> {
    let cache = cli.cache_dir.clone();
    match cli.command {
        Command::Theta { curve, field, out } => {
            let e = load_curve(&curve.curve)?;
            let spec = AbelianFieldSpec::parse(&field)?;
            let t = mtcheck::mazurtate::theta(&e, &spec)?;
            let text = mtcheck::mazurtate::theta_to_text(&t);
            match out {
                Some(p) => std::fs::write(p, text)
                    .map_err(|e| Error::BadInput(format!("write failed: {e}")))?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Check {
            kind,
            curve,
            field,
            m,
            ell,
            p,
            n,
            chi,
            s,
            k,
            digits,
            deg,
            rank,
            target,
            base_field,
            out,
        } => {
            let e = load_curve(&curve.curve)?;
            let spec = CheckSpec {
                kind,
                m,
                ell,
                p,
                n,
                chi,
                s,
                k: Some(k),
                digits: Some(digits),
                deg: Some(deg),
                rank,
                target,
                field,
                base_field,
                product: Some(true),
                perturb_ell: None,
                perturb_factor: None,
            };
            let rep = run_check(&e, &spec, &Defaults::default(), &cache);
            println!("{:<16} {:<30} {}", rep.check_id, summarise_params(&rep), rep.verdict.as_str());
            let run = RunReport::summarise(&e.label, vec![rep]);
            emit(&run, out.as_deref())?;
            Ok(run.exit_code())
        }
        Command::Classify { curve, field, p } => {
            let e = load_curve(&curve.curve)?;
            let spec = AbelianFieldSpec::parse(&field)?;
            let cls = classify_primes(&e, &spec, p, C2Rule::RemarkLiteral)?;
            println!("curve {}  field {}  p = {p}", e.label, cls.field_spec);
            println!("sp = {}, c_2 = {}, c_0 = {}, c = {}", cls.sp, cls.c2, cls.c0, cls.c_total());
            for r in &cls.records {
                println!(
                    "  ell = {:>3}: C_x = {:<5} C_2 = {:<5} C_0 = {:<5} split_mult = {:<5} f^(p) = {}",
                    r.ell, r.in_c_times, r.in_c2, r.in_c0, r.split_mult, r.f_prime_to_p
                );
            }
            Ok(0)
        }
        Command::Cache { action, curve, nmax } => {
            let e = load_curve(&curve.curve)?;
            match action.as_str() {
                "warm" => {
                    let v = mtcheck::lseries::an_table(&e, nmax, Some(&cache));
                    mtcheck::curve::j_series(64, Some(&cache));
                    println!("warmed {} coefficients for {}", v.len() - 1, e.label);
                    Ok(0)
                }
                "verify" => {
                    let n = mtcheck::lseries::verify_an_cache(&e, &cache)?;
                    println!("verified {n} cache entries for {}", e.label);
                    Ok(0)
                }
                "purge" => {
                    let path = cache.join(format!("{}.an.txt", e.label));
                    let _ = std::fs::remove_file(path);
                    println!("purged coefficient cache for {}", e.label);
                    Ok(0)
                }
                other => Err(Error::ConfigInvalid(format!("unknown cache action '{other}'"))),
            }
        }
        Command::Suite { config, out, jobs } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| Error::ConfigInvalid(format!("cannot read config: {e}")))?;
            let cfg: SuiteConfig = serde_json::from_str(&text)
                .map_err(|e| Error::ConfigInvalid(format!("bad config: {e}")))?;
            let curve_path = config.parent().unwrap_or_else(|| Path::new(".")).join(&cfg.curve);
            let e = load_curve(&curve_path)?;
            let defaults = cfg.defaults.unwrap_or_default();
            let reports = run_suite(&e, &cfg.checks, &defaults, jobs.max(1), &cache);
            let run = RunReport::summarise(&e.label, reports);
            for r in &run.reports {
                println!("{:<16} {:<30} {}", r.check_id, summarise_params(r), r.verdict.as_str());
            }
            println!("counts: {:?}", run.counts);
            let out_path = out.or(cfg.out.map(PathBuf::from));
            emit(&run, out_path.as_deref())?;
            Ok(run.exit_code())
        }
    }
}

fn summarise_params(r: &CheckReport) -> String {
    let keys = ["m", "ell", "p", "n", "field", "L", "target", "chi_index"];
    let mut parts = vec![];
    for k in keys {
        if let Some(v) = r.parameters.get(k) {
            parts.push(format!("{k}={v}"));
        }
    }
    parts.join(" ")
}

fn emit(run: &RunReport, out: Option<&Path>) -> Result<()> {
    if let Some(path) = out {
        std::fs::write(path, run.to_json())
            .map_err(|e| Error::BadInput(format!("write failed: {e}")))?;
    }
    Ok(())
}

#[derive(serde::Deserialize)]
struct SuiteConfig {
    curve: String,
    out: Option<String>,
    defaults: Option<Defaults>,
    checks: Vec<CheckSpec>,
}

/// Documented defaults: k = 8 p-adic digits, 30 decimal digits, series
/// degree 120.
#[derive(serde::Deserialize, Clone)]
struct Defaults {
    #[serde(default = "default_k")]
    k: u32,
    #[serde(default = "default_digits")]
    digits: u32,
    #[serde(default = "default_deg")]
    deg: usize,
}

fn default_k() -> u32 {
    8
}
fn default_digits() -> u32 {
    30
}
fn default_deg() -> usize {
    120
}

impl Default for Defaults {
    fn default() -> Self {
        Defaults { k: 8, digits: 30, deg: 120 }
    }
}

#[derive(serde::Deserialize, Clone)]
struct CheckSpec {
    kind: String,
    #[serde(default)]
    m: Option<i64>,
    #[serde(default)]
    ell: Option<i64>,
    #[serde(default)]
    p: Option<i64>,
    #[serde(default)]
    n: Option<u32>,
    #[serde(default)]
    chi: Option<usize>,
    #[serde(default)]
    s: Option<i64>,
    #[serde(default)]
    k: Option<u32>,
    #[serde(default)]
    digits: Option<u32>,
    #[serde(default)]
    deg: Option<usize>,
    #[serde(default)]
    rank: Option<u32>,
    #[serde(default)]
    target: Option<u32>,
    #[serde(default)]
    field: Option<String>,
    #[serde(default)]
    base_field: Option<String>,
    #[serde(default)]
    product: Option<bool>,
    #[serde(default)]
    perturb_ell: Option<i64>,
    #[serde(default)]
    perturb_factor: Option<i64>,
}

fn missing(name: &str) -> Error {
    Error::ConfigInvalid(format!("missing parameter '{name}'"))
}

fn run_check(e: &CurveData, c: &CheckSpec, d: &Defaults, cache: &Path) -> CheckReport {
    match dispatch(e, c, d, cache) {
        Ok(rep) => rep,
        Err(err) => {
            let verdict = match &err {
                Error::HypothesisViolated(_) => Verdict::HypothesisViolated,
                Error::PrecisionUnsupported(_) => Verdict::Undecided,
                _ => Verdict::Fail,
            };
            CheckReport::new(&c.kind)
                .param("curve", &e.label)
                .witness(format!("{err}"))
                .verdict(verdict)
        }
    }
}

fn dispatch(e: &CurveData, c: &CheckSpec, d: &Defaults, cache: &Path) -> Result<CheckReport> {
    let k = c.k.unwrap_or(d.k);
    let digits = c.digits.unwrap_or(d.digits);
    let deg = c.deg.unwrap_or(d.deg);
    match c.kind.as_str() {
        "norm" => mtcheck::mazurtate::verify_norm_relation(
            e,
            c.m.ok_or_else(|| missing("m"))?,
            c.ell.ok_or_else(|| missing("ell"))?,
        ),
        "funceq" => {
            mtcheck::mazurtate::verify_functional_equation(e, c.m.ok_or_else(|| missing("m"))?)
        }
        "interp" => mtcheck::mazurtate::verify_interpolation(
            e,
            c.m.ok_or_else(|| missing("m"))?,
            c.chi.unwrap_or(0),
            digits,
        ),
        "integrality" => {
            mtcheck::mazurtate::integrality_certificate(e, c.m.ok_or_else(|| missing("m"))?)
        }
        "otsuki" => mtcheck::otsuki::verify_x_decomposition(
            e,
            c.m.ok_or_else(|| missing("m"))?,
            c.p.ok_or_else(|| missing("p"))?,
            c.n.unwrap_or(1),
        ),
        "trace" => mtcheck::otsuki::verify_trace_relations(
            e,
            c.m.ok_or_else(|| missing("m"))?,
            c.p.ok_or_else(|| missing("p"))?,
            c.n.unwrap_or(0),
        ),
        "nu" => {
            let m = c.m.ok_or_else(|| missing("m"))?;
            let spec = AbelianFieldSpec::cyclotomic(m);
            mtcheck::otsuki::verify_nu_congruence(
                e,
                &spec,
                c.ell.ok_or_else(|| missing("ell"))?,
                c.p.ok_or_else(|| missing("p"))?,
                k,
            )
        }
        "honda" => mtcheck::formalgroup::honda_type_check(e, c.p.ok_or_else(|| missing("p"))?, deg),
        "gh" => mtcheck::formalgroup::g_and_h_check(
            e,
            c.p.ok_or_else(|| missing("p"))?,
            c.s.unwrap_or(0),
            deg,
            k,
        ),
        "order" => {
            let spec =
                AbelianFieldSpec::parse(c.field.as_deref().ok_or_else(|| missing("field"))?)?;
            let p = c.p.ok_or_else(|| missing("p"))?;
            let target = match c.target {
                Some(t) => t,
                None => mtcheck::conjectures::predicted_vanishing_order(
                    e,
                    &spec,
                    p,
                    c.rank.unwrap_or(0),
                    C2Rule::RemarkLiteral,
                )?,
            };
            vanishing_order_check(e, &spec, p, k, target, c.product.unwrap_or(true), C2Rule::RemarkLiteral)
        }
        "leading-term" => {
            let l = AbelianFieldSpec::parse(c.field.as_deref().ok_or_else(|| missing("field"))?)?;
            let base = AbelianFieldSpec::parse(c.base_field.as_deref().unwrap_or("m=1;H="))?;
            let perturb = match (c.perturb_ell, c.perturb_factor) {
                (Some(a), Some(b)) => Some((a, b)),
                _ => None,
            };
            leading_term_check(
                e,
                &l,
                &base,
                c.p.ok_or_else(|| missing("p"))?,
                k,
                C2Rule::RemarkLiteral,
                perturb,
                Some(cache),
            )
        }
        other => Err(Error::ConfigInvalid(format!("unknown check kind '{other}'"))),
    }
}

/// Bounded worker pool over independent checks; report order follows the
/// config order regardless of scheduling.
fn run_suite(
    e: &CurveData,
    checks: &[CheckSpec],
    defaults: &Defaults,
    jobs: usize,
    cache: &Path,
) -> Vec<CheckReport> {
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots: Vec<std::sync::Mutex<Option<CheckReport>>> =
        (0..checks.len()).map(|_| std::sync::Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(checks.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                if i >= checks.len() {
                    break;
                }
                let rep = run_check(e, &checks[i], defaults, cache);
                *slots[i].lock().unwrap() = Some(rep);
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.into_inner().unwrap().expect("all checks ran"))
        .collect()
}
