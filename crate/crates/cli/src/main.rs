//! `cycleshuffle`: spectra, filtration tables, matrices, verification suites
//! and simulations for somewhere-to-below shuffles.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cycleshuffle::basis::{filtration_dimensions, rmul_standard_matrix, BasisFamily, BasisKind, BasisOrder};
use cycleshuffle::lacunar::{non_shadow, LacunarCatalog};
use cycleshuffle::markov::{chi_square_uniform, fast_bookmark_sim, simulate_sst};
use cycleshuffle::perm::all_permutations;
use cycleshuffle::scalar::{format_rational, parse_rational_list, rational_to_f64, ALGEBRA_CAP_ENV};
use cycleshuffle::shuffles::{build_osc, build_t, build_t_prime, one_sided_cycle_shuffle, transition_matrix};
use cycleshuffle::spectrum::{
    cumulative_dimensions, delta_vector, diagonalizable_certificate, full_spectrum, minimal_polynomial, polynomial_to_json,
};
use cycleshuffle::verify::{run_suite, Suite};
use cycleshuffle::{Error, Limits, PositionDistribution, QAlgebraElement, QMatrix, QWeights};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "cycleshuffle", version, about = "Exact computations for one-sided cycle shuffles on S_n")]
struct Cli {
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Largest n for which S_n may be enumerated.
    #[arg(long = "max-n", global = true, env = ALGEBRA_CAP_ENV)]
    max_n: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eigenvalues and multiplicities of right multiplication by sum λ_ℓ t_ℓ.
    Spectrum(SpectrumArgs),
    /// Dimensions of the Fibonacci filtration with δ_i.
    Filtration(FiltrationArgs),
    /// Export a right-multiplication or transition matrix.
    Matrix(MatrixArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Simulate the bookmark stopping time.
    Simulate(SimulateArgs),
}

#[derive(Args, Debug)]
struct WeightArgs {
    /// Comma-separated weights λ_1,...,λ_n (p/q, integers or decimals).
    #[arg(long, group = "weight_choice")]
    weights: Option<String>,
    /// Random-to-below: λ_ℓ = 1/(n(n+1-ℓ)).
    #[arg(long, group = "weight_choice")]
    r2b: bool,
    /// Top-to-random: λ = (1, 0, ..., 0).
    #[arg(long, group = "weight_choice")]
    t2r: bool,
    /// All λ_ℓ equal, normalized to a probability: λ_ℓ = 2/(n(n+1)).
    #[arg(long, group = "weight_choice")]
    unweighted: bool,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    weights: WeightArgs,
    /// Add the distinct-eigenvalue diagonalizability certificate.
    #[arg(long)]
    certificate: bool,
    /// Add the minimal polynomial of the n! x n! matrix (small n only).
    #[arg(long)]
    minpoly: bool,
}

#[derive(Args, Debug)]
struct FiltrationArgs {
    #[arg(long)]
    n: usize,
    /// Count Q-indices over S_n instead of using the product formula.
    #[arg(long)]
    by_counting: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    Std,
    A,
    B,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    Lex,
    Qindex,
    QindexDesc,
}

#[derive(Args, Debug)]
struct MatrixArgs {
    #[arg(long)]
    n: usize,
    /// The shuffle t_L.
    #[arg(long, group = "element")]
    t: Option<usize>,
    /// The shuffle t'_L.
    #[arg(long, group = "element")]
    t_prime: Option<usize>,
    /// osc(P): a comma-separated distribution, or one of r2b (alias uniform), t2r, unweighted.
    #[arg(long, group = "element")]
    osc: Option<String>,
    /// sum λ_ℓ t_ℓ for comma-separated weights.
    #[arg(long, group = "element")]
    weights: Option<String>,
    #[arg(long, value_enum, default_value = "std")]
    basis: BasisArg,
    #[arg(long, value_enum, default_value = "lex")]
    order: OrderArg,
    /// Markov transition matrix M[τ][σ] = [τ^{-1}σ]x instead of the
    /// right-multiplication matrix (standard basis, lexicographic order).
    #[arg(long)]
    transition: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Triangularity,
    Annihilator,
    Duality,
    Identities,
    BooleanPartition,
    All,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Uniform P, the random-to-below shuffle (default).
    #[arg(long, group = "distribution")]
    uniform: bool,
    /// Comma-separated distribution P(1),...,P(n).
    #[arg(long, group = "distribution")]
    dist: Option<String>,
    /// Sample only the bookmark level as a sum of geometric stages (uniform P).
    #[arg(long, conflicts_with = "dist")]
    fast: bool,
    /// Record the deck at τ and test it for uniformity.
    #[arg(long, conflicts_with = "fast")]
    record_final: bool,
}

enum Failure {
    Usage(String),
    Verification(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Failure::Verification(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Rendered output plus whether every check passed.
struct Output {
    body: String,
    ok: bool,
}

impl Output {
    fn ok(body: String) -> Self {
        Output { body, ok: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli.out, &out.body) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(path: &Option<PathBuf>, body: &str) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, body),
        None => io::stdout().lock().write_all(body.as_bytes()),
    }
}

fn run(cli: &Cli) -> CliResult<Output> {
    let mut limits = Limits::default();
    if let Some(cap) = cli.max_n {
        limits.algebra_max_n = cap;
    }
    match &cli.command {
        Command::Spectrum(a) => spectrum(a, cli.format.unwrap_or(Format::Json), &limits),
        Command::Filtration(a) => filtration(a, cli.format.unwrap_or(Format::Text), &limits),
        Command::Matrix(a) => matrix(a, cli.format.unwrap_or(Format::Csv), &limits),
        Command::Verify(a) => verify(a, cli.format.unwrap_or(Format::Text), &limits),
        Command::Simulate(a) => simulate(a, cli.format.unwrap_or(Format::Json), &limits),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn resolve_weights(n: Option<usize>, w: &WeightArgs) -> CliResult<QWeights> {
    if let Some(text) = &w.weights {
        let weights = QWeights::new(parse_rational_list(text)?)?;
        if let Some(n) = n {
            if n != weights.n() {
                return Err(Failure::Usage(format!("--n {n} but {} weights given", weights.n())));
            }
        }
        return Ok(weights);
    }
    let n = n.ok_or_else(|| Failure::Usage("--n is required unless --weights is given".into()))?;
    if n == 0 {
        return Err(Error::EmptyDegree.into());
    }
    let weights = if w.t2r {
        QWeights::top_to_random(n)?
    } else if w.unweighted {
        QWeights::unweighted(n)?
    } else if w.r2b {
        QWeights::random_to_below(n)?
    } else {
        return Err(Failure::Usage("give --weights or one of --r2b, --t2r, --unweighted".into()));
    };
    Ok(weights)
}

fn spectrum(a: &SpectrumArgs, format: Format, limits: &Limits) -> CliResult<Output> {
    let weights = resolve_weights(a.n, &a.weights)?;
    let report = full_spectrum(&weights)?;
    let certificate = if a.certificate { Some(diagonalizable_certificate(&weights)?) } else { None };
    let minpoly = if a.minpoly {
        limits.check_minpoly(weights.n())?;
        Some(minimal_polynomial(&one_sided_cycle_shuffle(&weights)?, limits)?)
    } else {
        None
    };
    let body = match format {
        Format::Json => {
            let mut v = report.to_json();
            if let Some(c) = &certificate {
                v["diagonalizability"] = json!(c.as_str());
            }
            if let Some(p) = &minpoly {
                v["minimal_polynomial"] = polynomial_to_json(p);
            }
            pretty(&v)
        }
        Format::Csv => {
            let mut out = String::from("i,set,m,eigenvalue,multiplicity\n");
            for (k, r) in report.rows.iter().enumerate() {
                let m: Vec<String> = r.m.iter().map(usize::to_string).collect();
                out.push_str(&format!(
                    "{},\"{}\",\"{}\",{},{}\n",
                    k + 1,
                    r.set,
                    m.join(","),
                    format_rational(&r.eigenvalue),
                    r.multiplicity
                ));
            }
            out
        }
        Format::Text => {
            let mut out = report.to_text();
            if let Some(c) = &certificate {
                out.push_str(&format!("diagonalizability: {}\n", c.as_str()));
            }
            if let Some(p) = &minpoly {
                out.push_str(&format!("minimal polynomial: {p}\n"));
            }
            out
        }
    };
    Ok(Output::ok(body))
}

fn filtration(a: &FiltrationArgs, format: Format, limits: &Limits) -> CliResult<Output> {
    let n = a.n;
    let catalog = LacunarCatalog::new(n)?;
    let deltas = delta_vector(&catalog);
    let dims: Vec<String> = if a.by_counting {
        filtration_dimensions(n, limits)?.iter().skip(1).map(usize::to_string).collect()
    } else {
        cumulative_dimensions(&deltas).iter().map(|d| d.to_string()).collect()
    };
    let rows: Vec<(usize, String, String, String, String)> = catalog
        .iter()
        .map(|(i, q)| (i, q.to_string(), non_shadow(q, n).to_string(), dims[i - 1].clone(), deltas[i - 1].to_string()))
        .collect();
    let body = match format {
        Format::Json => pretty(&json!({
            "n": n,
            "method": if a.by_counting { "counting" } else { "formula" },
            "rows": rows.iter().map(|(i, q, qp, dim, d)| json!({
                "i": i,
                "set": catalog.set(*i).to_vec(),
                "non_shadow": non_shadow(catalog.set(*i), n).to_vec(),
                "display": [q, qp],
                "dim": dim,
                "delta": d,
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("i,Q_i,Q_i',dim F_i,delta_i\n");
            for (i, q, qp, dim, d) in &rows {
                out.push_str(&format!("{i},\"{q}\",\"{qp}\",{dim},{d}\n"));
            }
            out
        }
        Format::Text => {
            let widths = [
                rows.iter().map(|r| r.0.to_string().len()).max().unwrap_or(1).max(1),
                rows.iter().map(|r| r.1.len()).max().unwrap_or(3).max(3),
                rows.iter().map(|r| r.2.len()).max().unwrap_or(4).max(4),
                rows.iter().map(|r| r.3.len()).max().unwrap_or(8).max(8),
                rows.iter().map(|r| r.4.len()).max().unwrap_or(3).max(3),
            ];
            let line = |c: [&str; 5]| {
                format!(
                    "{:>w0$}  {:<w1$}  {:<w2$}  {:>w3$}  {:>w4$}\n",
                    c[0],
                    c[1],
                    c[2],
                    c[3],
                    c[4],
                    w0 = widths[0],
                    w1 = widths[1],
                    w2 = widths[2],
                    w3 = widths[3],
                    w4 = widths[4]
                )
            };
            let mut out = line(["i", "Q_i", "Q_i'", "dim F_i", "δ_i"]);
            for (i, q, qp, dim, d) in &rows {
                out.push_str(&line([&i.to_string(), q, qp, dim, d]));
            }
            out
        }
    };
    Ok(Output::ok(body))
}

fn osc_distribution(n: usize, text: &str) -> CliResult<PositionDistribution> {
    Ok(match text.trim() {
        "r2b" | "uniform" => PositionDistribution::uniform(n)?,
        "t2r" => PositionDistribution::point_mass(n, 1)?,
        "unweighted" => PositionDistribution::unweighted(n)?,
        list => {
            let p = PositionDistribution::new(parse_rational_list(list)?)?;
            if p.n() != n {
                return Err(Failure::Usage(format!("--n {n} but the distribution has {} entries", p.n())));
            }
            p
        }
    })
}

fn matrix(a: &MatrixArgs, format: Format, limits: &Limits) -> CliResult<Output> {
    let n = a.n;
    limits.check_algebra("matrix export", n)?;
    let x: QAlgebraElement = if let Some(l) = a.t {
        build_t(n, l)?
    } else if let Some(l) = a.t_prime {
        build_t_prime(n, l)?
    } else if let Some(text) = &a.osc {
        build_osc(&osc_distribution(n, text)?)?
    } else if let Some(text) = &a.weights {
        let w = QWeights::new(parse_rational_list(text)?)?;
        if w.n() != n {
            return Err(Failure::Usage(format!("--n {n} but {} weights given", w.n())));
        }
        one_sided_cycle_shuffle(&w)?
    } else {
        return Err(Failure::Usage("give one of --t, --t-prime, --osc, --weights".into()));
    };

    let (labels, m, kind, order): (Vec<String>, QMatrix, &str, &str) = if a.transition {
        if a.basis != BasisArg::Std || a.order != OrderArg::Lex {
            return Err(Failure::Usage("--transition uses the standard basis in lexicographic order".into()));
        }
        let tm = transition_matrix(&x, limits)?;
        let labels = tm.permutations().iter().map(|w| w.to_string()).collect();
        (labels, tm.matrix().clone(), "transition", "lex")
    } else {
        let order = match a.order {
            OrderArg::Lex => BasisOrder::Lex,
            OrderArg::Qindex => BasisOrder::QIndex,
            OrderArg::QindexDesc => BasisOrder::QIndexDesc,
        };
        let order_name = match a.order {
            OrderArg::Lex => "lex",
            OrderArg::Qindex => "qindex",
            OrderArg::QindexDesc => "qindex-desc",
        };
        if a.basis == BasisArg::Std && a.order == OrderArg::Lex {
            let perms = all_permutations(n)?;
            (perms.iter().map(|w| w.to_string()).collect(), rmul_standard_matrix(&x, limits)?, "std", order_name)
        } else {
            let fam = BasisFamily::new(n, limits)?;
            let kind = match a.basis {
                BasisArg::Std => BasisKind::Standard,
                BasisArg::A => BasisKind::A,
                BasisArg::B => BasisKind::B,
            };
            let m = fam.rmul_matrix(&x, kind, order, None)?;
            let labels = fam.ordering(order).iter().map(|&r| fam.permutations()[r].to_string()).collect();
            let basis_name = match a.basis {
                BasisArg::Std => "std",
                BasisArg::A => "a",
                BasisArg::B => "b",
            };
            (labels, m, basis_name, order_name)
        }
    };

    let body = match format {
        Format::Csv => m.to_csv(&labels, format_rational),
        Format::Json => pretty(&json!({
            "n": n,
            "basis": kind,
            "order": order,
            "labels": labels,
            "rows": (0..m.rows()).map(|i| m.row(i).iter().map(format_rational).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut out = String::new();
            for i in 0..m.rows() {
                let row: Vec<String> = m.row(i).iter().map(|v| v.to_string()).collect();
                out.push_str(&format!("[{}]  {}\n", labels[i], row.join(" ")));
            }
            out
        }
    };
    Ok(Output::ok(body))
}

fn verify(a: &VerifyArgs, format: Format, limits: &Limits) -> CliResult<Output> {
    let suites: Vec<Suite> = match a.suite {
        SuiteArg::Triangularity => vec![Suite::Triangularity],
        SuiteArg::Annihilator => vec![Suite::Annihilator],
        SuiteArg::Duality => vec![Suite::Duality],
        SuiteArg::Identities => vec![Suite::Identities],
        SuiteArg::BooleanPartition => vec![Suite::BooleanPartition],
        SuiteArg::All => Suite::ALL.to_vec(),
    };
    let reports = suites.into_iter().map(|s| run_suite(s, a.n, limits)).collect::<Result<Vec<_>, _>>()?;
    let ok = reports.iter().all(|r| r.passed());
    let body = match format {
        Format::Json => pretty(&json!({
            "n": a.n,
            "passed": ok,
            "suites": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("suite,n,check,passed,detail\n");
            for r in &reports {
                for c in &r.checks {
                    out.push_str(&format!(
                        "{},{},\"{}\",{},\"{}\"\n",
                        r.suite,
                        r.n,
                        c.name.replace('"', "\"\""),
                        c.passed,
                        c.detail.replace('"', "\"\"")
                    ));
                }
            }
            out
        }
        Format::Text => {
            let mut out: String = reports.iter().map(|r| r.to_text()).collect();
            out.push_str(if ok { "all checks passed\n" } else { "some checks FAILED\n" });
            out
        }
    };
    Ok(Output { body, ok })
}

fn simulate(a: &SimulateArgs, format: Format, limits: &Limits) -> CliResult<Output> {
    if a.trials == 0 {
        return Err(Failure::Usage("--trials must be positive".into()));
    }
    let result = if a.fast {
        fast_bookmark_sim(a.n, a.trials, a.seed)?
    } else {
        let p = match &a.dist {
            Some(text) => osc_distribution(a.n, text)?,
            None => PositionDistribution::uniform(a.n)?,
        };
        simulate_sst(&p, a.trials, a.seed, a.record_final, limits)?
    };
    let chi = match &result.final_counts {
        Some(counts) if counts.len() > 1 => Some(chi_square_uniform(counts)?),
        _ => None,
    };
    let body = match format {
        Format::Json => {
            let mut v = result.to_json();
            if let Some(c) = &chi {
                v["uniformity"] = json!({
                    "statistic": c.statistic,
                    "degrees_of_freedom": c.degrees_of_freedom,
                    "p_value": c.p_value,
                });
            }
            pretty(&v)
        }
        Format::Csv => {
            let mut out = String::from("tau,count\n");
            for (t, c) in result.histogram.iter().enumerate().filter(|(_, &c)| c > 0) {
                out.push_str(&format!("{t},{c}\n"));
            }
            out
        }
        Format::Text => {
            let mut out = format!(
                "n = {}\ntrials = {}\nseed = {}\nrng = {}\nmean = {:.6}\nstderr = {:.6}\n",
                result.n, result.trials, result.seed, result.rng, result.mean, result.stderr
            );
            if let Some(e) = &result.exact {
                out.push_str(&format!("exact = {} ({:.6})\n", format_rational(e), rational_to_f64(e)));
            }
            if let (Some(u), Some(l)) = (result.upper_bound, result.conjectured_lower) {
                out.push_str(&format!("upper bound = {u:.6}\nconjectured lower bound = {l:.6}\n"));
            }
            if let Some(c) = &chi {
                out.push_str(&format!(
                    "uniformity at tau: chi2 = {:.3}, df = {}, p = {:.4}\n",
                    c.statistic, c.degrees_of_freedom, c.p_value
                ));
            }
            out
        }
    };
    Ok(Output::ok(body))
}
