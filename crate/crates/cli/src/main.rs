use std::fs;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use chernfock::chern::{gk_eigen, gk_fock};
use chernfock::coeff::{m_var, BigRational, QSeries, RatFunc, Var};
use chernfock::fock::{expand_in_monomials, monomial_text, NormalOrderedOp};
use chernfock::qzeta::{bibracket, fit_in_bracket_span, z_value, BracketIndex, Candidate};
use chernfock::report::Report;
use chernfock::suites::{self, Suite, SuiteConfig};
use chernfock::traces::{raw_trace, reduced, TraceSeries};
use chernfock::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "chernfock", version, about = "Exact checks and series for equivariant Chern character operators")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification suite.
    Verify {
        /// One of heisenberg, gamma, jack-eigen, thm-1-2, g2, reduced-closed-forms,
        /// route-equality, qzeta-identities, derivative, thm-1-4, conjecture-probe,
        /// vacuum-trace, young, all.
        suite: String,
        #[arg(long)]
        qmax: Option<usize>,
        #[arg(long)]
        degmax: Option<u32>,
        /// Comma-separated list of k.
        #[arg(long, value_delimiter = ',')]
        k: Option<Vec<u32>>,
        #[arg(long)]
        n: Option<u32>,
    },
    /// Trace generating series of ch_k1 ... ch_kN.
    Trace(SeriesArgs),
    /// The trace divided by the vacuum trace.
    Reduced(SeriesArgs),
    /// Brackets, bi-brackets and Z-values, optionally fitted against candidates.
    Brackets {
        /// Comma-separated s-sequence.
        #[arg(long, value_delimiter = ',', default_value = "2")]
        s: Vec<u32>,
        /// Comma-separated r-sequence for a bi-bracket.
        #[arg(long, value_delimiter = ',')]
        r: Option<Vec<u32>>,
        /// Compute Z(s) instead of the bracket.
        #[arg(long)]
        z: bool,
        #[arg(long, default_value_t = 30)]
        qmax: usize,
        /// JSON list of candidate indices such as ["1","4","2"].
        #[arg(long)]
        fit: Option<String>,
    },
    /// Monomial expansion of G_k on degrees ≤ degmax.
    ExpandOp {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 4)]
        degmax: u32,
        /// Longest monomial allowed in the expansion.
        #[arg(long)]
        max_length: Option<usize>,
        /// eigen: expand the eigen-defined matrices; fock: the vertex-operator side.
        #[arg(long, value_enum, default_value_t = OpRoute::Eigen)]
        route: OpRoute,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OpRoute {
    Eigen,
    Fock,
}

#[derive(Args)]
struct SeriesArgs {
    /// Comma-separated list of k (empty for the vacuum).
    #[arg(long, value_delimiter = ',', default_value = "")]
    k: Vec<String>,
    #[arg(long, default_value_t = 8)]
    qmax: usize,
    /// `sym` or an exact rational value.
    #[arg(long, default_value = "sym", allow_hyphen_values = true)]
    m: String,
    /// Rational value for t1 (both or neither of t1, t2).
    #[arg(long, allow_hyphen_values = true)]
    t1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    t2: Option<String>,
}

/// A failure that maps to exit code 2.
#[derive(Debug)]
struct ConfigError(String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn config(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(ConfigError(msg.into()))
}

fn lib_err(e: Error) -> anyhow::Error {
    // window, span and input errors are configuration problems
    config(e.to_string())
}

fn rational(s: &str) -> anyhow::Result<BigRational> {
    s.trim().parse::<BigRational>().map_err(|_| config(format!("not an exact rational: {:?}", s)))
}

fn csv_table(header: &[&str], rows: Vec<Vec<String>>) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| anyhow!(e.to_string()))?)?)
}

fn report_output(r: &Report, f: Format) -> anyhow::Result<String> {
    Ok(match f {
        Format::Json => r.to_json() + "\n",
        Format::Text => r.to_text(),
        Format::Csv => csv_table(
            &["name", "pass", "expected", "got"],
            r.items
                .iter()
                .map(|i| vec![i.name.clone(), i.pass.to_string(), i.expected.clone().unwrap_or_default(), i.got.clone()])
                .collect(),
        )?,
    })
}

fn series_output(s: &TraceSeries, f: Format) -> anyhow::Result<String> {
    Ok(match f {
        Format::Json => s.to_json() + "\n",
        Format::Csv => csv_table(
            &["q_power", "coefficient"],
            s.series.coeffs().iter().enumerate().map(|(n, c)| vec![n.to_string(), c.to_string()]).collect(),
        )?,
        Format::Text => format!("{}\n", s.series),
    })
}

fn parse_klist(k: &[String]) -> anyhow::Result<Vec<u32>> {
    k.iter()
        .filter(|x| !x.trim().is_empty())
        .map(|x| x.trim().parse::<u32>().map_err(|_| config(format!("bad k {:?}", x))))
        .collect()
}

fn run_series(a: &SeriesArgs, reduce: bool, f: Format) -> anyhow::Result<String> {
    let klist = parse_klist(&a.k)?;
    let m = if a.m == "sym" { m_var() } else { RatFunc::from_rational(rational(&a.m)?) };
    eprintln!("computing {} series for k = {:?} through q^{}", if reduce { "reduced" } else { "trace" }, klist, a.qmax);
    let mut s = if reduce { reduced(&klist, a.qmax, &m) } else { raw_trace(&klist, a.qmax, &m) };
    match (&a.t1, &a.t2) {
        (None, None) => {}
        (Some(x), Some(y)) => {
            let subs = [(Var::T1, RatFunc::from_rational(rational(x)?)), (Var::T2, RatFunc::from_rational(rational(y)?))];
            let coeffs: Result<Vec<RatFunc>, _> = s.series.coeffs().iter().map(|c| c.substitute_all(&subs)).collect();
            s.series = QSeries::from_exact(coeffs.map_err(|e| config(e.to_string()))?);
        }
        _ => return Err(config("give both --t1 and --t2, or neither")),
    }
    series_output(&s, f)
}

#[derive(Serialize)]
struct BracketJson {
    index: String,
    kind: &'static str,
    weight: u32,
    depth: usize,
    qmax: usize,
    coefficients: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fit: Option<String>,
}

fn run_brackets(s: &[u32], r: &Option<Vec<u32>>, z: bool, qmax: usize, fit: &Option<String>, f: Format) -> anyhow::Result<(String, bool)> {
    let (series, idx, kind) = if z {
        if r.is_some() {
            return Err(config("--z takes no --r"));
        }
        let idx = BracketIndex::bracket(s).map_err(lib_err)?;
        (z_value(s, qmax).map_err(lib_err)?, idx, "z-value")
    } else {
        let rr = r.clone().unwrap_or_else(|| vec![0; s.len()]);
        let idx = BracketIndex::bi(s, &rr).map_err(lib_err)?;
        (bibracket(s, &rr, qmax).map_err(lib_err)?, idx, if idx_is_plain(&rr) { "bracket" } else { "bi-bracket" })
    };
    let mut ok = true;
    let fit_text = match fit {
        None => None,
        Some(text) => {
            let names: Vec<String> = serde_json::from_str(text).map_err(|e| config(format!("--fit needs a JSON list of strings: {}", e)))?;
            let cands: Vec<Candidate> = names
                .iter()
                .map(|n| if n.trim() == "1" { Ok(Candidate::One) } else { BracketIndex::parse(n).map(Candidate::Index) })
                .collect::<Result<_, _>>()
                .map_err(lib_err)?;
            let outcome = fit_in_bracket_span(&series, &cands, qmax).map_err(lib_err)?;
            ok = outcome.is_fit();
            Some(outcome.to_string())
        }
    };
    let out = match f {
        Format::Json => {
            let j = BracketJson {
                index: idx.to_string(),
                kind,
                weight: idx.weight(),
                depth: idx.depth(),
                qmax,
                coefficients: series.coeffs().iter().map(|c| c.to_string()).collect(),
                fit: fit_text,
            };
            serde_json::to_string_pretty(&j)? + "\n"
        }
        Format::Csv => csv_table(
            &["q_power", "coefficient"],
            series.coeffs().iter().enumerate().map(|(n, c)| vec![n.to_string(), c.to_string()]).collect(),
        )?,
        Format::Text => {
            let mut t = format!("{} {} (weight {}, depth {}): {}\n", kind, idx, idx.weight(), idx.depth(), series);
            if let Some(ft) = fit_text {
                t.push_str(&format!("fit: {}\n", ft));
            }
            t
        }
    };
    Ok((out, ok))
}

fn idx_is_plain(r: &[u32]) -> bool {
    r.iter().all(|&x| x == 0)
}

#[derive(Serialize)]
struct OpJson {
    k: u32,
    degmax: u32,
    route: &'static str,
    terms: Vec<(String, String)>,
}

fn run_expand(k: u32, degmax: u32, max_length: Option<usize>, route: OpRoute, f: Format) -> anyhow::Result<String> {
    eprintln!("expanding G_{} on degrees ≤ {}", k, degmax);
    let op: NormalOrderedOp = match route {
        OpRoute::Eigen => {
            let g = gk_eigen(k, degmax).map_err(lib_err)?;
            expand_in_monomials(&g, degmax, max_length.unwrap_or(k as usize + 2)).map_err(lib_err)?
        }
        OpRoute::Fock => gk_fock(k, degmax).map_err(lib_err)?,
    };
    let terms: Vec<(String, String)> = op.terms().map(|(l, c)| (monomial_text(l), c.to_string())).collect();
    Ok(match f {
        Format::Json => {
            let j = OpJson {
                k,
                degmax,
                route: if route == OpRoute::Eigen { "eigen" } else { "fock" },
                terms,
            };
            serde_json::to_string_pretty(&j)? + "\n"
        }
        Format::Csv => csv_table(&["monomial", "coefficient"], terms.into_iter().map(|(a, b)| vec![a, b]).collect())?,
        Format::Text => format!("{}\n", op),
    })
}

fn execute(cli: &Cli) -> anyhow::Result<(String, bool)> {
    match &cli.cmd {
        Cmd::Verify { suite, qmax, degmax, k, n } => {
            let s: Suite = suite.parse().map_err(lib_err)?;
            let cfg = SuiteConfig {
                qmax: *qmax,
                degmax: *degmax,
                k: k.clone(),
                n: *n,
            };
            let t = Instant::now();
            eprintln!("running {}", s);
            let r = suites::run(s, &cfg).map_err(lib_err)?;
            eprintln!("{} finished in {:.1}s", s, t.elapsed().as_secs_f64());
            Ok((report_output(&r, cli.format)?, r.passed()))
        }
        Cmd::Trace(a) => Ok((run_series(a, false, cli.format)?, true)),
        Cmd::Reduced(a) => Ok((run_series(a, true, cli.format)?, true)),
        Cmd::Brackets { s, r, z, qmax, fit } => run_brackets(s, r, *z, *qmax, fit, cli.format),
        Cmd::ExpandOp { k, degmax, max_length, route } => Ok((run_expand(*k, *degmax, *max_length, *route, cli.format)?, true)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {}", e);
            return ExitCode::from(2);
        }
    }
    match execute(&cli) {
        Ok((text, ok)) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &text).with_context(|| format!("writing {}", path)),
                None => std::io::stdout().write_all(text.as_bytes()).map_err(Into::into),
            };
            if let Err(e) = written {
                eprintln!("error: {:#}", e);
                return ExitCode::from(2);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            // configuration, window and I/O failures are all exit 2
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}

