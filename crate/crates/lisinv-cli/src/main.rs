//! Command-line front end: exact distributions, generating-function
//! coefficients, moment tables, slope sweeps, uniform sampling, and the
//! oracle-equivalence verification suite, as CSV or JSON.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input or limit error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde_json::{json, Value};

use lisinv_core::decimal::decimal_sig;
use lisinv_core::gf::{moments_jet, Catalog};
use lisinv_core::oracle::{enumerate_involutions, Oracle, PatternSet};
use lisinv_core::perm::{Pattern, Permutation};
use lisinv_core::sampler::{monte_carlo_lis, RestrictedSampler, SampleStats, RNG_ALGORITHM};
use lisinv_core::series::{rat, render_rat, Rat};
use lisinv_core::verify::{run_all, VerifyConfig};

#[derive(Parser)]
#[command(
    name = "lisinv",
    version,
    about = "Exact LIS statistics of 3412-avoiding involutions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format for tabular commands
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the output to a file (atomically) instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List the involutions of [n], optionally filtered by avoided patterns
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Comma-separated patterns to avoid (e.g. "3412,321")
        #[arg(long)]
        avoid: Option<String>,
    },
    /// Exact LIS distribution of the involutions of [n] avoiding the patterns
    Distribution {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "3412")]
        avoid: String,
    },
    /// Coefficients [x^n q^k] of a catalog generating function
    GfCoeffs {
        /// Catalog name (e.g. H_3412, H_321, F_4, Dec_5, Table1_1432)
        #[arg(long)]
        gf: String,
        #[arg(long)]
        order: usize,
        /// Restrict the printed sizes to A..B
        #[arg(long)]
        n_range: Option<String>,
    },
    /// Exact E and Var of the LIS at the given sizes
    Moments {
        #[arg(long)]
        gf: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        n_range: Option<String>,
        /// Truncation order (default: largest requested size)
        #[arg(long)]
        order: Option<usize>,
    },
    /// Slope sweep of all table rows against their asymptotic constants
    Table1 {
        #[arg(long, default_value_t = 2000)]
        n_hi: usize,
        /// Lower size for the difference quotient (default n_hi/2)
        #[arg(long)]
        n_lo: Option<usize>,
        /// Relative tolerance for PASS/FAIL
        #[arg(long, default_value_t = 0.01)]
        tolerance: f64,
    },
    /// Run the oracle-equivalence verification suite (JSON report)
    Verify {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[arg(long, default_value_t = 64)]
        order: usize,
        /// Run only the named generating function's checks
        #[arg(long)]
        only: Option<String>,
        /// Alternative table file (for corruption experiments)
        #[arg(long)]
        table1_file: Option<PathBuf>,
    },
    /// Uniform random involutions and Monte Carlo LIS statistics
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample from I_n(avoid) by enumerate-and-index (n ≤ 12)
        #[arg(long)]
        avoid: Option<String>,
    },
    /// Finite-n slope estimates for one generating function
    Slopes {
        #[arg(long)]
        gf: String,
        /// Sizes A..B for the difference quotient (default 1000..2000)
        #[arg(long)]
        n_range: Option<String>,
    },
}

/// 2 = input/limit error, 1 = verification failure.
enum CmdError {
    Input(String),
}

impl From<lisinv_core::gf::GfError> for CmdError {
    fn from(e: lisinv_core::gf::GfError) -> Self {
        CmdError::Input(e.to_string())
    }
}

impl From<lisinv_core::oracle::OracleError> for CmdError {
    fn from(e: lisinv_core::oracle::OracleError) -> Self {
        CmdError::Input(e.to_string())
    }
}

impl From<lisinv_core::sampler::SamplerError> for CmdError {
    fn from(e: lisinv_core::sampler::SamplerError) -> Self {
        CmdError::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut failed_checks = false;
    match run(&cli, &mut failed_checks) {
        Ok(output) => {
            if let Err(e) = emit(&cli.out, &output) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if failed_checks {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(CmdError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Writes in one shot; with `--out`, via a temp file renamed into place.
fn emit(out: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match out {
        None => {
            use std::io::Write;
            // a closed pipe downstream is not our error
            match std::io::stdout().write_all(text.as_bytes()) {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => other,
            }
        }
        Some(path) => {
            let tmp = path.with_extension("tmp");
            std::fs::write(&tmp, text)?;
            std::fs::rename(&tmp, path)
        }
    }
}

fn parse_patterns(spec: &str) -> Result<Vec<Pattern>, CmdError> {
    spec.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<Pattern>()
                .map_err(|e| CmdError::Input(format!("pattern `{t}`: {e}")))
        })
        .collect()
}

fn parse_range(spec: &str) -> Result<(usize, usize), CmdError> {
    let (a, b) = spec
        .split_once("..")
        .ok_or_else(|| CmdError::Input(format!("range `{spec}` must look like A..B")))?;
    let lo = a
        .trim()
        .parse()
        .map_err(|_| CmdError::Input(format!("bad range start `{a}`")))?;
    let hi = b
        .trim()
        .parse()
        .map_err(|_| CmdError::Input(format!("bad range end `{b}`")))?;
    if lo > hi {
        return Err(CmdError::Input(format!("empty range {lo}..{hi}")));
    }
    Ok((lo, hi))
}

/// Permutation cell that stays comma-free in CSV (spaces for n ≥ 10).
fn perm_cell(p: &Permutation) -> String {
    if p.len() <= 9 {
        p.to_string()
    } else {
        p.entries()
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A rendered table; CSV and JSON carry exactly the same cells.
struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut out = String::new();
                let _ = writeln!(out, "{}", self.columns.join(","));
                for row in &self.rows {
                    let _ = writeln!(out, "{}", row.join(","));
                }
                out
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let mut obj = serde_json::Map::new();
                        for (c, v) in self.columns.iter().zip(row) {
                            obj.insert((*c).to_string(), Value::String(v.clone()));
                        }
                        Value::Object(obj)
                    })
                    .collect();
                let mut s = serde_json::to_string_pretty(&Value::Array(rows)).expect("json");
                s.push('\n');
                s
            }
        }
    }
}

fn run(cli: &Cli, failed_checks: &mut bool) -> Result<String, CmdError> {
    match &cli.command {
        Command::Enumerate { n, avoid } => cmd_enumerate(*n, avoid.as_deref(), cli.format),
        Command::Distribution { n, avoid } => cmd_distribution(*n, avoid, cli.format),
        Command::GfCoeffs { gf, order, n_range } => {
            cmd_gf_coeffs(gf, *order, n_range.as_deref(), cli.format)
        }
        Command::Moments {
            gf,
            n,
            n_range,
            order,
        } => cmd_moments(gf, *n, n_range.as_deref(), *order, cli.format),
        Command::Table1 {
            n_hi,
            n_lo,
            tolerance,
        } => cmd_table1(*n_hi, *n_lo, *tolerance, cli.format, failed_checks),
        Command::Verify {
            max_n,
            order,
            only,
            table1_file,
        } => cmd_verify(
            *max_n,
            *order,
            only.clone(),
            table1_file.as_deref(),
            failed_checks,
        ),
        Command::Sample {
            n,
            samples,
            seed,
            avoid,
        } => cmd_sample(*n, *samples, *seed, avoid.as_deref(), cli.format),
        Command::Slopes { gf, n_range } => cmd_slopes(gf, n_range.as_deref(), cli.format),
    }
}

fn cmd_enumerate(n: usize, avoid: Option<&str>, format: Format) -> Result<String, CmdError> {
    let set = match avoid {
        None => None,
        Some(spec) => Some(PatternSet::bare(parse_patterns(spec)?)),
    };
    let mut rows = Vec::new();
    for p in enumerate_involutions(n)? {
        if set.as_ref().is_none_or(|s| s.admits(&p)) {
            rows.push(vec![n.to_string(), perm_cell(&p), p.lis().to_string()]);
        }
    }
    Ok(Table {
        columns: vec!["n", "involution", "lis"],
        rows,
    }
    .render(format))
}

fn cmd_distribution(n: usize, avoid: &str, format: Format) -> Result<String, CmdError> {
    let set = PatternSet::bare(parse_patterns(avoid)?);
    let mut oracle = Oracle::new();
    let dist = oracle.lis_distribution(n, &set)?;
    match format {
        Format::Csv => {
            let rows = dist
                .counts
                .iter()
                .map(|(&k, &c)| vec![n.to_string(), k.to_string(), c.to_string()])
                .collect();
            Ok(Table {
                columns: vec!["n", "k", "count"],
                rows,
            }
            .render(Format::Csv))
        }
        Format::Json => {
            let counts: serde_json::Map<String, Value> = dist
                .counts
                .iter()
                .map(|(&k, &c)| (k.to_string(), json!(c)))
                .collect();
            let patterns: Vec<String> = set.patterns().iter().map(|p| p.to_string()).collect();
            let value = json!({
                "n": n,
                "patterns": patterns,
                "class_size": dist.class_size,
                "counts": counts,
            });
            let mut s = serde_json::to_string_pretty(&value).expect("json");
            s.push('\n');
            Ok(s)
        }
    }
}

fn cmd_gf_coeffs(
    gf: &str,
    order: usize,
    n_range: Option<&str>,
    format: Format,
) -> Result<String, CmdError> {
    let catalog = Catalog::load()?;
    let series = catalog.bi_series(gf, order)?;
    let (lo, hi) = match n_range {
        Some(spec) => parse_range(spec)?,
        None => (0, order),
    };
    if hi > order {
        return Err(CmdError::Input(format!(
            "range end {hi} exceeds order {order}"
        )));
    }
    let mut rows = Vec::new();
    for n in lo..=hi {
        let slice = series.slice(n);
        for (k, c) in slice.coeffs().iter().enumerate() {
            if !c.is_zero() {
                rows.push(vec![n.to_string(), k.to_string(), render_rat(c)]);
            }
        }
    }
    Ok(Table {
        columns: vec!["n", "k", "coeff"],
        rows,
    }
    .render(format))
}

fn cmd_moments(
    gf: &str,
    n: Option<usize>,
    n_range: Option<&str>,
    order: Option<usize>,
    format: Format,
) -> Result<String, CmdError> {
    let (lo, hi) = match (n, n_range) {
        (Some(n), None) => (n, n),
        (None, Some(spec)) => parse_range(spec)?,
        _ => {
            return Err(CmdError::Input(
                "pass exactly one of --n or --n-range".into(),
            ))
        }
    };
    let order = order.unwrap_or(hi).max(hi);
    let catalog = Catalog::load()?;
    let jets = catalog.jet_series(gf, order)?;
    let mut rows = Vec::new();
    for size in lo..=hi {
        let m = moments_jet(&jets, size)?;
        rows.push(vec![
            size.to_string(),
            render_rat(&m.e),
            render_rat(&m.var),
            decimal_sig(&m.e, 12),
            decimal_sig(&m.var, 12),
        ]);
    }
    Ok(Table {
        columns: vec!["n", "e", "var", "e_decimal", "var_decimal"],
        rows,
    }
    .render(format))
}

fn tolerance_to_rat(tolerance: f64) -> Result<Rat, CmdError> {
    if !(tolerance > 0.0 && tolerance < 1.0) {
        return Err(CmdError::Input(format!(
            "tolerance {tolerance} out of (0, 1)"
        )));
    }
    Ok(rat((tolerance * 1e9).round() as i64, 1_000_000_000))
}

fn cmd_table1(
    n_hi: usize,
    n_lo: Option<usize>,
    tolerance: f64,
    format: Format,
    failed_checks: &mut bool,
) -> Result<String, CmdError> {
    let tol = tolerance_to_rat(tolerance)?;
    let n_lo = n_lo.unwrap_or(n_hi / 2);
    let catalog = Catalog::load()?;
    let mut rows = Vec::new();
    for row in &catalog.data().rows {
        let name = format!("Table1_{}", row.key);
        let slope = catalog.asymptotic_slope(&name, n_lo, n_hi)?;
        let mut cells = vec![
            row.key.clone(),
            row.patterns
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        ];
        let mut row_pass = true;
        for which in ["E", "Var"] {
            let (interval, mode) = catalog.constant(&format!("tbl_{}_{which}", row.key))?;
            let stat = if which == "E" {
                slope.e_statistic(mode)
            } else {
                slope.var_statistic(mode)
            };
            let rel = interval.relative_error(&stat);
            let pass = rel <= tol;
            row_pass &= pass;
            cells.push(mode.as_str().to_string());
            cells.push(decimal_sig(&stat, 12));
            cells.push(interval.decimal(12));
            let floor = rat(1, 1_000_000_000_000_000);
            cells.push(if rel < floor {
                "<1e-15".to_string()
            } else {
                decimal_sig(&rel, 3)
            });
            cells.push(if pass { "PASS" } else { "FAIL" }.to_string());
        }
        *failed_checks |= !row_pass;
        rows.push(cells);
    }
    Ok(Table {
        columns: vec![
            "row",
            "patterns",
            "e_mode",
            "e_slope",
            "e_const",
            "e_rel_err",
            "e_verdict",
            "var_mode",
            "var_slope",
            "var_const",
            "var_rel_err",
            "var_verdict",
        ],
        rows,
    }
    .render(format))
}

fn cmd_verify(
    max_n: usize,
    order: usize,
    only: Option<String>,
    table1_file: Option<&std::path::Path>,
    failed_checks: &mut bool,
) -> Result<String, CmdError> {
    let catalog = match table1_file {
        None => Catalog::load()?,
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CmdError::Input(format!("{}: {e}", path.display())))?;
            Catalog::load_from_str(&text)?
        }
    };
    let cfg = VerifyConfig { max_n, order, only };
    let results = run_all(&catalog, &cfg)?;
    let all_passed = results.iter().all(|r| r.passed);
    *failed_checks = !all_passed;
    let checks: Vec<Value> = results
        .iter()
        .map(|r| {
            json!({
                "name": r.name,
                "passed": r.passed,
                "counterexample": r.detail,
            })
        })
        .collect();
    let report = json!({
        "max_n": max_n,
        "order": order,
        "passed": all_passed,
        "checks": checks,
    });
    let mut s = serde_json::to_string_pretty(&report).expect("json");
    s.push('\n');
    Ok(s)
}

fn stats_table(stats: &SampleStats, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut rows = Vec::new();
            for (&k, &c) in &stats.histogram {
                rows.push(vec![
                    stats.n.to_string(),
                    stats.sample_count.to_string(),
                    stats.seed.to_string(),
                    stats.rng_algorithm.to_string(),
                    k.to_string(),
                    c.to_string(),
                    stats.mean_decimal(12),
                    stats.stderr_decimal(12),
                ]);
            }
            Table {
                columns: vec![
                    "n", "samples", "seed", "rng", "k", "count", "mean", "stderr",
                ],
                rows,
            }
            .render(Format::Csv)
        }
        Format::Json => {
            let histogram: serde_json::Map<String, Value> = stats
                .histogram
                .iter()
                .map(|(&k, &c)| (k.to_string(), json!(c)))
                .collect();
            let value = json!({
                "n": stats.n,
                "sample_count": stats.sample_count,
                "seed": stats.seed,
                "rng": stats.rng_algorithm,
                "mean": render_rat(&stats.mean()),
                "mean_decimal": stats.mean_decimal(12),
                "stderr_decimal": stats.stderr_decimal(12),
                "histogram": histogram,
            });
            let mut s = serde_json::to_string_pretty(&value).expect("json");
            s.push('\n');
            s
        }
    }
}

fn cmd_sample(
    n: usize,
    samples: u64,
    seed: u64,
    avoid: Option<&str>,
    format: Format,
) -> Result<String, CmdError> {
    if samples == 0 {
        return Err(CmdError::Input("need at least one sample".into()));
    }
    let stats = match avoid {
        None => monte_carlo_lis(n, samples, seed),
        Some(spec) => {
            use rand_core::SeedableRng;
            let set = PatternSet::bare(parse_patterns(spec)?);
            let mut sampler = RestrictedSampler::new();
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
            let mut histogram = std::collections::BTreeMap::new();
            for _ in 0..samples {
                let p = sampler.sample(n, &set, &mut rng)?;
                *histogram.entry(p.lis()).or_insert(0u64) += 1;
            }
            SampleStats {
                n,
                sample_count: samples,
                seed,
                rng_algorithm: RNG_ALGORITHM,
                histogram,
            }
        }
    };
    Ok(stats_table(&stats, format))
}

fn cmd_slopes(gf: &str, n_range: Option<&str>, format: Format) -> Result<String, CmdError> {
    let (n_lo, n_hi) = match n_range {
        Some(spec) => parse_range(spec)?,
        None => (1000, 2000),
    };
    let catalog = Catalog::load()?;
    let slope = catalog.asymptotic_slope(gf, n_lo, n_hi)?;
    let rows = vec![vec![
        gf.to_string(),
        n_lo.to_string(),
        n_hi.to_string(),
        render_rat(&slope.at_hi.e),
        decimal_sig(&slope.e_ratio(), 12),
        decimal_sig(&slope.e_diff_quotient(), 12),
        render_rat(&slope.at_hi.var),
        decimal_sig(&slope.var_ratio(), 12),
        decimal_sig(&slope.var_diff_quotient(), 12),
    ]];
    Ok(Table {
        columns: vec![
            "gf",
            "n_lo",
            "n_hi",
            "e_exact",
            "e_over_n",
            "e_diff_quotient",
            "var_exact",
            "var_over_n",
            "var_diff_quotient",
        ],
        rows,
    }
    .render(format))
}
