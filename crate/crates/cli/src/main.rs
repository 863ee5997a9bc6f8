//! Batch front end: graph dumps, weight tables, strata and A∞ verification runs.
//!
//! Exit codes: 0 success / verification passed, 1 verification failed, 2 usage error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use formality_core::formality::{verify_report, FlipCup, FlipWedge, Koszul, SignConvention, VerifyParams};
use formality_core::graphs::enumerate_gnm;
use formality_core::strata::{codim1_strata_cn, codim1_strata_cnm_report};
use formality_core::weights::{weight_table, BumpFunction, WeightCache, WeightConfig, WeightMode};

#[derive(Debug, Parser)]
#[command(
    name = "formality",
    about = "A∞ formality morphism: graphs, weights, strata, verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Mode {
    ExactPreferred,
    McOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Signs {
    Koszul,
    /// Negative control: negated cup-term signs.
    FlipCup,
    FlipWedge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum SpaceKind {
    /// C(n, m): points on both sides of the origin.
    Cnm,
    /// C(n): points on the line.
    Cn,
}

#[derive(Debug, Clone, clap::Args, Serialize, Deserialize)]
struct WeightArgs {
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "quartic-kernel")]
    phi: BumpFunction,
    #[arg(long, value_enum, default_value_t = Mode::ExactPreferred)]
    mode: Mode,
}

impl WeightArgs {
    fn config(&self) -> WeightConfig {
        WeightConfig {
            mode: match self.mode {
                Mode::ExactPreferred => WeightMode::ExactPreferred,
                Mode::McOnly => WeightMode::McOnly,
            },
            bump: self.phi,
            samples: self.samples,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "lowercase")]
enum Command {
    /// Enumerate G(n, m).
    Graphs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weight table for every graph of G(n, m).
    Weights {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        #[serde(flatten)]
        weights: WeightArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the A∞-relation on seeded random inputs.
    Verify {
        /// Comma-separated polyvector degrees; their count is n.
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<usize>,
        /// Must equal the number of degrees when given.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        vars: u32,
        #[arg(long, value_enum, default_value_t = Signs::Koszul)]
        signs: Signs,
        #[arg(long, default_value_t = 5.0)]
        tolerance: f64,
        #[command(flatten)]
        #[serde(flatten)]
        weights: WeightArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Codimension-one boundary strata.
    Strata {
        #[arg(long, value_enum)]
        kind: SpaceKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-run the configuration embedded in an earlier output file.
    #[serde(skip)]
    Rerun {
        /// JSON or CSV output of an earlier run.
        from: PathBuf,
        /// Write somewhere other than the recorded path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Usage-level failure (exit 2).
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Usage(msg.into()).into())
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn json_doc(config: &Command, key: &str, body: impl Serialize) -> Result<String> {
    let mut doc = serde_json::Map::new();
    doc.insert("config".into(), serde_json::to_value(config)?);
    doc.insert(key.into(), serde_json::to_value(body)?);
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

fn csv_doc<T: Serialize>(config: &Command, rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let body = String::from_utf8(w.into_inner()?)?;
    Ok(format!("# config: {}\n{body}", serde_json::to_string(config)?))
}

#[derive(Serialize)]
struct GraphRow {
    id: usize,
    graph: serde_json::Value,
}

#[derive(Serialize)]
struct GraphCsvRow {
    id: usize,
    n: usize,
    m: usize,
    graph: String,
}

#[derive(Serialize)]
struct StratumRow {
    id: usize,
    variant: String,
    /// `+`-joined factor spaces, e.g. `C(2)+C(1,1)`.
    factors: String,
    factor_dims: String,
}

fn render<T: Serialize>(cmd: &Command, format: Format, key: &str, rows: &[T]) -> Result<String> {
    match format {
        Format::Json => json_doc(cmd, key, rows),
        Format::Csv => csv_doc(cmd, rows),
    }
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join("+")
}

fn stratum_rows(kind: SpaceKind, n: usize, m: usize) -> Result<Vec<StratumRow>> {
    let rows = match kind {
        SpaceKind::Cnm => {
            let strata = codim1_strata_cnm_report(n, m).or_else(|e| usage(e.to_string()))?.strata;
            strata
                .iter()
                .enumerate()
                .map(|(id, s)| StratumRow {
                    id,
                    variant: s.variant().to_string(),
                    factors: join(&s.factors),
                    factor_dims: join(s.factors.iter().map(|f| f.dim())),
                })
                .collect()
        }
        SpaceKind::Cn => {
            let strata = codim1_strata_cn(n).or_else(|e| usage(e.to_string()))?;
            strata
                .iter()
                .enumerate()
                .map(|(id, s)| StratumRow {
                    id,
                    variant: format!("block {}..{}", s.block.0, s.block.1),
                    factors: join(&s.factors),
                    factor_dims: join(s.factors.iter().map(|f| f.dim())),
                })
                .collect()
        }
    };
    Ok(rows)
}

/// Reads the configuration echoed at the top of a JSON or CSV output.
fn read_config(path: &PathBuf) -> Result<Command> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let config = match text.strip_prefix("# config: ") {
        Some(rest) => serde_json::from_str(rest.lines().next().unwrap_or_default())?,
        None => {
            let doc: serde_json::Value = serde_json::from_str(&text)?;
            serde_json::from_value(doc["config"].clone())?
        }
    };
    Ok(config)
}

fn run(cmd: &Command) -> Result<bool> {
    match cmd {
        Command::Graphs { n, m, format, out } => {
            let graphs = enumerate_gnm(*n, *m).or_else(|e| usage(e.to_string()))?;
            let text = match format {
                Format::Json => {
                    let rows: Vec<GraphRow> = graphs
                        .iter()
                        .enumerate()
                        .map(|(id, g)| GraphRow {
                            id,
                            graph: serde_json::to_value(g.graph()).expect("graph"),
                        })
                        .collect();
                    json_doc(cmd, "graphs", rows)?
                }
                Format::Csv => {
                    let rows: Vec<GraphCsvRow> = graphs
                        .iter()
                        .enumerate()
                        .map(|(id, g)| GraphCsvRow {
                            id,
                            n: g.n(),
                            m: g.m(),
                            graph: g.to_json(),
                        })
                        .collect();
                    csv_doc(cmd, &rows)?
                }
            };
            emit(out, &text)?;
            Ok(true)
        }
        Command::Weights {
            n,
            m,
            weights,
            format,
            out,
        } => {
            let graphs = enumerate_gnm(*n, *m).or_else(|e| usage(e.to_string()))?;
            let rows = weight_table(&graphs, &weights.config());
            emit(out, &render(cmd, *format, "weights", &rows)?)?;
            Ok(true)
        }
        Command::Verify {
            degrees,
            n,
            trials,
            vars,
            signs,
            tolerance,
            weights,
            format,
            out,
        } => {
            if let Some(n) = n {
                if *n != degrees.len() {
                    return usage(format!("--n {n} but {} degrees given", degrees.len()));
                }
            }
            if degrees.is_empty() {
                return usage("need at least one degree");
            }
            if *vars == 0 {
                return usage("--vars must be at least 1");
            }
            let params = VerifyParams {
                degrees: degrees.clone(),
                var_count: *vars,
                trials: *trials,
                seed: weights.seed,
                max_coeff_degree: 3,
                tolerance_factor: *tolerance,
            };
            let convention: Box<dyn SignConvention> = match signs {
                Signs::Koszul => Box::new(Koszul),
                Signs::FlipCup => Box::new(FlipCup(Koszul)),
                Signs::FlipWedge => Box::new(FlipWedge(Koszul)),
            };
            let cache = WeightCache::new(weights.config());
            let report = verify_report(&params, convention.as_ref(), &cache)?;
            let text = match format {
                Format::Json => json_doc(cmd, "report", &report)?,
                Format::Csv => csv_doc(cmd, &report.trials)?,
            };
            emit(out, &text)?;
            eprintln!(
                "verify {:?}: mode {}, max residual {:e}, max |r|/stderr {:.3}, {}",
                degrees,
                report.mode,
                report.max_residual,
                report.trials.iter().map(|t| t.max_ratio).fold(0.0, f64::max),
                if report.pass { "PASS" } else { "FAIL" }
            );
            Ok(report.pass)
        }
        Command::Strata {
            kind,
            n,
            m,
            format,
            out,
        } => {
            let rows = stratum_rows(*kind, *n, *m)?;
            emit(out, &render(cmd, *format, "strata", &rows)?)?;
            Ok(true)
        }
        Command::Rerun { from, out } => {
            let mut config = read_config(from).or_else(|e| usage(format!("{}: {e:#}", from.display())))?;
            if let Some(path) = out {
                match &mut config {
                    Command::Graphs { out, .. }
                    | Command::Weights { out, .. }
                    | Command::Verify { out, .. }
                    | Command::Strata { out, .. } => *out = Some(path.clone()),
                    Command::Rerun { .. } => unreachable!("never serialized"),
                }
            }
            run(&config)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
