//! Command-line front end. Thin by design: each subcommand parses its
//! inputs, calls the library, and prints a JSON report on stdout.
//!
//! Exit codes: 0 success, 1 negative result (no containment, no
//! extraction), 2 usage or input error, 3 result inexact due to a budget.

use crate::cache::{CacheRecord, ResultsCache};
use crate::error::Result;
use crate::forb::{forb_exact, forb_k_exact, SearchConfig};
use crate::growth::run_growth;
use crate::matrix::RMatrix;
use crate::patterns::{contains, famspec};
use crate::prooflab::{extract_config_from_template, standard_decomposition, Extraction};
use clap::{Parser, Subcommand};
use serde::Serialize;
use std::path::PathBuf;
use std::time::Duration;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INEXACT: i32 = 3;

#[derive(Parser)]
#[command(
    name = "forbcfg",
    version,
    about = "Exact desk-scale computation for forbidden configurations of r-matrices"
)]
struct Cli {
    /// Reserved; the engine is deterministic and ignores it.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the pattern file appears in the matrix file as a
    /// configuration; prints the witness on success.
    Contains {
        /// The searched matrix (text format).
        matrix: PathBuf,
        /// The pattern (text format).
        pattern: PathBuf,
    },
    /// Maximum simple-matrix column count avoiding the family.
    Forb {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: u8,
        /// Family expression, e.g. "Tfam(2,3)-Tfam(2,2)+Fabcd(0,1,1,0)".
        #[arg(long)]
        family: String,
        /// Restrict candidate columns to exactly K ones.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long = "budget-nodes")]
        budget_nodes: Option<u64>,
        #[arg(long = "budget-ms")]
        budget_ms: Option<u64>,
        /// Worker threads over top-level branches.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Restrict the first column under family-preserving symbol
        /// permutations.
        #[arg(long)]
        symmetry: bool,
        /// Skip the results cache.
        #[arg(long)]
        no_cache: bool,
    },
    /// Extremal values over a row-count range with an exponent fit.
    Growth {
        #[arg(long)]
        family: String,
        #[arg(long)]
        r: u8,
        #[arg(long = "m-from")]
        m_from: usize,
        #[arg(long = "m-to")]
        m_to: usize,
        /// Compare against a named preset (e.g. "i2", "f0220", "h", "k2").
        #[arg(long)]
        claim: Option<String>,
        /// Also write the points as CSV to this path.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Evaluate a matrix or family expression and print it in text format.
    Gen { spec: String },
    /// Standard decomposition of a simple matrix by one row.
    Decompose {
        /// Row index to delete (0-based).
        #[arg(long)]
        row: usize,
        matrix: PathBuf,
    },
    /// Run the clique extraction procedure on a template matrix.
    Extract {
        /// Below-diagonal symbol of the template.
        #[arg(long)]
        x: u8,
        /// Target configuration size.
        #[arg(long)]
        ell: usize,
        /// Small-alphabet bound for the side condition.
        #[arg(long)]
        s: u8,
        matrix: PathBuf,
    },
}

/// Writes to stdout, exiting quietly if the reader closed the pipe.
fn emit(text: impl AsRef<str>) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_ref().as_bytes()).is_err() || out.flush().is_err() {
        std::process::exit(EXIT_OK);
    }
}

fn emit_line(text: impl AsRef<str>) {
    emit(text.as_ref());
    emit("\n");
}

/// Parses arguments and runs; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_USAGE
        }
    }
}

fn read_matrix(path: &PathBuf) -> Result<RMatrix> {
    let text = std::fs::read_to_string(path)?;
    RMatrix::parse(&text)
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Contains { matrix, pattern } => cmd_contains(&matrix, &pattern),
        Command::Forb {
            m,
            r,
            family,
            k,
            budget_nodes,
            budget_ms,
            jobs,
            symmetry,
            no_cache,
        } => {
            let cfg = SearchConfig {
                node_budget: budget_nodes,
                time_budget: budget_ms.map(Duration::from_millis),
                jobs,
                symbol_symmetry: symmetry,
            };
            cmd_forb(m, r, &family, k, &cfg, no_cache)
        }
        Command::Growth {
            family,
            r,
            m_from,
            m_to,
            claim,
            csv,
            jobs,
        } => {
            let cfg = SearchConfig {
                jobs,
                ..SearchConfig::default()
            };
            cmd_growth(
                &family,
                r,
                m_from,
                m_to,
                claim.as_deref(),
                csv.as_deref(),
                &cfg,
            )
        }
        Command::Gen { spec } => cmd_gen(&spec),
        Command::Decompose { row, matrix } => cmd_decompose(row, &matrix),
        Command::Extract { x, ell, s, matrix } => cmd_extract(x, ell, s, &matrix),
    }
}

#[derive(Serialize)]
struct ContainsReport {
    contained: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<crate::patterns::Witness>,
}

fn cmd_contains(matrix: &PathBuf, pattern: &PathBuf) -> Result<i32> {
    let a = read_matrix(matrix)?;
    let f = read_matrix(pattern)?;
    let witness = contains(&a, &f);
    let contained = witness.is_some();
    let report = ContainsReport { contained, witness };
    emit_line(serde_json::to_string_pretty(&report)?);
    Ok(if contained { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_forb(
    m: usize,
    r: u8,
    family_spec: &str,
    k: Option<usize>,
    cfg: &SearchConfig,
    no_cache: bool,
) -> Result<i32> {
    let family = famspec::parse_family(family_spec)?;
    let res = if no_cache {
        match k {
            Some(k) => forb_k_exact(m, r, &family, k, cfg)?,
            None => forb_exact(m, r, &family, cfg)?,
        }
    } else {
        crate::cache::cached_forb(&ResultsCache::from_env(), m, r, &family, k, cfg)?
    };
    emit_line(serde_json::to_string_pretty(&CacheRecord::from_result(
        &res,
    ))?);
    if res.exact {
        Ok(EXIT_OK)
    } else {
        eprintln!("warning: budget exhausted; the value is a lower bound, not exact");
        Ok(EXIT_INEXACT)
    }
}

fn cmd_growth(
    family: &str,
    r: u8,
    m_from: usize,
    m_to: usize,
    claim: Option<&str>,
    csv: Option<&std::path::Path>,
    cfg: &SearchConfig,
) -> Result<i32> {
    let cache = ResultsCache::from_env();
    let report = run_growth(family, r, m_from, m_to, cfg, Some(&cache), claim)?;
    emit_line(report.to_json()?);
    if let Some(path) = csv {
        std::fs::write(path, report.to_csv())?;
    }
    let all_exact = report.points.iter().all(|p| p.exact);
    Ok(if all_exact { EXIT_OK } else { EXIT_INEXACT })
}

fn cmd_gen(spec: &str) -> Result<i32> {
    // a plain matrix term prints literally; family expressions print their
    // members (stored canonically)
    if let Ok(matrix) = famspec::parse_matrix(spec) {
        emit(matrix.to_text());
        return Ok(EXIT_OK);
    }
    let family = famspec::parse_family(spec)?;
    if family.len() == 1 {
        emit(family.members()[0].to_text());
        return Ok(EXIT_OK);
    }
    emit_line(format!("# family with {} members", family.len()));
    for (i, member) in family.members().iter().enumerate() {
        emit_line(format!("# member {i}"));
        emit(member.to_text());
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct DecomposeReport {
    row: usize,
    total_columns: usize,
    base_columns: usize,
    repeat_columns: usize,
    inequality_holds: bool,
    base: String,
    repeats: Vec<RepeatPart>,
}

#[derive(Serialize)]
struct RepeatPart {
    symbols: (u8, u8),
    columns: usize,
    matrix: String,
    appears_in_input: bool,
}

fn cmd_decompose(row: usize, matrix: &PathBuf) -> Result<i32> {
    let a = read_matrix(matrix)?;
    let decomposition = standard_decomposition(&a, row)?;
    let (total, base, repeat_total) = decomposition.counts(&a);
    let mut repeats = Vec::new();
    for ((sa, sb), part) in &decomposition.repeats {
        let appears = match decomposition.pair_product(*sa, *sb, a.alphabet())? {
            Some(product) => contains(&a, &product).is_some(),
            None => true,
        };
        repeats.push(RepeatPart {
            symbols: (*sa, *sb),
            columns: part.col_count(),
            matrix: part.to_text(),
            appears_in_input: appears,
        });
    }
    let report = DecomposeReport {
        row,
        total_columns: total,
        base_columns: base,
        repeat_columns: repeat_total,
        inequality_holds: total <= base + repeat_total,
        base: decomposition.base.to_text(),
        repeats,
    };
    emit_line(serde_json::to_string_pretty(&report)?);
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct ExtractReport {
    outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    config: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<crate::patterns::Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    frequent_symbol: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    clique_color: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagonal_counts: Option<Vec<(u8, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    clique_sizes: Option<Vec<(u8, usize)>>,
}

fn cmd_extract(x: u8, ell: usize, s: u8, matrix: &PathBuf) -> Result<i32> {
    let g = read_matrix(matrix)?;
    let extraction = extract_config_from_template(&g, x, ell, s)?;
    let (report, code) = match extraction {
        Extraction::Member {
            config,
            witness,
            frequent,
            clique_color,
        } => (
            ExtractReport {
                outcome: "member",
                config: Some(config.to_text()),
                witness: Some(witness),
                frequent_symbol: Some(frequent),
                clique_color: Some(clique_color),
                reason: None,
                diagonal_counts: None,
                clique_sizes: None,
            },
            EXIT_OK,
        ),
        Extraction::Exception {
            config,
            witness,
            frequent,
            clique_color,
        } => (
            ExtractReport {
                outcome: "exception",
                config: Some(config.to_text()),
                witness: Some(witness),
                frequent_symbol: Some(frequent),
                clique_color: Some(clique_color),
                reason: None,
                diagonal_counts: None,
                clique_sizes: None,
            },
            EXIT_OK,
        ),
        Extraction::TooSmall {
            reason,
            diagonal_counts,
            clique_sizes,
        } => (
            ExtractReport {
                outcome: "too-small",
                config: None,
                witness: None,
                frequent_symbol: None,
                clique_color: None,
                reason: Some(reason),
                diagonal_counts: Some(diagonal_counts),
                clique_sizes: Some(clique_sizes),
            },
            EXIT_NEGATIVE,
        ),
    };
    emit_line(serde_json::to_string_pretty(&report)?);
    Ok(code)
}
