//! Command-line driver: one-shot normalize/expand/omega on expressions,
//! batch differential-consistency sweeps, rule-by-rule lemma verification,
//! and a machine-readable dump of the exchange-rule table.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use uqglmn_core::{
    expand_ns, normal_order, parse_element, print_element, rule_table,
    verify::{run_lemma_checks, run_sweep, LemmaConfig, SweepConfig},
    Element, NormalOrderConfig, NormalizeError, PivotStrategy, Signature,
};

#[derive(Parser)]
#[command(
    name = "uqglmn",
    about = "Exact symbolic normal ordering in the quantum superalgebra U_q[gl(m|n)]"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PivotArg {
    Row,
    Col,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an expression and print its canonical normal-ordered form.
    Normalize {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// Rewrite-step budget for the straightening loop.
        #[arg(long)]
        budget: Option<u64>,
        expr: String,
    },
    /// Expand every nonsimple generator into simple letters (no
    /// normalization).
    Expand {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// Pivot choice; `all` prints one expansion per strategy.
        #[arg(long, value_enum, default_value = "row")]
        pivot: PivotArg,
        expr: String,
    },
    /// Apply the antiautomorphism omega and print the raw result.
    Omega {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        expr: String,
    },
    /// Differential-consistency sweep: NormalOrder(XY) vs
    /// NormalOrder(ExpandNS(XY)) over all ordered generator pairs.
    Sweep {
        #[arg(long)]
        max_total: u32,
        #[arg(long)]
        max_height: u32,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the JSON report here (stdout gets a summary either way).
        #[arg(long)]
        json: Option<std::path::PathBuf>,
    },
    /// Verify every exchange rule, simple-partner commutator, Serre
    /// relation, and condensed-table cross-check by expansion.
    VerifyLemma {
        #[arg(long)]
        max_total: u32,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        json: Option<std::path::PathBuf>,
    },
    /// Dump the machine-readable exchange-rule table.
    DumpRules {
        #[arg(long)]
        json: Option<std::path::PathBuf>,
    },
}

fn parse_input(m: u32, n: u32, expr: &str) -> Result<(Signature, Element), String> {
    let sig = Signature::new(m, n).map_err(|e| e.to_string())?;
    let e = parse_element(expr, sig).map_err(|e| e.to_string())?;
    Ok((sig, e))
}

fn emit_json(path: &Option<std::path::PathBuf>, value: &impl serde::Serialize) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    match path {
        Some(p) => std::fs::write(p, text + "\n").map_err(|e| e.to_string()),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run() -> Result<bool, String> {
    match Cli::parse().command {
        Command::Normalize { m, n, budget, expr } => {
            let (_, raw) = parse_input(m, n, &expr)?;
            let mut cfg = NormalOrderConfig::default();
            if let Some(b) = budget {
                cfg.max_rewrite_steps = b;
            }
            match normal_order(&raw, &cfg) {
                Ok(norm) => {
                    println!("{}", print_element(&norm));
                    Ok(true)
                }
                Err(e @ NormalizeError::BudgetExceeded { .. }) => {
                    Err(format!("rewrite budget exceeded: {e}"))
                }
            }
        }
        Command::Expand { m, n, pivot, expr } => {
            let (_, raw) = parse_input(m, n, &expr)?;
            let strategies: &[(PivotStrategy, &str)] = match pivot {
                PivotArg::Row => &[(PivotStrategy::Row, "row")],
                PivotArg::Col => &[(PivotStrategy::Col, "col")],
                PivotArg::All => &[(PivotStrategy::Row, "row"), (PivotStrategy::Col, "col")],
            };
            let label = strategies.len() > 1;
            for (strategy, name) in strategies {
                let out = print_element(&expand_ns(&raw, *strategy));
                if label {
                    println!("{name}: {out}");
                } else {
                    println!("{out}");
                }
            }
            Ok(true)
        }
        Command::Omega { m, n, expr } => {
            let (_, raw) = parse_input(m, n, &expr)?;
            println!("{}", print_element(&raw.omega()));
            Ok(true)
        }
        Command::Sweep {
            max_total,
            max_height,
            jobs,
            json,
        } => {
            if max_total < 2 || max_height < 1 {
                return Err("sweep requires --max-total >= 2 and --max-height >= 1".into());
            }
            let mut cfg = SweepConfig::new(max_total, max_height);
            cfg.jobs = jobs;
            let report = run_sweep(&cfg);
            emit_json(&json, &report)?;
            if json.is_some() {
                println!(
                    "sweep: {} pass, {} fail ({} ms)",
                    report.summary.pass, report.summary.fail, report.timing_ms
                );
            }
            Ok(report.summary.fail == 0)
        }
        Command::VerifyLemma {
            max_total,
            jobs,
            json,
        } => {
            if max_total < 2 {
                return Err("verify-lemma requires --max-total >= 2".into());
            }
            let mut cfg = LemmaConfig::new(max_total);
            cfg.jobs = jobs;
            let report = run_lemma_checks(&cfg);
            emit_json(&json, &report)?;
            if json.is_some() {
                println!(
                    "verify-lemma: {} pass, {} fail ({} ms)",
                    report.summary.pass, report.summary.fail, report.timing_ms
                );
            }
            Ok(report.summary.fail == 0)
        }
        Command::DumpRules { json } => {
            emit_json(&json, &rule_table())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
