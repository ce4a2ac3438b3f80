//! `verify` — runs the seeded verification suites and writes a JSON report.
//!
//! Exit codes: 0 when every case passes, 1 on any failure, 2 on a config or
//! I/O error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use dressed_core::harness::{parse_config, run_suite, ScenarioConfig, Suite, VerificationReport};

#[derive(Debug, Parser)]
#[command(name = "verify", version, about = "Verify dressed/ideal equivalence numerically")]
struct Cli {
    /// Suite to run (overrides the config file).
    #[arg(long, value_enum)]
    suite: Option<Suite>,
    /// JSON scenario file.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Trials per property.
    #[arg(long)]
    trials: Option<usize>,
    /// Tolerance applied to every case.
    #[arg(long)]
    tol: Option<f64>,
    /// Where to write the JSON report.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Only print failures.
    #[arg(long)]
    quiet: bool,
}

fn load(cli: &Cli) -> Result<ScenarioConfig, String> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            parse_config(&text).map_err(|e| e.to_string())?
        }
        None => ScenarioConfig::default(),
    };
    if let Some(s) = cli.suite {
        cfg.suite = s;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(t) = cli.trials {
        cfg.trials = t;
    }
    if let Some(t) = cli.tol {
        cfg.tolerance = Some(t);
    }
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn print_summary(report: &VerificationReport, quiet: bool) {
    for c in &report.cases {
        if quiet && c.pass {
            continue;
        }
        let verdict = if c.pass { "PASS" } else { "FAIL" };
        match (&c.residual, &c.error) {
            (Some(r), _) => println!("{verdict} {:<40} residual {r:.3e} (tol {:.1e})", c.name, c.tolerance),
            (None, Some(e)) => println!("{verdict} {:<40} error: {e}", c.name),
            (None, None) => println!("{verdict} {}", c.name),
        }
    }
    let failed = report.failures().count();
    if !quiet || failed > 0 {
        println!(
            "suite {} seed {}: {}/{} cases passed",
            report.suite,
            report.seed,
            report.cases.len() - failed,
            report.cases.len()
        );
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match load(&cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("verify: {e}");
            return ExitCode::from(2);
        }
    };
    let report = run_suite(&cfg);
    print_summary(&report, cli.quiet);
    if let Some(path) = &cli.report {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("verify: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(report.exit_code() as u8)
}
