use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use hol_cli::{generate_scenario, run_suite, CliError, Mode, Options, Profile, Scenario, SuiteReport, SUITES};

/// Runs a named verification suite on a scenario file or a seeded scenario.
///
/// Exit status: 0 when every check passes, 1 when a check fails, 2 on
/// malformed input.
#[derive(Parser, Debug)]
#[command(name = "verify", version)]
struct Args {
    /// One of forms, chen, mc, lemma35, prop34, prop36, prop32ode, prop33,
    /// lemma41, lemma42, binfty, lambda, appendixA, poincare, compose, all.
    #[arg(long)]
    suite: String,

    #[arg(long, conflicts_with_all = ["seed", "profile"])]
    scenario: Option<PathBuf>,

    #[arg(long)]
    seed: Option<u64>,

    /// `m=..,n=..,nu=..,deg=..`; missing keys default to m=1,n=1,nu=2,deg=1.
    #[arg(long, requires = "seed")]
    profile: Option<String>,

    #[arg(long)]
    max_order: Option<usize>,

    #[arg(long, default_value = "exact", value_parser = ["exact", "float"])]
    mode: String,

    #[arg(long, default_value_t = 1e-6)]
    tolerance: f64,

    #[arg(long, default_value_t = 1e-3)]
    step: f64,

    /// JSON report path. Defaults to `$HOL_REPORT_DIR/<suite>-<scenario>.json`
    /// when that variable is set.
    #[arg(long)]
    report: Option<PathBuf>,

    /// Write the scenario that was run to this path.
    #[arg(long)]
    emit_scenario: Option<PathBuf>,
}

fn write(path: &PathBuf, text: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.display().to_string(), e.to_string()))?;
    }
    std::fs::write(path, text).map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))
}

fn run(args: Args) -> Result<SuiteReport, CliError> {
    if !SUITES.contains(&args.suite.as_str()) {
        return Err(CliError::UnknownSuite(args.suite));
    }
    if args.tolerance.is_nan() || args.tolerance < 0.0 || args.step.is_nan() || args.step <= 0.0 {
        return Err(CliError::Profile("tolerance must be non-negative and step positive".into()));
    }
    let scenario = match (&args.scenario, args.seed) {
        (Some(path), _) => Scenario::load(path)?,
        (None, Some(seed)) => {
            let profile: Profile = args.profile.as_deref().unwrap_or("").parse()?;
            generate_scenario(seed, &profile)?
        }
        (None, None) => return Err(CliError::Profile("give --scenario or --seed".into())),
    };
    if let Some(path) = &args.emit_scenario {
        write(path, &scenario.to_json())?;
    }
    let options = Options {
        mode: args.mode.parse::<Mode>().map_err(CliError::Profile)?,
        tolerance: args.tolerance,
        step: args.step,
        max_order: args.max_order,
    };
    let report = run_suite(&args.suite, &scenario, &options)?;
    let target = args
        .report
        .or_else(|| std::env::var_os("HOL_REPORT_DIR").map(|d| PathBuf::from(d).join(format!("{}-{}.json", args.suite, scenario.name))));
    if let Some(path) = target {
        write(&path, &report.to_json())?;
    }
    Ok(report)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(args) {
        Ok(report) => {
            print!("{}", report.to_text());
            ExitCode::from(if report.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
