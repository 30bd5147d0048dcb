use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dce_cli::{
    list_resonances, parse_config, parse_model, resonance_csv, resonance_table, run, sweep,
    Comparison, Config, ExitStatus, HarnessError, Parsed,
};

#[derive(Parser)]
#[command(
    name = "dce",
    version,
    about = "Photon generation in a modulated cavity with two atoms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve the configured run and write its observables as CSV.
    Simulate(Common),
    /// Run a parameter sweep and write one row per grid point.
    Sweep(Common),
    /// List the resonances of the configured model.
    Resonances {
        #[command(flatten)]
        common: Common,
        /// Emit CSV instead of an aligned table.
        #[arg(long)]
        csv: bool,
    },
    /// Like simulate, with closed-form columns and a deviation summary.
    Compare(Common),
}

#[derive(Args)]
struct Common {
    /// Configuration file.
    config: PathBuf,
    /// Output path; defaults to [run] output, then stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the Fock truncation.
    #[arg(long)]
    n_max: Option<usize>,
    /// Override the integration step.
    #[arg(long)]
    dt: Option<f64>,
    /// Reject unknown configuration keys.
    #[arg(long)]
    strict: bool,
}

fn load(c: &Common) -> Result<Parsed, HarnessError> {
    let mut parsed = parse_config(&c.config, c.strict)?;
    let spec = parsed.config.run_spec_mut();
    if let Some(n) = c.n_max {
        spec.n_max = n;
    }
    if let Some(dt) = c.dt {
        spec.evolver.dt = dt;
    }
    if c.out.is_some() {
        spec.output = c.out.clone();
    }
    spec.validate()?;
    Ok(parsed)
}

fn emit(text: &str, path: Option<&Path>) -> Result<(), HarnessError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| HarnessError::Io {
            path: p.to_path_buf(),
            source: e,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| HarnessError::Io {
                    path: "stdout".into(),
                    source: e,
                })
        }
    }
}

fn execute(command: Command) -> Result<ExitStatus, HarnessError> {
    match command {
        Command::Simulate(c) => simulate(&c, None),
        Command::Compare(c) => simulate(&c, Some(Comparison::Both)),
        Command::Sweep(c) => {
            let parsed = load(&c)?;
            warn_all(&parsed.warnings);
            let Config::Sweep(spec) = parsed.config else {
                return Err(HarnessError::Config(format!(
                    "{} has no [sweep] section",
                    c.config.display()
                )));
            };
            let report = sweep(&spec)?;
            emit(&report.to_csv(), spec.base.output.as_deref())?;
            warn_all(&report.warnings);
            Ok(report.status)
        }
        Command::Resonances { common, csv } => {
            let (params, warnings) = parse_model(&common.config, common.strict)?;
            warn_all(&warnings);
            let cat = list_resonances(&params);
            let text = if csv {
                resonance_csv(&cat)
            } else {
                resonance_table(&cat)
            };
            emit(&text, common.out.as_deref())?;
            Ok(ExitStatus::Pass)
        }
    }
}

fn simulate(c: &Common, comparison: Option<Comparison>) -> Result<ExitStatus, HarnessError> {
    let parsed = load(c)?;
    warn_all(&parsed.warnings);
    let Config::Run(mut spec) = parsed.config else {
        return Err(HarnessError::Config(format!(
            "{} is a sweep; use the sweep subcommand",
            c.config.display()
        )));
    };
    if let Some(cmp) = comparison {
        spec.comparison = cmp;
    }
    let report = run(&spec)?;
    emit(&report.to_csv(), spec.output.as_deref())?;
    eprint!("{}", report.summary());
    Ok(report.status)
}

fn warn_all(warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(cli.command) {
        Ok(status) => ExitCode::from(status.code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
