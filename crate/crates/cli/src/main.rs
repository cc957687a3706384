use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pwcheck_cli::{
    interp, list_lines, scan, summary_line, verify, write_outputs, with_jobs, CliError, RunConfig, SuiteOutput,
    EXIT_FAIL, EXIT_PASS, EXIT_USAGE,
};

#[derive(Parser)]
#[command(name = "pwcheck", version, about = "Verification suites for explicit Paley-Wiener interpolation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// JSON run configuration
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (default `out`)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a suite and write its reports
    Verify {
        #[arg(long)]
        suite: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// List suites whose id contains FILTER
    List { filter: Option<String> },
    /// Growth scan of the averaged interpolant (CSV)
    Scan {
        #[command(flatten)]
        common: Common,
    },
    /// All crown-domain suites with their CSV curves
    Crown {
        #[command(flatten)]
        common: Common,
    },
    /// Rank one interpolant on a grid (CSV)
    Interp {
        #[command(flatten)]
        common: Common,
    },
}

fn config(common: &Common, suite: Option<String>) -> Result<RunConfig, CliError> {
    let mut cfg = match &common.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if suite.is_some() {
        cfg.suite = suite;
    }
    if common.out.is_some() {
        cfg.output_dir = common.out.clone();
    }
    if common.seed.is_some() {
        cfg.seed = common.seed;
    }
    if common.jobs.is_some() {
        cfg.jobs = common.jobs;
    }
    Ok(cfg)
}

fn print_reports(out: &SuiteOutput) {
    for r in &out.reports {
        println!("{}", summary_line(r));
    }
}

fn crown(cfg: &RunConfig) -> Result<i32, CliError> {
    let mut all = SuiteOutput::default();
    for id in ["crown-su11", "crown-so1n", "crown-gln"] {
        let params = cfg.params.get(id).cloned().unwrap_or_default();
        let out = with_jobs(cfg.jobs, || pwcheck_cli::run(id, &params, cfg.seed))??;
        all.reports.extend(out.reports);
        all.csv.extend(out.csv);
    }
    write_outputs(&cfg.output_dir(), &all)?;
    print_reports(&all);
    Ok(pwcheck_cli::exit_code_for(&all))
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Verify { suite, common } => {
            let (code, out) = verify(&config(&common, suite)?)?;
            print_reports(&out);
            Ok(code)
        }
        Command::List { filter } => {
            for line in list_lines(filter.as_deref()) {
                println!("{line}");
            }
            Ok(EXIT_PASS)
        }
        Command::Scan { common } => {
            println!("{}", scan(&config(&common, None)?)?.display());
            Ok(EXIT_PASS)
        }
        Command::Crown { common } => crown(&config(&common, None)?),
        Command::Interp { common } => {
            println!("{}", interp(&config(&common, None)?)?.display());
            Ok(EXIT_PASS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { EXIT_PASS as u8 });
        }
    };
    let code = match dispatch(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    debug_assert!(code == EXIT_PASS || code == EXIT_FAIL || code == EXIT_USAGE);
    ExitCode::from(code as u8)
}
