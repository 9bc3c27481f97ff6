use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, Parser};

use sonnet_gam::textproc::NormalizationMode;
use sonnet_gam_cli::config::{ReportFormat, RunConfig};
use sonnet_gam_cli::pipeline::{run, Command, Options};

/// Affective-meaning features and validation reports for annotated sonnets.
#[derive(Debug, Parser)]
#[command(name = "sonnet-gam", version)]
struct Args {
    #[command(subcommand)]
    command: Command,
    /// Run configuration (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    mode: Option<NormalizationMode>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<ReportFormat>,
    /// Also write the most frequent corpus words absent from the lexicons.
    #[arg(long, global = true)]
    missing_words: bool,
    /// Write every fallback taken to decisions.log in the output directory.
    #[arg(long, global = true)]
    log_decisions: bool,
    /// Exit with status 2 when any quantity is degenerate or not computable.
    #[arg(long, global = true)]
    strict: bool,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();
    let Some(config) = args.config.as_deref() else {
        Args::command().error(clap::error::ErrorKind::MissingRequiredArgument, "--config <CONFIG> is required").exit()
    };
    let mut cfg = match RunConfig::load(config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if let Some(m) = args.mode {
        cfg.mode = m;
    }
    if let Some(o) = args.out {
        cfg.out = o;
    }
    if let Some(f) = args.format {
        cfg.format = f;
    }
    let opts = Options { missing_words: args.missing_words, log_decisions: args.log_decisions, strict: args.strict };
    match run(args.command, &cfg, opts) {
        Ok(outcome) => {
            for f in &outcome.written {
                println!("{}", cfg.out.join(f).display());
            }
            if opts.strict && outcome.degenerate {
                eprintln!("error: degenerate computations (see warnings)");
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
