//! Command-line driver: singular levels, Zhu images, classification and
//! bounded singular-vector searches.

mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use affvoa::scalar::parse_q;
use affvoa::Error;
use clap::{Parser, Subcommand};
use serde::Serialize;

use commands::SCHEMA;
use config::{CommonArgs, Format, RunConfig};

#[derive(Parser)]
#[command(name = "affvoa", version, about = "Exact computations with affine vertex algebras of types D and B")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// directory for cached structure-constant tables
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Residuals and singular levels of the generators
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// exit 1 unless every generator is singular at this level
        #[arg(long, allow_hyphen_values = true)]
        expect_level: Option<String>,
    },
    /// Zhu images, adjoint modules and zero-weight polynomials
    Zhu {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Highest weights of irreducible modules over the quotient
    Classify {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Singular vectors of the quotient up to a degree (numeric level)
    Search {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
    },
    /// verify, zhu and classify in one document
    Report {
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: u32,
    command: &'a str,
    #[serde(flatten)]
    body: T,
}

fn emit<T: Serialize>(format: Format, command: &str, body: T, text: impl FnOnce(&T) -> String) {
    let out = match format {
        Format::Text => text(&body),
        Format::Json => {
            let env = Envelope {
                schema: SCHEMA,
                command,
                body,
            };
            serde_json::to_string_pretty(&env).expect("reports serialize") + "\n"
        }
    };
    // a closed pipe (e.g. `| head`) is not an error worth a panic
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
}

/// Bad input is a usage error (2); anything else failed a computation (1).
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::Invalid(_)
        | Error::RankOutOfRange { .. }
        | Error::MissingLevel
        | Error::AutomorphismUndefined(_) => 2,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    let fmt = cli.format;
    let cache = cli.cache_dir;
    match cli.command {
        Command::Verify { common, expect_level } => {
            let cfg = RunConfig::new(&common, cache)?;
            let expect = expect_level.as_deref().map(parse_q).transpose()?;
            let r = commands::verify(&cfg, expect.as_ref())?;
            let ok = r.verified;
            emit(fmt, "verify", r, |r| r.text());
            Ok(ok)
        }
        Command::Zhu { common } => {
            let cfg = RunConfig::new(&common, cache)?;
            emit(fmt, "zhu", commands::zhu(&cfg)?, |r| r.text());
            Ok(true)
        }
        Command::Classify { common } => {
            let cfg = RunConfig::new(&common, cache)?;
            let r = commands::classify(&cfg)?;
            let ok = r.classification.residual_check;
            emit(fmt, "classify", r, |r| r.text());
            Ok(ok)
        }
        Command::Search { common, max_degree } => {
            let cfg = RunConfig::new(&common, cache)?;
            if cfg.level.is_none() {
                return Err(Error::Invalid("search needs a numeric --level".into()));
            }
            emit(fmt, "search", commands::search(&cfg, max_degree)?, |r| r.text());
            Ok(true)
        }
        Command::Report { common } => {
            let cfg = RunConfig::new(&common, cache)?;
            let r = commands::report(&cfg)?;
            let ok = r.verify.verified && r.classify.classification.residual_check;
            emit(fmt, "report", r, |r| r.text());
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
