//! Command-line driver behind the `dsh` binary.
//!
//! ```text
//! dsh [--config FILE] [--out DIR] [--threads K] [--seed S] <command>
//!
//!   planewave      sample a plane wave on a β grid
//!   wavepacket     synthesize a wavepacket along a path, fit its decay,
//!                  and scan the flat limit
//!   verify SUITE   run an acceptance suite (algebra, ode, specfun,
//!                  transform, contract, appendix, decay, all)
//!   contract       residual of the contracted algebra against radius
//!   appendix-d     regularized-integral oracle for |d(ρ)|
//! ```
//!
//! Config keys are listed in [`config`]; any key can be set from the
//! environment as `DSH_<KEY>` (for example `DSH_RHO=2.5`). The flags read
//! `DSH_CONFIG`, `DSH_OUT`, `DSH_THREADS` and `DSH_SEED`. Precedence is
//! flag, then environment, then file, then built-in default.
//!
//! Exit codes: 0 on success, 1 when an evaluation fails or a verify suite
//! does not pass, 2 on a usage or configuration error.

pub mod commands;
pub mod config;
pub mod output;
pub mod suites;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use commands::{CliError, Context};
use config::RunConfig;
use suites::Suite;

#[derive(Debug, Parser)]
#[command(name = "dsh", version, about = "Harmonic analysis on de Sitter spacetime")]
pub struct Cli {
    /// Plain-text `key = value` run configuration.
    #[arg(long, global = true, env = "DSH_CONFIG")]
    pub config: Option<PathBuf>,
    /// Output directory, created if missing.
    #[arg(long, global = true, env = "DSH_OUT", default_value = ".")]
    pub out: PathBuf,
    /// Worker threads for the parallel scans.
    #[arg(long, global = true, env = "DSH_THREADS", value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,
    /// Random seed, overriding the config value.
    #[arg(long, global = true, env = "DSH_SEED")]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Sample a plane wave on the β grid of the config.
    Planewave,
    /// Synthesize a wavepacket along a path, fit its decay and scan the flat limit.
    Wavepacket,
    /// Run a verification suite and report PASS/FAIL per criterion.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Residual of the contracted commutation table against R.
    Contract,
    /// Compare the regularized-integral oracle with the closed form of |d(ρ)|.
    AppendixD,
}

impl Command {
    fn name(&self) -> String {
        match self {
            Command::Planewave => "planewave".into(),
            Command::Wavepacket => "wavepacket".into(),
            Command::Verify { suite } => format!("verify {}", format!("{suite:?}").to_lowercase()),
            Command::Contract => "contract".into(),
            Command::AppendixD => "appendix-d".into(),
        }
    }
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli, std::env::vars()) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("dsh: {e}");
            e.exit_code()
        }
    }
}

/// Runs a parsed command with the given environment.
pub fn execute<E>(cli: Cli, env: E) -> Result<bool, CliError>
where
    E: IntoIterator<Item = (String, String)>,
{
    let mut cfg = RunConfig::load(cli.config.as_deref(), env).map_err(CliError::Config)?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    std::fs::create_dir_all(&cli.out).map_err(|e| CliError::Eval(format!("{}: {e}", cli.out.display())))?;
    let ctx = Context { cfg, out: cli.out.clone(), command: cli.command.name() };
    let body = || match &cli.command {
        Command::Planewave => commands::planewave(&ctx),
        Command::Wavepacket => commands::wavepacket(&ctx),
        Command::Verify { suite } => commands::verify(&ctx, *suite),
        Command::Contract => commands::contract(&ctx),
        Command::AppendixD => commands::appendix_d(&ctx),
    };
    match cli.threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(usize::from(k))
            .build()
            .map_err(|e| CliError::Eval(e.to_string()))?
            .install(body),
        None => body(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["dsh", "verify", "nonsense"]), 2);
        assert_eq!(run(["dsh", "frobnicate"]), 2);
        assert_eq!(run(["dsh", "--threads", "0", "contract"]), 2);
        assert_eq!(run(["dsh", "--help"]), 0);
    }

    #[test]
    fn bad_config_exits_two() {
        let cli = Cli::try_parse_from(["dsh", "--config", "/definitely/missing.toml", "contract"]).unwrap();
        assert_eq!(execute(cli, Vec::new()).unwrap_err().exit_code(), 2);
        let cli = Cli::try_parse_from(["dsh", "planewave"]).unwrap();
        let env = vec![("DSH_BETA_NODES".to_string(), "1".to_string())];
        assert_eq!(execute(cli, env).unwrap_err().exit_code(), 2);
    }
}
