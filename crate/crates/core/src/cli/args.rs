use super::commands::{
    cmd_audit, cmd_convergence, cmd_density, cmd_eigen, cmd_ml, cmd_sweep, DensityArgs, MlArgs, Outcome,
};
use super::config::RunConfig;
use super::exit_code;
use crate::error::{Error, Result};
use clap::{Args, Parser, Subcommand};
use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

/// Mild solutions and positive eigenpairs of Caputo fractional evolution equations.
#[derive(Debug, Parser)]
#[command(name = "mild-eigen", version)]
pub struct Cli {
    /// Sectioned key=value configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory (overrides [output] dir).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for the numeric layers.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Sampling seed (overrides [solver] seed).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of E_{a,b}(z) for z in [z_min, z_max].
    Ml(MlCli),
    /// Table of the density k_beta and its moments.
    Density(DensityCli),
    /// Audit of the existence hypotheses.
    Audit,
    /// Eigenpair solve.
    Eigen,
    /// Continuation over [problem] alphas.
    Sweep,
    /// Linear benchmark convergence study.
    Convergence,
}

#[derive(Debug, Args)]
pub struct MlCli {
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub b: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = -5.0)]
    pub z_min: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub z_max: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.1)]
    pub step: f64,
}

#[derive(Debug, Args)]
pub struct DensityCli {
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 3.0)]
    pub tau_max: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.1)]
    pub step: f64,
    #[arg(long, default_value_t = 20_000)]
    pub quadrature_nodes: usize,
}

fn load_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", p.display())))?;
            RunConfig::parse(&text)?
        }
        None => RunConfig::heat_default()?,
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    if let Some(k) = cli.threads {
        if k == 0 {
            return Err(Error::Config("--threads must be >= 1".into()));
        }
        // A second initialization in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    }
    let cfg = load_config(cli)?;
    let out = cli
        .out
        .clone()
        .or_else(|| cfg.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from("out"));
    match &cli.command {
        Command::Ml(a) => cmd_ml(
            &MlArgs {
                a: a.a,
                b: a.b,
                z_min: a.z_min,
                z_max: a.z_max,
                step: a.step,
            },
            &out,
            cfg.precision,
        ),
        Command::Density(d) => cmd_density(
            &DensityArgs {
                beta: d.beta,
                tau_max: d.tau_max,
                step: d.step,
                quadrature_nodes: d.quadrature_nodes,
            },
            &out,
            cfg.precision,
        ),
        Command::Audit => cmd_audit(&cfg, &out),
        Command::Eigen => cmd_eigen(&cfg, &out),
        Command::Sweep => cmd_sweep(&cfg, &out),
        Command::Convergence => cmd_convergence(&cfg, &out),
    }
}

/// Parses arguments, runs the subcommand and returns the process exit code.
/// Summaries go to stdout, timings and errors to stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let start = Instant::now();
    match dispatch(&cli) {
        Ok(o) => {
            println!("{}", o.summary);
            eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
            o.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
