//! `polywave`: geodesic length spectra, wave counts and pentagon
//! unfoldings from the command line.

mod commands;
mod config;
mod table;
mod target;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use polywave_core::Error;

use crate::commands::PentagonMode;
use crate::config::{Format, Overrides, RunConfig};
use crate::target::{parse_angle, Target};

/// Bad input that is not a library precondition: config syntax, flag
/// combinations, angle expressions.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Parser, Debug)]
#[command(name = "polywave", version, about = "Geodesic length spectra and wave counts on Platonic solids")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Flat `key = value` file; flags override it
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Largest norm a sieve may cover [default: 100000000]
    #[arg(long, global = true)]
    sieve_limit: Option<u64>,
    /// Primes up to this bound enter the Euler products [default: 10000000]
    #[arg(long, global = true)]
    prime_limit: Option<u64>,
    /// Search nodes allowed for wave counting [default: 1000000000]
    #[arg(long, global = true)]
    node_budget: Option<u64>,
    /// Relative width of the band around t in which irrational sums are flagged [default: 1e-9]
    #[arg(long, global = true)]
    guard_band_scale: Option<f64>,
    /// Output format [default: csv]
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write results here instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads [default: all cores]
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Landau–Ramanujan constants, ζ(3) and the wave growth constants
    Constants,
    /// Counts of distinct geodesic lengths on a grid up to l
    Spectrum {
        /// cube, tetrahedron, octahedron, icosahedron, square or triangular
        target: Target,
        #[arg(long)]
        l: f64,
        #[arg(long, default_value_t = 10)]
        points: usize,
        /// Binary sieve file, reused when it covers the run
        #[arg(long)]
        sieve_cache: Option<PathBuf>,
    },
    /// Number of broken-geodesic lengths up to t, on a grid of times
    Waves {
        target: Target,
        #[arg(long)]
        t_max: f64,
        #[arg(long, default_value_t = 2.0)]
        t_min: f64,
        #[arg(long, default_value_t = 1.0)]
        step: f64,
        /// Cross-check rows with t ≤ 15 against a slow independent count
        #[arg(long)]
        oracle: bool,
    },
    /// Pentagon length counts, length tables or strip decompositions
    Pentagon {
        #[arg(long, default_value_t = 0.0)]
        l: f64,
        #[arg(long, default_value_t = 0)]
        cone: u8,
        /// Emit the distinct squared lengths up to l instead of counts
        #[arg(long, conflicts_with_all = ["strip", "random_strip"])]
        lengths: bool,
        /// Comma-separated dodecahedron face path to unfold and decompose
        #[arg(long, value_delimiter = ',', conflicts_with = "random_strip")]
        strip: Option<Vec<usize>>,
        /// Seed for a strip traced along a random ray
        #[arg(long)]
        random_strip: Option<u64>,
        #[arg(long, default_value_t = 20)]
        max_faces: usize,
    },
    /// Irreducible lattice points in a sector
    Sector {
        target: Target,
        #[arg(long)]
        l: f64,
        /// Sector width such as 3pi/2; defaults to the solid's preset
        #[arg(long)]
        angle: Option<String>,
        #[arg(long, default_value = "0")]
        start: String,
        #[arg(long, default_value_t = 1)]
        points: usize,
    },
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let g = &cli.global;
    let overrides = Overrides {
        sieve_limit: g.sieve_limit,
        prime_limit: g.prime_limit,
        node_budget: g.node_budget,
        guard_band_scale: g.guard_band_scale,
        format: g.format,
        output: g.output.clone(),
        threads: g.threads,
    };
    let cfg = RunConfig::resolve(g.config.as_deref(), &overrides)?;
    if let Some(n) = cfg.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
    }

    let table = match cli.command {
        Command::Constants => commands::constants(&cfg)?,
        Command::Spectrum { target, l, points, sieve_cache } => {
            commands::spectrum(target, l, points, sieve_cache.as_deref(), &cfg)?
        }
        Command::Waves { target, t_max, t_min, step, oracle } => {
            commands::waves(target, t_min, t_max, step, oracle, &cfg)?
        }
        Command::Pentagon { l, cone, lengths, strip, random_strip, max_faces } => {
            let mode = match (lengths, strip, random_strip) {
                (true, _, _) => PentagonMode::Lengths,
                (_, Some(path), _) => PentagonMode::Strip(path),
                (_, _, Some(seed)) => PentagonMode::RandomStrip { seed, max_faces },
                _ => PentagonMode::Counts,
            };
            commands::pentagon(l, cone, mode)?
        }
        Command::Sector { target, l, angle, start, points } => {
            let angle = angle.as_deref().map(parse_angle).transpose().map_err(UsageError)?;
            let start = parse_angle(&start).map_err(UsageError)?;
            commands::sector(target, angle, start, l, points, &cfg)?
        }
    };

    let text = table.render(cfg.format);
    match &cfg.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(
            Error::Precondition(_)
            | Error::SieveLimit { .. }
            | Error::Format(_)
            | Error::Overflow(_),
        ) => 2,
        Some(
            Error::BudgetExceeded { .. } | Error::CapacityExceeded { .. } | Error::Allocation { .. },
        ) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
