//! `spinpol`: verification suites, spectra, SPV fields and total-spin sweeps.
//!
//! Exit status: 0 on success, 2 for configuration or I/O errors, 3 for
//! degenerate geometry (I parallel to a wave vector, annihilated reference
//! spinors, spectra reaching k = 0), 4 when a verification suite fails.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use spinpol::SpinError;

use crate::commands::Outcome;
use crate::config::{parse_vec3, parse_vec4, RunConfig};

const EXIT_CONFIG: u8 = 2;
const EXIT_GEOMETRY: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "spinpol", version, about = "Spin polarization characterized by a unit vector I")]
struct Cli {
    /// Flat JSON file of run parameters; flags override its keys.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// Output file (stdout if omitted).
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run randomized property suites and write a CSV report.
    Verify {
        /// Comma-separated subset of algebra,frames,rotations,heisenberg,wavepacket.
        #[arg(long, value_name = "LIST")]
        suites: Option<String>,
        #[arg(long, value_name = "N")]
        n_cases: Option<usize>,
        /// Pass threshold applied to every suite.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Write a Gaussian spectrum as `kx,ky,kz,re_A,im_A,weight`.
    SpectrumGen {
        #[command(flatten)]
        gaussian: GaussianArgs,
    },
    /// Write the local SPV field on a cubic grid as `x,y,z,t,rho,sx,sy,sz`.
    Field {
        #[command(flatten)]
        gaussian: GaussianArgs,
        #[command(flatten)]
        packet: PacketArgs,
        /// Grid spans [-W, W] on each axis.
        #[arg(long, value_name = "W")]
        half_width: Option<f64>,
        /// Points per axis, endpoints included.
        #[arg(long, value_name = "N")]
        grid_points: Option<usize>,
        #[arg(long)]
        t: Option<f64>,
    },
    /// Sweep I about an axis and write `phi,Sx,Sy,Sz`.
    TotalSpin {
        #[command(flatten)]
        gaussian: GaussianArgs,
        #[command(flatten)]
        packet: PacketArgs,
        #[arg(long, value_name = "x,y,z", value_parser = parse_vec3)]
        axis: Option<[f64; 3]>,
        #[arg(long, value_name = "N")]
        steps: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct GaussianArgs {
    /// Read the spectrum from a CSV file instead of generating one.
    #[arg(long, value_name = "PATH")]
    spectrum: Option<PathBuf>,
    #[arg(long, value_name = "x,y,z", value_parser = parse_vec3)]
    k0: Option<[f64; 3]>,
    #[arg(long)]
    sigma_k: Option<f64>,
    /// Samples per axis (odd).
    #[arg(long, value_name = "N")]
    n_per_axis: Option<usize>,
    /// Grid half-width in units of sigma_k.
    #[arg(long)]
    span: Option<f64>,
}

#[derive(Args, Debug)]
struct PacketArgs {
    #[arg(long, value_name = "x,y,z", value_parser = parse_vec3)]
    i_vec: Option<[f64; 3]>,
    #[arg(long, value_name = "re1,im1,re2,im2", value_parser = parse_vec4, allow_hyphen_values = true)]
    alpha: Option<[f64; 4]>,
    /// Reference spinors: standard or fallback.
    #[arg(long)]
    refs: Option<String>,
    #[arg(long)]
    hbar: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
}

impl GaussianArgs {
    fn apply(self, c: &mut RunConfig) {
        c.spectrum = self.spectrum;
        c.k0 = self.k0;
        c.sigma_k = self.sigma_k;
        c.n_per_axis = self.n_per_axis;
        c.span = self.span;
    }
}

impl PacketArgs {
    fn apply(self, c: &mut RunConfig) {
        c.i_vec = self.i_vec;
        c.alpha = self.alpha;
        c.refs = self.refs;
        c.hbar = self.hbar;
        c.mu = self.mu;
    }
}

type Runner = fn(&RunConfig) -> anyhow::Result<Outcome>;

/// Flags as a sparse config, to be laid over the file.
fn flags(cli: Cli) -> (Option<PathBuf>, RunConfig, Runner) {
    let mut c = RunConfig { seed: cli.seed, out: cli.out, ..Default::default() };
    let run: Runner = match cli.command {
        Command::Verify { suites, n_cases, tolerance } => {
            c.suites = suites;
            c.n_cases = n_cases;
            c.tolerance = tolerance;
            commands::verify
        }
        Command::SpectrumGen { gaussian } => {
            gaussian.apply(&mut c);
            commands::spectrum_gen
        }
        Command::Field { gaussian, packet, half_width, grid_points, t } => {
            gaussian.apply(&mut c);
            packet.apply(&mut c);
            c.half_width = half_width;
            c.grid_points = grid_points;
            c.t = t;
            commands::field
        }
        Command::TotalSpin { gaussian, packet, axis, steps } => {
            gaussian.apply(&mut c);
            packet.apply(&mut c);
            c.axis = axis;
            c.steps = steps;
            commands::total_spin
        }
    };
    (cli.config, c, run)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    let geometric = err.chain().filter_map(|e| e.downcast_ref::<SpinError>()).any(SpinError::is_geometric);
    if geometric {
        EXIT_GEOMETRY
    } else {
        EXIT_CONFIG
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let (config_path, flag_cfg, run) = flags(Cli::parse());

    let result = config_path
        .as_deref()
        .map_or_else(|| Ok(RunConfig::default()), RunConfig::load)
        .and_then(|file| run(&file.overlay(flag_cfg)));

    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => {
            eprintln!("error: verification failed");
            ExitCode::from(EXIT_VERIFY)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
