//! `helisms`: curvature tables, coefficient reports, certification runs,
//! rotational profiles and OBJ meshes for helicoidal surfaces.
//!
//! Exit status: 0 success, 1 inconsistency found by `verify`, 2 geometric
//! precondition failure, 3 usage or configuration error.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::{parse_vec3, ConfigError, RangeSpec, RunConfig};

const USAGE_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "helisms", version, about = "Helicoidal singular minimal surface toolkit")]
struct Cli {
    /// Read every parameter from a JSON run config instead of the flags.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form and finite-difference mean curvature: s,t,H_closed,H_fd,abs_diff.
    Curvature(CurvatureArgs),
    /// Residual coefficients A0..A3 and the two combination values per s.
    Coeffs(CoeffsArgs),
    /// Cylinder certification, the v = e3 sweep and the falsification grid as JSON.
    Verify(VerifyArgs),
    /// Shoot the rotational profile ODE and write s,x,z,theta.
    Catenary(CatenaryArgs),
    /// Write a Wavefront OBJ mesh of the surface.
    Mesh(MeshArgs),
}

#[derive(Args)]
struct SurfaceArgs {
    /// Profile descriptor, e.g. `cylinder:x0=1,z0=0,sign=+`, `line:theta0=0,x0=1`
    /// or `pcc:x0=1,z0=0.5,theta0=0,k=1;0;-1,len=0.5`.
    #[arg(long)]
    profile: Option<String>,
    /// Pitch h of the helicoidal motion.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pitch: f64,
}

#[derive(Args)]
struct SmsArgs {
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    alpha: f64,
    /// Twist axis direction `x,y,z`; normalized before use.
    #[arg(long, default_value = "0,0,1", value_parser = parse_vec3, allow_hyphen_values = true)]
    direction: [f64; 3],
}

#[derive(Args)]
struct SampleArgs {
    /// Profile parameter: `value` or `start:end:count`.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    s: RangeSpec,
    /// Orbit parameter: `value` or `start:end:count`.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    t: RangeSpec,
}

#[derive(Args)]
struct CurvatureArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    #[command(flatten)]
    samples: SampleArgs,
    #[arg(long, default_value_t = helisms::tol::FD_STEP)]
    fd_step: f64,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CoeffsArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    #[command(flatten)]
    sms: SmsArgs,
    /// Profile parameter: `value` or `start:end:count`.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    s: RangeSpec,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Optional extra profile to certify with --pitch, --alpha and --direction.
    #[command(flatten)]
    surface: SurfaceArgs,
    #[command(flatten)]
    sms: SmsArgs,
    #[arg(long, default_value_t = helisms::tol::TOL_ZERO)]
    tol_zero: f64,
    /// Skip the falsification grid search.
    #[arg(long)]
    no_search: bool,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CatenaryArgs {
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    x0: f64,
    #[arg(long, default_value_t = 1.0)]
    z0: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    theta0: f64,
    #[arg(long, default_value_t = helisms::tol::RK4_STEP)]
    step: f64,
    #[arg(long, default_value_t = 2000)]
    n_steps: usize,
    /// Also write the surface of revolution as OBJ.
    #[arg(long)]
    mesh: Option<PathBuf>,
    /// Orbit range for --mesh; defaults to 0:2π:33.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    t: RangeSpec,
    /// Exit with status 2 if the trajectory is truncated.
    #[arg(long)]
    strict: bool,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct MeshArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    #[command(flatten)]
    samples: SampleArgs,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Curvature(_) => "curvature",
            Command::Coeffs(_) => "coeffs",
            Command::Verify(_) => "verify",
            Command::Catenary(_) => "catenary",
            Command::Mesh(_) => "mesh",
        }
    }

    fn into_config(self) -> RunConfig {
        let mut c = RunConfig {
            command: self.name().to_string(),
            ..RunConfig::default()
        };
        match self {
            Command::Curvature(a) => {
                (c.profile, c.pitch) = (a.surface.profile, a.surface.pitch);
                (c.s, c.t) = (a.samples.s, a.samples.t);
                c.fd_step = a.fd_step;
                c.output = a.output;
            }
            Command::Coeffs(a) => {
                (c.profile, c.pitch) = (a.surface.profile, a.surface.pitch);
                (c.alpha, c.direction) = (a.sms.alpha, a.sms.direction);
                c.s = a.s;
                c.output = a.output;
            }
            Command::Verify(a) => {
                (c.profile, c.pitch) = (a.surface.profile, a.surface.pitch);
                (c.alpha, c.direction) = (a.sms.alpha, a.sms.direction);
                c.tol_zero = a.tol_zero;
                c.search = !a.no_search;
                c.output = a.output;
            }
            Command::Catenary(a) => {
                c.alpha = a.alpha;
                (c.x0, c.z0, c.theta0) = (a.x0, a.z0, a.theta0);
                (c.step, c.n_steps) = (a.step, a.n_steps);
                (c.mesh, c.t, c.strict) = (a.mesh, a.t, a.strict);
                c.output = a.output;
            }
            Command::Mesh(a) => {
                (c.profile, c.pitch) = (a.surface.profile, a.surface.pitch);
                (c.s, c.t) = (a.samples.s, a.samples.t);
                c.output = a.output;
            }
        }
        c
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<ConfigError>().is_some() {
        return USAGE_ERROR;
    }
    match err.downcast_ref::<helisms::Error>() {
        Some(e) if e.is_geometric() => commands::GEOMETRIC,
        _ => USAGE_ERROR,
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let name = cli.command.name();
    let cfg = match &cli.config {
        Some(path) => RunConfig::load(path, name)?,
        None => cli.command.into_config(),
    };
    match name {
        "curvature" => commands::curvature(&cfg),
        "coeffs" => commands::coeffs(&cfg),
        "verify" => commands::verify(&cfg),
        "catenary" => commands::catenary(&cfg),
        "mesh" => commands::mesh(&cfg),
        _ => unreachable!(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
