//! Command-line pipelines for equi-affine curve invariants, affine focal
//! sheets of curves in surfaces, the co-normal construction of umbilic
//! immersions, and bifurcation polynomials from frame data.

mod commands;
mod output;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use focal_core::numkit::ToleranceConfig;

#[derive(Parser)]
#[command(
    name = "affine-focal",
    about = "Equi-affine invariants and affine focal sets",
    version
)]
struct Cli {
    /// Relative determinant tolerance.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol_det: f64,
    /// Absolute zero-detection threshold.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol_zero: f64,
    /// Frame-equation residual bound.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol_residual: f64,
    /// Bisection refinement depth.
    #[arg(long, global = true, default_value_t = 60)]
    refine_depth: u32,
    /// Initial reparametrization gauge t'(u0).
    #[arg(long, global = true, default_value_t = 1.0)]
    gauge: f64,
    /// Integration constant of lambda' = -tau.
    #[arg(long, global = true, default_value_t = 0.0)]
    lambda0: f64,
    /// Worker threads for the per-point labeling passes.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Planar curve invariants, evolute, support function and vertex census.
    Planar {
        /// Curve spec JSON.
        #[arg(long)]
        spec: PathBuf,
        /// Origin for the support function, as "x,y".
        #[arg(long)]
        origin: Option<String>,
        #[arg(long, default_value_t = 1025)]
        samples: usize,
    },
    /// Spatial curve invariants and the cylindricity test.
    Spatial {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 1025)]
        samples: usize,
    },
    /// Darboux frame, focal sheet and singularity labels of a curve in a
    /// surface.
    Darboux {
        /// Spatial curve spec JSON (or use --fixture).
        #[arg(long)]
        curve: Option<PathBuf>,
        /// Surface spec JSON (or use --fixture).
        #[arg(long)]
        surface: Option<PathBuf>,
        /// Named built-in fixture (see `fixtures list`).
        #[arg(long)]
        fixture: Option<String>,
        #[arg(long, default_value_t = 513)]
        samples: usize,
        /// Line-parameter sweep of the focal sheet.
        #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
        s_min: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        s_max: f64,
        /// Points per focal line.
        #[arg(long, default_value_t = 17)]
        mesh_s: usize,
    },
    /// Co-normal construction phi = (nu, nu.(f - O)) with verification.
    Umbilic {
        /// Hypersurface spec JSON.
        #[arg(long)]
        surface: PathBuf,
        /// Origin O, comma-separated coordinates.
        #[arg(long, default_value = "0,0,0", allow_hyphen_values = true)]
        origin: String,
    },
    /// Recover the hypersurface from a phi table.
    UmbilicInverse {
        /// CSV with header u[,v],phi_0..phi_{n+1}.
        #[arg(long)]
        phi: PathBuf,
        /// Origin for the recovery, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        origin: Option<String>,
    },
    /// Bifurcation polynomial and focal locus from frame data.
    Focal {
        /// Frame data spec JSON.
        #[arg(long)]
        framedata: PathBuf,
        /// Window for locus sampling, as "a_min,a_max,b_min,b_max".
        #[arg(long, default_value = "-2,2,-2,2", allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value_t = 64)]
        locus_grid: usize,
    },
    /// Built-in fixture registry.
    Fixtures {
        #[command(subcommand)]
        action: FixturesAction,
    },
}

#[derive(Subcommand)]
enum FixturesAction {
    /// List the named curve-on-surface fixtures.
    List,
}

/// Failure classes with their exit codes: 2 for spec problems, 3 for
/// numerical ones.
pub enum Failure {
    Spec(anyhow::Error),
    Numeric(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Spec(_) => 2,
            Failure::Numeric(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Spec(e) => format!("spec error: {e:#}"),
            Failure::Numeric(e) => format!("numerical failure: {e:#}"),
        }
    }
}

pub type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = ToleranceConfig {
        tol_det: cli.tol_det,
        tol_zero: cli.tol_zero,
        tol_residual: cli.tol_residual,
        refine_depth: cli.refine_depth,
    };
    if let Err(e) = cfg.validate() {
        eprintln!("spec error: {e}");
        return ExitCode::from(2);
    }
    if cli.threads == 0 {
        eprintln!("spec error: --threads must be at least 1");
        return ExitCode::from(2);
    }
    let ctx = commands::Context {
        cfg,
        gauge: cli.gauge,
        lambda0: cli.lambda0,
        threads: cli.threads,
        out: cli.out.clone(),
    };
    let result = match &cli.command {
        Command::Planar { spec, origin, samples } => {
            commands::planar::run(&ctx, spec, origin.as_deref(), *samples)
        }
        Command::Spatial { spec, samples } => commands::spatial::run(&ctx, spec, *samples),
        Command::Darboux {
            curve,
            surface,
            fixture,
            samples,
            s_min,
            s_max,
            mesh_s,
        } => commands::darboux::run(
            &ctx,
            curve.as_deref(),
            surface.as_deref(),
            fixture.as_deref(),
            *samples,
            (*s_min, *s_max),
            *mesh_s,
        ),
        Command::Umbilic { surface, origin } => commands::umbilic::run(&ctx, surface, origin),
        Command::UmbilicInverse { phi, origin } => {
            commands::umbilic::run_inverse(&ctx, phi, origin.as_deref())
        }
        Command::Focal { framedata, window, locus_grid } => {
            commands::focal::run(&ctx, framedata, window, *locus_grid)
        }
        Command::Fixtures { action: FixturesAction::List } => {
            commands::darboux::list_fixtures();
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("{}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
