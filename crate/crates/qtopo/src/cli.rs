//! Command line surface. Flags override the config file, which overrides the
//! defaults in [`crate::config`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{
    ClassifyConfig, Config, DepthConfig, DistanceConfig, EvolveConfig, FuzzyConfig, JointConfig, RoughConfig, SpectrumConfig,
    WeylConfig,
};

#[derive(Debug, Parser)]
#[command(name = "qtopo", version, about = "Spectra, topology and boundary-condition dynamics on two intervals")]
pub struct Cli {
    /// TOML config; any subset of the keys printed by --show-defaults.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory [default: $QTOPO_OUT_DIR or the current directory].
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,
    /// Output file stem [default: the subcommand name].
    #[arg(long, global = true)]
    pub stem: Option<String>,
    /// Print every default as TOML and exit.
    #[arg(long)]
    pub show_defaults: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectrum on D_u by both solvers; fails if they disagree.
    Spectrum(SpectrumArgs),
    /// Glued configuration space from density continuity.
    Classify(ClassifyArgs),
    /// Spectral geometry: dimension, distance, commutator depth, roughening.
    #[command(subcommand)]
    Geometry(GeometryCommand),
    /// Packet evolution on U(2) and its topology distribution.
    Evolve(EvolveArgs),
    /// Finite commutative and noncommutative character spaces.
    #[command(subcommand)]
    Gelfand(GelfandCommand),
}

#[derive(Debug, Subcommand)]
pub enum GeometryCommand {
    /// Dimension from eigenvalue growth.
    Weyl(WeylArgs),
    /// Distance between two points by geodesic and commutator routes.
    Distance(DistanceArgs),
    /// Nested-commutator norms against grid refinement.
    Depth(DepthArgs),
    /// Tail/head test of Σ ω^{2K} |b|².
    Rough(RoughArgs),
}

#[derive(Debug, Subcommand)]
pub enum GelfandCommand {
    /// Joint spectrum of a commuting hermitian family.
    Joint(JointArgs),
    /// Clock and shift relation U1 U2 = ω U2 U1.
    Fuzzy(FuzzyArgs),
}

macro_rules! overlay {
    ($cfg:expr, $args:expr, $($field:ident),+) => {
        $(if let Some(v) = $args.$field.clone() { $cfg.$field = v; })+
    };
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// u_a, u_b, u_int, identity, flip, or 8 reals re00,im00,…,im11.
    #[arg(long)]
    pub u: Option<String>,
    #[arg(long)]
    pub lambda_max: Option<f64>,
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub u: Option<String>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub probes: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub k_max: Option<u32>,
}

#[derive(Debug, Args)]
pub struct WeylArgs {
    #[arg(long)]
    pub u: Option<String>,
    #[arg(long)]
    pub modes: Option<usize>,
    #[arg(long)]
    pub order: Option<u32>,
    #[arg(long)]
    pub n_min: Option<usize>,
}

#[derive(Debug, Args)]
pub struct DistanceArgs {
    #[arg(long)]
    pub u: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long)]
    pub x_interval: Option<u8>,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<String>,
    #[arg(long)]
    pub y_interval: Option<u8>,
    /// 1, 2 or both.
    #[arg(long)]
    pub order: Option<String>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct DepthArgs {
    #[arg(long)]
    pub u: Option<String>,
    #[arg(long)]
    pub order: Option<u32>,
    /// Comma-separated points per interval.
    #[arg(long, value_delimiter = ',')]
    pub grids: Option<Vec<usize>>,
    #[arg(long)]
    pub depth: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RoughArgs {
    /// exp or power.
    #[arg(long)]
    pub profile: Option<String>,
    #[arg(long)]
    pub rate: Option<f64>,
    #[arg(long)]
    pub modes: Option<usize>,
    #[arg(long)]
    pub k_max: Option<u32>,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    /// Largest |p| in the Peter–Weyl basis.
    #[arg(long)]
    pub p_max: Option<u32>,
    /// Twice the largest spin j.
    #[arg(long)]
    pub two_j_max: Option<u32>,
    /// Heat-kernel width of the packet.
    #[arg(long)]
    pub tau: Option<f64>,
    /// Moment of inertia I in the kinetic term C/2I.
    #[arg(long)]
    pub inertia: Option<f64>,
    /// Packet centre, as for --u.
    #[arg(long)]
    pub start: Option<String>,
    /// Ball radius for the topology partition.
    #[arg(long)]
    pub delta: Option<f64>,
    /// none or tilt.
    #[arg(long)]
    pub potential: Option<String>,
    /// Tilt strength.
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<f64>,
    /// Unitary the tilt is centred at.
    #[arg(long)]
    pub tilt_center: Option<String>,
    /// Particle level added as a Born–Oppenheimer potential; negative for none.
    #[arg(long, allow_hyphen_values = true)]
    pub bo_level: Option<i64>,
    /// Final time.
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Number of equal time steps.
    #[arg(long)]
    pub steps: Option<usize>,
    /// auto, dense or chebyshev.
    #[arg(long)]
    pub method: Option<String>,
}

#[derive(Debug, Args)]
pub struct JointArgs {
    /// clock, diagonal or random.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub values: Option<Vec<f64>>,
    #[arg(long)]
    pub members: Option<usize>,
    #[arg(long)]
    pub distinct: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct FuzzyArgs {
    #[arg(long)]
    pub k: Option<usize>,
}

/// The effective configuration section of one subcommand.
pub enum Resolved {
    Spectrum(SpectrumConfig),
    Classify(ClassifyConfig),
    Weyl(WeylConfig),
    Distance(DistanceConfig),
    Depth(DepthConfig),
    Rough(RoughConfig),
    Evolve(EvolveConfig),
    Joint(JointConfig),
    Fuzzy(FuzzyConfig),
}

impl Resolved {
    pub fn name(&self) -> &'static str {
        match self {
            Resolved::Spectrum(_) => "spectrum",
            Resolved::Classify(_) => "classify",
            Resolved::Weyl(_) => "geometry-weyl",
            Resolved::Distance(_) => "geometry-distance",
            Resolved::Depth(_) => "geometry-depth",
            Resolved::Rough(_) => "geometry-rough",
            Resolved::Evolve(_) => "evolve",
            Resolved::Joint(_) => "gelfand-joint",
            Resolved::Fuzzy(_) => "gelfand-fuzzy",
        }
    }
}

pub fn resolve(cmd: &Command, base: Config) -> Resolved {
    match cmd {
        Command::Spectrum(a) => {
            let mut c = base.spectrum;
            overlay!(c, a, u, lambda_max, tol);
            Resolved::Spectrum(c)
        }
        Command::Classify(a) => {
            let mut c = base.classify;
            overlay!(c, a, u, tol, probes, seed, k_max);
            Resolved::Classify(c)
        }
        Command::Geometry(GeometryCommand::Weyl(a)) => {
            let mut c = base.geometry.weyl;
            overlay!(c, a, u, modes, order, n_min);
            Resolved::Weyl(c)
        }
        Command::Geometry(GeometryCommand::Distance(a)) => {
            let mut c = base.geometry.distance;
            overlay!(c, a, u, x, x_interval, y, y_interval, order, points, tol);
            Resolved::Distance(c)
        }
        Command::Geometry(GeometryCommand::Depth(a)) => {
            let mut c = base.geometry.depth;
            overlay!(c, a, u, order, grids, depth);
            Resolved::Depth(c)
        }
        Command::Geometry(GeometryCommand::Rough(a)) => {
            let mut c = base.geometry.rough;
            overlay!(c, a, profile, rate, modes, k_max);
            Resolved::Rough(c)
        }
        Command::Evolve(a) => {
            let mut c = base.evolve;
            overlay!(c, a, p_max, two_j_max, tau, inertia, start, delta, potential, v, tilt_center, bo_level, t_max, steps, method);
            Resolved::Evolve(c)
        }
        Command::Gelfand(GelfandCommand::Joint(a)) => {
            let mut c = base.gelfand.joint;
            overlay!(c, a, family, k, values, members, distinct, seed);
            Resolved::Joint(c)
        }
        Command::Gelfand(GelfandCommand::Fuzzy(a)) => {
            let mut c = base.gelfand.fuzzy;
            overlay!(c, a, k);
            Resolved::Fuzzy(c)
        }
    }
}
