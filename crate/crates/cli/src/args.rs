//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cmr_core::potentials::PotentialKind;

use crate::error::CliError;

/// Environment variable holding the default seed; `--seed` takes precedence.
pub const SEED_ENV: &str = "CMR_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "cmr",
    version,
    about = "Calogero–Moser r-matrix verification, simulation and inspection"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the residual suite at seeded random regular points.
    Verify(VerifyArgs),
    /// Integrate the flow and report conservation drifts.
    Simulate(SimulateArgs),
    /// Print one of the constant objects.
    Show(ShowArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PotentialArg {
    Rational,
    Hyperbolic,
    Trigonometric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    #[value(name = "I", alias = "i", alias = "1")]
    I,
    #[value(name = "II", alias = "ii", alias = "2")]
    II,
    /// Random simple-root values extended to all roots.
    #[value(name = "general")]
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum QModeArg {
    Zero,
    /// `Q(q) = (1/n) Σ w_α E_α`
    Sln,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ShowObject {
    #[value(name = "constR")]
    ConstR,
    #[value(name = "phi")]
    Phi,
    #[value(name = "frobenius")]
    Frobenius,
}

#[derive(Clone, Debug, Args)]
pub struct PotentialOpts {
    /// Pair potential family.
    #[arg(long, value_enum, default_value = "rational")]
    pub potential: PotentialArg,
    /// Coupling `a` of the hyperbolic and trigonometric potentials.
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
}

impl PotentialOpts {
    pub fn kind(&self) -> Result<PotentialKind, CliError> {
        let kind = match self.potential {
            PotentialArg::Rational => Ok(PotentialKind::Rational),
            PotentialArg::Hyperbolic => PotentialKind::hyperbolic(self.a),
            PotentialArg::Trigonometric => PotentialKind::trigonometric(self.a),
        };
        kind.map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Clone, Debug, Args)]
pub struct VerifyArgs {
    /// Number of particles.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u16).range(2..=10))]
    pub n: u16,
    #[command(flatten)]
    pub potential: PotentialOpts,
    /// Cartan map: case I, case II, or random simple-root values.
    #[arg(long = "case", value_enum, default_value = "I")]
    pub case: CaseArg,
    /// Constant shift of the gauge coefficients.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub omega: f64,
    /// Choice of the `1 ⊗ Q(q)` term.
    #[arg(long, value_enum, default_value = "zero")]
    pub q_mode: QModeArg,
    /// Number of random phase points.
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
    pub samples: u32,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    pub seed: u64,
    /// Tolerance for identities evaluated in closed form.
    #[arg(long, default_value_t = 1e-9)]
    pub tol_analytic: f64,
    /// Tolerance for identities evaluated with central differences.
    #[arg(long, default_value_t = 1e-6)]
    pub tol_fd: f64,
    /// Tolerance for the floating-point comparison with the constant r-matrix.
    #[arg(long, default_value_t = 1e-8)]
    pub tol_constant: f64,
    /// Write the structured report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Use rational arithmetic where supported.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Clone, Debug, Args)]
pub struct SimulateArgs {
    /// Number of particles; inferred from `--q` when given.
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..=10))]
    pub n: Option<u16>,
    #[command(flatten)]
    pub potential: PotentialOpts,
    /// Initial coordinates, comma separated; random when omitted.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub q: Option<Vec<f64>>,
    /// Initial momenta, comma separated; zero when omitted with `--q`.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub p: Option<Vec<f64>>,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    /// Final time; ignored when `--steps` is given.
    #[arg(long, default_value_t = 10.0)]
    pub t_final: f64,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long, default_value_t = 1e-8)]
    pub max_energy_drift: f64,
    #[arg(long, default_value_t = 1e-7)]
    pub max_spectral_drift: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub max_momentum_drift: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Accepted for uniformity; the flow is integrated in floating point.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Clone, Debug, Args)]
pub struct ShowArgs {
    #[arg(value_enum)]
    pub object: ShowObject,
    /// Matrix size; inferred from `--q` for `phi`.
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..=10))]
    pub n: Option<u16>,
    /// Coordinates for `phi`, comma separated; fractions `a/b` are accepted.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub q: Option<Vec<String>>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Evaluate `phi` in rational arithmetic.
    #[arg(long)]
    pub exact: bool,
}
