use std::path::PathBuf;
use std::process::ExitCode;

use airy_evolve_cli::{run, Kind, RunOptions};
use clap::{Args, Parser, Subcommand};

/// Heat and Schrodinger evolution with linear potentials, Airy packets and
/// operational identities. Writes CSV tables plus a JSON manifest.
#[derive(Parser)]
#[command(name = "airy-evolve", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Heat equation with a linear potential from a Gaussian.
    Heat(ScenarioArgs),
    /// Schrodinger equation with a (possibly time-dependent) linear potential.
    Schrodinger(ScenarioArgs),
    /// Non-spreading Airy packet: density snapshots and peak trajectory.
    AiryPacket(ScenarioArgs),
    /// Gauss-Weierstrass, Airy or cubic-evolution transform of a Gaussian.
    Transform(ScenarioArgs),
    /// Exact coefficients of higher-order Hermite polynomials.
    Poly(ScenarioArgs),
    /// Ordered-exponential solution for time-dependent coefficients.
    WeiNorman(ScenarioArgs),
    /// Centroid trajectory of a packet in a time-dependent field.
    Centroid(ScenarioArgs),
    /// Run named check presets (`all` for every one).
    Validate(ScenarioArgs),
}

#[derive(Args)]
struct ScenarioArgs {
    /// INI file; each section is one scenario.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (AIRY_EVOLVE_OUT takes precedence).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run the scenarios of a config file concurrently.
    #[arg(long)]
    parallel: bool,
    /// Scenario parameters as `--key value` pairs.
    #[arg(trailing_var_arg = true, allow_hyphen_values = true, value_name = "PARAMS")]
    params: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, args) = match cli.command {
        Command::Heat(a) => (Kind::Heat, a),
        Command::Schrodinger(a) => (Kind::Schrodinger, a),
        Command::AiryPacket(a) => (Kind::AiryPacket, a),
        Command::Transform(a) => (Kind::Transform, a),
        Command::Poly(a) => (Kind::Poly, a),
        Command::WeiNorman(a) => (Kind::WeiNorman, a),
        Command::Centroid(a) => (Kind::Centroid, a),
        Command::Validate(a) => (Kind::Validate, a),
    };
    let opts = RunOptions { config: args.config, out: args.out, parallel: args.parallel, params: args.params };
    ExitCode::from(run(kind, &opts))
}
