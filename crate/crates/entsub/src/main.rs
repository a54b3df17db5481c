//! `entsub`: construct, certify and bound genuinely entangled subspaces.
//!
//! Exit codes: 0 success, 2 usage or validation error, 3 at least one cut
//! could not be decided (the report is still written).

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use entsub::commands::{self, BoundInputs, ConstructParams, Family, LiftVia};
use entsub::json::{ChannelFile, DensityFile, StateFile, SubspaceFile};
use entsub::{CliError, EXIT_INCONCLUSIVE, EXIT_USAGE};
use entsub_core::certify::{Mode, SeesawOptions};
use serde::Serialize;
use serde::de::DeserializeOwned;

#[derive(Parser)]
#[command(name = "entsub", version, about = "Genuinely entangled subspaces from quantum channels")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Seed of every random stream of the run.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random restarts of the seesaw and norm searches.
    #[arg(long, global = true, default_value_t = 200)]
    restarts: usize,
    /// Sweeps per seesaw restart.
    #[arg(long, global = true, default_value_t = 5000)]
    max_sweeps: usize,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Numeric,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Ces3x3,
    Antisym,
    Ges3qubit,
    #[value(name = "ges3qubit-orth")]
    Ges3qubitOrth,
    Ces4x4,
    Ges4qubit,
    Ges3qutrit,
    HwGes,
    Lift,
}

#[derive(Clone, Copy, ValueEnum)]
enum ViaArg {
    Antisym,
    HolevoWerner,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureArg {
    Concurrence,
    Negativity,
    Geometric,
}

#[derive(Subcommand)]
enum Command {
    /// Build a subspace family and print its orthonormal basis.
    Construct {
        #[arg(value_enum)]
        family: FamilyArg,
        /// Comma-separated λ values in (0, 1).
        #[arg(long)]
        lambda: Option<String>,
        /// Integer weights r:s for the exact sibling, e.g. 1:1,1:2,2:3.
        #[arg(long)]
        weights: Option<String>,
        /// Local dimension of the antisymmetric family.
        #[arg(long)]
        d: Option<usize>,
        /// Isometry used by the lift family.
        #[arg(long, value_enum, default_value_t = ViaArg::Antisym)]
        via: ViaArg,
        /// Also emit the exact (rationalized) sibling.
        #[arg(long)]
        exact: bool,
    },
    /// Certify every bipartition of a subspace.
    Certify {
        /// Subspace JSON ("-" for stdin).
        #[arg(default_value = "-")]
        subspace: String,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Use the exact sibling (mode defaults to both).
        #[arg(long)]
        exact: bool,
        /// S-pair cap of the Groebner computations.
        #[arg(long, default_value_t = entsub_core::polysys::DEFAULT_SPAIR_CAP)]
        spair_cap: usize,
    },
    /// Entanglement measure of a pure state on each (or the given) cut.
    Measure {
        #[arg(default_value = "-")]
        state: String,
        #[arg(long, value_enum)]
        measure: MeasureArg,
        /// Side A of a cut, e.g. 0,2; repeatable.
        #[arg(long)]
        cut: Vec<String>,
    },
    /// Lower bounds on GME concurrence and negativity of a mixed state.
    Bound {
        #[arg(long)]
        subspace: String,
        /// Density matrix JSON; defaults to Π_W / dim W.
        #[arg(long)]
        rho: Option<String>,
        /// G_GME(W); computed by the seesaw when absent.
        #[arg(long)]
        g: Option<f64>,
        /// d of the concurrence prefactor.
        #[arg(long)]
        d: Option<usize>,
        /// Comma-separated noise spectrum.
        #[arg(long)]
        spectrum: Option<String>,
    },
    /// Noise-robustness thresholds.
    Robustness {
        #[arg(long)]
        subspace: String,
        #[arg(long)]
        g: f64,
        #[arg(long)]
        spectrum: Option<String>,
    },
    /// Channel utilities.
    Channel {
        #[command(subcommand)]
        action: ChannelAction,
    },
}

#[derive(Subcommand)]
enum ChannelAction {
    /// Check trace preservation and the Kraus norm condition.
    Validate {
        #[arg(default_value = "-")]
        channel: String,
    },
    /// Stinespring isometry.
    Isometry {
        #[arg(default_value = "-")]
        channel: String,
    },
    /// Maximal output p-norm over pure inputs.
    MaxNorm {
        #[arg(default_value = "-")]
        channel: String,
        /// Norm order, or "inf".
        #[arg(long, default_value = "2")]
        p: String,
    },
    /// Kraus operators of the Holevo-Werner channel.
    HolevoWerner {
        #[arg(long, default_value_t = 3)]
        d: usize,
    },
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

fn load<T: DeserializeOwned>(path: &str) -> Result<T, CliError> {
    Ok(serde_json::from_str(&read_input(path)?)?)
}

fn render<T: Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

/// Runs the command and returns (report, exit code).
fn run(cli: Cli) -> Result<(String, u8), CliError> {
    let g = &cli.global;
    let Format::Json = g.format;
    let opts = SeesawOptions { restarts: g.restarts, max_sweeps: g.max_sweeps, seed: g.seed, ..SeesawOptions::default() };
    match cli.command {
        Command::Construct { family, lambda, weights, d, via, exact } => {
            let family = match family {
                FamilyArg::Ces3x3 => Family::Ces3x3,
                FamilyArg::Antisym => Family::Antisym,
                FamilyArg::Ges3qubit => Family::Ges3Qubit,
                FamilyArg::Ges3qubitOrth => Family::Ges3QubitOrth,
                FamilyArg::Ces4x4 => Family::Ces4x4,
                FamilyArg::Ges4qubit => Family::Ges4Qubit,
                FamilyArg::Ges3qutrit => Family::Ges3Qutrit,
                FamilyArg::HwGes => Family::HwGes,
                FamilyArg::Lift => Family::Lift,
            };
            let params = ConstructParams {
                lambda: lambda.as_deref().map(commands::parse_list).transpose()?,
                weights: weights.as_deref().map(commands::parse_weights).transpose()?,
                d,
                via: match via {
                    ViaArg::Antisym => LiftVia::Antisym,
                    ViaArg::HolevoWerner => LiftVia::HolevoWerner,
                },
            };
            Ok((render(&commands::construct(family, &params, exact, g.seed)?)?, 0))
        }
        Command::Certify { subspace, mode, exact, spair_cap } => {
            let file: SubspaceFile = load(&subspace)?;
            let mode = mode.map(|m| match m {
                ModeArg::Exact => Mode::Exact,
                ModeArg::Numeric => Mode::Numeric,
                ModeArg::Both => Mode::Both,
            });
            let (report, certs) = commands::certify(&file, mode, exact, &SeesawOptions { spair_cap, ..opts })?;
            let code = if commands::any_inconclusive(&certs) { EXIT_INCONCLUSIVE as u8 } else { 0 };
            Ok((render(&report)?, code))
        }
        Command::Measure { state, measure, cut } => {
            let file: StateFile = load(&state)?;
            let m = commands::parse_measure(match measure {
                MeasureArg::Concurrence => "concurrence",
                MeasureArg::Negativity => "negativity",
                MeasureArg::Geometric => "geometric",
            })?;
            Ok((render(&commands::measure(&file, m, &cut, g.seed)?)?, 0))
        }
        Command::Bound { subspace, rho, g: gval, d, spectrum } => {
            let sub: SubspaceFile = load(&subspace)?;
            let rho: Option<DensityFile> = rho.as_deref().map(load).transpose()?;
            let inp = BoundInputs { subspace: &sub, rho: rho.as_ref(), g: gval, d, spectrum: spectrum.as_deref().map(commands::parse_list).transpose()? };
            Ok((render(&commands::bound(&inp, &opts)?)?, 0))
        }
        Command::Robustness { subspace, g: gval, spectrum } => {
            let sub: SubspaceFile = load(&subspace)?;
            let spec = spectrum.as_deref().map(commands::parse_list).transpose()?;
            Ok((render(&commands::robustness(&sub, gval, spec.as_deref(), g.seed)?)?, 0))
        }
        Command::Channel { action } => {
            let out = match action {
                ChannelAction::Validate { channel } => render(&commands::channel_validate(&load::<ChannelFile>(&channel)?.channel()?, g.seed))?,
                ChannelAction::Isometry { channel } => render(&commands::channel_isometry(&load::<ChannelFile>(&channel)?.channel()?, g.seed)?)?,
                ChannelAction::MaxNorm { channel, p } => {
                    let ch = load::<ChannelFile>(&channel)?.channel()?;
                    render(&commands::channel_max_norm(&ch, commands::parse_p(&p)?, g.restarts, g.seed)?)?
                }
                ChannelAction::HolevoWerner { d } => render(&commands::channel_holevo_werner(d, g.seed)?)?,
            };
            Ok((out, 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.global.output.clone();
    match run(cli) {
        Ok((report, code)) => {
            let written = match &output {
                Some(p) => fs::write(p, &report),
                None => io::stdout().write_all(report.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("entsub: {e}");
                return ExitCode::from(EXIT_USAGE as u8);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("entsub: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
