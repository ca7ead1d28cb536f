//! `harmonika`: group-algebra transforms, spectra, states and SU(2)
//! coupling over JSON files.
//!
//! Exit status is 0 on success, 2 for unreadable or malformed input and 3
//! when the input is well formed but fails a mathematical precondition. In
//! the last two cases a JSON object `{code, message, max_violation}` is
//! written to stderr.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::{CliError, Format};

#[derive(Parser)]
#[command(name = "harmonika", version, about = "Harmonic analysis on finite groups and SU(2)")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Tolerance for yes/no judgements that take one (unitarity).
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,

    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

/// An input file, with the group taken from `--group` or from the file.
#[derive(Args)]
struct Input {
    /// Group descriptor such as `symmetric:3` or `cyclic:2x4`.
    #[arg(long)]
    group: Option<String>,

    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Group tables and representations.
    #[command(subcommand)]
    Group(GroupCommand),
    /// Element values to Peter–Weyl blocks.
    Transform(Input),
    /// Peter–Weyl blocks to element values.
    Itransform(Input),
    /// Convolution of two elements.
    Convolve {
        #[arg(long)]
        group: Option<String>,
        #[arg(long, value_name = "FILE")]
        left: PathBuf,
        #[arg(long, value_name = "FILE")]
        right: PathBuf,
    },
    /// Eigenvalues of `Ψ ↦ f * Ψ` with multiplicities.
    Spectrum(Input),
    /// Density state validation.
    #[command(subcommand)]
    State(StateCommand),
    /// Expectation value `Tr(A * ρ)`.
    Expect {
        #[arg(long)]
        group: Option<String>,
        #[arg(long, value_name = "FILE")]
        obs: PathBuf,
        #[arg(long, value_name = "FILE")]
        state: PathBuf,
    },
    /// Component of an element in the two-sided ideal of one irrep.
    Project {
        #[command(flatten)]
        input: Input,
        /// Irrep label as printed by `group irreps`.
        #[arg(long)]
        irrep: String,
    },
    /// Convolution operators as matrices.
    #[command(subcommand)]
    Operator(OperatorCommand),
    /// Clebsch–Gordan table for a pair of spins.
    Cg {
        /// Spin as `p/2`, an integer, or a decimal ending in .5 or .0.
        #[arg(long)]
        j1: String,
        #[arg(long)]
        j2: String,
    },
    /// SU(2) band-limited functions and D-matrix products.
    #[command(subcommand)]
    Su2(Su2Command),
    /// Fourier transform on a finite abelian group.
    Dft {
        #[command(flatten)]
        input: Input,
        /// Read a dual function and return group values.
        #[arg(long)]
        inverse: bool,
    },
}

#[derive(Subcommand)]
enum GroupCommand {
    /// Multiplication and inverse tables.
    Show {
        #[arg(long)]
        group: String,
    },
    /// Catalog of irreducible unitary representations.
    Irreps {
        #[arg(long)]
        group: String,
    },
}

#[derive(Subcommand)]
enum StateCommand {
    /// Report hermiticity, trace, positivity and purity.
    Check(Input),
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    #[value(name = "L")]
    L,
    #[value(name = "R")]
    R,
    #[value(name = "RT")]
    Rt,
}

#[derive(Subcommand)]
enum OperatorCommand {
    /// Matrix of `L{F}`, `R{F}` or `Rᵀ{F}` and its unitarity.
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        kind: KindArg,
    },
}

#[derive(Subcommand)]
enum Su2Command {
    /// Expand `D^{j1}_ab D^{j2}_rs` over `D^κ`. Indices are 0-based matrix
    /// positions, `m` descending.
    Expand {
        #[arg(long)]
        j1: String,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        j2: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        /// Coefficients of `e^κ = (2κ+1) D^κ` for the product of `e^{j1}` and `e^{j2}`.
        #[arg(long)]
        normalized: bool,
    },
    /// Value of a band-limited function at ZYZ Euler angles.
    Evaluate {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long, allow_hyphen_values = true)]
        gamma: f64,
    },
    /// Convolution of two band-limited functions.
    Convolve {
        #[arg(long, value_name = "FILE")]
        left: PathBuf,
        #[arg(long, value_name = "FILE")]
        right: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    use commands as c;
    let report = match cli.command {
        Command::Group(GroupCommand::Show { group }) => c::group_show(&group)?,
        Command::Group(GroupCommand::Irreps { group }) => c::group_irreps(&group)?,
        Command::Transform(i) => c::transform(i.group.as_deref(), &i.input)?,
        Command::Itransform(i) => c::itransform(i.group.as_deref(), &i.input)?,
        Command::Convolve { group, left, right } => c::convolve(group.as_deref(), &left, &right)?,
        Command::Spectrum(i) => c::spectrum(i.group.as_deref(), &i.input)?,
        Command::State(StateCommand::Check(i)) => c::state_check(i.group.as_deref(), &i.input)?,
        Command::Expect { group, obs, state } => c::expect(group.as_deref(), &obs, &state)?,
        Command::Project { input, irrep } => c::project(input.group.as_deref(), &input.input, &irrep)?,
        Command::Operator(OperatorCommand::Check { input, kind }) => {
            let kind = match kind {
                KindArg::L => harmonika::quantum::ConvolutionKind::Left,
                KindArg::R => harmonika::quantum::ConvolutionKind::Right,
                KindArg::Rt => harmonika::quantum::ConvolutionKind::RightTransposed,
            };
            c::operator_check(input.group.as_deref(), &input.input, kind, cli.tol)?
        }
        Command::Cg { j1, j2 } => c::cg(&j1, &j2)?,
        Command::Su2(Su2Command::Expand { j1, a, b, j2, r, s, normalized }) => {
            c::su2_expand(&j1, (a, b), &j2, (r, s), normalized)?
        }
        Command::Su2(Su2Command::Evaluate { input, alpha, beta, gamma }) => {
            c::su2_evaluate(&input, alpha, beta, gamma)?
        }
        Command::Su2(Su2Command::Convolve { left, right }) => c::su2_convolve(&left, &right)?,
        Command::Dft { input, inverse } => c::dft(input.group.as_deref(), &input.input, inverse)?,
    };
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
    };
    output::emit(&report, format, cli.out.as_deref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprint!("{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}
