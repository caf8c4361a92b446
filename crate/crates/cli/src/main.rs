use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod cmd;
mod doc;
mod error;
mod text;

use cmd::Report;
use error::CliError;

#[derive(Parser)]
#[command(
    name = "novikov-cone",
    version,
    about = "Exact conical Novikov computations"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Build a unimodular family of forms around a target direction.
    RegularFamily(cmd::cone::RegularFamilyArgs),
    /// Decide whether a family of forms cuts out a solid cone.
    Admissible(cmd::cone::AdmissibleArgs),
    /// Truncated series arithmetic.
    #[command(subcommand)]
    Ring(cmd::ring::RingCommand),
    /// Pitcher numbers and the inequality report of a complex over Q[t].
    Pitcher(cmd::pitcher::PitcherArgs),
    /// Free chain complexes and chain maps.
    #[command(subcommand)]
    Complex(cmd::complex::ComplexCommand),
    /// Incidence-coefficient series of a descent matrix.
    Incidence(cmd::incidence::IncidenceArgs),
}

fn run(cli: Cli) -> Result<Report, CliError> {
    let report = match cli.command {
        Command::RegularFamily(a) => cmd::cone::regular_family(a),
        Command::Admissible(a) => cmd::cone::admissible(a),
        Command::Ring(c) => cmd::ring::run(c),
        Command::Pitcher(a) => cmd::pitcher::run(a),
        Command::Complex(c) => cmd::complex::run(c),
        Command::Incidence(a) => cmd::incidence::run(a),
    }?;
    if let Some(cap) = doc::max_bits()? {
        doc::check_bits(&report.input, cap, "input")?;
        doc::check_bits(&report.payload, cap, "output")?;
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            let out = match format {
                Format::Json => {
                    let v = doc::envelope(report.schema, report.input, report.payload);
                    serde_json::to_string_pretty(&v).expect("serializable") + "\n"
                }
                Format::Text => report.text,
            };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            ExitCode::from(report.exit)
        }
        Err(e) => {
            eprintln!("novikov-cone: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
