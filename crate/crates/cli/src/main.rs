use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use leibrack_cli::commands::{self, IntegrateFlags, Outcome};
use leibrack_cli::error::CliError;
use leibrack_cli::format::parse_algebra_file;

#[derive(Parser)]
#[command(
    name = "leibrack",
    version,
    about = "Integrate a Leibniz algebra into a local augmented Lie rack"
)]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact checks: the Leibniz identity and the squares ideal.
    Verify { file: PathBuf },
    /// The canonical central extension and its cocycle.
    Analyze { file: PathBuf },
    /// Build the local augmented rack and run the property suite.
    Integrate {
        file: PathBuf,
        #[command(flatten)]
        flags: Flags,
    },
    /// Run a built-in algebra: dim5, heisenberg or abelian3.
    Example {
        name: String,
        #[command(flatten)]
        flags: Flags,
    },
}

#[derive(Args)]
struct Flags {
    #[arg(long, default_value_t = 8)]
    quad_order: usize,
    #[arg(long, default_value_t = 0.5)]
    chart_radius: f64,
    #[arg(long, default_value_t = 1e-3)]
    fd_step: f64,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl From<Flags> for IntegrateFlags {
    fn from(f: Flags) -> Self {
        IntegrateFlags {
            quad_order: f.quad_order,
            chart_radius: f.chart_radius,
            fd_step: f.fd_step,
            samples: f.samples,
            seed: f.seed,
        }
    }
}

fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Verify { file } => Ok(commands::verify(&parse_algebra_file(&file)?)),
        Command::Analyze { file } => Ok(commands::analyze(&parse_algebra_file(&file)?)),
        Command::Integrate { file, flags } => {
            commands::integrate(&parse_algebra_file(&file)?, &flags.into())
        }
        Command::Example { name, flags } => commands::example(&name, &flags.into()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.report.to_json());
            } else {
                print!("{}", out.report.to_text());
            }
            ExitCode::from(out.exit_code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
