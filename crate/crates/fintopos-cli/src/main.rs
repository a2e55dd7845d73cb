use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use fintopos_core::budget::Budget;

use fintopos_cli::commands::{run, Invocation};
use fintopos_cli::report::Format;

/// Decide and witness adjoint-string axioms of presheaf toposes over
/// finite categories.
#[derive(Parser, Debug)]
#[command(name = "fintopos", version, disable_help_subcommand = true)]
struct Cli {
    /// One of: validate, classify, container, omega, pi0, sections, gamma,
    /// reflect, fam, site, space, props, battery.
    command: String,
    /// The declaration the command operates on (optional for `validate`).
    target: Option<String>,
    /// Input files in the declaration language.
    #[arg(short, long, required = true, num_args = 1..)]
    input: Vec<PathBuf>,
    /// Node budget for searches; exceeding it refuses the check.
    #[arg(long, default_value_t = Budget::DEFAULT_MAX_NODES)]
    budget: u64,
    /// Extra battery members for `props` and `battery`, by presheaf name.
    #[arg(long, value_delimiter = ',')]
    battery: Vec<String>,
    /// Output format.
    #[arg(long, default_value = "json", value_parser = ["json", "text"])]
    format: String,
    /// Label set for `gamma`.
    #[arg(long, value_delimiter = ',', default_values_t = [String::from("x"), String::from("y")])]
    set: Vec<String>,
    /// Reserved; all behavior is deterministic and seed independent.
    #[arg(long)]
    #[allow(dead_code)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(3);
        }
    };

    let mut sources = Vec::new();
    for path in &cli.input {
        match std::fs::read_to_string(path) {
            Ok(text) => sources.push((path.display().to_string(), text)),
            Err(e) => {
                eprintln!("{}: {e}", path.display());
                return ExitCode::from(3);
            }
        }
    }

    let format = if cli.format == "text" {
        Format::Text
    } else {
        Format::Json
    };
    let inv = Invocation {
        command: cli.command,
        target: cli.target,
        budget: Budget {
            max_nodes: cli.budget,
        },
        battery: cli.battery,
        labels: cli.set,
    };
    match run(&sources, &inv) {
        Ok(report) => {
            print!("{}", report.render(format));
            let code = report.exit_code();
            ExitCode::from(u8::try_from(code).unwrap_or(1))
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(3)
        }
    }
}
