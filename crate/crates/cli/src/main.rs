//! `qonsager`: build, inspect and verify the q-Onsager generators from the
//! command line.

mod commands;
mod error;
mod format;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::error::CliError;
use crate::format::Format;

#[derive(Debug, Parser)]
#[command(name = "qonsager", version, about = "Exact q-Onsager generators in terms of A and A*")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every command.
#[derive(Debug, Args)]
pub struct Common {
    /// Highest level k; the table holds W_{-k-1}, W_{k+2}, G_{k+1} and G~_{k+1}.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Constant a_n of G_n, as `n=value` with a rational value (repeatable).
    #[arg(long = "a-const", value_name = "N=VALUE")]
    pub a_const: Vec<String>,
    /// `formal` keeps rho as the symbol r; anything else is a scalar in q.
    #[arg(long, env = "QONSAGER_DEFAULT_RHO", default_value = "formal", allow_hyphen_values = true)]
    pub rho: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the output to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print every generator of the table.
    Gen {
        #[command(flatten)]
        common: Common,
    },
    /// Print the solved ansatz coefficients per level.
    Coeffs {
        #[command(flatten)]
        common: Common,
    },
    /// Run the relation suite in representations.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Representation spec, e.g. `d2:a=2,b=3` or `dsum:(d2:a=2,b=3)+(d2:a=5,b=7)` (repeatable).
        #[arg(long)]
        rep: Vec<String>,
    },
    /// Print the charges I_1, I_3, ... and optionally check that they commute.
    Hierarchy {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        kappas: commands::KappaArgs,
        #[arg(long)]
        rep: Vec<String>,
        #[arg(long)]
        check_commute: bool,
        /// Also check the whole hierarchy with three seeded kappa vectors.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Find the smallest Askey-Wilson type relation in a representation.
    AwDiscover {
        #[command(flatten)]
        common: Common,
        #[arg(long, required = true)]
        rep: Vec<String>,
        #[arg(long, default_value_t = 3)]
        max_order: usize,
    },
    /// Export one generator (`W_-1`, `W_2`, `G_2`, `Gt_2`, `f_1`) or convert a JSON polynomial.
    Export {
        #[command(flatten)]
        common: Common,
        /// Generator name; the level is chosen automatically.
        #[arg(long, conflicts_with = "input", required_unless_present = "input")]
        name: Option<String>,
        /// JSON polynomial to re-render.
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen { common } => commands::gen(&common),
        Command::Coeffs { common } => commands::coeffs(&common),
        Command::Verify { common, rep } => commands::verify(&common, &rep),
        Command::Hierarchy { common, kappas, rep, check_commute, seed } => {
            commands::hierarchy(&common, &kappas, &rep, check_commute, seed)
        }
        Command::AwDiscover { common, rep, max_order } => commands::aw_discover(&common, &rep, max_order),
        Command::Export { common, name, input } => commands::export(&common, name.as_deref(), input.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
