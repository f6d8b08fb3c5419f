mod commands;
mod output;

use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mintaylor::Format;

/// Taylor resolutions, linear quotients and Betti numbers of monomial ideals.
#[derive(Parser, Debug)]
#[command(name = "mintaylor", version, about)]
pub struct Cli {
    /// Number of variables of the ambient ring (required for text input).
    #[arg(long = "vars", global = true)]
    pub vars: Option<usize>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Human)]
    pub format: FormatArg,
    /// Stop an enumeration after this many ideals; the run is marked non-exhaustive.
    #[arg(long, global = true)]
    pub limit: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Human,
    Structured,
    Tabular,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Human => Format::Human,
            FormatArg::Structured => Format::Structured,
            FormatArg::Tabular => Format::Tabular,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Formula,
    Oracle,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the minimal generators in canonical order.
    Gens {
        /// Ideal text such as "x1^2*x2, x1*x3", or `-` for stdin.
        ideal: String,
    },
    /// Build the Taylor complex and print its ranks.
    Taylor {
        ideal: String,
        /// Also list every differential entry.
        #[arg(long)]
        matrices: bool,
    },
    /// Decide whether the Taylor resolution is minimal.
    IsMinimal { ideal: String },
    /// Find or check a linear-quotients order.
    Linquo {
        ideal: String,
        /// Comma-separated 1-based positions in canonical generator order.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<usize>>,
    },
    /// Betti numbers by the set-size formula, the exact oracle, or both.
    Betti {
        ideal: String,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Run every recognizer on one ideal.
    Classify { ideal: String },
    /// Enumerate minimal monomial ideals, optionally running checks on each.
    Enumerate {
        #[arg(long)]
        max_deg: u32,
        #[arg(long)]
        max_gens: usize,
        /// Comma-separated tags: stable, squarefree, equigenerated, matroidal, all.
        #[arg(long, default_value = "all")]
        family: String,
        /// Comma-separated checks, or `all`.
        #[arg(long)]
        checks: Option<String>,
    },
}

/// Process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    CheckFailed = 1,
    Usage = 2,
    Envelope = 3,
}

#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            status: Status::Usage,
            message: message.into(),
        }
    }

    pub fn envelope(message: impl Into<String>) -> Self {
        Failure {
            status: Status::Envelope,
            message: message.into(),
        }
    }
}

fn read_ideal_text(arg: &str) -> io::Result<String> {
    if arg == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(arg.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = commands::run(&cli, read_ideal_text);
    let mut stdout = io::stdout().lock();
    match result {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            let _ = stdout.write_all(out.text.as_bytes());
            ExitCode::from(out.status as u8)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.status as u8)
        }
    }
}
