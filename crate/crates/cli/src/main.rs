//! `tapsilou`: analysis, verification, simulation and play for the quantum
//! tapsilou game.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 usage error.

mod commands;
mod play;
mod serve;

use std::fmt;
use std::io;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "tapsilou", version, about = "Quantum tapsilou game engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the phase-1 (tosser) or phase-2 (gambler) probability sweep.
    Analyze {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        phase: u8,
        #[arg(long, default_value_t = 16)]
        n: u32,
        /// Tosser exponent; required for phase 2.
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Check the dual-basis identity and the equal-maximum property.
    Verify {
        /// A single order or an inclusive range such as `2..64`.
        #[arg(long, default_value = "16")]
        n: OrderRange,
    },
    /// Sample the final state and compare frequencies with the closed form.
    Simulate {
        #[arg(long, default_value_t = 16)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
        #[arg(long, default_value_t = 100_000)]
        shots: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Hot-seat game in the terminal.
    Play {
        #[arg(long, default_value_t = 16)]
        n: u32,
        #[arg(long, default_value_t = 10)]
        bet: u64,
        #[arg(long, default_value_t = 100)]
        tosser_bankroll: u64,
        #[arg(long, default_value_t = 100)]
        gambler_bankroll: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Exact probabilities of the classical all-heads/all-tails game.
    Classical {
        #[arg(long, default_value_t = 2)]
        coins: u32,
    },
    /// Run the REST service until interrupted.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// Inclusive range of group orders.
#[derive(Clone, Copy, Debug)]
pub struct OrderRange {
    pub start: u32,
    pub end: u32,
}

impl FromStr for OrderRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("{t:?} is not a group order"))
        };
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let n = parse(s)?;
                (n, n)
            }
        };
        if start == 0 || start > end {
            return Err(format!("empty or invalid order range {s:?}"));
        }
        Ok(Self { start, end })
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) => 2,
            Self::Runtime(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Usage(m) | Self::Runtime(m) => f.write_str(m),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        Self::Runtime(e.to_string())
    }
}

/// Core errors reaching the CLI come from flag values.
impl From<tapsilou_core::Error> for CliError {
    fn from(e: tapsilou_core::Error) -> Self {
        Self::Usage(e.to_string())
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Analyze { phase, n, k, format } => commands::analyze(&mut out, phase, n, k, format),
        Command::Verify { n } => commands::verify(&mut out, n),
        Command::Simulate {
            n,
            k,
            l,
            shots,
            seed,
        } => commands::simulate(&mut out, n, k, l, shots, seed),
        Command::Play {
            n,
            bet,
            tosser_bankroll,
            gambler_bankroll,
            seed,
        } => {
            let config = tapsilou_core::SessionConfig {
                n,
                bet,
                tosser_bankroll,
                gambler_bankroll,
                seed,
            };
            play::play(io::stdin().lock(), &mut out, config)
        }
        Command::Classical { coins } => commands::classical(&mut out, coins),
        Command::Serve { port, host } => {
            drop(out);
            serve::serve(&host, port)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, CliError::Usage(_)) {
                eprintln!("run `tapsilou help` for usage");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
