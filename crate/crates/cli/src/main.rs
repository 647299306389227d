use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use omega_cli::{
    cmd_alpha, cmd_bound, cmd_certify, cmd_construct, cmd_spectral_check, cmd_table, CliError,
    ConstructOptions, Format, RunReport, VerifyMode,
};

#[derive(Parser)]
#[command(name = "omega")]
#[command(
    about = "Independent sets of the hypercube orthogonality graph: construct, verify, certify"
)]
#[command(version)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Omit the timing field so reruns are byte-identical
    #[arg(long, global = true)]
    no_timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report a_n, the status of alpha(Omega_n) and bound cross-checks
    Bound {
        #[arg(long)]
        n: u32,
    },
    /// Build the extremal set of size a_n and verify its independence
    Construct {
        #[arg(long)]
        n: u32,
        /// Write the set in +/- line format
        #[arg(long)]
        out: Option<PathBuf>,
        /// Exhaustive pairwise verification
        #[arg(long, conflicts_with = "sampled")]
        exact: bool,
        /// Random-pair verification (needs --seed)
        #[arg(long)]
        sampled: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<u64>,
    },
    /// Certify alpha(Omega_{2^k}) <= a_{2^k}, optionally checking a witness set
    Certify {
        #[arg(long)]
        k: u32,
        /// Witness set file
        #[arg(long)]
        set: Option<PathBuf>,
    },
    /// Exact independence number by branch and bound (n <= 8)
    Alpha {
        #[arg(long)]
        n: u32,
        /// Write the witness set
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact Bose-Mesner identities on Q_m (m <= 9)
    SpectralCheck {
        #[arg(long)]
        m: u32,
    },
    /// Summary table for n = 2^k, k = 2..=max_k
    Table {
        #[arg(long, default_value_t = 6)]
        max_k: u32,
        /// Extra dimensions to include
        #[arg(long, value_delimiter = ',')]
        n: Vec<u32>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Bound { .. } => "bound",
            Command::Construct { .. } => "construct",
            Command::Certify { .. } => "certify",
            Command::Alpha { .. } => "alpha",
            Command::SpectralCheck { .. } => "spectral-check",
            Command::Table { .. } => "table",
        }
    }

    fn run(&self) -> Result<RunReport, CliError> {
        match self {
            Command::Bound { n } => cmd_bound(*n),
            Command::Construct {
                n,
                out,
                exact,
                sampled,
                seed,
                trials,
            } => {
                let mode = match (exact, sampled) {
                    (true, _) => Some(VerifyMode::Exact),
                    (_, true) => Some(VerifyMode::Sampled),
                    _ => None,
                };
                cmd_construct(
                    *n,
                    &ConstructOptions {
                        out: out.as_deref(),
                        mode,
                        seed: *seed,
                        trials: *trials,
                    },
                )
            }
            Command::Certify { k, set } => cmd_certify(*k, set.as_deref()),
            Command::Alpha { n, out } => cmd_alpha(*n, out.as_deref()),
            Command::SpectralCheck { m } => cmd_spectral_check(*m),
            Command::Table { max_k, n } => cmd_table(*max_k, n),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match cli.command.run() {
        Ok(mut report) => {
            if !cli.no_timing {
                report.elapsed_ms = Some(start.elapsed().as_millis());
            }
            print!("{}", report.render(cli.format));
            if report.valid {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            let obj = e.to_json(cli.command.name());
            println!("{}", serde_json::to_string_pretty(&obj).expect("json"));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
