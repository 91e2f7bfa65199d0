use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nsabc::Width;
use nsabc_cli::analysis::Analysis;
use nsabc_cli::{cmd_analyze, cmd_bench, cmd_decrypt, cmd_encrypt, cmd_kat, KeyArgs};

/// NSABC/w tweakable block cipher.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct KeyOpts {
    /// Key Z, 5w bits as hex, most significant word first
    #[arg(long, env = "NSABC_KEY", hide_env_values = true)]
    key: String,
    /// Tweak key T0, 4w bits as hex
    #[arg(long, env = "NSABC_TWEAK_KEY", hide_env_values = true)]
    tweak_key: String,
    /// Unit key U, w bits as hex
    #[arg(long, env = "NSABC_UNIT_KEY", hide_env_values = true)]
    unit_key: String,
}

impl From<KeyOpts> for KeyArgs {
    fn from(k: KeyOpts) -> Self {
        KeyArgs { key: k.key, tweak_key: k.tweak_key, unit_key: k.unit_key }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Encrypt a file into a container
    Encrypt {
        #[arg(long, value_parser = parse_width, default_value = "64")]
        width: Width,
        #[command(flatten)]
        keys: KeyOpts,
        /// Use the tweak key for every block instead of per-block tweaks
        #[arg(long)]
        no_tweak: bool,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "out")]
        output: PathBuf,
    },
    /// Decrypt a container; width and tweak mode are read from its header
    Decrypt {
        #[arg(long, value_parser = parse_width)]
        width: Option<Width>,
        #[command(flatten)]
        keys: KeyOpts,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "out")]
        output: PathBuf,
    },
    /// Print the register trace of the known-answer encipherment and check it
    Kat {
        #[arg(long, value_parser = parse_width, default_value = "16")]
        width: Width,
    },
    /// Measure reference, fast and dual-block throughput
    Bench {
        /// Width to measure; both 32 and 64 when omitted
        #[arg(long, value_parser = parse_width)]
        width: Option<Width>,
        /// Seconds per path and width
        #[arg(long, default_value_t = 1.0)]
        seconds: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check structural properties
    Analyze {
        #[arg(value_enum)]
        analysis: AnalysisArg,
        #[arg(long, value_parser = parse_width, default_value = "16")]
        width: Width,
        /// Parameter sets for the G-box checks, cipher samples for avalanche
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AnalysisArg {
    GboxBijectivity,
    GboxDiffusion,
    GboxIdentity,
    Avalanche,
}

impl From<AnalysisArg> for Analysis {
    fn from(a: AnalysisArg) -> Self {
        match a {
            AnalysisArg::GboxBijectivity => Analysis::GboxBijectivity,
            AnalysisArg::GboxDiffusion => Analysis::GboxDiffusion,
            AnalysisArg::GboxIdentity => Analysis::GboxIdentity,
            AnalysisArg::Avalanche => Analysis::Avalanche,
        }
    }
}

fn parse_width(s: &str) -> Result<Width, String> {
    let bits: u32 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    Width::cipher(bits).map_err(|_| "width must be 16, 32 or 64".to_string())
}

fn main() -> ExitCode {
    let mut stdout = io::stdout().lock();
    let result = match Cli::parse().command {
        Command::Encrypt { width, keys, no_tweak, input, output } => {
            cmd_encrypt(&input, &output, width, &keys.into(), !no_tweak)
        }
        Command::Decrypt { width, keys, input, output } => cmd_decrypt(&input, &output, width, &keys.into()),
        Command::Kat { width } => cmd_kat(width, &mut stdout),
        Command::Bench { width, seconds, seed } => {
            let widths = width.map_or_else(|| vec![Width::W32, Width::W64], |w| vec![w]);
            cmd_bench(&widths, seconds, seed, &mut stdout)
        }
        Command::Analyze { analysis, width, samples, seed } => {
            cmd_analyze(analysis.into(), width, samples, seed, &mut stdout)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nsabc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
