//! The `nsabc` command: file encryption in a small container format,
//! known-answer traces, benchmarks and structural analyses.
//!
//! Each `cmd_*` function implements one subcommand and writes its report
//! to the given sink; `main` only parses arguments and maps errors to exit
//! codes.

use std::fs;
use std::io::Write;
use std::path::Path;

use nsabc::Width;

pub mod analysis;
pub mod bench;
pub mod container;
pub mod error;
pub mod hex;
pub mod kat;
pub mod keys;

pub use error::{CliError, Result};
pub use keys::{KeyArgs, KeyMaterial};

/// Runs `$body` with `$W` bound to the word type of `$width`.
macro_rules! with_width {
    ($width:expr, $W:ident => $body:expr) => {
        match $width.bits() {
            16 => {
                type $W = u16;
                $body
            }
            32 => {
                type $W = u32;
                $body
            }
            64 => {
                type $W = u64;
                $body
            }
            w => Err(CliError::usage(format!("unsupported width {w}"))),
        }
    };
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| CliError::io(path, e))
}

fn write(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

fn emit(out: &mut impl Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e))
}

pub fn cmd_encrypt(input: &Path, output: &Path, width: Width, keys: &KeyArgs, tweaking: bool) -> Result<()> {
    with_width!(width, W => {
        let material = keys.parse::<W>()?;
        let plain = read(input)?;
        write(output, &container::seal(&plain, &material, tweaking))
    })
}

/// Width and tweaking mode come from the container header; `width`, if
/// given, must agree with it.
pub fn cmd_decrypt(input: &Path, output: &Path, width: Option<Width>, keys: &KeyArgs) -> Result<()> {
    let sealed = read(input)?;
    let header = container::Header::decode(&sealed)?;
    if let Some(w) = width {
        if w != header.width {
            return Err(CliError::usage(format!("--width {w} but the container was written at w={}", header.width)));
        }
    }
    with_width!(header.width, W => {
        let material = keys.parse::<W>()?;
        let plain = container::open(&sealed, &material)?;
        write(output, &plain)
    })
}

/// Prints the trace for the built-in fixture, then checks it.
pub fn cmd_kat(width: Width, out: &mut impl Write) -> Result<()> {
    let fixture = kat::fixture(width.bits()).ok_or_else(|| CliError::usage(format!("no fixture for w={width}")))?;
    with_width!(width, W => {
        let (rows, y) = kat::fixture_trace::<W>(fixture);
        emit(out, &kat::render(&rows))?;
        kat::verify(fixture, &rows, &y)
    })
}

pub fn cmd_bench(widths: &[Width], seconds: f64, seed: u64, out: &mut impl Write) -> Result<()> {
    let bits: Vec<u32> = widths.iter().map(|w| w.bits()).collect();
    let results = bench::run(&bits, seconds, seed)?;
    emit(out, &bench::render(&results))
}

pub fn cmd_analyze(
    analysis: analysis::Analysis,
    width: Width,
    samples: Option<usize>,
    seed: u64,
    out: &mut impl Write,
) -> Result<()> {
    let samples = samples.unwrap_or(analysis.default_samples());
    let report = analysis::run(analysis, width, samples, seed)?;
    emit(out, &format!("{report}\n"))?;
    if report.passed {
        Ok(())
    } else {
        Err(CliError::Verification(format!("{} did not hold", analysis.name())))
    }
}
