//! Throughput of the three encryption paths on a repeated-key workload.
//!
//! All paths encrypt the same buffer with sequential per-block tweaks
//! under one key. Key-dependent schedules are computed once outside the
//! timed loop for every path, so the comparison isolates the per-block cost:
//!
//! - `reference`: round-by-round `crypt` on the key and unit schedules,
//!   expanding each block's tweak;
//! - `fast`: one block at a time on the affine schedule;
//! - `dual`: two blocks interleaved step by step on the affine schedule.

use std::fmt;
use std::hint::black_box;
use std::time::{Duration, Instant};

use nsabc::cipher::crypt;
use nsabc::fastpath::{affine_expand, crypt_fast};
use nsabc::schedules::{key_expand, tweak_expand, unit_expand};
use nsabc::tweakstream::Tweaks;
use nsabc::{Block, CipherWord, Key, TweakedCipher, UnitKey, WideNumber};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, Result};

const BUFFER_BLOCKS: usize = 1024;

/// Figures published for one x86-64 machine; context only.
pub const PUBLISHED_CPB: [(u32, Path, f64); 3] =
    [(32, Path::Fast, 16.0), (64, Path::Fast, 12.0), (64, Path::Dual, 9.0)];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Path {
    Reference,
    Fast,
    Dual,
}

impl Path {
    pub const ALL: [Path; 3] = [Path::Reference, Path::Fast, Path::Dual];
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Path::Reference => "reference",
            Path::Fast => "fast",
            Path::Dual => "dual",
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Measurement {
    pub width: u32,
    pub path: Path,
    pub bytes: u64,
    pub elapsed: Duration,
    /// Time-stamp counter ticks, where the platform has one.
    pub cycles: Option<u64>,
}

impl Measurement {
    pub fn bytes_per_second(&self) -> f64 {
        self.bytes as f64 / self.elapsed.as_secs_f64()
    }

    pub fn cycles_per_byte(&self) -> Option<f64> {
        self.cycles.map(|c| c as f64 / self.bytes as f64)
    }
}

#[cfg(target_arch = "x86_64")]
fn cycle_counter() -> Option<u64> {
    // SAFETY: rdtsc has no preconditions on x86-64.
    Some(unsafe { core::arch::x86_64::_rdtsc() })
}

#[cfg(not(target_arch = "x86_64"))]
fn cycle_counter() -> Option<u64> {
    None
}

fn time_passes(budget: Duration, bytes_per_pass: u64, mut pass: impl FnMut()) -> (u64, Duration, Option<u64>) {
    pass();
    let start = Instant::now();
    let c0 = cycle_counter();
    let mut bytes = 0;
    loop {
        pass();
        bytes += bytes_per_pass;
        if start.elapsed() >= budget {
            break;
        }
    }
    let c1 = cycle_counter();
    (bytes, start.elapsed(), c0.zip(c1).map(|(a, b)| b.wrapping_sub(a)))
}

fn measure_width<W: CipherWord>(budget: Duration, seed: u64) -> Vec<Measurement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut word = || W::from_u64(rng.gen());
    let key = Key(core::array::from_fn(|_| word()));
    let tweak_key = WideNumber(core::array::from_fn(|_| word()));
    let unit = UnitKey(word());
    let mut buf: Vec<Block<W>> = (0..BUFFER_BLOCKS).map(|_| Block(core::array::from_fn(|_| word()))).collect();
    let bytes_per_pass = (BUFFER_BLOCKS * 4 * W::BYTES) as u64;

    let (keys, units) = (key_expand(&key), unit_expand(unit));
    let cipher = TweakedCipher::new(&key, &tweak_key, unit);
    let forward = affine_expand(&key, unit);

    Path::ALL
        .iter()
        .map(|&path| {
            let (bytes, elapsed, cycles) = match path {
                Path::Reference => time_passes(budget, bytes_per_pass, || {
                    for (b, t) in buf.iter_mut().zip(Tweaks::new(&tweak_key)) {
                        *b = crypt(b, &keys, &units, &tweak_expand(&t));
                    }
                    black_box(&mut buf);
                }),
                Path::Fast => time_passes(budget, bytes_per_pass, || {
                    for (b, t) in buf.iter_mut().zip(Tweaks::new(&tweak_key)) {
                        *b = crypt_fast(b, &t, &forward);
                    }
                    black_box(&mut buf);
                }),
                Path::Dual => time_passes(budget, bytes_per_pass, || {
                    cipher.encrypt_in_place(0, &mut buf);
                    black_box(&mut buf);
                }),
            };
            Measurement { width: W::BITS, path, bytes, elapsed, cycles }
        })
        .collect()
}

/// Measures every path at each of `widths` for `seconds` each.
pub fn run(widths: &[u32], seconds: f64, seed: u64) -> Result<Vec<Measurement>> {
    if !(seconds.is_finite() && seconds > 0.0) {
        return Err(CliError::usage("--seconds must be positive"));
    }
    let budget = Duration::from_secs_f64(seconds);
    let mut out = Vec::new();
    for &w in widths {
        out.extend(match w {
            16 => measure_width::<u16>(budget, seed),
            32 => measure_width::<u32>(budget, seed),
            64 => measure_width::<u64>(budget, seed),
            _ => return Err(CliError::usage(format!("unsupported width {w}"))),
        });
    }
    Ok(out)
}

pub fn render(results: &[Measurement]) -> String {
    let mut out = String::from(" w  path          MB/s   TSC cycles/byte\n");
    for m in results {
        let cpb = m.cycles_per_byte().map_or_else(|| "n/a".to_string(), |c| format!("{c:.1}"));
        out.push_str(&format!("{:>2}  {:<9} {:>9.1}   {:>8}\n", m.width, m.path, m.bytes_per_second() / 1e6, cpb));
    }
    out.push_str("\npublished figures on other hardware, not a target:\n");
    for (w, path, cpb) in PUBLISHED_CPB {
        out.push_str(&format!("{w:>2}  {path:<9} {cpb:>4.0} cycles/byte\n"));
    }
    out
}
