//! Structural checks of the G-box at w=16 and an avalanche estimate for
//! the full cipher.
//!
//! The G-box checks are exhaustive in the varied argument and repeated
//! over `samples` random parameter sets. All randomness comes from the
//! seed, so reports are reproducible.

use std::fmt;

use nsabc::cipher::gbox;
use nsabc::{Block, CipherWord, FastCipher, Key, Tweak, UnitKey, Width};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{CliError, Result};

/// Flip probabilities outside this range are flagged.
pub const AVALANCHE_BAND: (f64, f64) = (0.45, 0.55);
/// Fewer samples than this make per-bit estimates too noisy to flag.
pub const AVALANCHE_MIN_SAMPLES: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Analysis {
    GboxBijectivity,
    GboxDiffusion,
    GboxIdentity,
    Avalanche,
}

impl Analysis {
    pub fn name(self) -> &'static str {
        match self {
            Analysis::GboxBijectivity => "gbox-bijectivity",
            Analysis::GboxDiffusion => "gbox-diffusion",
            Analysis::GboxIdentity => "gbox-identity",
            Analysis::Avalanche => "avalanche",
        }
    }

    pub fn default_samples(self) -> usize {
        match self {
            Analysis::Avalanche => AVALANCHE_MIN_SAMPLES,
            _ => 16,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub analysis: Analysis,
    pub lines: Vec<String>,
    pub passed: bool,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.analysis.name())?;
        for l in &self.lines {
            writeln!(f, "  {l}")?;
        }
        write!(f, "{}", if self.passed { "PASS" } else { "FAIL" })
    }
}

/// G-box arguments other than the input word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GboxParams {
    pub k0: u16,
    pub k1: u16,
    pub l0: u16,
    pub l1: u16,
    pub c0: u16,
}

impl GboxParams {
    pub fn random(rng: &mut impl Rng) -> Self {
        GboxParams { k0: rng.gen(), k1: rng.gen(), l0: rng.gen(), l1: rng.gen(), c0: rng.gen() }
    }

    pub fn apply(&self, x: u16) -> u16 {
        gbox(x, self.k0, self.k1, self.l0, self.l1, self.c0)
    }
}

fn sample_params(samples: usize, seed: u64) -> Vec<GboxParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(|_| GboxParams::random(&mut rng)).collect()
}

pub fn is_permutation(f: impl Fn(u16) -> u16) -> bool {
    let mut seen = vec![0u64; 1 << 10];
    for v in 0..=u16::MAX {
        let y = f(v) as usize;
        if seen[y >> 6] >> (y & 63) & 1 == 1 {
            return false;
        }
        seen[y >> 6] |= 1 << (y & 63);
    }
    true
}

/// Output bits that must not change when input bit `v` flips: `w/2 .. v−1`.
pub fn unaffected_bits(v: u32) -> u16 {
    (((1u32 << v) - 1) & !((1u32 << 8) - 1)) as u16
}

/// First `(v, x)` for which flipping bit `v` of `x` changes a bit in
/// [`unaffected_bits`]`(v)`, for `8 < v < 16`.
pub fn diffusion_violation(g: impl Fn(u16) -> u16) -> Option<(u32, u16)> {
    (9..16).find_map(|v| {
        let mask = unaffected_bits(v);
        (0..=u16::MAX).find(|&x| (g(x) ^ g(x ^ (1 << v))) & mask != 0).map(|x| (v, x))
    })
}

/// Bits changed at least once when input bit `v` flips, over all `x`.
pub fn reached_bits(g: impl Fn(u16) -> u16, v: u32) -> u16 {
    (0..=u16::MAX).fold(0, |acc, x| acc | (g(x) ^ g(x ^ (1 << v))))
}

pub fn gbox_bijectivity(samples: usize, seed: u64) -> Report {
    let params = sample_params(samples, seed);
    let x_fixed: Vec<u16> = {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        (0..samples).map(|_| rng.gen()).collect()
    };
    let results: Vec<(bool, bool, bool)> = params
        .par_iter()
        .zip(&x_fixed)
        .map(|(p, &x)| {
            let by_x = is_permutation(|v| p.apply(v));
            let by_k0 = is_permutation(|k| GboxParams { k0: k, ..*p }.apply(x));
            // varying the word (Hi(K0), Lo(K1)) with Lo(K0), Hi(K1) held
            let mixed = is_permutation(|v| {
                let k0 = (v & 0xFF00) | (p.k0 & 0x00FF);
                let k1 = (p.k1 & 0xFF00) | (v & 0x00FF);
                GboxParams { k0, k1, ..*p }.apply(x)
            });
            (by_x, by_k0, mixed)
        })
        .collect();
    let count = |f: fn(&(bool, bool, bool)) -> bool| results.iter().filter(|r| f(r)).count();
    let (by_x, by_k0, mixed) = (count(|r| r.0), count(|r| r.1), count(|r| r.2));
    Report {
        analysis: Analysis::GboxBijectivity,
        lines: vec![
            format!("x -> G permutation for {by_x}/{samples} parameter sets"),
            format!("K0 -> G permutation for {by_k0}/{samples} parameter sets"),
            format!("(Hi K0, Lo K1) -> G permutation for {mixed}/{samples} parameter sets (informational)"),
        ],
        passed: samples > 0 && by_x == samples && by_k0 == samples,
    }
}

pub fn gbox_diffusion(samples: usize, seed: u64) -> Report {
    let params = sample_params(samples, seed);
    let violations: Vec<Option<(u32, u16)>> = params.par_iter().map(|p| diffusion_violation(|x| p.apply(x))).collect();
    let mut lines = Vec::new();
    for (p, viol) in params.iter().zip(&violations) {
        if let Some((v, x)) = viol {
            lines.push(format!("{p:?}: flipping bit {v} of {x:#06x} changes protected bits"));
        }
    }
    if let Some(p) = params.first() {
        for v in 9..16 {
            lines.push(format!(
                "bit {v:>2}: must not reach {:#06x}, reaches {:#06x}",
                unaffected_bits(v),
                reached_bits(|x| p.apply(x), v)
            ));
        }
    }
    let bad = violations.iter().filter(|v| v.is_some()).count();
    lines.push(format!("unaffected range holds for {}/{samples} parameter sets", samples - bad));
    Report { analysis: Analysis::GboxDiffusion, lines, passed: samples > 0 && bad == 0 }
}

pub fn gbox_identity(samples: usize, seed: u64) -> Report {
    let params: Vec<GboxParams> =
        sample_params(samples, seed).into_iter().map(|p| GboxParams { l0: p.k0, l1: p.k1, c0: 0, ..p }).collect();
    let good = params.par_iter().filter(|p| (0..=u16::MAX).all(|x| p.apply(x) == x)).count();
    Report {
        analysis: Analysis::GboxIdentity,
        lines: vec![format!("G is the identity for {good}/{samples} sets with K = L, C = 0")],
        passed: samples > 0 && good == samples,
    }
}

fn avalanche_counts<W: CipherWord>(samples: usize, seed: u64) -> Vec<u64> {
    let n = 4 * W::BITS as usize;
    (0..samples)
        .into_par_iter()
        .fold(
            || vec![0u64; n * n],
            |mut counts, i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i as u64);
                let mut word = || W::from_u64(rng.gen());
                let key = Key(core::array::from_fn(|_| word()));
                let tweak = Tweak(core::array::from_fn(|_| word()));
                let unit = UnitKey(word());
                let x = Block(core::array::from_fn(|_| word()));
                let c = FastCipher::new(&key, unit);
                let y = c.encrypt(&x, &tweak);
                for bit in 0..n {
                    let mut x2 = x;
                    let (w, b) = (bit / W::BITS as usize, bit as u32 % W::BITS);
                    x2.0[w] ^= W::from_u64(1 << b);
                    let y2 = c.encrypt(&x2, &tweak);
                    let row = &mut counts[bit * n..(bit + 1) * n];
                    for (ow, (a, b)) in y.0.iter().zip(&y2.0).enumerate() {
                        let mut d = (*a ^ *b).to_u64();
                        while d != 0 {
                            row[ow * W::BITS as usize + d.trailing_zeros() as usize] += 1;
                            d &= d - 1;
                        }
                    }
                }
                counts
            },
        )
        .reduce(|| vec![0u64; n * n], |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect())
}

/// Per input-bit/output-bit flip probabilities of the full cipher with
/// random keys, tweaks and plaintexts.
pub fn avalanche(width: Width, samples: usize, seed: u64) -> Result<Report> {
    if samples == 0 {
        return Err(CliError::usage("--samples must be positive"));
    }
    let counts = match width.bits() {
        16 => avalanche_counts::<u16>(samples, seed),
        32 => avalanche_counts::<u32>(samples, seed),
        64 => avalanche_counts::<u64>(samples, seed),
        w => return Err(CliError::usage(format!("unsupported width {w}"))),
    };
    let probs: Vec<f64> = counts.iter().map(|&c| c as f64 / samples as f64).collect();
    let mean = probs.iter().sum::<f64>() / probs.len() as f64;
    let min = probs.iter().copied().fold(f64::INFINITY, f64::min);
    let max = probs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (lo, hi) = AVALANCHE_BAND;
    let flagged = probs.iter().filter(|&&p| p < lo || p > hi).count();
    let mut lines = vec![
        format!("w={width}, {samples} samples, {} input x output bit pairs", probs.len()),
        format!("flip probability mean {mean:.4}, min {min:.4}, max {max:.4}"),
    ];
    let per_bit = samples >= AVALANCHE_MIN_SAMPLES;
    if per_bit {
        lines.push(format!("{flagged} pairs outside [{lo}, {hi}]"));
    } else {
        lines.push(format!("per-pair band not enforced below {AVALANCHE_MIN_SAMPLES} samples"));
    }
    let mean_ok = (mean - 0.5).abs() <= 0.05;
    Ok(Report { analysis: Analysis::Avalanche, lines, passed: mean_ok && (!per_bit || flagged == 0) })
}

/// Runs one analysis; G-box analyses need w=16.
pub fn run(analysis: Analysis, width: Width, samples: usize, seed: u64) -> Result<Report> {
    if analysis != Analysis::Avalanche && width != Width::W16 {
        return Err(CliError::usage(format!("{} is exhaustive and needs --width 16", analysis.name())));
    }
    if samples == 0 {
        return Err(CliError::usage("--samples must be positive"));
    }
    Ok(match analysis {
        Analysis::GboxBijectivity => gbox_bijectivity(samples, seed),
        Analysis::GboxDiffusion => gbox_diffusion(samples, seed),
        Analysis::GboxIdentity => gbox_identity(samples, seed),
        Analysis::Avalanche => avalanche(width, samples, seed)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn protected_ranges() {
        assert_eq!(unaffected_bits(9), 0x0100);
        assert_eq!(unaffected_bits(12), 0x0F00);
        assert_eq!(unaffected_bits(15), 0x7F00);
    }

    #[test]
    fn checkers_catch_broken_maps() {
        assert!(is_permutation(|x| x.rotate_left(3) ^ 0x1234));
        assert!(!is_permutation(|x| x & 0xFFFE));
        // rotating right moves input bit 9 onto protected bit 8
        assert_eq!(diffusion_violation(|x| x.rotate_right(1)).map(|v| v.0), Some(9));
        assert_eq!(diffusion_violation(|x| x.wrapping_mul(5)), None);
    }

    #[test]
    fn note_five_identity() {
        assert!(gbox_identity(8, 1).passed);
    }

    #[test]
    fn gbox_properties_hold() {
        assert!(gbox_bijectivity(8, 2).passed);
        let d = gbox_diffusion(8, 3);
        assert!(d.passed, "{d}");
    }

    #[test]
    fn gbox_analyses_need_w16() {
        assert!(matches!(run(Analysis::GboxIdentity, Width::W32, 8, 0), Err(CliError::Usage(_))));
        assert!(matches!(run(Analysis::GboxIdentity, Width::W16, 0, 0), Err(CliError::Usage(_))));
    }

    #[test]
    fn avalanche_is_deterministic() {
        let a = avalanche(Width::W16, 200, 9).unwrap().to_string();
        let b = avalanche(Width::W16, 200, 9).unwrap().to_string();
        assert_eq!(a, b);
    }
}
