//! Hex arguments in high-first string order: the most significant word
//! comes first, so `0123456789ABCDEF` at `w = 16` is `x3 = 0x0123`, ...,
//! `x0 = 0xCDEF`.

use nsabc::Word;

use crate::error::{CliError, Result};

/// Parses exactly `N` words of width `W` from `s`, high-first.
///
/// `s` must have exactly `N·w/4` hex digits; an optional `0x` prefix and
/// `_` separators are accepted.
pub fn parse_words<W: Word, const N: usize>(s: &str, what: &str) -> Result<[W; N]> {
    let digits: String = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s).replace('_', "");
    let per_word = (W::BITS / 4) as usize;
    if digits.len() != N * per_word {
        return Err(CliError::usage(format!(
            "{what} must be {} hex digits ({} bits) at w={}, got {}",
            N * per_word,
            N as u32 * W::BITS,
            W::BITS,
            digits.len()
        )));
    }
    if !digits.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err(CliError::usage(format!("{what} is not hexadecimal")));
    }
    Ok(core::array::from_fn(|i| {
        let start = (N - 1 - i) * per_word;
        W::from_u64(u64::from_str_radix(&digits[start..start + per_word], 16).expect("validated digits"))
    }))
}

/// Formats words high-first, each zero-padded to `w/4` digits.
pub fn format_words<W: Word>(words: &[W]) -> String {
    let per_word = (W::BITS / 4) as usize;
    words.iter().rev().map(|w| format!("{:0per_word$X}", w.to_u64())).collect()
}
