//! Register trace of one encipherment in the layout of the published
//! processor-state table.
//!
//! Row `k` (0..=64) shows the unit `u^(k)` and the key register after `k`
//! rotations. Even rows also show round `j = k/2`, the tweak register and
//! the text register at the start of that round; row 64 holds the result.

use std::fmt::Write as _;

use nsabc::cipher::crypt_traced;
use nsabc::schedules::{key_expand, tweak_expand, unit_expand, KeyStream, TweakStream, UnitStream};
use nsabc::{Block, CipherWord, Key, Tweak, UnitKey};

use crate::error::{CliError, Result};
use crate::hex::{format_words, parse_words};

/// The w=16 trace as published, one whitespace-separated row per line.
pub const TABLE_16: &str = include_str!("table1.txt");

/// Inputs and expected ciphertext for one width, hex high-first.
#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub width: u32,
    pub text: &'static str,
    pub key: &'static str,
    pub tweak: &'static str,
    pub unit: &'static str,
    pub cipher: &'static str,
}

pub const FIXTURES: [Fixture; 3] = [
    Fixture {
        width: 16,
        text: "0123456789ABCDEF",
        key: "88880777006600050000",
        tweak: "0001002203334444",
        unit: "1998",
        cipher: "88B14E700F51921E",
    },
    Fixture {
        width: 32,
        text: "0123456789ABCDEFFEDCBA9876543210",
        key: "8888888807777777006666660005555500004444",
        tweak: "00010001002200220333033344444444",
        unit: "19981998",
        cipher: "205EF75907C6E11902CAE1A010647808",
    },
    Fixture {
        width: 64,
        text: "0123456789ABCDEFFEDCBA987654321000112233445566778899AABBCCDDEEFF",
        key: "88888888888888880777777777777777006666666666666600055555555555550000444444444444",
        tweak: "0001000100010001002200220022002203330333033303334444444444444444",
        unit: "1998199819981998",
        cipher: "B211880667FACE117FA1CD4B6731513BE38BD7F532A7EC7B170462D948144A4B",
    },
];

pub fn fixture(width: u32) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.width == width)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KatRow {
    pub k: usize,
    pub unit: String,
    pub key: String,
    /// Round index, tweak register and text register; even rows only.
    pub round: Option<(usize, String, String)>,
}

impl KatRow {
    pub fn fields(&self) -> Vec<String> {
        let mut f = vec![self.k.to_string(), self.unit.clone(), self.key.clone()];
        if let Some((j, t, x)) = &self.round {
            f.extend([j.to_string(), t.clone(), x.clone()]);
        }
        f
    }
}

/// Traces the encipherment of `x` and returns rows 0..=64.
pub fn trace<W: CipherWord>(x: &Block<W>, key: &Key<W>, tweak: &Tweak<W>, unit: UnitKey<W>) -> (Vec<KatRow>, Block<W>) {
    let mut texts = Vec::with_capacity(33);
    let y = crypt_traced(x, &key_expand(key), &unit_expand(unit), &tweak_expand(tweak), |s| texts.push(s.text));
    texts.push(y);

    let (mut keys, mut units, mut tweaks) = (KeyStream::new(key), UnitStream::new(unit), TweakStream::new(tweak));
    let mut rows = Vec::with_capacity(65);
    for k in 0..=64 {
        let round = (k % 2 == 0).then(|| {
            let t = format_words(&tweaks.register());
            tweaks.next();
            (k / 2, t, format_words(texts[k / 2].words()))
        });
        rows.push(KatRow { k, unit: format_words(&[units.register()]), key: format_words(&keys.register()), round });
        keys.next();
        units.next();
    }
    (rows, y)
}

/// Rows for the built-in fixture at `W`.
pub fn fixture_trace<W: CipherWord>(f: &Fixture) -> (Vec<KatRow>, Block<W>) {
    let x = Block(parse_words::<W, 4>(f.text, "text").expect("fixture"));
    let key = Key(parse_words::<W, 5>(f.key, "key").expect("fixture"));
    let tweak = Tweak(parse_words::<W, 4>(f.tweak, "tweak").expect("fixture"));
    let unit = UnitKey(parse_words::<W, 1>(f.unit, "unit").expect("fixture")[0]);
    trace(&x, &key, &tweak, unit)
}

/// Aligned text, one row per line.
pub fn render(rows: &[KatRow]) -> String {
    let mut out = String::new();
    for r in rows {
        let mut line = format!("{:>2}  {}  {}", r.k, r.unit, r.key);
        if let Some((j, t, x)) = &r.round {
            write!(line, "  {j:>2}  {t}  {x}").unwrap();
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Splits text into rows of whitespace-separated fields, skipping blank lines.
pub fn normalize(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .map(|l| l.split_whitespace().map(str::to_owned).collect::<Vec<_>>())
        .filter(|f| !f.is_empty())
        .collect()
}

/// Checks a trace against its fixture: every field of the published table
/// at w=16, the final text otherwise.
pub fn verify<W: CipherWord>(f: &Fixture, rows: &[KatRow], y: &Block<W>) -> Result<()> {
    if format_words(y.words()) != f.cipher {
        return Err(CliError::Verification(format!(
            "w={} ciphertext {} differs from expected {}",
            f.width,
            format_words(y.words()),
            f.cipher
        )));
    }
    if f.width == 16 {
        let expected = normalize(TABLE_16);
        let actual: Vec<Vec<String>> = rows.iter().map(KatRow::fields).collect();
        if expected.len() != actual.len() {
            return Err(CliError::Verification(format!("{} rows, expected {}", actual.len(), expected.len())));
        }
        for (e, a) in expected.iter().zip(&actual) {
            if e != a {
                return Err(CliError::Verification(format!(
                    "row {}: got {}, expected {}",
                    e[0],
                    a.join(" "),
                    e.join(" ")
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_rows() {
        let (rows, y) = fixture_trace::<u16>(&FIXTURES[0]);
        assert_eq!(rows[0].fields().join(" "), "0 1998 88880777006600050000 0 0001002203334444 0123456789ABCDEF");
        assert_eq!(rows[17].key, "00050000888807770066");
        assert_eq!(rows[64].round.as_ref().unwrap().2, "88B14E700F51921E");
        verify(&FIXTURES[0], &rows, &y).unwrap();
    }

    #[test]
    fn table_shape() {
        let t = normalize(TABLE_16);
        assert_eq!(t.len(), 65);
        assert_eq!(t.iter().filter(|r| r.len() == 6).count(), 33);
    }

    #[test]
    fn rendering_is_field_equal() {
        let (rows, _) = fixture_trace::<u16>(&FIXTURES[0]);
        assert_eq!(normalize(&render(&rows)), normalize(TABLE_16));
    }

    #[test]
    fn wider_fixtures_verify() {
        let (rows, y) = fixture_trace::<u32>(&FIXTURES[1]);
        verify(&FIXTURES[1], &rows, &y).unwrap();
        let (rows, y) = fixture_trace::<u64>(&FIXTURES[2]);
        verify(&FIXTURES[2], &rows, &y).unwrap();
        assert_eq!(rows[64].round.as_ref().unwrap().1, FIXTURES[2].tweak);
    }

    #[test]
    fn corrupted_table_is_detected() {
        let (mut rows, y) = fixture_trace::<u16>(&FIXTURES[0]);
        rows[33].unit = "0000".into();
        assert!(matches!(verify(&FIXTURES[0], &rows, &y), Err(CliError::Verification(_))));
    }
}
