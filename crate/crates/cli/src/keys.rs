use nsabc::{CipherWord, Key, UnitKey, WideNumber};

use crate::error::Result;
use crate::hex::parse_words;

/// Key arguments as given on the command line, before the width is known.
#[derive(Clone, Debug)]
pub struct KeyArgs {
    pub key: String,
    pub tweak_key: String,
    pub unit_key: String,
}

/// Parsed key material for one width.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KeyMaterial<W> {
    pub key: Key<W>,
    pub tweak_key: WideNumber<W>,
    pub unit: UnitKey<W>,
}

impl KeyArgs {
    pub fn parse<W: CipherWord>(&self) -> Result<KeyMaterial<W>> {
        Ok(KeyMaterial {
            key: Key(parse_words::<W, 5>(&self.key, "--key")?),
            tweak_key: WideNumber(parse_words::<W, 4>(&self.tweak_key, "--tweak-key")?),
            unit: UnitKey(parse_words::<W, 1>(&self.unit_key, "--unit-key")?[0]),
        })
    }
}
