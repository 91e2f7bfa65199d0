//! File container: a 24-octet header followed by the ciphertext blocks.
//!
//! ```text
//! offset  size  field
//!      0     6  magic "NSABC1"
//!      6     1  word width w (16, 32 or 64)
//!      7     1  flags, bit 0 set when per-block tweaks are used
//!      8     8  plaintext length in octets, little-endian
//!     16     8  reserved, zero
//! ```
//!
//! The plaintext is zero-padded to a whole number of `w/2`-octet blocks;
//! each block holds four little-endian words, `x0` first. Block `j` is
//! encrypted under `T^(j)`, or under the tweak key itself when tweaking is
//! off.
//!
//! There is no authentication: a modified container decrypts to garbage
//! without any error.

use nsabc::{Block, CipherWord, TweakedCipher, Width};
use rayon::prelude::*;

use crate::error::{CliError, Result};
use crate::keys::KeyMaterial;

pub const MAGIC: &[u8; 6] = b"NSABC1";
pub const HEADER_LEN: usize = 24;
pub const FLAG_TWEAKING: u8 = 1;

/// Blocks handed to one worker at a time.
const CHUNK_BLOCKS: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Header {
    pub width: Width,
    pub tweaking: bool,
    pub plaintext_len: u64,
}

impl Header {
    pub fn encode(&self) -> [u8; HEADER_LEN] {
        let mut out = [0u8; HEADER_LEN];
        out[..6].copy_from_slice(MAGIC);
        out[6] = self.width.bits() as u8;
        out[7] = if self.tweaking { FLAG_TWEAKING } else { 0 };
        out[8..16].copy_from_slice(&self.plaintext_len.to_le_bytes());
        out
    }

    pub fn decode(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN {
            return Err(CliError::format(format!("{} octets is shorter than the header", bytes.len())));
        }
        if &bytes[..6] != MAGIC {
            return Err(CliError::format("bad magic"));
        }
        let width =
            Width::cipher(bytes[6] as u32).map_err(|_| CliError::format(format!("unsupported width {}", bytes[6])))?;
        let flags = bytes[7];
        if flags & !FLAG_TWEAKING != 0 {
            return Err(CliError::format(format!("unknown flags {flags:#04x}")));
        }
        if bytes[16..HEADER_LEN].iter().any(|&b| b != 0) {
            return Err(CliError::format("reserved octets are not zero"));
        }
        let plaintext_len = u64::from_le_bytes(bytes[8..16].try_into().expect("8 octets"));
        Ok(Header { width, tweaking: flags & FLAG_TWEAKING != 0, plaintext_len })
    }

    /// Ciphertext octets that must follow the header.
    pub fn body_len(&self) -> Option<u64> {
        let bb = self.width.block_bytes() as u64;
        self.plaintext_len.div_ceil(bb).checked_mul(bb)
    }
}

fn cipher<W: CipherWord>(keys: &KeyMaterial<W>, tweaking: bool) -> TweakedCipher<W> {
    let c = TweakedCipher::new(&keys.key, &keys.tweak_key, keys.unit);
    if tweaking {
        c
    } else {
        c.without_tweaking()
    }
}

/// Runs `f(start_block, blocks)` over the octets in parallel chunks, in place.
fn process<W: CipherWord>(body: &mut [u8], f: impl Fn(u64, &mut [Block<W>]) + Sync) {
    let bb = 4 * W::BYTES;
    body.par_chunks_mut(CHUNK_BLOCKS * bb).enumerate().for_each(|(i, chunk)| {
        let mut blocks: Vec<Block<W>> = chunk.chunks_exact(bb).map(Block::from_le_bytes).collect();
        f((i * CHUNK_BLOCKS) as u64, &mut blocks);
        for (b, out) in blocks.iter().zip(chunk.chunks_exact_mut(bb)) {
            b.write_le_bytes(out);
        }
    });
}

/// Builds a complete container for `plaintext`.
pub fn seal<W: CipherWord>(plaintext: &[u8], keys: &KeyMaterial<W>, tweaking: bool) -> Vec<u8> {
    let width = Width::cipher(W::BITS).expect("cipher word");
    let header = Header { width, tweaking, plaintext_len: plaintext.len() as u64 };
    let body_len = header.body_len().expect("in-memory length") as usize;
    let mut out = Vec::with_capacity(HEADER_LEN + body_len);
    out.extend_from_slice(&header.encode());
    out.extend_from_slice(plaintext);
    out.resize(HEADER_LEN + body_len, 0);
    let c = cipher(keys, tweaking);
    process::<W>(&mut out[HEADER_LEN..], |start, blocks| c.encrypt_in_place(start, blocks));
    out
}

/// Validates `container` completely, then returns the plaintext.
pub fn open<W: CipherWord>(container: &[u8], keys: &KeyMaterial<W>) -> Result<Vec<u8>> {
    let header = Header::decode(container)?;
    if header.width.bits() != W::BITS {
        return Err(CliError::format(format!("container width {} does not match {}", header.width, W::BITS)));
    }
    let body = &container[HEADER_LEN..];
    match header.body_len() {
        Some(n) if n == body.len() as u64 => {}
        Some(n) if n > body.len() as u64 => {
            return Err(CliError::format(format!("truncated: expected {n} ciphertext octets, found {}", body.len())))
        }
        Some(n) => return Err(CliError::format(format!("{} octets of trailing data", body.len() as u64 - n))),
        None => return Err(CliError::format("plaintext length overflows")),
    }
    let mut plain = body.to_vec();
    let c = cipher(keys, header.tweaking);
    process::<W>(&mut plain, |start, blocks| c.decrypt_in_place(start, blocks));
    plain.truncate(header.plaintext_len as usize);
    Ok(plain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nsabc::{Key, UnitKey, WideNumber};

    fn kat_keys() -> KeyMaterial<u16> {
        KeyMaterial {
            key: Key([0x0000, 0x0005, 0x0066, 0x0777, 0x8888]),
            tweak_key: WideNumber([0x4444, 0x0333, 0x0022, 0x0001]),
            unit: UnitKey(0x1998),
        }
    }

    #[test]
    fn header_layout() {
        let h = Header { width: Width::W32, tweaking: true, plaintext_len: 0x0102 };
        let bytes = h.encode();
        assert_eq!(&bytes[..8], b"NSABC1\x20\x01");
        assert_eq!(&bytes[8..16], &[0x02, 0x01, 0, 0, 0, 0, 0, 0]);
        assert_eq!(&bytes[16..], &[0; 8]);
        assert_eq!(Header::decode(&bytes).unwrap(), h);
    }

    #[test]
    fn single_known_block() {
        let plain = [0xEF, 0xCD, 0xAB, 0x89, 0x67, 0x45, 0x23, 0x01];
        let sealed = seal(&plain, &kat_keys(), false);
        assert_eq!(&sealed[HEADER_LEN..], &[0x1E, 0x92, 0x51, 0x0F, 0x70, 0x4E, 0xB1, 0x88]);
        // block 0 uses T^(0) = T0 either way
        assert_eq!(seal(&plain, &kat_keys(), true)[HEADER_LEN..], sealed[HEADER_LEN..]);
        assert_eq!(open(&sealed, &kat_keys()).unwrap(), plain);
    }

    #[test]
    fn empty_plaintext() {
        let sealed = seal(&[], &kat_keys(), true);
        assert_eq!(sealed.len(), HEADER_LEN);
        assert_eq!(open(&sealed, &kat_keys()).unwrap(), Vec::<u8>::new());
    }

    #[test]
    fn rejects_malformed() {
        let good = seal(&[1, 2, 3], &kat_keys(), true);
        let mut cases = Vec::new();
        let mut bad = good.clone();
        bad[0] = b'X';
        cases.push(bad);
        let mut bad = good.clone();
        bad[6] = 24;
        cases.push(bad);
        let mut bad = good.clone();
        bad[7] = 0x80;
        cases.push(bad);
        let mut bad = good.clone();
        bad[20] = 1;
        cases.push(bad);
        cases.push(good[..good.len() - 1].to_vec());
        cases.push([good.as_slice(), &[0]].concat());
        cases.push(good[..10].to_vec());
        let mut bad = good.clone();
        bad[8..16].copy_from_slice(&u64::MAX.to_le_bytes());
        cases.push(bad);
        for c in cases {
            assert!(matches!(open(&c, &kat_keys()), Err(CliError::Format(_))));
        }
    }

    #[test]
    fn parallel_chunks_keep_block_indices() {
        let keys = kat_keys();
        let plain: Vec<u8> = (0..CHUNK_BLOCKS * 8 * 3 + 5).map(|i| (i * 7) as u8).collect();
        let sealed = seal(&plain, &keys, true);
        let mut serial: Vec<Block<u16>> = plain
            .chunks(8)
            .map(|c| {
                let mut b = [0u8; 8];
                b[..c.len()].copy_from_slice(c);
                Block::from_le_bytes(&b)
            })
            .collect();
        cipher(&keys, true).encrypt_in_place(0, &mut serial);
        let expected: Vec<u8> = serial
            .iter()
            .flat_map(|b| {
                let mut o = [0u8; 8];
                b.write_le_bytes(&mut o);
                o
            })
            .collect();
        assert_eq!(&sealed[HEADER_LEN..], expected.as_slice());
        assert_eq!(open(&sealed, &keys).unwrap(), plain);
    }
}
