//! Reference encryption and decryption.
//!
//! The text register `(x0, x1, x2, x3)` runs 32 rounds in four passes of
//! eight: A, B, A, B. An A-round replaces `x0` by `G(x0)` and then XORs it
//! into `x1`; a B-round XORs `x0` into `x3` and then applies `G`. Every
//! round ends by rotating the register one word toward `x0`. Round `k`
//! feeds `(K[2k], K[2k+1])`, `(L[2k], L[2k+1])` and `C[k]` to the G-box.
//!
//! Decryption reuses `CRYPT` on reordered data: the ciphertext and tweak
//! are word-reversed with every word half-swapped, the unit schedule is
//! reversed, and the key schedule of the reversed key is replaced by its
//! right inverses under the reversed units.

use crate::algebra::{boxdot_e, inv_e, swap_halves};
use crate::schedules::{
    key_expand, tweak_expand, unit_expand, Key, KeySchedule, KeyStream, Tweak, TweakSchedule, TweakStream, UnitKey,
    UnitSchedule, UnitStream, KEY_SCHEDULE_LEN,
};
use crate::{CipherWord, Error, Word};

/// Number of rounds.
pub const ROUNDS: usize = 32;

/// A 4-word text block `X3 X2 X1 X0`, stored `x0` first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Block<W>(pub [W; 4]);

impl<W: Word> Block<W> {
    pub fn words(&self) -> &[W; 4] {
        &self.0
    }

    /// `X^RS`: reversed word order, halves of every word swapped.
    #[inline]
    pub fn reversed_swapped(&self) -> Self {
        let [a, b, c, d] = self.0;
        Block([swap_halves(d), swap_halves(c), swap_halves(b), swap_halves(a)])
    }
}

impl<W: CipherWord> Block<W> {
    /// Octets in a block.
    pub const BYTES: usize = 4 * W::BYTES;

    /// Reads a block from little-endian octets, first octet least significant.
    pub fn from_le_bytes(bytes: &[u8]) -> Self {
        Block(core::array::from_fn(|i| W::read_le(&bytes[i * W::BYTES..])))
    }

    /// Writes the block as little-endian octets into `out[..Self::BYTES]`.
    pub fn write_le_bytes(&self, out: &mut [u8]) {
        for (i, w) in self.0.iter().enumerate() {
            w.write_le(&mut out[i * W::BYTES..]);
        }
    }
}

impl<W> From<[W; 4]> for Block<W> {
    fn from(words: [W; 4]) -> Self {
        Block(words)
    }
}

/// Register state at the start of a round, with that round's G output.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RoundState<W> {
    pub round: usize,
    pub text: Block<W>,
    pub g: W,
}

/// Whether round `k` is an A-round (`false` means B-round).
#[inline(always)]
pub const fn is_a_round(k: usize) -> bool {
    k & 8 == 0
}

/// The G-box: `(((x ⊡_{L0} K0)^S ⊕ C0) ⊡_{L1} K1)^S`.
///
/// A permutation of `x` for fixed parameters, and of `K0` for fixed `x`.
#[inline(always)]
pub fn gbox<W: Word>(x: W, k0: W, k1: W, l0: W, l1: W, c0: W) -> W {
    let x = swap_halves(boxdot_e(x, k0, l0)) ^ c0;
    swap_halves(boxdot_e(x, k1, l1))
}

/// Text encryption with explicit schedules.
pub fn crypt<W: CipherWord>(
    x: &Block<W>,
    keys: &KeySchedule<W>,
    units: &UnitSchedule<W>,
    tweaks: &TweakSchedule<W>,
) -> Block<W> {
    crypt_traced(x, keys, units, tweaks, |_| {})
}

/// [`crypt`], reporting the register state of every round to `observe`.
#[inline]
pub fn crypt_traced<W: CipherWord>(
    x: &Block<W>,
    keys: &KeySchedule<W>,
    units: &UnitSchedule<W>,
    tweaks: &TweakSchedule<W>,
    mut observe: impl FnMut(RoundState<W>),
) -> Block<W> {
    let [mut x0, mut x1, mut x2, mut x3] = x.0;
    for k in 0..ROUNDS {
        let start = Block([x0, x1, x2, x3]);
        let g = gbox(x0, keys[2 * k], keys[2 * k + 1], units[2 * k], units[2 * k + 1], tweaks[k]);
        if is_a_round(k) {
            x1 ^= g;
        } else {
            x3 ^= x0;
        }
        x0 = g;
        observe(RoundState { round: k, text: start, g });
        (x0, x1, x2, x3) = (x1, x2, x3, x0);
    }
    Block([x0, x1, x2, x3])
}

/// `ENCRYPT(X, Z, T, U) = CRYPT(X, KE(Z), UE(U), TE(T))`.
pub fn encrypt<W: CipherWord>(x: &Block<W>, key: &Key<W>, tweak: &Tweak<W>, unit: UnitKey<W>) -> Block<W> {
    crypt(x, &key_expand(key), &unit_expand(unit), &tweak_expand(tweak))
}

/// Encryption driven directly by the schedule registers, without
/// materialising any schedule.
pub fn encrypt_streaming<W: CipherWord>(x: &Block<W>, key: &Key<W>, tweak: &Tweak<W>, unit: UnitKey<W>) -> Block<W> {
    let mut ks = KeyStream::new(key);
    let mut us = UnitStream::new(unit);
    let mut ts = TweakStream::new(tweak);
    let mut next = move || -> (W, W, W, W, W) {
        let (Some(k0), Some(k1), Some(l0), Some(l1), Some(c)) = (ks.next(), ks.next(), us.next(), us.next(), ts.next())
        else {
            unreachable!("schedule streams are infinite")
        };
        (k0, k1, l0, l1, c)
    };
    let [mut x0, mut x1, mut x2, mut x3] = x.0;
    for k in 0..ROUNDS {
        let (k0, k1, l0, l1, c) = next();
        if is_a_round(k) {
            x0 = gbox(x0, k0, k1, l0, l1, c);
            x1 ^= x0;
        } else {
            x3 ^= x0;
            x0 = gbox(x0, k0, k1, l0, l1, c);
        }
        (x0, x1, x2, x3) = (x1, x2, x3, x0);
    }
    Block([x0, x1, x2, x3])
}

/// `DECRYPT(Y, Z, T, U) = CRYPT(Y^RS, UE(U)^R / KE(Z^R), UE(U)^R, TE(T^RS))^RS`.
pub fn decrypt<W: CipherWord>(y: &Block<W>, key: &Key<W>, tweak: &Tweak<W>, unit: UnitKey<W>) -> Block<W> {
    let units = unit_expand(unit).reversed();
    let keys = schedule_inverse(&key_expand(&key.reversed()), &units);
    let tweaks = tweak_expand(&tweak.reversed_swapped());
    crypt(&y.reversed_swapped(), &keys, &units, &tweaks).reversed_swapped()
}

/// `R`: reverses the word order of a non-empty word string in place.
pub fn reverse_words<W>(s: &mut [W]) -> Result<(), Error> {
    if s.is_empty() {
        return Err(Error::EmptyWordString);
    }
    s.reverse();
    Ok(())
}

/// `S` on strings: swaps the halves of every word in place.
pub fn swap_all_halves<W: Word>(s: &mut [W]) -> Result<(), Error> {
    if s.is_empty() {
        return Err(Error::EmptyWordString);
    }
    s.iter_mut().for_each(|w| *w = swap_halves(*w));
    Ok(())
}

/// Word-wise `E/X`: `out[k] = inv_e(keys[k], units[k])`.
pub fn invert_words<W: Word>(keys: &[W], units: &[W], out: &mut [W]) -> Result<(), Error> {
    if units.len() != keys.len() {
        return Err(Error::LengthMismatch { expected: keys.len(), actual: units.len() });
    }
    if out.len() != keys.len() {
        return Err(Error::LengthMismatch { expected: keys.len(), actual: out.len() });
    }
    for ((o, &k), &l) in out.iter_mut().zip(keys).zip(units) {
        *o = inv_e(k, l);
    }
    Ok(())
}

/// Word-wise right inverses of a key schedule under a unit schedule.
pub fn schedule_inverse<W: Word>(keys: &KeySchedule<W>, units: &UnitSchedule<W>) -> KeySchedule<W> {
    let mut out = [W::ZERO; KEY_SCHEDULE_LEN];
    for k in 0..KEY_SCHEDULE_LEN {
        out[k] = inv_e(keys[k], units[k]);
    }
    KeySchedule(out)
}
