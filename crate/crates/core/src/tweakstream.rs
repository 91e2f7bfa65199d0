//! Per-block tweak derivation.
//!
//! Block `j` is encrypted under `T^(j) = T^(0) ⊙ j = 2·T^(0)·j + T^(0) + j`
//! computed modulo `2^(4w)`, where `T^(0)` is the tweak key. Sequentially,
//! `T^(j+1) = T^(j) + 2·T^(0) + 1`. Because `⊙` is a group operation,
//! distinct indices below `2^(4w)` give distinct tweaks. Indices past that
//! bound wrap around; this is not checked.
//!
//! Structured indices (for example database, table, row and field numbers
//! packed into one `4w`-bit value) are composed by the caller.

use alloc::vec::Vec;

use crate::cipher::Block;
use crate::fastpath::FastCipher;
use crate::schedules::{Key, Tweak, UnitKey};
use crate::{CipherWord, Word};

/// A `4w`-bit number held as four words, least significant first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct WideNumber<W>(pub [W; 4]);

/// A block index; any `4w`-bit value.
pub type BlockIndex<W> = WideNumber<W>;

impl<W: Word> WideNumber<W> {
    pub const ZERO: Self = WideNumber([W::ZERO; 4]);
    pub const ONE: Self = WideNumber([W::ONE, W::ZERO, W::ZERO, W::ZERO]);

    /// Embeds a `u64`, splitting it across limbs as needed.
    pub fn from_u64(v: u64) -> Self {
        let mut limbs = [W::ZERO; 4];
        let mut rest = v as u128;
        for limb in &mut limbs {
            *limb = W::from_u64(rest as u64);
            rest >>= W::BITS;
        }
        WideNumber(limbs)
    }

    /// Sum modulo `2^(4w)`.
    pub fn wrapping_add(&self, rhs: &Self) -> Self {
        let mut out = [W::ZERO; 4];
        let mut carry = 0u128;
        for (i, o) in out.iter_mut().enumerate() {
            let s = self.0[i].to_u64() as u128 + rhs.0[i].to_u64() as u128 + carry;
            *o = W::from_u64(s as u64);
            carry = s >> W::BITS;
        }
        WideNumber(out)
    }

    /// Product modulo `2^(4w)`: schoolbook on limbs, keeping the low four.
    pub fn wrapping_mul(&self, rhs: &Self) -> Self {
        let mask = W::MAX.to_u64() as u128;
        let mut out = [0u128; 4];
        for i in 0..4 {
            let a = self.0[i].to_u64() as u128;
            let mut carry = 0u128;
            for j in 0..4 - i {
                // a·b + out + carry < 2^128 because each term is below 2^w, w ≤ 64
                let t = a * rhs.0[j].to_u64() as u128 + out[i + j] + carry;
                out[i + j] = t & mask;
                carry = t >> W::BITS;
            }
        }
        WideNumber(out.map(|limb| W::from_u64(limb as u64)))
    }

    /// Doubling modulo `2^(4w)`.
    pub fn double(&self) -> Self {
        self.wrapping_add(self)
    }

    /// `self ⊙ rhs = 2·self·rhs + self + rhs` modulo `2^(4w)`.
    pub fn odot(&self, rhs: &Self) -> Self {
        self.wrapping_mul(rhs).double().wrapping_add(self).wrapping_add(rhs)
    }

    pub fn as_tweak(&self) -> Tweak<W> {
        Tweak(self.0)
    }
}

impl<W: Word> From<Tweak<W>> for WideNumber<W> {
    fn from(t: Tweak<W>) -> Self {
        WideNumber(t.0)
    }
}

/// `T^(j) = T^(0) ⊙ j`.
pub fn tweak_at<W: Word>(tweak_key: &WideNumber<W>, j: &BlockIndex<W>) -> Tweak<W> {
    tweak_key.odot(j).as_tweak()
}

/// `T^(j+1) = T^(j) ⊞ 2T^(0) ⊞ 1`.
pub fn tweak_next<W: Word>(current: &WideNumber<W>, tweak_key: &WideNumber<W>) -> WideNumber<W> {
    current.wrapping_add(&tweak_key.double()).wrapping_add(&WideNumber::ONE)
}

/// Sequential tweaks `T^(0), T^(1), ...`.
#[derive(Clone, Debug)]
pub struct Tweaks<W> {
    current: WideNumber<W>,
    step: WideNumber<W>,
}

impl<W: Word> Tweaks<W> {
    pub fn new(tweak_key: &WideNumber<W>) -> Self {
        Self::starting_at(tweak_key, &WideNumber::ZERO)
    }

    /// Starts the sequence at block `j`.
    pub fn starting_at(tweak_key: &WideNumber<W>, j: &BlockIndex<W>) -> Self {
        Tweaks { current: tweak_key.odot(j), step: tweak_key.double().wrapping_add(&WideNumber::ONE) }
    }
}

impl<W: Word> Iterator for Tweaks<W> {
    type Item = Tweak<W>;

    fn next(&mut self) -> Option<Tweak<W>> {
        let out = self.current.as_tweak();
        self.current = self.current.wrapping_add(&self.step);
        Some(out)
    }
}

/// A cipher keyed once for many blocks: block `j` uses `T^(j)`, or the
/// tweak key itself for every block when tweaking is disabled.
///
/// Key, unit and affine schedules are computed once in [`TweakedCipher::new`].
#[derive(Clone, Debug)]
pub struct TweakedCipher<W> {
    fast: FastCipher<W>,
    tweak_key: WideNumber<W>,
    tweaking: bool,
}

impl<W: CipherWord> TweakedCipher<W> {
    pub fn new(key: &Key<W>, tweak_key: &WideNumber<W>, unit: UnitKey<W>) -> Self {
        TweakedCipher { fast: FastCipher::new(key, unit), tweak_key: *tweak_key, tweaking: true }
    }

    /// Holds the tweak constant at the tweak key, making this a plain
    /// block cipher (needed when it is used as a permutation).
    pub fn without_tweaking(mut self) -> Self {
        self.tweaking = false;
        self
    }

    pub fn tweaking(&self) -> bool {
        self.tweaking
    }

    pub fn tweak_for(&self, j: &BlockIndex<W>) -> Tweak<W> {
        if self.tweaking {
            tweak_at(&self.tweak_key, j)
        } else {
            self.tweak_key.as_tweak()
        }
    }

    fn tweaks_from(&self, start: u64) -> impl Iterator<Item = Tweak<W>> {
        let tweaking = self.tweaking;
        let constant = self.tweak_key.as_tweak();
        let mut seq = Tweaks::starting_at(&self.tweak_key, &WideNumber::from_u64(start));
        core::iter::from_fn(move || if tweaking { seq.next() } else { Some(constant) })
    }

    pub fn encrypt_block(&self, j: &BlockIndex<W>, x: &Block<W>) -> Block<W> {
        self.fast.encrypt(x, &self.tweak_for(j))
    }

    pub fn decrypt_block(&self, j: &BlockIndex<W>, y: &Block<W>) -> Block<W> {
        self.fast.decrypt(y, &self.tweak_for(j))
    }

    /// Encrypts `blocks` in place as blocks `start, start+1, ...`.
    pub fn encrypt_in_place(&self, start: u64, blocks: &mut [Block<W>]) {
        let mut tweaks = self.tweaks_from(start);
        let mut pairs = blocks.chunks_exact_mut(2);
        for pair in &mut pairs {
            let (ta, tb) = (tweaks.next().unwrap_or_default(), tweaks.next().unwrap_or_default());
            let [a, b] = crate::fastpath::crypt_fast_pair([&pair[0], &pair[1]], [&ta, &tb], self.fast.forward());
            pair[0] = a;
            pair[1] = b;
        }
        for b in pairs.into_remainder() {
            *b = self.fast.encrypt(b, &tweaks.next().unwrap_or_default());
        }
    }

    /// Decrypts `blocks` in place as blocks `start, start+1, ...`.
    pub fn decrypt_in_place(&self, start: u64, blocks: &mut [Block<W>]) {
        let mut tweaks = self.tweaks_from(start);
        let mut pairs = blocks.chunks_exact_mut(2);
        for pair in &mut pairs {
            let (ta, tb) = (tweaks.next().unwrap_or_default(), tweaks.next().unwrap_or_default());
            let [a, b] = crate::fastpath::icrypt_fast_pair([&pair[0], &pair[1]], [&ta, &tb], self.fast.inverse());
            pair[0] = a;
            pair[1] = b;
        }
        for b in pairs.into_remainder() {
            *b = self.fast.decrypt(b, &tweaks.next().unwrap_or_default());
        }
    }
}

/// Encrypts block `j` of `blocks` under `T^(j)`.
pub fn encrypt_blocks<W: CipherWord>(
    blocks: &[Block<W>],
    key: &Key<W>,
    tweak_key: &WideNumber<W>,
    unit: UnitKey<W>,
) -> Vec<Block<W>> {
    let mut out = blocks.to_vec();
    TweakedCipher::new(key, tweak_key, unit).encrypt_in_place(0, &mut out);
    out
}

/// Inverse of [`encrypt_blocks`].
pub fn decrypt_blocks<W: CipherWord>(
    blocks: &[Block<W>],
    key: &Key<W>,
    tweak_key: &WideNumber<W>,
    unit: UnitKey<W>,
) -> Vec<Block<W>> {
    let mut out = blocks.to_vec();
    TweakedCipher::new(key, tweak_key, unit).decrypt_in_place(0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cipher::{decrypt, encrypt};

    const T0: u64 = 0x0001_0022_0333_4444;

    fn wide16(v: u64) -> WideNumber<u16> {
        WideNumber::from_u64(v)
    }

    fn value16(w: &WideNumber<u16>) -> u64 {
        w.0.iter().rev().fold(0, |acc, &l| (acc << 16) | l as u64)
    }

    #[test]
    fn from_u64_splits_limbs() {
        assert_eq!(wide16(T0).0, [0x4444, 0x0333, 0x0022, 0x0001]);
        assert_eq!(WideNumber::<u64>::from_u64(7).0, [7, 0, 0, 0]);
    }

    #[test]
    fn tweak_at_examples() {
        let t0 = wide16(T0);
        assert_eq!(tweak_at(&t0, &WideNumber::ZERO), t0.as_tweak());
        assert_eq!(tweak_at(&WideNumber::ZERO, &wide16(12345)), wide16(12345).as_tweak());
        let j = 0xdead_beef_u64;
        let expected = T0.wrapping_mul(j).wrapping_mul(2).wrapping_add(T0).wrapping_add(j);
        assert_eq!(value16(&t0.odot(&wide16(j))), expected);
    }

    #[test]
    fn tweak_next_examples() {
        let t0 = wide16(T0);
        assert_eq!(value16(&tweak_next(&wide16(41), &WideNumber::ZERO)), 42);
        assert_eq!(value16(&tweak_next(&t0, &t0)), T0.wrapping_mul(3).wrapping_add(1));
        let top = wide16(u64::MAX);
        assert_eq!(value16(&tweak_next(&top, &WideNumber::ZERO)), 0);
    }

    #[test]
    fn sequential_matches_random_access() {
        let t0 = WideNumber::<u32>([0x8000_0001, 0xffff_ffff, 0x1234_5678, 0xffff_fff0]);
        let mut cur = t0;
        for j in 0..2_000u64 {
            assert_eq!(cur.as_tweak(), tweak_at(&t0, &WideNumber::from_u64(j)));
            cur = tweak_next(&cur, &t0);
        }
        let seq: Vec<_> = Tweaks::new(&t0).take(100).collect();
        let from_fifty: Vec<_> = Tweaks::starting_at(&t0, &WideNumber::from_u64(50)).take(50).collect();
        assert_eq!(&seq[50..], &from_fifty[..]);
    }

    #[test]
    fn single_block_matches_encrypt() {
        let key = Key([1u16, 2, 3, 4, 5]);
        let unit = UnitKey(0x1998);
        let x = Block([0xCDEF, 0x89AB, 0x4567, 0x0123]);
        let t0 = wide16(T0);
        let out = encrypt_blocks(&[x], &key, &t0, unit);
        assert_eq!(out[0], encrypt(&x, &key, &t0.as_tweak(), unit));
        assert_eq!(decrypt(&out[0], &key, &t0.as_tweak(), unit), x);
    }

    #[test]
    fn blocks_round_trip_and_random_access() {
        let key = Key([0x1111_2222u32, 3, 0xffff_0000, 9, 0xabcd_ef01]);
        let unit = UnitKey(0x55aa_55aa);
        let t0 = WideNumber([5u32, 6, 7, 8]);
        let plain: Vec<Block<u32>> = (0..7u32).map(|i| Block([i, i * 3, !i, i << 7])).collect();
        let ct = encrypt_blocks(&plain, &key, &t0, unit);
        assert_eq!(decrypt_blocks(&ct, &key, &t0, unit), plain);
        let cipher = TweakedCipher::new(&key, &t0, unit);
        for (j, c) in ct.iter().enumerate() {
            assert_eq!(cipher.decrypt_block(&WideNumber::from_u64(j as u64), c), plain[j]);
        }
        // identical plaintext blocks encrypt differently under different tweaks
        let same = alloc::vec![plain[0]; 4];
        let ct_same = encrypt_blocks(&same, &key, &t0, unit);
        assert_ne!(ct_same[0], ct_same[1]);
        let fixed = cipher.clone().without_tweaking();
        let mut buf = same.clone();
        fixed.encrypt_in_place(0, &mut buf);
        assert!(buf.iter().all(|b| *b == buf[0]));
        fixed.decrypt_in_place(0, &mut buf);
        assert_eq!(buf, same);
    }
}
