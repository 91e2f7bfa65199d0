//! Key, unit and tweak expansion.
//!
//! Each schedule is produced by a small register machine: the 5-word key
//! register emits `z3` and rotates one word toward the least significant
//! end, the 4-word tweak register emits `t0` and rotates likewise, and the
//! unit register emits `u` and adds `2U ⊞ 1`. The streams are available
//! materialised ([`key_expand`], [`unit_expand`], [`tweak_expand`]) or as
//! iterators that hold only the registers ([`KeyStream`], [`UnitStream`],
//! [`TweakStream`]).

use crate::{Error, Word};

/// Words in the key and unit schedules.
pub const KEY_SCHEDULE_LEN: usize = 64;
/// Words in the tweak schedule.
pub const TWEAK_SCHEDULE_LEN: usize = 32;

/// A `5w`-bit primary key `Z4 Z3 Z2 Z1 Z0`, stored `z0` first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Key<W>(pub [W; 5]);

/// A `4w`-bit tweak `T3 T2 T1 T0`, stored `t0` first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Tweak<W>(pub [W; 4]);

/// The `w`-bit unit key `U`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct UnitKey<W>(pub W);

macro_rules! word_array {
    ($name:ident, $n:expr) => {
        impl<W: Word> $name<W> {
            /// Builds from exactly the right number of words, least significant first.
            pub fn from_slice(words: &[W]) -> Result<Self, Error> {
                let arr: [W; $n] =
                    words.try_into().map_err(|_| Error::LengthMismatch { expected: $n, actual: words.len() })?;
                Ok($name(arr))
            }

            pub fn words(&self) -> &[W; $n] {
                &self.0
            }

            /// Reverses the word order.
            pub fn reversed(&self) -> Self {
                let mut w = self.0;
                w.reverse();
                $name(w)
            }
        }

        impl<W> From<[W; $n]> for $name<W> {
            fn from(words: [W; $n]) -> Self {
                $name(words)
            }
        }
    };
}

word_array!(Key, 5);
word_array!(Tweak, 4);

impl<W: Word> Tweak<W> {
    /// Reverses the word order and swaps the halves of every word (`T^RS`).
    pub fn reversed_swapped(&self) -> Self {
        let mut t = self.reversed();
        t.0.iter_mut().for_each(|w| *w = crate::algebra::swap_halves(*w));
        t
    }
}

/// The 64-word key schedule `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KeySchedule<W>(pub [W; KEY_SCHEDULE_LEN]);

/// The 64-word unit schedule `L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnitSchedule<W>(pub [W; KEY_SCHEDULE_LEN]);

/// The 32-word tweak schedule `C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TweakSchedule<W>(pub [W; TWEAK_SCHEDULE_LEN]);

macro_rules! schedule {
    ($name:ident, $n:expr) => {
        impl<W: Word> $name<W> {
            pub fn from_slice(words: &[W]) -> Result<Self, Error> {
                let arr: [W; $n] =
                    words.try_into().map_err(|_| Error::LengthMismatch { expected: $n, actual: words.len() })?;
                Ok($name(arr))
            }

            pub fn words(&self) -> &[W; $n] {
                &self.0
            }

            /// The schedule in reverse word order.
            pub fn reversed(&self) -> Self {
                let mut w = self.0;
                w.reverse();
                $name(w)
            }
        }

        impl<W: Word> core::ops::Index<usize> for $name<W> {
            type Output = W;
            #[inline(always)]
            fn index(&self, i: usize) -> &W {
                &self.0[i]
            }
        }
    };
}

schedule!(KeySchedule, KEY_SCHEDULE_LEN);
schedule!(UnitSchedule, KEY_SCHEDULE_LEN);
schedule!(TweakSchedule, TWEAK_SCHEDULE_LEN);

/// Streams the key schedule from the 5-word key register.
#[derive(Clone, Debug)]
pub struct KeyStream<W> {
    reg: [W; 5],
}

impl<W: Word> KeyStream<W> {
    pub fn new(key: &Key<W>) -> Self {
        KeyStream { reg: key.0 }
    }

    /// Current register contents `(z0, z1, z2, z3, z4)`.
    pub fn register(&self) -> [W; 5] {
        self.reg
    }
}

impl<W: Word> Iterator for KeyStream<W> {
    type Item = W;

    #[inline]
    fn next(&mut self) -> Option<W> {
        let out = self.reg[3];
        self.reg.rotate_left(1);
        Some(out)
    }
}

/// Streams the unit schedule `U, 3U ⊞ 1, 5U ⊞ 2, ...`.
#[derive(Clone, Debug)]
pub struct UnitStream<W> {
    u: W,
    step: W,
}

impl<W: Word> UnitStream<W> {
    pub fn new(unit: UnitKey<W>) -> Self {
        UnitStream { u: unit.0, step: unit.0.double().wrapping_add(W::ONE) }
    }

    /// Current unit register `u`.
    pub fn register(&self) -> W {
        self.u
    }
}

impl<W: Word> Iterator for UnitStream<W> {
    type Item = W;

    #[inline]
    fn next(&mut self) -> Option<W> {
        let out = self.u;
        self.u = self.u.wrapping_add(self.step);
        Some(out)
    }
}

/// Streams the tweak schedule from the 4-word tweak register.
#[derive(Clone, Debug)]
pub struct TweakStream<W> {
    reg: [W; 4],
}

impl<W: Word> TweakStream<W> {
    pub fn new(tweak: &Tweak<W>) -> Self {
        TweakStream { reg: tweak.0 }
    }

    /// Current register contents `(t0, t1, t2, t3)`.
    pub fn register(&self) -> [W; 4] {
        self.reg
    }
}

impl<W: Word> Iterator for TweakStream<W> {
    type Item = W;

    #[inline]
    fn next(&mut self) -> Option<W> {
        let out = self.reg[0];
        self.reg.rotate_left(1);
        Some(out)
    }
}

fn collect<const N: usize, W: Word>(mut it: impl Iterator<Item = W>) -> [W; N] {
    core::array::from_fn(|_| it.next().unwrap_or(W::ZERO))
}

/// `KE(Z) = (Z3, Z4, Z0, Z1, Z2, Z3, ...)`, 64 words.
pub fn key_expand<W: Word>(key: &Key<W>) -> KeySchedule<W> {
    KeySchedule(collect(KeyStream::new(key)))
}

/// `UE(U) = (U ⊙ 0, U ⊙ 1, ..., U ⊙ 63)`.
pub fn unit_expand<W: Word>(unit: UnitKey<W>) -> UnitSchedule<W> {
    UnitSchedule(collect(UnitStream::new(unit)))
}

/// `TE(T) = (T0, T1, T2, T3, T0, ...)`, 32 words.
pub fn tweak_expand<W: Word>(tweak: &Tweak<W>) -> TweakSchedule<W> {
    TweakSchedule(collect(TweakStream::new(tweak)))
}
