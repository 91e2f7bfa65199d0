//! NSABC/w, a tweakable Skipjack-shaped block cipher over `w`-bit words.
//!
//! The Feistel G-box of Skipjack is replaced by two rounds of a keyed
//! quasi-group operation `x ⊡_e z` (a single multiply-add on machine words)
//! with half-word swaps. The block is four words, the key five words, the
//! tweak four words and the unit key one word.
//!
//! Layout of the crate:
//!
//! * [`algebra`]: `⊙`, `⊡` and their `e`-parametrised families, inverses,
//!   and power-of-two modular inversion.
//! * [`schedules`]: key, unit and tweak expansion, materialised or streamed.
//! * [`cipher`]: the bit-exact reference path (`G`, `CRYPT`, `ENCRYPT`,
//!   `DECRYPT`) with an optional round trace.
//! * [`fastpath`]: precomputed affine schedules and the 20-step parallel
//!   evaluation order, plus its inverse.
//! * [`tweakstream`]: per-block tweak derivation and multi-block helpers.
//!
//! Words are generic over [`Word`]; the cipher itself is instantiated for
//! `u16`, `u32` and `u64` ([`CipherWord`]). [`Masked`] provides any other
//! even width up to 64 bits for the algebra layer.
//!
//! This crate is `no_std` and only needs `alloc` for the multi-block helpers
//! and trace capture.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod algebra;
pub mod cipher;
mod error;
pub mod fastpath;
pub mod schedules;
pub mod tweakstream;
mod word;

pub use cipher::{decrypt, encrypt, Block};
pub use error::Error;
pub use fastpath::{AffineSchedule, FastCipher};
pub use schedules::{Key, Tweak, UnitKey};
pub use tweakstream::{TweakedCipher, WideNumber};
pub use word::{CipherWord, Masked, Width, Word};
