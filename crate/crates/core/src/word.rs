use core::fmt::{self, Debug, LowerHex, UpperHex};
use core::hash::Hash;
use core::ops::{BitAnd, BitOr, BitXor, BitXorAssign, Not};

use crate::Error;

/// A `w`-bit machine word with wrapping arithmetic modulo `2^w`.
///
/// Implemented natively for `u8`, `u16`, `u32` and `u64`, and for
/// [`Masked<W>`] at any even width `2 ≤ W ≤ 64`.
pub trait Word:
    Copy
    + Eq
    + Ord
    + Hash
    + Default
    + Debug
    + UpperHex
    + BitXor<Output = Self>
    + BitXorAssign
    + BitAnd<Output = Self>
    + BitOr<Output = Self>
    + Not<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// The word length `w`.
    const BITS: u32;
    const ZERO: Self;
    const ONE: Self;
    const MAX: Self;

    fn wrapping_add(self, rhs: Self) -> Self;
    fn wrapping_sub(self, rhs: Self) -> Self;
    fn wrapping_mul(self, rhs: Self) -> Self;
    fn wrapping_neg(self) -> Self;
    /// Cyclic left rotation on `w` bits.
    fn rotate_left(self, n: u32) -> Self;

    /// Keeps the low `w` bits of `v`.
    fn from_u64(v: u64) -> Self;
    fn to_u64(self) -> u64;

    #[inline(always)]
    fn double(self) -> Self {
        self.wrapping_add(self)
    }

    #[inline(always)]
    fn is_odd(self) -> bool {
        self.to_u64() & 1 == 1
    }

    #[inline(always)]
    fn bit(self, i: u32) -> bool {
        (self.to_u64() >> i) & 1 == 1
    }
}

/// Words the cipher is instantiated for: `w ∈ {16, 32, 64}`.
pub trait CipherWord: Word + sealed::Sealed {
    /// Octets per word.
    const BYTES: usize;
    /// Serialises as little-endian octets into `out[..Self::BYTES]`.
    fn write_le(self, out: &mut [u8]);
    /// Reads the first `Self::BYTES` octets of `bytes` as a little-endian word.
    fn read_le(bytes: &[u8]) -> Self;
}

mod sealed {
    pub trait Sealed {}
    impl Sealed for u16 {}
    impl Sealed for u32 {}
    impl Sealed for u64 {}
}

macro_rules! native_word {
    ($($t:ty),*) => {$(
        impl Word for $t {
            const BITS: u32 = <$t>::BITS;
            const ZERO: Self = 0;
            const ONE: Self = 1;
            const MAX: Self = <$t>::MAX;

            #[inline(always)]
            fn wrapping_add(self, rhs: Self) -> Self { <$t>::wrapping_add(self, rhs) }
            #[inline(always)]
            fn wrapping_sub(self, rhs: Self) -> Self { <$t>::wrapping_sub(self, rhs) }
            #[inline(always)]
            fn wrapping_mul(self, rhs: Self) -> Self { <$t>::wrapping_mul(self, rhs) }
            #[inline(always)]
            fn wrapping_neg(self) -> Self { <$t>::wrapping_neg(self) }
            #[inline(always)]
            fn rotate_left(self, n: u32) -> Self { <$t>::rotate_left(self, n) }
            #[inline(always)]
            fn from_u64(v: u64) -> Self { v as $t }
            #[inline(always)]
            fn to_u64(self) -> u64 { self as u64 }
        }
    )*};
}

native_word!(u8, u16, u32, u64);

macro_rules! cipher_word {
    ($($t:ty),*) => {$(
        impl CipherWord for $t {
            const BYTES: usize = core::mem::size_of::<$t>();

            #[inline]
            fn write_le(self, out: &mut [u8]) {
                out[..Self::BYTES].copy_from_slice(&self.to_le_bytes());
            }

            #[inline]
            fn read_le(bytes: &[u8]) -> Self {
                let mut buf = [0u8; core::mem::size_of::<$t>()];
                buf.copy_from_slice(&bytes[..Self::BYTES]);
                <$t>::from_le_bytes(buf)
            }
        }
    )*};
}

cipher_word!(u16, u32, u64);

/// A word of arbitrary even width `W` (2..=64), stored in a `u64` and
/// reduced after every operation.
///
/// Used to run the algebra at widths that have no native integer type,
/// mainly for exhaustive checks at small `W`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Masked<const W: u32>(u64);

impl<const W: u32> Masked<W> {
    const VALID: () = assert!(W % 2 == 0 && W >= 2 && W <= 64, "width must be even, 2..=64");

    const MASK: u64 = if W == 64 { u64::MAX } else { (1u64 << W) - 1 };

    /// Reduces `v` modulo `2^W`.
    #[inline(always)]
    pub const fn new(v: u64) -> Self {
        #[allow(clippy::let_unit_value)]
        let () = Self::VALID;
        Masked(v & Self::MASK)
    }

    #[inline(always)]
    pub const fn value(self) -> u64 {
        self.0
    }
}

impl<const W: u32> Debug for Masked<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Masked<{}>({:#x})", W, self.0)
    }
}

impl<const W: u32> UpperHex for Masked<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        UpperHex::fmt(&self.0, f)
    }
}

impl<const W: u32> LowerHex for Masked<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        LowerHex::fmt(&self.0, f)
    }
}

impl<const W: u32> BitXor for Masked<W> {
    type Output = Self;
    #[inline(always)]
    fn bitxor(self, rhs: Self) -> Self {
        Masked(self.0 ^ rhs.0)
    }
}

impl<const W: u32> BitXorAssign for Masked<W> {
    #[inline(always)]
    fn bitxor_assign(&mut self, rhs: Self) {
        self.0 ^= rhs.0;
    }
}

impl<const W: u32> BitAnd for Masked<W> {
    type Output = Self;
    #[inline(always)]
    fn bitand(self, rhs: Self) -> Self {
        Masked(self.0 & rhs.0)
    }
}

impl<const W: u32> BitOr for Masked<W> {
    type Output = Self;
    #[inline(always)]
    fn bitor(self, rhs: Self) -> Self {
        Masked(self.0 | rhs.0)
    }
}

impl<const W: u32> Not for Masked<W> {
    type Output = Self;
    #[inline(always)]
    fn not(self) -> Self {
        Masked::new(!self.0)
    }
}

impl<const W: u32> Word for Masked<W> {
    const BITS: u32 = {
        #[allow(clippy::let_unit_value)]
        let () = Self::VALID;
        W
    };
    const ZERO: Self = Masked(0);
    const ONE: Self = Masked(1);
    const MAX: Self = Masked(Self::MASK);

    #[inline(always)]
    fn wrapping_add(self, rhs: Self) -> Self {
        Masked::new(self.0.wrapping_add(rhs.0))
    }
    #[inline(always)]
    fn wrapping_sub(self, rhs: Self) -> Self {
        Masked::new(self.0.wrapping_sub(rhs.0))
    }
    #[inline(always)]
    fn wrapping_mul(self, rhs: Self) -> Self {
        // the low W bits of the 64-bit product are the low W bits of the full product
        Masked::new(self.0.wrapping_mul(rhs.0))
    }
    #[inline(always)]
    fn wrapping_neg(self) -> Self {
        Masked::new(self.0.wrapping_neg())
    }
    #[inline(always)]
    fn rotate_left(self, n: u32) -> Self {
        let n = n % W;
        if n == 0 {
            self
        } else {
            Masked::new((self.0 << n) | (self.0 >> (W - n)))
        }
    }
    #[inline(always)]
    fn from_u64(v: u64) -> Self {
        Masked::new(v)
    }
    #[inline(always)]
    fn to_u64(self) -> u64 {
        self.0
    }
}

/// Runtime word length, validated: even and `2 ≤ w ≤ 64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Width(u32);

impl Width {
    pub const W16: Width = Width(16);
    pub const W32: Width = Width(32);
    pub const W64: Width = Width(64);

    pub const fn new(bits: u32) -> Result<Self, Error> {
        if bits % 2 == 0 && bits >= 2 && bits <= 64 {
            Ok(Width(bits))
        } else {
            Err(Error::InvalidWidth(bits))
        }
    }

    /// Like [`Width::new`] but also requires a width the cipher is defined for.
    pub const fn cipher(bits: u32) -> Result<Self, Error> {
        match bits {
            16 | 32 | 64 => Ok(Width(bits)),
            _ => Err(Error::InvalidWidth(bits)),
        }
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn is_cipher_width(self) -> bool {
        matches!(self.0, 16 | 32 | 64)
    }

    /// Octets in one 4-word block.
    pub const fn block_bytes(self) -> usize {
        (self.0 / 2) as usize
    }
}

impl fmt::Display for Width {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn masked_matches_native_at_sixteen() {
        let pairs = [(0x1234u64, 0xfedcu64), (0xffff, 1), (0x8000, 0x8000), (0, 0xabcd)];
        for (a, b) in pairs {
            let (ma, mb) = (Masked::<16>::new(a), Masked::<16>::new(b));
            let (na, nb) = (a as u16, b as u16);
            assert_eq!(ma.wrapping_add(mb).value(), na.wrapping_add(nb) as u64);
            assert_eq!(ma.wrapping_sub(mb).value(), na.wrapping_sub(nb) as u64);
            assert_eq!(ma.wrapping_mul(mb).value(), na.wrapping_mul(nb) as u64);
            assert_eq!(ma.wrapping_neg().value(), na.wrapping_neg() as u64);
            assert_eq!((!ma).value(), (!na) as u64);
            for r in 0..16 {
                assert_eq!(ma.rotate_left(r).value(), na.rotate_left(r) as u64);
            }
        }
    }

    #[test]
    fn masked_reduces_on_construction() {
        assert_eq!(Masked::<6>::new(0xff).value(), 0x3f);
        assert_eq!(Masked::<64>::new(u64::MAX).value(), u64::MAX);
        assert_eq!(<Masked<10> as Word>::MAX.value(), 0x3ff);
    }

    #[test]
    fn width_validation() {
        assert!(Width::new(8).is_ok());
        assert_eq!(Width::new(7), Err(Error::InvalidWidth(7)));
        assert_eq!(Width::new(0), Err(Error::InvalidWidth(0)));
        assert_eq!(Width::new(66), Err(Error::InvalidWidth(66)));
        assert!(!Width::new(8).unwrap().is_cipher_width());
        assert_eq!(Width::cipher(8), Err(Error::InvalidWidth(8)));
        assert_eq!(Width::cipher(32).unwrap().block_bytes(), 16);
    }

    #[test]
    fn little_endian_octets() {
        let mut buf = [0u8; 4];
        0x0123_4567u32.write_le(&mut buf);
        assert_eq!(buf, [0x67, 0x45, 0x23, 0x01]);
        assert_eq!(u32::read_le(&buf), 0x0123_4567);
    }
}
