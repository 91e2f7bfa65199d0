//! Word algebra.
//!
//! `x ⊙ y = 2xy + x + y` is a group operation on `w`-bit words with unit 0;
//! it is the multiplicative group of odd residues modulo `2^(w+1)` under
//! the map `x ↦ 2x + 1`. `x ⊡ y = 2xy + x − y` is a quasi-group operation
//! with right unit 0 and right inverse `ȳ`, so `(x ⊡ y) ⊡ ȳ = x`.
//!
//! Shifting by a fixed word `e` gives the families `⊙_e` (a group with unit
//! `e`) and `⊡_e` (a quasi-group with right unit `e`). The cipher encrypts
//! with `⊡_e` and decrypts with the right inverse `e/z`.
//!
//! All arithmetic is modulo `2^w`.

use crate::{Error, Word};

/// `x ⊙ y = 2xy ⊞ x ⊞ y`.
#[inline(always)]
pub fn odot<W: Word>(x: W, y: W) -> W {
    x.wrapping_mul(y).double().wrapping_add(x).wrapping_add(y)
}

/// `x ⊡ y = 2xy ⊞ x ⊟ y`.
#[inline(always)]
pub fn boxdot<W: Word>(x: W, y: W) -> W {
    x.wrapping_mul(y).double().wrapping_add(x).wrapping_sub(y)
}

/// The inverse `x̄ = ⊖x · (2x ⊞ 1)^-1` of `x` in the `⊙` group.
#[inline]
pub fn odot_inverse<W: Word>(x: W) -> W {
    x.wrapping_neg().wrapping_mul(inverse_odd(x.double().wrapping_add(W::ONE)))
}

/// `x ⊙_e y = (x ⊟ e) ⊙ (y ⊟ e) ⊞ e`.
#[inline(always)]
pub fn odot_e<W: Word>(x: W, y: W, e: W) -> W {
    odot(x.wrapping_sub(e), y.wrapping_sub(e)).wrapping_add(e)
}

/// `x ⊡_e y = (x ⊞ e) ⊡ (y ⊟ e) ⊟ e`.
///
/// Equal to `2xy ⊞ (1 − 2e)(x − y + e)` and to `m·x ⊞ n` with `(m, n)`
/// from [`affine_coefficients`].
#[inline(always)]
pub fn boxdot_e<W: Word>(x: W, y: W, e: W) -> W {
    boxdot(x.wrapping_add(e), y.wrapping_sub(e)).wrapping_sub(e)
}

/// The inverse `e/x = (x ⊟ e)‾ ⊞ e` of `x` in the `⊙_e` group, which is
/// also the right inverse of `x` under `⊡_e`.
#[inline]
pub fn inv_e<W: Word>(x: W, e: W) -> W {
    odot_inverse(x.wrapping_sub(e)).wrapping_add(e)
}

/// Coefficients `(m, n)` with `x ⊡_e z = m·x ⊞ n` for every `x`:
/// `m = 2(z − e) ⊞ 1` and `n = (2e − 1)(z − e)`. `m` is always odd.
#[inline(always)]
pub fn affine_coefficients<W: Word>(z: W, e: W) -> (W, W) {
    let d = z.wrapping_sub(e);
    let m = d.double().wrapping_add(W::ONE);
    let n = e.double().wrapping_sub(W::ONE).wrapping_mul(d);
    (m, n)
}

/// Multiplicative inverse of `x` modulo `2^w` by Newton–Hensel lifting.
///
/// Returns [`Error::NotInvertible`] for even `x`.
pub fn mod_inverse<W: Word>(x: W) -> Result<W, Error> {
    if x.is_odd() {
        Ok(inverse_odd(x))
    } else {
        Err(Error::NotInvertible)
    }
}

/// Newton–Hensel inversion for odd `x`. Starts from `2 − x`, correct modulo
/// 4, and doubles the number of correct low bits per step.
#[inline]
pub(crate) fn inverse_odd<W: Word>(x: W) -> W {
    debug_assert!(x.is_odd());
    let two = W::ONE.double();
    let mut y = two.wrapping_sub(x);
    let mut bits = 2;
    while bits < W::BITS {
        y = y.wrapping_mul(two.wrapping_sub(x.wrapping_mul(y)));
        bits *= 2;
    }
    y
}

/// `x^S`: rotation by `w/2`, exchanging the high and low halves.
#[inline(always)]
pub fn swap_halves<W: Word>(x: W) -> W {
    x.rotate_left(W::BITS / 2)
}
