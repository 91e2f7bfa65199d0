//! Algebraic laws of the word operations, checked pointwise.
//!
//! Each checker returns the name of the first law that fails.

use nsabc::algebra::{boxdot, boxdot_e, inv_e, mod_inverse, odot, odot_e, odot_inverse};
use nsabc::Word;
use rand::Rng;

pub type Law = Result<(), String>;

fn law(ok: bool, name: &str) -> Law {
    if ok {
        Ok(())
    } else {
        Err(name.to_string())
    }
}

fn neg<W: Word>(x: W) -> W {
    x.wrapping_neg()
}

/// `2(x⊙y)+1 ≡ (2x+1)(2y+1) mod 2^(w+1)`, computed in 128 bits.
pub fn isomorphism<W: Word>(x: W, y: W) -> Law {
    let mask = (1u128 << (W::BITS + 1)) - 1;
    let odd = |v: u128| 2 * v + 1;
    let lhs = odd(odot(x, y).to_u64() as u128) & mask;
    let rhs = odd(x.to_u64() as u128).wrapping_mul(odd(y.to_u64() as u128)) & mask;
    law(lhs == rhs, "isomorphism")
}

pub fn unary<W: Word>(x: W) -> Law {
    law(odot(x, W::ZERO) == x && odot(W::ZERO, x) == x, "unit of ⊙")?;
    law(odot(x, odot_inverse(x)) == W::ZERO, "inverse of ⊙")?;
    law(boxdot(x, W::ZERO) == x, "right unit of ⊡")?;
    law(boxdot(boxdot(W::ONE, x), odot_inverse(x)) == W::ONE, "right inverse of ⊡")
}

pub fn binary<W: Word>(x: W, y: W) -> Law {
    law(odot(x, y) == odot(y, x), "commutativity")?;
    law(odot(x, y) == neg(boxdot(neg(x), y)), "sign relation ⊙")?;
    law(boxdot(x, y) == neg(odot(neg(x), y)), "sign relation ⊡")?;
    law(odot(!x, y) == !odot(x, y), "complement ⊙")?;
    law(boxdot(W::ONE.wrapping_sub(x), y) == W::ONE.wrapping_sub(boxdot(x, y)), "complement ⊡")?;
    law(boxdot(boxdot(x, y), odot_inverse(y)) == x, "right inverse")?;
    isomorphism(x, y)
}

pub fn ternary<W: Word>(x: W, y: W, z: W) -> Law {
    law(odot(odot(x, y), z) == odot(x, odot(y, z)), "associativity")?;
    law(boxdot(boxdot(x, y), z) == boxdot(x, odot(y, z)), "mixed associativity")
}

/// Laws of the shifted family in `x`, `y` and the shift `e`.
pub fn shifted<W: Word>(x: W, y: W, e: W) -> Law {
    let one = W::ONE;
    let c = one.wrapping_sub(e.double());
    law(odot_e(x, e, e) == x && odot_e(e, x, e) == x, "unit of ⊙_e")?;
    law(odot_e(x, inv_e(x, e), e) == e, "inverse of ⊙_e")?;
    law(boxdot_e(x, e, e) == x, "right unit of ⊡_e")?;
    law(boxdot_e(boxdot_e(x, y, e), inv_e(y, e), e) == x, "right inverse of ⊡_e")?;
    law(odot_e(x, y, e) == neg(boxdot_e(neg(x), y, e)), "sign relation ⊙_e")?;
    law(boxdot_e(x, y, e) == neg(odot_e(neg(x), y, e)), "sign relation ⊡_e")?;
    law(boxdot_e(c.wrapping_sub(x), y, e) == c.wrapping_sub(boxdot_e(x, y, e)), "complement ⊡_e")
}

pub fn shifted_associativity<W: Word>(x: W, y: W, z: W, e: W) -> Law {
    law(boxdot_e(boxdot_e(x, y, e), z, e) == boxdot_e(x, odot_e(y, z, e), e), "mixed associativity of the e-family")
}

pub fn inverse<W: Word>(x: W) -> Law {
    law(x.wrapping_mul(mod_inverse(x).map_err(|e| e.to_string())?) == W::ONE, "mod_inverse")
}

/// Every law over all of `u8`, plus quasi-group bijectivity of `⊡`.
pub fn exhaustive_w8() -> Law {
    let all = || 0..=u8::MAX;
    for x in all() {
        unary(x)?;
        for y in all() {
            binary(x, y)?;
            for z in all() {
                ternary(x, y, z)?;
                shifted(x, y, z)?;
            }
        }
    }
    for a in all() {
        let (mut by_left, mut by_right) = ([false; 256], [false; 256]);
        for b in all() {
            by_left[boxdot(b, a) as usize] = true;
            by_right[boxdot(a, b) as usize] = true;
        }
        law(by_left.iter().all(|&s| s), "x ↦ x⊡y bijective")?;
        law(by_right.iter().all(|&s| s), "y ↦ x⊡y bijective")?;
    }
    // 2^32 tuples; the x loop is branch-free so it vectorises
    for e in all() {
        for z in all() {
            for y in all() {
                let yz = odot_e(y, z, e);
                let bad = all().fold(0u8, |acc, x| acc | (boxdot_e(boxdot_e(x, y, e), z, e) ^ boxdot_e(x, yz, e)));
                if bad != 0 {
                    return shifted_associativity_in(0..=u8::MAX, y, z, e);
                }
            }
        }
    }
    Ok(())
}

/// Reports the failing `x` from a range; used once the vector pass flags a tuple.
fn shifted_associativity_in(xs: core::ops::RangeInclusive<u8>, y: u8, z: u8, e: u8) -> Law {
    for x in xs {
        shifted_associativity(x, y, z, e)?;
    }
    Ok(())
}

/// Every law on `n` random tuples at width `W`.
pub fn sampled<W: Word>(rng: &mut impl Rng, n: usize) -> Law {
    let mut word = || W::from_u64(rng.gen());
    for _ in 0..n {
        let (x, y, z, e) = (word(), word(), word(), word());
        unary(x)?;
        binary(x, y)?;
        ternary(x, y, z)?;
        shifted(x, y, e)?;
        shifted_associativity(x, y, z, e)?;
    }
    Ok(())
}

pub fn inverse_exhaustive_w16() -> Law {
    (1..=u16::MAX).step_by(2).try_for_each(inverse)
}

pub fn inverse_sampled_w64(rng: &mut impl Rng, n: usize) -> Law {
    (0..n).try_for_each(|_| inverse(rng.gen::<u64>() | 1))
}
