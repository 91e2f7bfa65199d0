//! Optimised encryption and decryption.
//!
//! Every `x ⊡_e z` in the G-box is an affine map `m·x ⊞ n` with odd `m`, so
//! the `(K, L)` pairs are folded once into an [`AffineSchedule`] and each
//! G-box costs two multiplies and two adds.
//!
//! Unrolling the register rotations shows that the 32 G evaluations only
//! depend on XORs of the plaintext words and earlier G outputs. They fit in
//! 20 dependency levels ([`STEPS`]); within a level the evaluations are
//! independent and can overlap in the pipeline. The ciphertext words are
//! XORs of G outputs ([`OUTPUTS`]).
//!
//! Decryption inverts each affine map and runs the same procedure on the
//! reordered block and tweak.

use crate::algebra::{affine_coefficients, inverse_odd, swap_halves};
use crate::cipher::Block;
use crate::schedules::{key_expand, unit_expand, Key, KeySchedule, Tweak, UnitKey, UnitSchedule};
use crate::{CipherWord, Error, Word};

const LEN: usize = crate::schedules::KEY_SCHEDULE_LEN;

/// Per-position multiplier and addend: `M[k] = 2(K[k] − L[k]) ⊞ 1`,
/// `N[k] = (2L[k] − 1)(K[k] − L[k])`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AffineSchedule<W> {
    pub m: [W; LEN],
    pub n: [W; LEN],
}

impl<W: Word> AffineSchedule<W> {
    /// The schedule whose every map is the identity (`M = 1`, `N = 0`).
    pub fn identity() -> Self {
        AffineSchedule { m: [W::ONE; LEN], n: [W::ZERO; LEN] }
    }

    /// Folds a key schedule and a unit schedule into affine form.
    pub fn from_schedules(keys: &KeySchedule<W>, units: &UnitSchedule<W>) -> Self {
        let mut s = Self::identity();
        for k in 0..LEN {
            (s.m[k], s.n[k]) = affine_coefficients(keys[k], units[k]);
        }
        s
    }

    /// Applies map `k` to `x`.
    #[inline(always)]
    pub fn apply(&self, k: usize, x: W) -> W {
        self.m[k].wrapping_mul(x).wrapping_add(self.n[k])
    }
}

/// Affine schedule of `KE(Z)` and `UE(U)`.
pub fn affine_expand<W: Word>(key: &Key<W>, unit: UnitKey<W>) -> AffineSchedule<W> {
    AffineSchedule::from_schedules(&key_expand(key), &unit_expand(unit))
}

/// Inverse schedule for decryption: `iM[k] = M[63−k]^-1`,
/// `iN[k] = ⊖(N[63−k]·iM[k])`.
///
/// Fails only if some `M[k]` is even, which [`affine_expand`] never produces.
pub fn invert_affine<W: Word>(s: &AffineSchedule<W>) -> Result<AffineSchedule<W>, Error> {
    if !s.m.iter().all(|m| m.is_odd()) {
        return Err(Error::NotInvertible);
    }
    let mut inv = AffineSchedule::identity();
    for k in 0..LEN {
        let im = inverse_odd(s.m[LEN - 1 - k]);
        inv.m[k] = im;
        inv.n[k] = s.n[LEN - 1 - k].wrapping_mul(im).wrapping_neg();
    }
    Ok(inv)
}

/// The G-box on affine coefficients: `((((x·m0 ⊞ n0)^S ⊕ t)·m1 ⊞ n1)^S`.
#[inline(always)]
pub fn affine_gbox<W: Word>(x: W, t: W, m0: W, m1: W, n0: W, n1: W) -> W {
    let x = swap_halves(x.wrapping_mul(m0).wrapping_add(n0)) ^ t;
    swap_halves(x.wrapping_mul(m1).wrapping_add(n1))
}

/// An input term of a G evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    /// Plaintext word `X[i]`.
    X(usize),
    /// Output `g^(k)` of round `k`.
    G(usize),
}

/// One G evaluation: round `round` applied to the XOR of `inputs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub round: usize,
    pub inputs: &'static [Source],
}

macro_rules! load {
    ($x:ident, $g:ident; X $i:literal) => {
        $x[$i]
    };
    ($x:ident, $g:ident; G $i:literal) => {
        $g[$i]
    };
}

macro_rules! gbox_at {
    ($s:ident, $t:ident, $r:literal, $input:expr) => {
        affine_gbox($input, $t[$r % 4], $s.m[2 * $r], $s.m[2 * $r + 1], $s.n[2 * $r], $s.n[2 * $r + 1])
    };
}

macro_rules! parallel_schedule {
    (
        steps { $( [ $( $r:literal <- $( $kind:ident $idx:literal )^+ ),+ ] )+ }
        outputs { $( [ $( $o:literal )^+ ] )+ }
    ) => {
        /// The 20 dependency levels; each entry lists the G evaluations of one step.
        pub const STEPS: &[&[Evaluation]] = &[
            $( &[ $( Evaluation { round: $r, inputs: &[ $( Source::$kind($idx) ),+ ] } ),+ ] ),+
        ];

        /// Ciphertext word `Y[i]` is the XOR of the G outputs listed in `OUTPUTS[i]`.
        pub const OUTPUTS: [&[usize]; 4] = [ $( &[ $( $o ),+ ] ),+ ];

        #[inline(always)]
        fn run<W: Word>(x: &[W; 4], t: &[W; 4], s: &AffineSchedule<W>) -> [W; 4] {
            let mut g = [W::ZERO; 32];
            $( $(
                g[$r] = gbox_at!(s, t, $r, W::ZERO $( ^ load!(x, g; $kind $idx) )+);
            )+ )+
            [ $( W::ZERO $( ^ g[$o] )+ ),+ ]
        }

        #[inline(always)]
        fn run_pair<W: Word>(
            xa: &[W; 4], ta: &[W; 4],
            xb: &[W; 4], tb: &[W; 4],
            s: &AffineSchedule<W>,
        ) -> ([W; 4], [W; 4]) {
            let mut ga = [W::ZERO; 32];
            let mut gb = [W::ZERO; 32];
            $( $(
                ga[$r] = gbox_at!(s, ta, $r, W::ZERO $( ^ load!(xa, ga; $kind $idx) )+);
                gb[$r] = gbox_at!(s, tb, $r, W::ZERO $( ^ load!(xb, gb; $kind $idx) )+);
            )+ )+
            (
                [ $( W::ZERO $( ^ ga[$o] )+ ),+ ],
                [ $( W::ZERO $( ^ gb[$o] )+ ),+ ],
            )
        }
    };
}

parallel_schedule! {
    steps {
        [ 0 <- X 0 ]
        [ 1 <- X 1 ^ G 0 ]
        [ 2 <- X 2 ^ G 1 ]
        [ 3 <- X 3 ^ G 2 ]
        [ 4 <- G 0 ^ G 3 ]
        [ 5 <- G 1 ^ G 4, 11 <- G 4 ]
        [ 6 <- G 2 ^ G 5, 9 <- G 5 ]
        [ 7 <- G 3 ^ G 6, 10 <- G 6, 13 <- G 6 ^ G 9 ]
        [ 8 <- G 4 ^ G 7, 14 <- G 4 ^ G 10 ]
        [ 12 <- G 5 ^ G 8, 15 <- G 5 ^ G 8 ^ G 11 ]
        [ 16 <- G 6 ^ G 9 ^ G 12 ]
        [ 17 <- G 4 ^ G 10 ^ G 13 ^ G 16 ]
        [ 18 <- G 5 ^ G 8 ^ G 11 ^ G 14 ^ G 17 ]
        [ 19 <- G 15 ^ G 18 ]
        [ 20 <- G 16 ^ G 19 ]
        [ 21 <- G 17 ^ G 20, 27 <- G 20 ]
        [ 22 <- G 18 ^ G 21, 25 <- G 21 ]
        [ 23 <- G 19 ^ G 22, 26 <- G 22, 29 <- G 22 ^ G 25 ]
        [ 24 <- G 20 ^ G 23, 30 <- G 20 ^ G 26 ]
        [ 28 <- G 21 ^ G 24, 31 <- G 21 ^ G 24 ^ G 27 ]
    }
    outputs {
        [ 22 ^ 25 ^ 28 ]
        [ 20 ^ 26 ^ 29 ]
        [ 21 ^ 24 ^ 27 ^ 30 ]
        [ 31 ]
    }
}

/// Text encryption on an affine schedule. Bit-identical to
/// [`crate::cipher::crypt`] on the schedules the affine form was built from.
#[inline]
pub fn crypt_fast<W: CipherWord>(x: &Block<W>, t: &Tweak<W>, s: &AffineSchedule<W>) -> Block<W> {
    Block(run(&x.0, &t.0, s))
}

/// Encrypts two blocks under one schedule with their steps interleaved.
#[inline]
pub fn crypt_fast_pair<W: CipherWord>(x: [&Block<W>; 2], t: [&Tweak<W>; 2], s: &AffineSchedule<W>) -> [Block<W>; 2] {
    let (a, b) = run_pair(&x[0].0, &t[0].0, &x[1].0, &t[1].0, s);
    [Block(a), Block(b)]
}

/// Decryption on an inverted schedule from [`invert_affine`].
#[inline]
pub fn icrypt_fast<W: CipherWord>(y: &Block<W>, t: &Tweak<W>, inverse: &AffineSchedule<W>) -> Block<W> {
    crypt_fast(&y.reversed_swapped(), &t.reversed_swapped(), inverse).reversed_swapped()
}

/// Decrypts two blocks with interleaved steps.
#[inline]
pub fn icrypt_fast_pair<W: CipherWord>(
    y: [&Block<W>; 2],
    t: [&Tweak<W>; 2],
    inverse: &AffineSchedule<W>,
) -> [Block<W>; 2] {
    let (ya, yb) = (y[0].reversed_swapped(), y[1].reversed_swapped());
    let (ta, tb) = (t[0].reversed_swapped(), t[1].reversed_swapped());
    let (a, b) = run_pair(&ya.0, &ta.0, &yb.0, &tb.0, inverse);
    [Block(a).reversed_swapped(), Block(b).reversed_swapped()]
}

/// Evaluates an arbitrary step table, in the listed order.
///
/// Slower than [`crypt_fast`]; used to check alternative orderings of
/// [`STEPS`]. Panics if an evaluation reads a G output that has not been
/// produced yet.
pub fn crypt_with_steps<W: Word>(
    steps: &[&[Evaluation]],
    outputs: &[&[usize]; 4],
    x: &Block<W>,
    t: &Tweak<W>,
    s: &AffineSchedule<W>,
) -> Block<W> {
    let mut g = [W::ZERO; 32];
    let mut done = [false; 32];
    for eval in steps.iter().flat_map(|step| step.iter()) {
        let input = eval.inputs.iter().fold(W::ZERO, |acc, src| match *src {
            Source::X(i) => acc ^ x.0[i],
            Source::G(j) => {
                assert!(done[j], "g{j} read before it was computed");
                acc ^ g[j]
            }
        });
        let r = eval.round;
        g[r] = affine_gbox(input, t.0[r % 4], s.m[2 * r], s.m[2 * r + 1], s.n[2 * r], s.n[2 * r + 1]);
        done[r] = true;
    }
    Block(core::array::from_fn(|i| outputs[i].iter().fold(W::ZERO, |acc, &j| acc ^ g[j])))
}

/// Forward and inverse affine schedules for one `(Z, U)`.
#[derive(Clone, Debug)]
pub struct FastCipher<W> {
    forward: AffineSchedule<W>,
    inverse: AffineSchedule<W>,
}

impl<W: CipherWord> FastCipher<W> {
    pub fn new(key: &Key<W>, unit: UnitKey<W>) -> Self {
        let forward = affine_expand(key, unit);
        let inverse = invert_affine(&forward).expect("expanded multipliers are odd");
        FastCipher { forward, inverse }
    }

    pub fn forward(&self) -> &AffineSchedule<W> {
        &self.forward
    }

    pub fn inverse(&self) -> &AffineSchedule<W> {
        &self.inverse
    }

    #[inline]
    pub fn encrypt(&self, x: &Block<W>, t: &Tweak<W>) -> Block<W> {
        crypt_fast(x, t, &self.forward)
    }

    #[inline]
    pub fn decrypt(&self, y: &Block<W>, t: &Tweak<W>) -> Block<W> {
        icrypt_fast(y, t, &self.inverse)
    }
}
