//! Seeded random generators for the property sweeps.

use rand::Rng;

use crate::coherent::{GammaParams, IndexSequence};
use crate::fock::{FockVector, Letter, Scalar, Word};

pub fn random_letter<R: Rng + ?Sized>(rng: &mut R) -> Letter {
    if rng.gen::<bool>() {
        Letter::One
    } else {
        Letter::Zero
    }
}

pub fn random_word<R: Rng + ?Sized>(rng: &mut R, min_len: usize, max_len: usize) -> Word {
    let len = rng.gen_range(min_len..=max_len);
    Word::from_letters((0..len).map(|_| random_letter(rng)))
}

/// Eventually periodic sequence with preperiod ≤ `max_preperiod` and
/// period length in 1..=`max_period` (before canonicalization).
pub fn random_sequence<R: Rng + ?Sized>(
    rng: &mut R,
    max_preperiod: usize,
    max_period: usize,
) -> IndexSequence {
    let pre = random_word(rng, 0, max_preperiod);
    let period = random_word(rng, 1, max_period);
    IndexSequence::new(pre, period).expect("period is nonempty")
}

/// Rational in (0, 1) with denominator ≤ `max_den`.
pub fn random_unit_rational<R: Rng + ?Sized>(rng: &mut R, max_den: i64) -> Scalar {
    let den = rng.gen_range(2..=max_den.max(2));
    let num = rng.gen_range(1..den);
    Scalar::new(num.into(), den.into())
}

pub fn random_gammas<R: Rng + ?Sized>(rng: &mut R, max_den: i64) -> GammaParams {
    GammaParams::new(
        random_unit_rational(rng, max_den),
        random_unit_rational(rng, max_den),
    )
    .expect("values lie in (0, 1)")
}

/// γ₀ ≤ γ₁.
pub fn random_ordered_gammas<R: Rng + ?Sized>(rng: &mut R, max_den: i64) -> GammaParams {
    let a = random_unit_rational(rng, max_den);
    let b = random_unit_rational(rng, max_den);
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    GammaParams::new(lo, hi).expect("values lie in (0, 1)")
}

/// Sparse vector with up to `max_support` terms, words of length
/// ≤ `max_word_len` and nonzero amplitudes n/d with |n| ≤ 50, d ≤ 50.
pub fn random_fock_vector<R: Rng + ?Sized>(
    rng: &mut R,
    max_support: usize,
    max_word_len: usize,
) -> FockVector {
    let support = rng.gen_range(0..=max_support);
    FockVector::from_terms((0..support).map(|_| {
        let word = random_word(rng, 0, max_word_len);
        let mut num: i64 = rng.gen_range(1..=50);
        if rng.gen::<bool>() {
            num = -num;
        }
        let den: i64 = rng.gen_range(1..=50);
        (word, Scalar::new(num.into(), den.into()))
    }))
}
