//! Expansion of `R̂^N` into words over the letters `Â = −Ŝ⁻Λ̂_a∂ₓ` and
//! `B̂ = −(Ŝ⁻)²Λ̂_b v`, with the diagonal coefficient of each word computed
//! both by multiplying rotated diagonals and by the closed product formula.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::opvector::{DiagOp, OpVector};
use super::reduction::kernel_vector;
use crate::diffpoly::rational::Rational;
use crate::diffpoly::{DiffPoly, Monomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
}

/// A word `Â^{l₁} B̂^{m₁} Â^{l₂} B̂^{m₂} ⋯`, stored as its letters in
/// operator order (leftmost letter acts last).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    /// Build from exponent sequences. `l[0]` may be zero for words that
    /// start with `B̂`; `m` may be one shorter than `l`.
    pub fn from_lm(l: &[u32], m: &[u32]) -> Self {
        assert!(m.len() <= l.len() && l.len() <= m.len() + 1, "l and m must interleave");
        let mut letters = Vec::new();
        for (i, &li) in l.iter().enumerate() {
            letters.extend(std::iter::repeat(Letter::A).take(li as usize));
            if let Some(&mi) = m.get(i) {
                letters.extend(std::iter::repeat(Letter::B).take(mi as usize));
            }
        }
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `(l, m)` with `l₁ = 0` when the word starts with `B̂`.
    pub fn lm(&self) -> (Vec<u32>, Vec<u32>) {
        let mut l = Vec::new();
        let mut m = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let mut run = 0;
            while i < self.letters.len() && self.letters[i] == Letter::A {
                run += 1;
                i += 1;
            }
            l.push(run);
            let mut run = 0;
            while i < self.letters.len() && self.letters[i] == Letter::B {
                run += 1;
                i += 1;
            }
            if run > 0 {
                m.push(run);
            }
        }
        (l, m)
    }

    /// Total lowering `|l| + 2|m|`.
    pub fn shift(&self) -> usize {
        self.letters.iter().map(|l| if *l == Letter::A { 1 } else { 2 }).sum()
    }

    /// Numerical part of `Λ̂_w` as the product of rotated diagonals
    /// `Λ̂_a^(−k)` and `Λ̂_b^(−k)`, `k` the cumulative lowering.
    pub fn diagonal(&self, order: usize) -> Vec<Rational> {
        let la = DiagOp::lambda_a(order);
        let lb = DiagOp::lambda_b(order);
        let mut diag = vec![Rational::one(); order + 1];
        let mut k = 0i64;
        for letter in &self.letters {
            let base = match letter {
                Letter::A => {
                    k += 1;
                    &la
                }
                Letter::B => {
                    k += 2;
                    &lb
                }
            };
            let rotated = base.rotate(-k);
            for (d, e) in diag.iter_mut().zip(rotated.entries()) {
                *d *= -e.coefficient(&Monomial::one());
            }
        }
        diag
    }

    /// `α_{w,N}` read off the `(N, N)` entry of the rotated-diagonal product.
    pub fn alpha_direct(&self, order: usize) -> Rational {
        self.diagonal(order)[order].clone()
    }

    /// `α_{w,N}` from the block-wise factorial formula. Only defined when
    /// the word lowers by at most `N`; longer words are annihilated by
    /// `(Ŝ⁻)^{|l|+2|m|}` and never contribute.
    pub fn alpha_closed(&self, order: usize) -> Option<Rational> {
        let big_n = order as i64;
        if self.shift() > order {
            return None;
        }
        let (l, m) = self.lm();
        let mut alpha =
            if (l.iter().sum::<u32>() + m.iter().sum::<u32>()) % 2 == 0 { Rational::one() } else { -Rational::one() };
        let mut s: i64 = 0;
        for (i, &li) in l.iter().enumerate() {
            let li = li as i64;
            alpha *= Rational::new(factorial(big_n - s - li), factorial(big_n - s));
            s += li;
            if let Some(&mi) = m.get(i) {
                let mi = mi as i64;
                alpha *= Rational::new(double_factorial_ext(s + 2 * mi - 1), double_factorial_ext(s - 1));
                alpha *=
                    Rational::new(double_factorial_ext(big_n - s - 2 * mi - 1), double_factorial_ext(big_n - s - 1));
                s += 2 * mi;
            }
        }
        Some(alpha)
    }

    /// `∂ₓ^{l₁} v^{m₁} ∂ₓ^{l₂} ⋯` applied to `p`.
    pub fn apply_operator(&self, p: &DiffPoly) -> DiffPoly {
        let v = DiffPoly::v(0);
        self.letters.iter().rev().fold(p.clone(), |acc, letter| match letter {
            Letter::A => acc.derive(),
            Letter::B => &v * &acc,
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, m) = self.lm();
        let join = |xs: &[u32]| xs.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "l=({}) m=({})", join(&l), join(&m))
    }
}

fn factorial(n: i64) -> BigInt {
    assert!(n >= 0, "factorial of a negative number");
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `n!!`: `2^p p!` for `n = 2p`, `(2p+1)!/(2^p p!)` for `n = 2p+1`.
pub fn double_factorial(n: u64) -> BigInt {
    let p = n / 2;
    let two_p = num_traits::pow(BigInt::from(2), p as usize);
    if n % 2 == 0 {
        two_p * factorial(p as i64)
    } else {
        factorial(n as i64) / (two_p * factorial(p as i64))
    }
}

/// [`double_factorial`] extended with `(−1)!! = 1`, the empty product that
/// shows up for blocks at the start or end of a word.
fn double_factorial_ext(n: i64) -> BigInt {
    assert!(n >= -1, "double factorial below -1");
    if n == -1 {
        BigInt::one()
    } else {
        double_factorial(n as u64)
    }
}

/// All words of length `0..=max_len`, ordered by `(length, l, m)`.
pub fn enumerate_words(max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for len in 0..=max_len {
        let mut batch: Vec<Word> = (0..1u64 << len)
            .map(|bits| {
                Word::new(
                    (0..len).map(|i| if bits >> (len - 1 - i) & 1 == 0 { Letter::A } else { Letter::B }).collect(),
                )
            })
            .collect();
        batch.sort_by_key(|w| w.lm());
        out.extend(batch);
    }
    out
}

/// A word whose two `α_{w,N}` computations disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaMismatch {
    pub order: usize,
    pub word: Word,
    pub direct: Rational,
    pub closed: Rational,
}

impl fmt::Display for AlphaMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "N={} word {}: diagonal product gives {}, closed form gives {}",
            self.order, self.word, self.direct, self.closed
        )
    }
}

/// Compare the two `α_{w,N}` computations for every `N ≤ max_order` and every
/// word of length at most `max_len` that lowers by at most `N`.
pub fn alpha_cross_check(max_len: usize, max_order: usize) -> Vec<AlphaMismatch> {
    let words = enumerate_words(max_len);
    let mut out = Vec::new();
    for order in 1..=max_order {
        for w in words.iter().filter(|w| w.shift() <= order) {
            let direct = w.alpha_direct(order);
            let closed = w.alpha_closed(order).expect("shift checked above");
            if direct != closed {
                out.push(AlphaMismatch { order, word: w.clone(), direct, closed });
            }
        }
    }
    out
}

/// Result of evaluating `(R̂^N D̂ Π̂_n a)_N` through the word sum.
#[derive(Clone, Debug)]
pub struct WordExpansion {
    pub order: usize,
    pub n: usize,
    pub value: DiffPoly,
    /// Words that actually contributed.
    pub words_used: usize,
    pub alpha_mismatches: Vec<AlphaMismatch>,
}

/// Word-sum evaluation of `(R̂^N D̂ Π̂_n a)_N` with `a_n` formal. The
/// admissible words are those selected by the three Kronecker deltas.
pub fn word_expansion(order: usize, n: usize) -> WordExpansion {
    assert!((1..=order).contains(&n), "n must lie in 1..=N");
    let an = DiffPoly::a(n as u32, 0);
    let big_n = order as i64;
    let ni = n as i64;
    let mut value = DiffPoly::zero();
    let mut words_used = 0;
    let mut alpha_mismatches = Vec::new();
    for w in enumerate_words(order) {
        let s = w.shift() as i64;
        let mut inner = DiffPoly::zero();
        if big_n - s + 1 == ni {
            inner += an.scale_int(ni);
        }
        if big_n - s == ni {
            inner += an.derive();
        }
        if big_n - s - 1 == ni {
            inner += (&DiffPoly::v(0) * &an).scale_int(big_n - ni);
        }
        if inner.is_zero() {
            continue;
        }
        words_used += 1;
        let alpha = w.alpha_direct(order);
        if let Some(closed) = w.alpha_closed(order) {
            if closed != alpha {
                alpha_mismatches.push(AlphaMismatch { order, word: w.clone(), direct: alpha.clone(), closed });
            }
        }
        if !alpha.is_zero() {
            value += w.apply_operator(&inner).scale(&alpha);
        }
    }
    WordExpansion { order, n, value, words_used, alpha_mismatches }
}

/// Outcome of comparing the word sum with the direct matrix computation.
#[derive(Clone, Debug)]
pub struct WordCheck {
    pub order: usize,
    pub n: usize,
    pub agrees: bool,
    pub expansion: WordExpansion,
    pub direct: DiffPoly,
}

pub fn verify_word_expansion(order: usize, n: usize) -> WordCheck {
    let expansion = word_expansion(order, n);
    let direct: OpVector = kernel_vector(order, n);
    let direct = direct.get(order).clone();
    WordCheck {
        order,
        n,
        agrees: expansion.value == direct && expansion.alpha_mismatches.is_empty(),
        expansion,
        direct,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::rational::ratio;

    #[test]
    fn double_factorial_values() {
        assert_eq!(double_factorial(0), BigInt::from(1));
        assert_eq!(double_factorial(5), BigInt::from(15));
        assert_eq!(double_factorial(6), BigInt::from(48));
        assert_eq!(double_factorial(1), BigInt::from(1));
        assert_eq!(double_factorial(7), BigInt::from(105));
    }

    #[test]
    fn empty_word_is_identity() {
        let w = Word::empty();
        assert_eq!(w.alpha_direct(3), Rational::one());
        assert_eq!(w.alpha_closed(3), Some(Rational::one()));
        assert!(w.diagonal(3).iter().all(|d| d.is_one()));
        assert_eq!(w.apply_operator(&DiffPoly::a(1, 0)), DiffPoly::a(1, 0));
    }

    #[test]
    fn lm_round_trip() {
        for w in enumerate_words(5) {
            let (l, m) = w.lm();
            assert_eq!(Word::from_lm(&l, &m), w);
        }
        let w = Word::from_lm(&[0, 2], &[1]);
        assert_eq!(w.letters(), &[Letter::B, Letter::A, Letter::A]);
        assert_eq!(w.shift(), 4);
    }

    #[test]
    fn enumeration_counts_and_order() {
        let words = enumerate_words(3);
        assert_eq!(words.len(), 1 + 2 + 4 + 8);
        assert!(words[0].is_empty());
        assert_eq!(words[1].letters(), &[Letter::B]);
        assert_eq!(words[2].letters(), &[Letter::A]);
    }

    #[test]
    fn single_letter_coefficients() {
        // (Λ_a^(−1))_{N,N} = 1/N and (Λ_b^(−2))_{N,N} = 1/(N−1)
        assert_eq!(Word::from_lm(&[1], &[]).alpha_direct(4), ratio(-1, 4));
        assert_eq!(Word::from_lm(&[0], &[1]).alpha_direct(4), ratio(-1, 3));
    }

    #[test]
    fn word_sum_matches_direct_for_n2() {
        let check = verify_word_expansion(2, 2);
        assert!(check.agrees, "{} vs {}", check.expansion.value, check.direct);
    }
}
