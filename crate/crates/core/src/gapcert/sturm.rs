use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::diffpoly::rational::Rational;
use crate::diffpoly::Poly1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SignVerdict {
    PositiveDefinite,
    NegativeDefinite,
    Indefinite,
    IdenticallyZero,
}

impl SignVerdict {
    pub fn is_definite(self) -> bool {
        matches!(self, SignVerdict::PositiveDefinite | SignVerdict::NegativeDefinite)
    }
}

fn sign(q: &Rational) -> i8 {
    match q.cmp(&Rational::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Sturm chain `p, p′, −rem(p, p′), …`, each term made primitive.
pub fn sturm_chain(p: &Poly1) -> Vec<Poly1> {
    let mut chain = vec![p.primitive()];
    if p.degree() == 0 {
        return chain;
    }
    chain.push(p.derivative().primitive());
    loop {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push((-&r).primitive());
    }
    chain
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for s in signs.filter(|s| *s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// Number of distinct real roots.
pub fn count_real_roots(p: &Poly1) -> usize {
    if p.is_zero() || p.degree() == 0 {
        return 0;
    }
    let chain = sturm_chain(p);
    let at_neg = chain.iter().map(|q| {
        let s = sign(&q.leading());
        if q.degree() % 2 == 1 {
            -s
        } else {
            s
        }
    });
    let at_pos = chain.iter().map(|q| sign(&q.leading()));
    sign_changes(at_neg) - sign_changes(at_pos)
}

/// Exact strict-definiteness verdict on the whole real line.
pub fn sturm_sign(p: &Poly1) -> SignVerdict {
    if p.is_zero() {
        return SignVerdict::IdenticallyZero;
    }
    if p.degree() % 2 == 1 || count_real_roots(p) > 0 {
        return SignVerdict::Indefinite;
    }
    if p.leading().is_positive() {
        SignVerdict::PositiveDefinite
    } else {
        SignVerdict::NegativeDefinite
    }
}

/// [`sturm_sign`] on floating coefficients (lowest first), converted exactly.
pub fn sturm_sign_f64(coeffs: &[f64]) -> SignVerdict {
    sturm_sign(&Poly1::from_f64(coeffs))
}
