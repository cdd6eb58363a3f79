//! Polynomials in `φ′` and `φ` with differential-polynomial coefficients,
//! the interpretation `P_a(φ′, φ, x)` of an [`OpVector`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use super::opvector::OpVector;
use crate::diffpoly::rational::Rational;
use crate::diffpoly::DiffPoly;

/// `Σ c_{ij} φ′^i φ^j`, keyed by `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PhiPoly {
    terms: BTreeMap<(u32, u32), DiffPoly>,
}

impl PhiPoly {
    pub fn zero() -> Self {
        PhiPoly::default()
    }

    pub fn from_opvector(a: &OpVector) -> Self {
        let big_n = a.order() as u32;
        let mut p = PhiPoly::zero();
        for (n, c) in a.components().iter().enumerate() {
            p.add_term(big_n - n as u32, n as u32, c.clone());
        }
        p
    }

    /// `c · φ^N`.
    pub fn phi_power(order: u32, c: DiffPoly) -> Self {
        let mut p = PhiPoly::zero();
        p.add_term(0, order, c);
        p
    }

    pub fn add_term(&mut self, dphi: u32, phi: u32, c: DiffPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((dphi, phi)).or_insert_with(DiffPoly::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(dphi, phi));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &DiffPoly)> {
        self.terms.iter()
    }

    pub fn sub(&self, other: &PhiPoly) -> PhiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, -c);
        }
        out
    }

    /// Derivative along solutions, using `φ″ = vφ`:
    /// `D(c φ′^i φ^j) = c′ φ′^i φ^j + i c v φ′^(i−1) φ^(j+1) + j c φ′^(i+1) φ^(j−1)`.
    pub fn total_derivative(&self) -> PhiPoly {
        let v = DiffPoly::v(0);
        let mut out = PhiPoly::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j, c.derive());
            if i > 0 {
                out.add_term(i - 1, j + 1, (&v * c).scale_int(i as i64));
            }
            if j > 0 {
                out.add_term(i + 1, j - 1, c.scale_int(j as i64));
            }
        }
        out
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `Π₀ = Σ_n (−φ)^n/n! ∂_φ^n` acting on `Σ_k c_k φ^k` (coefficients lowest
/// first). Evaluated term by term; the result is the constant part `c₀`.
pub fn pi0_reduce(expr: &[DiffPoly]) -> Vec<DiffPoly> {
    let mut out: Vec<DiffPoly> = vec![DiffPoly::zero(); expr.len()];
    for n in 0..expr.len() as u32 {
        let weight = Rational::new(if n % 2 == 0 { BigInt::one() } else { -BigInt::one() }, factorial(n));
        // ∂_φ^n (c_k φ^k) = k!/(k−n)! c_k φ^(k−n); times φ^n gives back φ^k
        for (k, c) in expr.iter().enumerate().skip(n as usize) {
            let falling = Rational::from_integer(factorial(k as u32) / factorial(k as u32 - n));
            out[k] += c.scale(&(&weight * &falling));
        }
    }
    while out.len() > 1 && out.last().is_some_and(DiffPoly::is_zero) {
        out.pop();
    }
    if out.len() == 1 && out[0].is_zero() {
        out.clear();
    }
    out
}
