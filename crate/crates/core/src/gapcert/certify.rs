//! Certification of whole energy ranges with one fixed `λ`.
//!
//! On a segment `E = E_a + (E_b − E_a)t`, `t ∈ [0, 1]`, the certificate is
//! written in the Bernstein basis in `t`. The Bernstein basis functions are
//! non-negative and sum to one, so if every Bernstein coefficient (a
//! polynomial in `x`) is strictly definite with a common sign, so is `F` for
//! every `E` in the segment.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::sturm::{sturm_sign, SignVerdict};
use crate::diffpoly::rational::{from_f64, int, Rational};
use crate::diffpoly::{ParamPoly, Poly1};

fn binomial(n: usize, k: usize) -> BigInt {
    let mut b = BigInt::one();
    for i in 0..k {
        b = b * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    b
}

/// Coefficients of `E^j` (lowest first) as polynomials in `x`.
fn energy_slices(f: &ParamPoly) -> Vec<Poly1> {
    f.energy_coefficients().iter().map(|g| g.at(&Rational::zero(), &[])).collect()
}

fn common_sign(polys: impl IntoIterator<Item = Poly1>, allow_zero: bool) -> Option<SignVerdict> {
    let mut sign = None;
    for p in polys {
        let v = sturm_sign(&p);
        match v {
            SignVerdict::IdenticallyZero if allow_zero => continue,
            SignVerdict::PositiveDefinite | SignVerdict::NegativeDefinite => {
                if sign.is_some_and(|s| s != v) {
                    return None;
                }
                sign = Some(v);
            }
            _ => return None,
        }
    }
    sign
}

/// Exact check that `F(·, E, λ)` is strictly definite for every `E` in
/// `[e_a, e_b]`.
pub fn certify_segment(f: &ParamPoly, e_a: &Rational, e_b: &Rational, lambda: &[Rational]) -> Option<SignVerdict> {
    let g = f.at_lambda(lambda).shift_energy(e_a, &(e_b - e_a));
    let slices = energy_slices(&g);
    let d = slices.len() - 1;
    let bernstein = (0..=d).map(|k| {
        let mut b = Poly1::zero();
        for (j, s) in slices.iter().enumerate().take(k + 1) {
            let w = Rational::new(binomial(k, j), binomial(d, j));
            b = &b + &s.scale(&w);
        }
        b
    });
    common_sign(bernstein, false)
}

/// Exact check that `F(·, E, λ)` is strictly definite for every `E ≤ e0`:
/// with `E = e0 − s`, the `s⁰` slice must be definite and every other slice
/// zero or definite of the same sign.
pub fn certify_ray_below(f: &ParamPoly, e0: &Rational, lambda: &[Rational]) -> Option<SignVerdict> {
    let g = f.at_lambda(lambda).shift_energy(e0, &int(-1));
    let slices = energy_slices(&g);
    let first = sturm_sign(&slices[0]);
    if !first.is_definite() {
        return None;
    }
    if slices[1..].iter().all(Poly1::is_zero) {
        return Some(first);
    }
    match common_sign(slices.into_iter().skip(1), true) {
        Some(v) if v == first => Some(first),
        _ => None,
    }
}

/// Floating wrappers; inputs are converted exactly.
pub fn certify_segment_f64(f: &ParamPoly, e_a: f64, e_b: f64, lambda: &[f64]) -> Option<SignVerdict> {
    let l: Vec<Rational> = lambda.iter().map(|&v| from_f64(v)).collect();
    certify_segment(f, &from_f64(e_a), &from_f64(e_b), &l)
}

pub fn certify_ray_below_f64(f: &ParamPoly, e0: f64, lambda: &[f64]) -> Option<SignVerdict> {
    let l: Vec<Rational> = lambda.iter().map(|&v| from_f64(v)).collect();
    certify_ray_below(f, &from_f64(e0), &l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::parse_family;
    use crate::diffpoly::rational::ratio;

    // F = λ₁(4x² − 4E)
    fn harmonic_linear() -> ParamPoly {
        let x2 = parse_family("4*l1*x^2").unwrap();
        x2.sub(&ParamPoly::energy(1).mul(&ParamPoly::lambda(1, 0)).scale(&int(4)))
    }

    #[test]
    fn segment_below_zero_is_certified() {
        let f = harmonic_linear();
        assert_eq!(certify_segment(&f, &int(-2), &ratio(-1, 100), &[int(1)]), Some(SignVerdict::PositiveDefinite));
        assert_eq!(certify_segment(&f, &int(-2), &int(0), &[int(1)]), None);
        assert_eq!(certify_segment(&f, &int(-2), &int(1), &[int(-1)]), None);
    }

    #[test]
    fn ray_below() {
        let f = harmonic_linear();
        assert_eq!(certify_ray_below(&f, &ratio(-1, 100), &[int(-1)]), Some(SignVerdict::NegativeDefinite));
        assert_eq!(certify_ray_below(&f, &ratio(1, 100), &[int(1)]), None);
        // E-independent definite certificate
        let c = parse_family("x^2 + 1").unwrap();
        assert_eq!(certify_ray_below(&c, &int(5), &[]), Some(SignVerdict::PositiveDefinite));
    }

    #[test]
    fn quadratic_energy_dependence() {
        // F = x² + (E − 1)² + 1/10 is positive for all E, but not E-affine
        let f = parse_family("x^2 + 11/10").unwrap();
        let e = ParamPoly::energy(0);
        let f = f.add(&e.mul(&e)).sub(&e.scale(&int(2)));
        assert_eq!(certify_segment(&f, &int(0), &int(2), &[]), None);
        assert_eq!(certify_segment(&f, &int(0), &ratio(1, 2), &[]), Some(SignVerdict::PositiveDefinite));
        assert_eq!(certify_segment(&f, &ratio(3, 4), &ratio(5, 4), &[]), Some(SignVerdict::PositiveDefinite));
    }
}
