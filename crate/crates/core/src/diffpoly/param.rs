//! Polynomials in `x` whose coefficients are polynomials in the energy `E`
//! and in control parameters `λ₁..λ_p`.

use std::fmt;

use num_traits::Zero;

use super::mpoly::MPoly;
use super::poly1::Poly1;
use super::rational::{from_f64, to_f64, Rational};

pub const X: usize = 0;
pub const E: usize = 1;

/// Variable layout `[x, E, λ₁, …, λ_p]` over an [`MPoly`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamPoly {
    poly: MPoly,
}

impl ParamPoly {
    pub fn zero(nparams: usize) -> Self {
        ParamPoly { poly: MPoly::zero(2 + nparams) }
    }

    pub fn from_mpoly(poly: MPoly) -> Self {
        assert!(poly.nvars() >= 2, "a parametrized polynomial needs x and E slots");
        ParamPoly { poly }
    }

    pub fn x(nparams: usize) -> Self {
        ParamPoly { poly: MPoly::var(2 + nparams, X) }
    }

    pub fn energy(nparams: usize) -> Self {
        ParamPoly { poly: MPoly::var(2 + nparams, E) }
    }

    pub fn lambda(nparams: usize, i: usize) -> Self {
        assert!(i < nparams);
        ParamPoly { poly: MPoly::var(2 + nparams, 2 + i) }
    }

    pub fn constant(nparams: usize, c: Rational) -> Self {
        ParamPoly { poly: MPoly::constant(2 + nparams, c) }
    }

    /// A polynomial in `x` alone, embedded with `nparams` parameter slots.
    pub fn from_poly1(p: &Poly1, nparams: usize) -> Self {
        ParamPoly { poly: p.to_mpoly().embed(2 + nparams, &[X]) }
    }

    pub fn nparams(&self) -> usize {
        self.poly.nvars() - 2
    }

    pub fn as_mpoly(&self) -> &MPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, other: &ParamPoly) -> ParamPoly {
        ParamPoly { poly: &self.poly + &other.poly }
    }

    pub fn sub(&self, other: &ParamPoly) -> ParamPoly {
        ParamPoly { poly: &self.poly - &other.poly }
    }

    pub fn mul(&self, other: &ParamPoly) -> ParamPoly {
        ParamPoly { poly: &self.poly * &other.poly }
    }

    pub fn scale(&self, c: &Rational) -> ParamPoly {
        ParamPoly { poly: self.poly.scale(c) }
    }

    pub fn pow(&self, e: u32) -> ParamPoly {
        ParamPoly { poly: self.poly.pow(e) }
    }

    pub fn neg(&self) -> ParamPoly {
        ParamPoly { poly: -&self.poly }
    }

    pub fn d_x(&self) -> ParamPoly {
        ParamPoly { poly: self.poly.derivative(X) }
    }

    pub fn d_e(&self) -> ParamPoly {
        ParamPoly { poly: self.poly.derivative(E) }
    }

    pub fn d_lambda(&self, i: usize) -> ParamPoly {
        ParamPoly { poly: self.poly.derivative(2 + i) }
    }

    pub fn degree_x(&self) -> u32 {
        self.poly.degree_in(X)
    }

    pub fn degree_e(&self) -> u32 {
        self.poly.degree_in(E)
    }

    /// True when every term has total degree exactly one in the parameters,
    /// i.e. `F(x, E, cλ) = c F(x, E, λ)`.
    pub fn is_linear_homogeneous_in_lambda(&self) -> bool {
        let p = self.nparams();
        p > 0 && !self.is_zero() && self.poly.terms().all(|(e, _)| e[2..2 + p].iter().sum::<u32>() == 1)
    }

    /// Exact specialization at fixed `E` and `λ`.
    pub fn at(&self, energy: &Rational, lambda: &[Rational]) -> Poly1 {
        assert_eq!(lambda.len(), self.nparams(), "parameter arity mismatch");
        let mut values = vec![None, Some(energy.clone())];
        values.extend(lambda.iter().cloned().map(Some));
        Poly1::from_mpoly(&self.poly.partial_eval(&values))
    }

    /// Exact specialization of floating inputs (each converted exactly).
    pub fn at_f64(&self, energy: f64, lambda: &[f64]) -> Poly1 {
        let l: Vec<Rational> = lambda.iter().map(|&v| from_f64(v)).collect();
        self.at(&from_f64(energy), &l)
    }

    /// Specialize only `λ`, keeping `x` and `E`; the result has no parameters.
    pub fn at_lambda(&self, lambda: &[Rational]) -> ParamPoly {
        assert_eq!(lambda.len(), self.nparams(), "parameter arity mismatch");
        let mut values = vec![None, None];
        values.extend(lambda.iter().cloned().map(Some));
        ParamPoly { poly: self.poly.partial_eval(&values) }
    }

    /// Specialize only `E`, keeping the parameters symbolic.
    pub fn at_energy(&self, energy: &Rational) -> ParamPoly {
        let mut values: Vec<Option<Rational>> = vec![None; self.poly.nvars()];
        values[E] = Some(energy.clone());
        let reduced = self.poly.partial_eval(&values);
        let mut map: Vec<usize> = vec![X];
        map.extend(2..self.poly.nvars());
        ParamPoly { poly: reduced.embed(self.poly.nvars(), &map) }
    }

    /// Replace `E` by `e0 + scale·t` where `t` takes the `E` slot.
    pub fn shift_energy(&self, e0: &Rational, scale: &Rational) -> ParamPoly {
        let n = self.poly.nvars();
        let t = &MPoly::constant(n, e0.clone()) + &MPoly::var(n, E).scale(scale);
        ParamPoly { poly: self.poly.compose_var(E, &t) }
    }

    pub fn eval(&self, x: f64, energy: f64, lambda: &[f64]) -> f64 {
        let mut pt = Vec::with_capacity(2 + lambda.len());
        pt.push(x);
        pt.push(energy);
        pt.extend_from_slice(lambda);
        self.poly.eval_f64(&pt)
    }

    /// Coefficients of `E^j` as polynomials in `x` and `λ`, `j = 0..=deg_E`.
    pub fn energy_coefficients(&self) -> Vec<ParamPoly> {
        self.poly.coefficients_in(E).into_iter().map(|poly| ParamPoly { poly }).collect()
    }

    /// Floating copy for fast repeated evaluation.
    pub fn to_float(&self) -> FloatParamPoly {
        let p = self.nparams();
        let deg = self.degree_x() as usize;
        let mut by_power: Vec<Vec<(f64, u32, Vec<u32>)>> = vec![Vec::new(); deg + 1];
        for (e, c) in self.poly.terms() {
            by_power[e[X] as usize].push((to_f64(c), e[E], e[2..2 + p].to_vec()));
        }
        FloatParamPoly { nparams: p, by_power }
    }

    pub fn names(nparams: usize) -> Vec<String> {
        let mut n = vec!["x".to_string(), "E".to_string()];
        n.extend((1..=nparams).map(|i| format!("l{i}")));
        n
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ParamPoly::names(self.nparams());
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        write!(f, "{}", self.poly.to_string_with(&refs))
    }
}

/// Double-precision view of a [`ParamPoly`] used inside search loops.
#[derive(Clone, Debug)]
pub struct FloatParamPoly {
    nparams: usize,
    by_power: Vec<Vec<(f64, u32, Vec<u32>)>>,
}

impl FloatParamPoly {
    pub fn nparams(&self) -> usize {
        self.nparams
    }

    /// Coefficients in `x` (lowest first) at fixed `E`, `λ`.
    pub fn coeffs_at(&self, energy: f64, lambda: &[f64]) -> Vec<f64> {
        debug_assert_eq!(lambda.len(), self.nparams);
        let mut out: Vec<f64> = self
            .by_power
            .iter()
            .map(|terms| {
                terms
                    .iter()
                    .map(|(c, ke, kl)| {
                        let mut t = *c * energy.powi(*ke as i32);
                        for (l, &k) in lambda.iter().zip(kl) {
                            if k > 0 {
                                t *= l.powi(k as i32);
                            }
                        }
                        t
                    })
                    .sum()
            })
            .collect();
        while out.last().is_some_and(|c| c.is_zero()) {
            out.pop();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::rational::{int, ratio};

    #[test]
    fn specialization() {
        // F = λ1 (4x² − 4E)
        let x = ParamPoly::x(1);
        let e = ParamPoly::energy(1);
        let l = ParamPoly::lambda(1, 0);
        let f = l.mul(&x.mul(&x).scale(&int(4)).sub(&e.scale(&int(4))));
        assert!(f.is_linear_homogeneous_in_lambda());
        let p = f.at(&int(-1), &[int(2)]);
        assert_eq!(p, Poly1::from_i64(&[8, 0, 8]));
        assert_eq!(f.to_float().coeffs_at(-1.0, &[2.0]), vec![8.0, 0.0, 8.0]);
        assert_eq!(f.eval(1.0, 0.5, &[1.0]), 2.0);
        assert_eq!(f.d_e().at(&int(0), &[int(1)]), Poly1::from_i64(&[-4]));
    }

    #[test]
    fn shift_energy_substitutes() {
        let e = ParamPoly::energy(0);
        let f = e.mul(&e);
        // (1/2 + 2t)^2 at t = 1 is 25/4
        let g = f.shift_energy(&ratio(1, 2), &int(2));
        assert_eq!(g.at(&int(1), &[]), Poly1::constant(ratio(25, 4)));
    }
}
