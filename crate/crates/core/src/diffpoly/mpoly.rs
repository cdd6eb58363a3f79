//! Sparse multivariate polynomials with exact rational coefficients over a
//! fixed number of variables.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{fmt_coefficient, fmt_plain, int, to_f64, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = MPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        MPoly::constant(nvars, Rational::one())
    }

    /// The polynomial consisting of variable `i` alone.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = MPoly::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut out = MPoly::one(self.nvars);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn derivative(&self, var: usize) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, c * int(e[var] as i64));
        }
        out
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Total degree restricted to the variables in `vars`.
    pub fn degree_in_vars(&self, vars: std::ops::Range<usize>) -> u32 {
        self.terms.keys().map(|e| e[vars.clone()].iter().sum()).max().unwrap_or(0)
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        debug_assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = to_f64(c);
                for (x, &k) in point.iter().zip(e) {
                    if k > 0 {
                        t *= x.powi(k as i32);
                    }
                }
                t
            })
            .sum()
    }

    pub fn eval_exact(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute exact values for some variables and keep the others in
    /// their original order.
    pub fn partial_eval(&self, values: &[Option<Rational>]) -> MPoly {
        debug_assert_eq!(values.len(), self.nvars);
        let keep: Vec<usize> = (0..self.nvars).filter(|&i| values[i].is_none()).collect();
        let mut out = MPoly::zero(keep.len());
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    for _ in 0..e[i] {
                        t *= v;
                    }
                }
            }
            out.add_term(keep.iter().map(|&i| e[i]).collect(), t);
        }
        out
    }

    /// Re-embed into a polynomial ring with `nvars` variables; variable `i`
    /// of `self` becomes variable `map[i]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> MPoly {
        debug_assert_eq!(map.len(), self.nvars);
        let mut out = MPoly::zero(nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; nvars];
            for (i, &k) in e.iter().enumerate() {
                e2[map[i]] += k;
            }
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Replace variable `var` by the polynomial `value` (same ring).
    pub fn compose_var(&self, var: usize, value: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        let mut powers: Vec<MPoly> = vec![MPoly::one(self.nvars)];
        for (e, c) in &self.terms {
            while powers.len() <= e[var] as usize {
                let next = powers.last().map(|p| p * value).unwrap_or_else(|| MPoly::one(self.nvars));
                powers.push(next);
            }
            let mut base = e.clone();
            base[var] = 0;
            let mono = MPoly { nvars: self.nvars, terms: BTreeMap::from([(base, c.clone())]) };
            out = &out + &(&mono * &powers[e[var] as usize]);
        }
        out
    }

    /// Coefficients of `self` seen as a polynomial in `var`, lowest degree first.
    pub fn coefficients_in(&self, var: usize) -> Vec<MPoly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![MPoly::zero(self.nvars); deg + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[var] = 0;
            out[e[var] as usize].add_term(e2, c.clone());
        }
        out
    }

    /// Human-readable form using the given variable names.
    pub fn to_string_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        // highest total degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (e, c) in terms {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names[i].to_string() } else { format!("{}^{k}", names[i]) })
                .collect();
            if mono.is_empty() {
                parts.push(if c.is_integer() && c >= &Rational::zero() {
                    fmt_plain(c)
                } else {
                    format!("({})", fmt_plain(c))
                });
            } else if c.is_one() {
                parts.push(mono.join("*"));
            } else {
                parts.push(format!("{}*{}", fmt_coefficient(c), mono.join("*")));
            }
        }
        parts.join(" + ")
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rational::one())
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::rational::ratio;

    #[test]
    fn arithmetic_and_derivative() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let p = &(&x * &x) + &(&y.scale(&int(3)) * &x);
        assert_eq!(p.derivative(0), &x.scale(&int(2)) + &y.scale(&int(3)));
        assert_eq!(p.derivative(1), x.scale(&int(3)));
        assert_eq!(p.eval_f64(&[2.0, 1.0]), 10.0);
        assert_eq!(p.to_string_with(&["x", "y"]), "x^2 + 3*x*y");
    }

    #[test]
    fn partial_eval_and_compose() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let p = &(&x * &y) + &y;
        let q = p.partial_eval(&[Some(ratio(1, 2)), None]);
        assert_eq!(q, MPoly::var(1, 0).scale(&ratio(3, 2)));
        let r = p.compose_var(1, &x);
        assert_eq!(r, &(&x * &x) + &x);
    }
}
