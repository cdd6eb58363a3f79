use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::mpoly::MPoly;
use super::rational::{from_f64, int, to_f64, Rational};

/// Dense univariate polynomial in `x` with exact coefficients, lowest degree
/// first. Trailing zero coefficients are trimmed; the zero polynomial has no
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly1 {
    coeffs: Vec<Rational>,
}

impl Poly1 {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly1 { coeffs }
    }

    pub fn zero() -> Self {
        Poly1::default()
    }

    pub fn constant(c: Rational) -> Self {
        Poly1::new(vec![c])
    }

    pub fn x() -> Self {
        Poly1::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly1::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// Exact rationalization of floating coefficients.
    pub fn from_f64(coeffs: &[f64]) -> Self {
        Poly1::new(coeffs.iter().map(|&c| from_f64(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn derivative(&self) -> Poly1 {
        Poly1::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }

    pub fn scale(&self, c: &Rational) -> Poly1 {
        Poly1::new(self.coeffs.iter().map(|k| k * c).collect())
    }

    /// Remainder of Euclidean division by a nonzero divisor.
    pub fn rem(&self, divisor: &Poly1) -> Poly1 {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let dl = divisor.leading();
        let dd = divisor.degree();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let q = &r[top] / &dl;
            if !q.is_zero() {
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    r[top - dd + i] -= &q * c;
                }
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Poly1::new(r)
    }

    /// Divide by the gcd of the numerators over the lcm of the denominators,
    /// keeping the sign. Leaves real roots and signs untouched.
    pub fn primitive(&self) -> Poly1 {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut g = num_bigint::BigInt::zero();
        let mut l = num_bigint::BigInt::one();
        for c in &self.coeffs {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        let factor = Rational::new(l, g.abs());
        self.scale(&factor)
    }

    pub fn to_mpoly(&self) -> MPoly {
        let mut p = MPoly::zero(1);
        for (i, c) in self.coeffs.iter().enumerate() {
            p.add_term(vec![i as u32], c.clone());
        }
        p
    }

    pub fn from_mpoly(p: &MPoly) -> Poly1 {
        assert_eq!(p.nvars(), 1);
        let mut c = vec![Rational::zero(); p.degree_in(0) as usize + 1];
        for (e, k) in p.terms() {
            c[e[0] as usize] = k.clone();
        }
        Poly1::new(c)
    }
}

impl fmt::Display for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_mpoly().to_string_with(&["x"]))
    }
}

impl Add for &Poly1 {
    type Output = Poly1;
    fn add(self, rhs: &Poly1) -> Poly1 {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly1::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
                    let b = rhs.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
                    a + b
                })
                .collect(),
        )
    }
}

impl Neg for &Poly1 {
    type Output = Poly1;
    fn neg(self) -> Poly1 {
        Poly1::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &Poly1 {
    type Output = Poly1;
    fn sub(self, rhs: &Poly1) -> Poly1 {
        self + &(-rhs)
    }
}

impl Mul for &Poly1 {
    type Output = Poly1;
    fn mul(self, rhs: &Poly1) -> Poly1 {
        if self.is_zero() || rhs.is_zero() {
            return Poly1::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly1::new(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::rational::ratio;

    #[test]
    fn trims_and_reports_degree() {
        let p = Poly1::from_i64(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), 1);
        assert!(Poly1::from_i64(&[0, 0]).is_zero());
    }

    #[test]
    fn remainder() {
        // x^3 - 1 = (x - 1)(x^2 + x + 1)
        let p = Poly1::from_i64(&[-1, 0, 0, 1]);
        let d = Poly1::from_i64(&[-1, 1]);
        assert!(p.rem(&d).is_zero());
        let r = Poly1::from_i64(&[1, 0, 1]).rem(&Poly1::from_i64(&[0, 2]));
        assert_eq!(r, Poly1::constant(int(1)));
    }

    #[test]
    fn primitive_keeps_sign() {
        let p = Poly1::new(vec![ratio(-1, 2), ratio(3, 4)]);
        assert_eq!(p.primitive(), Poly1::from_i64(&[-2, 3]));
    }

    #[test]
    fn display() {
        assert_eq!(Poly1::new(vec![ratio(7, 4), int(-3), ratio(1, 2)]).to_string(), "(1/2)*x^2 + (-3)*x + (7/4)");
    }
}
