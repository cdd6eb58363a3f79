use std::fmt;

use crate::diffpoly::rational::Rational;
use crate::diffpoly::{parse_mpoly, MPoly, ParseError};

/// Polynomial in `x¹..x^d` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyD {
    poly: MPoly,
}

pub fn var_names(d: usize) -> Vec<String> {
    (1..=d).map(|i| format!("x{i}")).collect()
}

impl PolyD {
    pub fn zero(d: usize) -> Self {
        PolyD { poly: MPoly::zero(d) }
    }

    pub fn constant(d: usize, c: Rational) -> Self {
        PolyD { poly: MPoly::constant(d, c) }
    }

    pub fn var(d: usize, i: usize) -> Self {
        PolyD { poly: MPoly::var(d, i) }
    }

    pub fn from_mpoly(poly: MPoly) -> Self {
        PolyD { poly }
    }

    /// Parse with variables `x1..xd`.
    pub fn parse(text: &str, d: usize) -> Result<Self, ParseError> {
        let names = var_names(d);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        parse_mpoly(text, &refs).map(PolyD::from_mpoly)
    }

    /// `x² = Σ (x^μ)²`.
    pub fn norm_sq(d: usize) -> Self {
        let mut p = MPoly::zero(d);
        for i in 0..d {
            p = &p + &MPoly::var(d, i).pow(2);
        }
        PolyD { poly: p }
    }

    pub fn dim(&self) -> usize {
        self.poly.nvars()
    }

    pub fn as_mpoly(&self) -> &MPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn total_degree(&self) -> u32 {
        self.poly.total_degree()
    }

    pub fn add(&self, o: &PolyD) -> PolyD {
        PolyD { poly: &self.poly + &o.poly }
    }

    pub fn sub(&self, o: &PolyD) -> PolyD {
        PolyD { poly: &self.poly - &o.poly }
    }

    pub fn mul(&self, o: &PolyD) -> PolyD {
        PolyD { poly: &self.poly * &o.poly }
    }

    pub fn scale(&self, c: &Rational) -> PolyD {
        PolyD { poly: self.poly.scale(c) }
    }

    pub fn derivative(&self, i: usize) -> PolyD {
        PolyD { poly: self.poly.derivative(i) }
    }

    pub fn gradient(&self) -> Vec<PolyD> {
        (0..self.dim()).map(|i| self.derivative(i)).collect()
    }

    pub fn laplacian(&self) -> PolyD {
        let mut out = PolyD::zero(self.dim());
        for i in 0..self.dim() {
            out = out.add(&self.derivative(i).derivative(i));
        }
        out
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.poly.eval_f64(x)
    }

    /// Embed into `nvars ≥ d` variables, keeping `x^μ` in slot `μ`.
    pub fn embed(&self, nvars: usize) -> MPoly {
        let map: Vec<usize> = (0..self.dim()).collect();
        self.poly.embed(nvars, &map)
    }
}

impl fmt::Display for PolyD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = var_names(self.dim());
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        write!(f, "{}", self.poly.to_string_with(&refs))
    }
}

/// Components `h^1..h^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorFieldD {
    pub components: Vec<PolyD>,
}

impl VectorFieldD {
    pub fn new(components: Vec<PolyD>) -> Self {
        let d = components.len();
        assert!(components.iter().all(|c| c.dim() == d), "components must live in d variables");
        VectorFieldD { components }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn divergence(&self) -> PolyD {
        let mut out = PolyD::zero(self.dim());
        for (i, c) in self.components.iter().enumerate() {
            out = out.add(&c.derivative(i));
        }
        out
    }

    pub fn max_degree(&self) -> u32 {
        self.components.iter().filter(|c| !c.is_zero()).map(PolyD::total_degree).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(PolyD::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> VectorFieldD {
        VectorFieldD { components: self.components.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn sub(&self, o: &VectorFieldD) -> VectorFieldD {
        VectorFieldD { components: self.components.iter().zip(&o.components).map(|(a, b)| a.sub(b)).collect() }
    }
}

pub(crate) fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}
