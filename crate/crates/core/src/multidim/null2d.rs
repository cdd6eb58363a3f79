use serde::Serialize;
use thiserror::Error;

use super::f2::f2d_general;
use super::family::check_constraints;
use super::polyd::{PolyD, VectorFieldD};
use crate::diffpoly::MPoly;
use crate::gapcert::real_roots;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum Null2dError {
    #[error("the null result is stated for d = 2")]
    Dimension,
    #[error("vector field violates the Cauchy–Riemann constraints")]
    Inadmissible,
    #[error("sublevel set {{V ≤ {0}}} escapes every bounding box up to half-width {1}")]
    Unbounded(f64, f64),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Null2dResult {
    pub energy: f64,
    /// `∬_{V ≤ E} F₂ dx dy`.
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    /// Half-width of the square on whose boundary `V > E`.
    pub half_width: f64,
}

const MAX_HALF_WIDTH: f64 = 1e4;

/// Reference cases `(V, [h₁, h₂], E)` on which the level-set integral must
/// vanish.
pub const D2_CASES: [(&str, [&str; 2], f64); 5] = [
    ("1/2*x1^2 + 1/2*x2^2", ["x1", "x2"], 1.0),
    ("1/2*x1^2 + 1/2*x2^2", ["1", "0"], 0.7),
    ("x1^4 + x2^4 - x1^2 + x1*x2", ["x1^2 - x2^2", "2*x1*x2"], 1.5),
    ("x1^4 + x2^4 - x1^2 + x1*x2", ["x2", "-x1"], 0.3),
    ("x1^2 + x2^2 + 1", ["x1", "x2"], 0.5),
];

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, a| acc * x + a)
}

fn min_on_segment(c: &[f64], a: f64, b: f64) -> f64 {
    let dc: Vec<f64> = c.iter().enumerate().skip(1).map(|(i, v)| v * i as f64).collect();
    real_roots(&dc)
        .into_iter()
        .filter(|r| *r > a && *r < b)
        .chain([a, b])
        .map(|x| horner(c, x))
        .fold(f64::INFINITY, f64::min)
}

/// Coefficients in `x` (slot 0) as polynomials in the remaining slots.
fn x_coefficients(p: &MPoly) -> Vec<MPoly> {
    p.coefficients_in(0)
}

struct Integrand {
    f_coeffs: Vec<MPoly>,
    v_coeffs: Vec<MPoly>,
    energy: f64,
    half_width: f64,
}

impl Integrand {
    fn at_y(coeffs: &[MPoly], y: f64, energy: f64) -> Vec<f64> {
        coeffs.iter().map(|c| c.eval_f64(&[0.0, y, energy])).collect()
    }

    /// `∫ F₂(x, y) dx` over `{x : V(x, y) ≤ E}`, exact for each interval.
    fn inner(&self, y: f64) -> f64 {
        let r = self.half_width;
        let mut vc = Self::at_y(&self.v_coeffs, y, self.energy);
        vc[0] -= self.energy;
        let fc = Self::at_y(&self.f_coeffs, y, self.energy);
        let anti: Vec<f64> =
            std::iter::once(0.0).chain(fc.iter().enumerate().map(|(i, c)| c / (i + 1) as f64)).collect();
        let mut knots = vec![-r];
        knots.extend(real_roots(&vc).into_iter().filter(|x| x.abs() < r));
        knots.push(r);
        knots
            .windows(2)
            .filter(|w| horner(&vc, 0.5 * (w[0] + w[1])) <= 0.0)
            .map(|w| horner(&anti, w[1]) - horner(&anti, w[0]))
            .sum()
    }
}

const GK_X: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const GK_WK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const GK_WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

/// Kronrod estimate and `|Kronrod − Gauss|` on `[a, b]`.
fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = GK_WK[7] * fc;
    let mut g = GK_WG[3] * fc;
    for i in 0..7 {
        let (f1, f2) = (f(c - h * GK_X[i]), f(c + h * GK_X[i]));
        k += GK_WK[i] * (f1 + f2);
        if i % 2 == 1 {
            g += GK_WG[i / 2] * (f1 + f2);
        }
    }
    (k * h, (k - g).abs() * h)
}

fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32, evals: &mut usize) -> (f64, f64) {
    *evals += 15;
    let (val, err) = gk15(f, a, b);
    if err <= tol || depth == 0 || b - a < 1e-12 {
        return (val, err);
    }
    let m = 0.5 * (a + b);
    let (l, el) = adaptive(f, a, m, 0.5 * tol, depth - 1, evals);
    let (r, er) = adaptive(f, m, b, 0.5 * tol, depth - 1, evals);
    (l + r, el + er)
}

/// Integrate `F₂ = −∂_μ(v h^μ)` over the sublevel set `{V ≤ E}` in the
/// plane: exactly in `x` between the roots of `V(·, y) − E`, adaptively in
/// `y` to absolute tolerance `tol`.
pub fn null_result_2d(v: &PolyD, h: &VectorFieldD, energy: f64, tol: f64) -> Result<Null2dResult, Null2dError> {
    if v.dim() != 2 || h.dim() != 2 {
        return Err(Null2dError::Dimension);
    }
    if !check_constraints(h) {
        return Err(Null2dError::Inadmissible);
    }
    let vm = v.embed(3);
    let on_edges_above = |r: f64| {
        let along = |fixed: usize, value: f64| -> Vec<f64> {
            let mut at = [None, None];
            at[fixed] = Some(crate::diffpoly::rational::from_f64(value));
            crate::diffpoly::Poly1::from_mpoly(&v.as_mpoly().partial_eval(&at)).to_f64_coeffs()
        };
        [(0, r), (0, -r), (1, r), (1, -r)].iter().all(|&(i, s)| {
            let c = along(i, s);
            let c = if c.is_empty() { vec![0.0] } else { c };
            min_on_segment(&c, -r, r) > energy
        })
    };
    let mut r = 1.0;
    while !on_edges_above(r) {
        r *= 2.0;
        if r > MAX_HALF_WIDTH {
            return Err(Null2dError::Unbounded(energy, MAX_HALF_WIDTH));
        }
    }
    let f2 = f2d_general(v, h);
    let integrand = Integrand { f_coeffs: x_coefficients(&f2), v_coeffs: x_coefficients(&vm), energy, half_width: r };
    let mut evaluations = 0;
    let (value, error_estimate) = adaptive(&|y| integrand.inner(y), -r, r, tol, 40, &mut evaluations);
    Ok(Null2dResult { energy, value, error_estimate, evaluations, half_width: r })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(a: &str, b: &str) -> VectorFieldD {
        VectorFieldD::new(vec![PolyD::parse(a, 2).unwrap(), PolyD::parse(b, 2).unwrap()])
    }

    #[test]
    fn harmonic_radial_field() {
        let v = PolyD::parse("1/2*x1^2 + 1/2*x2^2", 2).unwrap();
        let r = null_result_2d(&v, &field("x1", "x2"), 1.0, 1e-10).unwrap();
        assert!(r.value.abs() < 1e-8, "{r:?}");
    }

    #[test]
    fn constant_field() {
        let v = PolyD::parse("x1^4 + x2^2 + x1*x2", 2).unwrap();
        let r = null_result_2d(&v, &field("1", "0"), 0.8, 1e-10).unwrap();
        assert!(r.value.abs() < 1e-8, "{r:?}");
    }

    #[test]
    fn empty_region() {
        let v = PolyD::parse("x1^2 + x2^2 + 1", 2).unwrap();
        let r = null_result_2d(&v, &field("x1", "x2"), 0.5, 1e-10).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn errors() {
        let v = PolyD::parse("x1^2 - x2^2", 2).unwrap();
        assert!(matches!(null_result_2d(&v, &field("x1", "x2"), 1.0, 1e-6), Err(Null2dError::Unbounded(..))));
        let v = PolyD::parse("x1^2 + x2^2", 2).unwrap();
        assert_eq!(null_result_2d(&v, &field("x1", "0"), 1.0, 1e-6), Err(Null2dError::Inadmissible));
    }
}
