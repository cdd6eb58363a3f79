//! Gap boundaries as double-root creation points: `F = ∂ₓF = ∂_λF = 0`.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use thiserror::Error;

use crate::diffpoly::ParamPoly;

#[derive(Clone, Debug, PartialEq)]
pub struct BifurcationOptions {
    pub max_iter: usize,
    /// Required max-norm of the full residual `(F, ∂ₓF, ∂_λF)`.
    pub tol: f64,
    /// Threshold on `|∂_E F|·|∂²ₓₓF|` for the nondegeneracy flag.
    pub nondegeneracy_threshold: f64,
}

impl Default for BifurcationOptions {
    fn default() -> Self {
        BifurcationOptions { max_iter: 500, tol: 1e-10, nondegeneracy_threshold: 1e-8 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BifurcationPoint {
    pub x_star: f64,
    pub e_star: f64,
    pub lambda_star: Vec<f64>,
    /// `|F|`, `|∂ₓF|`, `max_i |∂_{λ_i}F|`.
    pub residuals: [f64; 3],
    /// `|∂_E F|·|∂²ₓₓF|` at the solution.
    pub nondegeneracy: f64,
    pub nondegenerate: bool,
    /// Index of the `λ` component held fixed because `F` is homogeneous of
    /// degree one in `λ`; the overall scale of `λ` is then undetermined.
    pub lambda_scale_fixed: Option<usize>,
    pub iterations: usize,
}

#[derive(Clone, Debug, Error, PartialEq)]
#[error("bifurcation solve did not converge after {iterations} iterations (residual {residual:e})")]
pub struct BifurcationFailure {
    pub iterations: usize,
    pub residual: f64,
    pub last: BifurcationPoint,
}

struct System {
    eqs: Vec<ParamPoly>,
    jac: Vec<Vec<ParamPoly>>,
    full: Vec<ParamPoly>,
    fixed: Option<usize>,
    nparams: usize,
}

impl System {
    fn new(f: &ParamPoly, guess_lambda: &[f64]) -> Self {
        let p = f.nparams();
        let mut full = vec![f.clone(), f.d_x()];
        full.extend((0..p).map(|i| f.d_lambda(i)));
        // Euler: F = Σ λ_i ∂_λi F, so F = 0 is implied and the scale is free
        let fixed = (f.is_linear_homogeneous_in_lambda())
            .then(|| (0..p).max_by(|&a, &b| guess_lambda[a].abs().total_cmp(&guess_lambda[b].abs())).unwrap_or(0));
        let eqs: Vec<ParamPoly> = if fixed.is_some() { full[1..].to_vec() } else { full.clone() };
        let jac = eqs
            .iter()
            .map(|g| {
                let mut row = vec![g.d_x(), g.d_e()];
                row.extend((0..p).filter(|&i| Some(i) != fixed).map(|i| g.d_lambda(i)));
                row
            })
            .collect();
        System { eqs, jac, full, fixed, nparams: p }
    }

    fn unpack(&self, z: &[f64], fixed_value: f64) -> (f64, f64, Vec<f64>) {
        let mut lambda = Vec::with_capacity(self.nparams);
        let mut k = 2;
        for i in 0..self.nparams {
            if Some(i) == self.fixed {
                lambda.push(fixed_value);
            } else {
                lambda.push(z[k]);
                k += 1;
            }
        }
        (z[0], z[1], lambda)
    }

    fn residual(&self, x: f64, e: f64, l: &[f64]) -> DVector<f64> {
        DVector::from_iterator(self.eqs.len(), self.eqs.iter().map(|g| g.eval(x, e, l)))
    }

    fn jacobian(&self, x: f64, e: f64, l: &[f64]) -> DMatrix<f64> {
        let cols = self.jac[0].len();
        DMatrix::from_fn(self.eqs.len(), cols, |i, j| self.jac[i][j].eval(x, e, l))
    }

    fn full_residuals(&self, x: f64, e: f64, l: &[f64]) -> [f64; 3] {
        let v: Vec<f64> = self.full.iter().map(|g| g.eval(x, e, l).abs()).collect();
        [v[0], v[1], v[2..].iter().copied().fold(0.0, f64::max)]
    }
}

/// Damped Gauss–Newton (Levenberg–Marquardt) on the bifurcation system from
/// `(x, E, λ)`. When `F` is linear and homogeneous in `λ`, the largest guess
/// component is held fixed and the implied equation `F = 0` is dropped.
pub fn bifurcation_solve(
    f: &ParamPoly,
    x: f64,
    energy: f64,
    lambda: &[f64],
    opts: &BifurcationOptions,
) -> Result<BifurcationPoint, BifurcationFailure> {
    assert_eq!(lambda.len(), f.nparams(), "lambda arity mismatch");
    let sys = System::new(f, lambda);
    let fixed_value = sys.fixed.map(|i| lambda[i]).unwrap_or(0.0);
    let mut z = vec![x, energy];
    z.extend((0..lambda.len()).filter(|&i| Some(i) != sys.fixed).map(|i| lambda[i]));
    let n = z.len();

    let point = |z: &[f64], iterations: usize| {
        let (x, e, l) = sys.unpack(z, fixed_value);
        let residuals = sys.full_residuals(x, e, &l);
        let nondegeneracy = f.d_e().eval(x, e, &l).abs() * f.d_x().d_x().eval(x, e, &l).abs();
        BifurcationPoint {
            x_star: x,
            e_star: e,
            lambda_star: l,
            residuals,
            nondegeneracy,
            nondegenerate: nondegeneracy > opts.nondegeneracy_threshold,
            lambda_scale_fixed: sys.fixed,
            iterations,
        }
    };
    let max_res = |p: &BifurcationPoint| p.residuals.iter().copied().fold(0.0, f64::max);

    let mut mu = 1e-3;
    let (x0, e0, l0) = sys.unpack(&z, fixed_value);
    let mut r = sys.residual(x0, e0, &l0);
    for it in 0..opts.max_iter {
        let current = point(&z, it);
        if max_res(&current) <= opts.tol {
            return Ok(current);
        }
        let (xc, ec, lc) = sys.unpack(&z, fixed_value);
        let j = sys.jacobian(xc, ec, &lc);
        let jt = j.transpose();
        let jtj = &jt * &j;
        let g = &jt * &r;
        let mut accepted = false;
        for _ in 0..30 {
            let mut a = jtj.clone();
            for d in 0..n {
                a[(d, d)] += mu * (1.0 + jtj[(d, d)]);
            }
            let Some(step) = a.lu().solve(&(-&g)) else {
                mu *= 10.0;
                continue;
            };
            let trial: Vec<f64> = z.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
            let (xt, et, lt) = sys.unpack(&trial, fixed_value);
            let rt = sys.residual(xt, et, &lt);
            if rt.iter().all(|v| v.is_finite()) && rt.norm() < r.norm() {
                z = trial;
                r = rt;
                mu = (mu / 3.0).max(1e-15);
                accepted = true;
                break;
            }
            mu *= 4.0;
        }
        if !accepted {
            let last = point(&z, it);
            let residual = max_res(&last);
            if residual <= opts.tol {
                return Ok(last);
            }
            return Err(BifurcationFailure { iterations: it, residual, last });
        }
    }
    let last = point(&z, opts.max_iter);
    let residual = max_res(&last);
    if residual <= opts.tol {
        Ok(last)
    } else {
        Err(BifurcationFailure { iterations: opts.max_iter, residual, last })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::parse_family;
    use crate::diffpoly::rational::int;

    #[test]
    fn toy_double_root() {
        let f = parse_family("x^2").unwrap().sub(&ParamPoly::energy(0));
        let p = bifurcation_solve(&f, 0.3, 0.2, &[], &BifurcationOptions::default()).unwrap();
        assert!(p.x_star.abs() < 1e-9 && p.e_star.abs() < 1e-9);
        assert!(p.nondegenerate);
        assert_eq!(p.lambda_scale_fixed, None);
    }

    #[test]
    fn harmonic_linear_family() {
        // F = λ₁(4x² − 4E)
        let f =
            parse_family("4*l1*x^2").unwrap().sub(&ParamPoly::energy(1).mul(&ParamPoly::lambda(1, 0)).scale(&int(4)));
        let p = bifurcation_solve(&f, 0.2, -0.1, &[1.5], &BifurcationOptions::default()).unwrap();
        assert!(p.x_star.abs() < 1e-9 && p.e_star.abs() < 1e-9);
        assert_eq!(p.lambda_scale_fixed, Some(0));
        assert_eq!(p.lambda_star, vec![1.5]);
        assert!(p.residuals.iter().all(|r| *r <= 1e-10));
    }

    #[test]
    fn reports_failure() {
        // x² + 1 + E² never vanishes
        let e = ParamPoly::energy(0);
        let f = parse_family("x^2 + 1").unwrap().add(&e.mul(&e));
        let err = bifurcation_solve(&f, 0.5, 0.5, &[], &BifurcationOptions { max_iter: 50, ..Default::default() })
            .unwrap_err();
        assert!(err.residual > 0.5);
    }
}
