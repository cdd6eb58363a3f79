use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::f2::f2d_symbolic;
use super::family::param_count;
use super::polyd::PolyD;
use crate::diffpoly::MPoly;

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalOptions {
    pub max_iter: usize,
    /// Stop when the max-norm of `∂_λF₂` falls below this.
    pub tol: f64,
    /// Required bound on `|E − V(x*)|` and `|∇V(x*)|`.
    pub verify_tol: f64,
}

impl Default for CriticalOptions {
    fn default() -> Self {
        CriticalOptions { max_iter: 200, tol: 1e-13, verify_tol: 1e-8 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CriticalResiduals {
    /// `max_i |∂_{λ_i} F₂|`.
    pub system: f64,
    pub energy: f64,
    pub gradient: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalPoint {
    pub x: Vec<f64>,
    #[serde(rename = "E")]
    pub energy: f64,
    pub residuals: CriticalResiduals,
    /// Both `|E − V|` and `|∇V|` are within the verification tolerance.
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CriticalOutcome {
    pub guess: Vec<f64>,
    pub point: Option<CriticalPoint>,
    pub iterations: usize,
    pub residual: f64,
}

struct System {
    eqs: Vec<MPoly>,
    jac: Vec<Vec<MPoly>>,
}

impl System {
    /// `∂_λF₂ = 0` as polynomials in `(x, E)`; `F₂` is linear in `λ`, so
    /// these do not depend on `λ`.
    fn new(v: &PolyD) -> Self {
        let d = v.dim();
        let p = param_count(d);
        let f = f2d_symbolic(v);
        let mut at_zero: Vec<Option<crate::diffpoly::Rational>> = vec![None; d + 1];
        at_zero.extend((0..p).map(|_| Some(num_traits::Zero::zero())));
        let eqs: Vec<MPoly> = (0..p).map(|i| f.derivative(d + 1 + i).partial_eval(&at_zero)).collect();
        let jac = eqs.iter().map(|g| (0..=d).map(|j| g.derivative(j)).collect()).collect();
        System { eqs, jac }
    }

    fn residual(&self, z: &[f64]) -> DVector<f64> {
        DVector::from_iterator(self.eqs.len(), self.eqs.iter().map(|g| g.eval_f64(z)))
    }

    fn jacobian(&self, z: &[f64]) -> DMatrix<f64> {
        DMatrix::from_fn(self.eqs.len(), z.len(), |i, j| self.jac[i][j].eval_f64(z))
    }
}

fn solve(sys: &System, guess: &[f64], opts: &CriticalOptions) -> (Vec<f64>, usize, f64) {
    let mut z = guess.to_vec();
    let mut r = sys.residual(&z);
    let mut mu = 1e-3;
    let n = z.len();
    for it in 0..opts.max_iter {
        if r.amax() <= opts.tol {
            return (z, it, r.amax());
        }
        let j = sys.jacobian(&z);
        let jtj = j.transpose() * &j;
        let g = j.transpose() * &r;
        let mut accepted = false;
        for _ in 0..30 {
            let mut a = jtj.clone();
            for k in 0..n {
                a[(k, k)] += mu * (1.0 + jtj[(k, k)]);
            }
            let Some(step) = a.lu().solve(&(-&g)) else {
                mu *= 10.0;
                continue;
            };
            let trial: Vec<f64> = z.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
            let rt = sys.residual(&trial);
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
            return (z, it, r.amax());
        }
    }
    let res = r.amax();
    (z, opts.max_iter, res)
}

/// Solve `∂_λF₂(x, E) = 0` by damped Gauss–Newton from each guess
/// `(x¹..x^d, E)` and check the solutions against `E = V(x)`, `∇V(x) = 0`.
pub fn critical_reduction(v: &PolyD, guesses: &[Vec<f64>], opts: &CriticalOptions) -> Vec<CriticalOutcome> {
    if guesses.is_empty() {
        return Vec::new();
    }
    let d = v.dim();
    let sys = System::new(v);
    let grad = v.gradient();
    guesses
        .iter()
        .map(|g| {
            assert_eq!(g.len(), d + 1, "a guess is (x¹..x^d, E)");
            let (z, iterations, residual) = solve(&sys, g, opts);
            let point = (residual <= opts.tol.max(1e-10)).then(|| {
                let x = z[..d].to_vec();
                let energy = z[d];
                let e_res = (energy - v.eval(&x)).abs();
                let g_res = grad.iter().map(|p| p.eval(&x).abs()).fold(0.0, f64::max);
                CriticalPoint {
                    verified: e_res <= opts.verify_tol && g_res <= opts.verify_tol,
                    x,
                    energy,
                    residuals: CriticalResiduals { system: residual, energy: e_res, gradient: g_res },
                }
            });
            CriticalOutcome { guess: g.clone(), point, iterations, residual }
        })
        .collect()
}
