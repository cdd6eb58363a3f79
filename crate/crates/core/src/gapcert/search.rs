use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::margin::normalized_signed_margin;
use super::sturm::{sturm_sign, SignVerdict};
use crate::diffpoly::rational::{from_f64, Rational};
use crate::diffpoly::{FloatParamPoly, ParamPoly};

/// A parametrized certificate function with a cached floating copy.
#[derive(Clone, Debug)]
pub struct CertFamily {
    exact: ParamPoly,
    float: FloatParamPoly,
}

impl CertFamily {
    pub fn new(exact: ParamPoly) -> Self {
        let float = exact.to_float();
        CertFamily { exact, float }
    }

    pub fn exact(&self) -> &ParamPoly {
        &self.exact
    }

    pub fn nparams(&self) -> usize {
        self.exact.nparams()
    }

    /// Search objective at `(E, λ)`; positive iff `±F` is definite.
    pub fn score(&self, energy: f64, lambda: &[f64]) -> f64 {
        normalized_signed_margin(&self.float.coeffs_at(energy, lambda))
    }

    /// Exact verdict with `E` and `λ` rationalized exactly.
    pub fn verdict(&self, energy: f64, lambda: &[f64]) -> SignVerdict {
        let l: Vec<Rational> = lambda.iter().map(|&v| from_f64(v)).collect();
        sturm_sign(&self.exact.at(&from_f64(energy), &l))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Witness {
    pub energy: f64,
    pub lambda: Vec<f64>,
    pub verdict: SignVerdict,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    /// Grid points per parameter in the coarse scan.
    pub grid_resolution: usize,
    /// Upper bound on the total number of coarse grid points.
    pub max_grid_points: usize,
    pub random_samples: usize,
    /// Number of Nelder–Mead refinements started from the best samples.
    pub starts: usize,
    pub nelder_mead_iters: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            grid_resolution: 7,
            max_grid_points: 256,
            random_samples: 32,
            starts: 3,
            nelder_mead_iters: 120,
            seed: 0,
        }
    }
}

/// Round to a multiple of `2^-bits`. Witnesses are snapped before the exact
/// check so that Sturm sequences run on short dyadic rationals.
pub fn snap(x: f64, bits: i32) -> f64 {
    let scale = 2f64.powi(bits);
    (x * scale).round() / scale
}

pub const LAMBDA_BITS: i32 = 24;

fn box_is_empty(bounds: &[(f64, f64)]) -> bool {
    bounds.iter().any(|&(lo, hi)| !(lo <= hi) || !lo.is_finite() || !hi.is_finite())
}

fn clamp_into(p: &mut [f64], bounds: &[(f64, f64)]) {
    for (x, &(lo, hi)) in p.iter_mut().zip(bounds) {
        *x = x.clamp(lo, hi);
    }
}

fn grid(bounds: &[(f64, f64)], cfg: &SearchConfig) -> Vec<Vec<f64>> {
    let p = bounds.len();
    let mut res = cfg.grid_resolution.max(1);
    while res > 1 && (res as f64).powi(p as i32) > cfg.max_grid_points as f64 {
        res -= 1;
    }
    let total = res.pow(p as u32);
    (0..total)
        .map(|mut idx| {
            bounds
                .iter()
                .map(|&(lo, hi)| {
                    let i = idx % res;
                    idx /= res;
                    lo + (i as f64 + 0.5) / res as f64 * (hi - lo)
                })
                .collect()
        })
        .collect()
}

/// Maximize `f` over the box with a clamped Nelder–Mead simplex.
fn nelder_mead(f: &dyn Fn(&[f64]) -> f64, start: &[f64], bounds: &[(f64, f64)], iters: usize) -> (Vec<f64>, f64) {
    let n = start.len();
    let mut simplex: Vec<Vec<f64>> = vec![start.to_vec()];
    for i in 0..n {
        let mut p = start.to_vec();
        let width = bounds[i].1 - bounds[i].0;
        let step = if width > 0.0 { 0.1 * width } else { 0.0 };
        p[i] = if p[i] + step <= bounds[i].1 { p[i] + step } else { p[i] - step };
        simplex.push(p);
    }
    let mut values: Vec<f64> = simplex.iter().map(|p| f(p)).collect();
    for _ in 0..iters {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();
        if (values[0] - values[n]).abs() < 1e-12 {
            break;
        }
        let centroid: Vec<f64> = (0..n).map(|j| simplex[..n].iter().map(|p| p[j]).sum::<f64>() / n as f64).collect();
        let along = |t: f64| {
            let mut p: Vec<f64> = (0..n).map(|j| centroid[j] + t * (simplex[n][j] - centroid[j])).collect();
            clamp_into(&mut p, bounds);
            p
        };
        let reflected = along(-1.0);
        let fr = f(&reflected);
        if fr > values[0] {
            let expanded = along(-2.0);
            let fe = f(&expanded);
            if fe > fr {
                simplex[n] = expanded;
                values[n] = fe;
            } else {
                simplex[n] = reflected;
                values[n] = fr;
            }
        } else if fr > values[n - 1] {
            simplex[n] = reflected;
            values[n] = fr;
        } else {
            let contracted = if fr > values[n] { along(-0.5) } else { along(0.5) };
            let fc = f(&contracted);
            if fc > values[n].max(fr) {
                simplex[n] = contracted;
                values[n] = fc;
            } else {
                for i in 1..=n {
                    for j in 0..n {
                        simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
                    }
                    values[i] = f(&simplex[i]);
                }
            }
        }
    }
    let best = (0..=n).max_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap_or(0);
    (simplex[best].clone(), values[best])
}

/// Deterministic per-energy seed so that parallel scans do not depend on
/// scheduling.
fn energy_seed(seed: u64, energy: f64) -> u64 {
    seed ^ energy.to_bits().wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Search the box for `λ` making `F(·, E, λ)` strictly definite. Floating
/// search; every returned witness has been confirmed by exact Sturm counting
/// at the rationalized `(E, λ)`.
pub fn find_lambda(
    family: &CertFamily,
    energy: f64,
    bounds: &[(f64, f64)],
    cfg: &SearchConfig,
    hint: Option<&[f64]>,
) -> Option<Witness> {
    assert_eq!(bounds.len(), family.nparams(), "lambda box arity mismatch");
    if !energy.is_finite() {
        return None;
    }
    let confirm = |lambda: &[f64]| {
        let lambda: Vec<f64> = lambda.iter().map(|&l| snap(l, LAMBDA_BITS)).collect();
        let verdict = family.verdict(energy, &lambda);
        verdict.is_definite().then_some(Witness { energy, lambda, verdict })
    };
    if bounds.is_empty() {
        return confirm(&[]);
    }
    if box_is_empty(bounds) {
        return None;
    }
    let score = |l: &[f64]| family.score(energy, l);

    if let Some(h) = hint {
        let mut h = h.to_vec();
        clamp_into(&mut h, bounds);
        if score(&h) > 0.0 {
            if let Some(w) = confirm(&h) {
                return Some(w);
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(energy_seed(cfg.seed, energy));
    let mut samples = grid(bounds, cfg);
    for _ in 0..cfg.random_samples {
        samples.push(bounds.iter().map(|&(lo, hi)| if hi > lo { rng.gen_range(lo..=hi) } else { lo }).collect());
    }
    let mut scored: Vec<(f64, usize)> = samples.iter().enumerate().map(|(i, p)| (score(p), i)).collect();
    scored.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));

    for &(s, i) in scored.iter().take(8) {
        if s > 0.0 {
            if let Some(w) = confirm(&samples[i]) {
                return Some(w);
            }
        }
    }
    for &(_, i) in scored.iter().take(cfg.starts) {
        let (p, s) = nelder_mead(&score, &samples[i], bounds, cfg.nelder_mead_iters);
        if s > 0.0 {
            if let Some(w) = confirm(&p) {
                return Some(w);
            }
        }
    }
    None
}
