use serde::Serialize;

use crate::diffpoly::Poly1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    FiniteDifference,
    NumerovShooting,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum EigenFlag {
    /// The state is not resolved by the grid or reaches the walls at `±L`.
    Unresolved,
    /// No sign change of the matching function inside the node-count bracket.
    BracketFailure,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Eigenvalue {
    /// `NaN` (serialized as `null`) after a bracket failure.
    pub value: f64,
    /// `|E(M) − E(M/2)|`.
    pub conv_est: f64,
    pub node_count: usize,
    pub flag: Option<EigenFlag>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    pub method: Method,
    #[serde(rename = "L")]
    pub half_width: f64,
    #[serde(rename = "M")]
    pub grid: usize,
    pub eigenvalues: Vec<Eigenvalue>,
}

impl Spectrum {
    pub fn values(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|e| e.value).collect()
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }
}

/// Smallest `|x|` beyond the outermost turning points of `E` at which both
/// `2(V − E) ≥ 50` and the decay action `∫ √(2(V − E)) dx ≥ 20` hold on each
/// side.
pub(crate) fn half_width_for(v: &Poly1, energy: f64) -> f64 {
    let vf = v.to_f64_coeffs();
    let eval = |x: f64| vf.iter().rev().fold(0.0, |acc, c| acc * x + c);
    let side = |dir: f64| {
        let step = 1e-3;
        let mut x = 0.0f64;
        let mut action = 0.0;
        let mut inside = false;
        while x < 1e3 {
            let q = 2.0 * (eval(dir * x) - energy);
            if q > 0.0 {
                if !inside {
                    inside = true;
                }
                action += q.sqrt() * step;
            } else {
                inside = false;
                action = 0.0;
            }
            if inside && q >= 50.0 && action >= 20.0 {
                return x;
            }
            x += step;
        }
        x
    };
    side(1.0).max(side(-1.0)).max(1.0)
}

/// Domain half-width for the lowest `k` states of a confining `V`, found by
/// alternating coarse solves and the decay criterion until stable.
pub fn default_half_width(v: &Poly1, k: usize) -> f64 {
    let mut l = half_width_for(v, 0.0);
    for _ in 0..8 {
        let coarse = super::eigensolve_fd(v, l, 800, k.max(1));
        let e_max = coarse.eigenvalues.iter().map(|e| e.value).fold(f64::NEG_INFINITY, f64::max);
        let next = half_width_for(v, e_max + 0.1 * e_max.abs() + 1.0);
        if next <= l {
            break;
        }
        l = next;
    }
    (l * 4.0).ceil() / 4.0
}

/// Finite-difference solve with the default domain.
pub fn eigensolve(v: &Poly1, m: usize, k: usize) -> Spectrum {
    super::eigensolve_fd(v, default_half_width(v, k), m, k)
}

/// Values that reach into the walls or outrun the grid resolution.
pub(crate) fn unresolved(v: &Poly1, l: f64, m: usize, energy: f64) -> bool {
    let h = 2.0 * l / m as f64;
    let vf = v.to_f64_coeffs();
    let eval = |x: f64| vf.iter().rev().fold(0.0, |acc, c| acc * x + c);
    let wall = eval(-l).min(eval(l));
    let depth = 2.0 * (wall - energy);
    let vmin = (0..=m).map(|i| eval(-l + i as f64 * h)).fold(f64::INFINITY, f64::min);
    let wavenumber = (2.0 * (energy - vmin)).max(0.0).sqrt();
    depth < 50.0 || wavenumber * h > 0.5
}
