use std::collections::BTreeMap;

use serde::Serialize;

use super::ode::ode_solve;
use crate::diffpoly::{substitute, ParamPoly, Poly1};
use crate::ladder::{compute_f, compute_j};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DivergenceResult {
    /// `max |ΔP_j/2h − φ^N F_N|` over interior points, divided by
    /// `max |φ^N F_N|`.
    pub residual: f64,
    /// The same maximum without normalization.
    pub absolute: f64,
    pub h: f64,
    pub points: usize,
}

/// Residual of `d/dx J_N = φ^N F_N` along an RK4 solution started at the
/// left end of `range` with `φ = 1`, `φ′ = 0`. The current is differentiated
/// by centered differences, so the residual is `O(h²)`. The relative form is
/// unchanged by rescaling `φ` or `a₀`.
pub fn divergence_check(
    order: usize,
    a0: &Poly1,
    v: &Poly1,
    energy: f64,
    range: (f64, f64),
    h: f64,
) -> DivergenceResult {
    assert!(order >= 1, "N must be positive");
    let traj = ode_solve(v, energy, range.0, 1.0, 0.0, range.1, h);
    let assign = BTreeMap::from([(0, ParamPoly::from_poly1(a0, 0))]);
    let j: Vec<ParamPoly> =
        compute_j(order).j.components().iter().map(|c| substitute(c, v, &assign).expect("a0 assigned")).collect();
    let f = substitute(&compute_f(order), v, &assign).expect("a0 assigned");

    let current: Vec<f64> = traj
        .points
        .iter()
        .map(|p| {
            j.iter()
                .enumerate()
                .map(|(n, c)| c.eval(p.x, energy, &[]) * p.dphi.powi((order - n) as i32) * p.phi.powi(n as i32))
                .sum()
        })
        .collect();
    let step = traj.h;
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for i in 1..traj.points.len().saturating_sub(1) {
        let p = &traj.points[i];
        let derivative = (current[i + 1] - current[i - 1]) / (2.0 * step);
        let rhs = p.phi.powi(order as i32) * f.eval(p.x, energy, &[]);
        worst = worst.max((derivative - rhs).abs());
        scale = scale.max(rhs.abs());
    }
    let residual = if scale > 0.0 { worst / scale } else { worst };
    DivergenceResult { residual, absolute: worst, h: step.abs(), points: traj.points.len() }
}

/// Residuals at `h, h/2, h/4, …` (`levels` values).
pub fn divergence_residuals(
    order: usize,
    a0: &Poly1,
    v: &Poly1,
    energy: f64,
    range: (f64, f64),
    h: f64,
    levels: usize,
) -> Vec<DivergenceResult> {
    (0..levels).map(|k| divergence_check(order, a0, v, energy, range, h / 2f64.powi(k as i32))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::parse_poly1;

    #[test]
    fn zero_test_function() {
        let r = divergence_check(3, &Poly1::zero(), &parse_poly1("x^4").unwrap(), 0.4, (-1.0, 1.0), 1e-2);
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn harmonic_second_order() {
        let v = parse_poly1("1/2*x^2").unwrap();
        let one = parse_poly1("1").unwrap();
        let rs = divergence_residuals(2, &one, &v, 1.3, (-3.0, 3.0), 1e-2, 2);
        assert!(rs[1].residual < 2e-4, "{rs:?}");
        let ratio = rs[0].residual / rs[1].residual;
        assert!((ratio - 4.0).abs() < 0.5, "ratio {ratio}");
    }
}
