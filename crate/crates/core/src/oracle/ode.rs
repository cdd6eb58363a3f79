use serde::Serialize;

use crate::diffpoly::Poly1;

const BLOWUP: f64 = 1e150;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TrajectoryPoint {
    pub x: f64,
    pub phi: f64,
    pub dphi: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Trajectory {
    pub points: Vec<TrajectoryPoint>,
    pub energy: f64,
    /// Signed step; negative when integrating towards smaller `x`.
    pub h: f64,
    /// Integration stopped early because `φ` overflowed.
    pub truncated: bool,
}

/// Classical RK4 for `φ″ = 2(V − E)φ` from `x0` to `x_end` with step close
/// to `h` (adjusted to land on `x_end`).
pub fn ode_solve(v: &Poly1, energy: f64, x0: f64, phi0: f64, dphi0: f64, x_end: f64, h: f64) -> Trajectory {
    assert!(h > 0.0, "step must be positive");
    let vf = v.to_f64_coeffs();
    let f = |x: f64| 2.0 * (vf.iter().rev().fold(0.0, |acc, c| acc * x + c) - energy);
    let span = x_end - x0;
    let steps = (span.abs() / h).round().max(1.0) as usize;
    let step = span / steps as f64;

    let mut points = Vec::with_capacity(steps + 1);
    let (mut y, mut p) = (phi0, dphi0);
    points.push(TrajectoryPoint { x: x0, phi: y, dphi: p });
    let mut truncated = false;
    for i in 0..steps {
        let x = x0 + i as f64 * step;
        let xm = x + 0.5 * step;
        let xn = x0 + (i + 1) as f64 * step;
        let (fx, fm, fn_) = (f(x), f(xm), f(xn));
        let (k1y, k1p) = (p, fx * y);
        let (k2y, k2p) = (p + 0.5 * step * k1p, fm * (y + 0.5 * step * k1y));
        let (k3y, k3p) = (p + 0.5 * step * k2p, fm * (y + 0.5 * step * k2y));
        let (k4y, k4p) = (p + step * k3p, fn_ * (y + step * k3y));
        y += step / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        p += step / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        if !(y.abs() < BLOWUP && p.abs() < BLOWUP) {
            truncated = true;
            break;
        }
        points.push(TrajectoryPoint { x: xn, phi: y, dphi: p });
    }
    Trajectory { points, energy, h: step, truncated }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::parse_poly1;

    #[test]
    fn sine() {
        let t = ode_solve(&Poly1::zero(), 0.5, 0.0, 0.0, 1.0, std::f64::consts::PI, 1e-3);
        let err = t.points.iter().map(|p| (p.phi - p.x.sin()).abs()).fold(0.0, f64::max);
        assert!(err <= 1e-8, "{err}");
        assert!(!t.truncated);
        assert!((t.points.last().unwrap().x - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn gaussian_ground_state() {
        let t = ode_solve(&parse_poly1("1/2*x^2").unwrap(), 0.5, 0.0, 1.0, 0.0, 3.0, 1e-3);
        let err = t.points.iter().map(|p| (p.phi - (-p.x * p.x / 2.0).exp()).abs()).fold(0.0, f64::max);
        assert!(err <= 1e-6, "{err}");
    }

    #[test]
    fn zero_stays_zero() {
        let t = ode_solve(&parse_poly1("x^4 - x").unwrap(), 1.3, -1.0, 0.0, 0.0, 2.0, 1e-2);
        assert!(t.points.iter().all(|p| p.phi == 0.0 && p.dphi == 0.0));
    }

    #[test]
    fn blowup_truncates() {
        let t = ode_solve(&parse_poly1("x^6").unwrap(), 0.0, 0.0, 1.0, 0.0, 50.0, 1e-2);
        assert!(t.truncated);
        assert!(t.points.iter().all(|p| p.phi.is_finite()));
    }
}
