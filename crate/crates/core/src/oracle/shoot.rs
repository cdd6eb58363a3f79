use super::spectrum::{unresolved, EigenFlag, Eigenvalue, Method, Spectrum};
use crate::diffpoly::Poly1;

const RESCALE: f64 = 1e100;

struct Numerov {
    x: Vec<f64>,
    potential: Vec<f64>,
    h: f64,
}

impl Numerov {
    fn new(v: &Poly1, l: f64, m: usize) -> Self {
        let h = 2.0 * l / m as f64;
        let vf = v.to_f64_coeffs();
        let x: Vec<f64> = (0..=m).map(|i| -l + i as f64 * h).collect();
        let potential = x.iter().map(|&x| vf.iter().rev().fold(0.0, |acc, c| acc * x + c)).collect();
        Numerov { x, potential, h }
    }

    fn m(&self) -> usize {
        self.x.len() - 1
    }

    /// `1 − h² f_i / 12` with `f = 2(V − E)`.
    fn weights(&self, e: f64) -> Vec<f64> {
        let c = self.h * self.h / 12.0;
        self.potential.iter().map(|&v| 1.0 - c * 2.0 * (v - e)).collect()
    }

    /// Forward recurrence from `y₀ = 0` counting sign changes of `y₁..y_M`.
    fn node_count(&self, e: f64) -> usize {
        let w = self.weights(e);
        let (mut prev, mut cur) = (0.0f64, 1e-30f64);
        let mut nodes = 0;
        for i in 1..self.m() {
            let next = ((12.0 - 10.0 * w[i]) * cur - w[i - 1] * prev) / w[i + 1];
            if next == 0.0 || next.signum() != cur.signum() {
                nodes += 1;
            }
            prev = cur;
            cur = if next == 0.0 { -cur * f64::EPSILON } else { next };
            if cur.abs() > RESCALE {
                prev /= RESCALE;
                cur /= RESCALE;
            }
        }
        nodes
    }

    /// Normalized discrete Casoratian of the left and right solutions at
    /// `m`. Vanishes exactly at the discrete Dirichlet eigenvalues.
    fn mismatch(&self, e: f64, m: usize) -> f64 {
        let w = self.weights(e);
        let n = self.m();
        let step = |prev: f64, cur: f64, i: usize, j: usize| (12.0 - 10.0 * w[i]) * cur - w[j] * prev;

        let (mut lp, mut lc) = (0.0f64, 1e-30f64);
        for i in 1..=m {
            let next = step(lp, lc, i, i - 1) / w[i + 1];
            lp = lc;
            lc = next;
            if lc.abs() > RESCALE {
                lp /= RESCALE;
                lc /= RESCALE;
            }
        }
        // left: y_m = lp, y_{m+1} = lc
        let (mut rp, mut rc) = (0.0f64, 1e-30f64);
        for i in (m + 1..n).rev() {
            let next = step(rp, rc, i, i + 1) / w[i - 1];
            rp = rc;
            rc = next;
            if rc.abs() > RESCALE {
                rp /= RESCALE;
                rc /= RESCALE;
            }
        }
        // right: y_{m+1} = rp, y_m = rc
        let (ul0, ul1) = (w[m] * lp, w[m + 1] * lc);
        let (ur0, ur1) = (w[m] * rc, w[m + 1] * rp);
        let norm = ul0.hypot(ul1) * ur0.hypot(ur1);
        if norm == 0.0 {
            return 0.0;
        }
        (ul1 * ur0 - ul0 * ur1) / norm
    }

    /// Rightmost classical turning point of `E`, kept away from the walls.
    fn match_index(&self, e: f64) -> usize {
        let n = self.m();
        let turn = (0..=n).rev().find(|&i| self.potential[i] < e).unwrap_or(n / 2);
        turn.clamp(n / 8, n - n / 8 - 1)
    }

    fn bracket(&self, state: usize, mut lo: f64, mut hi: f64) -> (f64, f64) {
        for _ in 0..200 {
            let lo_ok = self.node_count(lo) == state;
            let hi_ok = self.node_count(hi) == state + 1;
            if lo_ok && hi_ok {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.node_count(mid) > state {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo, hi)
    }

    fn eigenvalue(&self, state: usize, lo: f64, hi: f64) -> Option<f64> {
        let (mut a, mut b) = self.bracket(state, lo, hi);
        if self.node_count(a) != state || self.node_count(b) != state + 1 {
            return None;
        }
        let m = self.match_index(0.5 * (a + b));
        let mut fa = self.mismatch(a, m);
        let fb = self.mismatch(b, m);
        if fa == 0.0 {
            return Some(a);
        }
        if fb == 0.0 {
            return Some(b);
        }
        if fa.signum() == fb.signum() {
            return None;
        }
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            let fm = self.mismatch(mid, m);
            if fm == 0.0 {
                return Some(mid);
            }
            if fm.signum() == fa.signum() {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        Some(0.5 * (a + b))
    }

    fn lowest(&self, k: usize) -> Vec<Option<f64>> {
        let vmin = self.potential.iter().copied().fold(f64::INFINITY, f64::min);
        let mut hi = vmin + 1.0;
        while self.node_count(hi) < k {
            hi = vmin + 2.0 * (hi - vmin);
        }
        let lo = vmin;
        (0..k).map(|s| self.eigenvalue(s, lo, hi)).collect()
    }
}

/// Lowest `k` eigenvalues by Numerov shooting on `M` intervals, with the
/// convergence estimate taken against `M/2`.
pub fn eigensolve_shoot(v: &Poly1, l: f64, m: usize, k: usize) -> Spectrum {
    assert!(l > 0.0 && l.is_finite(), "half-width must be positive");
    assert!(m >= 100, "grid must have at least 100 intervals");
    let fine = Numerov::new(v, l, m).lowest(k);
    let coarse = Numerov::new(v, l, m / 2).lowest(k);
    let eigenvalues = fine
        .iter()
        .zip(&coarse)
        .enumerate()
        .map(|(n, (ef, ec))| match (ef, ec) {
            (Some(ef), Some(ec)) => Eigenvalue {
                value: *ef,
                conv_est: (ef - ec).abs(),
                node_count: n,
                flag: unresolved(v, l, m, *ef).then_some(EigenFlag::Unresolved),
            },
            _ => Eigenvalue {
                value: f64::NAN,
                conv_est: f64::INFINITY,
                node_count: n,
                flag: Some(EigenFlag::BracketFailure),
            },
        })
        .collect();
    Spectrum { method: Method::NumerovShooting, half_width: l, grid: m, eigenvalues }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::parse_poly1;

    #[test]
    fn harmonic_levels() {
        let s = eigensolve_shoot(&parse_poly1("1/2*x^2").unwrap(), 12.0, 4000, 6);
        for (n, e) in s.eigenvalues.iter().enumerate() {
            assert!((e.value - (n as f64 + 0.5)).abs() < 1e-8, "{n}: {}", e.value);
            assert_eq!(e.node_count, n);
        }
    }

    #[test]
    fn double_well_pair() {
        let v = parse_poly1("x^4 - 2*x^2").unwrap();
        let s = eigensolve_shoot(&v, 6.0, 4000, 2).values();
        let fd = super::super::eigensolve_fd(&v, 6.0, 4000, 2).values();
        assert!(s[1] - s[0] > 0.0, "{s:?}");
        for (a, b) in s.iter().zip(&fd) {
            assert!((a - b).abs() < 1e-6, "{s:?} vs {fd:?}");
        }
    }

    #[test]
    fn empty_request() {
        assert!(eigensolve_shoot(&parse_poly1("x^2").unwrap(), 5.0, 200, 0).is_empty());
    }
}
