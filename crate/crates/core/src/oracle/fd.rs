use super::spectrum::{unresolved, EigenFlag, Eigenvalue, Method, Spectrum};
use crate::diffpoly::Poly1;

/// `−½∂² + V` on `M − 1` interior points of `[−L, L]`, Dirichlet ends.
struct Tridiagonal {
    diag: Vec<f64>,
    off: f64,
}

impl Tridiagonal {
    fn new(v: &Poly1, l: f64, m: usize) -> Self {
        let h = 2.0 * l / m as f64;
        let vf = v.to_f64_coeffs();
        let diag = (1..m)
            .map(|i| {
                let x = -l + i as f64 * h;
                1.0 / (h * h) + vf.iter().rev().fold(0.0, |acc, c| acc * x + c)
            })
            .collect();
        Tridiagonal { diag, off: -0.5 / (h * h) }
    }

    /// Number of eigenvalues strictly below `e` (negative pivots of `T − e`).
    fn count_below(&self, e: f64) -> usize {
        let off2 = self.off * self.off;
        let mut count = 0;
        let mut q = 1.0;
        for (i, &d) in self.diag.iter().enumerate() {
            q = if i == 0 { d - e } else { d - e - off2 / q };
            if q == 0.0 {
                q = -f64::EPSILON * (d.abs() + self.off.abs());
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn bounds(&self) -> (f64, f64) {
        let r = 2.0 * self.off.abs();
        let lo = self.diag.iter().copied().fold(f64::INFINITY, f64::min) - r;
        let hi = self.diag.iter().copied().fold(f64::NEG_INFINITY, f64::max) + r;
        (lo, hi)
    }

    /// Eigenvalue of index `j` (0-based) by bisection on the Sturm count.
    fn eigenvalue(&self, j: usize, lower: f64) -> f64 {
        let (lo0, mut hi) = self.bounds();
        let mut lo = lower.max(lo0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > j {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    fn lowest(&self, k: usize) -> Vec<f64> {
        let k = k.min(self.diag.len());
        let mut out: Vec<f64> = Vec::with_capacity(k);
        for j in 0..k {
            let lower = out.last().copied().unwrap_or(f64::NEG_INFINITY);
            out.push(self.eigenvalue(j, lower));
        }
        out
    }
}

/// Lowest `k` eigenvalues from the `M` and `M/2` grids, combined by
/// Richardson extrapolation `(4E_M − E_{M/2})/3`.
pub fn eigensolve_fd(v: &Poly1, l: f64, m: usize, k: usize) -> Spectrum {
    assert!(l > 0.0 && l.is_finite(), "half-width must be positive");
    assert!(m >= 100, "grid must have at least 100 intervals");
    let fine = Tridiagonal::new(v, l, m).lowest(k);
    let coarse = Tridiagonal::new(v, l, m / 2).lowest(k);
    let eigenvalues = fine
        .iter()
        .zip(&coarse)
        .enumerate()
        .map(|(n, (&ef, &ec))| {
            let value = (4.0 * ef - ec) / 3.0;
            Eigenvalue {
                value,
                conv_est: (ef - ec).abs(),
                node_count: n,
                flag: unresolved(v, l, m, value).then_some(EigenFlag::Unresolved),
            }
        })
        .collect();
    Spectrum { method: Method::FiniteDifference, half_width: l, grid: m, eigenvalues }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::parse_poly1;

    #[test]
    fn harmonic_levels() {
        let s = eigensolve_fd(&parse_poly1("1/2*x^2").unwrap(), 12.0, 4000, 6);
        for (n, e) in s.eigenvalues.iter().enumerate() {
            assert!((e.value - (n as f64 + 0.5)).abs() < 1e-6, "{n}: {}", e.value);
            assert!(e.flag.is_none());
        }
    }

    #[test]
    fn particle_in_a_box() {
        let l = 1.5;
        let s = eigensolve_fd(&Poly1::zero(), l, 2000, 3);
        for (n, e) in s.eigenvalues.iter().enumerate() {
            let k = (n + 1) as f64 * std::f64::consts::PI / (2.0 * l);
            assert!((e.value - 0.5 * k * k).abs() < 1e-7, "{n}: {}", e.value);
        }
    }

    #[test]
    fn second_order_convergence() {
        let v = parse_poly1("x^4").unwrap();
        let e = |m| Tridiagonal::new(&v, 6.0, m).lowest(1)[0];
        let (e1, e2, e3) = (e(500), e(1000), e(2000));
        let ratio = (e1 - e2) / (e2 - e3);
        assert!((ratio - 4.0).abs() < 0.05, "ratio {ratio}");
    }

    #[test]
    fn zero_states() {
        assert!(eigensolve_fd(&parse_poly1("x^2").unwrap(), 5.0, 200, 0).is_empty());
    }
}
