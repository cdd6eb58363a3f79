use crate::diffpoly::ParamPoly;

fn trim(coeffs: &[f64]) -> &[f64] {
    let mut n = coeffs.len();
    while n > 0 && coeffs[n - 1] == 0.0 {
        n -= 1;
    }
    &coeffs[..n]
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect()
}

/// Real roots of a polynomial (lowest coefficient first), sorted. Roots are
/// isolated between consecutive critical points and polished by bisection.
pub fn real_roots(coeffs: &[f64]) -> Vec<f64> {
    let c = trim(coeffs);
    if c.len() <= 1 {
        return Vec::new();
    }
    if c.len() == 2 {
        return vec![-c[0] / c[1]];
    }
    let lead = c[c.len() - 1].abs();
    let bound = 1.0 + c[..c.len() - 1].iter().map(|a| a.abs() / lead).fold(0.0, f64::max);
    let mut knots = vec![-bound];
    knots.extend(real_roots(&derivative(c)).into_iter().filter(|r| r.abs() < bound));
    knots.push(bound);

    let mut roots = Vec::new();
    for w in knots.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (flo, fhi) = (horner(c, lo), horner(c, hi));
        if flo == 0.0 {
            if roots.last() != Some(&lo) {
                roots.push(lo);
            }
            continue;
        }
        if fhi == 0.0 {
            roots.push(hi);
            continue;
        }
        if (flo < 0.0) == (fhi < 0.0) {
            continue;
        }
        let rising = flo < 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let fm = horner(c, mid);
            if fm == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if (fm < 0.0) == rising {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    roots
}

/// Minimum of a polynomial over the real line: `−∞` for odd degree or a
/// non-positive leading coefficient, the constant for constants.
pub fn poly_margin(coeffs: &[f64]) -> f64 {
    let c = trim(coeffs);
    match c.len() {
        0 => 0.0,
        1 => c[0],
        n if (n - 1) % 2 == 1 || c[n - 1] <= 0.0 => f64::NEG_INFINITY,
        _ => real_roots(&derivative(c)).into_iter().map(|x| horner(c, x)).fold(f64::INFINITY, f64::min),
    }
}

/// `min_x F(x, E, λ)`; positive exactly when `F(·, E, λ)` is positive definite
/// (up to rounding in the floating evaluation).
pub fn margin(f: &ParamPoly, energy: f64, lambda: &[f64]) -> f64 {
    poly_margin(&f.to_float().coeffs_at(energy, lambda))
}

/// Sign-symmetric margin normalized by the largest coefficient, used as the
/// search objective: positive iff `±F` is definite. Odd-degree polynomials
/// get a penalty below −1 that shrinks with the odd leading coefficient.
pub fn normalized_signed_margin(coeffs: &[f64]) -> f64 {
    let c = trim(coeffs);
    if c.is_empty() {
        return -2.0;
    }
    let scale = c.iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let n = c.len();
    if (n - 1) % 2 == 1 {
        return -1.0 - c[n - 1].abs() / scale;
    }
    let unit: Vec<f64> = c.iter().map(|a| a / scale).collect();
    let m = if unit[n - 1] > 0.0 {
        poly_margin(&unit)
    } else {
        let neg: Vec<f64> = unit.iter().map(|a| -a).collect();
        poly_margin(&neg)
    };
    m.clamp(-1.0, 1.0)
}
