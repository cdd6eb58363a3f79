use super::family::{build_h0, h0_components, param_count, H0Family, MultidimError};
use super::polyd::{PolyD, VectorFieldD};
use crate::diffpoly::rational::{int, Rational};
use crate::diffpoly::MPoly;

/// `F₂ = (2−d)/(2d) Δ(∂·h) − (2/d) v ∂·h − h·∇v` with `v = 2(V − E)`, for
/// any vector field `h`. Variables `[x¹..x^d, E]`.
pub fn f2d_general(v: &PolyD, h: &VectorFieldD) -> MPoly {
    let d = v.dim();
    assert_eq!(h.dim(), d, "dimension mismatch");
    let n = d + 1;
    let energy = MPoly::var(n, d);
    let vv = (&v.embed(n) - &energy).scale(&int(2));
    let div = h.divergence();
    let c1 = Rational::new((2 - d as i64).into(), (2 * d as i64).into());
    let c2 = Rational::new(2.into(), (d as i64).into());
    let mut out = div.laplacian().embed(n).scale(&c1);
    out = &out - &(&vv * &div.embed(n)).scale(&c2);
    for (mu, hm) in h.components.iter().enumerate() {
        out = &out - &(&hm.embed(n) * &vv.derivative(mu));
    }
    out
}

/// `F₂ = 4(E − V)(k + l·x) − 2 h·∇V` for the quadratic family, the `F₂` of
/// the general formula once `∂·h = d(k + l·x)` and `Δ∂·h = 0` are used.
fn closed_form(v: &PolyD, h: &[MPoly], k: &MPoly, l: &[MPoly], nvars: usize) -> MPoly {
    let d = v.dim();
    let energy = MPoly::var(nvars, d);
    let mut kl = k.clone();
    for (mu, lm) in l.iter().enumerate() {
        kl = &kl + &(lm * &MPoly::var(nvars, mu));
    }
    let mut out = (&(&energy - &v.embed(nvars)) * &kl).scale(&int(4));
    for (mu, hm) in h.iter().enumerate() {
        out = &out - &(hm * &v.derivative(mu).embed(nvars)).scale(&int(2));
    }
    out
}

/// Closed-form `F₂` for a concrete family; variables `[x¹..x^d, E]`.
pub fn build_f2d(v: &PolyD, fam: &H0Family) -> Result<MPoly, MultidimError> {
    let d = v.dim();
    if fam.d != d {
        return Err(MultidimError::Dimension);
    }
    let h = build_h0(fam)?;
    let n = d + 1;
    let comps: Vec<MPoly> = h.components.iter().map(|c| c.embed(n)).collect();
    let k = MPoly::constant(n, fam.k.clone());
    let l: Vec<MPoly> = fam.l.iter().map(|c| MPoly::constant(n, c.clone())).collect();
    Ok(closed_form(v, &comps, &k, &l, n))
}

/// `F₂` with all family parameters symbolic; variables
/// `[x¹..x^d, E, λ₁..λ_P]` in the parameter order of
/// [`H0Family::from_params`]. Linear in `λ`.
pub fn f2d_symbolic(v: &PolyD) -> MPoly {
    let d = v.dim();
    let p = param_count(d);
    let n = d + 1 + p;
    let lambda = |i: usize| MPoly::var(n, d + 1 + i);
    let h = h0_components(d, n, &lambda);
    let l: Vec<MPoly> = (0..d).map(|i| lambda(p - d + i)).collect();
    closed_form(v, &h, &lambda(d), &l, n)
}
