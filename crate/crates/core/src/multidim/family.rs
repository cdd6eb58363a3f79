use num_traits::Zero;
use thiserror::Error;

use super::polyd::{half, PolyD, VectorFieldD};
use crate::diffpoly::rational::Rational;
use crate::diffpoly::MPoly;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum MultidimError {
    #[error("matrix A is not antisymmetric")]
    NotAntisymmetric,
    #[error("expected {expected} parameters, got {got}")]
    ParamCount { expected: usize, got: usize },
    #[error("dimension mismatch")]
    Dimension,
}

/// `h^μ(x) = h^μ(0) + k x^μ + A^μ_ν x^ν − ½ l^μ x² + x^μ (l·x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H0Family {
    pub d: usize,
    pub h0_at_zero: Vec<Rational>,
    pub k: Rational,
    /// Row `μ`, column `ν`.
    pub a: Vec<Vec<Rational>>,
    pub l: Vec<Rational>,
}

/// `(d² + 3d + 2)/2`.
pub fn param_count(d: usize) -> usize {
    (d * d + 3 * d + 2) / 2
}

impl H0Family {
    pub fn zero(d: usize) -> Self {
        H0Family {
            d,
            h0_at_zero: vec![Rational::zero(); d],
            k: Rational::zero(),
            a: vec![vec![Rational::zero(); d]; d],
            l: vec![Rational::zero(); d],
        }
    }

    /// Parameters in the order `h(0)¹..h(0)^d, k, A₁₂, A₁₃, …, A_{d−1,d}, l¹..l^d`.
    pub fn from_params(d: usize, p: &[Rational]) -> Result<Self, MultidimError> {
        if p.len() != param_count(d) {
            return Err(MultidimError::ParamCount { expected: param_count(d), got: p.len() });
        }
        let mut fam = H0Family::zero(d);
        fam.h0_at_zero = p[..d].to_vec();
        fam.k = p[d].clone();
        let mut idx = d + 1;
        for i in 0..d {
            for j in i + 1..d {
                fam.a[i][j] = p[idx].clone();
                fam.a[j][i] = -p[idx].clone();
                idx += 1;
            }
        }
        fam.l = p[idx..].to_vec();
        Ok(fam)
    }

    pub fn params(&self) -> Vec<Rational> {
        let mut out = self.h0_at_zero.clone();
        out.push(self.k.clone());
        for i in 0..self.d {
            for j in i + 1..self.d {
                out.push(self.a[i][j].clone());
            }
        }
        out.extend(self.l.iter().cloned());
        out
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.d).all(|i| (0..self.d).all(|j| self.a[i][j] == -self.a[j][i].clone()))
    }
}

/// The family with each coefficient given as a polynomial in `nvars`
/// variables (the first `d` of which are `x`), for numeric and symbolic use.
pub(crate) fn h0_components(d: usize, nvars: usize, coeff: &dyn Fn(usize) -> MPoly) -> Vec<MPoly> {
    let x = |i: usize| MPoly::var(nvars, i);
    let mut norm = MPoly::zero(nvars);
    let mut lx = MPoly::zero(nvars);
    for i in 0..d {
        norm = &norm + &x(i).pow(2);
        lx = &lx + &(&coeff(param_count(d) - d + i) * &x(i));
    }
    let k = coeff(d);
    let a = |i: usize, j: usize| -> MPoly {
        if i == j {
            return MPoly::zero(nvars);
        }
        let (lo, hi, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        let idx = d + 1 + (0..lo).map(|r| d - 1 - r).sum::<usize>() + (hi - lo - 1);
        let c = coeff(idx);
        if sign < 0 {
            -&c
        } else {
            c
        }
    };
    (0..d)
        .map(|mu| {
            let mut h = coeff(mu);
            h = &h + &(&k * &x(mu));
            for nu in 0..d {
                h = &h + &(&a(mu, nu) * &x(nu));
            }
            let l_mu = coeff(param_count(d) - d + mu);
            h = &h - &(&l_mu * &norm).scale(&half());
            &h + &(&x(mu) * &lx)
        })
        .collect()
}

pub fn build_h0(fam: &H0Family) -> Result<VectorFieldD, MultidimError> {
    if !fam.is_antisymmetric() {
        return Err(MultidimError::NotAntisymmetric);
    }
    let d = fam.d;
    if fam.h0_at_zero.len() != d || fam.l.len() != d || fam.a.len() != d || fam.a.iter().any(|r| r.len() != d) {
        return Err(MultidimError::Dimension);
    }
    let p = fam.params();
    let comps = h0_components(d, d, &|i| MPoly::constant(d, p[i].clone()));
    Ok(VectorFieldD::new(comps.into_iter().map(PolyD::from_mpoly).collect()))
}

/// `∂₁h¹ = ⋯ = ∂_d h^d` and `∂_μ h^ν = −∂_ν h^μ` for `μ ≠ ν`.
pub fn check_constraints(h: &VectorFieldD) -> bool {
    let d = h.dim();
    let c = &h.components;
    let diag0 = c[0].derivative(0);
    (1..d).all(|m| c[m].derivative(m) == diag0)
        && (0..d).all(|m| (m + 1..d).all(|n| c[n].derivative(m).add(&c[m].derivative(n)).is_zero()))
}

/// Parameters of the quadratic family reproducing `h`, if it belongs to it.
pub fn fit_h0(h: &VectorFieldD) -> Option<H0Family> {
    let d = h.dim();
    let coeff = |mu: usize, exps: &[u32]| h.components[mu].as_mpoly().coefficient(exps);
    let mono = |pairs: &[(usize, u32)]| {
        let mut e = vec![0u32; d];
        for &(i, k) in pairs {
            e[i] += k;
        }
        e
    };
    let mut fam = H0Family::zero(d);
    for mu in 0..d {
        fam.h0_at_zero[mu] = coeff(mu, &mono(&[]));
        // coefficient of (x^μ)² in h^μ is −½l^μ + l^μ
        fam.l[mu] = coeff(mu, &mono(&[(mu, 2)])) * Rational::from_integer(2.into());
    }
    fam.k = coeff(0, &mono(&[(0, 1)]));
    for mu in 0..d {
        for nu in 0..d {
            if mu != nu {
                fam.a[mu][nu] = coeff(mu, &mono(&[(nu, 1)]));
            }
        }
    }
    let rebuilt = build_h0(&fam).ok()?;
    (rebuilt == *h).then_some(fam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::rational::int;

    #[test]
    fn count() {
        assert_eq!(param_count(3), 10);
        assert_eq!(param_count(4), 15);
        assert_eq!(param_count(5), 21);
    }

    #[test]
    fn examples() {
        let mut f = H0Family::zero(3);
        f.k = int(1);
        let h = build_h0(&f).unwrap();
        for i in 0..3 {
            assert_eq!(h.components[i], PolyD::var(3, i));
        }

        let mut f = H0Family::zero(2);
        f.a[0][1] = int(1);
        f.a[1][0] = int(-1);
        let h = build_h0(&f).unwrap();
        assert_eq!(h.components[0], PolyD::var(2, 1));
        assert_eq!(h.components[1], PolyD::var(2, 0).scale(&int(-1)));

        let mut f = H0Family::zero(3);
        f.l[0] = int(1);
        let h = build_h0(&f).unwrap();
        assert_eq!(h.components[0], PolyD::parse("1/2*x1^2 - 1/2*x2^2 - 1/2*x3^2", 3).unwrap());
        assert_eq!(h.components[1], PolyD::parse("x1*x2", 3).unwrap());
        assert_eq!(h.components[2], PolyD::parse("x1*x3", 3).unwrap());
        assert!(check_constraints(&h));
        assert_eq!(fit_h0(&h), Some(f));
    }

    #[test]
    fn constraint_examples() {
        let cr = VectorFieldD::new(vec![PolyD::var(2, 0), PolyD::var(2, 1)]);
        assert!(check_constraints(&cr));
        let bad = VectorFieldD::new(vec![PolyD::parse("x1^3", 3).unwrap(), PolyD::zero(3), PolyD::zero(3)]);
        assert!(!check_constraints(&bad));
        assert_eq!(fit_h0(&bad), None);
    }

    #[test]
    fn rejects_symmetric_part() {
        let mut f = H0Family::zero(3);
        f.a[0][1] = int(1);
        assert_eq!(build_h0(&f), Err(MultidimError::NotAntisymmetric));
    }

    #[test]
    fn params_roundtrip() {
        let p: Vec<Rational> = (1..=10).map(int).collect();
        let f = H0Family::from_params(3, &p).unwrap();
        assert!(f.is_antisymmetric());
        assert_eq!(f.params(), p);
        assert!(H0Family::from_params(3, &p[..9]).is_err());
    }
}
