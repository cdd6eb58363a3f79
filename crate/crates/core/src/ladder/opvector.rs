use std::fmt;

use num_traits::One;

use crate::diffpoly::rational::{int, ratio, Rational};
use crate::diffpoly::DiffPoly;

/// Element of the space of homogeneous degree-`N` polynomials in `(φ′, φ)`
/// with function coefficients: component `n` multiplies `φ′^(N−n) φ^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpVector {
    components: Vec<DiffPoly>,
}

impl OpVector {
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1, "N must be positive");
        OpVector { components: vec![DiffPoly::zero(); order + 1] }
    }

    pub fn from_components(components: Vec<DiffPoly>) -> Self {
        assert!(components.len() >= 2, "N must be positive");
        OpVector { components }
    }

    /// Vector with `p` in slot `n` and zeros elsewhere.
    pub fn unit(order: usize, n: usize, p: DiffPoly) -> Self {
        let mut v = OpVector::zero(order);
        v.components[n] = p;
        v
    }

    /// The generic vector `(a₀, a₁, …, a_N)` of formal test functions.
    pub fn generic(order: usize) -> Self {
        OpVector { components: (0..=order).map(|n| DiffPoly::a(n as u32, 0)).collect() }
    }

    /// `N`, the homogeneity degree.
    pub fn order(&self) -> usize {
        self.components.len() - 1
    }

    pub fn components(&self) -> &[DiffPoly] {
        &self.components
    }

    pub fn get(&self, n: usize) -> &DiffPoly {
        &self.components[n]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(DiffPoly::is_zero)
    }

    pub fn add(&self, other: &OpVector) -> OpVector {
        assert_eq!(self.order(), other.order());
        OpVector { components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &OpVector) -> OpVector {
        assert_eq!(self.order(), other.order());
        OpVector { components: self.components.iter().zip(&other.components).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Rational) -> OpVector {
        OpVector { components: self.components.iter().map(|a| a.scale(c)).collect() }
    }

    /// Total derivative along solutions of `φ″ = vφ`:
    /// `(D̂a)_n = (n+1) a_{n+1} + a_n′ + (N−n+1) v a_{n−1}`.
    pub fn apply_d(&self) -> OpVector {
        let big_n = self.order();
        let v = DiffPoly::v(0);
        let components = (0..=big_n)
            .map(|n| {
                let mut c = self.components[n].derive();
                if n < big_n {
                    c += self.components[n + 1].scale_int(n as i64 + 1);
                }
                if n > 0 {
                    c += (&v * &self.components[n - 1]).scale_int((big_n - n + 1) as i64);
                }
                c
            })
            .collect();
        OpVector { components }
    }

    /// Reduction operator: lowers the `φ′` degree modulo total derivatives.
    /// Component 0 is zero; component `n ≥ 1` is
    /// `−(1/n) a_{n−1}′ − ((N−n+1)/(n−1)) v a_{n−2}`, and `a_N` is kept in
    /// the last slot.
    pub fn apply_r(&self) -> OpVector {
        let big_n = self.order();
        let v = DiffPoly::v(0);
        let mut components = vec![DiffPoly::zero(); big_n + 1];
        for (n, slot) in components.iter_mut().enumerate().skip(1) {
            let mut c = self.components[n - 1].derive().scale(&-ratio(1, n as i64));
            if n >= 2 {
                let k = ratio((big_n - n + 1) as i64, (n - 1) as i64);
                c -= &(&v * &self.components[n - 2]).scale(&k);
            }
            if n == big_n {
                c += &self.components[big_n];
            }
            *slot = c;
        }
        OpVector { components }
    }

    pub fn apply_r_n(&self, times: usize) -> OpVector {
        let mut out = self.clone();
        for _ in 0..times {
            out = out.apply_r();
        }
        out
    }

    /// `shiftDown(b)`: component `n+1` is `b_n/(n+1)`, component 0 is zero
    /// and `b_N` is dropped. Satisfies `b − R̂b = D̂ shiftDown(b)`.
    pub fn shift_down(&self) -> OpVector {
        let big_n = self.order();
        let mut components = vec![DiffPoly::zero(); big_n + 1];
        for n in 0..big_n {
            components[n + 1] = self.components[n].scale(&ratio(1, n as i64 + 1));
        }
        OpVector { components }
    }

    /// Projector `Π̂_n`; out-of-range indices give zero.
    pub fn project(&self, n: isize) -> OpVector {
        let mut out = OpVector::zero(self.order());
        if n >= 0 && (n as usize) <= self.order() {
            out.components[n as usize] = self.components[n as usize].clone();
        }
        out
    }

    /// `Ŝ⁺`: `(a₀,…,a_N) ↦ (a₁,…,a_N,0)`.
    pub fn shift_plus(&self) -> OpVector {
        let mut components: Vec<DiffPoly> = self.components[1..].to_vec();
        components.push(DiffPoly::zero());
        OpVector { components }
    }

    /// `Ŝ⁻`: `(a₀,…,a_N) ↦ (0,a₀,…,a_{N−1})`.
    pub fn shift_minus(&self) -> OpVector {
        let mut components = vec![DiffPoly::zero()];
        components.extend_from_slice(&self.components[..self.order()]);
        OpVector { components }
    }
}

impl fmt::Display for OpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Diagonal multiplier on [`OpVector`]s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagOp {
    entries: Vec<DiffPoly>,
}

impl DiagOp {
    pub fn new(entries: Vec<DiffPoly>) -> Self {
        assert!(entries.len() >= 2, "N must be positive");
        DiagOp { entries }
    }

    pub fn from_rationals(entries: Vec<Rational>) -> Self {
        DiagOp::new(entries.into_iter().map(DiffPoly::constant).collect())
    }

    pub fn order(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entries(&self) -> &[DiffPoly] {
        &self.entries
    }

    pub fn entry(&self, n: usize) -> &DiffPoly {
        &self.entries[n]
    }

    /// `Λ̂↘ = diag(0, 1, …, N)`.
    pub fn descending(order: usize) -> Self {
        DiagOp::from_rationals((0..=order).map(|n| int(n as i64)).collect())
    }

    /// `Λ̂↖ = diag(N, …, 1, 0)`.
    pub fn ascending(order: usize) -> Self {
        DiagOp::from_rationals((0..=order).map(|n| int((order - n) as i64)).collect())
    }

    /// `Λ̂_a = diag(1/(n+1))`.
    pub fn lambda_a(order: usize) -> Self {
        DiagOp::from_rationals((0..=order).map(|n| ratio(1, n as i64 + 1)).collect())
    }

    /// `Λ̂_b = diag((N−n−1)/(n+1))`.
    pub fn lambda_b(order: usize) -> Self {
        DiagOp::from_rationals((0..=order).map(|n| ratio(order as i64 - n as i64 - 1, n as i64 + 1)).collect())
    }

    /// `Λ̂^(k)`: entry `n` becomes entry `n+k mod N+1`.
    pub fn rotate(&self, k: i64) -> DiagOp {
        let len = self.entries.len() as i64;
        DiagOp { entries: (0..len).map(|n| self.entries[(n + k).rem_euclid(len) as usize].clone()).collect() }
    }

    pub fn apply(&self, a: &OpVector) -> OpVector {
        assert_eq!(self.order(), a.order());
        OpVector { components: self.entries.iter().zip(a.components()).map(|(l, c)| l * c).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().all(|e| *e == DiffPoly::constant(Rational::one()))
    }
}

/// Free function form of [`DiagOp::rotate`].
pub fn rotate_diag(lambda: &DiagOp, k: i64) -> DiagOp {
    lambda.rotate(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a(n: u32) -> DiffPoly {
        DiffPoly::a(n, 0)
    }

    #[test]
    fn apply_d_examples() {
        let x = OpVector::from_components(vec![a(0), DiffPoly::zero()]);
        assert_eq!(x.apply_d(), OpVector::from_components(vec![DiffPoly::a(0, 1), &DiffPoly::v(0) * &a(0)]));
        let y = OpVector::unit(2, 1, a(1));
        assert_eq!(y.apply_d(), OpVector::from_components(vec![a(1), DiffPoly::a(1, 1), &DiffPoly::v(0) * &a(1)]));
        assert!(OpVector::zero(3).apply_d().is_zero());
    }

    #[test]
    fn apply_r_examples() {
        let x = OpVector::from_components(vec![a(0), a(1)]);
        assert_eq!(x.apply_r(), OpVector::from_components(vec![DiffPoly::zero(), &a(1) - &DiffPoly::a(0, 1)]));
        let y = OpVector::unit(2, 0, a(0));
        let vy = &DiffPoly::v(0) * &a(0);
        assert_eq!(y.apply_r(), OpVector::from_components(vec![DiffPoly::zero(), -DiffPoly::a(0, 1), -vy.clone()]));
        let half = DiffPoly::a(0, 2).scale(&ratio(1, 2));
        assert_eq!(y.apply_r_n(2), OpVector::from_components(vec![DiffPoly::zero(), DiffPoly::zero(), &half - &vy]));
    }

    #[test]
    fn rotate_examples() {
        let d = DiagOp::descending(2);
        assert_eq!(d.rotate(1), DiagOp::from_rationals(vec![int(1), int(2), int(0)]));
        assert_eq!(d.rotate(0), d);
        assert_eq!(rotate_diag(&d.rotate(1), -1), d);
    }

    #[test]
    fn reduction_matrix_shift_form() {
        // R̂ = Π̂_N − Ŝ⁻Λ̂_a∂ − (Ŝ⁻)²Λ̂_b v
        for big_n in 1..=5 {
            let g = OpVector::generic(big_n);
            let da = OpVector::from_components(g.components().iter().map(DiffPoly::derive).collect());
            let va = OpVector::from_components(g.components().iter().map(|c| &DiffPoly::v(0) * c).collect());
            let expected = g
                .project(big_n as isize)
                .sub(&DiagOp::lambda_a(big_n).apply(&da).shift_minus())
                .sub(&DiagOp::lambda_b(big_n).apply(&va).shift_minus().shift_minus());
            assert_eq!(g.apply_r(), expected, "N = {big_n}");
        }
    }

    #[test]
    fn d_in_shift_form() {
        // D̂ = Ŝ⁺Λ̂↘ + ∂ + vŜ⁻Λ̂↖
        for big_n in 1..=5 {
            let g = OpVector::generic(big_n);
            let da = OpVector::from_components(g.components().iter().map(DiffPoly::derive).collect());
            let down = DiagOp::ascending(big_n).apply(&g).shift_minus();
            let vdown = OpVector::from_components(down.components().iter().map(|c| &DiffPoly::v(0) * c).collect());
            let expected = DiagOp::descending(big_n).apply(&g).shift_plus().add(&da).add(&vdown);
            assert_eq!(g.apply_d(), expected);
        }
    }

    #[test]
    fn reduction_modulo_image_of_d() {
        for big_n in 1..=6 {
            let b = OpVector::generic(big_n);
            assert_eq!(b.sub(&b.apply_r()), b.shift_down().apply_d(), "N = {big_n}");
        }
    }

    fn random_diag(order: usize, seeds: &[i64]) -> DiagOp {
        DiagOp::from_rationals(
            (0..=order).map(|n| ratio(seeds[n % seeds.len()] + n as i64, 1 + (n as i64 % 3))).collect(),
        )
    }

    proptest! {
        #[test]
        fn shift_commutes_with_rotated_diagonal(order in 1usize..=8, seeds in prop::collection::vec(-9i64..9, 1..9)) {
            let lam = random_diag(order, &seeds);
            let g = OpVector::generic(order);
            prop_assert_eq!(lam.apply(&g).shift_plus(), lam.rotate(1).apply(&g.shift_plus()));
            prop_assert_eq!(lam.apply(&g).shift_minus(), lam.rotate(-1).apply(&g.shift_minus()));
        }

        #[test]
        fn shift_moves_projector(order in 1usize..=8, n in 0usize..=8) {
            prop_assume!(n <= order);
            let g = OpVector::generic(order);
            let n = n as isize;
            prop_assert_eq!(g.project(n).shift_plus(), g.shift_plus().project(n - 1));
            prop_assert_eq!(g.project(n).shift_minus(), g.shift_minus().project(n + 1));
        }

        #[test]
        fn reduction_leaves_only_last_component(order in 1usize..=6) {
            let r = OpVector::generic(order).apply_r_n(order);
            prop_assert!(r.components()[..order].iter().all(DiffPoly::is_zero));
        }
    }
}
