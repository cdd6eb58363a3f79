use super::opvector::OpVector;
use crate::diffpoly::DiffPoly;

/// `A_N[a] = (R̂^N a)_N`.
///
/// # Panics
/// If any lower component of `R̂^N a` survives, which would mean the
/// reduction operator is wrong.
pub fn compute_a(a: &OpVector) -> DiffPoly {
    let big_n = a.order();
    let r = a.apply_r_n(big_n);
    for (n, c) in r.components()[..big_n].iter().enumerate() {
        assert!(c.is_zero(), "component {n} of R^N a is {c}, expected zero");
    }
    r.get(big_n).clone()
}

fn seed(order: usize) -> OpVector {
    OpVector::unit(order, 0, DiffPoly::a(0, 0))
}

/// `F_N = A_N[D̂(a₀, 0, …, 0)]`, a differential expression in `a₀` and `v`.
pub fn compute_f(order: usize) -> DiffPoly {
    assert!(order >= 1, "N must be positive");
    compute_a(&seed(order).apply_d())
}

/// Coefficients of the current `J_N = P_j(φ′, φ, x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurrentExpr {
    pub j: OpVector,
}

impl CurrentExpr {
    pub fn order(&self) -> usize {
        self.j.order()
    }
}

/// `j = a − Σ_{k<N} shiftDown(R̂^k D̂ a)` with `a = (a₀, 0, …, 0)`, so that
/// `D̂ j = (0, …, 0, F_N)`.
pub fn compute_j(order: usize) -> CurrentExpr {
    assert!(order >= 1, "N must be positive");
    let a = seed(order);
    let mut b = a.apply_d();
    let mut j = a;
    for _ in 0..order {
        j = j.sub(&b.shift_down());
        b = b.apply_r();
    }
    CurrentExpr { j }
}

/// `R̂^N D̂ Π̂_n a` for a formal `a_n`, the full vector.
pub fn kernel_vector(order: usize, n: usize) -> OpVector {
    assert!((1..=order).contains(&n), "n must lie in 1..=N");
    OpVector::unit(order, n, DiffPoly::a(n as u32, 0)).apply_d().apply_r_n(order)
}

/// True iff `(R̂^N D̂ Π̂_n a)_N` vanishes identically with `v` formal.
pub fn kernel_check(order: usize, n: usize) -> bool {
    kernel_vector(order, n).get(order).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::rational::ratio;
    use crate::ladder::phi::PhiPoly;

    fn v() -> DiffPoly {
        DiffPoly::v(0)
    }

    #[test]
    fn f1_and_f2() {
        let f1 = &(&v() * &DiffPoly::a(0, 0)) - &DiffPoly::a(0, 2);
        assert_eq!(compute_f(1), f1);
        let f2 = &(&DiffPoly::a(0, 3).scale(&ratio(1, 2)) - &(&v() * &DiffPoly::a(0, 1)).scale_int(2))
            - &(&DiffPoly::v(1) * &DiffPoly::a(0, 0));
        assert_eq!(compute_f(2), f2);
    }

    #[test]
    fn current_for_zero_seed_is_zero() {
        let j = compute_j(3).j;
        let zeroed = OpVector::from_components(
            j.components().iter().map(|c| c.map_symbols(|s| s.a_index().map(|_| DiffPoly::zero()))).collect(),
        );
        assert!(zeroed.is_zero());
    }

    #[test]
    fn current_satisfies_divergence_identity() {
        for order in 1..=5 {
            let j = compute_j(order);
            let lhs = PhiPoly::from_opvector(&j.j).total_derivative();
            let rhs = PhiPoly::phi_power(order as u32, compute_f(order));
            assert!(lhs.sub(&rhs).is_zero(), "N = {order}");
            let dj = j.j.apply_d();
            assert!(dj.components()[..order].iter().all(DiffPoly::is_zero));
        }
    }

    #[test]
    fn reduction_is_modulo_total_derivatives() {
        for order in 1..=5 {
            let b = OpVector::generic(order);
            let lhs = PhiPoly::from_opvector(&b).sub(&PhiPoly::from_opvector(&b.apply_r()));
            let rhs = PhiPoly::from_opvector(&b.shift_down()).total_derivative();
            assert!(lhs.sub(&rhs).is_zero(), "N = {order}");
        }
    }

    #[test]
    fn small_kernel_cases() {
        assert!(kernel_check(2, 1));
        assert!(kernel_check(2, 2));
        assert!(kernel_check(1, 1));
    }

    #[test]
    #[should_panic(expected = "N must be positive")]
    fn zero_order_rejected() {
        compute_f(0);
    }
}
