//! Symbolic results compared coefficient by coefficient with the published
//! closed forms of F₁–F₄ and A₁–A₄.

use specgap::diffpoly::rational::ratio;
use specgap::diffpoly::{to_potential_form, DiffPoly, Monomial, Rational, Symbol};
use specgap::ladder::{compute_a, compute_f, OpVector};

fn t(c: Rational, factors: &[(Symbol, u32)]) -> DiffPoly {
    DiffPoly::term(c, Monomial::from_factors(factors.iter().copied()))
}

fn sum(terms: Vec<DiffPoly>) -> DiffPoly {
    terms.into_iter().fold(DiffPoly::zero(), |acc, p| acc + p)
}

fn a0(k: u32) -> Symbol {
    Symbol::a(0, k)
}

// (V − E) and its derivatives V′, V″, …
fn w(k: u32) -> Symbol {
    Symbol::w(k)
}

fn v(k: u32) -> Symbol {
    Symbol::v(k)
}

fn q(n: i64, d: i64) -> Rational {
    ratio(n, d)
}

#[test]
fn f1_potential_form() {
    let expected = sum(vec![t(q(-1, 1), &[(a0(2), 1)]), t(q(2, 1), &[(w(0), 1), (a0(0), 1)])]);
    assert_eq!(to_potential_form(&compute_f(1)), expected);
}

#[test]
fn f2_potential_form() {
    let expected = sum(vec![
        t(q(1, 2), &[(a0(3), 1)]),
        t(q(-4, 1), &[(w(0), 1), (a0(1), 1)]),
        t(q(-2, 1), &[(w(1), 1), (a0(0), 1)]),
    ]);
    assert_eq!(to_potential_form(&compute_f(2)), expected);
}

#[test]
fn f3_potential_form() {
    let expected = sum(vec![
        t(q(-1, 6), &[(a0(4), 1)]),
        t(q(10, 3), &[(w(0), 1), (a0(2), 1)]),
        t(q(10, 3), &[(w(1), 1), (a0(1), 1)]),
        t(q(1, 1), &[(w(2), 1), (a0(0), 1)]),
        t(q(-6, 1), &[(w(0), 2), (a0(0), 1)]),
    ]);
    assert_eq!(to_potential_form(&compute_f(3)), expected);
}

#[test]
fn f4_potential_form() {
    let expected = sum(vec![
        t(q(1, 24), &[(a0(5), 1)]),
        t(q(-5, 3), &[(w(0), 1), (a0(3), 1)]),
        t(q(-5, 2), &[(w(1), 1), (a0(2), 1)]),
        t(q(-3, 2), &[(w(2), 1), (a0(1), 1)]),
        t(q(32, 3), &[(w(0), 2), (a0(1), 1)]),
        t(q(-1, 3), &[(w(3), 1), (a0(0), 1)]),
        t(q(32, 3), &[(w(1), 1), (w(0), 1), (a0(0), 1)]),
    ]);
    assert_eq!(to_potential_form(&compute_f(4)), expected);
}

fn an(n: u32, k: u32) -> Symbol {
    Symbol::a(n, k)
}

#[test]
fn a1_to_a4() {
    let a1 = sum(vec![t(q(-1, 1), &[(an(0, 1), 1)]), t(q(1, 1), &[(an(1, 0), 1)])]);
    assert_eq!(compute_a(&OpVector::generic(1)), a1);

    let a2 = sum(vec![
        t(q(1, 2), &[(an(0, 2), 1)]),
        t(q(-1, 1), &[(v(0), 1), (an(0, 0), 1)]),
        t(q(-1, 2), &[(an(1, 1), 1)]),
        t(q(1, 1), &[(an(2, 0), 1)]),
    ]);
    assert_eq!(compute_a(&OpVector::generic(2)), a2);

    let a3 = sum(vec![
        t(q(-1, 6), &[(an(0, 3), 1)]),
        t(q(7, 6), &[(v(0), 1), (an(0, 1), 1)]),
        t(q(2, 3), &[(v(1), 1), (an(0, 0), 1)]),
        t(q(1, 6), &[(an(1, 2), 1)]),
        t(q(-1, 2), &[(v(0), 1), (an(1, 0), 1)]),
        t(q(-1, 3), &[(an(2, 1), 1)]),
        t(q(1, 1), &[(an(3, 0), 1)]),
    ]);
    assert_eq!(compute_a(&OpVector::generic(3)), a3);

    let a4 = sum(vec![
        t(q(1, 24), &[(an(0, 4), 1)]),
        t(q(-2, 3), &[(v(0), 1), (an(0, 2), 1)]),
        t(q(-3, 4), &[(v(1), 1), (an(0, 1), 1)]),
        t(q(-1, 4), &[(v(2), 1), (an(0, 0), 1)]),
        t(q(1, 1), &[(v(0), 2), (an(0, 0), 1)]),
        t(q(-1, 24), &[(an(1, 3), 1)]),
        t(q(5, 12), &[(v(0), 1), (an(1, 1), 1)]),
        t(q(1, 4), &[(v(1), 1), (an(1, 0), 1)]),
        t(q(1, 12), &[(an(2, 2), 1)]),
        t(q(-1, 3), &[(v(0), 1), (an(2, 0), 1)]),
        t(q(-1, 4), &[(an(3, 1), 1)]),
        t(q(1, 1), &[(an(4, 0), 1)]),
    ]);
    assert_eq!(compute_a(&OpVector::generic(4)), a4);
}
