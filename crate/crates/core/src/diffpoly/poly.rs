//! The differential polynomial ring over the symbols `v^(k)`, `a_n^(k)`.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::rational::{fmt_coefficient, fmt_plain, int, Rational};
use super::symbol::Symbol;

/// Product of symbol powers, kept sorted by [`Symbol`] order with every
/// exponent at least one. The empty monomial is the constant `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (Symbol, u32)>) -> Self {
        let mut map: BTreeMap<Symbol, u32> = BTreeMap::new();
        for (s, e) in factors {
            if e > 0 {
                *map.entry(s).or_insert(0) += e;
            }
        }
        Monomial(map.into_iter().collect())
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Key used by the pretty-printer: grouped by test-function component,
    /// highest derivative first, then the remaining factors.
    fn display_key(&self) -> (Vec<(u32, Reverse<u32>, u32)>, Vec<(Symbol, u32)>) {
        let mut a_part = Vec::new();
        let mut rest = Vec::new();
        for &(s, e) in &self.0 {
            match s.a_index() {
                Some(n) => a_part.push((n, Reverse(s.order), e)),
                None => rest.push((s, e)),
            }
        }
        (a_part, rest)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (s, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Element of the differential polynomial ring with exact rational
/// coefficients. Zero coefficients are never stored, so structural equality
/// is mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DiffPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        DiffPoly::term(c, Monomial::one())
    }

    pub fn one() -> Self {
        DiffPoly::constant(Rational::one())
    }

    pub fn symbol(s: Symbol) -> Self {
        DiffPoly::term(Rational::one(), Monomial(vec![(s, 1)]))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = DiffPoly::zero();
        p.add_term(m, c);
        p
    }

    /// `v^(k)`.
    pub fn v(order: u32) -> Self {
        DiffPoly::symbol(Symbol::v(order))
    }

    /// `a_n^(k)`.
    pub fn a(n: u32, order: u32) -> Self {
        DiffPoly::symbol(Symbol::a(n, order))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    pub fn scale_int(&self, c: i64) -> DiffPoly {
        self.scale(&int(c))
    }

    pub fn pow(&self, e: u32) -> DiffPoly {
        let mut out = DiffPoly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Formal x-derivative: linear, Leibniz, `s^(k) ↦ s^(k+1)`.
    pub fn derive(&self) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let f = m.factors();
            for (i, &(s, e)) in f.iter().enumerate() {
                let mut rest: Vec<(Symbol, u32)> = f.to_vec();
                if e == 1 {
                    rest.remove(i);
                } else {
                    rest[i].1 = e - 1;
                }
                rest.push((s.derived(), 1));
                out.add_term(Monomial::from_factors(rest), c * int(e as i64));
            }
        }
        out
    }

    pub fn derive_n(&self, n: u32) -> DiffPoly {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.derive();
        }
        p
    }

    /// Replace every occurrence of a symbol by a polynomial. `f` returns
    /// `None` to keep the symbol as is.
    pub fn map_symbols(&self, mut f: impl FnMut(Symbol) -> Option<DiffPoly>) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let mut acc = DiffPoly::constant(c.clone());
            for &(s, e) in m.factors() {
                let image = f(s).unwrap_or_else(|| DiffPoly::symbol(s));
                acc = &acc * &image.pow(e);
            }
            out += acc;
        }
        out
    }

    /// Every symbol occurring in the polynomial.
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut all: Vec<Symbol> = self.terms.keys().flat_map(|m| m.factors().iter().map(|(s, _)| *s)).collect();
        all.sort();
        all.dedup();
        all
    }

    /// Terms in pretty-printing order.
    pub fn display_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by_key(|(m, _)| m.display_key());
        t
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.display_terms().into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                if c < &Rational::zero() || !c.is_integer() {
                    write!(f, "({})", fmt_plain(c))?;
                } else {
                    write!(f, "{}", fmt_plain(c))?;
                }
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_coefficient(c))?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a DiffPoly> for &'a DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for DiffPoly {
    type Output = DiffPoly;
    fn add(mut self, rhs: DiffPoly) -> DiffPoly {
        self += rhs;
        self
    }
}

impl AddAssign<&DiffPoly> for DiffPoly {
    fn add_assign(&mut self, rhs: &DiffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign for DiffPoly {
    fn add_assign(&mut self, rhs: DiffPoly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        -&self
    }
}

impl<'a> Sub<&'a DiffPoly> for &'a DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for DiffPoly {
    type Output = DiffPoly;
    fn sub(mut self, rhs: DiffPoly) -> DiffPoly {
        self -= &rhs;
        self
    }
}

impl SubAssign<&DiffPoly> for DiffPoly {
    fn sub_assign(&mut self, rhs: &DiffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl<'a> Mul<&'a DiffPoly> for &'a DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: DiffPoly) -> DiffPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::rational::ratio;

    fn v() -> DiffPoly {
        DiffPoly::v(0)
    }

    fn a0() -> DiffPoly {
        DiffPoly::a(0, 0)
    }

    #[test]
    fn add_examples() {
        let p = &v() * &a0();
        assert_eq!(&DiffPoly::zero() + &p, p);
        assert!((&p + &p.scale_int(-1)).is_zero());
        let d = DiffPoly::a(0, 1);
        assert_eq!(&d + &d, d.scale_int(2));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&v() * &v(), DiffPoly::term(int(1), Monomial::from_factors([(Symbol::v(0), 2)])));
        assert_eq!(&DiffPoly::one() * &a0(), a0());
        let lhs = &(&a0() + &v()) * &(&a0() - &v());
        let rhs = &(&a0() * &a0()) - &(&v() * &v());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn derive_examples() {
        let p = &v() * &a0();
        let expected = &(&DiffPoly::v(1) * &a0()) + &(&v() * &DiffPoly::a(0, 1));
        assert_eq!(p.derive(), expected);
        assert!(DiffPoly::constant(ratio(7, 3)).derive().is_zero());
        assert_eq!((&v() * &v()).derive(), (&v() * &DiffPoly::v(1)).scale_int(2));
    }

    #[test]
    fn printing_is_grouped_by_component() {
        let p = &(&DiffPoly::a(1, 0) + &(&v() * &DiffPoly::a(0, 1)).scale(&ratio(7, 6)))
            + &DiffPoly::a(0, 3).scale(&ratio(-1, 6));
        assert_eq!(p.to_string(), "(-1/6)*a0''' + (7/6)*v*a0' + a1");
        assert_eq!(DiffPoly::zero().to_string(), "0");
        assert_eq!(DiffPoly::constant(int(-3)).to_string(), "(-3)");
    }
}
