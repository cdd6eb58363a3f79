use std::collections::{BTreeMap, HashMap};

use num_traits::One;
use thiserror::Error;

use super::param::ParamPoly;
use super::poly::DiffPoly;
use super::poly1::Poly1;
use super::rational::int;
use super::symbol::{Symbol, SymbolKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubstituteError {
    #[error("no assignment for test function a{0}")]
    MissingAssignment(u32),
    #[error("assignments disagree on the number of parameters ({0} vs {1})")]
    ArityMismatch(usize, usize),
}

/// Concrete polynomial obtained from a differential expression by setting
/// `v = 2(V − E)` for the given potential and `a_n` to the assigned
/// polynomials in `x` and `λ`.
pub fn substitute(
    p: &DiffPoly,
    potential: &Poly1,
    assignments: &BTreeMap<u32, ParamPoly>,
) -> Result<ParamPoly, SubstituteError> {
    let mut nparams = None;
    for a in assignments.values() {
        match nparams {
            None => nparams = Some(a.nparams()),
            Some(k) if k != a.nparams() => return Err(SubstituteError::ArityMismatch(k, a.nparams())),
            _ => {}
        }
    }
    let nparams = nparams.unwrap_or(0);

    let mut images: HashMap<Symbol, ParamPoly> = HashMap::new();
    for s in p.symbols() {
        let image = match s.kind {
            SymbolKind::V | SymbolKind::W => {
                let mut dv = potential.clone();
                for _ in 0..s.order {
                    dv = dv.derivative();
                }
                let mut img = ParamPoly::from_poly1(&dv, nparams);
                if s.order == 0 {
                    img = img.sub(&ParamPoly::energy(nparams));
                }
                if s.kind == SymbolKind::V {
                    img = img.scale(&int(2));
                }
                img
            }
            SymbolKind::A(n) => {
                let mut a = assignments.get(&n).ok_or(SubstituteError::MissingAssignment(n))?.clone();
                for _ in 0..s.order {
                    a = a.d_x();
                }
                a
            }
        };
        images.insert(s, image);
    }

    let mut out = ParamPoly::zero(nparams);
    for (m, c) in p.terms() {
        let mut t = ParamPoly::constant(nparams, c.clone());
        for (s, e) in m.factors() {
            t = t.mul(&images[s].pow(*e));
        }
        out = out.add(&t);
    }
    Ok(out)
}

/// Rewrite `v^(k)` as `2·(V − E)^(k)` so results read in terms of the potential.
pub fn to_potential_form(p: &DiffPoly) -> DiffPoly {
    p.map_symbols(|s| match s.kind {
        SymbolKind::V => Some(DiffPoly::symbol(Symbol::w(s.order)).scale_int(2)),
        _ => None,
    })
}

/// Inverse of [`to_potential_form`].
pub fn to_v_form(p: &DiffPoly) -> DiffPoly {
    let half = num_rational::BigRational::one() / int(2);
    p.map_symbols(|s| match s.kind {
        SymbolKind::W => Some(DiffPoly::v(s.order).scale(&half)),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::rational::ratio;

    fn harmonic() -> Poly1 {
        Poly1::new(vec![int(0), int(0), ratio(1, 2)])
    }

    #[test]
    fn v_maps_to_twice_potential_minus_energy() {
        let got = substitute(&DiffPoly::v(0), &harmonic(), &BTreeMap::new()).unwrap();
        let x = ParamPoly::x(0);
        let e = ParamPoly::energy(0);
        assert_eq!(got, x.mul(&x).sub(&e.scale(&int(2))));
        let got = substitute(&DiffPoly::v(1), &harmonic(), &BTreeMap::new()).unwrap();
        assert_eq!(got, x.scale(&int(2)));
    }

    #[test]
    fn missing_assignment_is_reported() {
        let err = substitute(&DiffPoly::a(2, 0), &harmonic(), &BTreeMap::new()).unwrap_err();
        assert_eq!(err, SubstituteError::MissingAssignment(2));
    }

    #[test]
    fn potential_form_round_trip() {
        let p = &(&DiffPoly::v(0) * &DiffPoly::a(0, 1)) + &DiffPoly::v(2);
        assert_eq!(to_v_form(&to_potential_form(&p)), p);
        assert_eq!(to_potential_form(&DiffPoly::v(0)).to_string(), "2*(V-E)");
    }
}
