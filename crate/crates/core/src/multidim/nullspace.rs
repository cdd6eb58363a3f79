use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use super::polyd::{PolyD, VectorFieldD};
use crate::diffpoly::rational::Rational;
use crate::diffpoly::MPoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Nullspace {
    pub d: usize,
    pub max_deg: u32,
    pub dimension: usize,
    /// Dimension contributed by each homogeneous degree `0..=max_deg`.
    pub by_degree: Vec<usize>,
    #[serde(skip)]
    pub basis: Vec<VectorFieldD>,
    pub max_basis_degree: u32,
}

fn monomials(d: usize, k: u32) -> Vec<Vec<u32>> {
    if d == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=k).rev() {
        for mut rest in monomials(d - 1, k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

type Row = BTreeMap<usize, Rational>;

/// Reduced row echelon form kept up to date as rows are inserted.
#[derive(Default)]
struct Echelon {
    rows: HashMap<usize, Row>,
}

impl Echelon {
    fn insert(&mut self, mut r: Row) {
        loop {
            let hit = r.keys().find(|c| self.rows.contains_key(c)).copied();
            let Some(c) = hit else { break };
            let f = r[&c].clone();
            for (col, val) in &self.rows[&c] {
                let e = r.entry(*col).or_insert_with(Rational::zero);
                *e -= &f * val;
                if e.is_zero() {
                    r.remove(col);
                }
            }
        }
        let Some((&pc, pv)) = r.iter().next() else {
            return;
        };
        let inv = Rational::one() / pv.clone();
        for v in r.values_mut() {
            *v *= &inv;
        }
        for row in self.rows.values_mut() {
            if let Some(f) = row.get(&pc).cloned() {
                for (col, val) in &r {
                    let e = row.entry(*col).or_insert_with(Rational::zero);
                    *e -= &f * val;
                    if e.is_zero() {
                        row.remove(col);
                    }
                }
            }
        }
        self.rows.insert(pc, r);
    }

    fn nullspace(&self, ncols: usize) -> Vec<Vec<Rational>> {
        (0..ncols)
            .filter(|c| !self.rows.contains_key(c))
            .map(|free| {
                let mut v = vec![Rational::zero(); ncols];
                v[free] = Rational::one();
                for (&pc, row) in &self.rows {
                    if let Some(x) = row.get(&free) {
                        v[pc] = -x.clone();
                    }
                }
                v
            })
            .collect()
    }
}

/// Solve the constraint system exactly on a generic vector field of degree
/// at most `max_deg`. The constraints map homogeneous degree `k` to degree
/// `k − 1`, so each degree is an independent block.
pub fn constraint_nullspace(d: usize, max_deg: u32) -> Nullspace {
    assert!(d >= 1, "dimension must be positive");
    let mut basis = Vec::new();
    let mut by_degree = Vec::new();
    for k in 0..=max_deg {
        let monos = monomials(d, k);
        let index: HashMap<&Vec<u32>, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let unknown = |mu: usize, m: usize| mu * monos.len() + m;
        let ncols = d * monos.len();

        // coefficient of x^e in ∂_i h^μ, as (column, factor)
        let partial = |mu: usize, i: usize, e: &[u32]| -> Option<(usize, Rational)> {
            let mut up = e.to_vec();
            up[i] += 1;
            index.get(&up).map(|&m| (unknown(mu, m), Rational::from_integer(up[i].into())))
        };
        let mut ech = Echelon::default();
        let lower = if k == 0 { Vec::new() } else { monomials(d, k - 1) };
        for e in &lower {
            let mut push = |terms: Vec<Option<(usize, Rational)>>, signs: &[i64]| {
                let mut r = Row::new();
                for (t, s) in terms.into_iter().zip(signs) {
                    if let Some((c, f)) = t {
                        *r.entry(c).or_insert_with(Rational::zero) += f * Rational::from_integer((*s).into());
                    }
                }
                r.retain(|_, v| !v.is_zero());
                if !r.is_empty() {
                    ech.insert(r);
                }
            };
            for m in 1..d {
                push(vec![partial(0, 0, e), partial(m, m, e)], &[1, -1]);
            }
            for m in 0..d {
                for n in m + 1..d {
                    push(vec![partial(n, m, e), partial(m, n, e)], &[1, 1]);
                }
            }
        }
        let null = ech.nullspace(ncols);
        by_degree.push(null.len());
        for v in null {
            let comps = (0..d)
                .map(|mu| {
                    let mut p = MPoly::zero(d);
                    for (m, e) in monos.iter().enumerate() {
                        let c = &v[unknown(mu, m)];
                        if !c.is_zero() {
                            p.add_term(e.clone(), c.clone());
                        }
                    }
                    PolyD::from_mpoly(p)
                })
                .collect();
            basis.push(VectorFieldD::new(comps));
        }
    }
    let max_basis_degree = basis.iter().map(VectorFieldD::max_degree).max().unwrap_or(0);
    Nullspace { d, max_deg, dimension: basis.len(), by_degree, basis, max_basis_degree }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multidim::{check_constraints, fit_h0, param_count};

    #[test]
    fn dimensions() {
        for (d, deg) in [(3, 3), (4, 3), (3, 2), (3, 4)] {
            let n = constraint_nullspace(d, deg);
            assert_eq!(n.dimension, param_count(d), "d={d} deg={deg}");
            assert!(n.max_basis_degree <= 2);
            for h in &n.basis {
                assert!(check_constraints(h));
                assert!(fit_h0(h).is_some());
            }
        }
    }

    #[test]
    fn two_dimensions_are_unbounded() {
        // Cauchy–Riemann: one pair of harmonic conjugates per degree
        let n = constraint_nullspace(2, 4);
        assert_eq!(n.by_degree, vec![2, 2, 2, 2, 2]);
    }
}
