use rayon::prelude::*;
use serde::Serialize;

use super::certify::{certify_ray_below_f64, certify_segment_f64};
use super::search::{find_lambda, snap, CertFamily, SearchConfig, Witness};

/// Grid energies are multiples of `2^-ENERGY_BITS`.
const ENERGY_BITS: i32 = 20;

/// Grid points searched sequentially with warm starts; chunks run in
/// parallel. Fixed so that results do not depend on the thread count.
const CHUNK: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct ScanConfig {
    pub e_range: (f64, f64),
    pub e_step: f64,
    pub lambda_box: Vec<(f64, f64)>,
    /// Width to which gap boundaries are bisected.
    pub tol: f64,
    pub search: SearchConfig,
    /// Maximum halvings when a segment between two witnesses does not
    /// certify with either witness.
    pub max_split_depth: u32,
    /// Try to extend a gap touching the bottom of the range to `−∞`.
    pub extend_below: bool,
    pub witnesses_per_gap: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            e_range: (-1.0, 1.0),
            e_step: 1e-2,
            lambda_box: Vec::new(),
            tol: 1e-6,
            search: SearchConfig::default(),
            max_split_depth: 6,
            extend_below: true,
            witnesses_per_gap: 5,
        }
    }
}

/// A certified range `[E_a, E_b]` (or `(−∞, E_b]`) with one `λ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Segment {
    pub e_low: f64,
    pub e_high: f64,
    pub lambda: Vec<f64>,
}

/// Eigenvalue-free energy interval.
#[derive(Clone, Debug, PartialEq)]
pub struct GapInterval {
    /// `−∞` when the certificate extends to arbitrarily low energies.
    pub e_low: f64,
    pub e_high: f64,
    pub witnesses: Vec<Witness>,
    /// Energy ranges each certified by a single `λ`; their union is the
    /// interval.
    pub segments: Vec<Segment>,
    pub tol: f64,
}

impl GapInterval {
    pub fn contains(&self, e: f64) -> bool {
        self.e_low <= e && e <= self.e_high
    }

    /// Signed distance from `e` to the interval (negative inside).
    pub fn distance(&self, e: f64) -> f64 {
        if self.contains(e) {
            -(e - self.e_low).min(self.e_high - e)
        } else if e < self.e_low {
            self.e_low - e
        } else {
            e - self.e_high
        }
    }
}

struct Ctx<'a> {
    family: &'a CertFamily,
    cfg: &'a ScanConfig,
}

impl Ctx<'_> {
    fn find(&self, e: f64, hint: Option<&[f64]>) -> Option<Witness> {
        find_lambda(self.family, e, &self.cfg.lambda_box, &self.cfg.search, hint)
    }

    fn segment_with(&self, a: f64, b: f64, lambda: &[f64]) -> bool {
        certify_segment_f64(self.family.exact(), a, b, lambda).is_some()
    }

    /// Certify `[a, b]` given witnesses at both ends, splitting if needed.
    fn chain(&self, a: &Witness, b: &Witness, depth: u32) -> Option<Vec<Segment>> {
        for w in [a, b] {
            if self.segment_with(a.energy, b.energy, &w.lambda) {
                return Some(vec![Segment { e_low: a.energy, e_high: b.energy, lambda: w.lambda.clone() }]);
            }
        }
        if depth == 0 {
            return None;
        }
        let mid = 0.5 * (a.energy + b.energy);
        if mid <= a.energy || mid >= b.energy {
            return None;
        }
        let m = self.find(mid, Some(&a.lambda))?;
        let mut left = self.chain(a, &m, depth - 1)?;
        left.extend(self.chain(&m, b, depth - 1)?);
        Some(left)
    }

    /// Move a boundary from the certified witness `inside` towards the
    /// uncertified energy `outside` until they are within `tol`.
    fn refine(&self, inside: &Witness, outside: f64) -> (Witness, Vec<Segment>) {
        let mut good = inside.clone();
        let mut bad = outside;
        let mut segs = Vec::new();
        while (bad - good.energy).abs() > self.cfg.tol {
            let mid = 0.5 * (good.energy + bad);
            if mid == good.energy || mid == bad {
                break;
            }
            let step = self.find(mid, Some(&good.lambda)).and_then(|w| {
                let (lo, hi) = if w.energy < good.energy { (&w, &good) } else { (&good, &w) };
                self.chain(lo, hi, self.cfg.max_split_depth).map(|s| (w.clone(), s))
            });
            match step {
                Some((w, s)) => {
                    segs.extend(s);
                    good = w;
                }
                None => bad = mid,
            }
        }
        (good, segs)
    }
}

fn grid(range: (f64, f64), step: f64) -> Vec<f64> {
    let (lo, hi) = range;
    if !(hi >= lo) || !(step > 0.0) || !lo.is_finite() || !hi.is_finite() {
        return Vec::new();
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    let mut out: Vec<f64> = (0..=n).map(|i| snap(lo + i as f64 * step, ENERGY_BITS)).collect();
    if let Some(last) = out.last_mut() {
        if hi - *last < 1e-9 * step.max(1.0) {
            *last = snap(hi, ENERGY_BITS);
        }
    }
    out
}

/// Scan the energy range for eigenvalue-free intervals. Every returned
/// interval is a union of segments each certified exactly with one `λ`.
pub fn scan_gaps(family: &CertFamily, cfg: &ScanConfig) -> Vec<GapInterval> {
    assert!(cfg.tol > 0.0, "tolerance must be positive");
    let ctx = Ctx { family, cfg };
    let energies = grid(cfg.e_range, cfg.e_step);
    let witnesses: Vec<Option<Witness>> = energies
        .par_chunks(CHUNK)
        .flat_map_iter(|chunk| {
            let mut prev: Option<Witness> = None;
            chunk
                .iter()
                .map(|&e| {
                    let w = ctx.find(e, prev.as_ref().map(|w| w.lambda.as_slice()));
                    if w.is_some() {
                        prev.clone_from(&w);
                    }
                    w
                })
                .collect::<Vec<_>>()
        })
        .collect();

    let links: Vec<Option<Vec<Segment>>> = (0..energies.len().saturating_sub(1))
        .into_par_iter()
        .map(|i| match (&witnesses[i], &witnesses[i + 1]) {
            (Some(a), Some(b)) => ctx.chain(a, b, cfg.max_split_depth),
            _ => None,
        })
        .collect();

    // maximal runs of grid points joined by certified links
    let mut runs: Vec<(usize, usize)> = Vec::new();
    let mut i = 0;
    while i < energies.len() {
        if witnesses[i].is_none() {
            i += 1;
            continue;
        }
        let start = i;
        while i + 1 < energies.len() && links[i].is_some() {
            i += 1;
        }
        runs.push((start, i));
        i += 1;
    }

    let assembled: Vec<Option<GapInterval>> = runs
        .par_iter()
        .map(|&(s, t)| {
            let first = witnesses[s].clone().expect("run starts at a witness");
            let last = witnesses[t].clone().expect("run ends at a witness");
            let mut segments: Vec<Segment> = (s..t).flat_map(|k| links[k].clone().expect("linked run")).collect();

            let (low_w, e_low) = if s == 0 {
                let ray =
                    cfg.extend_below && certify_ray_below_f64(family.exact(), first.energy, &first.lambda).is_some();
                if ray {
                    segments.insert(
                        0,
                        Segment { e_low: f64::NEG_INFINITY, e_high: first.energy, lambda: first.lambda.clone() },
                    );
                    (first.clone(), f64::NEG_INFINITY)
                } else {
                    (first.clone(), first.energy)
                }
            } else {
                let (w, segs) = ctx.refine(&first, energies[s - 1]);
                segments.extend(segs);
                let e = w.energy;
                (w, e)
            };
            let (high_w, e_high) = if t + 1 == energies.len() {
                (last.clone(), last.energy)
            } else {
                let (w, segs) = ctx.refine(&last, energies[t + 1]);
                segments.extend(segs);
                let e = w.energy;
                (w, e)
            };
            if !(e_low < e_high) {
                return None;
            }
            segments.sort_by(|a, b| a.e_low.total_cmp(&b.e_low));
            let segments = merge_segments(segments);
            let witnesses = pick_witnesses(&ctx, &segments, &low_w, &high_w, e_low, e_high, cfg.witnesses_per_gap);
            Some(GapInterval { e_low, e_high, witnesses, segments, tol: cfg.tol })
        })
        .collect();
    assembled.into_iter().flatten().collect()
}

/// Join touching segments that share the same `λ`.
fn merge_segments(segments: Vec<Segment>) -> Vec<Segment> {
    let mut out: Vec<Segment> = Vec::with_capacity(segments.len());
    for s in segments {
        match out.last_mut() {
            Some(last) if last.lambda == s.lambda && last.e_high >= s.e_low => {
                last.e_high = last.e_high.max(s.e_high);
            }
            _ => out.push(s),
        }
    }
    out
}

/// Evenly spread witnesses across the interval, each confirmed exactly.
fn pick_witnesses(
    ctx: &Ctx<'_>,
    segments: &[Segment],
    low: &Witness,
    high: &Witness,
    e_low: f64,
    e_high: f64,
    count: usize,
) -> Vec<Witness> {
    let count = count.max(3);
    let lo = if e_low.is_finite() { e_low } else { low.energy.min(e_high) - 1.0 };
    let mut out = Vec::new();
    if e_low.is_finite() {
        out.push(low.clone());
    }
    let interior = count.saturating_sub(out.len() + 1);
    for k in 1..=interior {
        let e = lo + (e_high - lo) * k as f64 / (interior + 1) as f64;
        let seg = segments.iter().find(|s| s.e_low <= e && e <= s.e_high);
        let w = seg.and_then(|s| {
            let verdict = ctx.family.verdict(e, &s.lambda);
            verdict.is_definite().then(|| Witness { energy: e, lambda: s.lambda.clone(), verdict })
        });
        if let Some(w) = w {
            out.push(w);
        }
    }
    out.push(high.clone());
    out.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    out.dedup_by(|a, b| a.energy == b.energy);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::{parse_family, parse_poly1, substitute};
    use crate::ladder::compute_f;
    use std::collections::BTreeMap;

    fn family(potential: &str, a0: &str, order: usize) -> CertFamily {
        let v = parse_poly1(potential).unwrap();
        let a = parse_family(a0).unwrap();
        CertFamily::new(substitute(&compute_f(order), &v, &BTreeMap::from([(0, a)])).unwrap())
    }

    #[test]
    fn harmonic_fixed_family_gap_is_a_ray() {
        let fam = family("1/2*x^2", "-x", 2);
        let cfg = ScanConfig { e_range: (-2.0, 3.0), e_step: 0.05, tol: 1e-6, ..ScanConfig::default() };
        let gaps = scan_gaps(&fam, &cfg);
        assert_eq!(gaps.len(), 1);
        let g = &gaps[0];
        assert_eq!(g.e_low, f64::NEG_INFINITY);
        assert!(g.e_high < 0.0 && g.e_high > -1e-6, "{}", g.e_high);
        assert!(g.witnesses.len() >= 3);
        for w in &g.witnesses {
            assert!(fam.verdict(w.energy, &w.lambda).is_definite());
        }
    }

    #[test]
    fn empty_range_gives_nothing() {
        let fam = family("1/2*x^2", "l1*x", 2);
        let cfg = ScanConfig { e_range: (1.0, 0.0), lambda_box: vec![(-1.0, 1.0)], ..ScanConfig::default() };
        assert!(scan_gaps(&fam, &cfg).is_empty());
    }

    #[test]
    fn grid_includes_both_ends() {
        let g = grid((-1.0, 1.0), 0.5);
        assert_eq!(g, vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert_eq!(grid((0.0, 0.0), 0.1), vec![0.0]);
    }
}
