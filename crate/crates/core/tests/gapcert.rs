use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use specgap::diffpoly::{parse_family, parse_poly1, substitute, ParamPoly, Poly1};
use specgap::gapcert::*;
use specgap::ladder::compute_f;
use specgap::oracle::eigensolve_fd;

fn family(potential: &str, a0: &str, order: usize) -> CertFamily {
    let v = parse_poly1(potential).unwrap();
    let a = parse_family(a0).unwrap();
    CertFamily::new(substitute(&compute_f(order), &v, &BTreeMap::from([(0, a)])).unwrap())
}

fn scan(f: &CertFamily, range: (f64, f64), step: f64) -> Vec<GapInterval> {
    let cfg =
        ScanConfig { e_range: range, e_step: step, lambda_box: vec![(-1.0, 1.0); f.nparams()], ..Default::default() };
    scan_gaps(f, &cfg)
}

fn sampled_sign(c: &[f64]) -> SignVerdict {
    let eval = |x: f64| c.iter().rev().fold(0.0, |acc, a| acc * x + a);
    let (mut pos, mut neg) = (false, false);
    for i in 0..=10_000 {
        let y = eval(-50.0 + i as f64 * 0.01);
        pos |= y > 0.0;
        neg |= y <= 0.0;
    }
    // beyond the window only the leading term matters
    let lead = *c.last().unwrap();
    pos |= lead > 0.0;
    neg |= lead < 0.0;
    match (pos, neg) {
        (true, false) => SignVerdict::PositiveDefinite,
        (false, true) if c.iter().all(|&a| a == 0.0) => SignVerdict::IdenticallyZero,
        (false, true) => SignVerdict::NegativeDefinite,
        _ => SignVerdict::Indefinite,
    }
}

#[test]
fn sturm_agrees_with_dense_sampling() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut seen = BTreeMap::new();
    for k in 0..200 {
        let degree = 2 * rng.gen_range(1..=4);
        let mut c: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-9..=9)).collect();
        if k % 3 == 0 {
            // bias towards definite inputs: shift up by a multiple of x^degree + 1
            c[0] = c[0].abs() + 20;
            c[degree] = c[degree].abs() + 10;
        }
        if c[degree] == 0 {
            c[degree] = 1;
        }
        let p = Poly1::from_i64(&c);
        let exact = sturm_sign(&p);
        let sampled = sampled_sign(&p.to_f64_coeffs());
        if exact == SignVerdict::Indefinite && sampled.is_definite() {
            // touching root between samples, e.g. 4(x² − x − 1)²
            let f = p.to_f64_coeffs();
            let min = (0..=10_000)
                .map(|i| f.iter().rev().fold(0.0, |acc, a| acc * (-50.0 + i as f64 * 0.01) + a).abs())
                .fold(f64::INFINITY, f64::min);
            assert!(min < 1e-2 * f.iter().fold(0.0f64, |m, a| m.max(a.abs())), "{c:?}");
            assert!(count_real_roots(&p) > 0);
        } else {
            assert_eq!(exact, sampled, "{c:?}");
        }
        *seen.entry(format!("{exact:?}")).or_insert(0) += 1;
    }
    assert!(seen.len() >= 3, "{seen:?}");
}

#[test]
fn sign_examples() {
    assert_eq!(sturm_sign(&parse_poly1("x^2 + 1").unwrap()), SignVerdict::PositiveDefinite);
    assert_eq!(sturm_sign(&parse_poly1("x^2").unwrap()), SignVerdict::Indefinite);
    assert_eq!(sturm_sign(&Poly1::zero()), SignVerdict::IdenticallyZero);
    let f = family("1/2*x^2", "-x", 2);
    assert_eq!(f.exact().at_f64(-1.0, &[]), parse_poly1("4*x^2 + 4").unwrap());
    assert_eq!(f.verdict(-1.0, &[]), SignVerdict::PositiveDefinite);
}

#[test]
fn find_lambda_examples() {
    let f = family("1/2*x^2", "l1*x", 2);
    let cfg = SearchConfig::default();
    let w = find_lambda(&f, -1.0, &[(-1.0, 1.0)], &cfg, None).unwrap();
    assert!(w.lambda[0] < 0.0 && w.verdict.is_definite());
    assert!(find_lambda(&f, 1.0, &[(-1.0, 1.0)], &cfg, None).is_none());
    let empty: Vec<(f64, f64)> = vec![(0.5, -0.5)];
    assert!(find_lambda(&f, -1.0, &empty, &cfg, None).is_none());
}

#[test]
fn harmonic_scan() {
    let f = family("1/2*x^2", "l1*x + l2*x^3", 2);
    let gaps = scan(&f, (-2.0, 3.0), 0.05);
    let first = gaps.iter().find(|g| g.e_high <= 0.5).expect("a gap below the ground state");
    assert!(first.e_high <= 0.0 && first.e_high > -1e-5, "{}", first.e_high);
    for g in &gaps {
        assert!(g.e_low < g.e_high);
        assert!(g.witnesses.len() >= 3);
        for w in &g.witnesses {
            assert!(g.contains(w.energy));
            assert_eq!(f.verdict(w.energy, &w.lambda), w.verdict);
            assert!(w.verdict.is_definite());
        }
        for s in &g.segments {
            let ok = if s.e_low == f64::NEG_INFINITY {
                certify_ray_below_f64(f.exact(), s.e_high, &s.lambda).is_some()
            } else {
                certify_segment_f64(f.exact(), s.e_low, s.e_high, &s.lambda).is_some()
            };
            assert!(ok, "{s:?}");
        }
        let covered_low = g.segments.iter().map(|s| s.e_low).fold(f64::INFINITY, f64::min);
        let covered_high = g.segments.iter().map(|s| s.e_high).fold(f64::NEG_INFINITY, f64::max);
        assert_eq!((covered_low, covered_high), (g.e_low, g.e_high));
    }
    assert!(scan(&f, (1.0, -1.0), 0.05).is_empty());
}

#[test]
fn quartic_scan_is_disjoint_from_spectrum() {
    let f = family("x^4", "l1*x + l2*x^3", 2);
    let spectrum = eigensolve_fd(&parse_poly1("x^4").unwrap(), 5.0, 2000, 8);
    for g in scan(&f, (-1.0, 12.0), 0.05) {
        for e in &spectrum.eigenvalues {
            assert!(g.distance(e.value) > e.conv_est, "{} in [{}, {}]", e.value, g.e_low, g.e_high);
        }
    }
}

fn boundary_and_solution(potential: &str, a0: &str) -> (f64, BifurcationPoint) {
    let f = family(potential, a0, 2);
    let gaps = scan(&f, (-2.0, 1.0), 0.01);
    let g = &gaps[0];
    let w = g.witnesses.last().unwrap();
    let p = f.exact().at_f64(w.energy, &w.lambda).to_f64_coeffs();
    let sign = if w.verdict == SignVerdict::PositiveDefinite { 1.0 } else { -1.0 };
    let eval = |x: f64| sign * p.iter().rev().fold(0.0, |acc, c| acc * x + c);
    let x0 = (0..=4000).map(|i| -4.0 + i as f64 * 2e-3).min_by(|a, b| eval(*a).total_cmp(&eval(*b))).unwrap();
    let b = bifurcation_solve(f.exact(), x0, w.energy, &w.lambda, &BifurcationOptions::default()).unwrap();
    (g.e_high, b)
}

#[test]
fn double_well_boundary_matches_bifurcation() {
    // F₂ = λ₁(12x⁴ − 16x² − 4E): double roots at x² = 2/3 when E = −4/3
    let (e_high, b) = boundary_and_solution("x^4 - 2*x^2", "l1*x");
    assert!((e_high - b.e_star).abs() <= 1e-5, "{e_high} vs {}", b.e_star);
    assert!((b.e_star + 4.0 / 3.0).abs() < 1e-9);
    assert!((b.x_star.abs() - (2.0f64 / 3.0).sqrt()).abs() < 1e-6);
    assert!(b.nondegenerate);
    assert!(b.residuals.iter().all(|r| *r <= 1e-10));
}

#[test]
fn quartic_boundary_matches_bifurcation() {
    // optimum of the degree-3 family lies on λ₂ = 0, where F₂ = λ₁(12x⁴ − 4E)
    let (e_high, b) = boundary_and_solution("x^4", "l1*x");
    assert!((e_high - b.e_star).abs() <= 1e-6, "{e_high} vs {}", b.e_star);
    assert!(!b.nondegenerate, "quartic touching at x = 0");
    let full = family("x^4", "l1*x + l2*x^3", 2);
    let g = &scan(&full, (-1.0, 1.0), 0.01)[0];
    assert!((g.e_high - e_high).abs() <= 1e-6);
}

#[test]
fn harmonic_bifurcation_has_free_scale() {
    let f = family("1/2*x^2", "l1*x", 2);
    let b = bifurcation_solve(f.exact(), 0.1, -0.2, &[0.7], &BifurcationOptions::default()).unwrap();
    assert!(b.x_star.abs() < 1e-6 && b.e_star.abs() < 1e-9);
    assert_eq!(b.lambda_scale_fixed, Some(0));
    let p: ParamPoly = f.exact().clone();
    assert!(p.is_linear_homogeneous_in_lambda());
}
