use specgap::diffpoly::{parse_poly1, Poly1};
use specgap::oracle::*;

const POTENTIALS: [&str; 3] = ["1/2*x^2", "x^4", "x^4 - 2*x^2"];

#[test]
fn methods_agree_on_lowest_states() {
    for v in POTENTIALS {
        let p = parse_poly1(v).unwrap();
        let l = default_half_width(&p, 4);
        let fd = eigensolve_fd(&p, l, 4000, 4);
        let sh = eigensolve_shoot(&p, l, 4000, 4);
        for (a, b) in fd.eigenvalues.iter().zip(&sh.eigenvalues) {
            assert!((a.value - b.value).abs() <= 1e-6, "{v}: {} vs {}", a.value, b.value);
            assert!(a.flag.is_none() && b.flag.is_none());
            assert_eq!(a.node_count, b.node_count);
        }
    }
}

#[test]
fn stable_under_wider_domain() {
    for v in POTENTIALS {
        let p = parse_poly1(v).unwrap();
        let l = default_half_width(&p, 4);
        let h = 2.0 * l / 4000.0;
        // keep the step fixed so that only the walls move
        let m2 = ((2.0 * (l + 2.0)) / h).round() as usize;
        let a = eigensolve_shoot(&p, l, 4000, 4).values();
        let b = eigensolve_shoot(&p, l + 2.0, m2, 4).values();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() <= 1e-8, "{v}: {x} vs {y}");
        }
    }
}

#[test]
fn spectra_are_sorted() {
    let p = parse_poly1("x^4 - 2*x^2").unwrap();
    for s in [eigensolve_fd(&p, 5.0, 1000, 8), eigensolve_shoot(&p, 5.0, 1000, 8)] {
        let v = s.values();
        assert!(v.windows(2).all(|w| w[0] < w[1]), "{v:?}");
        assert_eq!(s.len(), 8);
    }
}

#[test]
fn default_domain_resolves_requested_states() {
    let p = parse_poly1("x^4").unwrap();
    let s = eigensolve(&p, 4000, 8);
    assert!(s.eigenvalues.iter().all(|e| e.flag.is_none()));
    assert!((s.eigenvalues[0].value - 0.667_986_259_2).abs() < 1e-8);
}

#[test]
fn unresolved_states_are_flagged() {
    let s = eigensolve_fd(&parse_poly1("1/2*x^2").unwrap(), 3.0, 200, 6);
    assert!(s.eigenvalues.iter().any(|e| e.flag == Some(EigenFlag::Unresolved)));
}

#[test]
fn divergence_identity_examples() {
    let cases = [(2, "1", "1/2*x^2", 1.3, (-3.0, 3.0)), (4, "x^3 - x", "x^4", 0.7, (-1.0, 1.0))];
    for (n, a0, v, e, range) in cases {
        let rs = divergence_residuals(n, &parse_poly1(a0).unwrap(), &parse_poly1(v).unwrap(), e, range, 1e-3, 2);
        assert!(rs[0].residual <= 1e-5, "N={n}: {rs:?}");
        let ratio = rs[0].residual / rs[1].residual;
        assert!((3.5..=4.5).contains(&ratio), "N={n}: ratio {ratio}");
    }
    let zero = divergence_check(2, &Poly1::zero(), &parse_poly1("1/2*x^2").unwrap(), 1.3, (-3.0, 3.0), 1e-3);
    assert_eq!(zero.residual, 0.0);
}

#[test]
fn spectrum_json_shape() {
    let s = eigensolve_fd(&parse_poly1("1/2*x^2").unwrap(), 8.0, 400, 1);
    let j = serde_json::to_value(&s).unwrap();
    assert_eq!(j["method"], "FiniteDifference");
    assert_eq!(j["M"], 400);
    assert!(j["eigenvalues"][0]["convEst"].is_number());
    assert_eq!(j["eigenvalues"][0]["nodeCount"], 0);
}
