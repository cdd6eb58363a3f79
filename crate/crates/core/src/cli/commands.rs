use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::RunConfig;
use super::report::*;
use super::CliError;
use crate::diffpoly::rational::Rational;
use crate::diffpoly::{parse_family, parse_poly1, substitute, to_potential_form, to_v_form};
use crate::gapcert::{scan_gaps, CertFamily, ScanConfig, SearchConfig};
use crate::ladder::{alpha_cross_check, compute_a, compute_f, kernel_check, verify_word_expansion, OpVector};
use crate::multidim::{
    build_f2d, build_h0, check_constraints, constraint_nullspace, critical_reduction, f2d_general, fit_h0,
    null_result_2d, param_count, CriticalOptions, H0Family, PolyD, VectorFieldD, D2_CASES,
};
use crate::oracle::{default_half_width, divergence_residuals, eigensolve_fd, eigensolve_shoot, Spectrum};

pub fn derive(order: usize) -> Result<DeriveReport, CliError> {
    if order == 0 {
        return Err(CliError::Usage("N must be at least 1".into()));
    }
    let f = compute_f(order);
    Ok(DeriveReport {
        tool: TOOL,
        version: VERSION,
        order,
        v_form: to_v_form(&f).to_string(),
        potential_form: to_potential_form(&f).to_string(),
        a_n: compute_a(&OpVector::generic(order)).to_string(),
    })
}

pub fn derive_text(r: &DeriveReport) -> String {
    format!("N = {}\nF_N (v-form): {}\nF_N (V-form): {}\nA_N: {}\n", r.order, r.v_form, r.potential_form, r.a_n)
}

fn lambda_box(cfg: &RunConfig, nparams: usize) -> Result<Vec<(f64, f64)>, CliError> {
    let b: Vec<[f64; 2]> = match cfg.lambda_box.len() {
        0 => vec![[-1.0, 1.0]; nparams],
        1 => vec![cfg.lambda_box[0]; nparams],
        n if n == nparams => cfg.lambda_box.clone(),
        n => {
            return Err(CliError::Usage(format!("lambda box has {n} entries but the family has {nparams} parameters")))
        }
    };
    Ok(b.into_iter().map(|[lo, hi]| (lo, hi)).collect())
}

fn spectrum_for(potential: &crate::diffpoly::Poly1, l: Option<f64>, m: usize, k: usize, shoot: bool) -> Spectrum {
    let l = l.unwrap_or_else(|| default_half_width(potential, k));
    if shoot {
        eigensolve_shoot(potential, l, m, k)
    } else {
        eigensolve_fd(potential, l, m, k)
    }
}

/// Derive, substitute, scan, solve the oracle and check disjointness.
pub fn gaps(mut cfg: RunConfig) -> Result<GapsReport, CliError> {
    let v = parse_poly1(&cfg.potential).map_err(|e| CliError::Parse("potential".into(), e))?;
    let a0 = parse_family(&cfg.a0_family).map_err(|e| CliError::Parse("a0".into(), e))?;
    let f = substitute(&compute_f(cfg.order), &v, &BTreeMap::from([(0, a0)]))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let family = CertFamily::new(f);
    let bounds = lambda_box(&cfg, family.nparams())?;
    cfg.lambda_box = bounds.iter().map(|&(lo, hi)| [lo, hi]).collect();
    let scan = ScanConfig {
        e_range: (cfg.e_range[0], cfg.e_range[1]),
        e_step: cfg.e_step,
        lambda_box: bounds,
        tol: cfg.tol,
        search: SearchConfig { seed: cfg.seed, ..SearchConfig::default() },
        ..ScanConfig::default()
    };
    let intervals = scan_gaps(&family, &scan);

    let l = cfg.oracle.half_width.unwrap_or_else(|| default_half_width(&v, cfg.oracle.count));
    cfg.oracle.half_width = Some(l);
    let spectrum = spectrum_for(&v, Some(l), cfg.oracle.grid, cfg.oracle.count, false);
    let mut violations = Vec::new();
    for (gi, g) in intervals.iter().enumerate() {
        // for odd N only a sign-definite φ, i.e. the ground state, is excluded
        let checked = if cfg.order % 2 == 0 { spectrum.eigenvalues.len() } else { 1 };
        for e in spectrum.eigenvalues.iter().take(checked) {
            if e.flag.is_some() || !(g.distance(e.value) >= e.conv_est) {
                violations.push(Violation { gap: gi, eigenvalue: e.value, conv_est: e.conv_est });
            }
        }
    }
    Ok(GapsReport {
        tool: TOOL,
        version: VERSION,
        potential: v.to_string(),
        order: cfg.order,
        family: cfg.a0_family.clone(),
        certificate: family.exact().to_string(),
        gaps: intervals.iter().map(GapReport::from).collect(),
        oracle_spectrum: spectrum,
        disjoint: violations.is_empty(),
        violations,
        config: cfg,
    })
}

pub fn spectrum(potential: &str, l: Option<f64>, m: usize, k: usize, shoot: bool) -> Result<SpectrumReport, CliError> {
    let v = parse_poly1(potential).map_err(|e| CliError::Parse("potential".into(), e))?;
    if m < 100 {
        return Err(CliError::Usage("grid M must be at least 100".into()));
    }
    if l.is_some_and(|l| !(l > 0.0)) {
        return Err(CliError::Usage("half-width L must be positive".into()));
    }
    Ok(SpectrumReport {
        tool: TOOL,
        version: VERSION,
        potential: v.to_string(),
        spectrum: spectrum_for(&v, l, m, k, shoot),
    })
}

fn check(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), pass, detail: detail.into() }
}

pub fn verify_kernel(max_n: usize, edge_max_n: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for order in 1..=max_n.max(edge_max_n) {
        for n in 1..=order {
            if order <= max_n || n + 1 >= order {
                let ok = kernel_check(order, n);
                out.push(check(format!("kernel N={order} n={n}"), ok, if ok { "vanishes" } else { "nonzero" }));
            }
        }
    }
    out
}

pub fn verify_words(max_n: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for order in 1..=max_n {
        for n in 1..=order {
            let c = verify_word_expansion(order, n);
            out.push(check(
                format!("words N={order} n={n}"),
                c.agrees,
                if c.agrees { "expansion equals direct" } else { "mismatch" },
            ));
        }
    }
    let mismatches = alpha_cross_check(4, 8);
    out.push(check(
        "alpha closed form, |l|+|m| <= 4",
        mismatches.is_empty(),
        format!("{} mismatches", mismatches.len()),
    ));
    out
}

pub fn verify_divergence() -> Vec<Check> {
    let cases = [(2, "1", "1/2*x^2", 1.3, (-3.0, 3.0)), (4, "x^3 - x", "x^4", 0.7, (-1.0, 1.0))];
    cases
        .iter()
        .map(|&(order, a0, v, e, range)| {
            let rs = divergence_residuals(
                order,
                &parse_poly1(a0).expect("fixed input"),
                &parse_poly1(v).expect("fixed input"),
                e,
                range,
                1e-3,
                2,
            );
            let ratio = rs[0].residual / rs[1].residual;
            let ok = rs[0].residual <= 1e-5 && (3.5..=4.5).contains(&ratio);
            check(
                format!("divergence N={order} a0={a0} V={v} E={e}"),
                ok,
                format!("residual {:.3e} at h=1e-3, halving ratio {ratio:.3}", rs[0].residual),
            )
        })
        .collect()
}

pub fn verify_multidim(d: usize, seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    let n = constraint_nullspace(d, 3);
    let expected = param_count(d);
    out.push(check(
        format!("nullspace d={d}"),
        d < 3 || (n.dimension == expected && n.max_basis_degree <= 2),
        format!("dimension {} (expected {expected}), max degree {}", n.dimension, n.max_basis_degree),
    ));
    let members = n.basis.iter().all(|h| check_constraints(h) && (d < 3 || fit_h0(h).is_some()));
    out.push(check("basis satisfies constraints", members, format!("{} elements", n.basis.len())));
    if d >= 3 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut agree = true;
        for _ in 0..20 {
            let params: Vec<Rational> = (0..expected)
                .map(|_| Rational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=4).into()))
                .collect();
            let fam = H0Family::from_params(d, &params).expect("arity");
            let mut v = PolyD::zero(d);
            for _ in 0..6 {
                let mut m = PolyD::constant(d, Rational::from_integer(rng.gen_range(-5..=5).into()));
                for _ in 0..rng.gen_range(0..=4) {
                    m = m.mul(&PolyD::var(d, rng.gen_range(0..d)));
                }
                v = v.add(&m);
            }
            let h = build_h0(&fam).expect("antisymmetric");
            agree &= check_constraints(&h) && build_f2d(&v, &fam).expect("dims") == f2d_general(&v, &h);
        }
        out.push(check("F2 closed form equals general formula", agree, "20 random families and potentials"));
    }
    out
}

pub fn verify(what: &str, checks: Vec<Check>) -> VerifyReport {
    let pass = checks.iter().all(|c| c.pass);
    VerifyReport { tool: TOOL, version: VERSION, what: what.into(), checks, pass }
}

pub fn multidim(d: usize, potential: &str, max_deg: u32, guesses: Vec<Vec<f64>>) -> Result<MultidimReport, CliError> {
    if d == 0 {
        return Err(CliError::Usage("d must be positive".into()));
    }
    if max_deg < 2 {
        return Err(CliError::Usage("max degree must be at least 2".into()));
    }
    let v = PolyD::parse(potential, d).map_err(|e| CliError::Parse("potential".into(), e))?;
    if let Some(g) = guesses.iter().find(|g| g.len() != d + 1) {
        return Err(CliError::Usage(format!("guess {g:?} must have d + 1 = {} entries", d + 1)));
    }
    let n = constraint_nullspace(d, max_deg);
    let expected_dim = (d >= 3).then(|| param_count(d));
    let guesses = if guesses.is_empty() && d >= 3 { default_guesses(&v) } else { guesses };
    let critical_points =
        if d >= 3 { critical_reduction(&v, &guesses, &CriticalOptions::default()) } else { Vec::new() };

    let mut d2 = Vec::new();
    for (pot, field, e) in D2_CASES {
        let pv = PolyD::parse(pot, 2).expect("fixed input");
        let h = VectorFieldD::new(field.iter().map(|c| PolyD::parse(c, 2).expect("fixed input")).collect());
        let result = null_result_2d(&pv, &h, e, 1e-9).expect("bounded fixed input");
        d2.push(D2Check {
            potential: pot.into(),
            field: [field[0].into(), field[1].into()],
            pass: result.value.abs() <= 1e-6,
            result,
        });
    }
    let pass = expected_dim.is_none_or(|e| e == n.dimension && n.max_basis_degree <= 2)
        && critical_points.iter().all(|c| c.point.as_ref().is_some_and(|p| p.verified))
        && d2.iter().all(|c| c.pass);
    Ok(MultidimReport {
        tool: TOOL,
        version: VERSION,
        d,
        potential: v.to_string(),
        max_deg,
        nullspace_dim: n.dimension,
        expected_dim,
        max_basis_degree: n.max_basis_degree,
        critical_points,
        d2_integral_checks: d2,
        pass,
    })
}

/// `{−1, 0, 1}^d`, offset slightly, with `E = V` at each point.
fn default_guesses(v: &PolyD) -> Vec<Vec<f64>> {
    let d = v.dim();
    let total = 3usize.pow(d as u32);
    (0..total)
        .map(|mut idx| {
            let mut g: Vec<f64> = (0..d)
                .map(|_| {
                    let c = (idx % 3) as f64 - 1.0;
                    idx /= 3;
                    c * 1.05 + 0.03
                })
                .collect();
            g.push(v.eval(&g));
            g
        })
        .collect()
}
