//! Acceptance suite. Every criterion prints one `PASS` or `FAIL` line; run
//! with `cargo test -p ymlab-core --test acceptance -- --nocapture` to see them.

mod common;

use std::f64::consts::{E, PI, SQRT_2};
use std::time::{Duration, Instant};

use ymlab_core::invariants::{self, betti_bounds, corollary_check, einstein_energy_bound, ym_index_bound};
use ymlab_core::lieforms::{estimate_gamma0, estimate_gamma1, run_suite, LieAlgebra, SuiteConfig};
use ymlab_core::quadrupole::{
    build_test_profile, charge, energy, minimize_energy, taubes_lower_bound, DEFAULT_DELTA,
};
use ymlab_core::spectral::{
    birman_schwinger_compare, clr_bound, count_nonpositive, heat_trace, GaugeProblem, RadialFunction, RadialPotential,
};

fn report(id: u32, name: &str, passed: bool, detail: &str) {
    println!("criterion {id} [{}] {name}: {detail}", if passed { "PASS" } else { "FAIL" });
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Range orthogonality of the two endomorphisms does not hold for generic
/// inputs: a trace-free `Z` with no zero eigenvalue acts invertibly, so its
/// range is the whole space. This criterion is reported as failing and the
/// test pins that outcome together with every other property of the suite.
#[test]
fn criterion_1_lie_form_suite() {
    let start = Instant::now();
    let alg = LieAlgebra::su2();
    let cfg = SuiteConfig { n: 4, samples: 10_000, seed: 20_240_601, gamma0: SQRT_2 };
    let rep = run_suite(&alg, &cfg).unwrap();
    let elapsed = start.elapsed();
    let mut lines = Vec::new();
    for c in &rep.checks {
        lines.push(format!("{} worst {:.3e} ({})", c.name, c.worst, if c.passed { "ok" } else { "violated" }));
    }
    let runtime_ok = elapsed < Duration::from_secs(30);
    let passed = rep.all_passed() && runtime_ok;
    report(1, "Lie-form identity suite", passed, &format!("{}; runtime {elapsed:.2?}", lines.join(", ")));

    assert!(runtime_ok, "suite took {elapsed:?}");
    let failing: Vec<&str> = rep.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    assert_eq!(failing, vec!["range_orthogonality"], "unexpected set of failing identities");
    assert!(rep.check("range_orthogonality").unwrap().worst > 1e-2);
}

#[test]
fn criterion_2_gamma_constants() {
    let alg = LieAlgebra::su2();
    let g0 = estimate_gamma0(&alg, 64, 200, 5).unwrap();
    let g1 = estimate_gamma1(&alg, 64, 200, 5).unwrap();
    let g1_max = 4.0 * 3f64.sqrt() / 3.0;
    let ok0 = (SQRT_2 - 1e-4..=SQRT_2 + 1e-9).contains(&g0);
    let ok1 = g1 <= g1_max + 1e-9;
    report(2, "gamma0 and gamma1 of su(2)", ok0 && ok1, &format!("gamma0 = {g0:.12}, gamma1 = {g1:.12} <= {g1_max:.12}"));
    assert!(ok0 && ok1);
}

#[test]
fn criterion_3_quadrupole_growth() {
    let grid = 1024;
    // The family l = 4k - 1.
    let ls: Vec<i64> = (3..=39).step_by(4).collect();

    let mut charges_ok = true;
    for &l in &ls {
        let k = charge(l, 3).unwrap();
        let k_ref = (l * l - 9) / 8;
        charges_ok &= 8 * k_ref == l * l - 9 && k == k_ref && taubes_lower_bound(k) == 2 * (k_ref.abs() + 1);
    }

    let e: Vec<f64> = ls.iter().map(|&l| energy(&build_test_profile(l, DEFAULT_DELTA, grid).unwrap()).unwrap().total).collect();
    // Fit E = c0 + c1 (l/3)^2 from l = 3 and l = 39.
    let (x0, x1) = (1.0, (39.0f64 / 3.0).powi(2));
    let c1 = (e[e.len() - 1] - e[0]) / (x1 - x0);
    let c0 = e[0] - c1 * x0;
    let scaling_err = ls
        .iter()
        .zip(&e)
        .map(|(&l, &v)| rel(c0 + c1 * (l as f64 / 3.0).powi(2), v))
        .fold(0.0, f64::max);
    let scaling_ok = scaling_err <= 1e-10;

    let tail: Vec<(f64, f64)> = ls.iter().zip(&e).filter(|(l, _)| **l >= 7).map(|(&l, &v)| ((l as f64).ln(), v.ln())).collect();
    let (lx, ly): (Vec<f64>, Vec<f64>) = tail.into_iter().unzip();
    let slope = common::slope(&lx, &ly);
    let slope_ok = slope <= 2.05;

    let mut min_ok = true;
    let mut worst_grad = 0.0f64;
    for l in [3, 7, 39] {
        let p0 = build_test_profile(l, DEFAULT_DELTA, 512).unwrap();
        let (p, r) = minimize_energy(&p0, 200, 1e-7).unwrap();
        let monotone = r.energies.windows(2).all(|w| w[1] <= w[0] + 8.0 * f64::EPSILON * w[0]);
        let e_final = energy(&p).unwrap().total;
        min_ok &= monotone && r.grad_norm < 1e-6 && e_final <= r.energies[0];
        worst_grad = worst_grad.max(r.grad_norm);
    }

    let en: Vec<f64> = [256, 512, 1024, 2048]
        .iter()
        .map(|&n| energy(&build_test_profile(3, DEFAULT_DELTA, n).unwrap()).unwrap().total)
        .collect();
    let orders: Vec<f64> = en.windows(3).map(|w| ((w[0] - w[1]) / (w[1] - w[2])).log2()).collect();
    let order = orders.iter().copied().fold(f64::INFINITY, f64::min);
    let exact = common::continuum_test_energy(3, DEFAULT_DELTA);
    let errs: Vec<f64> = en.iter().map(|v| (v - exact).abs()).collect();
    let oracle_order = (errs[2] / errs[3]).log2();
    let order_ok = order >= 1.9 && oracle_order >= 1.9;

    let passed = charges_ok && scaling_ok && slope_ok && min_ok && order_ok;
    report(
        3,
        "quadrupole charge, scaling, growth, minimiser and convergence",
        passed,
        &format!(
            "charges exact {charges_ok}; scaling err {scaling_err:.2e}; slope(7..39) {slope:.4}; \
             minimiser grad {worst_grad:.2e}; order {order:.3} (vs exact {oracle_order:.3})"
        ),
    );
    assert!(passed);
}

#[test]
fn criterion_4_spectral_counting() {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for c in [2.0, 4.0, 8.0, 16.0, 32.0] {
        let pot = RadialPotential::new(RadialFunction::constant(c)).unwrap();
        let res = count_nonpositive(&pot, 2000).unwrap();
        let expected = common::constant_nonpositive_count(c);
        let clr = clr_bound(&pot, 1).unwrap();
        let clr_ref = 0.25 * E * E * c * c;
        ok &= res.n0 == expected && rel(clr, clr_ref) < 1e-6 && (res.n0 as f64) <= clr;
        parts.push(format!("c={c}: N0 {} (exact {expected}), CLR {clr:.3}", res.n0));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(120);
    report(4, "nonpositive eigenvalue count", ok, &format!("{}; runtime {elapsed:.2?}", parts.join(", ")));
    assert!(ok);
}

fn test_potentials() -> Vec<(&'static str, RadialFunction)> {
    vec![
        ("constant 2", RadialFunction::constant(2.0)),
        ("constant 16", RadialFunction::constant(16.0)),
        ("gaussian bump", RadialFunction::GaussianBump { amplitude: 30.0, width: 0.4, center: 0.0, floor: 0.5 }),
        ("double bump", RadialFunction::DoubleBump { amplitude: 20.0, width: 0.3, floor: 0.5 }),
    ]
}

#[test]
fn criterion_5_heat_trace() {
    let mut ok = true;
    let mut worst_margin = f64::INFINITY;
    let mut worst_tail = 0.0f64;
    for (_, f) in test_potentials() {
        let pot = RadialPotential::new(f).unwrap();
        for t in [0.05, 0.1, 0.5, 1.0, 5.0] {
            let h = heat_trace(&pot, t, 2000).unwrap();
            let bound = 36.0 * pot.l2_norm_sq_eps() / (384.0 * PI * PI);
            ok &= h.scaled <= bound && h.tail < 0.01 * h.partial;
            worst_margin = worst_margin.min(bound - h.scaled);
            worst_tail = worst_tail.max(h.tail / h.partial);
        }
    }
    let c = 16.0;
    let pot = RadialPotential::new(RadialFunction::constant(c)).unwrap();
    let plateau = heat_trace(&pot, 0.05, 2000).unwrap().scaled / (c * c);
    let plateau_ok = rel(plateau, 1.0 / 24.0) < 0.05;
    let passed = ok && plateau_ok;
    report(
        5,
        "heat-trace bound",
        passed,
        &format!("min margin {worst_margin:.4}, max tail/partial {worst_tail:.2e}, plateau {plateau:.6} vs {:.6}", 1.0 / 24.0),
    );
    assert!(passed);
}

#[test]
fn criterion_6_birman_schwinger() {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, f) in test_potentials() {
        let constant = matches!(f, RadialFunction::Constant { .. });
        let pot = RadialPotential::new(f).unwrap();
        let bs = birman_schwinger_compare(&pot, 2000).unwrap();
        ok &= bs.n0 <= bs.weighted_at_most_one;
        if constant {
            ok &= bs.n0 == bs.weighted_at_most_one;
        }
        parts.push(format!("{name}: {} <= {}", bs.n0, bs.weighted_at_most_one));
    }
    report(6, "Birman-Schwinger comparison", ok, &parts.join(", "));
    assert!(ok);
}

#[test]
fn criterion_7_gauge_fixing() {
    let mut ok = true;
    let mut parts = Vec::new();
    for (gamma1, f0) in [(2.0 / 3f64.sqrt(), 5.0), (4.0 * 3f64.sqrt() / 3.0, 2.5), (2.0 / 3f64.sqrt(), 12.0)] {
        assert!(gamma1 * f0 > 4.0);
        let gp = GaugeProblem::new(RadialFunction::constant(0.0), RadialFunction::constant(f0), gamma1, 2000).unwrap();
        let root = gp.find_t0().unwrap();
        let exact = 4.0 / (gamma1 * f0);
        let lambdas: Vec<f64> = (0..=20).map(|i| gp.lambda1(i as f64 / 20.0).unwrap().lambda1).collect();
        let monotone = lambdas.windows(2).all(|w| w[1] <= w[0] + 1e-12);
        ok &= (root.t0 - exact).abs() <= 1e-8 && (root.lower_bound - root.t0).abs() <= 1e-8 && monotone;
        parts.push(format!(
            "gamma1 f0 = {:.4}: t0 {:.12} vs {exact:.12}, bound {:.12}, monotone {monotone}",
            gamma1 * f0,
            root.t0,
            root.lower_bound
        ));
    }
    report(7, "conformal gauge fixing", ok, &parts.join("; "));
    assert!(ok);
}

#[test]
fn criterion_8_bound_evaluators() {
    let e2 = E * E;
    let y = 8.0 * 6f64.sqrt() * PI;
    let einstein = einstein_energy_bound(2, 0.0).unwrap();
    let einstein_ok = rel(einstein, y) <= 1e-12;
    let (b1, _) = betti_bounds(1.0 / 24.0, 0.3).unwrap();
    let (_, bp) = betti_bounds(0.1, 1.0).unwrap();
    let betti_ok = b1.abs() <= 1e-12 && rel(bp, 3.0 * e2) <= 1e-12;

    let mut cgb_worst = 0.0f64;
    for rec in invariants::catalog() {
        let chi = rec.chi() as f64;
        let w2 = rec.value("int_w2", true).unwrap();
        let r2 = rec.value("int_r2", true).unwrap();
        let z2 = rec.value("int_z2", true).unwrap();
        let lhs = 0.75 * z2;
        let rhs = -12.0 * PI * PI * chi + 1.5 * w2 + r2 / 16.0;
        let scale = (12.0 * PI * PI * chi).abs() + 1.5 * w2 + r2 / 16.0;
        cgb_worst = cgb_worst.max((lhs - rhs).abs() / scale);
    }
    let cgb_ok = cgb_worst <= 1e-10;
    let passed = einstein_ok && betti_ok && cgb_ok;
    report(
        8,
        "bound evaluators",
        passed,
        &format!("Einstein bound {einstein:.12} vs {y:.12}; b1 bound {b1:.2e}; b+ bound {bp:.12}; CGB residual {cgb_worst:.2e}"),
    );
    assert!(passed);
}

#[test]
fn criterion_9_corollary_cross_check() {
    let e2 = E * E;
    let mut ok = true;
    let mut parts = Vec::new();
    for dim in [3usize, 8] {
        let c = corollary_check(dim);
        let constant = -9.0 * e2 * dim as f64;
        ok &= rel(c.constant_direct, constant) <= 1e-12 && c.constant_agrees;
        ok &= c.discrepancy && (c.coefficient_ratio - 2.0).abs() <= 1e-12;
        parts.push(format!("d={dim}: constant {:.9} vs {constant:.9}, coefficient ratio {:.12}", c.constant_direct, c.coefficient_ratio));
    }
    let s4 = invariants::round_s4();
    let rep = ym_index_bound(&s4, 10.0, 0.0, 3, true).unwrap();
    let warned = rep.warnings.iter().any(|w| w.contains("ratio 2.0"));
    ok &= warned;
    report(9, "corollary cross-check", ok, &format!("{}; warning emitted {warned}", parts.join(", ")));
    assert!(ok);
}
