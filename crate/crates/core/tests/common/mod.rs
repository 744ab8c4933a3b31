//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use ymlab_core::quadrupole::profile::TestProfileShape;

/// Adaptive Simpson quadrature of `f` on `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    /// `ends` holds `f` at `a`, the midpoint and `b`.
    fn step(f: &dyn Fn(f64) -> f64, a: f64, b: f64, ends: [f64; 3], whole: f64, tol: f64, depth: u32) -> f64 {
        let [fa, fm, fb] = ends;
        let m = 0.5 * (a + b);
        let flm = f(0.5 * (a + m));
        let frm = f(0.5 * (m + b));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, [fa, flm, fm], left, 0.5 * tol, depth - 1) + step(f, m, b, [fm, frm, fb], right, 0.5 * tol, depth - 1)
    }
    let ends = [f(a), f(0.5 * (a + b)), f(b)];
    let whole = (b - a) / 6.0 * (ends[0] + 4.0 * ends[1] + ends[2]);
    step(f, a, b, ends, whole, tol, 40)
}

/// Energy density of the reduced functional written out from the metric
/// functions `f1 = 2 sin(pi/3 + x)`, `f2 = 2 sin(pi/3 - x)`, `f3 = 2 sin x`.
pub fn energy_density(x: f64, a: [f64; 3], da: [f64; 3]) -> f64 {
    let f1 = 2.0 * (PI / 3.0 + x).sin();
    let f2 = 2.0 * (PI / 3.0 - x).sin();
    let f3 = 2.0 * x.sin();
    let g1 = f2 * f3 / f1;
    let g2 = f3 * f1 / f2;
    let g3 = f1 * f2 / f3;
    let [a1, a2, a3] = a;
    da[0] * da[0] * g1
        + (a1 + a2 * a3).powi(2) / g1
        + da[1] * da[1] * g2
        + (a2 + a1 * a3).powi(2) / g2
        + da[2] * da[2] * g3
        + (a3 + a1 * a2).powi(2) / g3
}

/// Continuum energy of the analytic test profile, integrated piece by piece
/// between the breakpoints of its ramp.
pub fn continuum_test_energy(l: i64, delta: f64) -> f64 {
    let shape = TestProfileShape::new(l, delta).unwrap();
    let f = |x: f64| {
        let (a, da) = shape.eval(x);
        energy_density(x, a, da)
    };
    let bp = shape.breakpoints();
    let mut total = 0.0;
    for w in bp.windows(2) {
        // Keep the integrand away from the endpoint singularities of G_i.
        let lo = w[0].max(1e-300);
        let hi = w[1].min(PI / 3.0 - 1e-15);
        total += adaptive_simpson(&f, lo, hi, 1e-14);
    }
    PI * PI * total
}

/// Multiplicity `(k+1)(k+2)(2k+3)/6` of the `k`-th eigenvalue `k(k+3)` of
/// the Laplacian on functions of the round `S^4`.
pub fn s4_multiplicity(k: u64) -> u64 {
    (k + 1) * (k + 2) * (2 * k + 3) / 6
}

/// Number of eigenvalues of `Delta + 2 - c` on the round `S^4` that are at
/// most zero, with multiplicity.
pub fn constant_nonpositive_count(c: f64) -> u64 {
    (0u64..).take_while(|k| (k * (k + 3) + 2) as f64 <= c).map(s4_multiplicity).sum()
}

/// Least-squares slope of `y` against `x`.
pub fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let num: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let den: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    num / den
}
