//! The reduced Yang–Mills energy of a quadrupole profile.
//!
//! ```text
//! E(a) = pi^2 int_0^{pi/3} sum_i (a_i')^2 G_i + r_i(a)^2 / G_i  dtheta
//! r_1 = a1 + a2 a3,  r_2 = a2 + a1 a3,  r_3 = a3 + a1 a2
//! G_1 = f2 f3 / f1,  G_2 = f3 f1 / f2,  G_3 = f1 f2 / f3
//! f1 = 2 sin(pi/3 + theta), f2 = 2 sin(pi/3 - theta), f3 = 2 sin(theta)
//! ```
//!
//! The profile is interpolated piecewise linearly between nodes. The two end
//! half-cells use a reflected ghost node (`a1 <-> a2` at `0`, `a1 <-> a3` at
//! `pi/3`), so the interpolant satisfies the reflection conditions exactly.
//! Each cell is integrated with a Gauss–Legendre rule whose nodes avoid the
//! singular endpoints.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::profile::{Profile, THETA_MAX};
use crate::quadrature::GaussLegendre;
use crate::{Error, Result};

/// Gauss points per cell.
pub const CELL_ORDER: usize = 4;

/// Which form of the `r_2 / G_2` summand to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum EnergyForm {
    /// `(a2 + a1 a3)^2 / G_2`, matching the other five squared summands.
    #[default]
    Squared,
    /// `(a2 + a1 a3) / G_2`, the unsquared variant.
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyBreakdown {
    /// `[a1'^2 G1, r1^2/G1, a2'^2 G2, r2^2/G2, a3'^2 G3, r3^2/G3]` integrated.
    pub terms: [f64; 6],
    /// `pi^2` times the sum of the terms.
    pub total: f64,
    pub form: EnergyForm,
}

pub const TERM_NAMES: [&str; 6] = ["(a1')^2 G1", "(a1 + a2 a3)^2 / G1", "(a2')^2 G2", "(a2 + a1 a3)^2 / G2", "(a3')^2 G3", "(a3 + a1 a2)^2 / G3"];

/// `(G1, G2, G3)` at `theta`.
#[inline]
pub fn weights(theta: f64) -> [f64; 3] {
    let f1 = 2.0 * (PI / 3.0 + theta).sin();
    let f2 = 2.0 * (PI / 3.0 - theta).sin();
    let f3 = 2.0 * theta.sin();
    [f2 * f3 / f1, f3 * f1 / f2, f1 * f2 / f3]
}

#[inline]
pub fn residuals(u: [f64; 3]) -> [f64; 3] {
    [u[0] + u[1] * u[2], u[1] + u[0] * u[2], u[2] + u[0] * u[1]]
}

/// Energy density split into its six summands.
#[inline]
pub fn density_terms(theta: f64, u: [f64; 3], du: [f64; 3], form: EnergyForm) -> [f64; 6] {
    let g = weights(theta);
    let r = residuals(u);
    let r2 = match form {
        EnergyForm::Squared => r[1] * r[1] / g[1],
        EnergyForm::Literal => r[1] / g[1],
    };
    [du[0] * du[0] * g[0], r[0] * r[0] / g[0], du[1] * du[1] * g[1], r2, du[2] * du[2] * g[2], r[2] * r[2] / g[2]]
}

/// A linear segment of the interpolant: values at `lo` and `lo + h`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Segment {
    pub lo: f64,
    pub xl: [f64; 3],
    pub xr: [f64; 3],
    /// Integration range inside the segment, `[a, b]`.
    pub a: f64,
    pub b: f64,
}

pub(crate) fn left_ghost(x: [f64; 3]) -> [f64; 3] {
    [x[1], x[0], x[2]]
}

pub(crate) fn right_ghost(x: [f64; 3]) -> [f64; 3] {
    [x[2], x[1], x[0]]
}

/// The `N + 1` integration segments of a profile: left half-cell, `N - 1`
/// interior cells, right half-cell.
pub(crate) fn segments(p: &Profile) -> Vec<Segment> {
    let n = p.len();
    let h = p.h();
    let th = p.theta();
    let mut out = Vec::with_capacity(n + 1);
    let x0 = p.node(0);
    out.push(Segment { lo: -th[0], xl: left_ghost(x0), xr: x0, a: 0.0, b: th[0] });
    for j in 0..n - 1 {
        out.push(Segment { lo: th[j], xl: p.node(j), xr: p.node(j + 1), a: th[j], b: th[j + 1] });
    }
    let xn = p.node(n - 1);
    out.push(Segment { lo: th[n - 1], xl: xn, xr: right_ghost(xn), a: th[n - 1], b: THETA_MAX });
    debug_assert!(out.iter().all(|s| (s.b - s.a) <= h + 1e-15));
    out
}

/// Checks that every singular summand has a vanishing numerator at its
/// singular endpoint.
pub fn check_boundary_compatibility(p: &Profile) -> Result<()> {
    let n = p.len();
    let scale = 1.0 + p.components().iter().flatten().fold(0.0f64, |m, v| m.max(v * v));
    let tol = 1e-9 * scale;
    let x0 = p.node(0);
    let g0 = left_ghost(x0);
    let at0 = [(x0[0] + g0[0]) / 2.0, (x0[1] + g0[1]) / 2.0, x0[2]];
    let xn = p.node(n - 1);
    let gn = right_ghost(xn);
    let at1 = [(xn[0] + gn[0]) / 2.0, xn[1], (xn[2] + gn[2]) / 2.0];
    let r0 = residuals(at0);
    let r1 = residuals(at1);
    let checks = [(TERM_NAMES[1], "0", r0[0]), (TERM_NAMES[3], "0", r0[1]), (TERM_NAMES[1], "pi/3", r1[0]), (TERM_NAMES[5], "pi/3", r1[2])];
    for (term, endpoint, value) in checks {
        if value.abs() > tol {
            return Err(Error::DivergentIntegral { term, endpoint, value });
        }
    }
    Ok(())
}

/// Composite Gauss–Legendre energy of the piecewise-linear profile.
pub fn energy_with(p: &Profile, form: EnergyForm) -> Result<EnergyBreakdown> {
    check_boundary_compatibility(p)?;
    let rule = GaussLegendre::new(CELL_ORDER);
    let h = p.h();
    let mut terms = [0.0; 6];
    for seg in segments(p) {
        let du = [(seg.xr[0] - seg.xl[0]) / h, (seg.xr[1] - seg.xl[1]) / h, (seg.xr[2] - seg.xl[2]) / h];
        for (t, w) in rule.on_interval(seg.a, seg.b) {
            let s = (t - seg.lo) / h;
            let u = [
                seg.xl[0] + s * (seg.xr[0] - seg.xl[0]),
                seg.xl[1] + s * (seg.xr[1] - seg.xl[1]),
                seg.xl[2] + s * (seg.xr[2] - seg.xl[2]),
            ];
            let d = density_terms(t, u, du, form);
            for k in 0..6 {
                terms[k] += w * d[k];
            }
        }
    }
    let total = PI * PI * terms.iter().sum::<f64>();
    if !total.is_finite() {
        return Err(Error::Resolution("energy is not finite".into()));
    }
    Ok(EnergyBreakdown { terms, total, form })
}

/// Energy with the squared `r_2` summand.
pub fn energy(p: &Profile) -> Result<EnergyBreakdown> {
    energy_with(p, EnergyForm::Squared)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrupole::profile::{build_test_profile, DEFAULT_DELTA};

    #[test]
    fn zero_profile_has_zero_energy() {
        let e = energy(&Profile::zeros(128)).unwrap();
        assert_eq!(e.total, 0.0);
        assert!(e.terms.iter().all(|t| *t == 0.0));
    }

    #[test]
    fn breakdown_total_is_pi_squared_times_sum() {
        let p = build_test_profile(7, DEFAULT_DELTA, 512).unwrap();
        let e = energy(&p).unwrap();
        let s: f64 = e.terms.iter().sum();
        assert!((e.total - PI * PI * s).abs() <= 1e-12 * e.total);
        assert!(e.terms.iter().all(|t| *t >= 0.0));
    }

    #[test]
    fn weights_match_definition_and_blow_up_at_ends() {
        let g = weights(PI / 6.0);
        // f1 = 2, f2 = 1, f3 = 1 at pi/6.
        assert!((g[0] - 0.5).abs() < 1e-15 && (g[1] - 2.0).abs() < 1e-15 && (g[2] - 2.0).abs() < 1e-14);
        assert!(weights(1e-8)[2] > 1e7);
        assert!(weights(THETA_MAX - 1e-8)[1] > 1e7);
    }

    #[test]
    fn incompatible_profile_names_the_divergent_term() {
        let n = 128;
        let p = Profile::new(3, DEFAULT_DELTA, vec![0.0; n], vec![1.0; n], vec![3.0; n]).unwrap();
        match energy(&p) {
            Err(Error::DivergentIntegral { term, endpoint, .. }) => {
                assert_eq!(term, TERM_NAMES[1]);
                assert_eq!(endpoint, "0");
            }
            other => panic!("expected divergent integral, got {other:?}"),
        }
    }

    #[test]
    fn literal_form_differs_only_in_fourth_term() {
        let p = build_test_profile(3, DEFAULT_DELTA, 256).unwrap();
        let sq = energy_with(&p, EnergyForm::Squared).unwrap();
        let li = energy_with(&p, EnergyForm::Literal).unwrap();
        for k in [0, 1, 2, 4, 5] {
            assert_eq!(sq.terms[k], li.terms[k]);
        }
        assert!(sq.terms[3] != li.terms[3]);
    }
}
