//! Constrained minimisation of the reduced energy.
//!
//! Plateau nodes are pinned; every other node value is free. The discrete
//! energy is the exact piecewise-linear energy from [`super::energy`], so its
//! gradient and Hessian are assembled cell by cell. Steps are damped Newton
//! steps solved by a banded Cholesky factorisation (three unknowns per node,
//! half-bandwidth five), accepted under an Armijo decrease test.
//!
//! Close to a minimiser the predicted decrease of a Newton step falls below
//! the rounding resolution of the energy, and the Armijo test only compares
//! rounding noise. In that regime the full step is accepted when the energy
//! does not rise by more than [`ROUNDING_ULPS`] units in the last place and
//! the gradient norm drops.

use std::f64::consts::PI;

use serde::Serialize;

use super::energy::{left_ghost, right_ghost, residuals, segments, weights, Segment, CELL_ORDER};
use super::profile::Profile;
use crate::quadrature::GaussLegendre;
use crate::{Error, Result};

const BAND: usize = 5;

/// Energy rise, in units in the last place of the energy, tolerated by a step
/// taken in the rounding regime.
pub const ROUNDING_ULPS: f64 = 4.0;

#[derive(Debug, Clone, Serialize)]
pub struct DescentReport {
    pub iterations: usize,
    /// Energy after every accepted step, starting with the initial energy.
    /// Nonincreasing up to a few units in the last place once the iteration
    /// reaches the rounding regime.
    pub energies: Vec<f64>,
    /// Discrete first-variation norm `sqrt(sum_j g_j^2 / h)` over free nodes.
    pub grad_norm: f64,
    pub converged: bool,
    pub free_nodes: usize,
}

impl DescentReport {
    /// Whether every accepted step kept the energy from rising by more than
    /// twice [`ROUNDING_ULPS`] units in the last place.
    pub fn is_descending(&self) -> bool {
        self.energies.windows(2).all(|w| w[1] <= w[0] + 2.0 * ROUNDING_ULPS * f64::EPSILON * w[0].abs())
    }
}

/// Energy, gradient and Hessian of one linear segment with respect to its six
/// end values `(xl, xr)`; everything is scaled by `pi^2`.
fn segment_kernel(rule: &GaussLegendre, seg: &Segment, h: f64) -> (f64, [f64; 6], [[f64; 6]; 6]) {
    let mut e = 0.0;
    let mut g = [0.0; 6];
    let mut hm = [[0.0; 6]; 6];
    let du = [(seg.xr[0] - seg.xl[0]) / h, (seg.xr[1] - seg.xl[1]) / h, (seg.xr[2] - seg.xl[2]) / h];
    for (t, w) in rule.on_interval(seg.a, seg.b) {
        let s = (t - seg.lo) / h;
        let u = [
            seg.xl[0] + s * (seg.xr[0] - seg.xl[0]),
            seg.xl[1] + s * (seg.xr[1] - seg.xl[1]),
            seg.xl[2] + s * (seg.xr[2] - seg.xl[2]),
        ];
        let gw = weights(t);
        let r = residuals(u);
        // Gradients of r_i with respect to u.
        let dr = [[1.0, u[2], u[1]], [u[2], 1.0, u[0]], [u[1], u[0], 1.0]];
        let lw = [1.0 - s, s];
        for i in 0..3 {
            e += w * (du[i] * du[i] * gw[i] + r[i] * r[i] / gw[i]);
            // Gradient part: d/dx of (x_r - x_l)^2 / h^2 * G.
            let gp = 2.0 * w * du[i] * gw[i] / h;
            g[i] -= gp;
            g[3 + i] += gp;
            let hp = 2.0 * w * gw[i] / (h * h);
            hm[i][i] += hp;
            hm[3 + i][3 + i] += hp;
            hm[i][3 + i] -= hp;
            hm[3 + i][i] -= hp;
            // Potential part: r_i^2 / G_i through u = (1-s) xl + s xr.
            let c = 2.0 * w / gw[i];
            for (side, lws) in lw.iter().enumerate() {
                for k in 0..3 {
                    g[3 * side + k] += c * r[i] * dr[i][k] * lws;
                }
            }
            // Hessian in u: 2/G (dr dr^T + r d2r), d2r has a single symmetric pair.
            let mut hu = [[0.0; 3]; 3];
            for k in 0..3 {
                for m in 0..3 {
                    hu[k][m] = c * dr[i][k] * dr[i][m];
                }
            }
            let (p, q) = match i {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            hu[p][q] += c * r[i];
            hu[q][p] += c * r[i];
            for (sa, la) in lw.iter().enumerate() {
                for (sb, lb) in lw.iter().enumerate() {
                    for k in 0..3 {
                        for m in 0..3 {
                            hm[3 * sa + k][3 * sb + m] += la * lb * hu[k][m];
                        }
                    }
                }
            }
        }
    }
    let s2 = PI * PI;
    for v in g.iter_mut() {
        *v *= s2;
    }
    for row in hm.iter_mut() {
        for v in row.iter_mut() {
            *v *= s2;
        }
    }
    (s2 * e, g, hm)
}

/// Total energy, gradient over all `3N` node values and the banded Hessian
/// (lower band, `band[i][k] = H[i][i - k]`).
fn assemble(p: &Profile, rule: &GaussLegendre) -> (f64, Vec<f64>, Vec<[f64; BAND + 1]>) {
    let n = p.len();
    let h = p.h();
    let mut e = 0.0;
    let mut g = vec![0.0; 3 * n];
    let mut band = vec![[0.0; BAND + 1]; 3 * n];
    let segs = segments(p);
    let last = segs.len() - 1;
    for (k, seg) in segs.iter().enumerate() {
        let (se, sg, sh) = segment_kernel(rule, seg, h);
        e += se;
        // Map segment variables to node variables through J (6 x 3 or 6 x 6).
        if k == 0 || k == last {
            // Half-cells depend on one node through the ghost reflection.
            let node = if k == 0 { 0 } else { n - 1 };
            let refl = |x: [f64; 3]| if k == 0 { left_ghost(x) } else { right_ghost(x) };
            // Columns of J: e_m maps to (ghost(e_m), e_m) or (e_m, ghost(e_m)).
            let mut jm = [[0.0; 3]; 6];
            for m in 0..3 {
                let mut em = [0.0; 3];
                em[m] = 1.0;
                let gm = refl(em);
                let (lft, rgt) = if k == 0 { (gm, em) } else { (em, gm) };
                for r in 0..3 {
                    jm[r][m] = lft[r];
                    jm[3 + r][m] = rgt[r];
                }
            }
            for m in 0..3 {
                g[3 * node + m] += (0..6).map(|r| jm[r][m] * sg[r]).sum::<f64>();
                for q in 0..=m {
                    let mut v = 0.0;
                    for r in 0..6 {
                        for c in 0..6 {
                            v += jm[r][m] * sh[r][c] * jm[c][q];
                        }
                    }
                    band[3 * node + m][m - q] += v;
                }
            }
        } else {
            let j = k - 1;
            let base = 3 * j;
            for r in 0..6 {
                g[base + r] += sg[r];
                for c in 0..=r {
                    band[base + r][r - c] += sh[r][c];
                }
            }
        }
    }
    (e, g, band)
}

fn energy_only(p: &Profile, rule: &GaussLegendre) -> f64 {
    let h = p.h();
    segments(p).iter().map(|s| segment_kernel(rule, s, h).0).sum()
}

/// Banded Cholesky factor of `band + shift I`, or `None` when the
/// shifted matrix is not positive definite.
fn banded_cholesky(band: &[[f64; BAND + 1]], shift: f64) -> Option<Vec<[f64; BAND + 1]>> {
    let m = band.len();
    let mut l = vec![[0.0; BAND + 1]; m];
    for i in 0..m {
        for k in (0..=BAND.min(i)).rev() {
            let j = i - k;
            let mut s = band[i][k] + if k == 0 { shift } else { 0.0 };
            for p in (i.saturating_sub(BAND))..j {
                if j - p <= BAND {
                    s -= l[i][i - p] * l[j][j - p];
                }
            }
            if k == 0 {
                if !(s > 0.0) || !s.is_finite() {
                    return None;
                }
                l[i][0] = s.sqrt();
            } else {
                l[i][k] = s / l[j][0];
            }
        }
    }
    Some(l)
}

fn banded_solve(l: &[[f64; BAND + 1]], rhs: &[f64]) -> Vec<f64> {
    let m = l.len();
    let mut y = rhs.to_vec();
    for i in 0..m {
        let mut s = y[i];
        for k in 1..=BAND.min(i) {
            s -= l[i][k] * y[i - k];
        }
        y[i] = s / l[i][0];
    }
    for i in (0..m).rev() {
        let mut s = y[i];
        for k in 1..=BAND.min(m - 1 - i) {
            s -= l[i + k][k] * y[i + k];
        }
        y[i] = s / l[i][0];
    }
    y
}

/// Contiguous range of free nodes (outside both plateaus).
fn free_range(p: &Profile) -> Result<(usize, usize)> {
    let n = p.len();
    let lo = (0..n).find(|&j| !p.is_pinned(j));
    let hi = (0..n).rev().find(|&j| !p.is_pinned(j));
    match (lo, hi) {
        (Some(lo), Some(hi)) if p.is_pinned(0) && p.is_pinned(n - 1) => Ok((lo, hi + 1)),
        _ => Err(Error::Parameter("profile needs pinned nodes in both plateaus and free nodes between".into())),
    }
}

/// Damped Newton descent from `profile0` until the discrete first-variation
/// norm drops below `tol` or `max_iters` steps have been taken.
pub fn minimize_energy(profile0: &Profile, max_iters: usize, tol: f64) -> Result<(Profile, DescentReport)> {
    super::energy::check_boundary_compatibility(profile0)?;
    let (lo, hi) = free_range(profile0)?;
    let rule = GaussLegendre::new(CELL_ORDER);
    let h = profile0.h();
    let mut p = profile0.clone();
    let (mut e, mut g, mut band) = assemble(&p, &rule);
    if !e.is_finite() {
        return Err(Error::Parameter("starting profile has non-finite energy".into()));
    }
    let mut energies = vec![e];
    let free = |v: &[f64]| v[3 * lo..3 * hi].to_vec();
    let gnorm = |g: &[f64]| (g[3 * lo..3 * hi].iter().map(|x| x * x).sum::<f64>() / h).sqrt();
    let mut gn = gnorm(&g);
    let mut mu = 0.0f64;
    let mut iterations = 0;
    while gn >= tol && iterations < max_iters {
        iterations += 1;
        let hb = band[3 * lo..3 * hi].to_vec();
        let gf = free(&g);
        let diag_scale = hb.iter().map(|r| r[0].abs()).fold(0.0, f64::max).max(1.0);
        mu *= 0.25;
        let mut accepted = false;
        let mut pending = None;
        for _ in 0..60 {
            let chol = match banded_cholesky(&hb, mu) {
                Some(c) => c,
                None => {
                    mu = (4.0 * mu).max(1e-10 * diag_scale);
                    continue;
                }
            };
            let neg: Vec<f64> = gf.iter().map(|v| -v).collect();
            let step = banded_solve(&chol, &neg);
            let slope: f64 = step.iter().zip(&gf).map(|(a, b)| a * b).sum();
            let resolution = ROUNDING_ULPS * f64::EPSILON * e.abs();
            let mut alpha = 1.0;
            while alpha > 1e-12 {
                let mut trial = p.clone();
                {
                    let comps = trial.components_mut();
                    for (k, s) in step.iter().enumerate() {
                        let var = 3 * lo + k;
                        comps[var % 3][var / 3] += alpha * s;
                    }
                }
                let et = energy_only(&trial, &rule);
                if et.is_finite() && et <= e + 1e-4 * alpha * slope {
                    p = trial;
                    accepted = true;
                    break;
                }
                if alpha == 1.0 && -slope <= resolution && et.is_finite() && et <= e + resolution {
                    let assembled = assemble(&trial, &rule);
                    if gnorm(&assembled.1) < gn {
                        p = trial;
                        pending = Some(assembled);
                        accepted = true;
                        break;
                    }
                }
                alpha *= 0.5;
            }
            if accepted {
                break;
            }
            mu = (4.0 * mu).max(1e-10 * diag_scale);
        }
        if !accepted {
            return Err(Error::LineSearch(format!("no descent step after {iterations} iterations (|g| = {gn:.3e})")));
        }
        let (ne, ng, nb) = pending.take().unwrap_or_else(|| assemble(&p, &rule));
        e = ne;
        g = ng;
        band = nb;
        energies.push(e);
        gn = gnorm(&g);
    }
    let report = DescentReport { iterations, energies, grad_norm: gn, converged: gn < tol, free_nodes: hi - lo };
    Ok((p, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrupole::energy::energy;
    use crate::quadrupole::profile::{build_test_profile, DEFAULT_DELTA};

    fn perturbed(l: i64, n: usize) -> Profile {
        let p = build_test_profile(l, DEFAULT_DELTA, n).unwrap();
        let mut q = p.clone();
        for j in 0..n {
            if !p.is_pinned(j) {
                let t = p.theta()[j];
                q.components_mut()[0][j] += 0.1 * (3.0 * t).sin();
                q.components_mut()[1][j] += 0.05 * (5.0 * t).cos();
            }
        }
        q
    }

    #[test]
    fn kernel_energy_matches_breakdown() {
        let p = perturbed(3, 128);
        let rule = GaussLegendre::new(CELL_ORDER);
        let (e, _, _) = assemble(&p, &rule);
        let want = energy(&p).unwrap().total;
        assert!((e - want).abs() < 1e-12 * want);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let p = perturbed(7, 64);
        let rule = GaussLegendre::new(CELL_ORDER);
        let (_, g, _) = assemble(&p, &rule);
        for var in [0usize, 1, 2, 40, 41, 95, 189, 190, 191] {
            let eps = 1e-6;
            let mut pp = p.clone();
            pp.components_mut()[var % 3][var / 3] += eps;
            let mut pm = p.clone();
            pm.components_mut()[var % 3][var / 3] -= eps;
            let fd = (energy_only(&pp, &rule) - energy_only(&pm, &rule)) / (2.0 * eps);
            assert!((fd - g[var]).abs() < 1e-5 * (1.0 + g[var].abs()), "var {var}: {fd} vs {}", g[var]);
        }
    }

    #[test]
    fn hessian_matches_gradient_differences() {
        let p = perturbed(3, 64);
        let rule = GaussLegendre::new(CELL_ORDER);
        let (_, _, band) = assemble(&p, &rule);
        for var in [0usize, 1, 2, 60, 61, 62, 189, 191] {
            let eps = 1e-6;
            let mut pp = p.clone();
            pp.components_mut()[var % 3][var / 3] += eps;
            let mut pm = p.clone();
            pm.components_mut()[var % 3][var / 3] -= eps;
            let (_, gp, _) = assemble(&pp, &rule);
            let (_, gm, _) = assemble(&pm, &rule);
            for row in var.saturating_sub(BAND)..(var + BAND + 1).min(192) {
                let fd = (gp[row] - gm[row]) / (2.0 * eps);
                let hv = if row >= var { band[row][row - var] } else { band[var][var - row] };
                assert!((fd - hv).abs() < 1e-4 * (1.0 + hv.abs()), "H[{row}][{var}] {fd} vs {hv}");
            }
        }
    }

    #[test]
    fn banded_cholesky_solves_spd_system() {
        let m = 20;
        let mut band = vec![[0.0; BAND + 1]; m];
        for (i, row) in band.iter_mut().enumerate() {
            row[0] = 12.0 + i as f64 * 0.1;
            for k in 1..=BAND.min(i) {
                row[k] = 1.0 / (k as f64 + 1.0);
            }
        }
        let l = banded_cholesky(&band, 0.0).unwrap();
        let x: Vec<f64> = (0..m).map(|i| (i as f64).sin()).collect();
        let mut b = vec![0.0; m];
        for i in 0..m {
            for j in 0..m {
                let a = if i >= j && i - j <= BAND {
                    band[i][i - j]
                } else if j > i && j - i <= BAND {
                    band[j][j - i]
                } else {
                    0.0
                };
                b[i] += a * x[j];
            }
        }
        let y = banded_solve(&l, &b);
        for (p, q) in x.iter().zip(&y) {
            assert!((p - q).abs() < 1e-12);
        }
    }

    #[test]
    fn minimiser_decreases_energy_and_converges() {
        let p0 = build_test_profile(3, DEFAULT_DELTA, 256).unwrap();
        let (p, rep) = minimize_energy(&p0, 100, 1e-6).unwrap();
        assert!(rep.converged, "{rep:?}");
        assert!(rep.is_descending());
        assert!(energy(&p).unwrap().total <= energy(&p0).unwrap().total);
        assert!(p.symmetry_residual() <= 10.0 * p0.symmetry_residual() + 1e-14);
    }
}
