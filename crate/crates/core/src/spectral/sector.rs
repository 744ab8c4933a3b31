//! Cell-centred finite-volume discretisation of radial operators on `S^4`.
//!
//! For `u = f(theta) Y(x)` with `Y` a unit-norm degree-`l` harmonic on `S^3`,
//!
//! ```text
//! int |grad u|^2 = int_0^pi (f')^2 sin^3 + l(l+2) f^2 sin dtheta
//! ```
//!
//! Cells `[j h, (j+1) h]` with `h = pi / N` carry one unknown each. The
//! gradient term couples neighbours through face weights `sin^3` at the
//! shared face, which vanish at the poles; the mass and centrifugal terms
//! use the exact cell integrals of `sin^3` and `sin`. Every sector problem
//! becomes a symmetric tridiagonal pencil `(K_l + M q, M)`.

use std::f64::consts::PI;

use rayon::prelude::*;

use super::potential::RadialPotential;
use super::tridiag::TridiagPencil;
use super::{Certificate, Level, SpectrumResult, MAX_SECTOR};
use crate::{Error, Result};

/// Smallest supported grid.
pub const MIN_GRID: usize = 16;

/// `int_0^theta sin^3 = 4 sin^4(theta/2) (2 + cos theta) / 3` evaluated on
/// the nearer half of `[0, pi]` to avoid cancellation.
fn sin3_primitive(t: f64) -> f64 {
    let g = |x: f64| 4.0 * (x / 2.0).sin().powi(4) * (2.0 + x.cos()) / 3.0;
    if t <= PI / 2.0 {
        g(t)
    } else {
        4.0 / 3.0 - g(PI - t)
    }
}

/// Geometry of the radial grid.
#[derive(Debug, Clone)]
pub struct RadialGrid {
    pub h: f64,
    /// Cell centres.
    pub theta: Vec<f64>,
    /// `sin^3` at the `N + 1` faces.
    pub face: Vec<f64>,
    /// `int sin^3` over each cell.
    pub mass: Vec<f64>,
    /// `int sin` over each cell.
    pub centrifugal: Vec<f64>,
}

impl RadialGrid {
    pub fn new(n: usize) -> Result<Self> {
        if n < MIN_GRID {
            return Err(Error::Parameter(format!("grid size {n} below {MIN_GRID}")));
        }
        let h = PI / n as f64;
        let edge = |j: usize| if j == n { PI } else { j as f64 * h };
        let theta = (0..n).map(|j| (j as f64 + 0.5) * h).collect();
        let face = (0..=n).map(|j| if j == 0 || j == n { 0.0 } else { edge(j).sin().powi(3) }).collect();
        let mass = (0..n).map(|j| sin3_primitive(edge(j + 1)) - sin3_primitive(edge(j))).collect();
        let centrifugal =
            (0..n).map(|j| 2.0 * ((edge(j) + edge(j + 1)) / 2.0).sin() * ((edge(j + 1) - edge(j)) / 2.0).sin()).collect();
        Ok(Self { h, theta, face, mass, centrifugal })
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    /// Stiffness `scale * K_l` plus `M q` as `(diag, off)`.
    pub fn stiffness(&self, l: usize, scale: f64, q: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let n = self.len();
        let ll = (l * (l + 2)) as f64;
        let diag = (0..n)
            .map(|j| {
                scale * ((self.face[j] + self.face[j + 1]) / self.h + ll * self.centrifugal[j]) + self.mass[j] * q[j]
            })
            .collect();
        let off = (0..n - 1).map(|j| -scale * self.face[j + 1] / self.h).collect();
        (diag, off)
    }

    pub fn sample(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        self.theta.iter().map(|t| f(*t)).collect()
    }
}

/// `(l + 1)^2`, the dimension of degree-`l` harmonics on `S^3`.
pub fn sector_multiplicity(l: usize) -> u64 {
    let l = l as u64;
    (l + 1) * (l + 1)
}

/// One angular sector of `-Delta + 2 - V_eps` as the pencil
/// `(K_l + M (2 - V_eps), M)`.
#[derive(Debug, Clone)]
pub struct SectorProblem {
    pub l: usize,
    pub pencil: TridiagPencil,
}

impl SectorProblem {
    pub fn schrodinger(grid: &RadialGrid, l: usize, v_eps: &[f64]) -> Result<Self> {
        let q: Vec<f64> = v_eps.iter().map(|v| 2.0 - v).collect();
        let (diag, off) = grid.stiffness(l, 1.0, &q);
        Ok(Self { l, pencil: TridiagPencil::new(diag, off, grid.mass.clone())? })
    }

    pub fn multiplicity(&self) -> u64 {
        sector_multiplicity(self.l)
    }

    /// Number of eigenvalues `<= 0`.
    pub fn count_nonpositive(&self) -> usize {
        self.pencil.count_below(0.0, true)
    }

    pub fn lowest(&self, k: usize) -> Result<Vec<f64>> {
        self.pencil.lowest(k)
    }
}

/// First sector `l` with `l(l+2) + 2 - sup > 0`, and its margin.
///
/// Since `int sin >= int sin^3` on every cell and `K_0 >= 0`, every sector
/// from there on is positive definite.
pub fn sector_cutoff(sup: f64) -> Result<(usize, f64)> {
    for l in 0..=MAX_SECTOR {
        let margin = (l * (l + 2)) as f64 + 2.0 - sup;
        if margin > 0.0 {
            return Ok((l, margin));
        }
    }
    Err(Error::Truncation(MAX_SECTOR))
}

fn count_at(grid: &RadialGrid, pot: &RadialPotential, eps: f64) -> Result<(Vec<(usize, usize)>, Certificate)> {
    let v_eps = grid.sample(|t| pot.v.eval(t) + eps);
    let sup = v_eps.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (cut, margin) = sector_cutoff(sup)?;
    let counts = (0..cut)
        .into_par_iter()
        .map(|l| SectorProblem::schrodinger(grid, l, &v_eps).map(|s| (l, s.count_nonpositive())))
        .collect::<Result<Vec<_>>>()?;
    let certificate = Certificate { l_max: cut.saturating_sub(1), first_positive_sector: cut, margin };
    Ok((counts, certificate))
}

/// Multiplicity-weighted count of nonpositive eigenvalues of
/// `-Delta + 2 - V_eps` on the unit `S^4`.
///
/// The count is reported at `eps` and `10 eps`; the returned levels are the
/// nonpositive sector eigenvalues at `eps`.
pub fn count_nonpositive(pot: &RadialPotential, grid_size: usize) -> Result<SpectrumResult> {
    let grid = RadialGrid::new(grid_size)?;
    let (counts, certificate) = count_at(&grid, pot, pot.epsilon)?;
    let (counts10, _) = count_at(&grid, pot, 10.0 * pot.epsilon)?;
    let weigh = |c: &[(usize, usize)]| c.iter().map(|(l, k)| sector_multiplicity(*l) * *k as u64).sum::<u64>();
    let v_eps = grid.sample(|t| pot.eval_eps(t));
    let mut levels = Vec::new();
    for &(l, k) in &counts {
        if k > 0 {
            let s = SectorProblem::schrodinger(&grid, l, &v_eps)?;
            for mu in s.lowest(k)? {
                levels.push(Level { mu, multiplicity: sector_multiplicity(l), sector: l });
            }
        }
    }
    levels.sort_by(|a, b| a.mu.total_cmp(&b.mu).then(a.sector.cmp(&b.sector)));
    Ok(SpectrumResult {
        grid_size,
        epsilon: pot.epsilon,
        levels,
        n0: weigh(&counts),
        n0_10eps: weigh(&counts10),
        certificate,
    })
}
