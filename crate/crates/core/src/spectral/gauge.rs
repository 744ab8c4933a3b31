//! Conformal gauge fixing: the first eigenvalue of
//! `L^t = -6 Delta + Phi^t` with `Phi^t = R - t (2 sqrt6 |W| + 3 gamma1 |F|)`
//! on the unit `S^4` (`R = 12`), and the root `t0` of `lambda_1(L^t) = 0`.

use serde::{Deserialize, Serialize};

use super::potential::RadialFunction;
use super::sector::RadialGrid;
use super::tridiag::TridiagPencil;
use super::{SCALAR_S4, YAMABE_S4};
use crate::lieforms::GAMMA1_MAX;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaugeProblem {
    /// `|W|` as a radial function.
    pub weyl: RadialFunction,
    /// `|F|` as a radial function.
    pub curvature: RadialFunction,
    pub gamma1: f64,
    pub grid_size: usize,
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct Lambda1 {
    pub t: f64,
    /// Lowest eigenvalue over all sectors.
    pub lambda1: f64,
    /// Lowest eigenvalue in sector `l = 1`.
    pub sector1: f64,
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct GaugeRoot {
    pub t0: f64,
    /// `Y / (2 sqrt6 ||W|| + 3 gamma1 ||F||)`.
    pub lower_bound: f64,
    pub lambda_at_t0: f64,
    /// `true` when `lambda_1(L^1) >= 0` and `t0 = 1` was returned directly.
    pub saturated: bool,
    /// `lower_bound <= t0 <= 1` up to `1e-8`.
    pub bound_holds: bool,
}

impl GaugeProblem {
    pub fn new(weyl: RadialFunction, curvature: RadialFunction, gamma1: f64, grid_size: usize) -> Result<Self> {
        let p = Self { weyl, curvature, gamma1, grid_size };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        self.weyl.validate()?;
        self.curvature.validate()?;
        if !(self.gamma1 > 0.0 && self.gamma1 <= GAMMA1_MAX + 1e-12) {
            return Err(Error::Parameter(format!("gamma1 = {} outside (0, 4 sqrt3 / 3]", self.gamma1)));
        }
        RadialGrid::new(self.grid_size)?;
        Ok(())
    }

    /// `Phi^t` at `theta`.
    pub fn phi(&self, t: f64, theta: f64) -> f64 {
        SCALAR_S4 - t * (2.0 * 6f64.sqrt() * self.weyl.eval(theta) + 3.0 * self.gamma1 * self.curvature.eval(theta))
    }

    fn sector_lowest(&self, grid: &RadialGrid, l: usize, t: f64) -> Result<f64> {
        let q = grid.sample(|th| self.phi(t, th));
        let (diag, off) = grid.stiffness(l, 6.0, &q);
        TridiagPencil::new(diag, off, grid.mass.clone())?.eigenvalue(0)
    }

    /// `lambda_1(L^t)`.
    ///
    /// For radial `Phi^t` the stiffness grows with `l`, so the minimum over
    /// sectors sits at `l = 0`. The `l = 1` eigenvalue is computed as a
    /// check and a violation is reported as an error.
    pub fn lambda1(&self, t: f64) -> Result<Lambda1> {
        let grid = RadialGrid::new(self.grid_size)?;
        self.lambda1_on(&grid, t)
    }

    fn lambda1_on(&self, grid: &RadialGrid, t: f64) -> Result<Lambda1> {
        let l0 = self.sector_lowest(grid, 0, t)?;
        let l1 = self.sector_lowest(grid, 1, t)?;
        if l1 < l0 - 1e-9 * (1.0 + l0.abs()) {
            return Err(Error::Resolution(format!("sector 1 eigenvalue {l1} below sector 0 eigenvalue {l0}")));
        }
        Ok(Lambda1 { t, lambda1: l0, sector1: l1 })
    }

    /// `Y / (2 sqrt6 ||W|| + 3 gamma1 ||F||)` with `L^2` norms on the unit `S^4`.
    pub fn lower_bound(&self) -> f64 {
        let denom =
            2.0 * 6f64.sqrt() * self.weyl.l2_norm_sq().sqrt() + 3.0 * self.gamma1 * self.curvature.l2_norm_sq().sqrt();
        if denom > 0.0 {
            YAMABE_S4 / denom
        } else {
            f64::INFINITY
        }
    }

    /// Bisects for the root of `t -> lambda_1(L^t)` on `[0, 1]`.
    pub fn find_t0(&self) -> Result<GaugeRoot> {
        let grid = RadialGrid::new(self.grid_size)?;
        let at0 = self.lambda1_on(&grid, 0.0)?.lambda1;
        if at0 <= 0.0 {
            return Err(Error::Precondition(format!("lambda_1(L^0) = {at0} is not positive")));
        }
        let lower_bound = self.lower_bound();
        let at1 = self.lambda1_on(&grid, 1.0)?.lambda1;
        if at1 >= 0.0 {
            return Ok(GaugeRoot {
                t0: 1.0,
                lower_bound,
                lambda_at_t0: at1,
                saturated: true,
                bound_holds: lower_bound <= 1.0 + 1e-8,
            });
        }
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        let mut lam = at1;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            lam = self.lambda1_on(&grid, mid)?.lambda1;
            if lam.abs() < 1e-10 * SCALAR_S4 && hi - lo < 1e-13 {
                break;
            }
            if lam > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let t0 = 0.5 * (lo + hi);
        Ok(GaugeRoot { t0, lower_bound, lambda_at_t0: lam, saturated: false, bound_holds: t0 >= lower_bound - 1e-8 })
    }
}
