//! Radial spectral problems on the unit round `S^4` (`R = 12`, `R/6 = 2`).
//!
//! Functions of the polar angle are separated into sectors indexed by the
//! degree `l` of a harmonic on `S^3`; sector `l` has multiplicity `(l+1)^2`.
//! On each sector the operators become symmetric tridiagonal pencils solved
//! by Sturm counting, bisection or implicit QL.
//!
//! * [`count_nonpositive`] counts nonpositive eigenvalues of
//!   `-Delta + 2 - V_eps`, with a positivity certificate for all higher
//!   sectors, and [`clr_bound`] evaluates the counting bound.
//! * [`weighted_spectrum`] and [`heat_trace`] treat
//!   `(-Delta + 2) psi = mu V_eps psi`.
//! * [`birman_schwinger_compare`] counts both sides of the
//!   Birman–Schwinger principle by independent routes.
//! * [`GaugeProblem`] handles the conformal gauge-fixing operator.

use std::f64::consts::PI;
use std::io::Write;

use serde::Serialize;

mod gauge;
mod potential;
pub mod sector;
pub mod tridiag;
mod weighted;

pub use gauge::{GaugeProblem, GaugeRoot, Lambda1};
pub use potential::{RadialFunction, RadialPotential};
pub use sector::{count_nonpositive, sector_multiplicity, RadialGrid, SectorProblem};
pub use tridiag::TridiagPencil;
pub use weighted::{
    birman_schwinger_compare, clr_bound, constant_heat_plateau, heat_trace, weighted_spectrum, write_heat_csv,
    BirmanSchwinger,
    HeatTrace,
};

use crate::Result;

/// Volume of the unit `S^4`.
pub const VOLUME_S4: f64 = 8.0 * PI * PI / 3.0;
/// Scalar curvature of the unit `S^4`.
pub const SCALAR_S4: f64 = 12.0;
/// `Y(S^4)^2 = 384 pi^2`.
pub const YAMABE_SQ_S4: f64 = 384.0 * PI * PI;
/// `Y(S^4) = 8 sqrt6 pi`.
pub const YAMABE_S4: f64 = 8.0 * 2.449_489_742_783_178 * PI;
/// Largest sector examined before giving up.
pub const MAX_SECTOR: usize = 10_000;
/// Default radial grid.
pub const DEFAULT_GRID: usize = 2000;

/// One sector eigenvalue with its multiplicity `(l+1)^2`.
#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct Level {
    pub mu: f64,
    pub multiplicity: u64,
    pub sector: usize,
}

/// Proof that all sectors from `first_positive_sector` on contribute nothing.
#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct Certificate {
    /// Largest sector actually solved.
    pub l_max: usize,
    pub first_positive_sector: usize,
    /// Positivity margin of the first skipped sector.
    pub margin: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumResult {
    pub grid_size: usize,
    pub epsilon: f64,
    pub levels: Vec<Level>,
    /// Multiplicity-weighted count of nonpositive eigenvalues at `epsilon`.
    pub n0: u64,
    /// The same count at `10 epsilon`.
    pub n0_10eps: u64,
    pub certificate: Certificate,
}

impl SpectrumResult {
    /// Whether the counts at `epsilon` and `10 epsilon` agree.
    pub fn epsilon_stable(&self) -> bool {
        self.n0 == self.n0_10eps
    }

    /// Writes `mu,multiplicity,sector` rows.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        for lv in &self.levels {
            wr.serialize(lv)?;
        }
        wr.flush()?;
        Ok(())
    }
}

/// Laplacian eigenvalues `k(k+3)` on the unit `S^4` with multiplicities
/// `(k+1)(k+2)(2k+3)/6`, for `k = 0..=kmax`.
pub fn s4_spectrum_closed_form(kmax: usize) -> Vec<(u64, u64)> {
    (0..=kmax as u64).map(|k| (k * (k + 3), (k + 1) * (k + 2) * (2 * k + 3) / 6)).collect()
}

/// Number of eigenvalues `k(k+3) + 2 - c <= 0`, with multiplicity.
pub fn constant_count_closed_form(c: f64) -> u64 {
    s4_spectrum_closed_form(((c.max(0.0)).sqrt() as usize) + 2)
        .into_iter()
        .filter(|(lam, _)| *lam as f64 + 2.0 - c <= 0.0)
        .map(|(_, m)| m)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_first_levels() {
        assert_eq!(s4_spectrum_closed_form(2), vec![(0, 1), (4, 5), (10, 14)]);
    }

    #[test]
    fn closed_form_multiplicity_is_sum_of_sector_multiplicities() {
        for (k, (_, m)) in s4_spectrum_closed_form(12).into_iter().enumerate() {
            let sum: u64 = (0..=k).map(sector_multiplicity).sum();
            assert_eq!(m, sum);
        }
    }

    #[test]
    fn constant_counts() {
        assert_eq!(constant_count_closed_form(16.0), 20);
        assert_eq!(constant_count_closed_form(2.0), 1);
        assert_eq!(constant_count_closed_form(1.0), 0);
    }

    #[test]
    fn yamabe_constants_agree() {
        assert!((YAMABE_S4 * YAMABE_S4 - YAMABE_SQ_S4).abs() < 1e-12 * YAMABE_SQ_S4);
    }
}
