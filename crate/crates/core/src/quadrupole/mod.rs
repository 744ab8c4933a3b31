//! Quadrupole-symmetric connections on `S^4`.
//!
//! Quadrupole bundles `P_(n+, n-)` are labelled by two odd positive integers.
//! Connections with quadrupole symmetry reduce to a triple of functions on
//! `(0, pi/3)`, and their Yang–Mills energy to a one-dimensional integral. This
//! module evaluates that integral for explicit test profiles, minimises it
//! under the boundary and reflection constraints, and tabulates how energy and
//! the Taubes index bound grow with the charge.

pub mod energy;
pub mod minimize;
pub mod profile;
pub mod report;

use serde::Serialize;

pub use energy::{energy, energy_with, EnergyBreakdown, EnergyForm};
pub use minimize::{minimize_energy, DescentReport};
pub use profile::{build_test_profile, Profile, TestProfileShape, DEFAULT_DELTA, DEFAULT_GRID, THETA_MAX};
pub use report::{growth_report, GrowthReport, GrowthRow};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuadrupoleBundle {
    pub n_plus: i64,
    pub n_minus: i64,
    pub kappa: i64,
}

impl QuadrupoleBundle {
    pub fn new(n_plus: i64, n_minus: i64) -> Result<Self> {
        Ok(Self { n_plus, n_minus, kappa: charge(n_plus, n_minus)? })
    }
}

/// Topological charge `(n+^2 - n-^2) / 8` of `P_(n+, n-)`.
pub fn charge(n_plus: i64, n_minus: i64) -> Result<i64> {
    for (name, v) in [("n+", n_plus), ("n-", n_minus)] {
        if v <= 0 || v % 2 == 0 {
            return Err(Error::Parameter(format!("{name} = {v} must be odd and positive")));
        }
    }
    let num = n_plus
        .checked_mul(n_plus)
        .and_then(|a| n_minus.checked_mul(n_minus).map(|b| a - b))
        .ok_or_else(|| Error::Parameter("charge overflows i64".into()))?;
    assert_eq!(num % 8, 0, "odd squares differ by a multiple of 8");
    Ok(num / 8)
}

/// Taubes' lower bound `2(|kappa| + 1)` on the index of a non-self-dual
/// Yang–Mills connection.
pub fn taubes_lower_bound(kappa: i64) -> i64 {
    2 * (kappa.abs() + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charges_of_small_bundles() {
        assert_eq!(charge(5, 3).unwrap(), 2);
        assert_eq!(charge(3, 3).unwrap(), 0);
        assert_eq!(charge(7, 3).unwrap(), 5);
        assert_eq!(charge(3, 7).unwrap(), -5);
    }

    #[test]
    fn even_or_nonpositive_labels_are_rejected() {
        assert!(charge(4, 3).is_err());
        assert!(charge(3, -1).is_err());
        assert!(charge(0, 3).is_err());
    }

    #[test]
    fn taubes_bound_values() {
        assert_eq!(taubes_lower_bound(2), 6);
        assert_eq!(taubes_lower_bound(0), 2);
        assert_eq!(taubes_lower_bound(5), 12);
        assert_eq!(taubes_lower_bound(-5), 12);
    }
}
