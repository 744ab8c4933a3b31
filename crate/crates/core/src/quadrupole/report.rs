//! Energy growth of the `(l, 3)` family against the Taubes index bound.

use rayon::prelude::*;
use serde::Serialize;

use super::energy::energy;
use super::minimize::minimize_energy;
use super::profile::build_test_profile;
use super::{charge, taubes_lower_bound};
use crate::{Error, Result};

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct GrowthRow {
    pub l: i64,
    pub kappa: i64,
    pub taubes: i64,
    pub energy_test: f64,
    pub energy_min: f64,
    pub energy_test_over_l2: f64,
    pub energy_min_over_l2: f64,
    pub taubes_over_energy: f64,
    pub min_grad_norm: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthReport {
    pub grid_size: usize,
    pub delta: f64,
    pub rows: Vec<GrowthRow>,
    /// Least-squares slope of `log E(a_l)` against `log l`.
    pub slope_test: f64,
    /// Same for the minimised energies.
    pub slope_min: f64,
    /// Smallest `taubes / E(a_l)` over the table.
    pub min_taubes_ratio: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct GrowthOptions {
    pub delta: f64,
    pub max_iters: usize,
    pub tol: f64,
}

impl Default for GrowthOptions {
    fn default() -> Self {
        Self { delta: super::DEFAULT_DELTA, max_iters: 200, tol: 1e-6 }
    }
}

/// Least-squares slope of `y` against `x`.
pub fn regression_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

pub fn growth_report(l_list: &[i64], grid_size: usize, opts: GrowthOptions) -> Result<GrowthReport> {
    if l_list.len() < 2 {
        return Err(Error::Parameter("growth report needs at least two values of l".into()));
    }
    for &l in l_list {
        if l < 3 || l % 2 == 0 {
            return Err(Error::Parameter(format!("l = {l} must be odd and at least 3")));
        }
    }
    let rows = l_list
        .par_iter()
        .map(|&l| -> Result<GrowthRow> {
            let kappa = charge(l, 3)?;
            let taubes = taubes_lower_bound(kappa);
            let p0 = build_test_profile(l, opts.delta, grid_size)?;
            let e_test = energy(&p0)?.total;
            let (p, rep) = minimize_energy(&p0, opts.max_iters, opts.tol)?;
            let e_min = energy(&p)?.total;
            let l2 = (l * l) as f64;
            Ok(GrowthRow {
                l,
                kappa,
                taubes,
                energy_test: e_test,
                energy_min: e_min,
                energy_test_over_l2: e_test / l2,
                energy_min_over_l2: e_min / l2,
                taubes_over_energy: taubes as f64 / e_test,
                min_grad_norm: rep.grad_norm,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let lx: Vec<f64> = rows.iter().map(|r| (r.l as f64).ln()).collect();
    let et: Vec<f64> = rows.iter().map(|r| r.energy_test.ln()).collect();
    let em: Vec<f64> = rows.iter().map(|r| r.energy_min.ln()).collect();
    let min_taubes_ratio = rows.iter().map(|r| r.taubes_over_energy).fold(f64::INFINITY, f64::min);
    Ok(GrowthReport {
        grid_size,
        delta: opts.delta,
        slope_test: regression_slope(&lx, &et),
        slope_min: regression_slope(&lx, &em),
        min_taubes_ratio,
        rows,
    })
}

impl GrowthReport {
    /// Writes the table as CSV.
    pub fn write_csv<W: std::io::Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        for r in &self.rows {
            wr.serialize(r)?;
        }
        wr.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_exact_power_law() {
        let x: Vec<f64> = [3.0f64, 7.0, 11.0].iter().map(|v| v.ln()).collect();
        let y: Vec<f64> = x.iter().map(|v| 2.0 * v + 1.0).collect();
        assert!((regression_slope(&x, &y) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn even_l_is_rejected() {
        assert!(growth_report(&[3, 4], 128, GrowthOptions::default()).is_err());
    }

    #[test]
    fn small_report_has_expected_charges() {
        let rep = growth_report(&[3, 7, 11], 128, GrowthOptions::default()).unwrap();
        let k: Vec<i64> = rep.rows.iter().map(|r| r.kappa).collect();
        assert_eq!(k, vec![0, 5, 14]);
        let mut buf = Vec::new();
        rep.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("l,kappa,taubes,"));
        assert_eq!(text.lines().count(), 4);
    }
}
