//! The weighted problem `(-Delta + 2) psi = mu V_eps psi`, its heat trace,
//! the Birman–Schwinger comparison and the counting bound.

use rayon::prelude::*;
use serde::Serialize;

use super::potential::RadialPotential;
use super::sector::{count_nonpositive, sector_multiplicity, RadialGrid};
use super::tridiag::TridiagPencil;
use super::{Certificate, Level, SpectrumResult, MAX_SECTOR, YAMABE_SQ_S4};
use crate::{Error, Result, E2};

/// `36 e^2 rank ||V||^2 / Y^2` with the round `S^4` value `Y^2 = 384 pi^2`.
pub fn clr_bound(pot: &RadialPotential, rank: u32) -> Result<f64> {
    if rank == 0 {
        return Err(Error::Parameter("rank must be at least 1".into()));
    }
    Ok(36.0 * E2 * rank as f64 * pot.l2_norm_sq() / YAMABE_SQ_S4)
}

/// Sector pencil `(K_l + 2M, M V_eps)`.
pub(crate) fn weighted_pencil(grid: &RadialGrid, l: usize, v_eps: &[f64]) -> Result<TridiagPencil> {
    let (diag, off) = grid.stiffness(l, 1.0, &vec![2.0; grid.len()]);
    let weight = grid.mass.iter().zip(v_eps).map(|(m, v)| m * v).collect();
    TridiagPencil::new(diag, off, weight)
}

/// Discrete weight values and their maximum.
fn sampled_weight(grid: &RadialGrid, pot: &RadialPotential) -> Result<(Vec<f64>, f64)> {
    let v = grid.sample(|t| pot.eval_eps(t));
    if let Some(bad) = v.iter().find(|x| !(**x > 0.0)) {
        return Err(Error::Parameter(format!("V_eps = {bad} is not positive")));
    }
    let max = v.iter().copied().fold(0.0, f64::max);
    Ok((v, max))
}

/// In sector `l` every weighted eigenvalue is at least
/// `(l(l+2) + 2) / max V_eps`.
fn sector_floor(l: usize, max_v: f64) -> f64 {
    ((l * (l + 2)) as f64 + 2.0) / max_v
}

/// Lowest `n_eigs` weighted eigenvalues over all sectors, each tagged with
/// its sector and multiplicity `(l + 1)^2`.
pub fn weighted_spectrum(pot: &RadialPotential, n_eigs: usize, grid_size: usize) -> Result<SpectrumResult> {
    if n_eigs == 0 {
        return Err(Error::Parameter("n_eigs must be positive".into()));
    }
    let grid = RadialGrid::new(grid_size)?;
    let (v, max_v) = sampled_weight(&grid, pot)?;
    let mut levels: Vec<Level> = Vec::new();
    let mut l = 0;
    loop {
        if l > MAX_SECTOR {
            return Err(Error::Truncation(MAX_SECTOR));
        }
        if levels.len() >= n_eigs && sector_floor(l, max_v) > levels[n_eigs - 1].mu {
            break;
        }
        let p = weighted_pencil(&grid, l, &v)?;
        for mu in p.lowest(n_eigs)? {
            levels.push(Level { mu, multiplicity: sector_multiplicity(l), sector: l });
        }
        levels.sort_by(|a, b| a.mu.total_cmp(&b.mu).then(a.sector.cmp(&b.sector)));
        levels.truncate(n_eigs);
        l += 1;
    }
    let margin = sector_floor(l, max_v) - levels[n_eigs - 1].mu;
    Ok(SpectrumResult {
        grid_size,
        epsilon: pot.epsilon,
        levels,
        n0: 0,
        n0_10eps: 0,
        certificate: Certificate { l_max: l - 1, first_positive_sector: l, margin },
    })
}

/// All weighted eigenvalues `< mu_max`.
fn levels_below(grid: &RadialGrid, v: &[f64], max_v: f64, mu_max: f64) -> Result<Vec<Level>> {
    let mut cut = 0;
    while sector_floor(cut, max_v) < mu_max {
        cut += 1;
        if cut > MAX_SECTOR {
            return Err(Error::Truncation(MAX_SECTOR));
        }
    }
    let per_sector = (0..cut)
        .into_par_iter()
        .map(|l| -> Result<Vec<Level>> {
            let p = weighted_pencil(grid, l, v)?;
            let k = p.count_below(mu_max, false);
            Ok(p.lowest(k)?.into_iter().map(|mu| Level { mu, multiplicity: sector_multiplicity(l), sector: l }).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut levels: Vec<Level> = per_sector.into_iter().flatten().collect();
    levels.sort_by(|a, b| a.mu.total_cmp(&b.mu).then(a.sector.cmp(&b.sector)));
    Ok(levels)
}

#[derive(Debug, Clone, Serialize)]
pub struct HeatTrace {
    pub t: f64,
    /// `sum exp(-2 mu t)` over the computed eigenvalues, with multiplicity.
    pub partial: f64,
    /// Weyl-law bound on the omitted eigenvalues `mu >= mu_max`.
    pub tail: f64,
    pub mu_max: f64,
    /// Coefficient `a` of the fitted counting function `N(mu) = a mu^2`.
    pub weyl_a: f64,
    pub eigenvalues_used: u64,
    /// `36 ||V_eps||^2 / Y^2`, the bound on `t^2 h(t)`.
    pub bound: f64,
    /// `t^2 (partial + tail)`.
    pub scaled: f64,
    pub bound_holds: bool,
}

/// Maximum number of doublings of the spectral window.
const MAX_DOUBLINGS: usize = 12;

/// Heat trace `h(t) = sum_i exp(-2 mu_i t)` of the weighted problem.
///
/// Eigenvalues are computed below a window `mu_max` that doubles until the
/// tail `int_{mu_max}^inf exp(-2 mu t) dN` with `N(mu) = a mu^2` falls below
/// 1% of the partial sum. The coefficient `a` is the largest `N(mu)/mu^2`
/// over the upper half of the window.
pub fn heat_trace(pot: &RadialPotential, t: f64, grid_size: usize) -> Result<HeatTrace> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Parameter(format!("t = {t} must be positive")));
    }
    let grid = RadialGrid::new(grid_size)?;
    let (v, max_v) = sampled_weight(&grid, pot)?;
    let bound = 36.0 * pot.l2_norm_sq_eps() / YAMABE_SQ_S4;
    let mut mu_max = (5.0 / t).max(4.0 * sector_floor(0, max_v));
    for _ in 0..=MAX_DOUBLINGS {
        let levels = levels_below(&grid, &v, max_v, mu_max)?;
        let mut partial = 0.0;
        let mut cumulative = 0u64;
        let mut weyl_a = cumulative_count(&levels) as f64 / (mu_max * mu_max);
        for lv in &levels {
            partial += lv.multiplicity as f64 * (-2.0 * lv.mu * t).exp();
            cumulative += lv.multiplicity;
            if lv.mu >= mu_max / 2.0 {
                weyl_a = weyl_a.max(cumulative as f64 / (lv.mu * lv.mu));
            }
        }
        let tail = 2.0 * weyl_a * (-2.0 * mu_max * t).exp() * (mu_max / (2.0 * t) + 1.0 / (4.0 * t * t));
        if partial > 0.0 && tail < 0.01 * partial {
            let scaled = t * t * (partial + tail);
            return Ok(HeatTrace {
                t,
                partial,
                tail,
                mu_max,
                weyl_a,
                eigenvalues_used: cumulative,
                bound,
                scaled,
                bound_holds: scaled <= bound,
            });
        }
        mu_max *= 2.0;
    }
    Err(Error::Resolution(format!("heat-trace tail above 1% after {MAX_DOUBLINGS} doublings at t = {t}")))
}

/// Writes one CSV row per heat-trace evaluation.
pub fn write_heat_csv<W: std::io::Write>(rows: &[HeatTrace], w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    for r in rows {
        wr.serialize(r)?;
    }
    wr.flush()?;
    Ok(())
}

fn cumulative_count(levels: &[Level]) -> u64 {
    levels.iter().map(|l| l.multiplicity).sum()
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
pub struct BirmanSchwinger {
    /// Nonpositive eigenvalues of `-Delta + 2 - V_eps` (Sturm counts).
    pub n0: u64,
    /// Weighted eigenvalues `mu <= 1` (QL spectra).
    pub weighted_at_most_one: u64,
    pub holds: bool,
}

/// Compares the two counts. The first uses Sturm sequences on the
/// Schrödinger pencil; the second diagonalises each weighted sector by QL.
pub fn birman_schwinger_compare(pot: &RadialPotential, grid_size: usize) -> Result<BirmanSchwinger> {
    let n0 = count_nonpositive(pot, grid_size)?.n0;
    let grid = RadialGrid::new(grid_size)?;
    let (v, max_v) = sampled_weight(&grid, pot)?;
    let mut cut = 0;
    while sector_floor(cut, max_v) <= 1.0 {
        cut += 1;
        if cut > MAX_SECTOR {
            return Err(Error::Truncation(MAX_SECTOR));
        }
    }
    let counts = (0..cut)
        .into_par_iter()
        .map(|l| -> Result<u64> {
            let ev = weighted_pencil(&grid, l, &v)?.all_eigenvalues()?;
            Ok(sector_multiplicity(l) * ev.iter().filter(|mu| **mu <= 1.0).count() as u64)
        })
        .collect::<Result<Vec<_>>>()?;
    let weighted_at_most_one = counts.iter().sum();
    Ok(BirmanSchwinger { n0, weighted_at_most_one, holds: n0 <= weighted_at_most_one })
}

/// `s^2 sum_k m_k exp(-2 (k(k+3) + 2) s)` for the round sphere, the heat
/// trace of a constant weight `c` at `t = c s`, scaled by `t^2 / c^2`.
pub fn constant_heat_plateau(s: f64, kmax: usize) -> f64 {
    super::s4_spectrum_closed_form(kmax)
        .iter()
        .map(|(lam, m)| *m as f64 * (-2.0 * (*lam as f64 + 2.0) * s).exp())
        .sum::<f64>()
        * s
        * s
}
