//! Pointwise curvature identities and the index, energy and Betti-number
//! bound evaluators.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::Serialize;

use super::record::GeometryRecord;
use crate::{Error, Result, E2};

/// `sigma_2(A) = -|Ric|^2 / 8 + R^2 / 24` from the Ricci eigenvalues.
pub fn sigma2_pointwise(ric: [f64; 4], scalar: f64) -> Result<f64> {
    let tr: f64 = ric.iter().sum();
    if (tr - scalar).abs() > 1e-12 * (1.0 + scalar.abs()) {
        return Err(Error::Parameter(format!("Ricci eigenvalues sum to {tr}, not R = {scalar}")));
    }
    let ric2: f64 = ric.iter().map(|l| l * l).sum();
    Ok(-ric2 / 8.0 + scalar * scalar / 24.0)
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct Rho {
    /// `4 int sigma_2 / Y^2`.
    pub rho1: f64,
    /// `24 int |W+|^2 / Y^2`.
    pub rho_plus: f64,
}

pub fn rho_invariants(record: &GeometryRecord, allow_external: bool) -> Result<Rho> {
    let y = record.value("yamabe", allow_external)?;
    if !(y > 0.0) {
        return Err(Error::Precondition(format!("Yamabe invariant {y} of {} is not positive", record.name())));
    }
    let y2 = y * y;
    Ok(Rho {
        rho1: 4.0 * record.value("int_sigma2", allow_external)? / y2,
        rho_plus: 24.0 * record.value("int_wplus2", allow_external)? / y2,
    })
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct BoundReport {
    pub name: String,
    pub value: f64,
    pub inputs: BTreeMap<String, f64>,
    /// The right-hand side cannot be met by any nonnegative count: negative
    /// for Betti and energy bounds, nonpositive for the Yang–Mills bound,
    /// which assumes a non-instanton connection exists.
    pub vacuous: bool,
    pub notes: Vec<String>,
    pub warnings: Vec<String>,
}

impl BoundReport {
    fn new(name: &str, value: f64, inputs: &[(&str, f64)]) -> Self {
        Self {
            name: name.into(),
            value,
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            vacuous: value < 0.0,
            notes: Vec::new(),
            warnings: Vec::new(),
        }
    }
}

/// `(144 e^2 d / Y^2) (-12 pi^2 chi + 12 int |F|^2 + 3 sqrt2 int |W||F| + 3 int |W|^2)`.
pub fn ym_index_bound_raw(chi: i64, yamabe_sq: f64, int_w2: f64, int_f2: f64, int_wf: f64, dim: usize) -> f64 {
    144.0 * E2 * dim as f64 / yamabe_sq
        * (-12.0 * PI * PI * chi as f64 + 12.0 * int_f2 + 3.0 * 2f64.sqrt() * int_wf + 3.0 * int_w2)
}

/// The index-plus-nullity bound for a non-instanton Yang–Mills connection.
///
/// On a record matching the round `S^4` the report carries the result of
/// [`corollary_check`] as a warning.
pub fn ym_index_bound(
    record: &GeometryRecord,
    int_f2: f64,
    int_wf: f64,
    dim: usize,
    allow_external: bool,
) -> Result<BoundReport> {
    if int_f2 < 0.0 || int_wf < 0.0 || dim == 0 {
        return Err(Error::Parameter(format!("int |F|^2 = {int_f2}, int |W||F| = {int_wf}, dim = {dim}")));
    }
    let y = record.value("yamabe", allow_external)?;
    let w2 = record.value("int_w2", allow_external)?;
    let value = ym_index_bound_raw(record.chi(), y * y, w2, int_f2, int_wf, dim);
    let mut rep = BoundReport::new(
        "ym_index_plus_nullity",
        value,
        &[
            ("chi", record.chi() as f64),
            ("yamabe_sq", y * y),
            ("int_w2", w2),
            ("int_f2", int_f2),
            ("int_wf", int_wf),
            ("dim_g", dim as f64),
        ],
    );
    rep.vacuous = value <= 0.0;
    rep.notes.push(format!("record {}", record.name()));
    let s4 = record.chi() == 2 && w2 == 0.0 && ((y * y) / (384.0 * PI * PI) - 1.0).abs() < 1e-12;
    if s4 {
        let c = corollary_check(dim);
        rep.notes.push(format!(
            "constant term {:.12} agrees with the round-sphere value -9 e^2 d = {:.12}",
            c.constant_direct, c.constant_corollary
        ));
        if c.discrepancy {
            rep.warnings.push(c.message());
        }
    }
    Ok(rep)
}

/// Substituting the round `S^4` (`chi = 2`, `W = 0`, `Y^2 = 384 pi^2`) into
/// the general bound, compared with the simplified round-sphere statement
/// `9 e^2 d (-1 + int |F|^2 / (4 pi^2))`.
#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct CorollaryCheck {
    pub dim: usize,
    pub constant_direct: f64,
    pub constant_corollary: f64,
    /// Coefficient of `int |F|^2` by direct substitution, `9 e^2 d / (2 pi^2)`.
    pub f2_coefficient_direct: f64,
    /// Coefficient as stated for the round sphere, `9 e^2 d / (4 pi^2)`.
    pub f2_coefficient_corollary: f64,
    pub coefficient_ratio: f64,
    pub constant_agrees: bool,
    pub discrepancy: bool,
}

impl CorollaryCheck {
    pub fn message(&self) -> String {
        format!(
            "int |F|^2 coefficient on the round S^4: direct substitution gives {:.12} = 9 e^2 d / (2 pi^2), the simplified round-sphere bound states {:.12} = 9 e^2 d / (4 pi^2) (ratio {:.6})",
            self.f2_coefficient_direct, self.f2_coefficient_corollary, self.coefficient_ratio
        )
    }
}

pub fn corollary_check(dim: usize) -> CorollaryCheck {
    let y2 = 384.0 * PI * PI;
    let constant_direct = ym_index_bound_raw(2, y2, 0.0, 0.0, 0.0, dim);
    let f2_coefficient_direct = ym_index_bound_raw(2, y2, 0.0, 1.0, 0.0, dim) - constant_direct;
    let d = dim as f64;
    let constant_corollary = -9.0 * E2 * d;
    let f2_coefficient_corollary = 9.0 * E2 * d / (4.0 * PI * PI);
    let coefficient_ratio = f2_coefficient_direct / f2_coefficient_corollary;
    CorollaryCheck {
        dim,
        constant_direct,
        constant_corollary,
        f2_coefficient_direct,
        f2_coefficient_corollary,
        coefficient_ratio,
        constant_agrees: (constant_direct - constant_corollary).abs() <= 1e-12 * constant_corollary.abs(),
        discrepancy: (coefficient_ratio - 1.0).abs() > 1e-12,
    }
}

/// `24 pi sqrt(chi / (3 + (i + nu) / (24 e^2)))`, the bound on the normalised
/// total scalar curvature of a positive Einstein metric.
pub fn einstein_energy_bound(chi: i64, index_plus_nullity: f64) -> Result<f64> {
    if chi <= 0 {
        return Err(Error::Parameter(format!("chi = {chi}; a positive Einstein manifold has chi > 0")));
    }
    if !(index_plus_nullity >= 0.0) {
        return Err(Error::Parameter(format!("index plus nullity {index_plus_nullity} is negative")));
    }
    Ok(24.0 * PI * (chi as f64 / (3.0 + index_plus_nullity / (24.0 * E2))).sqrt())
}

/// `(9 e^2 (1 - 24 rho1), 3 e^2 (2 sqrt(rho_plus) - 1)^2)`.
pub fn betti_bounds(rho1: f64, rho_plus: f64) -> Result<(f64, f64)> {
    if !(rho_plus >= 0.0) {
        return Err(Error::Parameter(format!("rho_plus = {rho_plus} is negative")));
    }
    let b1 = 9.0 * E2 * (1.0 - 24.0 * rho1);
    let bp = 3.0 * E2 * (2.0 * rho_plus.sqrt() - 1.0).powi(2);
    Ok((b1, bp))
}

/// Normalised total scalar curvature `R sqrt(vol)` of a constant-scalar record.
pub fn total_scalar_curvature(record: &GeometryRecord) -> Result<f64> {
    Ok(record.value("scalar", false)? * record.value("volume", false)?.sqrt())
}

/// Every bound that applies to `record`.
///
/// `int_f2` and `int_wf` feed the Yang–Mills bound; it is skipped when they
/// are `None`.
pub fn bounds_report(
    record: &GeometryRecord,
    yang_mills: Option<(f64, f64, usize)>,
    allow_external: bool,
) -> Result<Vec<BoundReport>> {
    let mut out = Vec::new();
    let rho = rho_invariants(record, allow_external)?;
    let (b1, bp) = betti_bounds(rho.rho1, rho.rho_plus)?;
    let mut r = BoundReport::new("b1", b1, &[("rho1", rho.rho1)]);
    if let Some(b) = record.data().b1 {
        r.notes.push(format!("b1 = {b}"));
        if b as f64 > b1 + 1e-9 {
            r.warnings.push(format!("b1 = {b} exceeds the bound {b1}"));
        }
    }
    out.push(r);
    let mut r = BoundReport::new("b_plus", bp, &[("rho_plus", rho.rho_plus)]);
    if let Some(b) = record.data().b_plus {
        r.notes.push(format!("b_plus = {b}"));
        if b as f64 > bp + 1e-9 {
            r.warnings.push(format!("b_plus = {b} exceeds the bound {bp}"));
        }
    }
    out.push(r);
    if record.flags().einstein && record.chi() > 0 {
        let ipn = record.value("index_plus_nullity", allow_external).unwrap_or(0.0);
        let value = einstein_energy_bound(record.chi(), ipn)?;
        let mut r = BoundReport::new("einstein_energy", value, &[("chi", record.chi() as f64), ("index_plus_nullity", ipn)]);
        if let Ok(s) = total_scalar_curvature(record) {
            r.notes.push(format!("R sqrt(vol) = {s:.12}"));
            if s > value * (1.0 + 1e-12) {
                r.warnings.push(format!("R sqrt(vol) = {s} exceeds the bound {value}"));
            }
        }
        if record.quantity("index_plus_nullity").is_none() || !allow_external {
            r.notes.push("index plus nullity taken as 0, the weakest admissible value".into());
        }
        out.push(r);
    }
    if let Some((f2, wf, d)) = yang_mills {
        out.push(ym_index_bound(record, f2, wf, d, allow_external)?);
    }
    Ok(out)
}
