//! Curvature records of four-manifolds, validated against the
//! Chern–Gauss–Bonnet identity and completed with derived integrals.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Where a stored number comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Part of the definition of the model geometry.
    Given,
    /// Computed from other fields by an identity in this crate.
    Derived,
    /// Background knowledge not derivable here; evaluators refuse it unless
    /// the caller opts in.
    External,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Quantity {
    pub value: f64,
    pub provenance: Provenance,
    #[serde(default)]
    pub note: String,
}

impl Quantity {
    pub fn given(value: f64, note: &str) -> Self {
        Self { value, provenance: Provenance::Given, note: note.into() }
    }

    pub fn derived(value: f64, note: &str) -> Self {
        Self { value, provenance: Provenance::Derived, note: note.into() }
    }

    pub fn external(value: f64, note: &str) -> Self {
        Self { value, provenance: Provenance::External, note: note.into() }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    #[serde(default)]
    pub einstein: bool,
    /// The metric realises the Yamabe invariant, so `Y^2 = int R^2`.
    #[serde(default)]
    pub yamabe_metric: bool,
    #[serde(default)]
    pub kahler: bool,
}

/// Norm convention for the Weyl tensor: as an endomorphism of `Lambda^2`.
pub const WEYL_NORM_END_LAMBDA2: &str = "End(Lambda^2)";

fn default_weyl_norm() -> String {
    WEYL_NORM_END_LAMBDA2.into()
}

/// Unvalidated record fields, as read from or written to JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecordData {
    pub name: String,
    pub chi: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub yamabe: Option<Quantity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub volume: Option<Quantity>,
    /// Constant scalar curvature, when the model metric has one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalar: Option<Quantity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub int_r2: Option<Quantity>,
    pub int_w2: Quantity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub int_wplus2: Option<Quantity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub int_z2: Option<Quantity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub int_sigma2: Option<Quantity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b1: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_plus: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index_plus_nullity: Option<Quantity>,
    #[serde(default)]
    pub flags: Flags,
    #[serde(default = "default_weyl_norm")]
    pub weyl_norm: String,
}

/// A validated, completed and immutable geometry record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RecordData", into = "RecordData")]
pub struct GeometryRecord {
    data: RecordData,
}

impl From<GeometryRecord> for RecordData {
    fn from(r: GeometryRecord) -> Self {
        r.data
    }
}

impl TryFrom<RecordData> for GeometryRecord {
    type Error = Error;

    fn try_from(data: RecordData) -> Result<Self> {
        Self::new(data)
    }
}

/// Relative tolerance of the identity checks.
pub const IDENTITY_TOL: f64 = 1e-10;

/// `(3/4) int |Z|^2 = -12 pi^2 chi + (3/2) int |W|^2 + (1/16) int R^2`,
/// solved for `int |Z|^2`.
pub fn cgb_z2(chi: i64, int_w2: f64, int_r2: f64) -> f64 {
    (4.0 / 3.0) * (-12.0 * PI * PI * chi as f64 + 1.5 * int_w2 + int_r2 / 16.0)
}

/// `int sigma_2(A) = -(1/8) int |Z|^2 + (1/96) int R^2`.
pub fn sigma2_from_z2(int_z2: f64, int_r2: f64) -> f64 {
    -int_z2 / 8.0 + int_r2 / 96.0
}

impl GeometryRecord {
    /// Validates `data` and fills in `int R^2`, `int |Z|^2` and
    /// `int sigma_2` where they can be derived.
    pub fn new(mut data: RecordData) -> Result<Self> {
        let name = data.name.clone();
        let fail = |identity: String| Error::InconsistentRecord { record: name.clone(), identity };
        if data.weyl_norm != WEYL_NORM_END_LAMBDA2 {
            return Err(fail(format!("unsupported Weyl norm convention {:?}", data.weyl_norm)));
        }
        let optional = [
            ("yamabe", &data.yamabe),
            ("volume", &data.volume),
            ("scalar", &data.scalar),
            ("int_r2", &data.int_r2),
            ("int_wplus2", &data.int_wplus2),
            ("int_z2", &data.int_z2),
            ("int_sigma2", &data.int_sigma2),
            ("index_plus_nullity", &data.index_plus_nullity),
        ];
        let mut present = vec![("int_w2", data.int_w2.value)];
        present.extend(optional.iter().filter_map(|(f, q)| q.as_ref().map(|q| (*f, q.value))));
        if let Some((field, v)) = present.iter().find(|(_, v)| !v.is_finite()) {
            return Err(fail(format!("{field} = {v} is not finite")));
        }
        let nonneg = ["volume", "int_r2", "int_wplus2", "int_z2", "index_plus_nullity"];
        if let Some((field, v)) = present.iter().find(|(f, v)| nonneg.contains(f) && *v < 0.0) {
            return Err(fail(format!("{field} = {v} is negative")));
        }
        if data.int_w2.value < 0.0 {
            return Err(fail(format!("int_w2 = {} is negative", data.int_w2.value)));
        }
        if let Some(y) = &data.yamabe {
            if y.value <= 0.0 {
                return Err(fail(format!("Yamabe invariant {} is not positive", y.value)));
            }
        }
        let close = |a: f64, b: f64, scale: f64| (a - b).abs() <= IDENTITY_TOL * scale.max(1.0);

        let from_scalar = match (&data.scalar, &data.volume) {
            (Some(r), Some(v)) => Some(r.value * r.value * v.value),
            _ => None,
        };
        match (&data.int_r2, from_scalar) {
            (None, Some(x)) => data.int_r2 = Some(Quantity::derived(x, "R^2 vol")),
            (Some(q), Some(x)) if !close(q.value, x, x) => {
                return Err(fail(format!("int R^2 = {} but R^2 vol = {x}", q.value)));
            }
            _ => {}
        }
        if let Some(wp) = &data.int_wplus2 {
            if wp.value > data.int_w2.value * (1.0 + IDENTITY_TOL) {
                return Err(fail(format!("int |W+|^2 = {} exceeds int |W|^2 = {}", wp.value, data.int_w2.value)));
            }
        }
        if let Some(r2) = data.int_r2.as_ref().map(|q| q.value) {
            let w2 = data.int_w2.value;
            let z2 = cgb_z2(data.chi, w2, r2);
            let scale = 12.0 * PI * PI * data.chi.abs() as f64 + 1.5 * w2 + r2 / 16.0;
            match &data.int_z2 {
                None => {
                    if z2 < -IDENTITY_TOL * scale.max(1.0) {
                        return Err(fail(format!("Chern-Gauss-Bonnet gives int |Z|^2 = {z2} < 0")));
                    }
                    data.int_z2 = Some(Quantity::derived(z2.max(0.0), "Chern-Gauss-Bonnet"));
                }
                Some(q) => {
                    if !close(0.75 * q.value, 0.75 * z2, scale) {
                        return Err(fail(format!(
                            "Chern-Gauss-Bonnet: (3/4) int |Z|^2 = {} but -12 pi^2 chi + (3/2) int |W|^2 + (1/16) int R^2 = {}",
                            0.75 * q.value,
                            0.75 * z2
                        )));
                    }
                }
            }
            let z2 = data.int_z2.as_ref().map(|q| q.value).unwrap_or(z2);
            let s2 = sigma2_from_z2(z2, r2);
            match &data.int_sigma2 {
                None => data.int_sigma2 = Some(Quantity::derived(s2, "-(1/8) int |Z|^2 + (1/96) int R^2")),
                Some(q) if !close(q.value, s2, z2 / 8.0 + r2 / 96.0) => {
                    return Err(fail(format!("int sigma_2 = {} but -(1/8) int |Z|^2 + (1/96) int R^2 = {s2}", q.value)));
                }
                _ => {}
            }
            if data.flags.yamabe_metric {
                if let Some(y) = &data.yamabe {
                    if y.provenance != Provenance::External && !close(y.value * y.value, r2, r2) {
                        return Err(fail(format!("Yamabe metric with Y^2 = {} but int R^2 = {r2}", y.value * y.value)));
                    }
                }
            }
        }
        if data.flags.einstein {
            if let Some(q) = &data.int_z2 {
                if q.value > IDENTITY_TOL * data.int_r2.as_ref().map_or(1.0, |r| r.value.max(1.0)) {
                    return Err(fail(format!("Einstein record with int |Z|^2 = {}", q.value)));
                }
            }
        }
        Ok(Self { data })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn data(&self) -> &RecordData {
        &self.data
    }

    pub fn name(&self) -> &str {
        &self.data.name
    }

    pub fn chi(&self) -> i64 {
        self.data.chi
    }

    pub fn flags(&self) -> Flags {
        self.data.flags
    }

    fn field(&self, field: &str) -> Option<&Quantity> {
        match field {
            "yamabe" => self.data.yamabe.as_ref(),
            "volume" => self.data.volume.as_ref(),
            "scalar" => self.data.scalar.as_ref(),
            "int_r2" => self.data.int_r2.as_ref(),
            "int_w2" => Some(&self.data.int_w2),
            "int_wplus2" => self.data.int_wplus2.as_ref(),
            "int_z2" => self.data.int_z2.as_ref(),
            "int_sigma2" => self.data.int_sigma2.as_ref(),
            "index_plus_nullity" => self.data.index_plus_nullity.as_ref(),
            _ => None,
        }
    }

    pub fn quantity(&self, field: &str) -> Option<&Quantity> {
        self.field(field)
    }

    /// The value of `field`, refusing external values unless `allow_external`.
    pub fn value(&self, field: &str, allow_external: bool) -> Result<f64> {
        let q = self.field(field).ok_or_else(|| Error::Parameter(format!("record {} has no field {field}", self.name())))?;
        if q.provenance == Provenance::External && !allow_external {
            return Err(Error::ExternalField { record: self.name().into(), field: field.into() });
        }
        Ok(q.value)
    }
}

/// `int |Z|^2` of a record from the Chern–Gauss–Bonnet identity.
pub fn cgb_tracefree(record: &GeometryRecord) -> Result<f64> {
    let r2 = record.value("int_r2", false)?;
    let z2 = cgb_z2(record.chi(), record.value("int_w2", false)?, r2);
    if z2 < 0.0 && z2.abs() > IDENTITY_TOL * r2.max(1.0) {
        return Err(Error::InconsistentRecord {
            record: record.name().into(),
            identity: format!("Chern-Gauss-Bonnet gives int |Z|^2 = {z2} < 0"),
        });
    }
    Ok(z2.max(0.0))
}
