//! Model geometries: the unit round `S^4`, Fubini–Study `CP^2` with
//! `Ric = 6g`, the product of unit spheres `S^2 x S^2`, and `S^3 x S^1`
//! with a unit three-sphere and a circle of length `pi`.

use std::f64::consts::PI;

use super::record::{Flags, GeometryRecord, Quantity, RecordData, WEYL_NORM_END_LAMBDA2};

fn base(name: &str, chi: i64, scalar: f64, volume: f64, int_w2: Quantity) -> RecordData {
    RecordData {
        name: name.into(),
        chi,
        yamabe: None,
        volume: Some(Quantity::given(volume, "volume of the model metric")),
        scalar: Some(Quantity::given(scalar, "constant scalar curvature")),
        int_r2: None,
        int_w2,
        int_wplus2: None,
        int_z2: None,
        int_sigma2: None,
        b1: None,
        b_plus: None,
        index_plus_nullity: None,
        flags: Flags::default(),
        weyl_norm: WEYL_NORM_END_LAMBDA2.into(),
    }
}

/// Splits `int |W|^2` by the signature formula
/// `int |W+|^2 - int |W-|^2 = 12 pi^2 tau`.
fn wplus_from_signature(int_w2: f64, tau: i64) -> f64 {
    (int_w2 + 12.0 * PI * PI * tau as f64) / 2.0
}

/// `int |W|^2` of an Einstein metric from Chern–Gauss–Bonnet with `Z = 0`.
fn einstein_w2(chi: i64, int_r2: f64) -> f64 {
    (12.0 * PI * PI * chi as f64 - int_r2 / 16.0) / 1.5
}

pub fn round_s4() -> GeometryRecord {
    let mut d = base("S4", 2, 12.0, 8.0 * PI * PI / 3.0, Quantity::given(0.0, "conformally flat"));
    d.int_wplus2 = Some(Quantity::given(0.0, "conformally flat"));
    d.yamabe = Some(Quantity::given(8.0 * 6f64.sqrt() * PI, "Y^2 = 384 pi^2"));
    d.b1 = Some(0);
    d.b_plus = Some(0);
    d.index_plus_nullity = Some(Quantity::external(0.0, "rigidity of the round metric"));
    d.flags = Flags { einstein: true, yamabe_metric: true, kahler: false };
    GeometryRecord::new(d).expect("catalog record is consistent")
}

pub fn cp2() -> GeometryRecord {
    let (r, vol) = (24.0, PI * PI / 2.0);
    let w2 = einstein_w2(3, r * r * vol);
    let mut d = base("CP2", 3, r, vol, Quantity::derived(w2, "Chern-Gauss-Bonnet with Z = 0"));
    d.int_wplus2 = Some(Quantity::derived(wplus_from_signature(w2, 1), "signature formula with tau = 1"));
    d.yamabe = Some(Quantity::derived(r * vol.sqrt(), "R sqrt(vol) of a Yamabe metric"));
    d.b1 = Some(0);
    d.b_plus = Some(1);
    d.index_plus_nullity = Some(Quantity::external(0.0, "rigidity of the Fubini-Study metric"));
    d.flags = Flags { einstein: true, yamabe_metric: true, kahler: true };
    GeometryRecord::new(d).expect("catalog record is consistent")
}

pub fn s2xs2() -> GeometryRecord {
    let (r, vol) = (4.0, 16.0 * PI * PI);
    let w2 = einstein_w2(4, r * r * vol);
    let mut d = base("S2xS2", 4, r, vol, Quantity::derived(w2, "Chern-Gauss-Bonnet with Z = 0"));
    d.int_wplus2 = Some(Quantity::derived(wplus_from_signature(w2, 0), "signature formula with tau = 0"));
    d.yamabe = Some(Quantity::derived(r * vol.sqrt(), "R sqrt(vol) of a Yamabe metric"));
    d.b1 = Some(0);
    d.b_plus = Some(1);
    d.flags = Flags { einstein: true, yamabe_metric: true, kahler: true };
    GeometryRecord::new(d).expect("catalog record is consistent")
}

pub fn s3xs1() -> GeometryRecord {
    let mut d = base("S3xS1", 0, 6.0, 2.0 * PI * PI * PI, Quantity::given(0.0, "conformally flat"));
    d.int_wplus2 = Some(Quantity::given(0.0, "conformally flat"));
    d.yamabe = Some(Quantity::external(8.0 * 6f64.sqrt() * PI, "equals Y(S^4) and is not attained"));
    d.b1 = Some(1);
    d.b_plus = Some(0);
    GeometryRecord::new(d).expect("catalog record is consistent")
}

/// All catalog records.
pub fn catalog() -> Vec<GeometryRecord> {
    vec![round_s4(), cp2(), s2xs2(), s3xs1()]
}

/// Looks up a catalog record by name.
pub fn lookup(name: &str) -> Option<GeometryRecord> {
    catalog().into_iter().find(|r| r.name().eq_ignore_ascii_case(name))
}
