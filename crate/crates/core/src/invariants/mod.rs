//! Conformal invariants of four-manifolds and the headline bounds.
//!
//! Records of model geometries carry every number with a [`Provenance`]
//! tag. Evaluators read fields through [`GeometryRecord::value`], which
//! refuses [`Provenance::External`] values unless the caller opts in.
//! Weyl norms use the convention of `W` as an endomorphism of `Lambda^2`.
//!
//! The `b1` bound grows linearly under connected sums of `S^3 x S^1`
//! with long necks, matching `b1(k # S^3 x S^1) = k`; that construction is
//! not computed here.

mod bounds;
mod catalog;
mod record;

pub use bounds::{
    betti_bounds, bounds_report, corollary_check, einstein_energy_bound, rho_invariants, sigma2_pointwise,
    total_scalar_curvature, ym_index_bound, ym_index_bound_raw, BoundReport, CorollaryCheck, Rho,
};
pub use catalog::{catalog, cp2, lookup, round_s4, s2xs2, s3xs1};
pub use record::{
    cgb_tracefree, cgb_z2, sigma2_from_z2, Flags, GeometryRecord, Provenance, Quantity, RecordData, IDENTITY_TOL,
    WEYL_NORM_END_LAMBDA2,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Error, E2};
    use std::f64::consts::PI;

    #[test]
    fn sigma2_of_the_unit_sphere() {
        assert!((sigma2_pointwise([3.0; 4], 12.0).unwrap() - 1.5).abs() < 1e-15);
        assert_eq!(sigma2_pointwise([0.0; 4], 0.0).unwrap(), 0.0);
        assert!(sigma2_pointwise([1.0; 4], 5.0).is_err());
    }

    #[test]
    fn round_sphere_record() {
        let s4 = round_s4();
        assert!(cgb_tracefree(&s4).unwrap().abs() < 1e-12);
        let rho = rho_invariants(&s4, false).unwrap();
        assert!((rho.rho1 - 1.0 / 24.0).abs() < 1e-15);
        assert_eq!(rho.rho_plus, 0.0);
        assert!((s4.value("int_sigma2", false).unwrap() - 4.0 * PI * PI).abs() < 1e-12);
    }

    #[test]
    fn equality_classes() {
        let rho = rho_invariants(&cp2(), false).unwrap();
        assert!((rho.rho_plus - 1.0).abs() < 1e-14);
        assert!((rho.rho1 - 1.0 / 24.0).abs() < 1e-15);
        let rho = rho_invariants(&s2xs2(), false).unwrap();
        assert!((rho.rho_plus - 1.0).abs() < 1e-14);
        let rho = rho_invariants(&s3xs1(), true).unwrap();
        assert!(rho.rho1.abs() < 1e-15);
    }

    #[test]
    fn external_yamabe_is_refused_by_default() {
        match rho_invariants(&s3xs1(), false) {
            Err(Error::ExternalField { field, .. }) => assert_eq!(field, "yamabe"),
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn catalog_round_trips_through_json() {
        for r in catalog() {
            let text = r.to_json().unwrap();
            assert_eq!(GeometryRecord::from_json(&text).unwrap(), r);
        }
    }

    #[test]
    fn ingest_names_the_violated_identity() {
        let mut data = round_s4().data().clone();
        data.int_z2 = Some(Quantity::given(1.0, "wrong"));
        match GeometryRecord::new(data) {
            Err(Error::InconsistentRecord { identity, .. }) => assert!(identity.contains("Chern-Gauss-Bonnet")),
            other => panic!("expected inconsistency, got {other:?}"),
        }
        assert!(GeometryRecord::from_json(r#"{"name":"x","chi":2,"int_w2":{"value":0,"provenance":"given"},"extra":1}"#).is_err());
    }

    #[test]
    fn weyl_increment_raises_tracefree_by_two() {
        let mut data = round_s4().data().clone();
        data.int_w2.value += 1.0;
        data.int_z2 = None;
        data.int_sigma2 = None;
        data.flags.einstein = false;
        data.int_wplus2 = None;
        let r = GeometryRecord::new(data).unwrap();
        assert!((cgb_tracefree(&r).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn sphere_ym_bound_without_curvature_is_vacuous() {
        let rep = ym_index_bound(&round_s4(), 0.0, 0.0, 3, false).unwrap();
        assert!((rep.value + 27.0 * E2).abs() < 1e-12 * 27.0 * E2);
        assert!(rep.vacuous);
        assert_eq!(rep.warnings.len(), 1);
    }

    #[test]
    fn corollary_factor_two() {
        let c = corollary_check(3);
        assert!(c.constant_agrees);
        assert!(c.discrepancy);
        assert!((c.coefficient_ratio - 2.0).abs() < 1e-14);
    }

    #[test]
    fn einstein_bound_values() {
        let s = einstein_energy_bound(2, 0.0).unwrap();
        assert!((s - 8.0 * 6f64.sqrt() * PI).abs() < 1e-12 * s);
        assert!((einstein_energy_bound(3, 0.0).unwrap() - 24.0 * PI).abs() < 1e-12);
        assert!(einstein_energy_bound(0, 0.0).is_err());
        assert!(einstein_energy_bound(2, 5.0).unwrap() < s);
    }

    #[test]
    fn betti_values() {
        assert_eq!(betti_bounds(1.0 / 24.0, 0.0).unwrap().0, 0.0);
        assert!((betti_bounds(0.0, 0.0).unwrap().0 - 9.0 * E2).abs() < 1e-12);
        assert!((betti_bounds(0.0, 1.0).unwrap().1 - 3.0 * E2).abs() < 1e-12);
        assert!(betti_bounds(0.0, -1.0).is_err());
    }

    #[test]
    fn reports_cover_each_record() {
        for r in catalog() {
            let reps = bounds_report(&r, Some((10.0, 0.0, 3)), true).unwrap();
            assert!(reps.iter().all(|b| b.value.is_finite()));
            assert!(reps.iter().filter(|b| b.name.starts_with('b')).all(|b| b.warnings.is_empty()));
        }
    }
}
