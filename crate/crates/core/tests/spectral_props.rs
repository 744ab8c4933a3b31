mod common;

use std::f64::consts::PI;

use proptest::prelude::*;

use ymlab_core::spectral::{
    birman_schwinger_compare, count_nonpositive, heat_trace, sector_multiplicity, weighted_spectrum, GaugeProblem,
    RadialFunction, RadialGrid, RadialPotential, SectorProblem, TridiagPencil,
};

#[test]
fn sector_eigenvalues_obey_the_second_order_error_law() {
    let n = 2000;
    let grid = RadialGrid::new(n).unwrap();
    let h = PI / n as f64;
    for l in 0..10usize {
        let s = SectorProblem::schrodinger(&grid, l, &vec![0.0; n]).unwrap();
        for (i, mu) in s.lowest(10).unwrap().iter().enumerate() {
            let k = (l + i) as f64;
            let exact = k * (k + 3.0) + 2.0;
            let err = (mu - exact).abs();
            assert!(err <= h * h * exact * exact / 12.0, "l={l} i={i}: {mu} vs {exact}");
            if exact <= 60.0 {
                assert!(err <= 1e-3, "l={l} i={i}: error {err:e}");
            }
        }
    }
}

#[test]
fn sector_errors_shrink_fourfold_per_refinement() {
    let errs: Vec<f64> = [500usize, 1000, 2000]
        .iter()
        .map(|&n| {
            let grid = RadialGrid::new(n).unwrap();
            let s = SectorProblem::schrodinger(&grid, 3, &vec![0.0; n]).unwrap();
            (s.lowest(6).unwrap()[5] - (8.0 * 11.0 + 2.0)).abs()
        })
        .collect();
    for w in errs.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!((1.9..=2.1).contains(&order), "order {order}");
    }
}

#[test]
fn weighted_ground_state_converges_at_second_order() {
    let pot = RadialPotential::new(RadialFunction::GaussianBump { amplitude: 30.0, width: 0.4, center: 0.0, floor: 0.5 })
        .unwrap();
    let mu: Vec<f64> = [250usize, 500, 1000, 2000].iter().map(|&n| weighted_spectrum(&pot, 1, n).unwrap().levels[0].mu).collect();
    for w in mu.windows(3) {
        let order = ((w[0] - w[1]) / (w[1] - w[2])).log2();
        assert!((1.9..=2.1).contains(&order), "order {order}");
    }
}

fn bump() -> impl Strategy<Value = RadialFunction> {
    (1.0f64..60.0, 0.15f64..1.2, 0.0f64..PI, 0.0f64..2.0)
        .prop_map(|(amplitude, width, center, floor)| RadialFunction::GaussianBump { amplitude, width, center, floor })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn constant_counts_match_the_closed_form(c in 0.5f64..60.0) {
        // Stay clear of thresholds where a level sits at zero.
        prop_assume!((0u64..10).all(|k| ((k * (k + 3) + 2) as f64 - c).abs() > 0.05));
        let pot = RadialPotential::new(RadialFunction::constant(c)).unwrap();
        let r = count_nonpositive(&pot, 400).unwrap();
        prop_assert_eq!(r.n0, common::constant_nonpositive_count(c));
        prop_assert_eq!(r.n0, r.n0_10eps);
    }

    #[test]
    fn counts_are_multiplicity_weighted_and_certified(f in bump()) {
        let pot = RadialPotential::new(f).unwrap();
        let r = count_nonpositive(&pot, 400).unwrap();
        let total: u64 = r.levels.iter().map(|lv| lv.multiplicity).sum();
        prop_assert_eq!(total, r.n0);
        for lv in &r.levels {
            prop_assert!(lv.mu <= 0.0);
            prop_assert_eq!(lv.multiplicity, sector_multiplicity(lv.sector));
        }
        prop_assert!(r.certificate.margin > 0.0);
        prop_assert!(r.levels.iter().all(|lv| lv.sector <= r.certificate.l_max));
    }

    #[test]
    fn birman_schwinger_inequality_holds(f in bump()) {
        let pot = RadialPotential::new(f).unwrap();
        let bs = birman_schwinger_compare(&pot, 400).unwrap();
        prop_assert!(bs.n0 <= bs.weighted_at_most_one);
    }

    #[test]
    fn lambda1_is_nonincreasing_in_t(w in 0.0f64..3.0, f in 0.0f64..8.0, g1 in 0.2f64..2.3) {
        let gp = GaugeProblem::new(RadialFunction::constant(w), RadialFunction::constant(f), g1, 300).unwrap();
        let lam: Vec<f64> = (0..=10).map(|i| gp.lambda1(i as f64 / 10.0).unwrap().lambda1).collect();
        prop_assert!(lam.windows(2).all(|p| p[1] <= p[0] + 1e-10));
    }

    #[test]
    fn bisected_root_is_a_zero_within_the_bound(w in 0.0f64..3.0, f in 0.5f64..8.0, g1 in 0.5f64..2.3) {
        let gp = GaugeProblem::new(RadialFunction::constant(w), RadialFunction::constant(f), g1, 300).unwrap();
        let r = gp.find_t0().unwrap();
        if r.saturated {
            prop_assert_eq!(r.t0, 1.0);
            prop_assert!(gp.lambda1(1.0).unwrap().lambda1 >= 0.0);
        } else {
            prop_assert!(r.t0 > 0.0 && r.t0 < 1.0);
            prop_assert!(r.lambda_at_t0.abs() <= 1e-6);
            prop_assert!(r.bound_holds && r.t0 >= r.lower_bound - 1e-8);
        }
    }

    #[test]
    fn pencil_bisection_agrees_with_symmetrised_ql(
        diag in prop::collection::vec(-5.0f64..5.0, 3..40),
        seed in prop::collection::vec((-2.0f64..2.0, 0.2f64..3.0), 40),
    ) {
        let n = diag.len();
        let off: Vec<f64> = seed.iter().take(n - 1).map(|p| p.0).collect();
        let weight: Vec<f64> = seed.iter().take(n).map(|p| p.1).collect();
        let pencil = TridiagPencil::new(diag, off, weight).unwrap();
        let (sd, so) = pencil.symmetrized();
        prop_assert_eq!(sd.len(), n);
        prop_assert_eq!(so.len(), n - 1);
        let ql = pencil.all_eigenvalues().unwrap();
        let scale = ql.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        for (k, v) in ql.iter().enumerate() {
            prop_assert!((pencil.eigenvalue(k).unwrap() - v).abs() <= 1e-9 * scale);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn heat_trace_bound_holds_with_certified_tail(f in bump(), t in prop::sample::select(vec![0.05, 0.1, 0.5, 1.0, 5.0])) {
        let pot = RadialPotential::new(f).unwrap();
        let h = heat_trace(&pot, t, 400).unwrap();
        prop_assert!(h.tail < 0.01 * h.partial);
        prop_assert!(h.scaled <= h.bound, "t^2 h = {} > {}", h.scaled, h.bound);
    }
}
