//! Pointwise estimates for the zeroth-order part of the Jacobi operator.

use serde::Serialize;

use super::forms::{bracket_one_forms, endo_action, Endo, FormInner, GValuedOneForm, GValuedTwoForm, SymTwoTensor};
use super::LieAlgebra;
use crate::{Error, Result};

/// Largest admissible `gamma1` under the inner-product conventions in use.
pub const GAMMA1_MAX: f64 = 4.0 * 1.732_050_807_568_877_2 / 3.0;

/// `gamma0 sqrt((n-1)/(2n)) |A|^2 - |[A, A]|`, nonnegative by the sharp bracket
/// inequality when `gamma0` bounds the algebra's bracket.
pub fn sharp_bracket_margin(alg: &LieAlgebra, a: &GValuedOneForm, gamma0: f64) -> Result<f64> {
    let n = a.n() as f64;
    let br = bracket_one_forms(alg, a, a)?;
    Ok(gamma0 * ((n - 1.0) / (2.0 * n)).sqrt() * a.norm_sq() - br.norm())
}

/// `sqrt((n-1)/n) sqrt(|Z|^2 + 2 gamma0^2 |Phi|^2) |A|^2 - |<Z(A) + [Phi, A], A>|`.
pub fn bsharp_residual(
    alg: &LieAlgebra,
    z: &SymTwoTensor,
    phi: &GValuedTwoForm,
    a: &GValuedOneForm,
    gamma0: f64,
) -> Result<f64> {
    let a2 = a.norm_sq();
    if a2 == 0.0 {
        return Err(Error::Parameter("bsharp residual of the zero 1-form".into()));
    }
    if !z.is_trace_free() {
        return Err(Error::Parameter("bsharp residual needs a trace-free Z".into()));
    }
    let n = a.n() as f64;
    let mut b = endo_action(alg, Endo::Sym(z), a)?;
    b.add_scaled(&endo_action(alg, Endo::Phi(phi), a)?, 1.0)?;
    let lhs = b.inner(a)?.abs();
    let rhs = ((n - 1.0) / n).sqrt() * (z.norm_sq() + 2.0 * gamma0 * gamma0 * phi.norm_sq()).sqrt() * a2;
    Ok(rhs - lhs)
}

/// Lower bounds for the two zeroth-order pieces of the Jacobi operator and the
/// resulting Schrödinger potential.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JacobiPotential {
    /// `(R - 3 gamma1 t0 |F|) / 12`.
    pub a_lower: f64,
    /// `-V`.
    pub b_lower: f64,
    /// `V = sqrt(3/4 |Z|^2 + 3 alpha^2 |F|^2)`.
    pub v: f64,
    /// `alpha = 2 - sqrt3/12 gamma1 t0`.
    pub alpha: f64,
}

/// `alpha = 2 - (sqrt 3 / 12) gamma1 t0`.
pub fn alpha(gamma1: f64, t0: f64) -> f64 {
    2.0 - 3f64.sqrt() / 12.0 * gamma1 * t0
}

/// The `|F|^2` coefficient `3 alpha^2 + 9/16 x^2` as a function of `x = gamma1 t0`.
pub fn f2_coefficient(x: f64) -> f64 {
    let a = 2.0 - 3f64.sqrt() / 12.0 * x;
    3.0 * a * a + 9.0 / 16.0 * x * x
}

/// The same coefficient in expanded form `q(x) = 5/8 x^2 - sqrt3 x + 12`.
pub fn q_poly(x: f64) -> f64 {
    5.0 / 8.0 * x * x - 3f64.sqrt() * x + 12.0
}

pub fn jacobi_potential(r_scalar: f64, z: &SymTwoTensor, f: &GValuedTwoForm, t0: f64, gamma1: f64) -> Result<JacobiPotential> {
    if !(t0 > 0.0 && t0 <= 1.0) {
        return Err(Error::Parameter(format!("t0 = {t0} outside (0, 1]")));
    }
    if !(gamma1 > 0.0 && gamma1 <= GAMMA1_MAX + 1e-12) {
        return Err(Error::Parameter(format!("gamma1 = {gamma1} outside (0, 4 sqrt3 / 3]")));
    }
    let fnorm = f.norm();
    let al = alpha(gamma1, t0);
    let v = (0.75 * z.norm_sq() + 3.0 * al * al * fnorm * fnorm).sqrt();
    Ok(JacobiPotential {
        a_lower: (r_scalar - 3.0 * gamma1 * t0 * fnorm) / 12.0,
        b_lower: -v,
        v,
        alpha: al,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_data_gives_zero_potential() {
        let p = jacobi_potential(12.0, &SymTwoTensor::zeros(4), &GValuedTwoForm::zeros(4, 3), 0.5, 1.0).unwrap();
        assert_eq!(p.v, 0.0);
        assert_eq!(p.a_lower, 1.0);
    }

    #[test]
    fn gauge_fixed_scalar_curvature_zeroes_a_lower() {
        let mut f = GValuedTwoForm::zeros(4, 3);
        f.set(0, 1, &[0.4, -1.1, 0.2]);
        let (g1, t0) = (1.7, 0.6);
        let r = 3.0 * g1 * t0 * f.norm();
        let p = jacobi_potential(r, &SymTwoTensor::zeros(4), &f, t0, g1).unwrap();
        assert!(p.a_lower.abs() < 1e-15);
    }

    #[test]
    fn t0_outside_unit_interval_is_rejected() {
        let z = SymTwoTensor::zeros(4);
        let f = GValuedTwoForm::zeros(4, 3);
        assert!(jacobi_potential(12.0, &z, &f, 0.0, 1.0).is_err());
        assert!(jacobi_potential(12.0, &z, &f, 1.5, 1.0).is_err());
        assert!(jacobi_potential(12.0, &z, &f, 0.5, 3.0).is_err());
    }

    #[test]
    fn f2_coefficient_expands_to_q() {
        for i in 0..=40 {
            let x = GAMMA1_MAX * i as f64 / 40.0;
            assert!((f2_coefficient(x) - q_poly(x)).abs() < 1e-12);
            assert!(q_poly(x) <= 12.0 + 1e-12);
        }
        assert!((q_poly(GAMMA1_MAX) - 34.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn second_coefficient_bound_is_tight_at_gamma1_max() {
        let c = 3.0 * 6f64.sqrt() / 4.0 * GAMMA1_MAX;
        assert!((c - 3.0 * std::f64::consts::SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn zero_one_form_is_rejected() {
        let alg = LieAlgebra::su2();
        let r = bsharp_residual(&alg, &SymTwoTensor::zeros(4), &GValuedTwoForm::zeros(4, 3), &GValuedOneForm::zeros(4, 3), 1.0);
        assert!(r.is_err());
    }

    #[test]
    fn aligned_eigendirection_residual_is_nonnegative() {
        // Z = diag(1,-1,0,0), A = e^1 (x) X: <Z(A), A> = |A|^2 = 1 while the
        // bound is sqrt(3/4) |Z| = sqrt(3/4) sqrt2.
        let alg = LieAlgebra::su2();
        let z = SymTwoTensor::diag(&[1.0, -1.0, 0.0, 0.0]).unwrap();
        let a = GValuedOneForm::basis(4, 0, &[1.0, 0.0, 0.0]);
        let r = bsharp_residual(&alg, &z, &GValuedTwoForm::zeros(4, 3), &a, 2f64.sqrt()).unwrap();
        let want = (0.75f64).sqrt() * 2f64.sqrt() - 1.0;
        assert!((r - want).abs() < 1e-15);
        assert!(r >= 0.0);
    }
}
