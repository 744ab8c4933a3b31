//! Randomised verification of the pointwise bracket and endomorphism identities.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::estimate::{gaussian_vec, stream_rng};
use super::forms::{
    bracket_one_forms, endo_action, endo_matrix, Endo, FormInner, GValuedOneForm, GValuedTwoForm, SymTwoTensor,
};
use super::jacobi::{bsharp_residual, sharp_bracket_margin};
use super::LieAlgebra;
use crate::{Error, Result};

/// One named property with its worst observed value and pass threshold.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct PropertyCheck {
    pub name: String,
    pub worst: f64,
    pub threshold: f64,
    /// `true` when the property is an upper bound on `worst`, `false` when it
    /// is a lower bound.
    pub upper: bool,
    pub passed: bool,
}

impl PropertyCheck {
    pub fn at_most(name: &str, worst: f64, threshold: f64) -> Self {
        Self { name: name.into(), worst, threshold, upper: true, passed: worst <= threshold }
    }

    pub fn at_least(name: &str, worst: f64, threshold: f64) -> Self {
        Self { name: name.into(), worst, threshold, upper: false, passed: worst >= threshold }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteConfig {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    /// Value of `gamma0` used in the sharp inequalities.
    pub gamma0: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { n: 4, samples: 10_000, seed: 7, gamma0: std::f64::consts::SQRT_2 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub algebra: String,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<PropertyCheck>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&PropertyCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// A random sample of unit-norm inputs.
#[derive(Debug, Clone)]
pub struct Sample {
    pub z: SymTwoTensor,
    pub phi: GValuedTwoForm,
    pub a: GValuedOneForm,
    pub b: GValuedOneForm,
}

fn unit_scale(v: &mut [f64], norm: f64) {
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
}

/// Random 1-form with Gaussian coefficients, normalised to unit norm.
pub fn random_one_form<R: Rng>(rng: &mut R, n: usize, d: usize) -> GValuedOneForm {
    let mut c = gaussian_vec(rng, n * d);
    let norm = c.iter().map(|x| x * x).sum::<f64>().sqrt();
    unit_scale(&mut c, norm);
    GValuedOneForm::from_coeffs(n, d, c).expect("shape is consistent")
}

/// Random 2-form with Gaussian upper-triangular coefficients, unit norm.
pub fn random_two_form<R: Rng>(rng: &mut R, n: usize, d: usize) -> GValuedTwoForm {
    let mut c = gaussian_vec(rng, n * (n - 1) / 2 * d);
    // The 2-form norm equals the Euclidean norm of the upper triangle.
    let norm = c.iter().map(|x| x * x).sum::<f64>().sqrt();
    unit_scale(&mut c, norm);
    GValuedTwoForm::from_upper(n, d, &c).expect("shape is consistent")
}

/// Random trace-free symmetric tensor with unit norm.
pub fn random_trace_free<R: Rng>(rng: &mut R, n: usize) -> SymTwoTensor {
    let raw = gaussian_vec(rng, n * n);
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let v = if i == j { raw[i * n + j] } else { raw[i * n + j] / std::f64::consts::SQRT_2 };
            data[i * n + j] = v;
            data[j * n + i] = v;
        }
    }
    let tr: f64 = (0..n).map(|i| data[i * n + i]).sum::<f64>() / n as f64;
    for i in 0..n {
        data[i * n + i] -= tr;
    }
    let norm = data.iter().map(|x| x * x).sum::<f64>().sqrt();
    unit_scale(&mut data, norm);
    SymTwoTensor::trace_free(n, data).expect("trace removed")
}

pub fn random_sample(alg: &LieAlgebra, n: usize, seed: u64, index: u64) -> Sample {
    let mut rng = stream_rng(seed, index);
    let d = alg.dim();
    Sample {
        z: random_trace_free(&mut rng, n),
        phi: random_two_form(&mut rng, n, d),
        a: random_one_form(&mut rng, n, d),
        b: random_one_form(&mut rng, n, d),
    }
}

#[derive(Debug, Clone, Copy)]
struct Worst {
    sym_z: f64,
    sym_phi: f64,
    trace_z: f64,
    hs_orth: f64,
    range_orth: f64,
    ad_invariance: f64,
    sharp_sampled: f64,
    sharp_universal: f64,
    bsharp: f64,
}

impl Worst {
    fn identity() -> Self {
        Self {
            sym_z: 0.0,
            sym_phi: 0.0,
            trace_z: 0.0,
            hs_orth: 0.0,
            range_orth: 0.0,
            ad_invariance: 0.0,
            sharp_sampled: f64::INFINITY,
            sharp_universal: f64::INFINITY,
            bsharp: f64::INFINITY,
        }
    }

    fn merge(self, o: Self) -> Self {
        Self {
            sym_z: self.sym_z.max(o.sym_z),
            sym_phi: self.sym_phi.max(o.sym_phi),
            trace_z: self.trace_z.max(o.trace_z),
            hs_orth: self.hs_orth.max(o.hs_orth),
            range_orth: self.range_orth.max(o.range_orth),
            ad_invariance: self.ad_invariance.max(o.ad_invariance),
            sharp_sampled: self.sharp_sampled.min(o.sharp_sampled),
            sharp_universal: self.sharp_universal.min(o.sharp_universal),
            bsharp: self.bsharp.min(o.bsharp),
        }
    }
}

fn evaluate(alg: &LieAlgebra, s: &Sample, gamma0: f64, with_matrices: bool) -> Result<Worst> {
    let n = s.a.n();
    let za = endo_action(alg, Endo::Sym(&s.z), &s.a)?;
    let zb = endo_action(alg, Endo::Sym(&s.z), &s.b)?;
    let pa = endo_action(alg, Endo::Phi(&s.phi), &s.a)?;
    let pb = endo_action(alg, Endo::Phi(&s.phi), &s.b)?;
    let aa = bracket_one_forms(alg, &s.a, &s.a)?;
    let (trace_z, hs_orth) = if with_matrices {
        let mz = endo_matrix(alg, Endo::Sym(&s.z), n)?;
        let mp = endo_matrix(alg, Endo::Phi(&s.phi), n)?;
        (mz.trace().abs(), (&mz * &mp).trace().abs())
    } else {
        (0.0, 0.0)
    };
    Ok(Worst {
        sym_z: (za.inner(&s.b)? - zb.inner(&s.a)?).abs(),
        sym_phi: (pa.inner(&s.b)? - pb.inner(&s.a)?).abs(),
        trace_z,
        hs_orth,
        range_orth: za.inner(&pb)?.abs(),
        ad_invariance: (pa.inner(&s.a)? - 2.0 * s.phi.inner(&aa)?).abs(),
        sharp_sampled: sharp_bracket_margin(alg, &s.a, gamma0)?,
        sharp_universal: sharp_bracket_margin(alg, &s.a, std::f64::consts::SQRT_2)?,
        bsharp: bsharp_residual(alg, &s.z, &s.phi, &s.a, gamma0)?,
    })
}

/// Runs the randomised identity suite on `samples` unit-norm inputs.
///
/// Every input is normalised, so absolute residuals are relative to the
/// natural scale `|Z| |A| |B|` of each identity.
pub fn run_suite(alg: &LieAlgebra, cfg: &SuiteConfig) -> Result<SuiteReport> {
    if cfg.samples == 0 {
        return Err(Error::Parameter("suite needs at least one sample".into()));
    }
    if cfg.n < 2 || cfg.n > 8 {
        return Err(Error::Parameter(format!("base dimension {} outside 2..=8", cfg.n)));
    }
    let w = (0..cfg.samples as u64)
        .into_par_iter()
        .map(|i| {
            let s = random_sample(alg, cfg.n, cfg.seed, i);
            evaluate(alg, &s, cfg.gamma0, i % 10 == 0)
        })
        .try_reduce(Worst::identity, |a, b| Ok(a.merge(b)))?;
    let checks = vec![
        PropertyCheck::at_most("z_symmetry", w.sym_z, 1e-12),
        PropertyCheck::at_most("phi_symmetry", w.sym_phi, 1e-12),
        PropertyCheck::at_most("z_trace_free", w.trace_z, 1e-10),
        PropertyCheck::at_most("hilbert_schmidt_orthogonality", w.hs_orth, 1e-10),
        PropertyCheck::at_most("range_orthogonality", w.range_orth, 1e-12),
        PropertyCheck::at_most("ad_invariance", w.ad_invariance, 1e-12),
        PropertyCheck::at_least("sharp_bracket", w.sharp_sampled, -1e-12),
        PropertyCheck::at_least("sharp_bracket_universal", w.sharp_universal, -1e-12),
        PropertyCheck::at_least("bsharp", w.bsharp, -1e-12),
    ];
    Ok(SuiteReport { algebra: alg.name().to_string(), n: cfg.n, samples: cfg.samples, seed: cfg.seed, checks })
}
