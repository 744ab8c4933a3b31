//! Sampling estimators for the bracket constants `gamma0` and `gamma1`.
//!
//! Both constants are suprema of homogeneous functions over spheres. Each
//! estimator runs projected gradient ascent from independent Gaussian starts
//! and reports the best value found. Start `k` draws from its own ChaCha
//! stream keyed by `(seed, k)`, so the result does not depend on thread count
//! and growing the number of starts can only increase the estimate.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::forms::{bracket_two_forms, FormInner, GValuedTwoForm};
use super::LieAlgebra;
use crate::{Error, Result};

/// Deterministic generator for stream `stream` of a run seeded with `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn gaussian_vec<R: Rng>(rng: &mut R, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.sample(StandardNormal)).collect()
}

fn normalize(v: &mut [f64]) -> f64 {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    }
    n
}

fn unit_gaussian<R: Rng>(rng: &mut R, len: usize) -> Vec<f64> {
    loop {
        let mut v = gaussian_vec(rng, len);
        if normalize(&mut v) > 1e-8 {
            return v;
        }
    }
}

fn project_tangent(g: &mut [f64], x: &[f64]) {
    let dot: f64 = g.iter().zip(x).map(|(a, b)| a * b).sum();
    g.iter_mut().zip(x).for_each(|(gi, xi)| *gi -= dot * xi);
}

fn retract(x: &[f64], g: &[f64], step: f64) -> Vec<f64> {
    let mut y: Vec<f64> = x.iter().zip(g).map(|(a, b)| a + step * b).collect();
    normalize(&mut y);
    y
}

/// Projected gradient ascent on a product of unit spheres with step halving on
/// non-improvement. `value_grad` returns the objective and its Euclidean
/// gradient, one block per sphere.
fn sphere_ascent(
    mut x: Vec<Vec<f64>>,
    steps: usize,
    value_grad: impl Fn(&[Vec<f64>]) -> (f64, Vec<Vec<f64>>),
) -> f64 {
    let (mut f, mut g) = value_grad(&x);
    let mut eta = 0.5;
    for _ in 0..steps {
        for (gb, xb) in g.iter_mut().zip(&x) {
            project_tangent(gb, xb);
        }
        let gnorm: f64 = g.iter().flatten().map(|v| v * v).sum::<f64>().sqrt();
        if gnorm < 1e-15 {
            break;
        }
        loop {
            let trial: Vec<Vec<f64>> = x.iter().zip(&g).map(|(xb, gb)| retract(xb, gb, eta)).collect();
            let (ft, gt) = value_grad(&trial);
            if ft > f {
                x = trial;
                f = ft;
                g = gt;
                eta = (eta * 1.5).min(10.0);
                break;
            }
            eta *= 0.5;
            if eta < 1e-14 {
                return f;
            }
        }
    }
    f
}

/// Estimates `gamma0 = sup |[X, Y]| / (|X| |Y|)` over the algebra.
pub fn estimate_gamma0(alg: &LieAlgebra, n_samples: usize, ascent_steps: usize, seed: u64) -> Result<f64> {
    if n_samples == 0 {
        return Err(Error::Parameter("gamma0 estimator needs at least one sample".into()));
    }
    if alg.is_abelian() {
        return Ok(0.0);
    }
    let d = alg.dim();
    let best = (0..n_samples as u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream_rng(seed, k);
            let start = vec![unit_gaussian(&mut rng, d), unit_gaussian(&mut rng, d)];
            sphere_ascent(start, ascent_steps, |x| {
                let (a, b) = (&x[0], &x[1]);
                let v = alg.bracket(a, b);
                let f: f64 = v.iter().map(|t| t * t).sum();
                let mut ga = vec![0.0; d];
                let mut gb = vec![0.0; d];
                for i in 0..d {
                    for j in 0..d {
                        let mut s = 0.0;
                        for (k, vk) in v.iter().enumerate() {
                            s += vk * alg.c(i, j, k);
                        }
                        ga[i] += 2.0 * s * b[j];
                        gb[j] += 2.0 * s * a[i];
                    }
                }
                (f, vec![ga, gb])
            })
        })
        .reduce(|| 0.0, f64::max);
    Ok(best.sqrt())
}

/// The cubic `p(omega) = <omega, [omega, omega]>` on self-dual coordinates,
/// stored through its gradient tensor `G` with `grad p(x) = G(x, x)`.
#[derive(Debug, Clone)]
pub struct SelfDualCubic {
    m: usize,
    grad_tensor: Vec<f64>,
}

impl SelfDualCubic {
    pub fn new(alg: &LieAlgebra) -> Result<Self> {
        let d = alg.dim();
        let m = 3 * d;
        let basis: Vec<GValuedTwoForm> = (0..m)
            .map(|i| {
                let mut c = vec![0.0; m];
                c[i] = 1.0;
                GValuedTwoForm::self_dual(d, &c)
            })
            .collect::<Result<_>>()?;
        // K[a][b][c] = <w_a, [w_b, w_c]> with the symmetric 2-form bracket.
        let mut k = vec![0.0; m * m * m];
        for b in 0..m {
            for c in b..m {
                let br = bracket_two_forms(alg, &basis[b], &basis[c])?;
                for a in 0..m {
                    let v = basis[a].inner(&br)?;
                    k[(a * m + b) * m + c] = v;
                    k[(a * m + c) * m + b] = v;
                }
            }
        }
        let mut grad_tensor = vec![0.0; m * m * m];
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    grad_tensor[(a * m + b) * m + c] =
                        k[(a * m + b) * m + c] + k[(b * m + a) * m + c] + k[(b * m + c) * m + a];
                }
            }
        }
        Ok(Self { m, grad_tensor })
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    /// Value and gradient at `x`.
    pub fn value_grad(&self, x: &[f64]) -> (f64, Vec<f64>) {
        let m = self.m;
        let mut g = vec![0.0; m];
        for (a, ga) in g.iter_mut().enumerate() {
            let block = &self.grad_tensor[a * m * m..(a + 1) * m * m];
            let mut s = 0.0;
            for b in 0..m {
                if x[b] == 0.0 {
                    continue;
                }
                let row = &block[b * m..(b + 1) * m];
                s += x[b] * row.iter().zip(x).map(|(t, xc)| t * xc).sum::<f64>();
            }
            *ga = s;
        }
        let p = g.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() / 3.0;
        (p, g)
    }
}

/// `<omega, [omega, omega]> / |omega|^3` for a nonzero 2-form.
pub fn gamma1_ratio(alg: &LieAlgebra, omega: &GValuedTwoForm) -> Result<f64> {
    let n = omega.norm();
    if n == 0.0 {
        return Err(Error::Parameter("gamma1 ratio of the zero form".into()));
    }
    let br = bracket_two_forms(alg, omega, omega)?;
    Ok(omega.inner(&br)? / (n * n * n))
}

/// Estimates `gamma1 = sup <omega, [omega, omega]> / |omega|^3` over nonzero
/// self-dual `g_E`-valued 2-forms in dimension four.
pub fn estimate_gamma1(alg: &LieAlgebra, n_samples: usize, ascent_steps: usize, seed: u64) -> Result<f64> {
    if n_samples == 0 {
        return Err(Error::Parameter("gamma1 estimator needs at least one sample".into()));
    }
    if alg.is_abelian() {
        return Ok(0.0);
    }
    let cubic = SelfDualCubic::new(alg)?;
    let m = cubic.len();
    let best = (0..n_samples as u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream_rng(seed, k);
            let start = vec![unit_gaussian(&mut rng, m)];
            sphere_ascent(start, ascent_steps, |x| {
                let (p, g) = cubic.value_grad(&x[0]);
                (p, vec![g])
            })
        })
        .reduce(|| f64::NEG_INFINITY, f64::max);
    Ok(best.max(0.0))
}
