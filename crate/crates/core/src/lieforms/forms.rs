//! Lie-algebra-valued 1-forms and 2-forms on an orthonormal frame.
//!
//! Every component is stored in generator coordinates, so the fiber inner
//! product is Euclidean in each component. With that storage the conventions
//!
//! ```text
//! <P, Q>_{Lambda^1}  = -1/2 sum_i tr(P_i Q_i)
//! <R, S>_{Lambda^2}  = -1/4 sum_ij tr(R_ij S_ij)
//! <Z, Y>_{S^2_0}     =      sum_ij Z_ij Y_ij
//! ```
//!
//! reduce to plain coordinate sums.

use nalgebra::DMatrix;

use super::LieAlgebra;
use crate::{Error, Result};

fn shape_err(what: &str, a: (usize, usize), b: (usize, usize)) -> Error {
    Error::Dimension(format!("{what}: (n, d) = {a:?} vs {b:?}"))
}

/// Inner product and norm shared by every form kind.
pub trait FormInner {
    fn inner(&self, other: &Self) -> Result<f64>;

    fn norm_sq(&self) -> f64;

    fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GValuedOneForm {
    n: usize,
    d: usize,
    coeffs: Vec<f64>,
}

impl GValuedOneForm {
    pub fn zeros(n: usize, d: usize) -> Self {
        Self { n, d, coeffs: vec![0.0; n * d] }
    }

    /// Builds a form from `n * d` coefficients, component-major.
    pub fn from_coeffs(n: usize, d: usize, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != n * d {
            return Err(Error::Dimension(format!("1-form needs {} coefficients, got {}", n * d, coeffs.len())));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Parameter("1-form coefficients must be finite".into()));
        }
        Ok(Self { n, d, coeffs })
    }

    /// The form `e^i (x) X` with a single nonzero component.
    pub fn basis(n: usize, i: usize, x: &[f64]) -> Self {
        let d = x.len();
        let mut f = Self::zeros(n, d);
        f.component_mut(i).copy_from_slice(x);
        f
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n, self.d)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn component(&self, i: usize) -> &[f64] {
        &self.coeffs[i * self.d..(i + 1) * self.d]
    }

    pub fn component_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.coeffs[i * self.d..(i + 1) * self.d]
    }

    pub fn scale(&mut self, s: f64) {
        self.coeffs.iter_mut().for_each(|c| *c *= s);
    }

    pub fn add_scaled(&mut self, other: &Self, s: f64) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(shape_err("1-form sum", self.shape(), other.shape()));
        }
        self.coeffs.iter_mut().zip(&other.coeffs).for_each(|(a, b)| *a += s * b);
        Ok(())
    }

    /// Component matrices `A_i` acting on `E`.
    pub fn matrices(&self, alg: &LieAlgebra) -> Vec<DMatrix<f64>> {
        (0..self.n).map(|i| alg.matrix(self.component(i))).collect()
    }
}

impl FormInner for GValuedOneForm {
    fn inner(&self, other: &Self) -> Result<f64> {
        if self.shape() != other.shape() {
            return Err(shape_err("1-form inner product", self.shape(), other.shape()));
        }
        Ok(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).sum())
    }

    fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GValuedTwoForm {
    n: usize,
    d: usize,
    coeffs: Vec<f64>,
    self_dual: bool,
}

impl GValuedTwoForm {
    pub fn zeros(n: usize, d: usize) -> Self {
        Self { n, d, coeffs: vec![0.0; n * n * d], self_dual: false }
    }

    /// Builds a 2-form from its upper-triangular components `F_ij`, `i < j`,
    /// listed in lexicographic order, each with `d` coordinates.
    pub fn from_upper(n: usize, d: usize, upper: &[f64]) -> Result<Self> {
        let m = n * (n - 1) / 2;
        if upper.len() != m * d {
            return Err(Error::Dimension(format!("2-form needs {} coefficients, got {}", m * d, upper.len())));
        }
        let mut f = Self::zeros(n, d);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                f.set(i, j, &upper[k * d..(k + 1) * d]);
                k += 1;
            }
        }
        Ok(f)
    }

    /// The self-dual form `sum_a omega^a (x) X_a` in `n = 4`, where
    /// `omega^1 = (e12 + e34)/sqrt2`, `omega^2 = (e13 + e42)/sqrt2`,
    /// `omega^3 = (e14 + e23)/sqrt2` and `X_a = coeffs[a*d..(a+1)*d]`.
    pub fn self_dual(d: usize, coeffs: &[f64]) -> Result<Self> {
        if coeffs.len() != 3 * d {
            return Err(Error::Dimension(format!("self-dual 2-form needs {} coefficients", 3 * d)));
        }
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut f = Self::zeros(4, d);
        for (a, pairs) in SELF_DUAL_PAIRS.iter().enumerate() {
            let x: Vec<f64> = coeffs[a * d..(a + 1) * d].iter().map(|c| c * s).collect();
            for &(i, j) in pairs {
                f.add_to(i, j, &x);
            }
        }
        f.self_dual = true;
        Ok(f)
    }

    /// Marks a 4-dimensional form as self-dual after checking `*F = F`.
    pub fn with_self_dual_flag(mut self) -> Result<Self> {
        let res = self.self_duality_residual()?;
        let scale = 1.0 + self.norm();
        if res > 1e-12 * scale {
            return Err(Error::Parameter(format!("2-form is not self-dual (residual {res:e})")));
        }
        self.self_dual = true;
        Ok(self)
    }

    pub fn is_self_dual(&self) -> bool {
        self.self_dual
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n, self.d)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn component(&self, i: usize, j: usize) -> &[f64] {
        let o = (i * self.n + j) * self.d;
        &self.coeffs[o..o + self.d]
    }

    /// Sets `F_ij = x` and `F_ji = -x`.
    pub fn set(&mut self, i: usize, j: usize, x: &[f64]) {
        assert!(i != j, "diagonal components of a 2-form vanish");
        let (n, d) = (self.n, self.d);
        for a in 0..d {
            self.coeffs[(i * n + j) * d + a] = x[a];
            self.coeffs[(j * n + i) * d + a] = -x[a];
        }
        self.self_dual = false;
    }

    fn add_to(&mut self, i: usize, j: usize, x: &[f64]) {
        let (n, d) = (self.n, self.d);
        for a in 0..d {
            self.coeffs[(i * n + j) * d + a] += x[a];
            self.coeffs[(j * n + i) * d + a] -= x[a];
        }
    }

    /// Hodge star in dimension four: `(*F)_ij = 1/2 sum_kl eps_ijkl F_kl`.
    pub fn hodge_star(&self) -> Result<Self> {
        if self.n != 4 {
            return Err(Error::Dimension(format!("Hodge star on 2-forms needs n = 4, got {}", self.n)));
        }
        let mut out = Self::zeros(4, self.d);
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    for l in 0..4 {
                        let e = levi_civita4(i, j, k, l);
                        if e == 0.0 {
                            continue;
                        }
                        let o = (i * 4 + j) * self.d;
                        for a in 0..self.d {
                            out.coeffs[o + a] += 0.5 * e * self.component(k, l)[a];
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `|*F - F|` in the 2-form norm.
    pub fn self_duality_residual(&self) -> Result<f64> {
        let mut star = self.hodge_star()?;
        star.coeffs.iter_mut().zip(&self.coeffs).for_each(|(s, f)| *s -= f);
        Ok(star.norm())
    }

    /// Coordinates on the self-dual basis, `3 * d` numbers, when `n = 4`.
    pub fn self_dual_coords(&self) -> Result<Vec<f64>> {
        if self.n != 4 {
            return Err(Error::Dimension("self-dual coordinates need n = 4".into()));
        }
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut out = vec![0.0; 3 * self.d];
        for (a, pairs) in SELF_DUAL_PAIRS.iter().enumerate() {
            for &(i, j) in pairs {
                for b in 0..self.d {
                    out[a * self.d + b] += s * self.component(i, j)[b];
                }
            }
        }
        Ok(out)
    }
}

impl FormInner for GValuedTwoForm {
    fn inner(&self, other: &Self) -> Result<f64> {
        if self.shape() != other.shape() {
            return Err(shape_err("2-form inner product", self.shape(), other.shape()));
        }
        Ok(0.5 * self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).sum::<f64>())
    }

    fn norm_sq(&self) -> f64 {
        0.5 * self.coeffs.iter().map(|c| c * c).sum::<f64>()
    }
}

const SELF_DUAL_PAIRS: [[(usize, usize); 2]; 3] = [[(0, 1), (2, 3)], [(0, 2), (3, 1)], [(0, 3), (1, 2)]];

fn levi_civita4(i: usize, j: usize, k: usize, l: usize) -> f64 {
    let p = [i, j, k, l];
    for a in 0..4 {
        for b in a + 1..4 {
            if p[a] == p[b] {
                return 0.0;
            }
        }
    }
    let mut inv = 0;
    for a in 0..4 {
        for b in a + 1..4 {
            if p[a] > p[b] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Symmetric 2-tensor on the base, e.g. the trace-free Ricci tensor `Z`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTwoTensor {
    n: usize,
    data: Vec<f64>,
    trace_free: bool,
}

impl SymTwoTensor {
    /// Builds a symmetric tensor from a row-major `n x n` array; the input must
    /// be exactly symmetric.
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::Dimension(format!("symmetric tensor needs {} entries", n * n)));
        }
        for i in 0..n {
            for j in 0..i {
                if data[i * n + j] != data[j * n + i] {
                    return Err(Error::Parameter(format!("tensor is not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(Self { n, data, trace_free: false })
    }

    /// Builds a trace-free symmetric tensor, checking `|tr Z| <= 1e-14 * scale`.
    pub fn trace_free(n: usize, data: Vec<f64>) -> Result<Self> {
        let mut z = Self::new(n, data)?;
        let scale = z.data.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        if z.trace().abs() > 1e-14 * scale * n as f64 {
            return Err(Error::Parameter(format!("tensor has trace {:e}", z.trace())));
        }
        z.trace_free = true;
        Ok(z)
    }

    pub fn diag(values: &[f64]) -> Result<Self> {
        let n = values.len();
        let mut data = vec![0.0; n * n];
        for (i, v) in values.iter().enumerate() {
            data[i * n + i] = *v;
        }
        let z = Self::new(n, data)?;
        if z.trace().abs() <= 1e-14 * values.iter().fold(1.0f64, |m, v| m.max(v.abs())) * n as f64 {
            Ok(Self { trace_free: true, ..z })
        } else {
            Ok(z)
        }
    }

    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n], trace_free: true }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn is_trace_free(&self) -> bool {
        self.trace_free
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }
}

impl FormInner for SymTwoTensor {
    fn inner(&self, other: &Self) -> Result<f64> {
        if self.n != other.n {
            return Err(Error::Dimension(format!("tensor sizes {} vs {}", self.n, other.n)));
        }
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum())
    }

    fn norm_sq(&self) -> f64 {
        self.data.iter().map(|c| c * c).sum()
    }
}

/// Bracket of 1-forms, `[A, B]_jk = 1/2([A_j, B_k] - [A_k, B_j])`, which
/// reduces to `[A_j, A_k]` on the diagonal.
pub fn bracket_one_forms(alg: &LieAlgebra, a: &GValuedOneForm, b: &GValuedOneForm) -> Result<GValuedTwoForm> {
    if a.shape() != b.shape() || a.d() != alg.dim() {
        return Err(shape_err("1-form bracket", a.shape(), b.shape()));
    }
    let (n, d) = a.shape();
    let mut out = GValuedTwoForm::zeros(n, d);
    for j in 0..n {
        for k in 0..n {
            if j == k {
                continue;
            }
            let o = (j * n + k) * d;
            let slot = &mut out.coeffs[o..o + d];
            alg.bracket_acc(a.component(j), b.component(k), 0.5, slot);
            alg.bracket_acc(a.component(k), b.component(j), -0.5, slot);
        }
    }
    Ok(out)
}

/// Bracket of 2-forms, `[F, G]_ij = 1/2 sum_k ([F_ik, G_kj] + [G_ik, F_kj])`,
/// so that `[F, F]_ij = sum_k [F_ik, F_kj]`.
pub fn bracket_two_forms(alg: &LieAlgebra, f: &GValuedTwoForm, g: &GValuedTwoForm) -> Result<GValuedTwoForm> {
    if f.shape() != g.shape() || f.d() != alg.dim() {
        return Err(shape_err("2-form bracket", f.shape(), g.shape()));
    }
    let (n, d) = f.shape();
    let mut out = GValuedTwoForm::zeros(n, d);
    for i in 0..n {
        for j in 0..n {
            let o = (i * n + j) * d;
            for k in 0..n {
                let slot = &mut out.coeffs[o..o + d];
                alg.bracket_acc(f.component(i, k), g.component(k, j), 0.5, slot);
                alg.bracket_acc(g.component(i, k), f.component(k, j), 0.5, slot);
            }
        }
    }
    Ok(out)
}

/// The two endomorphisms of `Lambda^1(g_E)` induced by base and bundle data.
#[derive(Debug, Clone, Copy)]
pub enum Endo<'a> {
    /// `Z(A)_i = sum_j Z_ij A_j`.
    Sym(&'a SymTwoTensor),
    /// `[Phi, A]_i = sum_j [Phi_ji, A_j]`.
    Phi(&'a GValuedTwoForm),
}

pub fn endo_action(alg: &LieAlgebra, endo: Endo<'_>, a: &GValuedOneForm) -> Result<GValuedOneForm> {
    let (n, d) = a.shape();
    if d != alg.dim() {
        return Err(Error::Dimension(format!("1-form has d = {d}, algebra has {}", alg.dim())));
    }
    let mut out = GValuedOneForm::zeros(n, d);
    match endo {
        Endo::Sym(z) => {
            if z.n() != n {
                return Err(Error::Dimension(format!("Z is {0}x{0}, form has n = {n}", z.n())));
            }
            for i in 0..n {
                for j in 0..n {
                    let zij = z.get(i, j);
                    if zij == 0.0 {
                        continue;
                    }
                    let aj = a.component(j).to_vec();
                    out.component_mut(i).iter_mut().zip(aj).for_each(|(o, x)| *o += zij * x);
                }
            }
        }
        Endo::Phi(phi) => {
            if phi.shape() != a.shape() {
                return Err(shape_err("[Phi, A]", phi.shape(), a.shape()));
            }
            for i in 0..n {
                for j in 0..n {
                    let (pji, aj) = (phi.component(j, i).to_vec(), a.component(j).to_vec());
                    alg.bracket_acc(&pji, &aj, 1.0, out.component_mut(i));
                }
            }
        }
    }
    Ok(out)
}

/// Matrix of an endomorphism of `Lambda^1(g_E)` on the orthonormal basis
/// `e^k (x) T_a`, ordered `k * d + a`.
pub fn endo_matrix(alg: &LieAlgebra, endo: Endo<'_>, n: usize) -> Result<DMatrix<f64>> {
    let d = alg.dim();
    let m = n * d;
    let mut out = DMatrix::zeros(m, m);
    for col in 0..m {
        let mut coeffs = vec![0.0; m];
        coeffs[col] = 1.0;
        let e = GValuedOneForm::from_coeffs(n, d, coeffs)?;
        let img = endo_action(alg, endo, &e)?;
        for (row, v) in img.coeffs().iter().enumerate() {
            out[(row, col)] = *v;
        }
    }
    Ok(out)
}
