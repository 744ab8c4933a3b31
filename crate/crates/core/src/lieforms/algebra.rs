//! Compact Lie algebras given by a faithful real antisymmetric representation.
//!
//! Generators are orthonormal under the fiber metric `<X, Y> = -1/2 tr(XY)`,
//! and the structure constants `c[a][b][k] = <[T_a, T_b], T_k>` are derived
//! and validated once at construction.

use nalgebra::DMatrix;

use crate::{Error, Result};

const TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct LieAlgebra {
    name: String,
    generators: Vec<DMatrix<f64>>,
    structure: Vec<f64>,
}

/// Fiber inner product `-1/2 tr(XY)` of two matrices.
pub fn fiber_inner(x: &DMatrix<f64>, y: &DMatrix<f64>) -> f64 {
    -0.5 * (x * y).trace()
}

/// Matrix commutator `XY - YX`.
pub fn commutator(x: &DMatrix<f64>, y: &DMatrix<f64>) -> DMatrix<f64> {
    x * y - y * x
}

impl LieAlgebra {
    /// Builds an algebra from antisymmetric generator matrices, deriving the
    /// structure constants and checking orthonormality, closure and the Jacobi
    /// identity.
    pub fn from_generators(name: impl Into<String>, generators: Vec<DMatrix<f64>>) -> Result<Self> {
        let name = name.into();
        let d = generators.len();
        if d == 0 {
            return Err(Error::Algebra(format!("{name}: no generators")));
        }
        let r = generators[0].nrows();
        for (a, t) in generators.iter().enumerate() {
            if t.nrows() != r || t.ncols() != r {
                return Err(Error::Algebra(format!("{name}: generator {a} is not {r}x{r}")));
            }
            if (t + t.transpose()).amax() > TOL {
                return Err(Error::Algebra(format!("{name}: generator {a} is not antisymmetric")));
            }
        }
        for a in 0..d {
            for b in 0..d {
                let g = fiber_inner(&generators[a], &generators[b]);
                let want = if a == b { 1.0 } else { 0.0 };
                if (g - want).abs() > TOL {
                    return Err(Error::Algebra(format!(
                        "{name}: generators {a},{b} not orthonormal (<T_a,T_b> = {g})"
                    )));
                }
            }
        }
        let mut structure = vec![0.0; d * d * d];
        for a in 0..d {
            for b in 0..d {
                let br = commutator(&generators[a], &generators[b]);
                let mut rebuilt = DMatrix::zeros(r, r);
                for k in 0..d {
                    let c = fiber_inner(&br, &generators[k]);
                    structure[(a * d + b) * d + k] = c;
                    rebuilt += &generators[k] * c;
                }
                if (&br - rebuilt).amax() > TOL {
                    return Err(Error::Algebra(format!(
                        "{name}: [T_{a}, T_{b}] leaves the span of the generators"
                    )));
                }
            }
        }
        let alg = Self { name, generators, structure };
        alg.validate_structure()?;
        Ok(alg)
    }

    fn validate_structure(&self) -> Result<()> {
        let d = self.dim();
        for a in 0..d {
            for b in 0..d {
                for k in 0..d {
                    if (self.c(a, b, k) + self.c(b, a, k)).abs() > TOL {
                        return Err(Error::Algebra(format!("{}: c not antisymmetric at ({a},{b},{k})", self.name)));
                    }
                }
            }
        }
        let res = self.jacobi_residual();
        if res > TOL {
            return Err(Error::Algebra(format!("{}: Jacobi residual {res:e}", self.name)));
        }
        Ok(())
    }

    /// Largest violation of the Jacobi identity over all basis triples.
    pub fn jacobi_residual(&self) -> f64 {
        let d = self.dim();
        let mut worst: f64 = 0.0;
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    for n in 0..d {
                        let mut s = 0.0;
                        for m in 0..d {
                            s += self.c(a, b, m) * self.c(m, c, n)
                                + self.c(b, c, m) * self.c(m, a, n)
                                + self.c(c, a, m) * self.c(m, b, n);
                        }
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Dimension `d` of the algebra.
    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    /// Rank of the bundle `E` on which the algebra acts.
    pub fn rep_dim(&self) -> usize {
        self.generators[0].nrows()
    }

    pub fn generators(&self) -> &[DMatrix<f64>] {
        &self.generators
    }

    /// Structure constant `c[a][b][k]`.
    #[inline]
    pub fn c(&self, a: usize, b: usize, k: usize) -> f64 {
        let d = self.generators.len();
        self.structure[(a * d + b) * d + k]
    }

    pub fn structure_constants(&self) -> &[f64] {
        &self.structure
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().all(|c| *c == 0.0)
    }

    /// Bracket of two elements given in generator coordinates.
    pub fn bracket(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        self.bracket_acc(x, y, 1.0, &mut out);
        out
    }

    /// `out += s * [x, y]`.
    #[inline]
    pub fn bracket_acc(&self, x: &[f64], y: &[f64], s: f64, out: &mut [f64]) {
        let d = self.dim();
        for a in 0..d {
            if x[a] == 0.0 {
                continue;
            }
            for b in 0..d {
                let xy = s * x[a] * y[b];
                if xy == 0.0 {
                    continue;
                }
                let row = &self.structure[(a * d + b) * d..(a * d + b + 1) * d];
                for (o, c) in out.iter_mut().zip(row) {
                    *o += xy * c;
                }
            }
        }
    }

    /// Fiber inner product in generator coordinates.
    pub fn inner(&self, x: &[f64], y: &[f64]) -> f64 {
        x.iter().zip(y).map(|(a, b)| a * b).sum()
    }

    /// Matrix `sum_a x_a T_a` acting on `E`.
    pub fn matrix(&self, x: &[f64]) -> DMatrix<f64> {
        let r = self.rep_dim();
        let mut m = DMatrix::zeros(r, r);
        for (xa, t) in x.iter().zip(&self.generators) {
            m += t * *xa;
        }
        m
    }

    /// Coordinates of a matrix in the span of the generators.
    pub fn coords(&self, m: &DMatrix<f64>) -> Vec<f64> {
        self.generators.iter().map(|t| fiber_inner(m, t)).collect()
    }

    /// `su(n)` in its defining representation on `C^n = R^{2n}`, with
    /// generators `i lambda / sqrt 2` for the generalised Gell-Mann matrices.
    pub fn su(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Parameter("su(n) needs n >= 2".into()));
        }
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut gens = Vec::new();
        // Each generator is i*lambda/sqrt2 with lambda Hermitian; its complex
        // entries are (re, im) pairs, realified below.
        let push = |re: DMatrix<f64>, im: DMatrix<f64>, gens: &mut Vec<DMatrix<f64>>| gens.push(realify(&re, &im));
        for j in 0..n {
            for k in j + 1..n {
                // lambda = E_jk + E_kj, i*lambda is purely imaginary.
                let re = DMatrix::zeros(n, n);
                let mut im = DMatrix::zeros(n, n);
                im[(j, k)] = s;
                im[(k, j)] = s;
                push(re, im, &mut gens);
                // lambda = -i E_jk + i E_kj, i*lambda = E_jk - E_kj.
                let mut re = DMatrix::zeros(n, n);
                re[(j, k)] = s;
                re[(k, j)] = -s;
                push(re, DMatrix::zeros(n, n), &mut gens);
            }
        }
        for m in 1..n {
            let norm = (2.0 / (m * (m + 1)) as f64).sqrt();
            let mut im = DMatrix::zeros(n, n);
            for j in 0..m {
                im[(j, j)] = s * norm;
            }
            im[(m, m)] = -s * norm * m as f64;
            push(DMatrix::zeros(n, n), im, &mut gens);
        }
        Self::from_generators(format!("su({n})"), gens)
    }

    pub fn su2() -> Self {
        Self::su(2).expect("su(2) fixture is valid")
    }

    pub fn su3() -> Self {
        Self::su(3).expect("su(3) fixture is valid")
    }

    /// `so(n)` in its defining representation on `R^n`.
    pub fn so(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Parameter("so(n) needs n >= 2".into()));
        }
        let mut gens = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut m = DMatrix::zeros(n, n);
                m[(i, j)] = 1.0;
                m[(j, i)] = -1.0;
                gens.push(m);
            }
        }
        Self::from_generators(format!("so({n})"), gens)
    }

    pub fn so3() -> Self {
        Self::so(3).expect("so(3) fixture is valid")
    }

    /// The abelian algebra `u(1)^k` acting on `R^{2k}` by rotation blocks.
    pub fn u1(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Parameter("u(1)^k needs k >= 1".into()));
        }
        let gens = (0..k)
            .map(|i| {
                let mut m = DMatrix::zeros(2 * k, 2 * k);
                m[(2 * i, 2 * i + 1)] = -1.0;
                m[(2 * i + 1, 2 * i)] = 1.0;
                m
            })
            .collect();
        Self::from_generators(format!("u(1)^{k}"), gens)
    }

    /// Looks up a fixture by name: `su2`, `so3`, `su3`, `u1^k`, `su(n)`, `so(n)`.
    pub fn fixture(name: &str) -> Result<Self> {
        let key = name.trim().to_ascii_lowercase().replace(['(', ')', ' '], "");
        if let Some(k) = key.strip_prefix("u1^") {
            let k: usize = k.parse().map_err(|_| Error::Parameter(format!("bad algebra name {name}")))?;
            return Self::u1(k);
        }
        if key == "u1" {
            return Self::u1(1);
        }
        if let Some(n) = key.strip_prefix("su") {
            let n: usize = n.parse().map_err(|_| Error::Parameter(format!("bad algebra name {name}")))?;
            return Self::su(n);
        }
        if let Some(n) = key.strip_prefix("so") {
            let n: usize = n.parse().map_err(|_| Error::Parameter(format!("bad algebra name {name}")))?;
            return Self::so(n);
        }
        Err(Error::Parameter(format!("unknown algebra {name}")))
    }
}

/// Realification `X + iY -> [[X, -Y], [Y, X]]` of a complex matrix.
fn realify(re: &DMatrix<f64>, im: &DMatrix<f64>) -> DMatrix<f64> {
    let n = re.nrows();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = re[(i, j)];
            m[(i + n, j + n)] = re[(i, j)];
            m[(i, j + n)] = -im[(i, j)];
            m[(i + n, j)] = im[(i, j)];
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn levi_civita(a: usize, b: usize, c: usize) -> f64 {
        match (a, b, c) {
            (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
            (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
            _ => 0.0,
        }
    }

    #[test]
    fn su2_structure_constants_match_embedded_table() {
        // [i s_a / sqrt2, i s_b / sqrt2] = -sqrt2 eps_abc (i s_c / sqrt2)
        // for the Pauli matrices ordered (s_x, s_y, s_z).
        let alg = LieAlgebra::su2();
        assert_eq!(alg.dim(), 3);
        assert_eq!(alg.rep_dim(), 4);
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let want = -SQRT_2 * levi_civita(a, b, c);
                    assert!((alg.c(a, b, c) - want).abs() < 1e-14, "c({a},{b},{c})");
                }
            }
        }
    }

    #[test]
    fn so3_structure_constants_are_unit_levi_civita() {
        // Basis L12, L13, L23 with L_ij = E_ij - E_ji.
        let alg = LieAlgebra::so3();
        let table = [
            ((0, 2), 1, 1.0), // [L12, L23] = L13
            ((0, 1), 2, -1.0), // [L12, L13] = -L23
            ((1, 2), 0, -1.0), // [L13, L23] = -L12
        ];
        for ((a, b), k, v) in table {
            assert!((alg.c(a, b, k) - v).abs() < 1e-14);
        }
    }

    #[test]
    fn su3_matches_gell_mann_structure_table() {
        // Totally antisymmetric f_abc of the Gell-Mann basis; with T = i lambda / sqrt2
        // the structure constants are -sqrt2 f_abc. Our ordering lists
        // off-diagonal pairs (12),(13),(23) as (lambda_1, lambda_2), (lambda_4, lambda_5),
        // (lambda_6, lambda_7) followed by lambda_3, lambda_8.
        let gm_to_ours = [0usize, 1, 6, 2, 3, 4, 5, 7];
        let h = 0.5;
        let r = 3f64.sqrt() / 2.0;
        let entries = [
            ((1, 2, 3), 1.0),
            ((1, 4, 7), h),
            ((2, 4, 6), h),
            ((2, 5, 7), h),
            ((3, 4, 5), h),
            ((1, 5, 6), -h),
            ((3, 6, 7), -h),
            ((4, 5, 8), r),
            ((6, 7, 8), r),
        ];
        let mut f = [[[0.0f64; 8]; 8]; 8];
        for ((a, b, c), v) in entries {
            let (a, b, c) = (a - 1, b - 1, c - 1);
            for (x, y, z, s) in [(a, b, c, 1.0), (b, c, a, 1.0), (c, a, b, 1.0), (b, a, c, -1.0), (a, c, b, -1.0), (c, b, a, -1.0)] {
                f[x][y][z] = s * v;
            }
        }
        let alg = LieAlgebra::su3();
        for a in 0..8 {
            for b in 0..8 {
                for c in 0..8 {
                    let want = -SQRT_2 * f[a][b][c];
                    let got = alg.c(gm_to_ours[a], gm_to_ours[b], gm_to_ours[c]);
                    assert!((got - want).abs() < 1e-14, "({a},{b},{c}) got {got} want {want}");
                }
            }
        }
    }

    #[test]
    fn abelian_fixture_has_zero_structure() {
        let alg = LieAlgebra::u1(3).unwrap();
        assert!(alg.is_abelian());
        assert_eq!(alg.dim(), 3);
    }

    #[test]
    fn fixtures_pass_validation_and_jacobi() {
        for name in ["su2", "so3", "su3", "u1^2", "so(4)", "su(4)"] {
            let alg = LieAlgebra::fixture(name).unwrap();
            assert!(alg.jacobi_residual() < 1e-12, "{name}");
        }
    }

    #[test]
    fn non_closing_generators_are_rejected() {
        let mut a = DMatrix::zeros(3, 3);
        a[(0, 1)] = 1.0;
        a[(1, 0)] = -1.0;
        let mut b = DMatrix::zeros(3, 3);
        b[(1, 2)] = 1.0;
        b[(2, 1)] = -1.0;
        assert!(LieAlgebra::from_generators("bad", vec![a, b]).is_err());
    }

    #[test]
    fn bracket_matches_matrix_commutator() {
        let alg = LieAlgebra::su3();
        let x: Vec<f64> = (0..8).map(|i| (i as f64 * 0.7).sin()).collect();
        let y: Vec<f64> = (0..8).map(|i| (i as f64 * 1.3).cos()).collect();
        let via_c = alg.bracket(&x, &y);
        let via_m = alg.coords(&commutator(&alg.matrix(&x), &alg.matrix(&y)));
        for (p, q) in via_c.iter().zip(&via_m) {
            assert!((p - q).abs() < 1e-13);
        }
    }
}
