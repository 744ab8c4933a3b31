//! Symmetric tridiagonal eigenvalue kernels: Sturm counting, bisection and
//! implicit QL.

use crate::{Error, Result};

/// A symmetric tridiagonal pencil `A - x B` with diagonal `B > 0`.
///
/// `off[i]` couples rows `i` and `i + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagPencil {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
    pub weight: Vec<f64>,
}

impl TridiagPencil {
    pub fn new(diag: Vec<f64>, off: Vec<f64>, weight: Vec<f64>) -> Result<Self> {
        let n = diag.len();
        if n == 0 || off.len() + 1 != n || weight.len() != n {
            return Err(Error::Dimension(format!(
                "pencil with {} diagonal, {} off-diagonal and {} weight entries",
                n,
                off.len(),
                weight.len()
            )));
        }
        if let Some(w) = weight.iter().find(|w| !(**w > 0.0) || !w.is_finite()) {
            return Err(Error::Parameter(format!("pencil weight {w} is not positive")));
        }
        Ok(Self { diag, off, weight })
    }

    /// Plain matrix: unit weights.
    pub fn standard(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        let n = diag.len();
        Self::new(diag, off, vec![1.0; n])
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of generalised eigenvalues `< x`, or `<= x` when `inclusive`.
    ///
    /// Counts negative pivots of the `LDL^T` factorisation of `A - x B`. An
    /// exactly zero pivot is treated as negative in the inclusive count and
    /// as positive otherwise.
    pub fn count_below(&self, x: f64, inclusive: bool) -> usize {
        let mut count = 0;
        let mut q = 1.0;
        for i in 0..self.diag.len() {
            let mut pivot = self.diag[i] - x * self.weight[i];
            if i > 0 {
                let e = self.off[i - 1];
                pivot -= e * e / q;
            }
            if pivot == 0.0 {
                let tiny = f64::MIN_POSITIVE * (1.0 + self.diag[i].abs());
                pivot = if inclusive { -tiny } else { tiny };
            }
            if pivot < 0.0 {
                count += 1;
            }
            q = pivot;
        }
        count
    }

    /// Gershgorin interval of `B^{-1/2} A B^{-1/2}`.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let c = self.diag[i] / self.weight[i];
            let mut r = 0.0;
            if i > 0 {
                r += self.off[i - 1].abs() / (self.weight[i] * self.weight[i - 1]).sqrt();
            }
            if i + 1 < n {
                r += self.off[i].abs() / (self.weight[i] * self.weight[i + 1]).sqrt();
            }
            lo = lo.min(c - r);
            hi = hi.max(c + r);
        }
        let pad = 1e-12 * (1.0 + lo.abs().max(hi.abs()));
        (lo - pad, hi + pad)
    }

    /// The `k`-th smallest generalised eigenvalue (zero based) by bisection.
    pub fn eigenvalue(&self, k: usize) -> Result<f64> {
        if k >= self.len() {
            return Err(Error::Parameter(format!("eigenvalue index {k} outside 0..{}", self.len())));
        }
        let (mut lo, mut hi) = self.gershgorin();
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi || hi - lo <= 2.0 * f64::EPSILON * (lo.abs() + hi.abs()) {
                break;
            }
            if self.count_below(mid, false) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// The `k` smallest generalised eigenvalues, ascending.
    pub fn lowest(&self, k: usize) -> Result<Vec<f64>> {
        (0..k.min(self.len())).map(|i| self.eigenvalue(i)).collect()
    }

    /// The symmetric matrix `B^{-1/2} A B^{-1/2}` as `(diag, off)`.
    pub fn symmetrized(&self) -> (Vec<f64>, Vec<f64>) {
        let s: Vec<f64> = self.weight.iter().map(|w| w.sqrt()).collect();
        let d = self.diag.iter().zip(&self.weight).map(|(a, w)| a / w).collect();
        let e = self.off.iter().enumerate().map(|(i, a)| a / (s[i] * s[i + 1])).collect();
        (d, e)
    }

    /// All generalised eigenvalues by implicit QL on the symmetrised matrix,
    /// ascending.
    pub fn all_eigenvalues(&self) -> Result<Vec<f64>> {
        let (mut d, e) = self.symmetrized();
        ql_eigenvalues(&mut d, &e)?;
        d.sort_by(f64::total_cmp);
        Ok(d)
    }
}

/// Eigenvalues of the symmetric tridiagonal matrix `(d, e)` by the implicit
/// QL algorithm with Wilkinson shifts. Overwrites `d`; the order is
/// unspecified.
pub fn ql_eigenvalues(d: &mut [f64], e_in: &[f64]) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    if e_in.len() + 1 != n {
        return Err(Error::Dimension(format!("{} diagonal and {} off-diagonal entries", n, e_in.len())));
    }
    let mut e = e_in.to_vec();
    e.push(0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::Resolution(format!("QL iteration did not converge at index {l}")));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
