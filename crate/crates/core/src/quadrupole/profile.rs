//! Profiles `a = (a1, a2, a3)` on `(0, pi/3)` and the explicit test family.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io::BufRead;

use serde::Serialize;

use crate::{Error, Result};

/// Right endpoint of the reduced interval.
pub const THETA_MAX: f64 = PI / 3.0;

/// Default plateau half-width.
pub const DEFAULT_DELTA: f64 = PI / 24.0;

/// Default number of grid nodes.
pub const DEFAULT_GRID: usize = 1024;

/// Fraction of the ramp spent in each smooth shoulder of the slope profile.
const SHOULDER: f64 = 0.2;

/// A profile sampled at the cell centres `theta_j = (j + 1/2) h`,
/// `h = (pi/3) / N`, of a uniform grid on `(0, pi/3)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    l: i64,
    delta: f64,
    theta: Vec<f64>,
    a: [Vec<f64>; 3],
}

/// Cell-centre nodes of the uniform `n`-cell grid on `(0, pi/3)`.
pub fn grid_nodes(n: usize) -> Vec<f64> {
    let h = THETA_MAX / n as f64;
    (0..n).map(|j| (j as f64 + 0.5) * h).collect()
}

impl Profile {
    /// Builds a profile from node values; `delta` is the width of the pinned
    /// end plateaus used by the minimiser.
    pub fn new(l: i64, delta: f64, a1: Vec<f64>, a2: Vec<f64>, a3: Vec<f64>) -> Result<Self> {
        let n = a1.len();
        if n < 2 || a2.len() != n || a3.len() != n {
            return Err(Error::Dimension(format!(
                "profile components have lengths {}, {}, {}",
                a1.len(),
                a2.len(),
                a3.len()
            )));
        }
        if a1.iter().chain(&a2).chain(&a3).any(|v| !v.is_finite()) {
            return Err(Error::Parameter("profile values must be finite".into()));
        }
        if !(delta > 0.0 && delta < THETA_MAX / 2.0) {
            return Err(Error::Parameter(format!("plateau width {delta} outside (0, pi/6)")));
        }
        Ok(Self { l, delta, theta: grid_nodes(n), a: [a1, a2, a3] })
    }

    /// The zero profile on `n` nodes.
    pub fn zeros(n: usize) -> Self {
        Self { l: 0, delta: DEFAULT_DELTA, theta: grid_nodes(n), a: [vec![0.0; n], vec![0.0; n], vec![0.0; n]] }
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    /// Grid spacing.
    pub fn h(&self) -> f64 {
        THETA_MAX / self.len() as f64
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn a(&self, i: usize) -> &[f64] {
        &self.a[i]
    }

    pub fn components(&self) -> &[Vec<f64>; 3] {
        &self.a
    }

    pub(crate) fn components_mut(&mut self) -> &mut [Vec<f64>; 3] {
        &mut self.a
    }

    /// Node values `(a1, a2, a3)` at node `j`.
    pub fn node(&self, j: usize) -> [f64; 3] {
        [self.a[0][j], self.a[1][j], self.a[2][j]]
    }

    /// Whether node `j` lies in one of the end plateaus.
    pub fn is_pinned(&self, j: usize) -> bool {
        let t = self.theta[j];
        t <= self.delta || t >= THETA_MAX - self.delta
    }

    /// Linear extrapolation of value and slope to `theta = 0` and `theta = pi/3`
    /// from the two nearest nodes.
    fn end_jets(&self) -> ([f64; 3], [f64; 3], [f64; 3], [f64; 3]) {
        let n = self.len();
        let h = self.h();
        let mut v0 = [0.0; 3];
        let mut d0 = [0.0; 3];
        let mut v1 = [0.0; 3];
        let mut d1 = [0.0; 3];
        for i in 0..3 {
            let s0 = (self.a[i][1] - self.a[i][0]) / h;
            d0[i] = s0;
            v0[i] = self.a[i][0] - 0.5 * h * s0;
            let s1 = (self.a[i][n - 1] - self.a[i][n - 2]) / h;
            d1[i] = s1;
            v1[i] = self.a[i][n - 1] + 0.5 * h * s1;
        }
        (v0, d0, v1, d1)
    }

    /// Largest deviation of the end values from `(0, 0, l)` and `(0, 3, 0)`.
    pub fn boundary_residual(&self) -> f64 {
        let (v0, _, v1, _) = self.end_jets();
        let want0 = [0.0, 0.0, self.l as f64];
        let want1 = [0.0, 3.0, 0.0];
        (0..3).map(|i| (v0[i] - want0[i]).abs().max((v1[i] - want1[i]).abs())).fold(0.0, f64::max)
    }

    /// Largest violation of the reflection conditions
    /// `a1(t) = a2(-t)`, `a3` even at `0`, and `a1(pi/3 + t) = a3(pi/3 - t)`,
    /// `a2` even at `pi/3`, measured on values and first derivatives.
    pub fn symmetry_residual(&self) -> f64 {
        let (v0, d0, v1, d1) = self.end_jets();
        [
            (v0[0] - v0[1]).abs(),
            (d0[0] + d0[1]).abs(),
            d0[2].abs(),
            (v1[0] - v1[2]).abs(),
            (d1[0] + d1[2]).abs(),
            d1[1].abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    /// Writes the columnar text format: a header carrying `l` and `delta`
    /// followed by one `theta a1 a2 a3` row per node.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# quadrupole profile");
        let _ = writeln!(s, "# l = {}", self.l);
        let _ = writeln!(s, "# delta = {:.17e}", self.delta);
        let _ = writeln!(s, "# theta a1 a2 a3");
        for j in 0..self.len() {
            let _ = writeln!(
                s,
                "{:.17e} {:.17e} {:.17e} {:.17e}",
                self.theta[j], self.a[0][j], self.a[1][j], self.a[2][j]
            );
        }
        s
    }

    /// Parses the format written by [`Profile::to_text`].
    pub fn from_text(reader: impl BufRead) -> Result<Self> {
        let mut l = None;
        let mut delta = None;
        let mut rows: Vec<[f64; 4]> = Vec::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            if let Some(h) = t.strip_prefix('#') {
                if let Some((k, v)) = h.split_once('=') {
                    match k.trim() {
                        "l" => l = Some(v.trim().parse::<i64>().map_err(|e| Error::Parse(format!("l: {e}")))?),
                        "delta" => {
                            delta = Some(v.trim().parse::<f64>().map_err(|e| Error::Parse(format!("delta: {e}")))?)
                        }
                        _ => {}
                    }
                }
                continue;
            }
            let vals: Vec<f64> = t
                .split_whitespace()
                .map(|x| x.parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            if vals.len() != 4 {
                return Err(Error::Parse(format!("line {}: expected 4 columns, got {}", lineno + 1, vals.len())));
            }
            rows.push([vals[0], vals[1], vals[2], vals[3]]);
        }
        let l = l.ok_or_else(|| Error::Parse("missing `# l = ...` header".into()))?;
        let delta = delta.ok_or_else(|| Error::Parse("missing `# delta = ...` header".into()))?;
        let grid = grid_nodes(rows.len());
        for (r, g) in rows.iter().zip(&grid) {
            if (r[0] - g).abs() > 1e-12 {
                return Err(Error::Parse(format!("theta {} is not on the uniform cell-centre grid", r[0])));
            }
        }
        let col = |k: usize| rows.iter().map(|r| r[k]).collect::<Vec<_>>();
        Self::new(l, delta, col(1), col(2), col(3))
    }
}

/// Slope caps checked for the default construction.
#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct SlopeReport {
    pub max_a2_slope: f64,
    pub min_a3_slope: f64,
    /// `0 <= a2' <= 5` and `0 >= a3' >= -5 l / 3`.
    pub caps_met: bool,
}

/// The analytic test profile: `a1 = 0`, `a2 = 3 S`, `a3 = l (1 - S)` where `S`
/// is a smooth monotone ramp from `0` on `[0, delta]` to `1` on
/// `[pi/3 - delta, pi/3]`.
///
/// The ramp's slope is a plateau with quintic smoothstep shoulders, which keeps
/// the peak slope within `1 / (1 - SHOULDER)` of the minimum possible
/// `1 / (pi/3 - 2 delta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestProfileShape {
    pub l: i64,
    pub delta: f64,
}

impl TestProfileShape {
    pub fn new(l: i64, delta: f64) -> Result<Self> {
        if l <= 0 {
            return Err(Error::Parameter(format!("test profile needs l > 0, got {l}")));
        }
        if !(delta > 0.0 && delta <= PI / 12.0 + 1e-15) {
            return Err(Error::Parameter(format!("plateau width {delta} outside (0, pi/12]")));
        }
        Ok(Self { l, delta })
    }

    fn ramp_len(&self) -> f64 {
        THETA_MAX - 2.0 * self.delta
    }

    /// Breakpoints where the ramp changes formula, for piecewise quadrature.
    pub fn breakpoints(&self) -> [f64; 6] {
        let len = self.ramp_len();
        let d = self.delta;
        [0.0, d, d + SHOULDER * len, d + (1.0 - SHOULDER) * len, THETA_MAX - d, THETA_MAX]
    }

    /// Values and derivatives `(a, a')` at `theta`.
    pub fn eval(&self, theta: f64) -> ([f64; 3], [f64; 3]) {
        let len = self.ramp_len();
        let s = ((theta - self.delta) / len).clamp(0.0, 1.0);
        let (r, dr) = ramp(s);
        let dr = if theta <= self.delta || theta >= THETA_MAX - self.delta { 0.0 } else { dr / len };
        let l = self.l as f64;
        ([0.0, 3.0 * r, l * (1.0 - r)], [0.0, 3.0 * dr, -l * dr])
    }

    /// Peak slopes of the analytic profile.
    pub fn slope_report(&self) -> SlopeReport {
        let peak = 1.0 / ((1.0 - SHOULDER) * self.ramp_len());
        let max_a2 = 3.0 * peak;
        let min_a3 = -(self.l as f64) * peak;
        SlopeReport {
            max_a2_slope: max_a2,
            min_a3_slope: min_a3,
            caps_met: max_a2 <= 5.0 && min_a3 >= -5.0 * self.l as f64 / 3.0,
        }
    }
}

/// Ramp `S(s)` on `[0, 1]` and its derivative. The slope is
/// `M * smoothstep5(s / w)` on the first shoulder, `M` in the middle and
/// symmetric on the last shoulder, with `M = 1 / (1 - w)` so that `S(1) = 1`.
fn ramp(s: f64) -> (f64, f64) {
    let w = SHOULDER;
    let m = 1.0 / (1.0 - w);
    let left = |s: f64| {
        let v = s / w;
        let val = m * w * (v.powi(6) - 3.0 * v.powi(5) + 2.5 * v.powi(4));
        let slope = m * (6.0 * v.powi(5) - 15.0 * v.powi(4) + 10.0 * v.powi(3));
        (val, slope)
    };
    if s <= w {
        left(s)
    } else if s < 1.0 - w {
        (m * (0.5 * w + (s - w)), m)
    } else {
        let (v, d) = left(1.0 - s);
        (1.0 - v, d)
    }
}

/// Samples the test profile on the default cell-centre grid of `grid_size`
/// nodes.
pub fn build_test_profile(l: i64, delta: f64, grid_size: usize) -> Result<Profile> {
    if grid_size < 64 {
        return Err(Error::Parameter(format!("grid size {grid_size} below 64")));
    }
    let shape = TestProfileShape::new(l, delta)?;
    let theta = grid_nodes(grid_size);
    let h = THETA_MAX / grid_size as f64;
    if delta < 0.5 * h {
        return Err(Error::Parameter(format!("plateau width {delta} narrower than half a cell ({})", 0.5 * h)));
    }
    let mut a = [vec![0.0; grid_size], vec![0.0; grid_size], vec![0.0; grid_size]];
    for (j, t) in theta.iter().enumerate() {
        let (v, _) = shape.eval(*t);
        for i in 0..3 {
            a[i][j] = v[i];
        }
    }
    let [a1, a2, a3] = a;
    Profile::new(l, delta, a1, a2, a3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ramp_is_continuous_and_monotone() {
        let mut prev = 0.0;
        for k in 0..=10_000 {
            let s = k as f64 / 10_000.0;
            let (v, d) = ramp(s);
            assert!(v >= prev - 1e-15);
            assert!(d >= 0.0);
            prev = v;
        }
        assert_eq!(ramp(0.0).0, 0.0);
        assert!((ramp(1.0).0 - 1.0).abs() < 1e-15);
        for b in [SHOULDER, 1.0 - SHOULDER] {
            let (l, r) = (ramp(b - 1e-12), ramp(b + 1e-12));
            assert!((l.0 - r.0).abs() < 1e-10 && (l.1 - r.1).abs() < 1e-9);
        }
    }

    #[test]
    fn ramp_derivative_matches_difference_quotient() {
        for k in 1..100 {
            let s = k as f64 / 100.0;
            let e = 1e-6;
            let fd = (ramp(s + e).0 - ramp(s - e).0) / (2.0 * e);
            assert!((fd - ramp(s).1).abs() < 1e-7, "{s}");
        }
    }

    #[test]
    fn test_profile_end_values() {
        let p = build_test_profile(3, DEFAULT_DELTA, 256).unwrap();
        assert_eq!(p.node(0), [0.0, 0.0, 3.0]);
        assert_eq!(p.node(255), [0.0, 3.0, 0.0]);
        assert!(p.a(0).iter().all(|v| *v == 0.0));
        assert!(p.boundary_residual() < 1e-15);
        assert!(p.symmetry_residual() < 1e-15);
    }

    #[test]
    fn scaled_profile_respects_caps() {
        let shape = TestProfileShape::new(15, DEFAULT_DELTA).unwrap();
        let p = build_test_profile(15, DEFAULT_DELTA, 1024).unwrap();
        let max_a3 = p.a(2).iter().cloned().fold(f64::MIN, f64::max);
        assert_eq!(max_a3, 15.0);
        let rep = shape.slope_report();
        assert!(rep.caps_met);
        assert!(rep.min_a3_slope >= -25.0);
        let h = p.h();
        let worst = p.a(2).windows(2).map(|w| (w[1] - w[0]) / h).fold(0.0, f64::min);
        assert!(worst >= -25.0);
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(build_test_profile(3, 0.0, 256).is_err());
        assert!(build_test_profile(3, PI / 6.0, 256).is_err());
        assert!(build_test_profile(3, DEFAULT_DELTA, 32).is_err());
        assert!(build_test_profile(0, DEFAULT_DELTA, 256).is_err());
        assert!(build_test_profile(3, 1e-4, 256).is_err());
    }

    #[test]
    fn wide_plateau_misses_slope_cap() {
        let rep = TestProfileShape::new(3, PI / 12.0).unwrap().slope_report();
        assert!(!rep.caps_met);
        assert!(rep.max_a2_slope > 5.0);
    }

    #[test]
    fn text_round_trip() {
        let p = build_test_profile(7, DEFAULT_DELTA, 64).unwrap();
        let q = Profile::from_text(p.to_text().as_bytes()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn text_without_header_is_rejected() {
        assert!(Profile::from_text("0.1 0 0 0\n".as_bytes()).is_err());
    }
}
