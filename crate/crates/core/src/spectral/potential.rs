//! Radial functions on the round `S^4` and the shifted potential `V + eps`.

use std::f64::consts::PI;
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::quadrature::GaussLegendre;
use crate::{Error, Result};

/// Panels used when integrating an analytic radial function over `[0, pi]`.
const ANALYTIC_PANELS: usize = 256;
const PANEL_ORDER: usize = 8;

/// A nonnegative function of the polar angle `theta` in `[0, pi]`.
///
/// Bumps centred at a pole are functions of `theta^2` there and hence smooth
/// on the sphere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RadialFunction {
    Constant {
        value: f64,
    },
    /// `floor + amplitude * exp(-(theta - center)^2 / (2 width^2))`.
    GaussianBump {
        amplitude: f64,
        width: f64,
        #[serde(default)]
        center: f64,
        #[serde(default)]
        floor: f64,
    },
    /// Two Gaussian bumps centred at the poles.
    DoubleBump {
        amplitude: f64,
        width: f64,
        #[serde(default)]
        floor: f64,
    },
    /// Linear interpolation of samples on an increasing grid spanning `[0, pi]`.
    Samples { theta: Vec<f64>, values: Vec<f64> },
}

fn gaussian(x: f64, w: f64) -> f64 {
    (-x * x / (2.0 * w * w)).exp()
}

impl RadialFunction {
    pub fn constant(value: f64) -> Self {
        Self::Constant { value }
    }

    pub fn validate(&self) -> Result<()> {
        let finite_nonneg = |name: &str, v: f64| {
            if v.is_finite() && v >= 0.0 {
                Ok(())
            } else {
                Err(Error::Parameter(format!("{name} = {v} must be finite and nonnegative")))
            }
        };
        match self {
            Self::Constant { value } => finite_nonneg("value", *value),
            Self::GaussianBump { amplitude, width, center, floor } => {
                finite_nonneg("amplitude", *amplitude)?;
                finite_nonneg("floor", *floor)?;
                if !(*width > 0.0 && width.is_finite()) {
                    return Err(Error::Parameter(format!("width = {width} must be positive")));
                }
                if !(0.0..=PI).contains(center) {
                    return Err(Error::Parameter(format!("center = {center} outside [0, pi]")));
                }
                Ok(())
            }
            Self::DoubleBump { amplitude, width, floor } => {
                finite_nonneg("amplitude", *amplitude)?;
                finite_nonneg("floor", *floor)?;
                if !(*width > 0.0 && width.is_finite()) {
                    return Err(Error::Parameter(format!("width = {width} must be positive")));
                }
                Ok(())
            }
            Self::Samples { theta, values } => {
                if theta.len() < 2 || theta.len() != values.len() {
                    return Err(Error::Dimension(format!(
                        "{} angles and {} values; need at least two matching samples",
                        theta.len(),
                        values.len()
                    )));
                }
                if theta.windows(2).any(|w| !(w[1] > w[0])) {
                    return Err(Error::Parameter("sample angles must be strictly increasing".into()));
                }
                let tol = 1e-9;
                if theta[0].abs() > tol || (theta[theta.len() - 1] - PI).abs() > tol {
                    return Err(Error::Parameter(format!(
                        "samples span [{}, {}], expected [0, pi]",
                        theta[0],
                        theta[theta.len() - 1]
                    )));
                }
                for v in values {
                    finite_nonneg("sample value", *v)?;
                }
                Ok(())
            }
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Self::Constant { value } => *value,
            Self::GaussianBump { amplitude, width, center, floor } => floor + amplitude * gaussian(t - center, *width),
            Self::DoubleBump { amplitude, width, floor } => {
                floor + amplitude * (gaussian(t, *width) + gaussian(PI - t, *width))
            }
            Self::Samples { theta, values } => {
                let k = theta.partition_point(|x| *x <= t).clamp(1, theta.len() - 1);
                let (t0, t1) = (theta[k - 1], theta[k]);
                let s = ((t - t0) / (t1 - t0)).clamp(0.0, 1.0);
                values[k - 1] + s * (values[k] - values[k - 1])
            }
        }
    }

    /// The supremum over `[0, pi]`.
    pub fn sup(&self) -> f64 {
        match self {
            Self::Constant { value } => *value,
            Self::GaussianBump { amplitude, floor, .. } => floor + amplitude,
            Self::DoubleBump { amplitude, width, floor } => floor + amplitude * (1.0 + gaussian(PI, *width)),
            Self::Samples { values, .. } => values.iter().copied().fold(0.0, f64::max),
        }
    }

    fn panels(&self) -> Vec<f64> {
        match self {
            Self::Samples { theta, .. } => theta.clone(),
            _ => (0..=ANALYTIC_PANELS).map(|k| PI * k as f64 / ANALYTIC_PANELS as f64).collect(),
        }
    }

    /// `int_{S^4} g(f) dV = 2 pi^2 int_0^pi g(f(theta)) sin^3 theta dtheta`.
    pub fn integrate_over_sphere(&self, g: impl Fn(f64) -> f64) -> f64 {
        let rule = GaussLegendre::new(PANEL_ORDER);
        let br = self.panels();
        let s: f64 = br.windows(2).map(|w| rule.integrate(w[0], w[1], |t| g(self.eval(t)) * t.sin().powi(3))).sum();
        2.0 * PI * PI * s
    }

    /// `||f||^2` in `L^2` of the unit `S^4`.
    pub fn l2_norm_sq(&self) -> f64 {
        self.integrate_over_sphere(|v| v * v)
    }

    /// Reads whitespace or comma separated `theta value` rows. Lines starting
    /// with `#` are skipped.
    pub fn from_text(reader: impl BufRead) -> Result<Self> {
        let mut theta = Vec::new();
        let mut values = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
            if cols.len() != 2 {
                return Err(Error::Parse(format!("line {}: expected two columns, found {}", i + 1, cols.len())));
            }
            let parse = |s: &str| s.parse::<f64>().map_err(|e| Error::Parse(format!("line {}: {s}: {e}", i + 1)));
            theta.push(parse(cols[0])?);
            values.push(parse(cols[1])?);
        }
        let f = Self::Samples { theta, values };
        f.validate()?;
        Ok(f)
    }
}

/// A nonnegative radial potential `V` with the positivity shift `eps`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialPotential {
    pub v: RadialFunction,
    pub epsilon: f64,
}

impl RadialPotential {
    /// Uses the default shift `1e-6 * max(1, sup V)`.
    pub fn new(v: RadialFunction) -> Result<Self> {
        v.validate()?;
        let epsilon = 1e-6 * v.sup().max(1.0);
        Ok(Self { v, epsilon })
    }

    pub fn with_epsilon(v: RadialFunction, epsilon: f64) -> Result<Self> {
        v.validate()?;
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::Parameter(format!("epsilon = {epsilon} must be positive")));
        }
        Ok(Self { v, epsilon })
    }

    /// `V_eps(theta) = V(theta) + eps`.
    pub fn eval_eps(&self, t: f64) -> f64 {
        self.v.eval(t) + self.epsilon
    }

    pub fn sup_eps(&self) -> f64 {
        self.v.sup() + self.epsilon
    }

    /// `||V||^2` over the unit `S^4`.
    pub fn l2_norm_sq(&self) -> f64 {
        self.v.l2_norm_sq()
    }

    /// `||V_eps||^2` over the unit `S^4`.
    pub fn l2_norm_sq_eps(&self) -> f64 {
        let eps = self.epsilon;
        self.v.integrate_over_sphere(|v| (v + eps) * (v + eps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::VOLUME_S4;

    #[test]
    fn constant_norm_is_volume_times_square() {
        let f = RadialFunction::constant(3.0);
        assert!((f.l2_norm_sq() - 9.0 * VOLUME_S4).abs() < 1e-12 * VOLUME_S4);
    }

    #[test]
    fn samples_interpolate_linearly() {
        let f = RadialFunction::Samples { theta: vec![0.0, PI / 2.0, PI], values: vec![0.0, 2.0, 0.0] };
        f.validate().unwrap();
        assert!((f.eval(PI / 4.0) - 1.0).abs() < 1e-15);
        assert_eq!(f.eval(PI), 0.0);
        assert_eq!(f.sup(), 2.0);
    }

    #[test]
    fn text_ingest_round_trip() {
        let text = "# theta V\n0 1\n1.0, 2\n3.141592653589793 1\n";
        let f = RadialFunction::from_text(text.as_bytes()).unwrap();
        assert!((f.eval(0.5) - 1.5).abs() < 1e-15);
        assert!(RadialFunction::from_text("0 1 2\n".as_bytes()).is_err());
        assert!(RadialFunction::from_text("0 1\n1 -1\n3.141592653589793 0\n".as_bytes()).is_err());
    }

    #[test]
    fn default_shift_scales_with_sup() {
        let p = RadialPotential::new(RadialFunction::constant(16.0)).unwrap();
        assert!((p.epsilon - 1.6e-5).abs() < 1e-20);
        let q = RadialPotential::new(RadialFunction::constant(0.0)).unwrap();
        assert_eq!(q.epsilon, 1e-6);
    }

    #[test]
    fn presets_deserialize_by_name() {
        let f: RadialFunction = serde_json::from_str(r#"{"preset":"gaussian-bump","amplitude":20,"width":0.4}"#).unwrap();
        assert_eq!(f, RadialFunction::GaussianBump { amplitude: 20.0, width: 0.4, center: 0.0, floor: 0.0 });
        assert!(serde_json::from_str::<RadialFunction>(r#"{"preset":"constant","value":1,"bogus":2}"#).is_err());
    }

    #[test]
    fn bump_norm_matches_fine_quadrature() {
        let f = RadialFunction::GaussianBump { amplitude: 5.0, width: 0.3, center: 0.0, floor: 0.5 };
        let fine = 2.0 * PI * PI * crate::quadrature::composite_gauss(0.0, PI, 4000, 4, |t| f.eval(t).powi(2) * t.sin().powi(3));
        assert!((f.l2_norm_sq() - fine).abs() < 1e-11 * fine);
    }
}
