//! Executes one configured command and collects its report.

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};
use ymlab_core::invariants::{self, GeometryRecord};
use ymlab_core::lieforms::{estimate_gamma0, estimate_gamma1, run_suite, LieAlgebra, SuiteConfig, GAMMA1_MAX};
use ymlab_core::quadrupole::{
    self, build_test_profile, energy_with, growth_report, minimize_energy, report::GrowthOptions, Profile,
};
use ymlab_core::spectral::{
    birman_schwinger_compare, clr_bound, count_nonpositive, heat_trace, write_heat_csv, GaugeProblem, RadialFunction, RadialPotential,
};

use crate::config::{CommandName, RunConfig};
use crate::CliError;

/// One declared property of a run.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Property {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Property {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Self { name: name.into(), passed, detail }
    }
}

/// The structured result of a run.
#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub result: Value,
    pub properties: Vec<Property>,
    pub warnings: Vec<String>,
    /// Tabular form of the result, when the command has one.
    #[serde(skip)]
    pub csv: Option<String>,
}

impl Outcome {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed)
    }
}

fn to_value<T: Serialize>(v: &T) -> Result<Value, CliError> {
    Ok(serde_json::to_value(v)?)
}

fn csv_string(write: impl FnOnce(&mut Vec<u8>) -> ymlab_core::Result<()>) -> Result<String, CliError> {
    let mut buf = Vec::new();
    write(&mut buf)?;
    String::from_utf8(buf).map_err(|e| CliError::Config(e.to_string()))
}

/// Runs the configured command. Warnings become a failing `strict` property
/// when `cfg.strict` is set.
pub fn dispatch(cfg: &RunConfig) -> Result<Outcome, CliError> {
    if cfg.command.is_randomized() && cfg.seed.is_none() {
        return Err(CliError::Config(format!("command {} needs a seed", cfg.command.as_str())));
    }
    let mut out = Outcome {
        command: cfg.command.as_str().into(),
        seed: cfg.seed,
        result: Value::Null,
        properties: Vec::new(),
        warnings: Vec::new(),
        csv: None,
    };
    match cfg.command {
        CommandName::LiealgVerify => liealg_verify(cfg, &mut out)?,
        CommandName::QuadrupoleEnergy => quadrupole_energy(cfg, &mut out)?,
        CommandName::QuadrupoleMinimize => quadrupole_minimize(cfg, &mut out)?,
        CommandName::QuadrupoleReport => quadrupole_report(cfg, &mut out)?,
        CommandName::SpectralCount => spectral_count(cfg, &mut out)?,
        CommandName::SpectralHeatTrace => spectral_heat_trace(cfg, &mut out)?,
        CommandName::SpectralBsCompare => spectral_bs_compare(cfg, &mut out)?,
        CommandName::SpectralFindT0 => spectral_find_t0(cfg, &mut out)?,
        CommandName::BoundsReport => bounds_report(cfg, &mut out)?,
    }
    if cfg.strict && !out.warnings.is_empty() {
        let n = out.warnings.len();
        out.properties.push(Property::new("strict", false, format!("{n} warning(s) escalated by --strict")));
    }
    Ok(out)
}

fn liealg_verify(cfg: &RunConfig, out: &mut Outcome) -> Result<(), CliError> {
    let p = &cfg.liealg;
    let seed = cfg.seed.expect("seed checked by dispatch");
    let alg = LieAlgebra::fixture(&p.algebra)?;
    let gamma0 = estimate_gamma0(&alg, p.gamma_starts, p.gamma_steps, seed)?;
    let gamma1 = estimate_gamma1(&alg, p.gamma_starts, p.gamma_steps, seed)?;
    let suite_gamma0 = if gamma0 > 0.0 { gamma0 } else { std::f64::consts::SQRT_2 };
    let report = run_suite(&alg, &SuiteConfig { n: p.n, samples: p.samples, seed, gamma0: suite_gamma0 })?;
    for c in &report.checks {
        let rel = if c.upper { "<=" } else { ">=" };
        out.properties.push(Property::new(&c.name, c.passed, format!("worst {:.3e} {rel} {:.1e}", c.worst, c.threshold)));
    }
    out.properties.push(Property::new(
        "gamma0_at_most_sqrt2",
        gamma0 <= std::f64::consts::SQRT_2 + 1e-9,
        format!("gamma0 = {gamma0:.15}"),
    ));
    out.properties.push(Property::new(
        "gamma1_at_most_4sqrt3_over_3",
        gamma1 <= GAMMA1_MAX + 1e-9,
        format!("gamma1 = {gamma1:.15}"),
    ));
    out.result = json!({ "gamma0": gamma0, "gamma1": gamma1, "suite": to_value(&report)? });
    Ok(())
}

fn load_profile(path: &Path) -> Result<Profile, CliError> {
    Ok(Profile::from_text(BufReader::new(File::open(path)?))?)
}

fn start_profile(cfg: &RunConfig) -> Result<Profile, CliError> {
    let q = &cfg.quadrupole;
    match &q.profile {
        Some(path) => load_profile(path),
        None => Ok(build_test_profile(q.l, q.delta, q.grid)?),
    }
}

fn bundle_json(l: i64) -> Result<Value, CliError> {
    let kappa = quadrupole::charge(l, 3)?;
    Ok(json!({ "n_plus": l, "n_minus": 3, "kappa": kappa, "taubes": quadrupole::taubes_lower_bound(kappa) }))
}

fn quadrupole_energy(cfg: &RunConfig, out: &mut Outcome) -> Result<(), CliError> {
    let p = start_profile(cfg)?;
    let e = energy_with(&p, cfg.quadrupole.energy_form)?;
    let terms: serde_json::Map<String, Value> =
        quadrupole::energy::TERM_NAMES.iter().zip(e.terms).map(|(n, v)| (n.to_string(), json!(v))).collect();
    out.result = json!({
        "bundle": bundle_json(p.l())?,
        "grid": p.len(),
        "delta": p.delta(),
        "form": e.form,
        "energy": e.total,
        "terms": terms,
    });
    Ok(())
}

fn quadrupole_minimize(cfg: &RunConfig, out: &mut Outcome) -> Result<(), CliError> {
    let q = &cfg.quadrupole;
    let p0 = start_profile(cfg)?;
    let (p, rep) = minimize_energy(&p0, q.max_iters, q.tol)?;
    let monotone = rep.is_descending();
    let (s0, s1) = (p0.symmetry_residual(), p.symmetry_residual());
    out.properties.push(Property::new("converged", rep.converged, format!("gradient norm {:.3e} < {:.1e}", rep.grad_norm, q.tol)));
    out.properties.push(Property::new("monotone_descent", monotone, format!("{} accepted steps", rep.energies.len() - 1)));
    out.properties.push(Property::new(
        "symmetry_preserved",
        s1 <= (10.0 * s0).max(1e-10),
        format!("residual {s1:.3e} from {s0:.3e}"),
    ));
    if let Some(path) = &q.profile_out {
        std::fs::write(path, p.to_text())?;
    }
    out.result = json!({
        "bundle": bundle_json(p.l())?,
        "grid": p.len(),
        "energy_start": rep.energies.first(),
        "energy_final": rep.energies.last(),
        "descent": to_value(&rep)?,
    });
    Ok(())
}

fn quadrupole_report(cfg: &RunConfig, out: &mut Outcome) -> Result<(), CliError> {
    let q = &cfg.quadrupole;
    let rep = growth_report(&q.l_list, q.grid, GrowthOptions { delta: q.delta, max_iters: q.max_iters, tol: q.tol })?;
    out.properties.push(Property::new("slope_at_most_2.05", rep.slope_test <= 2.05, format!("slope {:.6}", rep.slope_test)));
    out.properties.push(Property::new(
        "taubes_ratio_positive",
        rep.min_taubes_ratio > 0.0,
        format!("min taubes / energy {:.6e}", rep.min_taubes_ratio),
    ));
    let worst = rep.rows.iter().map(|r| r.min_grad_norm).fold(0.0, f64::max);
    out.properties.push(Property::new("minimizers_converged", worst < q.tol, format!("worst gradient norm {worst:.3e}")));
    out.csv = Some(csv_string(|b| rep.write_csv(b))?);
    out.result = to_value(&rep)?;
    Ok(())
}

fn potential(cfg: &RunConfig) -> Result<RadialPotential, CliError> {
    let s = &cfg.spectral;
    let f = match (&s.potential_file, &s.potential) {
        (Some(path), _) => RadialFunction::from_text(BufReader::new(File::open(path)?))?,
        (None, Some(f)) => f.clone(),
        (None, None) => return Err(CliError::Config("spectral commands need a potential preset or file".into())),
    };
    Ok(match s.epsilon {
        Some(eps) => RadialPotential::with_epsilon(f, eps)?,
        None => RadialPotential::new(f)?,
    })
}

fn spectral_count(cfg: &RunConfig, out: &mut Outcome) -> Result<(), CliError> {
    let s = &cfg.spectral;
    let pot = potential(cfg)?;
    let res = count_nonpositive(&pot, s.grid)?;
    let bound = clr_bound(&pot, s.rank)?;
    out.properties.push(Property::new("clr_bound_dominates", bound >= res.n0 as f64, format!("N0 = {} <= {bound:.6}", res.n0)));
    out.properties.push(Property::new(
        "certificate_positive",
        res.certificate.margin > 0.0,
        format!("sectors l >= {} positive with margin {:.6}", res.certificate.first_positive_sector, res.certificate.margin),
    ));
    if !res.epsilon_stable() {
        out.warnings.push(format!("N0 = {} at epsilon but {} at 10 epsilon", res.n0, res.n0_10eps));
    }
    out.csv = Some(csv_string(|b| res.write_csv(b))?);
    out.result = json!({
        "potential": to_value(&pot)?,
        "n0": res.n0,
        "n0_10eps": res.n0_10eps,
        "clr_bound": bound,
        "rank": s.rank,
        "l2_norm_sq": pot.l2_norm_sq(),
        "spectrum": to_value(&res)?,
    });
    Ok(())
}

fn spectral_heat_trace(cfg: &RunConfig, out: &mut Outcome) -> Result<(), CliError> {
    let s = &cfg.spectral;
    let pot = potential(cfg)?;
    let mut rows = Vec::new();
    for &t in &s.t {
        let h = heat_trace(&pot, t, s.grid)?;
        out.properties.push(Property::new(
            &format!("heat_bound_t={t}"),
            h.bound_holds,
            format!("t^2 (h + tail) = {:.6} <= {:.6}, tail/partial = {:.2e}", h.scaled, h.bound, h.tail / h.partial),
        ));
        rows.push(h);
    }
    out.csv = Some(csv_string(|b| write_heat_csv(&rows, b))?);
    out.result = json!({ "potential": to_value(&pot)?, "rows": to_value(&rows)? });
    Ok(())
}

fn spectral_bs_compare(cfg: &RunConfig, out: &mut Outcome) -> Result<(), CliError> {
    let pot = potential(cfg)?;
    let bs = birman_schwinger_compare(&pot, cfg.spectral.grid)?;
    out.properties.push(Property::new(
        "birman_schwinger",
        bs.holds,
        format!("N0 = {} <= #{{mu <= 1}} = {}", bs.n0, bs.weighted_at_most_one),
    ));
    out.result = json!({ "potential": to_value(&pot)?, "comparison": to_value(&bs)? });
    Ok(())
}

fn spectral_find_t0(cfg: &RunConfig, out: &mut Outcome) -> Result<(), CliError> {
    let s = &cfg.spectral;
    let g = &s.gauge;
    let prob = GaugeProblem::new(g.weyl.clone(), g.curvature.clone(), g.gamma1, s.grid)?;
    let root = prob.find_t0()?;
    let n = g.t_points.max(2);
    let lambdas = (0..n)
        .map(|k| prob.lambda1(k as f64 / (n - 1) as f64))
        .collect::<ymlab_core::Result<Vec<_>>>()?;
    let monotone = lambdas.windows(2).all(|w| w[1].lambda1 <= w[0].lambda1 + 1e-9 * (1.0 + w[0].lambda1.abs()));
    out.properties.push(Property::new("lambda1_nonincreasing", monotone, format!("{n} values of t in [0, 1]")));
    if root.saturated && !root.bound_holds {
        out.warnings.push(format!(
            "lambda_1(L^1) = {:.6e} >= 0, which a non-instanton Yang-Mills connection cannot produce; \
             the lower bound {:.12} on t0 does not apply",
            root.lambda_at_t0, root.lower_bound
        ));
    } else {
        out.properties.push(Property::new(
            "t0_lower_bound",
            root.bound_holds,
            format!("{:.12} <= t0 = {:.12} <= 1", root.lower_bound, root.t0),
        ));
    }
    out.result = json!({ "problem": to_value(&prob)?, "root": to_value(&root)?, "lambda1": to_value(&lambdas)? });
    Ok(())
}

fn bounds_report(cfg: &RunConfig, out: &mut Outcome) -> Result<(), CliError> {
    let b = &cfg.bounds;
    let record = match &b.record_file {
        Some(path) => GeometryRecord::from_json(&std::fs::read_to_string(path)?)?,
        None => invariants::lookup(&b.record)
            .ok_or_else(|| CliError::Config(format!("unknown catalog record {:?}", b.record)))?,
    };
    let ym = b.int_f2.map(|f2| (f2, b.int_wf, b.dim));
    let reports = invariants::bounds_report(&record, ym, b.allow_external)?;
    let check = invariants::corollary_check(b.dim);
    out.properties.push(Property::new(
        "corollary_constant_term",
        check.constant_agrees,
        format!("{:.12} vs {:.12}", check.constant_direct, check.constant_corollary),
    ));
    if check.discrepancy && record.name().eq_ignore_ascii_case("S4") {
        out.warnings.push(check.message());
    }
    for r in &reports {
        for w in &r.warnings {
            if !out.warnings.contains(w) {
                out.warnings.push(w.clone());
            }
        }
    }
    out.result = json!({
        "record": to_value(&record)?,
        "rho": to_value(&invariants::rho_invariants(&record, b.allow_external)?)?,
        "bounds": to_value(&reports)?,
        "corollary_check": to_value(&check)?,
    });
    Ok(())
}
