//! Single runs: numerical evolution, closed forms, and their comparison.

use std::fmt::Write as _;
use std::path::Path;

use dce_core::evolver::sample_times;
use dce_core::observables::{ObservableRecord, Verdict};
use dce_core::regimes::{analytic_series, AnalyticRecord, Assessed, RegimeDescriptor};
use dce_core::{evolve, Trajectory};

use crate::config::RunSpec;
use crate::error::{ExitStatus, HarnessError, Result};

/// Numeric columns in output order.
pub const NUMERIC_COLUMNS: [&str; 12] = [
    "t",
    "eps_t",
    "mean_n",
    "P_e1",
    "P_e2",
    "P_e1e2",
    "P_g1e2",
    "var_Xp",
    "var_Xm",
    "norm_err",
    "parity_leak",
    "trunc_tail",
];

/// Quantities with closed-form counterparts, as `analytic_<name>` columns.
pub const ANALYTIC_COLUMNS: [&str; 7] = [
    "mean_n", "P_e1", "P_e2", "P_e1e2", "P_g1e2", "var_Xp", "var_Xm",
];

/// Only samples with more photons than this enter the deviation summary.
pub const DEVIATION_MIN_PHOTONS: f64 = 0.1;

pub(crate) fn fmt_float(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else {
        format!("{v:.12e}")
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "nan".into(), fmt_float)
}

pub(crate) fn numeric_values(r: &ObservableRecord) -> [f64; 12] {
    [
        r.time,
        r.eps_t,
        r.mean_n,
        r.p_e1,
        r.p_e2,
        r.p_e1e2,
        r.p_g1e2,
        r.var_x_plus,
        r.var_x_minus,
        r.norm_error,
        r.parity_leakage,
        r.truncation_tail,
    ]
}

fn analytic_values(r: &AnalyticRecord) -> [Option<f64>; 7] {
    [
        r.mean_n,
        r.p_e1,
        r.p_e2,
        r.p_e1e2,
        r.p_g1e2,
        r.var_x_plus,
        r.var_x_minus,
    ]
}

fn numeric_for_analytic(r: &ObservableRecord) -> [f64; 7] {
    [
        r.mean_n,
        r.p_e1,
        r.p_e2,
        r.p_e1e2,
        r.p_g1e2,
        r.var_x_plus,
        r.var_x_minus,
    ]
}

/// Largest `|analytic - numeric| / |numeric|` per quantity.
#[derive(Clone, Debug, PartialEq)]
pub struct DeviationSummary {
    /// Samples with `mean_n` above [`DEVIATION_MIN_PHOTONS`].
    pub samples: usize,
    /// `(column, max relative deviation)` for every quantity both sides provide.
    pub max_rel: Vec<(&'static str, f64)>,
}

impl DeviationSummary {
    pub fn compute(numeric: &[ObservableRecord], analytic: &[AnalyticRecord]) -> Self {
        let mut samples = 0;
        let mut max_rel: Vec<(&'static str, Option<f64>)> =
            ANALYTIC_COLUMNS.iter().map(|c| (*c, None)).collect();
        for (n, a) in numeric.iter().zip(analytic) {
            if !(n.mean_n > DEVIATION_MIN_PHOTONS) {
                continue;
            }
            samples += 1;
            for ((_, slot), (nv, av)) in max_rel
                .iter_mut()
                .zip(numeric_for_analytic(n).into_iter().zip(analytic_values(a)))
            {
                let Some(av) = av else { continue };
                let dev = if nv == av {
                    0.0
                } else {
                    (av - nv).abs() / nv.abs()
                };
                *slot = Some(slot.map_or(dev, |s: f64| s.max(dev)));
            }
        }
        DeviationSummary {
            samples,
            max_rel: max_rel
                .into_iter()
                .filter_map(|(c, v)| v.map(|v| (c, v)))
                .collect(),
        }
    }

    pub fn get(&self, column: &str) -> Option<f64> {
        self.max_rel
            .iter()
            .find(|(c, _)| *c == column)
            .map(|(_, v)| *v)
    }

    pub fn line(&self) -> String {
        if self.samples == 0 {
            return format!("max_rel_dev: no samples with mean_n > {DEVIATION_MIN_PHOTONS}");
        }
        let mut s = format!(
            "max_rel_dev over {} samples with mean_n > {DEVIATION_MIN_PHOTONS}:",
            self.samples
        );
        for (c, v) in &self.max_rel {
            write!(s, " {c}={v:.3e}").unwrap();
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub spec: RunSpec,
    pub regime: Option<RegimeDescriptor>,
    pub trajectory: Option<Trajectory>,
    pub analytic: Option<Assessed<Vec<AnalyticRecord>>>,
    pub deviation: Option<DeviationSummary>,
    /// Why the closed forms are missing when they were asked for.
    pub analytic_error: Option<String>,
    pub warnings: Vec<String>,
    pub status: ExitStatus,
}

/// Runs `spec`. Evolver aborts come back as errors.
pub fn run(spec: &RunSpec) -> Result<RunReport> {
    let mut warnings = spec.validate()?;
    let t_final = spec.t_final();
    let regime = spec.catalog_regime();
    let mut status = ExitStatus::Pass;
    if !warnings.is_empty() {
        status = ExitStatus::PhysicsWarning;
    }

    let trajectory = if spec.comparison.numeric() {
        let basis = spec.basis()?;
        let psi0 = spec.initial.state(basis)?;
        Some(evolve(&psi0, &spec.params, t_final, &spec.evolver)?)
    } else {
        None
    };
    let times: Vec<f64> = match &trajectory {
        Some(tr) => tr.times().collect(),
        None => sample_times(&spec.params, t_final, &spec.evolver),
    };

    let mut analytic = None;
    let mut analytic_error = None;
    if spec.comparison.analytic() {
        match &regime {
            None => {
                analytic_error = Some(format!("no catalogued resonance at x = {}", spec.params.x))
            }
            Some(r) => {
                let (a1, a2) = r.kind.initial_levels();
                if (spec.initial.atom1, spec.initial.atom2, spec.initial.photons) != (a1, a2, 0) {
                    analytic_error = Some(format!(
                        "closed forms for {} assume the initial state {}{}0, run starts in {}",
                        r.kind, a1, a2, spec.initial
                    ));
                } else {
                    match analytic_series(r.kind, &spec.params, &times, spec.n_max) {
                        Ok(a) => analytic = Some(a),
                        Err(e) => analytic_error = Some(e.to_string()),
                    }
                }
            }
        }
    }
    if let Some(e) = &analytic_error {
        warnings.push(format!("analytic comparison unavailable: {e}"));
        status = status.max(ExitStatus::PhysicsWarning);
    }
    let validity = match (&analytic, &regime) {
        (Some(a), _) => Some((a.verdict(), &a.checks)),
        (None, Some(r)) if spec.comparison.analytic() => Some((r.verdict(), &r.checks)),
        _ => None,
    };
    if let Some((verdict, checks)) = validity {
        if verdict != Verdict::Pass {
            status = status.max(ExitStatus::PhysicsWarning);
            for c in checks.iter().filter(|c| c.verdict != Verdict::Pass) {
                warnings.push(format!("validity: {c}"));
            }
        }
    }

    let deviation = match (&trajectory, &analytic) {
        (Some(tr), Some(a)) => Some(DeviationSummary::compute(&tr.records, &a.value)),
        _ => None,
    };
    if let Some(tr) = &trajectory {
        match tr.verdict() {
            Verdict::Fail => {
                status = status.max(ExitStatus::NumericalFailure);
                warnings.push("numerical health check failed".into());
            }
            Verdict::Warn => warnings.push(format!(
                "truncation tail reached {:.2e}; consider a larger n_max",
                tr.records
                    .iter()
                    .map(|r| r.truncation_tail)
                    .fold(0.0, f64::max)
            )),
            Verdict::Pass => {}
        }
    }

    Ok(RunReport {
        spec: spec.clone(),
        regime,
        trajectory,
        analytic,
        deviation,
        analytic_error,
        warnings,
        status,
    })
}

/// Header block recording the library version and the full configuration.
pub(crate) fn header(config_toml: &str) -> String {
    let mut s = format!(
        "# dce {} (dce-core {})\n",
        env!("CARGO_PKG_VERSION"),
        dce_core::VERSION
    );
    for line in config_toml.lines().filter(|l| !l.trim().is_empty()) {
        writeln!(s, "# {line}").unwrap();
    }
    s
}

impl RunReport {
    pub fn records(&self) -> Option<&[ObservableRecord]> {
        self.trajectory.as_ref().map(|t| t.records.as_slice())
    }

    pub fn to_csv(&self) -> String {
        let mut out = header(&self.spec.to_toml());
        if let Some(r) = &self.regime {
            writeln!(
                out,
                "# regime {} at x = {:.12e} ({})",
                r.kind,
                r.x,
                r.verdict()
            )
            .unwrap();
        }
        let numeric = self.records();
        let analytic = self.analytic.as_ref().map(|a| a.value.as_slice());
        let with_analytic = self.spec.comparison.analytic();

        let mut cols: Vec<String> = if numeric.is_some() {
            NUMERIC_COLUMNS.iter().map(|c| c.to_string()).collect()
        } else {
            vec!["t".into(), "eps_t".into()]
        };
        if with_analytic {
            cols.extend(ANALYTIC_COLUMNS.iter().map(|c| format!("analytic_{c}")));
        }
        writeln!(out, "{}", cols.join(",")).unwrap();

        let times: Vec<f64> = match (numeric, analytic) {
            (Some(n), _) => n.iter().map(|r| r.time).collect(),
            (None, Some(a)) => a.iter().map(|r| r.time).collect(),
            (None, None) => Vec::new(),
        };
        for (i, &t) in times.iter().enumerate() {
            let mut row: Vec<String> = match numeric {
                Some(n) => numeric_values(&n[i]).into_iter().map(fmt_float).collect(),
                None => vec![fmt_float(t), fmt_float(t * self.spec.params.epsilon)],
            };
            if with_analytic {
                match analytic {
                    Some(a) => row.extend(analytic_values(&a[i]).into_iter().map(fmt_opt)),
                    None => row.extend(std::iter::repeat_n(
                        "nan".to_string(),
                        ANALYTIC_COLUMNS.len(),
                    )),
                }
            }
            writeln!(out, "{}", row.join(",")).unwrap();
        }
        if self.spec.comparison.numeric() && with_analytic {
            match (&self.deviation, &self.analytic_error) {
                (Some(d), _) => writeln!(out, "# {}", d.line()).unwrap(),
                (None, Some(e)) => writeln!(out, "# max_rel_dev: unavailable ({e})").unwrap(),
                (None, None) => writeln!(out, "# max_rel_dev: unavailable").unwrap(),
            }
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv()).map_err(|e| HarnessError::io(path, e))
    }

    /// Human-readable summary for the terminal.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        let p = &self.spec.params;
        writeln!(
            s,
            "epsilon = {}, x = {:.6e}, g1 = {}, g2 = {}, Delta1 = {}, Delta2 = {}; t_final = {} (eps t = {})",
            p.epsilon,
            p.x,
            p.g1,
            p.g2,
            p.delta1,
            p.delta2,
            self.spec.t_final(),
            self.spec.t_final() * p.epsilon
        )
        .unwrap();
        match &self.regime {
            Some(r) => writeln!(s, "regime: {} ({}, {})", r.kind, r.behavior, r.verdict()).unwrap(),
            None => writeln!(s, "regime: none catalogued at this x").unwrap(),
        }
        if let Some(tr) = &self.trajectory {
            let last = tr.last();
            writeln!(
                s,
                "final: mean_n = {:.6e}, P_e1 = {:.6e}, P_e2 = {:.6e}, P_e1e2 = {:.6e}",
                last.mean_n, last.p_e1, last.p_e2, last.p_e1e2
            )
            .unwrap();
        }
        if let Some(d) = &self.deviation {
            writeln!(s, "{}", d.line()).unwrap();
        }
        for w in &self.warnings {
            writeln!(s, "warning: {w}").unwrap();
        }
        s
    }
}
