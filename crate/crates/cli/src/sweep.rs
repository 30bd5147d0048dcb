//! Parameter sweeps: one run per grid point, reduced to final-time observables.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use dce_core::observables::ObservableRecord;
use rayon::prelude::*;

use crate::config::{Comparison, SweepSpec};
use crate::error::{ExitStatus, HarnessError, Result};
use crate::run::{fmt_float, header, numeric_values, run, NUMERIC_COLUMNS};

#[derive(Clone, Debug, PartialEq)]
pub enum PointOutcome {
    Done {
        last: ObservableRecord,
        status: ExitStatus,
    },
    Failed {
        message: String,
        status: ExitStatus,
    },
    /// Not started because the budget ran out.
    Skipped,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepPoint {
    /// Grid values as written in the configuration, one per axis.
    pub grid: Vec<f64>,
    /// Resulting values of the swept parameters.
    pub values: Vec<f64>,
    pub outcome: PointOutcome,
}

impl SweepPoint {
    pub fn last(&self) -> Option<&ObservableRecord> {
        match &self.outcome {
            PointOutcome::Done { last, .. } => Some(last),
            _ => None,
        }
    }

    fn status_label(&self) -> &'static str {
        match &self.outcome {
            PointOutcome::Done { status, .. } => match status {
                ExitStatus::Pass => "pass",
                ExitStatus::PhysicsWarning => "warn",
                _ => "fail",
            },
            PointOutcome::Failed { .. } => "error",
            PointOutcome::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepReport {
    pub spec: SweepSpec,
    pub points: Vec<SweepPoint>,
    pub warnings: Vec<String>,
    pub status: ExitStatus,
}

fn run_point(spec: &SweepSpec, grid: &[f64]) -> SweepPoint {
    let params = spec.point_params(grid);
    let values: Vec<f64> = match &params {
        Ok(p) => spec
            .axes
            .iter()
            .map(|a| p.get(&a.parameter).unwrap_or(f64::NAN))
            .collect(),
        Err(_) => vec![f64::NAN; spec.axes.len()],
    };
    let outcome = params
        .and_then(|p| spec.base.with_params(p))
        .and_then(|mut point| {
            point.comparison = Comparison::Numeric;
            point.output = None;
            run(&point)
        });
    let outcome = match outcome {
        Ok(report) => PointOutcome::Done {
            last: *report.trajectory.as_ref().expect("numeric run").last(),
            status: report.status,
        },
        Err(e) => PointOutcome::Failed {
            status: ExitStatus::from_code(e.exit_code()),
            message: e.to_string(),
        },
    };
    SweepPoint {
        grid: grid.to_vec(),
        values,
        outcome,
    }
}

/// Runs every grid point on a worker pool. Rows come back in grid order
/// regardless of scheduling. Points not started within the budget are
/// reported as skipped.
pub fn sweep(spec: &SweepSpec) -> Result<SweepReport> {
    let grid = spec.grid();
    let start = Instant::now();
    let budget = spec.budget;
    let work = || -> Vec<SweepPoint> {
        grid.par_iter()
            .map(|g| {
                if budget.is_some_and(|b| start.elapsed().as_secs_f64() > b) {
                    return SweepPoint {
                        grid: g.clone(),
                        values: vec![f64::NAN; g.len()],
                        outcome: PointOutcome::Skipped,
                    };
                }
                run_point(spec, g)
            })
            .collect()
    };
    let points = match spec.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| HarnessError::Config(format!("cannot start {n} worker threads: {e}")))?
            .install(work),
        None => work(),
    };

    let mut warnings = Vec::new();
    let mut status = ExitStatus::Pass;
    let skipped = points
        .iter()
        .filter(|p| p.outcome == PointOutcome::Skipped)
        .count();
    if skipped > 0 {
        warnings.push(format!(
            "time budget of {} s exceeded; {skipped} of {} points skipped",
            budget.unwrap_or(0.0),
            points.len()
        ));
        status = ExitStatus::PhysicsWarning;
    }
    for p in &points {
        match &p.outcome {
            PointOutcome::Done { status: s, .. } => status = status.max(*s),
            PointOutcome::Failed { message, status: s } => {
                warnings.push(format!("point {:?}: {message}", p.grid));
                status = status.max(*s);
            }
            PointOutcome::Skipped => {}
        }
    }
    Ok(SweepReport {
        spec: spec.clone(),
        points,
        warnings,
        status,
    })
}

impl SweepReport {
    pub fn to_csv(&self) -> String {
        let mut out = header(&self.spec.to_toml());
        let mut cols = vec!["index".to_string()];
        cols.extend(self.spec.axes.iter().map(|a| a.parameter.clone()));
        cols.push("status".into());
        cols.extend(NUMERIC_COLUMNS.iter().map(|c| c.to_string()));
        writeln!(out, "{}", cols.join(",")).unwrap();
        for (i, p) in self.points.iter().enumerate() {
            let mut row = vec![i.to_string()];
            row.extend(p.values.iter().map(|v| fmt_float(*v)));
            row.push(p.status_label().into());
            match p.last() {
                Some(r) => row.extend(numeric_values(r).into_iter().map(fmt_float)),
                None => row.extend(std::iter::repeat_n(
                    "nan".to_string(),
                    NUMERIC_COLUMNS.len(),
                )),
            }
            writeln!(out, "{}", row.join(",")).unwrap();
        }
        for w in &self.warnings {
            writeln!(out, "# warning: {w}").unwrap();
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv()).map_err(|e| HarnessError::io(path, e))
    }
}

impl ExitStatus {
    pub(crate) fn from_code(code: i32) -> Self {
        match code {
            0 => ExitStatus::Pass,
            2 => ExitStatus::PhysicsWarning,
            3 => ExitStatus::NumericalFailure,
            _ => ExitStatus::Usage,
        }
    }
}
