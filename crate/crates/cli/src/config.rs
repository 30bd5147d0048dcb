//! Run and sweep configuration files.
//!
//! A configuration is TOML with the sections `[model]`, `[evolver]`,
//! `[run]` and, for sweeps, `[sweep]` with one `[[sweep.axis]]` table per
//! swept parameter:
//!
//! ```toml
//! [model]
//! epsilon = 0.002
//! g1 = 0.04
//! g2 = 0.04
//! x = 0.0            # or regime = "auto" / a regime id, never both
//!
//! [evolver]
//! dt = 0.01
//!
//! [run]
//! eps_t_final = 5.0  # or t_final
//! n_max = 320
//! initial = "gg0"
//! comparison = "both"
//! ```

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use dce_core::regimes::{resonance_catalog, Behavior, RegimeDescriptor, RegimeKind};
use dce_core::{BasisIndex, EvolverOptions, Level, ModelParams, StateVector};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{HarnessError, Result};

pub const DEFAULT_N_MAX: usize = 200;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Comparison {
    #[default]
    Numeric,
    Analytic,
    Both,
}

impl Comparison {
    pub fn numeric(self) -> bool {
        self != Comparison::Analytic
    }

    pub fn analytic(self) -> bool {
        self != Comparison::Numeric
    }
}

/// Initial basis state `|atom1, atom2, photons>`, written like `gg0` or `eg2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InitialState {
    pub atom1: Level,
    pub atom2: Level,
    pub photons: usize,
}

impl InitialState {
    pub const VACUUM: InitialState = InitialState {
        atom1: Level::Ground,
        atom2: Level::Ground,
        photons: 0,
    };

    pub fn state(&self, basis: BasisIndex) -> dce_core::Result<StateVector> {
        StateVector::basis_state(basis, self.atom1, self.atom2, self.photons)
    }
}

impl fmt::Display for InitialState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.atom1, self.atom2, self.photons)
    }
}

impl FromStr for InitialState {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            HarnessError::Config(format!(
                "initial state '{s}' should look like gg0: two atomic levels (g/e) then a photon number"
            ))
        };
        let s = s.trim();
        if !s.is_ascii() || s.len() < 3 {
            return Err(bad());
        }
        let level = |c: &str| c.parse::<Level>().map_err(|_| bad());
        Ok(InitialState {
            atom1: level(&s[0..1])?,
            atom2: level(&s[1..2])?,
            photons: s[2..].parse().map_err(|_| bad())?,
        })
    }
}

impl Serialize for InitialState {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for InitialState {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// How the resonance shift `x` was chosen.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RegimeSelection {
    /// `x` given directly.
    Explicit,
    /// Best catalogued resonance for the parameters.
    Auto,
    /// A named catalogue entry.
    Named(RegimeKind),
}

impl fmt::Display for RegimeSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegimeSelection::Explicit => f.write_str("explicit"),
            RegimeSelection::Auto => f.write_str("auto"),
            RegimeSelection::Named(k) => write!(f, "{k}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Duration {
    Time(f64),
    /// In units of `eps t`.
    EpsTime(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunSpec {
    /// Parameters with `x` already resolved.
    pub params: ModelParams,
    pub evolver: EvolverOptions,
    pub n_max: usize,
    pub initial: InitialState,
    pub duration: Duration,
    pub selection: RegimeSelection,
    pub output: Option<PathBuf>,
    pub comparison: Comparison,
}

impl RunSpec {
    pub fn t_final(&self) -> f64 {
        match self.duration {
            Duration::Time(t) => t,
            Duration::EpsTime(e) => e / self.params.epsilon.abs(),
        }
    }

    pub fn basis(&self) -> Result<BasisIndex> {
        Ok(BasisIndex::new(self.n_max)?)
    }

    /// Catalogue entry the run sits on, if any.
    pub fn catalog_regime(&self) -> Option<RegimeDescriptor> {
        let cat = resonance_catalog(&self.params);
        match self.selection {
            RegimeSelection::Named(kind) => cat.find(kind).cloned(),
            _ => cat.match_x(self.params.x, &self.params).cloned(),
        }
    }

    /// Same run with different model parameters; `x` is re-resolved unless
    /// it was given explicitly.
    pub fn with_params(&self, params: ModelParams) -> Result<RunSpec> {
        let mut spec = self.clone();
        spec.params = resolve_x(params, self.selection)?;
        spec.validate()?;
        Ok(spec)
    }

    /// Checks everything that does not depend on how the spec was built.
    pub fn validate(&self) -> Result<Vec<String>> {
        let warnings = self.params.validate()?;
        self.evolver.validate()?;
        let basis = self.basis()?;
        if self.initial.photons > basis.n_max() {
            return Err(HarnessError::Config(format!(
                "initial photon number {} exceeds n_max = {}",
                self.initial.photons, self.n_max
            )));
        }
        match self.duration {
            Duration::EpsTime(_) if self.params.epsilon == 0.0 => {
                return Err(HarnessError::Config(
                    "eps_t_final needs a nonzero epsilon; use t_final".into(),
                ))
            }
            Duration::Time(t) | Duration::EpsTime(t) if !(t > 0.0 && t.is_finite()) => {
                return Err(HarnessError::Config(format!(
                    "final time must be positive, got {t}"
                )))
            }
            _ => {}
        }
        Ok(warnings)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(&RawFile::from_run(self, None)).expect("run spec serializes")
    }
}

/// Values of one sweep axis, before scaling.
#[derive(Clone, Debug, PartialEq)]
pub enum AxisValues {
    List(Vec<f64>),
    /// `count` evenly spaced values from `start` to `stop` inclusive.
    Range {
        start: f64,
        stop: f64,
        count: usize,
    },
}

impl AxisValues {
    pub fn values(&self) -> Vec<f64> {
        match *self {
            AxisValues::List(ref v) => v.clone(),
            AxisValues::Range { start, stop, count } => {
                if count == 1 {
                    return vec![start];
                }
                (0..count)
                    .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
                    .collect()
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    #[default]
    Absolute,
    /// Values are multiples of `epsilon`.
    Epsilon,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    pub parameter: String,
    pub values: AxisValues,
    pub scale: Scale,
    /// Values are offsets from this parameter, e.g. `g2 = g1 + v`.
    pub relative_to: Option<String>,
}

impl Axis {
    /// Sets this axis' parameter in `params` to grid value `v`.
    pub fn apply(&self, params: &mut ModelParams, v: f64) -> Result<()> {
        let mut value = match self.scale {
            Scale::Absolute => v,
            Scale::Epsilon => v * params.epsilon,
        };
        if let Some(base) = &self.relative_to {
            value += params.get(base).expect("validated parameter name");
        }
        params.set(&self.parameter, value)?;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub base: RunSpec,
    pub axes: Vec<Axis>,
    /// Wall-clock budget in seconds.
    pub budget: Option<f64>,
    pub threads: Option<usize>,
}

impl SweepSpec {
    /// Grid points in row-major order, the last axis varying fastest.
    pub fn grid(&self) -> Vec<Vec<f64>> {
        let mut points = vec![Vec::new()];
        for axis in &self.axes {
            let vals = axis.values.values();
            points = points
                .into_iter()
                .flat_map(|p| {
                    vals.iter().map(move |v| {
                        let mut q = p.clone();
                        q.push(*v);
                        q
                    })
                })
                .collect();
        }
        points
    }

    pub fn point_params(&self, point: &[f64]) -> Result<ModelParams> {
        let mut p = self.base.params;
        for (axis, v) in self.axes.iter().zip(point) {
            axis.apply(&mut p, *v)?;
        }
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        if self.axes.is_empty() {
            return Err(HarnessError::Config(
                "[sweep] needs at least one [[sweep.axis]]".into(),
            ));
        }
        for axis in &self.axes {
            let known = |n: &str| ModelParams::FIELD_NAMES.contains(&n);
            if !known(&axis.parameter) {
                return Err(HarnessError::Config(format!(
                    "cannot sweep '{}': not a model parameter (expected one of {})",
                    axis.parameter,
                    ModelParams::FIELD_NAMES.join(", ")
                )));
            }
            if let Some(r) = &axis.relative_to {
                if !known(r) || *r == axis.parameter {
                    return Err(HarnessError::Config(format!(
                        "relative_to = '{r}' must name another model parameter"
                    )));
                }
            }
            if axis.scale == Scale::Epsilon && axis.parameter == "epsilon" {
                return Err(HarnessError::Config(
                    "epsilon cannot be swept in units of itself".into(),
                ));
            }
            if axis.parameter == "x" && self.base.selection != RegimeSelection::Explicit {
                return Err(HarnessError::Config(format!(
                    "sweeping x conflicts with regime = \"{}\"",
                    self.base.selection
                )));
            }
            let vals = axis.values.values();
            if vals.is_empty() {
                return Err(HarnessError::Config(format!(
                    "sweep over {} has an empty grid",
                    axis.parameter
                )));
            }
            if vals.iter().any(|v| !v.is_finite()) {
                return Err(HarnessError::Config(format!(
                    "sweep over {} has non-finite values",
                    axis.parameter
                )));
            }
        }
        if let Some(b) = self.budget {
            if !(b > 0.0) {
                return Err(HarnessError::Config(
                    "budget_seconds must be positive".into(),
                ));
            }
        }
        if self.threads == Some(0) {
            return Err(HarnessError::Config("threads must be positive".into()));
        }
        Ok(())
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(&RawFile::from_run(&self.base, Some(self))).expect("sweep spec serializes")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Config {
    Run(RunSpec),
    Sweep(SweepSpec),
}

impl Config {
    pub fn run_spec(&self) -> &RunSpec {
        match self {
            Config::Run(r) => r,
            Config::Sweep(s) => &s.base,
        }
    }

    pub fn run_spec_mut(&mut self) -> &mut RunSpec {
        match self {
            Config::Run(r) => r,
            Config::Sweep(s) => &mut s.base,
        }
    }

    pub fn to_toml(&self) -> String {
        match self {
            Config::Run(r) => r.to_toml(),
            Config::Sweep(s) => s.to_toml(),
        }
    }
}

/// A parsed configuration plus the non-fatal remarks made while reading it.
#[derive(Clone, Debug)]
pub struct Parsed {
    pub config: Config,
    pub warnings: Vec<String>,
}

// ---- file layout -------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    model: RawModel,
    #[serde(default)]
    evolver: EvolverOptions,
    #[serde(default)]
    run: RawRun,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sweep: Option<RawSweep>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    epsilon: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    x: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    regime: Option<String>,
    #[serde(default)]
    g1: f64,
    #[serde(default)]
    g2: f64,
    #[serde(default)]
    delta1: f64,
    #[serde(default)]
    delta2: f64,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRun {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    t_final: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eps_t_final: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    initial: Option<InitialState>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    output: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    comparison: Option<Comparison>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    budget_seconds: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    threads: Option<usize>,
    #[serde(default)]
    axis: Vec<RawAxis>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAxis {
    parameter: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    start: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    stop: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    count: Option<usize>,
    #[serde(default)]
    scale: Scale,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    relative_to: Option<String>,
}

const KNOWN_KEYS: &[(&str, &[&str])] = &[
    ("", &["model", "evolver", "run", "sweep"]),
    (
        "model",
        &["epsilon", "x", "regime", "g1", "g2", "delta1", "delta2"],
    ),
    (
        "evolver",
        &[
            "dt",
            "sample_stride",
            "modulation",
            "photon_term",
            "integrator",
            "norm_tol",
            "tail_abort",
            "abort_on_tail",
            "store_states",
        ],
    ),
    ("evolver.integrator", &["kind", "rtol", "atol"]),
    (
        "run",
        &[
            "t_final",
            "eps_t_final",
            "n_max",
            "initial",
            "output",
            "comparison",
        ],
    ),
    ("sweep", &["budget_seconds", "threads", "axis"]),
    (
        "sweep.axis",
        &[
            "parameter",
            "values",
            "start",
            "stop",
            "count",
            "scale",
            "relative_to",
        ],
    ),
];

impl RawFile {
    fn from_run(spec: &RunSpec, sweep: Option<&SweepSpec>) -> RawFile {
        let p = &spec.params;
        let (x, regime) = match spec.selection {
            RegimeSelection::Explicit => (Some(p.x), None),
            other => (None, Some(other.to_string())),
        };
        let (t_final, eps_t_final) = match spec.duration {
            Duration::Time(t) => (Some(t), None),
            Duration::EpsTime(e) => (None, Some(e)),
        };
        RawFile {
            model: RawModel {
                epsilon: p.epsilon,
                x,
                regime,
                g1: p.g1,
                g2: p.g2,
                delta1: p.delta1,
                delta2: p.delta2,
            },
            evolver: spec.evolver,
            run: RawRun {
                t_final,
                eps_t_final,
                n_max: Some(spec.n_max),
                initial: Some(spec.initial),
                output: spec.output.clone(),
                comparison: Some(spec.comparison),
            },
            sweep: sweep.map(|s| RawSweep {
                budget_seconds: s.budget,
                threads: s.threads,
                axis: s
                    .axes
                    .iter()
                    .map(|a| {
                        let (values, start, stop, count) = match a.values {
                            AxisValues::List(ref v) => (Some(v.clone()), None, None, None),
                            AxisValues::Range { start, stop, count } => {
                                (None, Some(start), Some(stop), Some(count))
                            }
                        };
                        RawAxis {
                            parameter: a.parameter.clone(),
                            values,
                            start,
                            stop,
                            count,
                            scale: a.scale,
                            relative_to: a.relative_to.clone(),
                        }
                    })
                    .collect(),
            }),
        }
    }
}

/// Fills in `x` for catalogue-driven selections.
fn resolve_x(params: ModelParams, selection: RegimeSelection) -> Result<ModelParams> {
    match selection {
        RegimeSelection::Explicit => Ok(params),
        RegimeSelection::Auto => Ok(params.with_x(auto_regime(&params)?.x)),
        RegimeSelection::Named(kind) => {
            let cat = resonance_catalog(&params);
            if let Some(e) = cat.find(kind) {
                return Ok(params.with_x(e.x));
            }
            let why = cat
                .omitted
                .iter()
                .find(|o| o.regime == kind.to_string() || kind.to_string().starts_with(&o.regime))
                .map(|o| o.reason.clone())
                .unwrap_or_else(|| "not available for these parameters".into());
            Err(HarnessError::Config(format!(
                "regime {kind} is not catalogued: {why}"
            )))
        }
    }
}

/// Catalogue entry chosen by `regime = "auto"`: best validity verdict, then
/// multiphoton over atomic-only over two-photon behaviour, then catalogue order.
pub fn auto_regime(params: &ModelParams) -> Result<RegimeDescriptor> {
    let rank = |b: Behavior| match b {
        Behavior::Multiphoton => 0,
        Behavior::AtomicExcitationsOnly => 1,
        Behavior::AtMostTwoPhotons => 2,
    };
    resonance_catalog(params)
        .entries
        .into_iter()
        .enumerate()
        .min_by_key(|(i, e)| (e.verdict(), rank(e.behavior), *i))
        .map(|(_, e)| e)
        .ok_or_else(|| {
            HarnessError::Config(
                "regime = \"auto\" but no resonance is catalogued for these parameters".into(),
            )
        })
}

fn build(raw: RawFile) -> Result<(Config, Vec<String>)> {
    let m = raw.model;
    let selection = match (m.regime.as_deref().map(str::trim), m.x) {
        (Some(_), Some(_)) => {
            return Err(HarnessError::Config(
                "x is given both explicitly and through regime; drop one of them".into(),
            ))
        }
        (None, Some(_)) => RegimeSelection::Explicit,
        (None, None) => RegimeSelection::Auto,
        (Some(r), None) if r.eq_ignore_ascii_case("auto") => RegimeSelection::Auto,
        (Some(r), None) => RegimeSelection::Named(r.parse()?),
    };
    let params = ModelParams {
        epsilon: m.epsilon,
        x: m.x.unwrap_or(0.0),
        g1: m.g1,
        g2: m.g2,
        delta1: m.delta1,
        delta2: m.delta2,
    };
    params.validate()?;
    let params = resolve_x(params, selection)?;

    let duration = match (raw.run.t_final, raw.run.eps_t_final) {
        (Some(_), Some(_)) => {
            return Err(HarnessError::Config(
                "t_final and eps_t_final are mutually exclusive".into(),
            ))
        }
        (Some(t), None) => Duration::Time(t),
        (None, Some(e)) => Duration::EpsTime(e),
        (None, None) => {
            return Err(HarnessError::Config(
                "[run] needs t_final or eps_t_final".into(),
            ))
        }
    };

    let mut spec = RunSpec {
        params,
        evolver: raw.evolver,
        n_max: raw.run.n_max.unwrap_or(DEFAULT_N_MAX),
        initial: InitialState::VACUUM,
        duration,
        selection,
        output: raw.run.output,
        comparison: raw.run.comparison.unwrap_or_default(),
    };
    spec.initial = match raw.run.initial {
        Some(i) => i,
        None => spec
            .catalog_regime()
            .map(|e| {
                let (a1, a2) = e.kind.initial_levels();
                InitialState {
                    atom1: a1,
                    atom2: a2,
                    photons: 0,
                }
            })
            .unwrap_or(InitialState::VACUUM),
    };
    let warnings = spec.validate()?;

    let config = match raw.sweep {
        None => Config::Run(spec),
        Some(s) => {
            let axes = s
                .axis
                .into_iter()
                .map(|a| {
                    let values = match (a.values, a.start, a.stop, a.count) {
                        (Some(v), None, None, None) => AxisValues::List(v),
                        (None, Some(start), Some(stop), Some(count)) => {
                            AxisValues::Range { start, stop, count }
                        }
                        _ => {
                            return Err(HarnessError::Config(format!(
                                "axis '{}' needs either values or start, stop and count",
                                a.parameter
                            )))
                        }
                    };
                    Ok(Axis {
                        parameter: a.parameter,
                        values,
                        scale: a.scale,
                        relative_to: a.relative_to,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let sweep = SweepSpec {
                base: spec,
                axes,
                budget: s.budget_seconds,
                threads: s.threads,
            };
            sweep.validate()?;
            Config::Sweep(sweep)
        }
    };
    Ok((config, warnings))
}

/// 1-based line of `key` inside table `section` (dotted, "" for the root).
fn key_line(src: &str, section: &str, key: &str) -> Option<usize> {
    let mut current = String::new();
    for (i, line) in src.lines().enumerate() {
        let t = line.trim();
        if let Some(h) = t.strip_prefix("[[").and_then(|r| r.split("]]").next()) {
            current = h.trim().to_string();
            if section.is_empty() && current.split('.').next() == Some(key) {
                return Some(i + 1);
            }
            continue;
        }
        if let Some(h) = t.strip_prefix('[').and_then(|r| r.split(']').next()) {
            current = h.trim().to_string();
            let full = if section.is_empty() {
                key.to_string()
            } else {
                format!("{section}.{key}")
            };
            if current == full || (section.is_empty() && current.split('.').next() == Some(key)) {
                return Some(i + 1);
            }
            continue;
        }
        if current == section {
            if let Some((k, _)) = t.split_once('=') {
                if k.trim().trim_matches('"') == key {
                    return Some(i + 1);
                }
            }
        }
    }
    None
}

/// Unknown keys as `(section, key)`, removed from `table`.
fn strip_unknown(table: &mut toml::Table, section: &str, found: &mut Vec<(String, String)>) {
    let known = KNOWN_KEYS
        .iter()
        .find(|(s, _)| *s == section)
        .map(|(_, k)| *k);
    let Some(known) = known else { return };
    let unknown: Vec<String> = table
        .keys()
        .filter(|k| !known.contains(&k.as_str()))
        .cloned()
        .collect();
    for k in unknown {
        table.remove(&k);
        found.push((section.to_string(), k));
    }
    for (k, v) in table.iter_mut() {
        let sub = if section.is_empty() {
            k.clone()
        } else {
            format!("{section}.{k}")
        };
        match v {
            toml::Value::Table(t) => strip_unknown(t, &sub, found),
            toml::Value::Array(items) => {
                for item in items {
                    if let toml::Value::Table(t) = item {
                        strip_unknown(t, &sub, found);
                    }
                }
            }
            _ => {}
        }
    }
}

fn parse_raw(src: &str, origin: &str, strict: bool) -> Result<(RawFile, Vec<String>)> {
    let parse_err = |message: String| HarnessError::Parse {
        path: origin.to_string(),
        message,
    };
    if src.trim().is_empty() {
        return Err(parse_err("configuration is empty".into()));
    }
    let mut table: toml::Table = toml::from_str(src).map_err(|e| parse_err(e.to_string()))?;
    let mut unknown = Vec::new();
    strip_unknown(&mut table, "", &mut unknown);
    let describe = |(section, key): &(String, String)| {
        let place = if section.is_empty() {
            "at top level".to_string()
        } else {
            format!("in [{section}]")
        };
        match key_line(src, section, key) {
            Some(line) => format!("unknown key '{key}' {place} at line {line}"),
            None => format!("unknown key '{key}' {place}"),
        }
    };
    if strict && !unknown.is_empty() {
        let msgs: Vec<String> = unknown.iter().map(describe).collect();
        return Err(parse_err(msgs.join("; ")));
    }
    let warnings: Vec<String> = unknown
        .iter()
        .map(|u| format!("{} (ignored)", describe(u)))
        .collect();
    // Deserializing from the text keeps line numbers in type errors.
    let raw: RawFile = if unknown.is_empty() {
        toml::from_str(src)
    } else {
        toml::Value::Table(table).try_into()
    }
    .map_err(|e| parse_err(e.to_string()))?;
    Ok((raw, warnings))
}

/// Parses configuration text. `origin` names the source in messages.
///
/// Unknown keys are errors in strict mode and warnings otherwise.
pub fn parse_config_str(src: &str, origin: &str, strict: bool) -> Result<Parsed> {
    let (raw, mut warnings) = parse_raw(src, origin, strict)?;
    let (config, mut w) = build(raw)?;
    warnings.append(&mut w);
    Ok(Parsed { config, warnings })
}

/// Reads only the `[model]` section; `x` defaults to zero. The rest of the
/// file may be incomplete.
pub fn parse_model_str(
    src: &str,
    origin: &str,
    strict: bool,
) -> Result<(ModelParams, Vec<String>)> {
    let (raw, warnings) = parse_raw(src, origin, strict)?;
    let m = raw.model;
    let params = ModelParams {
        epsilon: m.epsilon,
        x: m.x.unwrap_or(0.0),
        g1: m.g1,
        g2: m.g2,
        delta1: m.delta1,
        delta2: m.delta2,
    };
    params.validate()?;
    Ok((params, warnings))
}

pub fn parse_model(path: &Path, strict: bool) -> Result<(ModelParams, Vec<String>)> {
    let src = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    parse_model_str(&src, &path.display().to_string(), strict)
}

pub fn parse_config(path: &Path, strict: bool) -> Result<Parsed> {
    let src = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    parse_config_str(&src, &path.display().to_string(), strict)
}
