//! Numerical integration of the full time-dependent Schrödinger equation.

mod hamiltonian;
mod integrator;

pub use hamiltonian::{
    cavity_frequency, hamiltonian_at, interaction_hamiltonian, squeeze_coefficient, Modulation,
    PhotonTerm, RotatingGenerator,
};
pub use integrator::{integrate, rk4_step, Generator, Integrator, Workspace};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::observables::{self, ObservableRecord, Parity, Verdict, TAIL_FAIL};
use crate::operators::OperatorSet;
use crate::params::ModelParams;
use crate::state::{Frame, StateVector};

/// Largest allowed step. The fastest frequency scale of the problem is about 2.
pub const MAX_DT: f64 = 0.05;
pub const DEFAULT_DT: f64 = 0.01;
/// Default sampling interval in units of `eps t`.
pub const DEFAULT_SAMPLE_EPS_T: f64 = 0.01;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvolverOptions {
    pub dt: f64,
    /// Record every `k` steps. `None` picks `k` so that samples are
    /// [`DEFAULT_SAMPLE_EPS_T`] apart in `eps t` (or 100 samples when `eps = 0`).
    pub sample_stride: Option<usize>,
    pub modulation: Modulation,
    pub photon_term: PhotonTerm,
    pub integrator: Integrator,
    pub norm_tol: f64,
    /// Abort when the Fock tail weight exceeds this.
    pub tail_abort: f64,
    pub abort_on_tail: bool,
    pub store_states: bool,
}

impl Default for EvolverOptions {
    fn default() -> Self {
        Self {
            dt: DEFAULT_DT,
            sample_stride: None,
            modulation: Modulation::Exact,
            photon_term: PhotonTerm::TimeDependent,
            integrator: Integrator::Rk4,
            norm_tol: 1e-8,
            tail_abort: TAIL_FAIL,
            abort_on_tail: true,
            store_states: false,
        }
    }
}

impl EvolverOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt <= MAX_DT) {
            return Err(Error::InvalidParameter(format!(
                "dt = {} outside (0, {MAX_DT}]",
                self.dt
            )));
        }
        if self.sample_stride == Some(0) {
            return Err(Error::InvalidParameter(
                "sample stride must be positive".into(),
            ));
        }
        if !(self.norm_tol > 0.0) {
            return Err(Error::InvalidParameter(
                "norm tolerance must be positive".into(),
            ));
        }
        if let Integrator::Adaptive { rtol, atol } = self.integrator {
            if !(rtol > 0.0 && atol > 0.0) {
                return Err(Error::InvalidParameter(
                    "adaptive tolerances must be positive".into(),
                ));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub params: ModelParams,
    pub options: EvolverOptions,
    /// One record per sample, starting at `t = 0`.
    pub records: Vec<ObservableRecord>,
    /// Lab-frame states at the sample times, when requested.
    pub states: Vec<StateVector>,
    pub final_state: StateVector,
    pub parity: Parity,
}

impl Trajectory {
    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.records.iter().map(|r| r.time)
    }

    pub fn last(&self) -> &ObservableRecord {
        self.records
            .last()
            .expect("trajectory has at least one sample")
    }

    /// Worst health verdict over all samples.
    pub fn verdict(&self) -> Verdict {
        self.records
            .iter()
            .map(|r| r.health().verdict(self.options.norm_tol))
            .max()
            .unwrap_or(Verdict::Pass)
    }

    /// Record closest to the given time.
    pub fn at_time(&self, t: f64) -> &ObservableRecord {
        self.records
            .iter()
            .min_by(|a, b| (a.time - t).abs().total_cmp(&(b.time - t).abs()))
            .expect("trajectory has at least one sample")
    }
}

fn sample_stride(params: &ModelParams, t_final: f64, h: f64, options: &EvolverOptions) -> usize {
    if let Some(k) = options.sample_stride {
        return k;
    }
    let interval = if params.epsilon != 0.0 {
        DEFAULT_SAMPLE_EPS_T / params.epsilon.abs()
    } else {
        t_final / 100.0
    };
    ((interval / h).round() as usize).max(1)
}

/// Sample times [`evolve`] records at for these options.
pub fn sample_times(params: &ModelParams, t_final: f64, options: &EvolverOptions) -> Vec<f64> {
    let steps = (t_final / options.dt).ceil().max(1.0) as usize;
    let h = t_final / steps as f64;
    let stride = sample_stride(params, t_final, h, options);
    let mut out: Vec<f64> = (0..steps).step_by(stride).map(|k| k as f64 * h).collect();
    out.push(steps as f64 * h);
    out
}

/// Evolves a lab-frame state from `t = 0` to `t_final`.
pub fn evolve(
    state0: &StateVector,
    params: &ModelParams,
    t_final: f64,
    options: &EvolverOptions,
) -> Result<Trajectory> {
    options.validate()?;
    state0.expect_frame(Frame::Lab)?;
    if !(t_final > 0.0) || !t_final.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "t_final must be positive, got {t_final}"
        )));
    }
    if (state0.norm_sqr() - 1.0).abs() > options.norm_tol {
        return Err(Error::Precondition(
            "initial state is not normalized".into(),
        ));
    }
    let basis = state0.basis();
    let ops = OperatorSet::new(basis);
    let gen = RotatingGenerator::new(*params, &ops, options.modulation, options.photon_term);
    let parity = observables::dominant_parity(state0);

    let steps = (t_final / options.dt).ceil().max(1.0) as usize;
    let h = t_final / steps as f64;
    let stride = sample_stride(params, t_final, h, options);

    // At t = 0 the lab and rotating frames coincide.
    let mut psi = state0.amplitudes().to_vec();
    let mut ws = Workspace::new(psi.len());
    let mut records = Vec::with_capacity(steps / stride + 2);
    let mut states = Vec::new();

    let mut sample = |k: usize,
                      psi: &[num_complex::Complex64],
                      records: &mut Vec<ObservableRecord>|
     -> Result<()> {
        let t = k as f64 * h;
        let st = StateVector::from_amplitudes(basis, psi.to_vec(), Frame::Interaction)?;
        let rec = observables::record_interaction(&st, t, params.epsilon, &ops, parity);
        if rec.norm_error > 10.0 * options.norm_tol {
            return Err(Error::NormDrift {
                t,
                drift: rec.norm_error,
                tol: options.norm_tol,
            });
        }
        if options.abort_on_tail && rec.truncation_tail > options.tail_abort {
            return Err(Error::TruncationTail {
                t,
                tail: rec.truncation_tail,
                limit: options.tail_abort,
                n_max: basis.n_max(),
            });
        }
        if options.store_states {
            states.push(st.to_lab_frame(t, params)?);
        }
        records.push(rec);
        Ok(())
    };

    sample(0, &psi, &mut records)?;
    let mut k = 0;
    while k < steps {
        let next = (k + stride).min(steps);
        match options.integrator {
            Integrator::Rk4 => {
                for j in k..next {
                    rk4_step(&gen, j as f64 * h, h, &mut psi, &mut ws);
                }
            }
            adaptive => integrate(
                &gen,
                adaptive,
                k as f64 * h,
                next as f64 * h,
                options.dt,
                &mut psi,
                &mut ws,
            )?,
        }
        k = next;
        sample(k, &psi, &mut records)?;
    }

    let final_state = StateVector::from_amplitudes(basis, psi, Frame::Interaction)?
        .to_lab_frame(t_final, params)?;
    Ok(Trajectory {
        params: *params,
        options: *options,
        records,
        states,
        final_state,
        parity,
    })
}

/// Propagates a lab-frame state from `t0` to `t1` without sampling.
/// `t1 < t0` integrates backwards.
pub fn propagate(
    state: &StateVector,
    params: &ModelParams,
    t0: f64,
    t1: f64,
    options: &EvolverOptions,
) -> Result<StateVector> {
    options.validate()?;
    let ops = OperatorSet::new(state.basis());
    let gen = RotatingGenerator::new(*params, &ops, options.modulation, options.photon_term);
    let inter = state.to_interaction_frame(t0, params)?;
    let mut psi = inter.into_amplitudes();
    let mut ws = Workspace::new(psi.len());
    integrate(
        &gen,
        options.integrator,
        t0,
        t1,
        options.dt,
        &mut psi,
        &mut ws,
    )?;
    StateVector::from_amplitudes(state.basis(), psi, Frame::Interaction)?.to_lab_frame(t1, params)
}
