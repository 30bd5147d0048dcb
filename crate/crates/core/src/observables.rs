//! Measurable quantities and numerical health diagnostics.

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::basis::{BasisIndex, Level};
use crate::error::Result;
use crate::operators::OperatorSet;
use crate::params::ModelParams;
use crate::state::StateVector;

/// Truncation tail window: the top 10% of Fock levels.
pub const TAIL_FRACTION: f64 = 0.1;
pub const TAIL_WARN: f64 = 1e-6;
pub const TAIL_FAIL: f64 = 1e-3;

/// Ordered verdict, `Pass < Warn < Fail`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Verdict {
    Pass,
    Warn,
    Fail,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Warn => "warn",
            Verdict::Fail => "fail",
        })
    }
}

/// Parity of the total excitation number `m + #excited atoms`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn of(n: usize) -> Self {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Observables at one instant.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ObservableRecord {
    pub time: f64,
    pub eps_t: f64,
    pub mean_n: f64,
    pub p_e1: f64,
    pub p_e2: f64,
    pub p_e1e2: f64,
    pub p_g1e2: f64,
    pub p_g1: f64,
    pub var_x_plus: f64,
    pub var_x_minus: f64,
    pub norm_error: f64,
    pub parity_leakage: f64,
    pub truncation_tail: f64,
}

impl ObservableRecord {
    pub fn health(&self) -> Health {
        Health {
            norm_error: self.norm_error,
            parity_leakage: self.parity_leakage,
            truncation_tail: self.truncation_tail,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExcitationProbabilities {
    pub p_e1: f64,
    pub p_e2: f64,
    /// Both atoms excited.
    pub p_e1e2: f64,
    /// Atom 1 ground, atom 2 excited.
    pub p_g1e2: f64,
    /// Atom 1 excited, atom 2 ground.
    pub p_e1g2: f64,
    /// Both atoms in the ground state.
    pub p_g1g2: f64,
    pub p_g1: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadratures {
    pub var_plus: f64,
    pub var_minus: f64,
    /// Set when the truncation tail exceeds [`TAIL_WARN`]; the variances
    /// are the most truncation-sensitive quantity.
    pub tail_warning: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Health {
    pub norm_error: f64,
    pub parity_leakage: f64,
    pub truncation_tail: f64,
}

impl Health {
    pub fn verdict(&self, norm_tol: f64) -> Verdict {
        if self.truncation_tail > TAIL_FAIL || self.norm_error > 10.0 * norm_tol {
            Verdict::Fail
        } else if self.truncation_tail > TAIL_WARN
            || self.norm_error > norm_tol
            || self.parity_leakage > norm_tol
        {
            Verdict::Warn
        } else {
            Verdict::Pass
        }
    }
}

fn block_weights(state: &StateVector) -> [f64; 4] {
    let basis = state.basis();
    let nf = basis.fock_dim();
    let amps = state.amplitudes();
    let mut w = [0.0; 4];
    for (k, wk) in w.iter_mut().enumerate() {
        *wk = amps[k * nf..(k + 1) * nf]
            .iter()
            .map(|z| z.norm_sqr())
            .sum();
    }
    w
}

/// `<n> = sum_m m (|a_m|^2 + |b_m|^2 + |c_m|^2 + |d_m|^2)`.
pub fn mean_photon(state: &StateVector) -> f64 {
    let nf = state.basis().fock_dim();
    state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, z)| (i % nf) as f64 * z.norm_sqr())
        .sum()
}

/// Probability of the Fock level `m`, summed over atomic states.
pub fn photon_probability(state: &StateVector, m: usize) -> f64 {
    BasisIndex::atomic_blocks()
        .iter()
        .map(|&(s1, s2)| state.amplitude(s1, s2, m).norm_sqr())
        .sum()
}

pub fn excitation_probabilities(state: &StateVector) -> ExcitationProbabilities {
    let [gg, ge, eg, ee] = block_weights(state);
    ExcitationProbabilities {
        p_e1: eg + ee,
        p_e2: ge + ee,
        p_e1e2: ee,
        p_g1e2: ge,
        p_e1g2: eg,
        p_g1g2: gg,
        p_g1: gg + ge,
    }
}

/// Variances of `X+ = (a + a†)/sqrt 2` and `X- = (a - a†)/(sqrt 2 i)`,
/// evaluated with the truncated operator matrices.
pub fn quadrature_variances(state: &StateVector, ops: &OperatorSet) -> Quadratures {
    let psi = state.amplitudes();
    let variance = |x: &crate::sparse::CsrMatrix| {
        let xpsi = x.apply(psi);
        let mean: C64 = psi.iter().zip(&xpsi).map(|(a, b)| a.conj() * b).sum();
        let second: f64 = xpsi.iter().map(|z| z.norm_sqr()).sum();
        second - mean.re * mean.re
    };
    Quadratures {
        var_plus: variance(&ops.x_plus),
        var_minus: variance(&ops.x_minus),
        tail_warning: truncation_tail(state) > TAIL_WARN,
    }
}

/// Number of Fock levels in the tail window.
pub fn tail_levels(basis: BasisIndex) -> usize {
    ((TAIL_FRACTION * basis.fock_dim() as f64).ceil() as usize).max(1)
}

/// Weight in the top 10% of Fock levels.
pub fn truncation_tail(state: &StateVector) -> f64 {
    let basis = state.basis();
    let nf = basis.fock_dim();
    let first = nf - tail_levels(basis);
    state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(i, _)| i % nf >= first)
        .map(|(_, z)| z.norm_sqr())
        .sum()
}

/// The parity sector holding most of the weight.
pub fn dominant_parity(state: &StateVector) -> Parity {
    let basis = state.basis();
    let even: f64 = state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(i, _)| basis.label(*i).excitation_number() % 2 == 0)
        .map(|(_, z)| z.norm_sqr())
        .sum();
    if 2.0 * even >= state.norm_sqr() {
        Parity::Even
    } else {
        Parity::Odd
    }
}

pub fn health_diagnostics(state: &StateVector, reference: Parity) -> Health {
    let basis = state.basis();
    let parity_leakage = state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(i, _)| Parity::of(basis.label(*i).excitation_number()) != reference)
        .map(|(_, z)| z.norm_sqr())
        .sum();
    Health {
        norm_error: (state.norm_sqr() - 1.0).abs(),
        parity_leakage,
        truncation_tail: truncation_tail(state),
    }
}

/// Full record for a lab-frame state at time `t`. Quadratures are taken in
/// the interaction frame, where the squeezing axes are stationary.
pub fn record(
    state: &StateVector,
    t: f64,
    params: &ModelParams,
    ops: &OperatorSet,
    reference: Parity,
) -> Result<ObservableRecord> {
    let inter = state.to_interaction_frame(t, params)?;
    Ok(record_interaction(
        &inter,
        t,
        params.epsilon,
        ops,
        reference,
    ))
}

/// Record for a state already in the interaction frame.
pub fn record_interaction(
    state: &StateVector,
    t: f64,
    epsilon: f64,
    ops: &OperatorSet,
    reference: Parity,
) -> ObservableRecord {
    let p = excitation_probabilities(state);
    let q = quadrature_variances(state, ops);
    let h = health_diagnostics(state, reference);
    ObservableRecord {
        time: t,
        eps_t: epsilon * t,
        mean_n: mean_photon(state),
        p_e1: p.p_e1,
        p_e2: p.p_e2,
        p_e1e2: p.p_e1e2,
        p_g1e2: p.p_g1e2,
        p_g1: p.p_g1,
        var_x_plus: q.var_plus,
        var_x_minus: q.var_minus,
        norm_error: h.norm_error,
        parity_leakage: h.parity_leakage,
        truncation_tail: h.truncation_tail,
    }
}

/// Probability that atom 1 is in `level`.
pub fn atom1_probability(state: &StateVector, level: Level) -> f64 {
    let p = excitation_probabilities(state);
    match level {
        Level::Ground => p.p_g1,
        Level::Excited => p.p_e1,
    }
}
