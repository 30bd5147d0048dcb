//! Closed-form observables for any catalogued regime, sampled on a time grid.

use super::catalog::RegimeKind;
use super::dispersive::{dispersive_observables, double_excitation_probability};
use super::effective::{effective_series, Transform};
use super::flow::{equal_coupling_flow_at, reconstruct_state_from_flow, FlowVariant};
use super::mixed::{double_weak_checks, mixed_regime_observables};
use super::record::AnalyticRecord;
use super::second_atom::second_atom_dispersive_amplitudes;
use super::two_photon::two_photon_amplitudes;
use super::validity::{Assessed, Check, Margin};
use crate::basis::{BasisIndex, Level};
use crate::error::{Error, Result};
use crate::observables::{self, Parity};
use crate::operators::OperatorSet;
use crate::params::ModelParams;
use crate::state::StateVector;

/// Step used when a regime is evaluated by propagating its effective Hamiltonian.
pub const EFFECTIVE_DT: f64 = 0.02;
/// Upper bound on the automatic growth of the flow truncation.
pub const MAX_FLOW_LEVELS: usize = 4096;

/// Keeps the checks of the last time point, where horizons bite hardest.
fn collect<F>(times: &[f64], mut f: F) -> Result<Assessed<Vec<AnalyticRecord>>>
where
    F: FnMut(f64) -> Result<Assessed<AnalyticRecord>>,
{
    let mut records = Vec::with_capacity(times.len());
    let mut checks = Vec::new();
    for &t in times {
        let a = f(t)?;
        checks = a.checks;
        records.push(a.value);
    }
    Ok(Assessed::new(records, checks))
}

/// Analytic predictions of `kind` at each of the nondecreasing `times`.
/// `n_max` bounds the Fock space for the regimes evaluated on a basis.
pub fn analytic_series(
    kind: RegimeKind,
    params: &ModelParams,
    times: &[f64],
    n_max: usize,
) -> Result<Assessed<Vec<AnalyticRecord>>> {
    match kind {
        RegimeKind::EmptyCavity => {
            if params.big_g() != 0.0 || params.x.abs() > 1e-3 * params.q().abs() {
                return Err(Error::WrongRegime(
                    "empty-cavity law needs g = 0 and x = 0".into(),
                ));
            }
            let q = params.q();
            collect(times, |t| {
                let r = 2.0 * q * t;
                Ok(Assessed::new(
                    AnalyticRecord {
                        time: t,
                        mean_n: Some(r.sinh().powi(2)),
                        p_e1: Some(0.0),
                        p_e2: Some(0.0),
                        p_e1e2: Some(0.0),
                        p_g1e2: Some(0.0),
                        p_g1: Some(1.0),
                        var_x_plus: Some(0.5 * (2.0 * r).exp()),
                        var_x_minus: Some(0.5 * (-2.0 * r).exp()),
                        p_vacuum: Some(1.0 / r.cosh()),
                    },
                    Vec::new(),
                ))
            })
        }
        RegimeKind::TwoPhotonResonant { alpha, beta } => collect(times, |t| {
            Ok(two_photon_amplitudes(t, params, alpha, beta)?
                .map(|a| AnalyticRecord::from_table(t, &a.table())))
        }),
        RegimeKind::SecondAtomDispersive(b) => collect(times, |t| {
            Ok(second_atom_dispersive_amplitudes(t, params, b)?
                .map(|a| AnalyticRecord::from_table(t, &a.table())))
        }),
        RegimeKind::EqualCouplingX0 => {
            let g = params.big_g();
            if params.delta1 != 0.0
                || params.delta2 != 0.0
                || g == 0.0
                || (params.g1.abs() - params.g2.abs()).abs() > 1e-12 * g
                || params.x.abs() > 1e-3 * params.q().abs()
            {
                return Err(Error::WrongRegime(
                    "equal-coupling flow needs |g1| = |g2|, resonant atoms and x = 0".into(),
                ));
            }
            let r = (params.g1 * params.g2).signum();
            let mut m_max = (n_max - n_max % 2).max(20);
            // the flow is cheap, so grow its truncation until the tail fits
            let flow = loop {
                match equal_coupling_flow_at(times, params.q(), m_max, r, FlowVariant::Atoms) {
                    Err(Error::FlowTail { .. }) if m_max < MAX_FLOW_LEVELS => m_max *= 2,
                    other => break other?,
                }
            };
            let records = flow
                .iter()
                .map(|s| {
                    Ok(AnalyticRecord::from_table(
                        s.time,
                        &reconstruct_state_from_flow(s)?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            let checks = vec![Check::much_less(
                "|eps| << G",
                params.epsilon,
                g,
                Margin::STANDARD,
            )];
            Ok(Assessed::new(records, checks))
        }
        RegimeKind::DispersiveSqueezing => collect(times, |t| dispersive_observables(t, params)),
        RegimeKind::DoubleExcitation => collect(times, |t| {
            Ok(
                double_excitation_probability(t, params)?.map(|d| AnalyticRecord {
                    p_e1e2: Some(d.probability),
                    ..AnalyticRecord::empty(t)
                }),
            )
        }),
        RegimeKind::MixedResonantDispersive => {
            collect(times, |t| mixed_regime_observables(t, params))
        }
        RegimeKind::DoubleWeak => {
            let basis = BasisIndex::new(n_max)?;
            let ops = OperatorSet::new(basis);
            let psi0 = StateVector::basis_state(basis, Level::Ground, Level::Ground, 0)?;
            let states =
                effective_series(Transform::DoubleWeak, times, params, &psi0, EFFECTIVE_DT)?;
            let records = states
                .iter()
                .zip(times)
                .map(|(s, &t)| {
                    let r =
                        observables::record_interaction(s, t, params.epsilon, &ops, Parity::Even);
                    AnalyticRecord {
                        time: t,
                        mean_n: Some(r.mean_n),
                        p_e1: Some(r.p_e1),
                        p_e2: Some(r.p_e2),
                        p_e1e2: Some(r.p_e1e2),
                        p_g1e2: Some(r.p_g1e2),
                        p_g1: Some(r.p_g1),
                        var_x_plus: Some(r.var_x_plus),
                        var_x_minus: Some(r.var_x_minus),
                        p_vacuum: Some(observables::photon_probability(s, 0)),
                    }
                })
                .collect();
            Ok(Assessed::new(records, double_weak_checks(params)))
        }
    }
}
