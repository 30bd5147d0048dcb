//! Weakly coupled atoms: atom 1 resonant with `|g1| << eps`, atom 2 either
//! dispersive (mixed regime) or also weak (double-weak regime).

use num_complex::Complex64 as C64;

use super::dispersive::{shift_or_zero, zeta_or_zero};
use super::record::AnalyticRecord;
use super::validity::{worst, Assessed, Check, Margin};
use crate::error::{Error, Result};
use crate::observables::Verdict;
use crate::operators::OperatorSet;
use crate::params::{Atom, ModelParams};
use crate::sparse::CsrMatrix;

fn real(v: f64) -> C64 {
    C64::new(v, 0.0)
}

/// `x = delta2`.
pub fn mixed_shift(params: &ModelParams) -> Result<f64> {
    shift_or_zero(params, Atom::Two)
}

pub(crate) fn mixed_checks(params: &ModelParams) -> Vec<Check> {
    vec![
        Check::much_less("|g1| << |eps|", params.g1, params.epsilon, Margin::STANDARD),
        Check::much_less(
            "|g2| << |Delta2|",
            params.g2,
            params.delta2,
            Margin::STANDARD,
        ),
    ]
}

pub(crate) fn double_weak_checks(params: &ModelParams) -> Vec<Check> {
    vec![Check::much_less(
        "G << |eps|",
        params.big_g(),
        params.epsilon,
        Margin::STANDARD,
    )]
}

fn mixed_preconditions(params: &ModelParams) -> Result<(f64, f64)> {
    if params.delta1 != 0.0 {
        return Err(Error::WrongRegime("atom 1 must be resonant".into()));
    }
    let x = mixed_shift(params)?;
    let q = params.with_x(x).q();
    if (params.x - x).abs() > 1e-3 * q.abs() {
        return Err(Error::WrongRegime(format!(
            "x = {} is off the mixed resonance at {x}",
            params.x
        )));
    }
    let xi1 = params.xi(Atom::One)?;
    let zeta2 = zeta_or_zero(params, Atom::Two)?;
    Ok((xi1, zeta2))
}

/// Closed-form observables for the initial state `|e1 g2 0>` at `x = delta2`.
pub fn mixed_regime_observables(t: f64, params: &ModelParams) -> Result<Assessed<AnalyticRecord>> {
    let (xi1, z2) = mixed_preconditions(params)?;
    let (a, b) = (xi1 * xi1, z2 * z2);
    let q = params.q();
    let k = 1.0 + a - b;
    let n = (1.0 - a - b) * (2.0 * q * k * t).sinh().powi(2);
    let var = |s: f64| 0.5 * (a + b) + 0.5 * (1.0 - a - b) * (s * 4.0 * q * k * t).exp();
    Ok(Assessed::new(
        AnalyticRecord {
            time: t,
            mean_n: Some(n),
            p_e1: Some(1.0 - a * n),
            p_e2: Some(b * n),
            p_e1e2: None,
            p_g1e2: Some(0.0),
            p_g1: Some(a * n),
            var_x_plus: Some(var(1.0)),
            var_x_minus: Some(var(-1.0)),
            p_vacuum: None,
        },
        mixed_checks(params),
    ))
}

/// Effective Hamiltonian of the mixed regime.
pub fn mixed_effective_hamiltonian(params: &ModelParams, ops: &OperatorSet) -> Result<CsrMatrix> {
    let (xi1, z2) = mixed_preconditions(params)?;
    let d2 = shift_or_zero(params, Atom::Two)?;
    let q = params.q();
    let (sz1, sz2) = (ops.sigma_z(Atom::One), ops.sigma_z(Atom::Two));
    let (a, b) = (xi1 * xi1, z2 * z2);
    let k = ops
        .identity
        .add(&sz1.scale(real(a)))
        .add(&sz2.scale(real(b)));
    let squeeze = k.matmul(&ops.a2).sub(&k.matmul(&ops.a_dag2));
    let shift = ops
        .identity
        .sub(&sz1.scale(real(2.0 * a)))
        .add(sz2)
        .matmul(&ops.n);
    Ok(sz2
        .scale(real(-0.5 * (params.delta2 + 2.0 * d2)))
        .add(&squeeze.scale(C64::new(0.0, -q)))
        .add(&shift.scale(real(-d2)))
        .add(&sz1.scale(real(-0.5 * d2 * (1.0 - 2.0 * a)))))
}

/// Effective Hamiltonian with both atoms weakly coupled, `x = Delta_j = 0`.
pub fn double_weak_effective_hamiltonian(
    params: &ModelParams,
    ops: &OperatorSet,
) -> Result<CsrMatrix> {
    if params.delta1 != 0.0 || params.delta2 != 0.0 || params.x.abs() > 1e-3 * params.q().abs() {
        return Err(Error::WrongRegime(
            "double-weak regime needs x = Delta1 = Delta2 = 0".into(),
        ));
    }
    let checks = double_weak_checks(params);
    if worst(&checks) == Verdict::Fail {
        return Err(Error::Precondition(format!("{}", checks[0])));
    }
    let q = params.q();
    let xi1 = params.xi(Atom::One)?;
    let xi2 = params.xi(Atom::Two)?;
    let k = ops
        .identity
        .add(&ops.sigma_z(Atom::One).scale(real(xi1 * xi1)))
        .add(&ops.sigma_z(Atom::Two).scale(real(xi2 * xi2)));
    let pair_up = ops.sigma_plus(Atom::One).matmul(ops.sigma_plus(Atom::Two));
    let raise = k
        .matmul(&ops.a_dag2)
        .sub(&pair_up.scale(real(2.0 * xi1 * xi2)));
    // iq [R - R†]
    Ok(raise.sub(&raise.adjoint()).scale(C64::new(0.0, q)))
}
