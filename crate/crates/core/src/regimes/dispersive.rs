//! Both atoms far detuned from the cavity.

use num_complex::Complex64 as C64;

use super::record::AnalyticRecord;
use super::validity::{horizon_check, Assessed, Check, Margin};
use crate::error::{Error, Result};
use crate::operators::OperatorSet;
use crate::params::{Atom, ModelParams};
use crate::sparse::CsrMatrix;

/// Largest `|zeta_j|` accepted by the second-order effective Hamiltonian.
pub const MAX_ZETA: f64 = 0.2;

/// `zeta_j`, taken as zero for an uncoupled atom.
pub(crate) fn zeta_or_zero(params: &ModelParams, atom: Atom) -> Result<f64> {
    if params.coupling(atom) == 0.0 {
        Ok(0.0)
    } else {
        params.zeta(atom)
    }
}

pub(crate) fn shift_or_zero(params: &ModelParams, atom: Atom) -> Result<f64> {
    if params.coupling(atom) == 0.0 {
        Ok(0.0)
    } else {
        params.dispersive_shift(atom)
    }
}

fn real(v: f64) -> C64 {
    C64::new(v, 0.0)
}

/// `x = delta1 + delta2`.
pub fn squeezing_shift(params: &ModelParams) -> Result<f64> {
    Ok(shift_or_zero(params, Atom::One)? + shift_or_zero(params, Atom::Two)?)
}

/// `x = -(Delta1 + delta1 + Delta2 + delta2) / 2`.
pub fn double_excitation_shift(params: &ModelParams) -> Result<f64> {
    let s = Atom::BOTH
        .iter()
        .map(|&a| Ok(params.detuning(a) + shift_or_zero(params, a)?))
        .sum::<Result<f64>>()?;
    Ok(-0.5 * s)
}

pub(crate) fn dispersive_checks(params: &ModelParams) -> Vec<Check> {
    Atom::BOTH
        .iter()
        .map(|&a| {
            let name = match a {
                Atom::One => "|g1| << |Delta1|",
                Atom::Two => "|g2| << |Delta2|",
            };
            Check::much_less(
                name,
                params.coupling(a),
                params.detuning(a),
                Margin::STANDARD,
            )
        })
        .collect()
}

pub(crate) fn double_excitation_checks(params: &ModelParams) -> Result<Vec<Check>> {
    let mut checks = dispersive_checks(params);
    let s: f64 = Atom::BOTH
        .iter()
        .map(|&a| Ok(params.detuning(a) + 3.0 * shift_or_zero(params, a)?))
        .sum::<Result<f64>>()?;
    let q = params.with_x(double_excitation_shift(params)?).q();
    checks.push(Check::much_less(
        "q << |sum(Delta_j + 3 delta_j)|",
        q,
        s,
        Margin::WIDE,
    ));
    Ok(checks)
}

fn on_resonance(params: &ModelParams, x: f64, what: &str) -> Result<()> {
    let q = params.with_x(x).q();
    if (params.x - x).abs() > 1e-3 * q.abs() {
        return Err(Error::WrongRegime(format!(
            "x = {} is off the {what} resonance at {x}",
            params.x
        )));
    }
    Ok(())
}

/// Second-order effective Hamiltonian of the dispersive regime.
pub fn dispersive_effective_hamiltonian(
    params: &ModelParams,
    ops: &OperatorSet,
) -> Result<CsrMatrix> {
    let z1 = zeta_or_zero(params, Atom::One)?;
    let z2 = zeta_or_zero(params, Atom::Two)?;
    if z1.abs() > MAX_ZETA || z2.abs() > MAX_ZETA {
        return Err(Error::Precondition(format!(
            "|zeta| = ({:.3}, {:.3}) exceeds {MAX_ZETA}",
            z1.abs(),
            z2.abs()
        )));
    }
    let d1 = shift_or_zero(params, Atom::One)?;
    let d2 = shift_or_zero(params, Atom::Two)?;
    let (x, q) = (params.x, params.q());
    let (sz1, sz2) = (ops.sigma_z(Atom::One), ops.sigma_z(Atom::Two));
    let (sp1, sp2) = (ops.sigma_plus(Atom::One), ops.sigma_plus(Atom::Two));
    let (sm1, sm2) = (ops.sigma_minus(Atom::One), ops.sigma_minus(Atom::Two));

    let shift = ops
        .identity
        .scale(real(x))
        .add(&sz1.scale(real(d1)))
        .add(&sz2.scale(real(d2)));
    let mut h = shift.matmul(&ops.n).scale(real(-1.0));
    h = h
        .add(&sz1.scale(real(-0.5 * (params.delta1 + x + d1))))
        .add(&sz2.scale(real(-0.5 * (params.delta2 + x + d2))));
    let exchange = sp1.matmul(sm2).add(&sm1.matmul(sp2));
    let pair = sp1.matmul(sp2).sub(&sm1.matmul(sm2));
    let inner = exchange
        .scale(real(0.5 * (params.delta1 + params.delta2)))
        .sub(&pair.scale(C64::new(0.0, 2.0 * q)));
    h = h.add(&inner.scale(real(-z1 * z2)));
    let k = ops
        .identity
        .add(&sz1.scale(real(z1 * z1)))
        .add(&sz2.scale(real(z2 * z2)));
    let squeeze = k.matmul(&ops.a2).sub(&k.matmul(&ops.a_dag2));
    Ok(h.add(&squeeze.scale(C64::new(0.0, -q))))
}

/// Closed-form observables at `x = delta1 + delta2`.
pub fn dispersive_observables(t: f64, params: &ModelParams) -> Result<Assessed<AnalyticRecord>> {
    let x = squeezing_shift(params)?;
    on_resonance(params, x, "dispersive squeezing")?;
    let z1 = zeta_or_zero(params, Atom::One)?;
    let z2 = zeta_or_zero(params, Atom::Two)?;
    let d1 = shift_or_zero(params, Atom::One)?;
    let z = z1 * z1 + z2 * z2;
    let q = params.q();
    let n = (1.0 - z) * (2.0 * q * t * (1.0 - z)).sinh().powi(2);
    let var = |s: f64| 0.5 * (z + (1.0 - z) * (s * 4.0 * q * t * (1.0 - z)).exp());
    let mut checks = dispersive_checks(params);
    checks.push(horizon_check(d1, t));
    Ok(Assessed::new(
        AnalyticRecord {
            time: t,
            mean_n: Some(n),
            p_e1: Some(z1 * z1 * n),
            p_e2: Some(z2 * z2 * n),
            // fourth order in zeta
            p_e1e2: None,
            p_g1e2: None,
            p_g1: Some(1.0 - z1 * z1 * n),
            var_x_plus: Some(var(1.0)),
            var_x_minus: Some(var(-1.0)),
            p_vacuum: None,
        },
        checks,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DoubleExcitation {
    pub probability: f64,
    /// `2 q zeta1 zeta2`.
    pub rate: f64,
    /// Peak probability `1 - zeta1^2 - zeta2^2`.
    pub peak: f64,
    /// Time of the first maximum.
    pub peak_time: f64,
}

/// Probability of exciting both atoms at `2x = -sum(Delta_j + delta_j)`.
/// The field stays close to the vacuum in this regime.
pub fn double_excitation_probability(
    t: f64,
    params: &ModelParams,
) -> Result<Assessed<DoubleExcitation>> {
    let x = double_excitation_shift(params)?;
    on_resonance(params, x, "double-excitation")?;
    let z1 = params.zeta(Atom::One)?;
    let z2 = params.zeta(Atom::Two)?;
    let rate = 2.0 * params.q() * z1 * z2;
    let peak = 1.0 - z1 * z1 - z2 * z2;
    Ok(Assessed::new(
        DoubleExcitation {
            probability: peak * (rate * t).sin().powi(2),
            rate,
            peak,
            peak_time: std::f64::consts::FRAC_PI_2 / rate.abs(),
        },
        double_excitation_checks(params)?,
    ))
}
