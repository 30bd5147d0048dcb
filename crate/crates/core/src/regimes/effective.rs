//! State-level evaluation of the effective-Hamiltonian regimes,
//! `psi(t) = U† exp(-i H_ef t) U psi(0)` with `U = exp(Y)`.

use num_complex::Complex64 as C64;

use super::dispersive::{dispersive_effective_hamiltonian, zeta_or_zero};
use super::mixed::{double_weak_effective_hamiltonian, mixed_effective_hamiltonian};
use crate::basis::{BasisIndex, Level};
use crate::error::{Error, Result};
use crate::evolver::{integrate, Generator, Integrator, Workspace};
use crate::operators::OperatorSet;
use crate::params::{Atom, ModelParams};
use crate::sparse::CsrMatrix;
use crate::state::{Frame, StateVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transform {
    Dispersive,
    Mixed,
    DoubleWeak,
}

fn real(v: f64) -> C64 {
    C64::new(v, 0.0)
}

/// Fock amplitudes of `exp[v q t (a†^2 - a^2)] |0>` on `0..=n_max`.
/// With `r = 2 v q t` they are `tanh^k(r) sqrt((2k)!) / (2^k k!) / sqrt(cosh r)`
/// on `m = 2k`.
pub fn squeezed_vacuum(v: f64, q: f64, t: f64, n_max: usize) -> Vec<f64> {
    let r = 2.0 * v * q * t;
    let th = r.tanh();
    let mut c = vec![0.0; n_max + 1];
    c[0] = 1.0 / r.cosh().sqrt();
    for m in (2..=n_max).step_by(2) {
        c[m] = c[m - 2] * th * ((m as f64 - 1.0) / m as f64).sqrt();
    }
    c
}

/// Anti-Hermitian generator `Y` of the transformation.
pub fn transform_generator(
    kind: Transform,
    params: &ModelParams,
    ops: &OperatorSet,
) -> Result<CsrMatrix> {
    let (sp1, sp2) = (ops.sigma_plus(Atom::One), ops.sigma_plus(Atom::Two));
    let (sm1, sm2) = (ops.sigma_minus(Atom::One), ops.sigma_minus(Atom::Two));
    let lowered = match kind {
        // a† (zeta2 s2- + zeta1 s1-)
        Transform::Dispersive => {
            let z1 = zeta_or_zero(params, Atom::One)?;
            let z2 = zeta_or_zero(params, Atom::Two)?;
            ops.a_dag
                .matmul(&sm2.scale(real(z2)).add(&sm1.scale(real(z1))))
        }
        // a† (zeta2 s2- + i xi1 s1+)
        Transform::Mixed => {
            let z2 = zeta_or_zero(params, Atom::Two)?;
            let xi1 = params.xi(Atom::One)?;
            ops.a_dag
                .matmul(&sm2.scale(real(z2)).add(&sp1.scale(C64::new(0.0, xi1))))
        }
        // i a† (xi1 s1+ + xi2 s2+)
        Transform::DoubleWeak => {
            let xi1 = params.xi(Atom::One)?;
            let xi2 = params.xi(Atom::Two)?;
            ops.a_dag
                .matmul(&sp1.scale(real(xi1)).add(&sp2.scale(real(xi2))))
                .scale(C64::new(0.0, 1.0))
        }
    };
    Ok(lowered.sub(&lowered.adjoint()))
}

/// `exp(s Y) psi` by Taylor series.
pub fn apply_exponential(y: &CsrMatrix, s: f64, psi: &[C64]) -> Vec<C64> {
    let mut out = psi.to_vec();
    let mut term = psi.to_vec();
    for k in 1..200 {
        let next = y.apply(&term);
        term = next.into_iter().map(|z| z * (s / k as f64)).collect();
        let size: f64 = term.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for (o, t) in out.iter_mut().zip(&term) {
            *o += t;
        }
        if size < 1e-17 {
            break;
        }
    }
    out
}

pub fn effective_hamiltonian(
    kind: Transform,
    params: &ModelParams,
    ops: &OperatorSet,
) -> Result<CsrMatrix> {
    match kind {
        Transform::Dispersive => dispersive_effective_hamiltonian(params, ops),
        Transform::Mixed => mixed_effective_hamiltonian(params, ops),
        Transform::DoubleWeak => double_weak_effective_hamiltonian(params, ops),
    }
}

struct Static<'a>(&'a CsrMatrix);

impl Generator for Static<'_> {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn apply(&self, _t: f64, psi: &[C64], out: &mut [C64]) {
        out.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
        self.0.mul_add(C64::new(0.0, -1.0), psi, out);
    }
}

/// `U† exp(-i H_ef t) U psi0` at each of the nondecreasing `times`,
/// returned in the interaction frame. `psi0` is the state at `t = 0`,
/// where both frames coincide.
pub fn effective_series(
    kind: Transform,
    times: &[f64],
    params: &ModelParams,
    psi0: &StateVector,
    dt: f64,
) -> Result<Vec<StateVector>> {
    let ops = OperatorSet::new(psi0.basis());
    let y = transform_generator(kind, params, &ops)?;
    let h = effective_hamiltonian(kind, params, &ops)?;
    let mut psi = apply_exponential(&y, 1.0, psi0.amplitudes());
    let mut ws = Workspace::new(psi.len());
    let mut now = 0.0;
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        if t < now {
            return Err(Error::InvalidParameter(
                "sample times must be nondecreasing".into(),
            ));
        }
        integrate(&Static(&h), Integrator::Rk4, now, t, dt, &mut psi, &mut ws)?;
        now = t;
        let back = apply_exponential(&y, -1.0, &psi);
        out.push(StateVector::from_amplitudes(
            psi0.basis(),
            back,
            Frame::Interaction,
        )?);
    }
    Ok(out)
}

/// Single-time version of [`effective_series`].
pub fn effective_state(
    kind: Transform,
    t: f64,
    params: &ModelParams,
    psi0: &StateVector,
    dt: f64,
) -> Result<StateVector> {
    Ok(effective_series(kind, &[t], params, psi0, dt)?.remove(0))
}

/// Dispersive-regime state `U† Lambda(1 - zeta^2) |g g 0>` built from the
/// closed-form squeezed vacuum.
pub fn dispersive_state(t: f64, params: &ModelParams, basis: BasisIndex) -> Result<StateVector> {
    let z1 = zeta_or_zero(params, Atom::One)?;
    let z2 = zeta_or_zero(params, Atom::Two)?;
    if (params.delta1 == 0.0 && params.g1 != 0.0) || (params.delta2 == 0.0 && params.g2 != 0.0) {
        return Err(Error::WrongRegime(
            "both coupled atoms must be detuned".into(),
        ));
    }
    let ops = OperatorSet::new(basis);
    let c = squeezed_vacuum(1.0 - z1 * z1 - z2 * z2, params.q(), t, basis.n_max());
    let mut amps = vec![C64::new(0.0, 0.0); basis.dim()];
    for (m, v) in c.iter().enumerate() {
        amps[basis.index(Level::Ground, Level::Ground, m)] = real(*v);
    }
    let y = transform_generator(Transform::Dispersive, params, &ops)?;
    StateVector::from_amplitudes(
        basis,
        apply_exponential(&y, -1.0, &amps),
        Frame::Interaction,
    )
}
