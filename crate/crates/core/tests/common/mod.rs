//! Invariant checks shared by the property tests and the acceptance run.

#![allow(dead_code)]

use dce_core::evolver::{
    hamiltonian_at, interaction_hamiltonian, Modulation, PhotonTerm, RotatingGenerator,
};
use dce_core::observables::{excitation_probabilities, mean_photon};
use dce_core::regimes::{
    dispersive_effective_hamiltonian, double_weak_effective_hamiltonian, effective_hamiltonian,
    mixed_effective_hamiltonian, Transform,
};
use dce_core::{evolve, BasisIndex, EvolverOptions, Level, ModelParams, OperatorSet, StateVector};
use proptest::prelude::*;

pub const NORM_TOL: f64 = 1e-8;
pub const PARITY_TOL: f64 = 1e-8;
pub const HERMITICITY_TOL: f64 = 1e-13;
pub const FRAME_TOL: f64 = 1e-12;
pub const UNCERTAINTY_SLACK: f64 = 1e-6;
pub const DT_HALVING_TOL: f64 = 1e-4;
pub const N_MAX: usize = 64;

#[derive(Clone, Debug)]
pub struct Draw {
    pub params: ModelParams,
    pub atom1: Level,
    pub atom2: Level,
    pub photons: usize,
    pub probe_time: f64,
}

fn level() -> impl Strategy<Value = Level> {
    prop_oneof![Just(Level::Ground), Just(Level::Excited)]
}

/// Valid parameters with `eps t = 2` reachable in a few hundred time units.
pub fn draws() -> impl Strategy<Value = Draw> {
    (
        0.01f64..0.04,
        -1.0f64..1.0,
        0.0f64..0.06,
        0.0f64..0.06,
        -0.3f64..0.3,
        -0.3f64..0.3,
        level(),
        level(),
        0usize..3,
        0.0f64..500.0,
    )
        .prop_map(
            |(eps, xr, g1, g2, d1, d2, atom1, atom2, photons, probe_time)| Draw {
                params: ModelParams::new(eps, xr * eps, g1, g2, d1, d2).unwrap(),
                atom1,
                atom2,
                photons,
                probe_time,
            },
        )
}

pub fn initial(d: &Draw) -> StateVector {
    let basis = BasisIndex::new(N_MAX).unwrap();
    StateVector::basis_state(basis, d.atom1, d.atom2, d.photons).unwrap()
}

/// Largest Hermiticity defect over every Hamiltonian the crate assembles.
pub fn hermiticity(d: &Draw) -> f64 {
    let ops = OperatorSet::new(BasisIndex::new(12).unwrap());
    let p = &d.params;
    let mut worst: f64 = 0.0;
    for m in [Modulation::Exact, Modulation::FirstOrder] {
        for ph in [PhotonTerm::TimeDependent, PhotonTerm::Static] {
            worst = worst.max(hamiltonian_at(d.probe_time, p, &ops, m, ph).hermiticity_defect());
            let gen = RotatingGenerator::new(*p, &ops, m, ph);
            worst = worst.max(gen.matrix_at(d.probe_time, &ops).hermiticity_defect());
        }
    }
    worst = worst.max(interaction_hamiltonian(p, &ops).hermiticity_defect());
    for h in [
        dispersive_effective_hamiltonian(p, &ops),
        mixed_effective_hamiltonian(p, &ops),
        double_weak_effective_hamiltonian(p, &ops),
    ]
    .into_iter()
    .flatten()
    {
        worst = worst.max(h.hermiticity_defect());
    }
    for k in [
        Transform::Dispersive,
        Transform::Mixed,
        Transform::DoubleWeak,
    ] {
        if let Ok(h) = effective_hamiltonian(k, p, &ops) {
            worst = worst.max(h.hermiticity_defect());
        }
    }
    worst
}

/// Runs the draw to `eps t = 2` and checks every dynamical invariant.
pub fn check_dynamics(d: &Draw) -> Result<(), String> {
    let p = &d.params;
    let t = 2.0 / p.epsilon;
    let psi0 = initial(d);
    let opts = EvolverOptions::default();
    let tr = evolve(&psi0, p, t, &opts).map_err(|e| e.to_string())?;

    let norm = tr.records.iter().map(|r| r.norm_error).fold(0.0, f64::max);
    if norm > NORM_TOL {
        return Err(format!("norm error {norm:.3e}"));
    }
    let leak = tr
        .records
        .iter()
        .map(|r| r.parity_leakage)
        .fold(0.0, f64::max);
    if leak > PARITY_TOL {
        return Err(format!("parity leakage {leak:.3e}"));
    }
    for r in &tr.records {
        let product = r.var_x_plus * r.var_x_minus;
        if product < 0.25 * (1.0 - UNCERTAINTY_SLACK) {
            return Err(format!("var+ var- = {product} at t = {}", r.time));
        }
    }

    let lab = &tr.final_state;
    let inter = lab.to_interaction_frame(t, p).map_err(|e| e.to_string())?;
    let (pl, pi) = (
        excitation_probabilities(lab),
        excitation_probabilities(&inter),
    );
    let frame = [
        (mean_photon(lab) - mean_photon(&inter)).abs() / mean_photon(lab).max(1.0),
        (pl.p_e1 - pi.p_e1).abs(),
        (pl.p_e2 - pi.p_e2).abs(),
        (pl.p_e1e2 - pi.p_e1e2).abs(),
        (pl.p_g1e2 - pi.p_g1e2).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    if frame > FRAME_TOL {
        return Err(format!("frame dependence {frame:.3e}"));
    }

    let half = EvolverOptions {
        dt: opts.dt / 2.0,
        ..opts
    };
    let tr2 = evolve(&psi0, p, t, &half).map_err(|e| e.to_string())?;
    let (n1, n2) = (tr.last().mean_n, tr2.last().mean_n);
    let rel = (n1 - n2).abs() / n2.abs().max(1e-300);
    if rel > DT_HALVING_TOL {
        return Err(format!(
            "dt halving changes <n(eps t = 2)> by {rel:.3e} ({n1} vs {n2})"
        ));
    }
    Ok(())
}
