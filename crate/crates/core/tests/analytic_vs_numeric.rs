//! Closed-form regimes against direct propagation.

use dce_core::evolver::{integrate, interaction_hamiltonian, Generator, Integrator, Workspace};
use dce_core::regimes::{
    analytic_series, mixed_regime_observables, mixed_shift, second_atom_dispersive_amplitudes,
    second_atom_shift, two_photon_amplitudes, two_photon_shift, Branch, RegimeKind,
};
use dce_core::sparse::CsrMatrix;
use dce_core::state::to_interaction_amplitudes;
use dce_core::{
    evolve, BasisIndex, EvolverOptions, Frame, Level, ModelParams, OperatorSet, StateVector,
};
use num_complex::Complex64 as C64;

struct Static(CsrMatrix);

impl Generator for Static {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn apply(&self, _t: f64, psi: &[C64], out: &mut [C64]) {
        out.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
        self.0.mul_add(C64::new(0.0, -1.0), psi, out);
    }
}

/// Interaction-frame state after evolving `|a1 a2 0>` under the averaged
/// Hamiltonian for time `t`.
fn averaged(params: &ModelParams, n_max: usize, a1: Level, a2: Level, t: f64) -> StateVector {
    let basis = BasisIndex::new(n_max).unwrap();
    let ops = OperatorSet::new(basis);
    let gen = Static(interaction_hamiltonian(params, &ops));
    let mut psi = StateVector::basis_state(basis, a1, a2, 0)
        .unwrap()
        .into_amplitudes();
    let mut ws = Workspace::new(psi.len());
    integrate(&gen, Integrator::Rk4, 0.0, t, 0.05, &mut psi, &mut ws).unwrap();
    StateVector::from_amplitudes(basis, psi, Frame::Interaction).unwrap()
}

fn max_diff(a: &StateVector, b: &StateVector) -> f64 {
    a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

#[test]
fn two_photon_amplitudes_follow_averaged_dynamics() {
    for (g1, g2) in [(0.04, 0.0), (0.04, 0.02), (0.03, 0.05)] {
        for alpha in Branch::BOTH {
            let base = ModelParams::new(2e-3, 0.0, g1, g2, 0.0, 0.0).unwrap();
            let p = base.with_x(two_photon_shift(g1, g2, alpha, Branch::Plus).unwrap());
            let rate = dce_core::regimes::two_photon_rate(&p, alpha, Branch::Plus).unwrap();
            // a quarter of the way to full conversion
            let t = std::f64::consts::FRAC_PI_4 / rate;
            let num = averaged(&p, 8, Level::Ground, Level::Ground, t);
            let an = two_photon_amplitudes(t, &p, alpha, Branch::Plus)
                .unwrap()
                .value;
            let an_state = an.table().to_interaction_state(t, &p).unwrap();
            let mut padded = vec![C64::new(0.0, 0.0); num.amplitudes().len()];
            let basis = num.basis();
            for l in an_state.basis().labels() {
                padded[basis.index(l.atom1, l.atom2, l.photons)] =
                    an_state.amplitude(l.atom1, l.atom2, l.photons);
            }
            let an_state = StateVector::from_amplitudes(basis, padded, Frame::Interaction).unwrap();
            let d = max_diff(&num, &an_state);
            assert!(
                d < 0.04,
                "g = ({g1}, {g2}), alpha {alpha}: max amplitude difference {d}"
            );

            // the sign of F decides the relative phase of a_2 and a_0
            let (n2, a2) = (num.a(2), an_state.a(2));
            assert!(a2.norm() > 0.3);
            assert!(
                (n2 * a2.conj()).re > 0.9 * a2.norm_sqr(),
                "a2 numeric {n2}, closed form {a2}"
            );
        }
    }
}

#[test]
fn two_photon_slow_amplitudes_from_full_numerics() {
    let base = ModelParams::new(2e-3, 0.0, 0.04, 0.0, 0.0, 0.0).unwrap();
    let p = base.with_x(two_photon_shift(0.04, 0.0, Branch::Minus, Branch::Plus).unwrap());
    let t = 1500.0;
    let psi0 = StateVector::basis_state(
        BasisIndex::new(10).unwrap(),
        Level::Ground,
        Level::Ground,
        0,
    )
    .unwrap();
    let tr = evolve(&psi0, &p, t, &EvolverOptions::default()).unwrap();
    let slow = to_interaction_amplitudes(&tr.final_state, t, &p).unwrap();
    let an = two_photon_amplitudes(t, &p, Branch::Minus, Branch::Plus)
        .unwrap()
        .value;
    assert!(
        (slow.a[0] - an.a0).norm() < 0.03,
        "{} vs {}",
        slow.a[0],
        an.a0
    );
    assert!((slow.a[2].norm() - an.a2.norm()).abs() < 0.03);
    assert!((slow.c[1].norm() - an.c1.norm()).abs() < 0.03);
}

#[test]
fn second_atom_amplitudes_follow_averaged_dynamics() {
    let base = ModelParams::new(2e-3, 0.0, 0.04, 0.003, 0.0, 0.2).unwrap();
    for branch in Branch::BOTH {
        let p = base.with_x(second_atom_shift(&base, branch).unwrap());
        let t = 2000.0;
        let num = averaged(&p, 8, Level::Ground, Level::Ground, t);
        let an = second_atom_dispersive_amplitudes(t, &p, branch)
            .unwrap()
            .value;
        let an_state = an.table().to_interaction_state(t, &p).unwrap();
        let basis = num.basis();
        let mut overlap = C64::new(0.0, 0.0);
        for l in an_state.basis().labels() {
            let i = basis.index(l.atom1, l.atom2, l.photons);
            overlap += an_state.amplitude(l.atom1, l.atom2, l.photons).conj() * num.amplitudes()[i];
        }
        let fidelity = overlap.norm_sqr() / an_state.norm_sqr();
        assert!(fidelity > 0.98, "branch {branch}: fidelity {fidelity}");
    }
}

#[test]
fn mixed_regime_follows_averaged_dynamics() {
    let base = ModelParams::new(2e-3, 0.0, 1e-4, 0.03, 0.0, 0.45).unwrap();
    let p = base.with_x(mixed_shift(&base).unwrap());
    for t in [400.0, 1000.0, 2000.0] {
        let num = averaged(&p, 120, Level::Excited, Level::Ground, t);
        let an = mixed_regime_observables(t, &p).unwrap().value;
        let n = dce_core::observables::mean_photon(&num);
        let n_an = an.mean_n.unwrap();
        assert!((n - n_an).abs() < 0.05 * n_an, "t = {t}: <n> {n} vs {n_an}");
        // the second-order populations only hold while <n> is small
        if n < 0.5 {
            let probs = dce_core::observables::excitation_probabilities(&num);
            let (pg1, pe2) = (1.0 - probs.p_e1, probs.p_e2);
            let (pg1_an, pe2_an) = (an.p_g1.unwrap(), an.p_e2.unwrap());
            assert!(
                (pg1 - pg1_an).abs() < 0.1 * pg1_an,
                "t = {t}: P_g1 {pg1} vs {pg1_an}"
            );
            assert!(
                (pe2 - pe2_an).abs() < 0.1 * pe2_an,
                "t = {t}: P_e2 {pe2} vs {pe2_an}"
            );
            assert!(probs.p_g1e2 < 0.1 * pg1_an);
        }
    }
}

#[test]
fn equal_coupling_flow_tracks_full_numerics() {
    let p = ModelParams::new(2e-3, 0.0, 0.04, 0.04, 0.0, 0.0).unwrap();
    let psi0 = StateVector::basis_state(
        BasisIndex::new(120).unwrap(),
        Level::Ground,
        Level::Ground,
        0,
    )
    .unwrap();
    let tr = evolve(&psi0, &p, 1000.0, &EvolverOptions::default()).unwrap();
    let times: Vec<f64> = tr.times().collect();
    let an = analytic_series(RegimeKind::EqualCouplingX0, &p, &times, 120).unwrap();
    for (r, a) in tr.records.iter().zip(&an.value) {
        if r.mean_n > 0.1 {
            let rel = (a.mean_n.unwrap() - r.mean_n).abs() / r.mean_n;
            assert!(rel < 0.05, "t = {}: {rel}", r.time);
        }
    }
}

#[test]
fn empty_cavity_series_matches_evolver() {
    let p = ModelParams::new(5e-3, 0.0, 0.0, 0.0, 0.0, 0.0).unwrap();
    let psi0 = StateVector::basis_state(
        BasisIndex::new(80).unwrap(),
        Level::Ground,
        Level::Ground,
        0,
    )
    .unwrap();
    let tr = evolve(&psi0, &p, 400.0, &EvolverOptions::default()).unwrap();
    let times: Vec<f64> = tr.times().collect();
    let an = analytic_series(RegimeKind::EmptyCavity, &p, &times, 80).unwrap();
    // the counter-rotating ripple is O(eps) in absolute terms, so skip tiny <n>
    for (r, a) in tr
        .records
        .iter()
        .zip(&an.value)
        .filter(|(r, _)| r.mean_n > 0.1)
    {
        let rel = (a.mean_n.unwrap() - r.mean_n).abs() / r.mean_n;
        assert!(rel < 0.01, "t = {}: {rel}", r.time);
        let vp = a.var_x_plus.unwrap();
        assert!(
            (r.var_x_plus - vp).abs() < 0.01 * vp,
            "var X+ {} vs {vp}",
            r.var_x_plus
        );
    }
}

#[test]
fn mixed_regime_populations_from_full_numerics() {
    let base = ModelParams::new(2e-3, 0.0, 1e-4, 0.03, 0.0, 0.45).unwrap();
    let p = base.with_x(mixed_shift(&base).unwrap());
    let xi1 = p.xi(dce_core::Atom::One).unwrap();
    assert!((xi1 - 0.0998).abs() < 1e-4);
    let psi0 = StateVector::basis_state(
        BasisIndex::new(60).unwrap(),
        Level::Excited,
        Level::Ground,
        0,
    )
    .unwrap();
    let tr = evolve(&psi0, &p, 600.0, &EvolverOptions::default()).unwrap();
    for r in tr.records.iter().filter(|r| r.mean_n > 0.01) {
        let ratio = (1.0 - r.p_e1) / r.mean_n;
        assert!(
            (ratio / (xi1 * xi1) - 1.0).abs() < 0.2,
            "t = {}: P_g1 / <n> = {ratio}",
            r.time
        );
        let an = mixed_regime_observables(r.time, &p)
            .unwrap()
            .value
            .mean_n
            .unwrap();
        assert!(
            (r.mean_n - an).abs() < 0.02 * an,
            "t = {}: {} vs {an}",
            r.time,
            r.mean_n
        );
    }
}
