//! The modulated two-atom Tavis–Cummings Hamiltonian.
//!
//! Lab frame:
//! `H0(t) = w_t n + sum_j [Omega_j/2 sz_j + g_j (a s+_j + a† s-_j)] - i chi_t (a^2 - a†^2)`
//! with `w_t = 1 + eps sin(eta t)`.
//!
//! Time stepping happens in the frame rotating with `R = (eta/2)(n + sz1/2 + sz2/2)`,
//! where the generator is `e^{iRt} (H0 - R) e^{-iRt}`. `R` commutes with the
//! exchange terms and only rephases the squeeze terms, so no approximation is
//! involved; the large photon-number diagonal is removed, which keeps the
//! fixed-step scheme accurate on high Fock levels.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::integrator::Generator;
use crate::basis::BasisIndex;
use crate::operators::OperatorSet;
use crate::params::{Atom, ModelParams};
use crate::sparse::CsrMatrix;

/// How the squeezing coefficient `chi_t` is evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Modulation {
    /// `chi_t = (4 w_t)^-1 d w_t / dt`.
    #[default]
    Exact,
    /// `chi_t = 2 q cos(eta t)`.
    FirstOrder,
}

/// Whether the photon term is `w_t n` or just `n`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhotonTerm {
    #[default]
    TimeDependent,
    Static,
}

/// Instantaneous cavity frequency `w_t`.
pub fn cavity_frequency(t: f64, params: &ModelParams, photon: PhotonTerm) -> f64 {
    match photon {
        PhotonTerm::TimeDependent => 1.0 + params.epsilon * (params.eta() * t).sin(),
        PhotonTerm::Static => 1.0,
    }
}

/// Squeezing coefficient `chi_t`.
pub fn squeeze_coefficient(t: f64, params: &ModelParams, modulation: Modulation) -> f64 {
    let eta = params.eta();
    match modulation {
        Modulation::Exact => {
            let w = 1.0 + params.epsilon * (eta * t).sin();
            params.epsilon * eta * (eta * t).cos() / (4.0 * w)
        }
        Modulation::FirstOrder => 2.0 * params.q() * (eta * t).cos(),
    }
}

fn real(v: f64) -> C64 {
    C64::new(v, 0.0)
}

/// Time-independent atomic part `sum_j [Omega_j/2 sz_j + g_j (a s+_j + a† s-_j)]`.
fn atomic_part(params: &ModelParams, ops: &OperatorSet, frame_frequency: f64) -> CsrMatrix {
    let mut h = CsrMatrix::zeros(ops.basis().dim());
    for atom in Atom::BOTH {
        let omega = params.atom_frequency(atom) - frame_frequency;
        h = h
            .add(&ops.sigma_z(atom).scale(real(0.5 * omega)))
            .add(&ops.exchange(atom).scale(real(params.coupling(atom))));
    }
    h
}

/// Lab-frame `H0(t)`.
pub fn hamiltonian_at(
    t: f64,
    params: &ModelParams,
    ops: &OperatorSet,
    modulation: Modulation,
    photon: PhotonTerm,
) -> CsrMatrix {
    let chi = squeeze_coefficient(t, params, modulation);
    let w = cavity_frequency(t, params, photon);
    atomic_part(params, ops, 0.0)
        .add(&ops.n.scale(real(w)))
        .add(&ops.a2.sub(&ops.a_dag2).scale(C64::new(0.0, -chi)))
}

/// Static interaction-picture Hamiltonian after the rotating-wave approximation,
/// `H_I = sum_j [g_j (a s+_j + a† s-_j) - (Delta_j + x)/2 sz_j] - i q (a^2 - a†^2) - x n`.
pub fn interaction_hamiltonian(params: &ModelParams, ops: &OperatorSet) -> CsrMatrix {
    let mut h = ops.n.scale(real(-params.x));
    for atom in Atom::BOTH {
        h = h
            .add(&ops.exchange(atom).scale(real(params.coupling(atom))))
            .add(
                &ops.sigma_z(atom)
                    .scale(real(-0.5 * (params.detuning(atom) + params.x))),
            );
    }
    h.add(&ops.a2.sub(&ops.a_dag2).scale(C64::new(0.0, -params.q())))
}

/// Generator of the rotating-frame evolution,
/// `H_rot(t) = C + f(t) n + c(t) a^2 + conj(c(t)) a†^2`,
/// with `f = w_t - 1` and `c = -i chi_t e^{-i eta t}`.
#[derive(Clone, Debug)]
pub struct RotatingGenerator {
    params: ModelParams,
    modulation: Modulation,
    photon: PhotonTerm,
    basis: BasisIndex,
    constant: CsrMatrix,
    /// `sqrt((m+1)(m+2))`, the matrix element `<m| a^2 |m+2>`.
    pair: Vec<f64>,
}

impl RotatingGenerator {
    pub fn new(
        params: ModelParams,
        ops: &OperatorSet,
        modulation: Modulation,
        photon: PhotonTerm,
    ) -> Self {
        let w_r = params.eta() / 2.0;
        let constant = atomic_part(&params, ops, w_r).add(&ops.n.scale(real(1.0 - w_r)));
        let basis = ops.basis();
        let pair = (0..basis.fock_dim())
            .map(|m| (((m + 1) * (m + 2)) as f64).sqrt())
            .collect();
        Self {
            params,
            modulation,
            photon,
            basis,
            constant,
            pair,
        }
    }

    pub fn frame_frequency(&self) -> f64 {
        self.params.eta() / 2.0
    }

    /// `(f(t), c(t))`.
    #[inline]
    pub fn coefficients(&self, t: f64) -> (f64, C64) {
        let f = cavity_frequency(t, &self.params, self.photon) - 1.0;
        let chi = squeeze_coefficient(t, &self.params, self.modulation);
        let c = C64::new(0.0, -chi) * C64::from_polar(1.0, -self.params.eta() * t);
        (f, c)
    }

    /// Assembled rotating-frame matrix at `t`, for checks.
    pub fn matrix_at(&self, t: f64, ops: &OperatorSet) -> CsrMatrix {
        let (f, c) = self.coefficients(t);
        self.constant
            .add(&ops.n.scale(real(f)))
            .add(&ops.a2.scale(c))
            .add(&ops.a_dag2.scale(c.conj()))
    }
}

impl Generator for RotatingGenerator {
    fn dim(&self) -> usize {
        self.basis.dim()
    }

    fn apply(&self, t: f64, psi: &[C64], out: &mut [C64]) {
        let (f, c) = self.coefficients(t);
        let cc = c.conj();
        out.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
        self.constant.mul_add(C64::new(1.0, 0.0), psi, out);
        let nf = self.basis.fock_dim();
        for block in 0..4 {
            let o = block * nf;
            for m in 0..nf {
                let mut acc = psi[o + m] * (f * m as f64);
                if m + 2 < nf {
                    acc += c * (psi[o + m + 2] * self.pair[m]);
                }
                if m >= 2 {
                    acc += cc * (psi[o + m - 2] * self.pair[m - 2]);
                }
                out[o + m] += acc;
            }
        }
        // d psi / dt = -i H psi
        out.iter_mut().for_each(|z| *z = C64::new(z.im, -z.re));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::Level::*;

    fn equal_coupling() -> ModelParams {
        ModelParams::new(2e-3, 0.0, 0.04, 0.04, 0.0, 0.0).unwrap()
    }

    #[test]
    fn decoupled_hamiltonian_is_number_operator() {
        let p = ModelParams::new(0.0, 0.0, 0.0, 0.0, 0.0, 0.0).unwrap();
        let ops = OperatorSet::new(BasisIndex::new(5).unwrap());
        let h = hamiltonian_at(0.3, &p, &ops, Modulation::Exact, PhotonTerm::TimeDependent);
        let b = ops.basis();
        for l in b.labels() {
            let i = b.index(l.atom1, l.atom2, l.photons);
            // Omega_j = 1 so the atomic diagonal is (sz1 + sz2)/2
            let atoms = 0.5 * (l.atom1.sigma_z() + l.atom2.sigma_z());
            assert!((h.get(i, i).re - (l.photons as f64 + atoms)).abs() < 1e-15);
        }
        // off-diagonals vanish
        let nonzero = b
            .labels()
            .filter(|l| l.photons as f64 + 0.5 * (l.atom1.sigma_z() + l.atom2.sigma_z()) != 0.0)
            .count();
        assert_eq!(h.nnz(), nonzero);
    }

    #[test]
    fn first_order_coefficient_at_zero() {
        let p = ModelParams::new(2e-3, 0.01, 0.0, 0.0, 0.0, 0.0).unwrap();
        let chi = squeeze_coefficient(0.0, &p, Modulation::FirstOrder);
        assert!((chi - 2e-3 * 1.01 / 2.0).abs() < 1e-18);
        // the exact coefficient agrees at t = 0 where w_t = 1
        assert!((squeeze_coefficient(0.0, &p, Modulation::Exact) - chi).abs() < 1e-18);
    }

    #[test]
    fn lab_hamiltonian_hermitian() {
        let ops = OperatorSet::new(BasisIndex::new(40).unwrap());
        for t in [0.0, 0.37, 12.5, 1999.0] {
            for m in [Modulation::Exact, Modulation::FirstOrder] {
                let h = hamiltonian_at(t, &equal_coupling(), &ops, m, PhotonTerm::TimeDependent);
                assert!(h.hermiticity_defect() < 1e-14);
            }
        }
    }

    #[test]
    fn jc_matrix_element() {
        let ops = OperatorSet::new(BasisIndex::new(5).unwrap());
        let b = ops.basis();
        let h = hamiltonian_at(
            0.0,
            &equal_coupling(),
            &ops,
            Modulation::Exact,
            PhotonTerm::Static,
        );
        // <e1 g2 1| g1 a s+_1 |g1 g2 2> = g1 sqrt 2
        let v = h.get(b.index(Excited, Ground, 1), b.index(Ground, Ground, 2));
        assert!((v.re - 0.04 * 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn rotating_matrix_matches_frame_transform() {
        // H_rot(t) = e^{iRt} (H0(t) - R) e^{-iRt}, checked elementwise.
        let p = ModelParams::new(3e-3, 0.02, 0.05, 0.03, 0.1, -0.2).unwrap();
        let ops = OperatorSet::new(BasisIndex::new(6).unwrap());
        let b = ops.basis();
        let gen = RotatingGenerator::new(p, &ops, Modulation::Exact, PhotonTerm::TimeDependent);
        let t = 3.7;
        let w_r = p.eta() / 2.0;
        let h0 = hamiltonian_at(t, &p, &ops, Modulation::Exact, PhotonTerm::TimeDependent);
        let hr = gen.matrix_at(t, &ops);
        let charge = |i: usize| crate::state::rotating_charge(b.label(i));
        for r in 0..b.dim() {
            for c in 0..b.dim() {
                let mut v = h0.get(r, c);
                if r == c {
                    v -= w_r * charge(r);
                }
                let expect = v * C64::from_polar(1.0, w_r * t * (charge(r) - charge(c)));
                assert!((expect - hr.get(r, c)).norm() < 1e-14, "({r},{c})");
            }
        }
    }

    #[test]
    fn kernel_matches_assembled_matrix() {
        let p = ModelParams::new(3e-3, 0.02, 0.05, 0.03, 0.1, -0.2).unwrap();
        let ops = OperatorSet::new(BasisIndex::new(7).unwrap());
        let gen = RotatingGenerator::new(p, &ops, Modulation::Exact, PhotonTerm::TimeDependent);
        let psi: Vec<C64> = (0..ops.basis().dim())
            .map(|i| C64::new((i as f64 * 0.3).sin(), (i as f64 * 0.11).cos()))
            .collect();
        let mut out = vec![C64::new(0.0, 0.0); psi.len()];
        gen.apply(5.1, &psi, &mut out);
        let h = gen.matrix_at(5.1, &ops).apply(&psi);
        for (o, hv) in out.iter().zip(&h) {
            assert!((o - hv * C64::new(0.0, -1.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn rwa_average_is_interaction_hamiltonian() {
        // Averaging the first-order rotating generator with static photon term
        // over one modulation period yields H_I.
        let p = ModelParams::new(2e-3, 0.015, 0.04, 0.03, 0.05, -0.02).unwrap();
        let ops = OperatorSet::new(BasisIndex::new(5).unwrap());
        let gen = RotatingGenerator::new(p, &ops, Modulation::FirstOrder, PhotonTerm::Static);
        let period = std::f64::consts::PI / (p.eta() / 2.0) / 2.0;
        let k = 400;
        let mut avg = CsrMatrix::zeros(ops.basis().dim());
        for i in 0..k {
            let t = period * (i as f64 + 0.5) / k as f64;
            avg = avg.add(&gen.matrix_at(t, &ops).scale(real(1.0 / k as f64)));
        }
        let hi = interaction_hamiltonian(&p, &ops);
        assert!(avg.sub(&hi).max_abs() < 1e-12);
        assert_eq!(hi.hermiticity_defect(), 0.0);
    }
}
