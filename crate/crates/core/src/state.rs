//! Pure states on the truncated space and the frame conventions.
//!
//! Three pictures appear:
//! * lab frame: the state evolving under the full modulated Hamiltonian;
//! * interaction frame: `|psi> = exp[i t (eta/2)(n + sz1/2 + sz2/2)] |Psi_lab>`;
//! * slow amplitudes `a_m, b_m, c_m, d_m`: interaction-frame amplitudes with the
//!   free phases of the static interaction Hamiltonian removed
//!   (see [`AmplitudeTable`]).

use num_complex::Complex64 as C64;

use crate::basis::{BasisIndex, BasisLabel, Level};
use crate::error::{Error, Result};
use crate::params::ModelParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Frame {
    Lab,
    Interaction,
}

impl Frame {
    pub fn name(self) -> &'static str {
        match self {
            Frame::Lab => "lab",
            Frame::Interaction => "interaction",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    basis: BasisIndex,
    amps: Vec<C64>,
    frame: Frame,
}

impl StateVector {
    /// Product basis state `|s1> |s2> |m>` in the lab frame.
    pub fn basis_state(basis: BasisIndex, atom1: Level, atom2: Level, m: usize) -> Result<Self> {
        let idx = basis.try_index(atom1, atom2, m)?;
        let mut amps = vec![C64::new(0.0, 0.0); basis.dim()];
        amps[idx] = C64::new(1.0, 0.0);
        Ok(Self {
            basis,
            amps,
            frame: Frame::Lab,
        })
    }

    pub fn from_amplitudes(basis: BasisIndex, amps: Vec<C64>, frame: Frame) -> Result<Self> {
        if amps.len() != basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                got: amps.len(),
            });
        }
        Ok(Self { basis, amps, frame })
    }

    pub fn basis(&self) -> BasisIndex {
        self.basis
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn amplitude(&self, atom1: Level, atom2: Level, m: usize) -> C64 {
        self.amps[self.basis.index(atom1, atom2, m)]
    }

    /// Amplitude of `|g1 g2 m>`.
    pub fn a(&self, m: usize) -> C64 {
        self.amplitude(Level::Ground, Level::Ground, m)
    }

    /// Amplitude of `|g1 e2 m>`.
    pub fn b(&self, m: usize) -> C64 {
        self.amplitude(Level::Ground, Level::Excited, m)
    }

    /// Amplitude of `|e1 g2 m>`.
    pub fn c(&self, m: usize) -> C64 {
        self.amplitude(Level::Excited, Level::Ground, m)
    }

    /// Amplitude of `|e1 e2 m>`.
    pub fn d(&self, m: usize) -> C64 {
        self.amplitude(Level::Excited, Level::Excited, m)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn normalize(&mut self) {
        let n = self.norm_sqr().sqrt();
        if n > 0.0 {
            self.amps.iter_mut().for_each(|z| *z /= n);
        }
    }

    pub fn inner(&self, other: &Self) -> C64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Multiplies every amplitude by `exp(i phase(label))`.
    fn rephase(&self, frame: Frame, phase: impl Fn(BasisLabel) -> f64) -> Self {
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(i, z)| z * C64::from_polar(1.0, phase(self.basis.label(i))))
            .collect();
        Self {
            basis: self.basis,
            amps,
            frame,
        }
    }

    /// Lab → interaction frame at time `t`.
    pub fn to_interaction_frame(&self, t: f64, params: &ModelParams) -> Result<Self> {
        self.expect_frame(Frame::Lab)?;
        let w = params.eta() / 2.0;
        Ok(self.rephase(Frame::Interaction, |l| w * t * rotating_charge(l)))
    }

    /// Interaction → lab frame at time `t`.
    pub fn to_lab_frame(&self, t: f64, params: &ModelParams) -> Result<Self> {
        self.expect_frame(Frame::Interaction)?;
        let w = params.eta() / 2.0;
        Ok(self.rephase(Frame::Lab, |l| -w * t * rotating_charge(l)))
    }

    pub(crate) fn expect_frame(&self, frame: Frame) -> Result<()> {
        if self.frame != frame {
            return Err(Error::FrameMismatch {
                expected: frame.name(),
                got: self.frame.name(),
            });
        }
        Ok(())
    }
}

/// Eigenvalue of `n + (sz1 + sz2) / 2` on a basis label.
pub(crate) fn rotating_charge(l: BasisLabel) -> f64 {
    l.photons as f64 + 0.5 * (l.atom1.sigma_z() + l.atom2.sigma_z())
}

/// Diagonal of the static interaction Hamiltonian on a basis label:
/// `-x m - sum_j (Delta_j + x)/2 sz_j`.
pub(crate) fn interaction_diagonal(l: BasisLabel, params: &ModelParams) -> f64 {
    -params.x * l.photons as f64
        - 0.5 * (params.delta1 + params.x) * l.atom1.sigma_z()
        - 0.5 * (params.delta2 + params.x) * l.atom2.sigma_z()
}

/// Slowly varying amplitudes `a_m, b_m, c_m, d_m` indexed by photon number,
/// for the atomic states `gg`, `ge`, `eg`, `ee` respectively.
///
/// They are the interaction-frame amplitudes with the free phase
/// `exp(-i E t)` of each basis state removed, `E` being the diagonal of the
/// static interaction Hamiltonian.
#[derive(Clone, Debug, PartialEq)]
pub struct AmplitudeTable {
    pub n_max: usize,
    pub a: Vec<C64>,
    pub b: Vec<C64>,
    pub c: Vec<C64>,
    pub d: Vec<C64>,
}

impl AmplitudeTable {
    pub fn zeros(n_max: usize) -> Self {
        let z = vec![C64::new(0.0, 0.0); n_max + 1];
        Self {
            n_max,
            a: z.clone(),
            b: z.clone(),
            c: z.clone(),
            d: z,
        }
    }

    pub fn family(&self, atom1: Level, atom2: Level) -> &[C64] {
        match (atom1, atom2) {
            (Level::Ground, Level::Ground) => &self.a,
            (Level::Ground, Level::Excited) => &self.b,
            (Level::Excited, Level::Ground) => &self.c,
            (Level::Excited, Level::Excited) => &self.d,
        }
    }

    fn family_mut(&mut self, atom1: Level, atom2: Level) -> &mut Vec<C64> {
        match (atom1, atom2) {
            (Level::Ground, Level::Ground) => &mut self.a,
            (Level::Ground, Level::Excited) => &mut self.b,
            (Level::Excited, Level::Ground) => &mut self.c,
            (Level::Excited, Level::Excited) => &mut self.d,
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        [&self.a, &self.b, &self.c, &self.d]
            .iter()
            .flat_map(|f| f.iter())
            .map(|z| z.norm_sqr())
            .sum()
    }

    /// Converts to an interaction-frame state at time `t`, restoring the
    /// free phases. Requires `n_max >= 2`.
    pub fn to_interaction_state(&self, t: f64, params: &ModelParams) -> Result<StateVector> {
        let basis = BasisIndex::new(self.n_max)?;
        let amps = (0..basis.dim())
            .map(|i| {
                let l = basis.label(i);
                let phase = -interaction_diagonal(l, params) * t;
                self.family(l.atom1, l.atom2)[l.photons] * C64::from_polar(1.0, phase)
            })
            .collect();
        StateVector::from_amplitudes(basis, amps, Frame::Interaction)
    }
}

/// Maps a lab-frame state at time `t` onto the slow amplitudes.
///
/// All factors are pure phases, so probabilities are preserved exactly.
pub fn to_interaction_amplitudes(
    state: &StateVector,
    t: f64,
    params: &ModelParams,
) -> Result<AmplitudeTable> {
    let inter = state.to_interaction_frame(t, params)?;
    let basis = state.basis();
    let mut table = AmplitudeTable::zeros(basis.n_max());
    for (i, z) in inter.amplitudes().iter().enumerate() {
        let l = basis.label(i);
        let phase = interaction_diagonal(l, params) * t;
        table.family_mut(l.atom1, l.atom2)[l.photons] = z * C64::from_polar(1.0, phase);
    }
    Ok(table)
}
