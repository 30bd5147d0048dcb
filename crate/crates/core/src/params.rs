//! Physical parameters of the modulated cavity with two atoms.
//!
//! Everything is expressed in units of the unperturbed cavity frequency,
//! which is fixed to one.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Unperturbed cavity frequency.
pub const OMEGA0: f64 = 1.0;

/// Modulation amplitudes above this value trigger a validity warning.
pub const EPSILON_WARN: f64 = 0.1;

/// Which of the two atoms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    One,
    Two,
}

impl Atom {
    pub const BOTH: [Atom; 2] = [Atom::One, Atom::Two];
}

/// Modulation amplitude, resonance shift, couplings and detunings.
///
/// The modulation frequency is `eta = 2 (1 + x)`, the atomic transition
/// frequencies are `Omega_j = 1 - Delta_j`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelParams {
    pub epsilon: f64,
    pub x: f64,
    pub g1: f64,
    pub g2: f64,
    pub delta1: f64,
    pub delta2: f64,
}

impl ModelParams {
    /// Builds and validates a parameter set.
    pub fn new(epsilon: f64, x: f64, g1: f64, g2: f64, delta1: f64, delta2: f64) -> Result<Self> {
        let p = Self {
            epsilon,
            x,
            g1,
            g2,
            delta1,
            delta2,
        };
        p.validate()?;
        Ok(p)
    }

    /// Hard validation. Returns the list of soft warnings on success.
    pub fn validate(&self) -> Result<Vec<String>> {
        let fields = [
            ("epsilon", self.epsilon),
            ("x", self.x),
            ("g1", self.g1),
            ("g2", self.g2),
            ("delta1", self.delta1),
            ("delta2", self.delta2),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name} = {v} is not finite"
                )));
            }
        }
        if self.epsilon.abs() >= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "|epsilon| = {} must be well below 1: the instantaneous cavity frequency 1 + epsilon sin(eta t) would reach zero",
                self.epsilon.abs()
            )));
        }
        if self.x <= -1.0 {
            return Err(Error::InvalidParameter(format!(
                "x = {} gives a non-positive modulation frequency",
                self.x
            )));
        }
        let mut warnings = Vec::new();
        if self.epsilon.abs() > EPSILON_WARN {
            warnings.push(format!(
                "|epsilon| = {} exceeds {EPSILON_WARN}; the weak-modulation description is questionable",
                self.epsilon.abs()
            ));
        }
        Ok(warnings)
    }

    /// Modulation frequency `eta = 2 (1 + x)`.
    pub fn eta(&self) -> f64 {
        2.0 * (1.0 + self.x)
    }

    /// Squeezing strength `q = epsilon (1 + x) / 4`.
    pub fn q(&self) -> f64 {
        self.epsilon * (1.0 + self.x) / 4.0
    }

    /// Collective coupling `G = sqrt(g1^2 + g2^2)`.
    pub fn big_g(&self) -> f64 {
        self.g1.hypot(self.g2)
    }

    pub fn coupling(&self, atom: Atom) -> f64 {
        match atom {
            Atom::One => self.g1,
            Atom::Two => self.g2,
        }
    }

    pub fn detuning(&self, atom: Atom) -> f64 {
        match atom {
            Atom::One => self.delta1,
            Atom::Two => self.delta2,
        }
    }

    /// Transition frequency `Omega_j = 1 - Delta_j`.
    pub fn atom_frequency(&self, atom: Atom) -> f64 {
        OMEGA0 - self.detuning(atom)
    }

    /// Dispersive shift `g_j^2 / Delta_j`.
    pub fn dispersive_shift(&self, atom: Atom) -> Result<f64> {
        let d = self.detuning(atom);
        if d == 0.0 {
            return Err(Error::Undefined("dispersive shift (zero detuning)"));
        }
        Ok(self.coupling(atom).powi(2) / d)
    }

    /// Dispersive small parameter `g_j / Delta_j`.
    pub fn zeta(&self, atom: Atom) -> Result<f64> {
        let d = self.detuning(atom);
        if d == 0.0 {
            return Err(Error::Undefined("zeta (zero detuning)"));
        }
        Ok(self.coupling(atom) / d)
    }

    /// Weak-coupling small parameter `g_j / (2 q)`.
    pub fn xi(&self, atom: Atom) -> Result<f64> {
        let q = self.q();
        if q == 0.0 {
            return Err(Error::Undefined("xi (zero modulation)"));
        }
        Ok(self.coupling(atom) / (2.0 * q))
    }

    /// Copy with a different resonance shift.
    pub fn with_x(mut self, x: f64) -> Self {
        self.x = x;
        self
    }

    /// Named field access, used by parameter sweeps.
    pub fn get(&self, name: &str) -> Option<f64> {
        Some(match name {
            "epsilon" => self.epsilon,
            "x" => self.x,
            "g1" => self.g1,
            "g2" => self.g2,
            "delta1" => self.delta1,
            "delta2" => self.delta2,
            _ => return None,
        })
    }

    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        let slot = match name {
            "epsilon" => &mut self.epsilon,
            "x" => &mut self.x,
            "g1" => &mut self.g1,
            "g2" => &mut self.g2,
            "delta1" => &mut self.delta1,
            "delta2" => &mut self.delta2,
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "unknown model parameter '{name}'"
                )))
            }
        };
        *slot = value;
        Ok(())
    }

    pub const FIELD_NAMES: [&'static str; 6] = ["epsilon", "x", "g1", "g2", "delta1", "delta2"];
}
