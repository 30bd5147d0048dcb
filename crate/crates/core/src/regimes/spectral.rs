//! Dressed-state quantities of the resonant two-atom Tavis–Cummings ladder.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A `+` or `-` sign label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Branch {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Plus, Branch::Minus];

    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Plus => "+",
            Branch::Minus => "-",
        })
    }
}

impl FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "plus" => Ok(Branch::Plus),
            "-" | "minus" => Ok(Branch::Minus),
            other => Err(Error::InvalidParameter(format!("unknown branch '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectralQuantities {
    pub m: usize,
    /// `2 g1 g2 / G^2`.
    pub rho: f64,
    pub r_m: f64,
    pub l_plus: f64,
    pub l_minus: f64,
    /// Continuous at `rho = 0`, where it vanishes.
    pub v_plus: f64,
    /// `None` when `rho = 0`.
    pub v_minus: Option<f64>,
    pub r_plus: f64,
    pub r_minus: f64,
}

impl SpectralQuantities {
    pub fn l(&self, beta: Branch) -> f64 {
        match beta {
            Branch::Plus => self.l_plus,
            Branch::Minus => self.l_minus,
        }
    }

    pub fn v(&self, beta: Branch) -> Option<f64> {
        match beta {
            Branch::Plus => Some(self.v_plus),
            Branch::Minus => self.v_minus,
        }
    }

    /// Oscillation rate factor `R_beta` of the two-photon resonance.
    pub fn rate(&self, beta: Branch) -> f64 {
        match beta {
            Branch::Plus => self.r_plus,
            Branch::Minus => self.r_minus,
        }
    }

    /// Whether `V_m` is singular (single coupled atom).
    pub fn v_singular(&self) -> bool {
        self.v_minus.is_none()
    }
}

fn r_of(rho: f64, m: usize) -> f64 {
    0.5 * (1.0 + 4.0 * rho * rho * (m * (m - 1)) as f64).sqrt()
}

pub fn spectral_quantities(m: usize, g1: f64, g2: f64) -> Result<SpectralQuantities> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("ladder level m = {m} < 2")));
    }
    let gg = g1 * g1 + g2 * g2;
    if gg == 0.0 {
        return Err(Error::InvalidParameter("both couplings vanish".into()));
    }
    let rho = 2.0 * g1 * g2 / gg;
    let r_m = r_of(rho, m);
    let base = m as f64 - 0.5;
    let l_plus = (base + r_m).sqrt();
    // m - 1/2 - R_m >= 0 analytically; clamp rounding noise at equal couplings
    let l_minus = (base - r_m).max(0.0).sqrt();
    let s = ((m * (m - 1)) as f64).sqrt();
    // (1 - 2R)/(2 rho s) rewritten without cancellation
    let v_plus = -2.0 * rho * s / (1.0 + 2.0 * r_m);
    let v_minus = (rho != 0.0).then(|| (1.0 + 2.0 * r_m) / (2.0 * rho * s));
    let r2 = r_of(rho, 2);
    Ok(SpectralQuantities {
        m,
        rho,
        r_m,
        l_plus,
        l_minus,
        v_plus,
        v_minus,
        r_plus: 0.5 * (2.0 + 1.0 / r2).sqrt(),
        r_minus: 0.5 * (2.0 - 1.0 / r2).max(0.0).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-14 * (1.0 + b.abs())
    }

    #[test]
    fn equal_couplings() {
        let s = spectral_quantities(2, 0.04, 0.04).unwrap();
        assert!(close(s.r_m, 1.5));
        assert!(close(s.l_plus, 3f64.sqrt()));
        assert_eq!(s.l_minus, 0.0);
        assert!(close(s.r_plus, (2.0f64 / 3.0).sqrt()));
        for m in 2..30 {
            let s = spectral_quantities(m, -0.03, -0.03).unwrap();
            assert!(close(s.r_m, m as f64 - 0.5));
            assert_eq!(s.l_minus, 0.0);
        }
    }

    #[test]
    fn single_atom() {
        let s = spectral_quantities(2, 0.04, 0.0).unwrap();
        assert_eq!(s.r_m, 0.5);
        assert!(close(s.l_plus, 2f64.sqrt()));
        assert!(close(s.l_minus, 1.0));
        assert_eq!(s.r_plus, 1.0);
        assert_eq!(s.r_minus, 0.0);
        assert!(s.v_singular());
        assert_eq!(s.v_plus, 0.0);
    }

    #[test]
    fn unequal_couplings() {
        let s = spectral_quantities(2, 0.04, 0.02).unwrap();
        assert!(close(s.rho, 0.8));
        assert!(close(s.r_m, 0.5 * (153.0f64 / 25.0).sqrt()));
        // independent evaluation of the unstable textbook form
        let root = 2f64.sqrt();
        assert!(close(s.v_plus, (1.0 - 2.0 * s.r_m) / (2.0 * 0.8 * root)));
        assert!(close(
            s.v_minus.unwrap(),
            (1.0 + 2.0 * s.r_m) / (2.0 * 0.8 * root)
        ));
        assert!(close(s.v_plus * s.v_minus.unwrap(), -1.0));
    }

    #[test]
    fn ordering_and_errors() {
        for (g1, g2) in [(0.04, 0.03), (0.01, -0.05), (1e-6, 0.04)] {
            for m in 2..20 {
                let s = spectral_quantities(m, g1, g2).unwrap();
                assert!(s.l_plus >= s.l_minus && s.l_minus >= 0.0);
            }
        }
        assert!(spectral_quantities(2, 0.0, 0.0).is_err());
        assert!(spectral_quantities(1, 0.1, 0.0).is_err());
    }

    #[test]
    fn branch_parse() {
        assert_eq!("+".parse::<Branch>().unwrap(), Branch::Plus);
        assert_eq!("minus".parse::<Branch>().unwrap(), Branch::Minus);
        assert!("x".parse::<Branch>().is_err());
    }
}
