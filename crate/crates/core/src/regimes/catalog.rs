//! Which resonances exist for a parameter set, and where.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::dispersive::{
    dispersive_checks, double_excitation_checks, double_excitation_shift, shift_or_zero,
    squeezing_shift, zeta_or_zero,
};
use super::mixed::{double_weak_checks, mixed_checks, mixed_shift};
use super::second_atom::{dressed_splitting, second_atom_checks, second_atom_shift};
use super::spectral::{spectral_quantities, Branch};
use super::two_photon::{two_photon_checks, two_photon_shift};
use super::validity::{worst, Check, Margin};
use crate::basis::Level;
use crate::error::{Error, Result};
use crate::observables::Verdict;
use crate::params::{Atom, ModelParams};

/// The two-photon branch with `R_-` below this is too slow to be useful.
pub const MIN_BRANCH_RATE: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegimeKind {
    EmptyCavity,
    TwoPhotonResonant { alpha: Branch, beta: Branch },
    EqualCouplingX0,
    SecondAtomDispersive(Branch),
    DispersiveSqueezing,
    DoubleExcitation,
    MixedResonantDispersive,
    DoubleWeak,
}

impl fmt::Display for RegimeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegimeKind::EmptyCavity => f.write_str("EMPTY_CAVITY"),
            RegimeKind::TwoPhotonResonant { alpha, beta } => {
                write!(f, "TWO_PHOTON_RESONANT({alpha},{beta})")
            }
            RegimeKind::EqualCouplingX0 => f.write_str("EQUAL_COUPLING_X0"),
            RegimeKind::SecondAtomDispersive(b) => write!(f, "SECOND_ATOM_DISPERSIVE({b})"),
            RegimeKind::DispersiveSqueezing => f.write_str("DISPERSIVE_SQUEEZING"),
            RegimeKind::DoubleExcitation => f.write_str("DOUBLE_EXCITATION"),
            RegimeKind::MixedResonantDispersive => f.write_str("MIXED_RESONANT_DISPERSIVE"),
            RegimeKind::DoubleWeak => f.write_str("DOUBLE_WEAK"),
        }
    }
}

impl FromStr for RegimeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidParameter(format!("unknown regime '{s}'"));
        let (name, args) = match s.find('(') {
            Some(i) if s.ends_with(')') => (&s[..i], Some(&s[i + 1..s.len() - 1])),
            Some(_) => return Err(bad()),
            None => (s, None),
        };
        let kind = match (name.to_ascii_uppercase().as_str(), args) {
            ("EMPTY_CAVITY", None) => RegimeKind::EmptyCavity,
            ("TWO_PHOTON_RESONANT", Some(a)) => {
                let (alpha, beta) = a.split_once(',').ok_or_else(bad)?;
                RegimeKind::TwoPhotonResonant {
                    alpha: alpha.parse()?,
                    beta: beta.parse()?,
                }
            }
            ("EQUAL_COUPLING_X0", None) => RegimeKind::EqualCouplingX0,
            ("SECOND_ATOM_DISPERSIVE", Some(b)) => RegimeKind::SecondAtomDispersive(b.parse()?),
            ("DISPERSIVE_SQUEEZING", None) => RegimeKind::DispersiveSqueezing,
            ("DOUBLE_EXCITATION", None) => RegimeKind::DoubleExcitation,
            ("MIXED_RESONANT_DISPERSIVE", None) => RegimeKind::MixedResonantDispersive,
            ("DOUBLE_WEAK", None) => RegimeKind::DoubleWeak,
            _ => return Err(bad()),
        };
        Ok(kind)
    }
}

impl Serialize for RegimeKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl RegimeKind {
    /// Resonance shift for the regime, if the parameters allow one.
    pub fn shift(&self, params: &ModelParams) -> Result<f64> {
        match *self {
            RegimeKind::EmptyCavity | RegimeKind::EqualCouplingX0 | RegimeKind::DoubleWeak => {
                Ok(0.0)
            }
            RegimeKind::TwoPhotonResonant { alpha, beta } => {
                two_photon_shift(params.g1, params.g2, alpha, beta)
            }
            RegimeKind::SecondAtomDispersive(b) => second_atom_shift(params, b),
            RegimeKind::DispersiveSqueezing => squeezing_shift(params),
            RegimeKind::DoubleExcitation => double_excitation_shift(params),
            RegimeKind::MixedResonantDispersive => mixed_shift(params),
        }
    }

    /// Initial state the closed-form solution assumes.
    pub fn initial_levels(&self) -> (Level, Level) {
        match self {
            RegimeKind::MixedResonantDispersive => (Level::Excited, Level::Ground),
            _ => (Level::Ground, Level::Ground),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Behavior {
    AtMostTwoPhotons,
    Multiphoton,
    AtomicExcitationsOnly,
}

impl fmt::Display for Behavior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Behavior::AtMostTwoPhotons => "at most two photons",
            Behavior::Multiphoton => "multiphoton generation",
            Behavior::AtomicExcitationsOnly => "atomic excitations only",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegimeDescriptor {
    pub kind: RegimeKind,
    pub x: f64,
    /// Characteristic growth or oscillation rate.
    pub rate: f64,
    pub behavior: Behavior,
    pub checks: Vec<Check>,
    /// Time beyond which the closed forms are no longer trusted.
    pub horizon: Option<f64>,
}

impl RegimeDescriptor {
    pub fn verdict(&self) -> Verdict {
        worst(&self.checks)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Omitted {
    pub regime: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Catalog {
    pub entries: Vec<RegimeDescriptor>,
    pub omitted: Vec<Omitted>,
}

impl Catalog {
    pub fn find(&self, kind: RegimeKind) -> Option<&RegimeDescriptor> {
        self.entries.iter().find(|e| e.kind == kind)
    }

    /// Entry whose shift matches `x` to within a small fraction of `q`.
    pub fn match_x(&self, x: f64, params: &ModelParams) -> Option<&RegimeDescriptor> {
        let tol = 1e-3 * params.with_x(x).q().abs();
        self.entries
            .iter()
            .filter(|e| (e.x - x).abs() <= tol)
            .min_by(|a, b| (a.x - x).abs().total_cmp(&(b.x - x).abs()))
    }

    fn omit(&mut self, regime: impl fmt::Display, reason: impl Into<String>) {
        self.omitted.push(Omitted {
            regime: regime.to_string(),
            reason: reason.into(),
        });
    }

    /// Adds the entry unless one of its conditions is reversed.
    fn offer(&mut self, entry: RegimeDescriptor) {
        if let Some(c) = entry.checks.iter().find(|c| c.reversed()) {
            let reason = format!(
                "condition {} is reversed (ratio {:.3})",
                c.condition, c.ratio
            );
            self.omit(entry.kind, reason);
        } else {
            self.entries.push(entry);
        }
    }
}

fn q_at(params: &ModelParams, x: f64) -> f64 {
    params.with_x(x).q()
}

/// Every regime whose structural preconditions hold for `params`.
pub fn resonance_catalog(params: &ModelParams) -> Catalog {
    let mut cat = Catalog::default();
    // Every accessor below is guarded by the structural conditions, so
    // failures here would be bugs; they are reported as omissions anyway.
    if let Err(e) = build(params, &mut cat) {
        cat.omit("catalog", e.to_string());
    }
    cat
}

fn build(p: &ModelParams, cat: &mut Catalog) -> Result<()> {
    let g = p.big_g();
    let resonant = p.delta1 == 0.0 && p.delta2 == 0.0;

    if g == 0.0 {
        cat.entries.push(RegimeDescriptor {
            kind: RegimeKind::EmptyCavity,
            x: 0.0,
            rate: 2.0 * p.with_x(0.0).q(),
            behavior: Behavior::Multiphoton,
            checks: Vec::new(),
            horizon: None,
        });
    } else {
        cat.omit(RegimeKind::EmptyCavity, "atoms are coupled");
    }

    // two-photon resonances
    if !resonant || g == 0.0 {
        cat.omit(
            "TWO_PHOTON_RESONANT",
            "needs coupled atoms with Delta1 = Delta2 = 0",
        );
    } else {
        let s2 = spectral_quantities(2, p.g1, p.g2)?;
        let s4 = spectral_quantities(4, p.g1, p.g2)?;
        for beta in Branch::BOTH {
            for alpha in Branch::BOTH {
                let kind = RegimeKind::TwoPhotonResonant { alpha, beta };
                if beta == Branch::Minus && s2.l_minus <= 1e-9 * s2.l_plus {
                    cat.omit(kind, "merged into EQUAL_COUPLING_X0");
                    continue;
                }
                if beta == Branch::Minus && s2.r_minus < MIN_BRANCH_RATE {
                    cat.omit(
                        kind,
                        format!("rate factor R- = {:.4} below {MIN_BRANCH_RATE}", s2.r_minus),
                    );
                    continue;
                }
                let x = two_photon_shift(p.g1, p.g2, alpha, beta)?;
                let q = q_at(p, x);
                cat.offer(RegimeDescriptor {
                    kind,
                    x,
                    rate: q * s2.rate(beta),
                    behavior: Behavior::AtMostTwoPhotons,
                    checks: two_photon_checks(p, q, &s2, &s4, beta),
                    horizon: None,
                });
            }
        }
    }

    let equal = g > 0.0 && (p.g1.abs() - p.g2.abs()).abs() <= 1e-12 * g;
    if resonant && equal {
        cat.offer(RegimeDescriptor {
            kind: RegimeKind::EqualCouplingX0,
            x: 0.0,
            rate: q_at(p, 0.0),
            behavior: Behavior::Multiphoton,
            checks: vec![Check::much_less(
                "|eps| << G",
                p.epsilon,
                g,
                Margin::STANDARD,
            )],
            horizon: None,
        });
    } else {
        cat.omit(
            RegimeKind::EqualCouplingX0,
            "needs |g1| = |g2| and resonant atoms",
        );
    }

    if p.delta1 == 0.0 && p.delta2 != 0.0 && p.g1 != 0.0 {
        let checks = second_atom_checks(p)?;
        let d2 = p.dispersive_shift(Atom::Two)?;
        let u = d2 / (2.0 * dressed_splitting(p)?);
        for b in Branch::BOTH {
            let x = second_atom_shift(p, b)?;
            cat.offer(RegimeDescriptor {
                kind: RegimeKind::SecondAtomDispersive(b),
                x,
                rate: q_at(p, x) * (1.0 + b.sign() * u).sqrt(),
                behavior: Behavior::AtMostTwoPhotons,
                checks: checks.clone(),
                horizon: None,
            });
        }
    } else {
        cat.omit(
            "SECOND_ATOM_DISPERSIVE",
            "needs Delta1 = 0, Delta2 != 0 and g1 != 0",
        );
    }

    let detuned = |a: Atom| p.coupling(a) == 0.0 || p.detuning(a) != 0.0;
    if g > 0.0 && detuned(Atom::One) && detuned(Atom::Two) {
        let x = squeezing_shift(p)?;
        let z = zeta_or_zero(p, Atom::One)?.powi(2) + zeta_or_zero(p, Atom::Two)?.powi(2);
        let d1 = shift_or_zero(p, Atom::One)?;
        cat.offer(RegimeDescriptor {
            kind: RegimeKind::DispersiveSqueezing,
            x,
            rate: 2.0 * q_at(p, x) * (1.0 - z),
            behavior: Behavior::Multiphoton,
            checks: dispersive_checks(p),
            horizon: (d1 != 0.0).then(|| 1.0 / d1.abs()),
        });
    } else {
        cat.omit(
            RegimeKind::DispersiveSqueezing,
            "needs every coupled atom detuned",
        );
    }

    if p.g1 != 0.0 && p.g2 != 0.0 && p.delta1 * p.delta2 < 0.0 {
        let x = double_excitation_shift(p)?;
        let rate = 2.0 * q_at(p, x) * p.zeta(Atom::One)? * p.zeta(Atom::Two)?;
        cat.offer(RegimeDescriptor {
            kind: RegimeKind::DoubleExcitation,
            x,
            rate,
            behavior: Behavior::AtomicExcitationsOnly,
            checks: double_excitation_checks(p)?,
            horizon: None,
        });
    } else {
        cat.omit(
            RegimeKind::DoubleExcitation,
            "needs coupled atoms with opposite detunings",
        );
    }

    if p.delta1 == 0.0 && p.g1 != 0.0 && p.delta2 != 0.0 && p.epsilon != 0.0 {
        let x = mixed_shift(p)?;
        let q = q_at(p, x);
        let xi1 = p.g1 / (2.0 * q);
        let z2 = zeta_or_zero(p, Atom::Two)?;
        cat.offer(RegimeDescriptor {
            kind: RegimeKind::MixedResonantDispersive,
            x,
            rate: 2.0 * q * (1.0 + xi1 * xi1 - z2 * z2),
            behavior: Behavior::Multiphoton,
            checks: mixed_checks(p),
            horizon: None,
        });
    } else {
        cat.omit(
            RegimeKind::MixedResonantDispersive,
            "needs Delta1 = 0, g1 != 0 and Delta2 != 0",
        );
    }

    if resonant && g > 0.0 {
        cat.offer(RegimeDescriptor {
            kind: RegimeKind::DoubleWeak,
            x: 0.0,
            rate: 2.0 * q_at(p, 0.0),
            behavior: Behavior::Multiphoton,
            checks: double_weak_checks(p),
            horizon: None,
        });
    } else {
        cat.omit(RegimeKind::DoubleWeak, "needs coupled resonant atoms");
    }
    Ok(())
}
