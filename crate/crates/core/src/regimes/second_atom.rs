//! Resonant atom 1 with a far-detuned atom 2.

use num_complex::Complex64 as C64;

use super::spectral::Branch;
use super::validity::{Assessed, Check, Margin};
use crate::error::{Error, Result};
use crate::params::{Atom, ModelParams};
use crate::state::AmplitudeTable;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SecondAtomAmplitudes {
    pub a0: C64,
    pub a2: C64,
    pub b1: C64,
    pub c1: C64,
    pub d0: C64,
    /// Coefficient of the `e^{-i G2 t}` mode.
    pub w: f64,
    /// Coefficient of the `e^{+i G2 t}` mode.
    pub x: f64,
}

impl SecondAtomAmplitudes {
    pub fn table(&self) -> AmplitudeTable {
        let mut t = AmplitudeTable::zeros(2);
        t.a[0] = self.a0;
        t.a[2] = self.a2;
        t.b[1] = self.b1;
        t.c[1] = self.c1;
        t.d[0] = self.d0;
        t
    }
}

/// `G2 = sqrt(2 g1^2 + delta2^2 / 4)`.
pub fn dressed_splitting(params: &ModelParams) -> Result<f64> {
    let d2 = params.dispersive_shift(Atom::Two)?;
    Ok((2.0 * params.g1 * params.g1 + 0.25 * d2 * d2).sqrt())
}

/// `x = (3 delta2 / 2 +- G2) / 2`.
pub fn second_atom_shift(params: &ModelParams, branch: Branch) -> Result<f64> {
    let d2 = params.dispersive_shift(Atom::Two)?;
    Ok(0.5 * (1.5 * d2 + branch.sign() * dressed_splitting(params)?))
}

pub(crate) fn second_atom_checks(params: &ModelParams) -> Result<Vec<Check>> {
    let d2 = params.dispersive_shift(Atom::Two)?;
    Ok(vec![
        Check::much_less(
            "|g2| << |Delta2|",
            params.g2,
            params.delta2,
            Margin::STANDARD,
        ),
        Check::much_less("|delta2| << |g1|", d2, params.g1, Margin::STANDARD),
        Check::much_less(
            "|eps| << G2",
            params.epsilon,
            dressed_splitting(params)?,
            Margin::STANDARD,
        ),
    ])
}

pub fn second_atom_dispersive_amplitudes(
    t: f64,
    params: &ModelParams,
    branch: Branch,
) -> Result<Assessed<SecondAtomAmplitudes>> {
    if params.delta1 != 0.0 {
        return Err(Error::WrongRegime("atom 1 must be resonant".into()));
    }
    if params.g1 == 0.0 {
        return Err(Error::WrongRegime("atom 1 must be coupled".into()));
    }
    let d2 = params.dispersive_shift(Atom::Two)?;
    let zeta2 = params.zeta(Atom::Two)?;
    let g2s = dressed_splitting(params)?;
    let shift = second_atom_shift(params, branch)?;
    let q = params.with_x(shift).q();
    if (params.x - shift).abs() > 1e-3 * q.abs() {
        return Err(Error::WrongRegime(format!(
            "x = {} is off the resonance at {shift}",
            params.x
        )));
    }
    let u = d2 / (2.0 * g2s);
    let k = (1.0 + branch.sign() * u).sqrt();
    let a0 = C64::new((q * t * k).cos(), 0.0);
    let amp = k / 2f64.sqrt() * (q * t * k).sin();
    let (w, x) = match branch {
        Branch::Plus => (amp, 0.0),
        Branch::Minus => (0.0, amp),
    };
    let slow = C64::from_polar(1.0, -1.5 * d2 * t);
    let down = C64::from_polar(1.0, -g2s * t);
    let up = down.conj();
    let a2 = slow * (down * w + up * x);
    let c1 =
        slow * g2s / (2f64.sqrt() * params.g1) * (down * (w * (1.0 - u)) - up * (x * (1.0 + u)));
    let rot = C64::from_polar(zeta2, -params.delta2 * t);
    let b1 = rot * 2f64.sqrt() * a2;
    let d0 = rot * c1;
    Ok(Assessed::new(
        SecondAtomAmplitudes {
            a0,
            a2,
            b1,
            c1,
            d0,
            w,
            x,
        },
        second_atom_checks(params)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::observables::Verdict;

    fn params(branch: Branch) -> ModelParams {
        let p = ModelParams::new(2e-3, 0.0, 0.04, 0.003, 0.0, 0.2).unwrap();
        p.with_x(second_atom_shift(&p, branch).unwrap())
    }

    #[test]
    fn initial_values() {
        let a = second_atom_dispersive_amplitudes(0.0, &params(Branch::Plus), Branch::Plus)
            .unwrap()
            .value;
        assert_eq!(a.a0, C64::new(1.0, 0.0));
        for z in [a.a2, a.b1, a.c1, a.d0] {
            assert_eq!(z, C64::new(0.0, 0.0));
        }
    }

    #[test]
    fn norm_to_second_order() {
        for branch in Branch::BOTH {
            let p = params(branch);
            let zeta2 = p.zeta(Atom::Two).unwrap();
            for t in [100.0, 800.0, 1500.0, 3100.0] {
                let a = second_atom_dispersive_amplitudes(t, &p, branch).unwrap();
                // resonant pair carries exactly sin^2
                let s = a.value.a2.norm_sqr() + a.value.c1.norm_sqr();
                assert!((s + a.value.a0.norm_sqr() - 1.0).abs() < 1e-13);
                let n = a.value.table().norm_sqr();
                assert!((n - 1.0).abs() <= 2.0 * zeta2 * zeta2);
            }
        }
    }

    #[test]
    fn b1_ratio() {
        let p = params(Branch::Minus);
        let zeta2 = p.zeta(Atom::Two).unwrap();
        let a = second_atom_dispersive_amplitudes(777.0, &p, Branch::Minus).unwrap();
        assert!((a.value.b1.norm() / a.value.a2.norm() - 2f64.sqrt() * zeta2.abs()).abs() < 1e-14);
        assert_eq!(a.verdict(), Verdict::Pass);
    }

    #[test]
    fn requires_resonant_first_atom() {
        let p = params(Branch::Plus);
        let mut bad = p;
        bad.delta1 = 0.1;
        assert!(second_atom_dispersive_amplitudes(1.0, &bad, Branch::Plus).is_err());
        assert!(second_atom_dispersive_amplitudes(1.0, &p.with_x(0.0), Branch::Plus).is_err());
    }
}
