//! Two-photon resonances with both atoms resonant with the cavity.

use num_complex::Complex64 as C64;

use super::spectral::{spectral_quantities, Branch, SpectralQuantities};
use super::validity::{Assessed, Check, Margin};
use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::state::AmplitudeTable;

/// Amplitudes of the two-photon solution. Only `m <= 2` is populated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoPhotonAmplitudes {
    pub a0: C64,
    /// Slowly varying coefficient of the resonant dressed mode.
    pub f2: f64,
    pub a2: C64,
    pub b1: C64,
    pub c1: C64,
    pub d0: C64,
}

impl TwoPhotonAmplitudes {
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

/// Resonance shift `x = -alpha G L_2^beta / 2`.
pub fn two_photon_shift(g1: f64, g2: f64, alpha: Branch, beta: Branch) -> Result<f64> {
    let s = spectral_quantities(2, g1, g2)?;
    Ok(-alpha.sign() * (g1.hypot(g2)) * s.l(beta) / 2.0)
}

/// Resonance rate `q R_beta`, evaluated at the resonance shift.
pub fn two_photon_rate(params: &ModelParams, alpha: Branch, beta: Branch) -> Result<f64> {
    let x = two_photon_shift(params.g1, params.g2, alpha, beta)?;
    let s = spectral_quantities(2, params.g1, params.g2)?;
    Ok(params.with_x(x).q() * s.rate(beta))
}

/// Validity checks of a two-photon resonance; `s2`, `s4` are the spectral
/// quantities at `m = 2, 4`.
pub(crate) fn two_photon_checks(
    params: &ModelParams,
    q: f64,
    s2: &SpectralQuantities,
    s4: &SpectralQuantities,
    beta: Branch,
) -> Vec<Check> {
    let g = params.big_g();
    vec![
        Check::much_less("|eps| << G", params.epsilon, g, Margin::STANDARD),
        Check::much_less(
            "q << G |L4 - L2|",
            q,
            g * (s4.l(beta) - s2.l(beta)),
            Margin::STANDARD,
        ),
    ]
}

/// Resonant amplitudes at time `t` for the resonance `(alpha, beta)`.
///
/// The shift in `params` must sit on the resonance to within a small
/// fraction of the rate `q`.
pub fn two_photon_amplitudes(
    t: f64,
    params: &ModelParams,
    alpha: Branch,
    beta: Branch,
) -> Result<Assessed<TwoPhotonAmplitudes>> {
    if params.delta1 != 0.0 || params.delta2 != 0.0 {
        return Err(Error::WrongRegime(
            "two-photon resonances need resonant atoms".into(),
        ));
    }
    let (g1, g2) = (params.g1, params.g2);
    let s2 = spectral_quantities(2, g1, g2)?;
    let s4 = spectral_quantities(4, g1, g2)?;
    let x = two_photon_shift(g1, g2, alpha, beta)?;
    let q = params.with_x(x).q();
    if (params.x - x).abs() > 1e-3 * q.abs() {
        return Err(Error::WrongRegime(format!(
            "x = {} is off the two-photon resonance at {x}",
            params.x
        )));
    }
    let omega = alpha.sign() * params.big_g() * s2.l(beta);
    if omega == 0.0 {
        return Err(Error::WrongRegime(
            "resonance merged into the equal-coupling x = 0 resonance".into(),
        ));
    }
    let v = s2
        .v(beta)
        .ok_or(Error::Undefined("V_2^- for a single coupled atom"))?;
    let rate = s2.rate(beta);
    let a0 = C64::new((q * t * rate).cos(), 0.0);
    let f2 = rate * (q * t * rate).sin() / 2f64.sqrt();
    let a2 = C64::from_polar(f2, omega * t);
    // eigenvector of the q = 0 ladder at m = 2, normalised to a_2
    let root2 = 2f64.sqrt();
    let b1 = a2 * ((g1 * v - g2 * root2) / omega);
    let c1 = a2 * ((g2 * v - g1 * root2) / omega);
    let d0 = -a2 * v;
    let checks = two_photon_checks(params, q, &s2, &s4, beta);
    Ok(Assessed::new(
        TwoPhotonAmplitudes {
            a0,
            f2,
            a2,
            b1,
            c1,
            d0,
        },
        checks,
    ))
}
