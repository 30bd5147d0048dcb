//! Slow multiphoton flow of the equal-coupling resonance at `x = 0`.
//!
//! `dY_m/dt = q [A_m Y_{m-2} - B_m Y_{m+2}]` on even `m`, with
//! `A_m = sqrt(m(m-1)) (2m-3)/(2m-1)` and
//! `B_m = sqrt((m+1)(m+2)) (m-1)/(m+1) (2m+1)/(2m-1)`.
//! Replacing both fractions by one gives the Fock-amplitude flow of the
//! empty cavity.

use crate::error::{Error, Result};
use crate::state::AmplitudeTable;

use num_complex::Complex64 as C64;

/// Largest `q dt` used when integrating the flow.
pub const MAX_Q_DT: f64 = 1e-3;
/// Tolerated weight on the last retained level.
pub const FLOW_TAIL_LIMIT: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlowVariant {
    /// Two equally coupled resonant atoms.
    Atoms,
    /// Fractions replaced by one.
    EmptyCavity,
}

/// `(A_m, B_m)` for even `m`.
pub fn flow_coefficients(m: usize, variant: FlowVariant) -> (f64, f64) {
    let mf = m as f64;
    let up = ((mf + 1.0) * (mf + 2.0)).sqrt();
    let down = (mf * (mf - 1.0)).sqrt();
    match variant {
        FlowVariant::EmptyCavity => (down, up),
        FlowVariant::Atoms => {
            let a = down * (2.0 * mf - 3.0) / (2.0 * mf - 1.0);
            let b = up * (mf - 1.0) / (mf + 1.0) * (2.0 * mf + 1.0) / (2.0 * mf - 1.0);
            (a, b)
        }
    }
}

/// Weight `w_m` with `sum_m w_m Y_m^2` equal to the physical norm.
pub fn norm_weight(m: usize) -> f64 {
    if m == 0 {
        1.0
    } else {
        (2.0 * m as f64 - 1.0) / (m as f64 - 1.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SlowFlowState {
    pub time: f64,
    /// `Y_m` for `m = 0..=m_max`; odd entries are zero.
    pub y: Vec<f64>,
    /// `g2 / g1`, either `+1` or `-1`.
    pub r: f64,
    pub variant: FlowVariant,
}

impl SlowFlowState {
    pub fn m_max(&self) -> usize {
        self.y.len() - 1
    }

    /// Conserved norm of the flow.
    pub fn norm(&self) -> f64 {
        match self.variant {
            FlowVariant::Atoms => self
                .y
                .iter()
                .enumerate()
                .step_by(2)
                .map(|(m, y)| norm_weight(m) * y * y)
                .sum(),
            FlowVariant::EmptyCavity => self.y.iter().map(|y| y * y).sum(),
        }
    }

    /// Mean photon number implied by the flow.
    pub fn mean_photon(&self) -> f64 {
        match self.variant {
            FlowVariant::Atoms => reconstruct_state_from_flow(self).map_or(f64::NAN, |t| {
                crate::regimes::AnalyticRecord::from_table(self.time, &t)
                    .mean_n
                    .unwrap_or(f64::NAN)
            }),
            FlowVariant::EmptyCavity => self
                .y
                .iter()
                .enumerate()
                .map(|(m, y)| m as f64 * y * y)
                .sum(),
        }
    }
}

fn derivative(y: &[f64], q: f64, coeffs: &[(f64, f64)], out: &mut [f64]) {
    let n = y.len();
    for m in (0..n).step_by(2) {
        let (a, b) = coeffs[m];
        let lower = if m >= 2 { a * y[m - 2] } else { 0.0 };
        let upper = if m + 2 < n { b * y[m + 2] } else { 0.0 };
        out[m] = q * (lower - upper);
    }
}

/// Integrates the flow from `Y_m(0) = r delta_{m0}` and returns
/// `samples + 1` states evenly spaced over `[0, t_final]`.
pub fn equal_coupling_flow(
    t_final: f64,
    q: f64,
    m_max: usize,
    r: f64,
    samples: usize,
    variant: FlowVariant,
) -> Result<Vec<SlowFlowState>> {
    if !(t_final >= 0.0) || samples == 0 {
        return Err(Error::InvalidParameter(
            "need t_final >= 0 and at least one sample".into(),
        ));
    }
    let times: Vec<f64> = (0..=samples)
        .map(|s| t_final * s as f64 / samples as f64)
        .collect();
    equal_coupling_flow_at(&times, q, m_max, r, variant)
}

/// Flow states at the given nondecreasing times.
pub fn equal_coupling_flow_at(
    times: &[f64],
    q: f64,
    m_max: usize,
    r: f64,
    variant: FlowVariant,
) -> Result<Vec<SlowFlowState>> {
    if m_max % 2 != 0 || m_max < 20 {
        return Err(Error::InvalidParameter(format!(
            "m_max must be even and at least 20, got {m_max}"
        )));
    }
    if !(q > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "flow rate q must be positive, got {q}"
        )));
    }
    if r != 1.0 && r != -1.0 {
        return Err(Error::InvalidParameter(format!(
            "coupling ratio must be +1 or -1, got {r}"
        )));
    }
    let coeffs: Vec<_> = (0..=m_max).map(|m| flow_coefficients(m, variant)).collect();
    let n = m_max + 1;
    let mut y = vec![0.0; n];
    y[0] = r;
    let (mut k1, mut k2, mut k3, mut k4, mut tmp) = (
        vec![0.0; n],
        vec![0.0; n],
        vec![0.0; n],
        vec![0.0; n],
        vec![0.0; n],
    );
    let mut now = 0.0;
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        if !(t >= now) {
            return Err(Error::InvalidParameter(
                "flow times must be nondecreasing and >= 0".into(),
            ));
        }
        let span = t - now;
        let sub = ((q * span / MAX_Q_DT).ceil() as usize).max(1);
        let h = span / sub as f64;
        for _ in 0..sub {
            if h == 0.0 {
                break;
            }
            derivative(&y, q, &coeffs, &mut k1);
            for i in 0..n {
                tmp[i] = y[i] + 0.5 * h * k1[i];
            }
            derivative(&tmp, q, &coeffs, &mut k2);
            for i in 0..n {
                tmp[i] = y[i] + 0.5 * h * k2[i];
            }
            derivative(&tmp, q, &coeffs, &mut k3);
            for i in 0..n {
                tmp[i] = y[i] + h * k3[i];
            }
            derivative(&tmp, q, &coeffs, &mut k4);
            for i in 0..n {
                y[i] += h / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
            }
        }
        now = t;
        let tail = y[m_max] * y[m_max];
        if tail > FLOW_TAIL_LIMIT {
            return Err(Error::FlowTail {
                t,
                tail,
                limit: FLOW_TAIL_LIMIT,
                m_max,
            });
        }
        out.push(SlowFlowState {
            time: t,
            y: y.clone(),
            r,
            variant,
        });
    }
    Ok(out)
}

/// Amplitudes `a_m = r Y_m`, `b = c = 0`, `d_{m-2} = -sqrt(m/(m-1)) Y_m`.
pub fn reconstruct_state_from_flow(flow: &SlowFlowState) -> Result<AmplitudeTable> {
    if flow.variant != FlowVariant::Atoms {
        return Err(Error::WrongRegime(
            "empty-cavity flow has no atomic amplitudes".into(),
        ));
    }
    let m_max = flow.m_max();
    let mut t = AmplitudeTable::zeros(m_max);
    for (m, &y) in flow.y.iter().enumerate() {
        t.a[m] = C64::new(flow.r * y, 0.0);
        if m >= 2 {
            t.d[m - 2] = C64::new(-(m as f64 / (m as f64 - 1.0)).sqrt() * y, 0.0);
        }
    }
    Ok(t)
}
