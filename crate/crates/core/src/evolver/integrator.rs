//! Explicit Runge–Kutta schemes for `dpsi/dt = F(t, psi)` with complex state.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Right-hand side of a linear Schrödinger-type equation.
pub trait Generator {
    fn dim(&self) -> usize;
    /// Writes `F(t, psi)` into `out`.
    fn apply(&self, t: f64, psi: &[C64], out: &mut [C64]);
}

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Integrator {
    /// Classical fourth-order Runge–Kutta with a fixed step.
    #[default]
    Rk4,
    /// Dormand–Prince 5(4) with error control.
    Adaptive { rtol: f64, atol: f64 },
}

fn axpy(y: &mut [C64], x: &[C64], h: f64, k: &[C64]) {
    for ((yi, xi), ki) in y.iter_mut().zip(x).zip(k) {
        *yi = xi + ki * h;
    }
}

/// Scratch space for the stepping routines.
pub struct Workspace {
    k: [Vec<C64>; 7],
    tmp: Vec<C64>,
    out: Vec<C64>,
}

impl Workspace {
    pub fn new(dim: usize) -> Self {
        let z = || vec![C64::new(0.0, 0.0); dim];
        Self {
            k: [z(), z(), z(), z(), z(), z(), z()],
            tmp: z(),
            out: z(),
        }
    }
}

/// One RK4 step of size `h` (which may be negative), in place.
pub fn rk4_step<G: Generator + ?Sized>(
    gen: &G,
    t: f64,
    h: f64,
    psi: &mut [C64],
    ws: &mut Workspace,
) {
    let [k1, k2, k3, k4, ..] = &mut ws.k;
    gen.apply(t, psi, k1);
    axpy(&mut ws.tmp, psi, 0.5 * h, k1);
    gen.apply(t + 0.5 * h, &ws.tmp, k2);
    axpy(&mut ws.tmp, psi, 0.5 * h, k2);
    gen.apply(t + 0.5 * h, &ws.tmp, k3);
    axpy(&mut ws.tmp, psi, h, k3);
    gen.apply(t + h, &ws.tmp, k4);
    let s = h / 6.0;
    for i in 0..psi.len() {
        psi[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * s;
    }
}

// Dormand–Prince tableau.
const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// fifth-order weights minus embedded fourth-order weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// One Dormand–Prince trial step. Leaves the candidate in `ws.out` and
/// returns the scaled error norm (accept when `<= 1`).
fn dopri_trial<G: Generator + ?Sized>(
    gen: &G,
    t: f64,
    h: f64,
    psi: &[C64],
    ws: &mut Workspace,
    rtol: f64,
    atol: f64,
) -> f64 {
    let n = psi.len();
    gen.apply(t, psi, &mut ws.k[0]);
    for s in 1..7 {
        for i in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for (j, a) in A[s][..s].iter().enumerate() {
                if *a != 0.0 {
                    acc += ws.k[j][i] * *a;
                }
            }
            ws.tmp[i] = psi[i] + acc * h;
        }
        gen.apply(t + C[s] * h, &ws.tmp, &mut ws.k[s]);
    }
    // stage 7 was evaluated at the fifth-order solution, which is ws.tmp
    ws.out.copy_from_slice(&ws.tmp);
    let mut err = 0.0;
    for i in 0..n {
        let mut e = C64::new(0.0, 0.0);
        for (j, w) in E.iter().enumerate() {
            e += ws.k[j][i] * *w;
        }
        let sc = atol + rtol * psi[i].norm().max(ws.out[i].norm());
        err += (e.norm() * h.abs() / sc).powi(2);
    }
    (err / n as f64).sqrt()
}

/// Advances `psi` from `t0` to `t1` (either direction).
pub fn integrate<G: Generator + ?Sized>(
    gen: &G,
    integrator: Integrator,
    t0: f64,
    t1: f64,
    dt: f64,
    psi: &mut [C64],
    ws: &mut Workspace,
) -> Result<()> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "time step must be positive, got {dt}"
        )));
    }
    let span = t1 - t0;
    if span == 0.0 {
        return Ok(());
    }
    match integrator {
        Integrator::Rk4 => {
            let steps = (span.abs() / dt).ceil().max(1.0) as usize;
            let h = span / steps as f64;
            for k in 0..steps {
                rk4_step(gen, t0 + k as f64 * h, h, psi, ws);
            }
            Ok(())
        }
        Integrator::Adaptive { rtol, atol } => {
            if !(rtol > 0.0 && atol > 0.0) {
                return Err(Error::InvalidParameter(
                    "tolerances must be positive".into(),
                ));
            }
            let dir = span.signum();
            let mut t = t0;
            let mut h = dt * dir;
            let mut rejects = 0usize;
            while (t1 - t) * dir > 0.0 {
                if (t + h - t1) * dir > 0.0 {
                    h = t1 - t;
                }
                let err = dopri_trial(gen, t, h, psi, ws, rtol, atol);
                if err <= 1.0 {
                    t += h;
                    psi.copy_from_slice(&ws.out);
                    rejects = 0;
                } else {
                    rejects += 1;
                    if rejects > 50 {
                        return Err(Error::Precondition(format!(
                            "adaptive step collapsed at t = {t}"
                        )));
                    }
                }
                let fac = if err == 0.0 {
                    5.0
                } else {
                    (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
                };
                h *= fac;
                if h.abs() > dt {
                    h = dt * dir;
                }
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two-level Rabi problem with `H = w sx`.
    struct Rabi(f64);

    impl Generator for Rabi {
        fn dim(&self) -> usize {
            2
        }
        fn apply(&self, _t: f64, psi: &[C64], out: &mut [C64]) {
            let mi = C64::new(0.0, -self.0);
            out[0] = mi * psi[1];
            out[1] = mi * psi[0];
        }
    }

    fn run(integ: Integrator, dt: f64, t1: f64) -> Vec<C64> {
        let g = Rabi(1.3);
        let mut psi = vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
        let mut ws = Workspace::new(2);
        integrate(&g, integ, 0.0, t1, dt, &mut psi, &mut ws).unwrap();
        psi
    }

    #[test]
    fn rk4_rabi() {
        let t = 7.0;
        let psi = run(Integrator::Rk4, 0.01, t);
        assert!((psi[0].re - (1.3 * t).cos()).abs() < 1e-8);
        assert!((psi[1].im + (1.3 * t).sin()).abs() < 1e-8);
    }

    #[test]
    fn rk4_order() {
        let exact = (1.3f64 * 3.0).cos();
        let e1 = (run(Integrator::Rk4, 0.1, 3.0)[0].re - exact).abs();
        let e2 = (run(Integrator::Rk4, 0.05, 3.0)[0].re - exact).abs();
        let ratio = e1 / e2;
        assert!(ratio > 12.0 && ratio < 20.0, "ratio {ratio}");
    }

    #[test]
    fn adaptive_rabi() {
        let psi = run(
            Integrator::Adaptive {
                rtol: 1e-10,
                atol: 1e-12,
            },
            0.5,
            7.0,
        );
        assert!((psi[0].re - (1.3f64 * 7.0).cos()).abs() < 1e-8);
    }

    #[test]
    fn backward_returns() {
        let g = Rabi(0.7);
        let mut psi = vec![C64::new(0.6, 0.0), C64::new(0.0, 0.8)];
        let start = psi.clone();
        let mut ws = Workspace::new(2);
        integrate(&g, Integrator::Rk4, 0.0, 5.0, 0.01, &mut psi, &mut ws).unwrap();
        integrate(&g, Integrator::Rk4, 5.0, 0.0, 0.01, &mut psi, &mut ws).unwrap();
        for (a, b) in psi.iter().zip(&start) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn rejects_bad_step() {
        let g = Rabi(1.0);
        let mut psi = vec![C64::new(1.0, 0.0); 2];
        let mut ws = Workspace::new(2);
        assert!(integrate(&g, Integrator::Rk4, 0.0, 1.0, 0.0, &mut psi, &mut ws).is_err());
    }
}
