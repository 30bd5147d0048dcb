use serde::Serialize;

use crate::state::AmplitudeTable;

/// Closed-form predictions at one instant. Quantities the regime does not
/// predict are `None`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct AnalyticRecord {
    pub time: f64,
    pub mean_n: Option<f64>,
    pub p_e1: Option<f64>,
    pub p_e2: Option<f64>,
    pub p_e1e2: Option<f64>,
    pub p_g1e2: Option<f64>,
    pub p_g1: Option<f64>,
    pub var_x_plus: Option<f64>,
    pub var_x_minus: Option<f64>,
    /// Probability of the field vacuum.
    pub p_vacuum: Option<f64>,
}

impl AnalyticRecord {
    pub fn empty(time: f64) -> Self {
        Self {
            time,
            ..Self::default()
        }
    }

    /// Photon number and atomic probabilities of an amplitude table.
    pub fn from_table(time: f64, table: &AmplitudeTable) -> Self {
        let w = |v: &[num_complex::Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>();
        let n = |v: &[num_complex::Complex64]| {
            v.iter()
                .enumerate()
                .map(|(m, z)| m as f64 * z.norm_sqr())
                .sum::<f64>()
        };
        let (pa, pb, pc, pd) = (w(&table.a), w(&table.b), w(&table.c), w(&table.d));
        let vac = [&table.a, &table.b, &table.c, &table.d]
            .iter()
            .map(|v| v[0].norm_sqr())
            .sum();
        Self {
            time,
            mean_n: Some(n(&table.a) + n(&table.b) + n(&table.c) + n(&table.d)),
            p_e1: Some(pc + pd),
            p_e2: Some(pb + pd),
            p_e1e2: Some(pd),
            p_g1e2: Some(pb),
            p_g1: Some(pa + pb),
            var_x_plus: None,
            var_x_minus: None,
            p_vacuum: Some(vac),
        }
    }
}
