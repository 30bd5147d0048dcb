//! Operational meaning of the "much smaller than" conditions that define
//! each regime.

use std::fmt;

use serde::Serialize;

use crate::observables::Verdict;

/// Ratio thresholds for a `small << large` condition.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Margin {
    pub pass: f64,
    pub warn: f64,
}

impl Margin {
    pub const STANDARD: Margin = Margin {
        pass: 10.0,
        warn: 5.0,
    };
    /// Used for the off-resonance condition of the double-excitation regime.
    pub const WIDE: Margin = Margin {
        pass: 50.0,
        warn: 25.0,
    };

    pub fn verdict(&self, ratio: f64) -> Verdict {
        if ratio >= self.pass {
            Verdict::Pass
        } else if ratio >= self.warn {
            Verdict::Warn
        } else {
            Verdict::Fail
        }
    }
}

impl Default for Margin {
    fn default() -> Self {
        Margin::STANDARD
    }
}

/// One evaluated validity condition.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub condition: String,
    /// `large / small`, or `+inf` when `small` vanishes.
    pub ratio: f64,
    pub margin: Margin,
    pub verdict: Verdict,
}

impl Check {
    /// `|small| << |large|`.
    pub fn much_less(condition: impl Into<String>, small: f64, large: f64, margin: Margin) -> Self {
        let ratio = if small == 0.0 {
            f64::INFINITY
        } else {
            large.abs() / small.abs()
        };
        Self {
            condition: condition.into(),
            ratio,
            margin,
            verdict: margin.verdict(ratio),
        }
    }

    /// The condition holds in the opposite direction, so the regime is not
    /// meaningful at all.
    pub fn reversed(&self) -> bool {
        self.ratio < 1.0
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (ratio {:.3}, {})",
            self.condition, self.ratio, self.verdict
        )
    }
}

/// `|delta_1| t << 1`: warn beyond 0.5, fail beyond 1.
pub fn horizon_check(delta1: f64, t: f64) -> Check {
    let product = (delta1 * t).abs();
    let verdict = if product > 1.0 {
        Verdict::Fail
    } else if product > 0.5 {
        Verdict::Warn
    } else {
        Verdict::Pass
    };
    Check {
        condition: "|delta1| t << 1".into(),
        ratio: if product == 0.0 {
            f64::INFINITY
        } else {
            1.0 / product
        },
        margin: Margin {
            pass: 2.0,
            warn: 1.0,
        },
        verdict,
    }
}

pub fn worst(checks: &[Check]) -> Verdict {
    checks
        .iter()
        .map(|c| c.verdict)
        .max()
        .unwrap_or(Verdict::Pass)
}

/// A result together with the validity checks that qualify it.
#[derive(Clone, Debug, PartialEq)]
pub struct Assessed<T> {
    pub value: T,
    pub checks: Vec<Check>,
}

impl<T> Assessed<T> {
    pub fn new(value: T, checks: Vec<Check>) -> Self {
        Self { value, checks }
    }

    pub fn verdict(&self) -> Verdict {
        worst(&self.checks)
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Assessed<U> {
        Assessed {
            value: f(self.value),
            checks: self.checks,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn margins() {
        let m = Margin::STANDARD;
        assert_eq!(Check::much_less("a", 1.0, 12.0, m).verdict, Verdict::Pass);
        assert_eq!(Check::much_less("a", 1.0, 7.0, m).verdict, Verdict::Warn);
        assert_eq!(Check::much_less("a", 1.0, 3.0, m).verdict, Verdict::Fail);
        assert_eq!(Check::much_less("a", 0.0, 3.0, m).verdict, Verdict::Pass);
        assert!(Check::much_less("a", 2.0, 1.0, m).reversed());
        assert_eq!(Check::much_less("a", -1.0, -10.0, m).ratio, 10.0);
    }

    #[test]
    fn horizon() {
        assert_eq!(horizon_check(0.004, 100.0).verdict, Verdict::Pass);
        assert_eq!(horizon_check(0.004, 150.0).verdict, Verdict::Warn);
        assert_eq!(horizon_check(-0.004, 300.0).verdict, Verdict::Fail);
    }
}
