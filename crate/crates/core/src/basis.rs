//! Flat indexing of the product space atom 1 ⊗ atom 2 ⊗ Fock(0..=n_max).
//!
//! Ordering: atom 1 outermost, then atom 2, photon number fastest. With
//! `g = 0`, `e = 1` the four atomic blocks are, in order,
//! `|g g m>`, `|g e m>`, `|e g m>`, `|e e m>`.

use std::fmt;

use crate::error::{Error, Result};

/// Two-level atom state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Level {
    Ground,
    Excited,
}

impl Level {
    pub const ALL: [Level; 2] = [Level::Ground, Level::Excited];

    fn bit(self) -> usize {
        match self {
            Level::Ground => 0,
            Level::Excited => 1,
        }
    }

    fn from_bit(b: usize) -> Self {
        if b == 0 {
            Level::Ground
        } else {
            Level::Excited
        }
    }

    /// Eigenvalue of sigma_z: -1 for ground, +1 for excited.
    pub fn sigma_z(self) -> f64 {
        match self {
            Level::Ground => -1.0,
            Level::Excited => 1.0,
        }
    }

    pub fn excitations(self) -> usize {
        self.bit()
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Ground => "g",
            Level::Excited => "e",
        })
    }
}

impl std::str::FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "g" | "ground" => Ok(Level::Ground),
            "e" | "excited" => Ok(Level::Excited),
            other => Err(Error::InvalidParameter(format!(
                "unknown atomic level '{other}' (expected g or e)"
            ))),
        }
    }
}

/// Labels of one basis vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BasisLabel {
    pub atom1: Level,
    pub atom2: Level,
    pub photons: usize,
}

impl BasisLabel {
    /// Total excitation number `m + (#excited atoms)`.
    pub fn excitation_number(&self) -> usize {
        self.photons + self.atom1.excitations() + self.atom2.excitations()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisIndex {
    n_max: usize,
}

impl BasisIndex {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max < 2 {
            return Err(Error::TruncationTooSmall(n_max));
        }
        Ok(Self { n_max })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Number of Fock levels, `n_max + 1`.
    pub fn fock_dim(&self) -> usize {
        self.n_max + 1
    }

    pub fn dim(&self) -> usize {
        4 * self.fock_dim()
    }

    /// Offset of the atomic block `(s1, s2)`.
    pub fn block_offset(&self, atom1: Level, atom2: Level) -> usize {
        (2 * atom1.bit() + atom2.bit()) * self.fock_dim()
    }

    /// Flat index. Panics if `m > n_max`; use [`BasisIndex::try_index`] for
    /// unchecked input.
    pub fn index(&self, atom1: Level, atom2: Level, m: usize) -> usize {
        assert!(m <= self.n_max, "Fock level {m} > n_max {}", self.n_max);
        self.block_offset(atom1, atom2) + m
    }

    pub fn try_index(&self, atom1: Level, atom2: Level, m: usize) -> Result<usize> {
        if m > self.n_max {
            return Err(Error::FockOutOfRange {
                m,
                n_max: self.n_max,
            });
        }
        Ok(self.index(atom1, atom2, m))
    }

    pub fn label(&self, index: usize) -> BasisLabel {
        assert!(index < self.dim());
        let block = index / self.fock_dim();
        BasisLabel {
            atom1: Level::from_bit(block >> 1),
            atom2: Level::from_bit(block & 1),
            photons: index % self.fock_dim(),
        }
    }

    pub fn labels(&self) -> impl Iterator<Item = BasisLabel> + '_ {
        (0..self.dim()).map(move |i| self.label(i))
    }

    /// The four atomic configurations in block order.
    pub fn atomic_blocks() -> [(Level, Level); 4] {
        use Level::*;
        [
            (Ground, Ground),
            (Ground, Excited),
            (Excited, Ground),
            (Excited, Excited),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Level::*;

    #[test]
    fn dimensions() {
        assert_eq!(BasisIndex::new(2).unwrap().dim(), 12);
        assert_eq!(BasisIndex::new(150).unwrap().dim(), 604);
    }

    #[test]
    fn rejects_small_truncation() {
        assert!(matches!(
            BasisIndex::new(1),
            Err(Error::TruncationTooSmall(1))
        ));
    }

    #[test]
    fn round_trip_single() {
        let b = BasisIndex::new(5).unwrap();
        let i = b.index(Ground, Excited, 3);
        let l = b.label(i);
        assert_eq!((l.atom1, l.atom2, l.photons), (Ground, Excited, 3));
    }

    #[test]
    fn round_trip_all() {
        let b = BasisIndex::new(7).unwrap();
        for i in 0..b.dim() {
            let l = b.label(i);
            assert_eq!(b.index(l.atom1, l.atom2, l.photons), i);
        }
    }

    #[test]
    fn ordering_is_documented() {
        let b = BasisIndex::new(3).unwrap();
        assert_eq!(b.index(Ground, Ground, 0), 0);
        assert_eq!(b.index(Ground, Excited, 0), 4);
        assert_eq!(b.index(Excited, Ground, 0), 8);
        assert_eq!(b.index(Excited, Excited, 3), 15);
    }

    #[test]
    fn out_of_range() {
        let b = BasisIndex::new(3).unwrap();
        assert!(b.try_index(Ground, Ground, 4).is_err());
    }
}
