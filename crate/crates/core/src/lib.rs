//! Two atoms in a cavity with a harmonically modulated frequency: full
//! numerical evolution, closed-form resonance solutions, and a harness
//! comparing the two.

pub mod basis;
pub mod error;
pub mod evolver;
pub mod observables;
pub mod operators;
pub mod params;
pub mod regimes;
pub mod sparse;
pub mod state;

pub use basis::{BasisIndex, BasisLabel, Level};
pub use error::{Error, Result};
pub use evolver::{evolve, EvolverOptions, Trajectory};
pub use observables::{ObservableRecord, Verdict};
pub use operators::OperatorSet;
pub use params::{Atom, ModelParams};
pub use state::{Frame, StateVector};

/// Library version, recorded in output files.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
