//! Configuration files, runs, sweeps and resonance tables on top of `dce-core`.

pub mod config;
pub mod error;
pub mod resonances;
pub mod run;
pub mod sweep;

pub use config::{
    parse_config, parse_config_str, parse_model, parse_model_str, Comparison, Config, InitialState,
    Parsed, RunSpec, SweepSpec,
};
pub use error::{ExitStatus, HarnessError, Result};
pub use resonances::{list_resonances, resonance_csv, resonance_table};
pub use run::{run, DeviationSummary, RunReport};
pub use sweep::{sweep, SweepReport};
