//! Command-line front end.
//!
//! * `run --config PATH` writes `results.csv` and `summary.json`.
//! * `exact cp-law | cp-escape | cp-return | rwrs-law | rwrs-escape` prints
//!   exact small-horizon values.
//! * `scaling --config PATH` fits log–log slopes and prints a JSON report.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 configuration error,
//! 3 resource or enumeration cap exceeded.

mod commands;
mod config;

pub use commands::{exit_code, run};
pub use config::{apply_override, load_config, Config, OutputConfig, ScalingInput};
