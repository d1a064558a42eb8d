//! The walk on Z² whose horizontal lines carry i.i.d. orientations.
//!
//! Given the orientations `ε_y ∈ {±1}`, the walk moves from `(x, y)` to
//! `(x + ε_y, y)` with probability `p` and to `(x, y ± 1)` with probability
//! `(1 - p)/2` each. The annealed law integrates over the orientations.

mod env;
mod exact;
mod path;
mod range;
mod simulate;

pub use env::Environment;
pub use exact::{
    enumerate_quenched_paths, exact_annealed_law, exact_no_return_probabilities,
    exact_no_return_probability, exact_return_probabilities, exact_return_probability,
    EXACT_HORIZON_CAP,
};
pub use path::{CpPath, StepKind};
pub use range::{
    first_coordinate_decomposition, horizontal_local_time, range_first_coordinate, range_sites,
    vertical_local_time, HorizontalLocalTime, SiteSet,
};
pub use simulate::{
    annealed_trial, simulate_annealed, simulate_quenched, skew_product_path, validate_p,
    CpWalker, SkewProduct,
};
