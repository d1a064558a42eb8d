//! Random walk in random scenery: `Z_n = ξ_{S_1} + … + ξ_{S_n}`.
//!
//! `S` is a walk with i.i.d. integer increments and `ξ` an i.i.d. integer
//! field on Z, realized lazily per site.

mod exact;
mod functionals;
mod model;
mod simulate;

pub use exact::{exact_no_return_z, exact_rwrs_law, RWRS_HORIZON_CAP};
pub use functionals::{
    exponent_delta, normalizer_a, range_z, self_intersections, v_beta, z_self_intersections,
    z_spread,
};
pub use model::{LocalTimeMap, RwrsModel};
pub use simulate::{rwrs_trial, simulate_rwrs, RwrsPath, RwrsWalker, ZPath};
