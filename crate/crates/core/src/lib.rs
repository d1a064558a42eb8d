//! Simulation laboratory for the range of the randomly oriented lattice walk
//! (horizontal lines carry i.i.d. orientations) and of random walks in random
//! scenery.
//!
//! The crate is organised by subsystem:
//!
//! * [`stable_core`]: counter-based random streams, strictly stable samplers
//!   and integer laws in their normal domains of attraction.
//! * [`cp_walk`]: the oriented-lattice walk: annealed, quenched and
//!   skew-product simulation, exact small-horizon laws, range functionals.
//! * [`rwrs`]: random walk in random scenery: simulation, local times,
//!   self-intersections, ranges, normalizers and exact small-horizon laws.
//! * [`limit_process`]: discretized stable paths, occupation-density local
//!   time and the Kesten–Spitzer integral, with sup/inf functionals.
//! * [`mc_harness`]: declarative Monte Carlo experiments with deterministic,
//!   order-independent reduction, escape estimates and log–log fits.
//! * [`cli`]: JSON-configured front end writing CSV/JSON results.

pub mod cli;
pub mod cp_walk;
pub mod error;
pub mod field;
pub mod limit_process;
pub mod mc_harness;
pub mod rwrs;
pub mod stable_core;

pub use error::{Error, Result};
