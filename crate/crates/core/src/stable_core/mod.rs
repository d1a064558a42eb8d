//! Random streams and the laws sampled from them.
//!
//! Everything random in the crate is a pure function of an [`RngStream`], and
//! streams are addressed by `(master_seed, stream_id)`, so any site of an
//! environment or scenery can be realized in any order with the same result.

mod lattice;
mod rng;
mod stable;

pub use lattice::{riemann_zeta, LatticeLaw};
pub use rng::{derive_stream, RngStream};
pub use stable::{sample_stable, StableLaw};

/// One draw of `law` from `rng`.
pub fn sample_lattice(law: &LatticeLaw, rng: &mut RngStream) -> i64 {
    law.sample(rng)
}
