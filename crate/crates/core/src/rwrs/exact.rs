//! Exact laws of `Z_n` for finite-support laws on {-1, 0, 1}.
//!
//! Given the walk, `Z_n = Σ_y ξ_y N_n(y)` is a sum of independent terms, so
//! the law of `Z_n` only depends on the multiset of nonzero local times:
//! walk paths are grouped by that multiset and each group is convolved once.
//! The no-return probability depends on the order of visits and is computed
//! by a forward recursion that draws each site's scenery on first visit.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;

use super::RwrsModel;
use crate::error::{Error, Result};
use crate::stable_core::LatticeLaw;

pub const RWRS_HORIZON_CAP: usize = 12;

const SITE_OFFSET: i64 = RWRS_HORIZON_CAP as i64;

fn nearest_neighbour_support(law: &LatticeLaw, role: &str) -> Result<Vec<(i64, f64)>> {
    let support = law
        .support()
        .ok_or_else(|| Error::InfiniteSupport(format!("{role} law {law:?}")))?;
    if support.iter().any(|&(k, _)| k.abs() > 1) {
        return Err(Error::InfiniteSupport(format!("{role} law must live on {{-1,0,1}}")));
    }
    Ok(support)
}

fn check_horizon(n: usize) -> Result<()> {
    if n > RWRS_HORIZON_CAP {
        Err(Error::HorizonTooLarge {
            n,
            cap: RWRS_HORIZON_CAP,
        })
    } else {
        Ok(())
    }
}

/// Law of `Z_n`.
pub fn exact_rwrs_law(model: &RwrsModel, n: usize) -> Result<BTreeMap<i64, f64>> {
    let walk = nearest_neighbour_support(model.walk(), "walk")?;
    let scenery = nearest_neighbour_support(model.scenery(), "scenery")?;
    check_horizon(n)?;

    let mut groups: FxHashMap<Vec<u32>, f64> = FxHashMap::default();
    let mut counts = vec![0u32; 2 * RWRS_HORIZON_CAP + 1];
    collect_local_times(&walk, n, 0, 1.0, &mut counts, &mut groups);

    let mut law: BTreeMap<i64, f64> = BTreeMap::new();
    for (multiset, weight) in groups {
        let mut dist: BTreeMap<i64, f64> = BTreeMap::from([(0, 1.0)]);
        for &c in &multiset {
            let mut next = BTreeMap::new();
            for (&z, &w) in &dist {
                for &(xi, q) in &scenery {
                    *next.entry(z + xi * c as i64).or_insert(0.0) += w * q;
                }
            }
            dist = next;
        }
        for (z, w) in dist {
            *law.entry(z).or_insert(0.0) += weight * w;
        }
    }
    Ok(law)
}

fn collect_local_times(
    walk: &[(i64, f64)],
    remaining: usize,
    site: i64,
    weight: f64,
    counts: &mut [u32],
    groups: &mut FxHashMap<Vec<u32>, f64>,
) {
    if remaining == 0 {
        let mut key: Vec<u32> = counts.iter().copied().filter(|&c| c > 0).collect();
        key.sort_unstable();
        *groups.entry(key).or_insert(0.0) += weight;
        return;
    }
    for &(dx, q) in walk {
        let next = site + dx;
        let idx = (next + SITE_OFFSET) as usize;
        counts[idx] += 1;
        collect_local_times(walk, remaining - 1, next, weight * q, counts, groups);
        counts[idx] -= 1;
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct State {
    s: i8,
    z: i16,
    drawn: u32,
    /// Two bits per drawn site: scenery value + 1.
    values: u64,
}

/// `P(Z_j ≠ 0 for 1 ≤ j ≤ horizon)`.
pub fn exact_no_return_z(model: &RwrsModel, horizon: usize) -> Result<f64> {
    let walk = nearest_neighbour_support(model.walk(), "walk")?;
    let scenery = nearest_neighbour_support(model.scenery(), "scenery")?;
    check_horizon(horizon)?;

    let mut states: FxHashMap<State, f64> = FxHashMap::default();
    states.insert(
        State {
            s: 0,
            z: 0,
            drawn: 0,
            values: 0,
        },
        1.0,
    );
    for _ in 0..horizon {
        let mut next: FxHashMap<State, f64> = FxHashMap::default();
        for (st, w) in &states {
            for &(dx, q) in &walk {
                let s = st.s + dx as i8;
                let slot = (s as i64 + SITE_OFFSET) as u32;
                let bit = 1u32 << slot;
                let mut push = |xi: i64, drawn: u32, values: u64, weight: f64| {
                    let z = st.z + xi as i16;
                    if z != 0 {
                        *next
                            .entry(State {
                                s,
                                z,
                                drawn,
                                values,
                            })
                            .or_insert(0.0) += weight;
                    }
                };
                if st.drawn & bit != 0 {
                    let xi = ((st.values >> (2 * slot)) & 3) as i64 - 1;
                    push(xi, st.drawn, st.values, w * q);
                } else {
                    for &(xi, r) in &scenery {
                        let values = st.values | (((xi + 1) as u64) << (2 * slot));
                        push(xi, st.drawn | bit, values, w * q * r);
                    }
                }
            }
        }
        states = next;
    }
    Ok(states.values().sum())
}
