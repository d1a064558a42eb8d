use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::stable_core::LatticeLaw;

/// Walk increment law and scenery law, with their stable indices.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ModelParams", into = "ModelParams")]
pub struct RwrsModel {
    walk: LatticeLaw,
    scenery: LatticeLaw,
    alpha: f64,
    beta: f64,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelParams {
    walk: LatticeLaw,
    scenery: LatticeLaw,
}

impl TryFrom<ModelParams> for RwrsModel {
    type Error = crate::Error;

    fn try_from(p: ModelParams) -> Result<Self> {
        RwrsModel::new(p.walk, p.scenery)
    }
}

impl From<RwrsModel> for ModelParams {
    fn from(m: RwrsModel) -> Self {
        ModelParams {
            walk: m.walk,
            scenery: m.scenery,
        }
    }
}

impl RwrsModel {
    /// Validates both laws. The indices `alpha` (walk) and `beta` (scenery)
    /// are those of the stable laws whose normal domains contain them.
    ///
    /// Every law on offer is symmetric, so the centering (index > 1) and the
    /// symmetry condition (index = 1) hold by construction. A Cauchy-domain
    /// scenery over a walk with `alpha <= 1` is rejected: no scaling limit is
    /// available there.
    pub fn new(walk: LatticeLaw, scenery: LatticeLaw) -> Result<Self> {
        walk.validate()?;
        scenery.validate()?;
        let alpha = walk.domain_index();
        let beta = scenery.domain_index();
        if beta == 1.0 && alpha <= 1.0 {
            return Err(invalid("scenery index 1 is excluded when the walk index is <= 1"));
        }
        Ok(RwrsModel {
            walk,
            scenery,
            alpha,
            beta,
        })
    }

    pub fn walk(&self) -> &LatticeLaw {
        &self.walk
    }

    pub fn scenery(&self) -> &LatticeLaw {
        &self.scenery
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Simple symmetric walk over a ±1 scenery.
    pub fn simple_rademacher() -> Self {
        Self::new(LatticeLaw::SimpleSymmetric, LatticeLaw::Rademacher).expect("valid")
    }
}

/// Occupation counts `N_n(y) = #{1 ≤ k ≤ n : S_k = y}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LocalTimeMap {
    counts: FxHashMap<i64, u64>,
    n: u64,
}

impl LocalTimeMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Counts of `S_1, …, S_n`.
    pub fn from_positions(positions: impl IntoIterator<Item = i64>) -> Self {
        let mut lt = Self::new();
        for s in positions {
            lt.record(s);
        }
        lt
    }

    /// Returns the count of `site` before this visit.
    #[inline]
    pub fn record(&mut self, site: i64) -> u64 {
        self.n += 1;
        let c = self.counts.entry(site).or_insert(0);
        *c += 1;
        *c - 1
    }

    pub fn get(&self, site: i64) -> u64 {
        self.counts.get(&site).copied().unwrap_or(0)
    }

    /// Number of recorded steps.
    pub fn steps(&self) -> u64 {
        self.n
    }

    pub fn distinct_sites(&self) -> usize {
        self.counts.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.counts.iter().map(|(&k, &v)| (k, v))
    }
}
