use std::collections::BTreeMap;

use super::{LocalTimeMap, RwrsModel};
use crate::field::LazyField;
use crate::stable_core::{derive_stream, RngStream};

/// `Z_0 = 0, Z_1, …, Z_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPath {
    pub values: Vec<i64>,
}

impl ZPath {
    pub fn steps(&self) -> usize {
        self.values.len() - 1
    }

    pub fn end(&self) -> i64 {
        *self.values.last().expect("Z_0 is always present")
    }
}

/// Joint realization of walk, scenery and the summed process.
#[derive(Clone, Debug)]
pub struct RwrsPath {
    /// `S_0 = 0, …, S_n`.
    pub walk: Vec<i64>,
    pub z: ZPath,
    pub local_time: LocalTimeMap,
    /// Scenery values on the sites `S_1, …, S_n`.
    pub scenery: BTreeMap<i64, i64>,
}

/// Streaming walker; the scenery at a site is drawn from stream
/// `(scenery_seed, site)` on first visit.
pub struct RwrsWalker {
    model: RwrsModel,
    steps: RngStream,
    scenery_seed: u64,
    scenery: LazyField<i64>,
    s: i64,
    z: i64,
}

impl RwrsWalker {
    /// Scenery from substream 0 of `trial`, walk increments from substream 1.
    pub fn new(model: RwrsModel, trial: RngStream) -> Self {
        RwrsWalker {
            model,
            steps: trial.substream(1),
            scenery_seed: trial.substream(0).family_seed(),
            scenery: LazyField::new(),
            s: 0,
            z: 0,
        }
    }

    #[inline]
    pub fn scenery_at(&mut self, site: i64) -> i64 {
        let law = *self.model.scenery();
        let seed = self.scenery_seed;
        self.scenery
            .get_or_init(site, |y| law.sample(&mut derive_stream(seed, y as u64)))
    }

    /// Advances one step and returns `(S_k, Z_k)`.
    #[inline]
    pub fn step(&mut self) -> (i64, i64) {
        let dx = self.model.walk().sample(&mut self.steps);
        self.s += dx;
        let xi = self.scenery_at(self.s);
        self.z += xi;
        (self.s, self.z)
    }

    pub fn walk_position(&self) -> i64 {
        self.s
    }

    pub fn value(&self) -> i64 {
        self.z
    }
}

pub fn rwrs_trial(model: &RwrsModel, n: usize, trial: RngStream) -> RwrsPath {
    let mut walker = RwrsWalker::new(*model, trial);
    let mut walk = Vec::with_capacity(n + 1);
    let mut z = Vec::with_capacity(n + 1);
    walk.push(0);
    z.push(0);
    let mut local_time = LocalTimeMap::new();
    let mut scenery = BTreeMap::new();
    for _ in 0..n {
        let (s, zk) = walker.step();
        walk.push(s);
        z.push(zk);
        local_time.record(s);
        scenery.entry(s).or_insert_with(|| walker.scenery_at(s));
    }
    RwrsPath {
        walk,
        z: ZPath { values: z },
        local_time,
        scenery,
    }
}

/// One realization with `n` steps from stream `(master_seed, 0)`.
pub fn simulate_rwrs(model: &RwrsModel, n: usize, master_seed: u64) -> RwrsPath {
    rwrs_trial(model, n, derive_stream(master_seed, 0))
}
