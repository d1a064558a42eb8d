use std::collections::BTreeMap;

use rustc_hash::FxHashSet;

use super::{CpPath, Environment, StepKind};
use crate::error::{Error, Result};
use crate::rwrs::LocalTimeMap;

/// Visited lattice sites, for streaming range computations.
#[derive(Clone, Debug, Default)]
pub struct SiteSet {
    sites: FxHashSet<u64>,
}

impl SiteSet {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    fn key(x: i64, y: i64) -> u64 {
        ((x as i32 as u32 as u64) << 32) | (y as i32 as u32 as u64)
    }

    /// Returns `true` for a first visit.
    #[inline]
    pub fn insert(&mut self, x: i64, y: i64) -> bool {
        self.sites.insert(Self::key(x, y))
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }
}

/// `#{M_0, …, M_n}`.
pub fn range_sites(path: &CpPath) -> usize {
    let set: FxHashSet<(i64, i64)> = path.positions.iter().copied().collect();
    set.len()
}

/// Number of distinct first coordinates visited.
pub fn range_first_coordinate(path: &CpPath) -> usize {
    let set: FxHashSet<i64> = path.xs().collect();
    set.len()
}

/// `Ñ_n(y)`: horizontal steps taken on row `y`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HorizontalLocalTime {
    pub counts: BTreeMap<i64, u64>,
}

impl HorizontalLocalTime {
    pub fn get(&self, row: i64) -> u64 {
        self.counts.get(&row).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }
}

pub fn horizontal_local_time(path: &CpPath) -> HorizontalLocalTime {
    let mut counts = BTreeMap::new();
    for (w, &s) in path.positions.windows(2).zip(&path.steps) {
        if s == StepKind::H {
            *counts.entry(w[0].1).or_insert(0) += 1;
        }
    }
    HorizontalLocalTime { counts }
}

/// `N_n(y)` of the vertical coordinate.
pub fn vertical_local_time(path: &CpPath) -> LocalTimeMap {
    LocalTimeMap::from_positions(path.positions[1..].iter().map(|p| p.1))
}

/// `Σ_y ε_y Ñ_n(y)`, which equals the final first coordinate.
pub fn first_coordinate_decomposition(path: &CpPath, env: &Environment) -> Result<i64> {
    path.check_against(env)?;
    let local = horizontal_local_time(path);
    let value = local
        .counts
        .iter()
        .map(|(&row, &count)| env.orientation_at(row) as i64 * count as i64)
        .sum();
    if value != path.end().0 {
        return Err(Error::InconsistentPath { step: path.len() });
    }
    Ok(value)
}
