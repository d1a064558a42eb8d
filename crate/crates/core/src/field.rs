//! Lazily realized integer-indexed fields (environments, sceneries, noise
//! cells).
//!
//! Values are pure functions of the site, so the cache may be filled in any
//! order. Sites near the origin live in two dense vectors; far sites reached
//! by long jumps go to a hash map.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;

const DENSE_CAP: usize = 1 << 24;
const DENSE_SLACK: usize = 4096;

#[derive(Clone, Debug, Default)]
pub struct LazyField<T> {
    nonneg: Vec<T>,
    neg: Vec<T>,
    sparse: FxHashMap<i64, T>,
}

impl<T: Copy> LazyField<T> {
    pub fn new() -> Self {
        LazyField {
            nonneg: Vec::new(),
            neg: Vec::new(),
            sparse: FxHashMap::default(),
        }
    }

    #[inline]
    pub fn get_or_init(&mut self, site: i64, init: impl Fn(i64) -> T) -> T {
        let (vec, idx, sign) = if site >= 0 {
            (&mut self.nonneg, site as usize, 1i64)
        } else {
            (&mut self.neg, (-(site + 1)) as usize, -1i64)
        };
        if let Some(v) = vec.get(idx) {
            return *v;
        }
        if idx < DENSE_CAP && idx <= 2 * vec.len() + DENSE_SLACK {
            let start = vec.len();
            vec.extend((start..=idx).map(|k| {
                let s = if sign > 0 { k as i64 } else { -(k as i64) - 1 };
                init(s)
            }));
            return vec[idx];
        }
        *self.sparse.entry(site).or_insert_with(|| init(site))
    }

    /// Value at `site` if it has been realized.
    pub fn peek(&self, site: i64) -> Option<T> {
        let dense = if site >= 0 {
            self.nonneg.get(site as usize)
        } else {
            self.neg.get((-(site + 1)) as usize)
        };
        dense.or_else(|| self.sparse.get(&site)).copied()
    }

    /// Every realized site, ordered.
    pub fn realized(&self) -> BTreeMap<i64, T> {
        let mut out: BTreeMap<i64, T> = self.sparse.iter().map(|(&k, &v)| (k, v)).collect();
        out.extend(self.nonneg.iter().enumerate().map(|(k, &v)| (k as i64, v)));
        out.extend(self.neg.iter().enumerate().map(|(k, &v)| (-(k as i64) - 1, v)));
        out
    }

    pub fn clear(&mut self) {
        self.nonneg.clear();
        self.neg.clear();
        self.sparse.clear();
    }
}
