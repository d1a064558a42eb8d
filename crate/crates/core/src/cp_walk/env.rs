use std::collections::BTreeMap;

use crate::error::{invalid, Result};
use crate::field::LazyField;
use crate::stable_core::derive_stream;

#[derive(Clone, Debug)]
enum Source {
    Seeded(u64),
    Constant(i8),
    Explicit { rows: BTreeMap<i64, i8>, seed: u64 },
}

impl Source {
    fn value(&self, row: i64) -> i8 {
        match self {
            Source::Seeded(seed) => seeded(*seed, row),
            Source::Constant(e) => *e,
            Source::Explicit { rows, seed } => rows.get(&row).copied().unwrap_or_else(|| seeded(*seed, row)),
        }
    }
}

#[inline]
fn seeded(seed: u64, row: i64) -> i8 {
    if derive_stream(seed, row as u64).word_at(0) >> 63 == 0 {
        -1
    } else {
        1
    }
}

/// Row orientations `y ↦ ε_y`, realized on first use.
#[derive(Clone, Debug)]
pub struct Environment {
    source: Source,
    cache: LazyField<i8>,
}

impl Environment {
    /// I.i.d. uniform orientations; row `y` reads stream `(master_seed, y)`.
    pub fn seeded(master_seed: u64) -> Self {
        Self::from_source(Source::Seeded(master_seed))
    }

    pub fn constant(direction: i8) -> Result<Self> {
        check(direction)?;
        Ok(Self::from_source(Source::Constant(direction)))
    }

    /// Fixed orientations on the listed rows, seeded ones elsewhere.
    pub fn with_rows(master_seed: u64, rows: impl IntoIterator<Item = (i64, i8)>) -> Result<Self> {
        let rows: BTreeMap<i64, i8> = rows.into_iter().collect();
        for &e in rows.values() {
            check(e)?;
        }
        Ok(Self::from_source(Source::Explicit {
            rows,
            seed: master_seed,
        }))
    }

    fn from_source(source: Source) -> Self {
        Environment {
            source,
            cache: LazyField::new(),
        }
    }

    #[inline]
    pub fn orientation(&mut self, row: i64) -> i8 {
        let source = &self.source;
        self.cache.get_or_init(row, |y| source.value(y))
    }

    /// Orientation without caching.
    pub fn orientation_at(&self, row: i64) -> i8 {
        self.cache.peek(row).unwrap_or_else(|| self.source.value(row))
    }

    pub fn realized(&self) -> BTreeMap<i64, i8> {
        self.cache.realized()
    }
}

fn check(e: i8) -> Result<()> {
    if e == 1 || e == -1 {
        Ok(())
    } else {
        Err(invalid(format!("orientation {e} is not ±1")))
    }
}
