use serde::{Deserialize, Serialize};

use super::Environment;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StepKind {
    /// Along the row's orientation.
    H,
    /// Row above.
    U,
    /// Row below.
    D,
}

/// A realized trajectory `M_0 = (0,0), …, M_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CpPath {
    pub p: f64,
    pub positions: Vec<(i64, i64)>,
    pub steps: Vec<StepKind>,
}

impl CpPath {
    pub fn new(p: f64) -> Self {
        CpPath {
            p,
            positions: vec![(0, 0)],
            steps: Vec::new(),
        }
    }

    /// Builds the path of a step sequence under `env`.
    pub fn from_steps(p: f64, steps: &[StepKind], env: &mut Environment) -> Self {
        let mut path = CpPath::new(p);
        path.positions.reserve(steps.len());
        let (mut x, mut y) = (0i64, 0i64);
        for &s in steps {
            match s {
                StepKind::H => x += env.orientation(y) as i64,
                StepKind::U => y += 1,
                StepKind::D => y -= 1,
            }
            path.positions.push((x, y));
        }
        path.steps = steps.to_vec();
        path
    }

    /// Number of steps.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn end(&self) -> (i64, i64) {
        *self.positions.last().expect("paths start at the origin")
    }

    pub fn xs(&self) -> impl Iterator<Item = i64> + '_ {
        self.positions.iter().map(|p| p.0)
    }

    /// Unit moves, step kinds matching moves, and one horizontal direction per
    /// row agreeing with `env`.
    pub fn check_against(&self, env: &Environment) -> Result<()> {
        if self.positions.first() != Some(&(0, 0)) || self.positions.len() != self.steps.len() + 1 {
            return Err(Error::InconsistentPath { step: 0 });
        }
        for (k, (w, &s)) in self.positions.windows(2).zip(&self.steps).enumerate() {
            let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
            let ok = match s {
                StepKind::H => dy == 0 && dx == env.orientation_at(w[0].1) as i64,
                StepKind::U => dx == 0 && dy == 1,
                StepKind::D => dx == 0 && dy == -1,
            };
            if !ok {
                return Err(Error::InconsistentPath { step: k + 1 });
            }
        }
        Ok(())
    }
}
