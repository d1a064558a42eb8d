//! Exact annealed laws for small horizons.
//!
//! The orientations are integrated row by row: a row's direction is drawn
//! (±1, weight 1/2 each) the first time the walk steps horizontally on it and
//! is reused afterwards. States carrying identical position and drawn rows
//! are merged, which keeps n = 14 to a few hundred thousand states.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;

use super::{validate_p, CpPath, Environment, StepKind};
use crate::error::{Error, Result};

pub const EXACT_HORIZON_CAP: usize = 14;

const ROW_OFFSET: i32 = EXACT_HORIZON_CAP as i32;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct State {
    x: i8,
    y: i8,
    drawn: u32,
    positive: u32,
}

fn check_horizon(n: usize) -> Result<()> {
    if n > EXACT_HORIZON_CAP {
        Err(Error::HorizonTooLarge {
            n,
            cap: EXACT_HORIZON_CAP,
        })
    } else {
        Ok(())
    }
}

struct AnnealedDp {
    p: f64,
    vertical: f64,
    states: FxHashMap<State, f64>,
}

impl AnnealedDp {
    fn new(p: f64) -> Self {
        let mut states = FxHashMap::default();
        states.insert(
            State {
                x: 0,
                y: 0,
                drawn: 0,
                positive: 0,
            },
            1.0,
        );
        AnnealedDp {
            p,
            vertical: 0.5 * (1.0 - p),
            states,
        }
    }

    /// One step; with `absorb` the mass arriving at the origin is removed.
    fn advance(&mut self, absorb: bool) {
        let mut next: FxHashMap<State, f64> = FxHashMap::default();
        next.reserve(self.states.len() * 3);
        let mut push = |s: State, w: f64| {
            if !(absorb && s.x == 0 && s.y == 0) {
                *next.entry(s).or_insert(0.0) += w;
            }
        };
        for (&s, &w) in &self.states {
            push(State { y: s.y + 1, ..s }, w * self.vertical);
            push(State { y: s.y - 1, ..s }, w * self.vertical);
            let bit = 1u32 << (s.y as i32 + ROW_OFFSET);
            if s.drawn & bit != 0 {
                let dx = if s.positive & bit != 0 { 1 } else { -1 };
                push(State { x: s.x + dx, ..s }, w * self.p);
            } else {
                let drawn = s.drawn | bit;
                push(
                    State {
                        x: s.x + 1,
                        drawn,
                        positive: s.positive | bit,
                        ..s
                    },
                    0.5 * w * self.p,
                );
                push(State { x: s.x - 1, drawn, ..s }, 0.5 * w * self.p);
            }
        }
        self.states = next;
    }

    fn total(&self) -> f64 {
        self.states.values().sum()
    }

    fn at_origin(&self) -> f64 {
        self.states
            .iter()
            .filter(|(s, _)| s.x == 0 && s.y == 0)
            .map(|(_, w)| w)
            .sum()
    }
}

/// Annealed law of `M_n`.
pub fn exact_annealed_law(p: f64, n: usize) -> Result<BTreeMap<(i64, i64), f64>> {
    validate_p(p)?;
    check_horizon(n)?;
    let mut dp = AnnealedDp::new(p);
    for _ in 0..n {
        dp.advance(false);
    }
    let mut law = BTreeMap::new();
    for (s, w) in dp.states {
        *law.entry((s.x as i64, s.y as i64)).or_insert(0.0) += w;
    }
    Ok(law)
}

/// `P(M_n = 0)` for `n = 0..=n_max`.
pub fn exact_return_probabilities(p: f64, n_max: usize) -> Result<Vec<f64>> {
    validate_p(p)?;
    check_horizon(n_max)?;
    let mut dp = AnnealedDp::new(p);
    let mut out = vec![1.0];
    for _ in 0..n_max {
        dp.advance(false);
        out.push(dp.at_origin());
    }
    Ok(out)
}

pub fn exact_return_probability(p: f64, n: usize) -> Result<f64> {
    Ok(exact_return_probabilities(p, n)?[n])
}

/// `P(M_j ≠ 0 for 1 ≤ j ≤ L)` for `L = 0..=l_max`.
pub fn exact_no_return_probabilities(p: f64, l_max: usize) -> Result<Vec<f64>> {
    validate_p(p)?;
    check_horizon(l_max)?;
    let mut dp = AnnealedDp::new(p);
    let mut out = vec![1.0];
    for _ in 0..l_max {
        dp.advance(true);
        out.push(dp.total());
    }
    Ok(out)
}

pub fn exact_no_return_probability(p: f64, horizon: usize) -> Result<f64> {
    Ok(exact_no_return_probabilities(p, horizon)?[horizon])
}

/// Calls `visit(path, env, weight)` for every step sequence of length `n` and
/// every orientation of the rows it moves horizontally on. Weights are
/// annealed probabilities and sum to one.
pub fn enumerate_quenched_paths(
    p: f64,
    n: usize,
    mut visit: impl FnMut(&CpPath, &Environment, f64),
) -> Result<()> {
    validate_p(p)?;
    check_horizon(n)?;
    const KINDS: [StepKind; 3] = [StepKind::H, StepKind::U, StepKind::D];
    let total = 3usize.pow(n as u32);
    let mut steps = vec![StepKind::H; n];
    for code in 0..total {
        let mut c = code;
        let mut y = 0i64;
        let mut rows: Vec<i64> = Vec::new();
        let mut weight = 1.0;
        for s in steps.iter_mut() {
            *s = KINDS[c % 3];
            c /= 3;
            match s {
                StepKind::H => {
                    weight *= p;
                    if !rows.contains(&y) {
                        rows.push(y);
                    }
                }
                StepKind::U => {
                    weight *= 0.5 * (1.0 - p);
                    y += 1;
                }
                StepKind::D => {
                    weight *= 0.5 * (1.0 - p);
                    y -= 1;
                }
            }
        }
        let share = weight / (1u64 << rows.len()) as f64;
        for mask in 0..(1u32 << rows.len()) {
            let assignment = rows
                .iter()
                .enumerate()
                .map(|(i, &r)| (r, if mask >> i & 1 == 1 { 1 } else { -1 }));
            let mut env = Environment::with_rows(0, assignment)?;
            let path = CpPath::from_steps(p, &steps, &mut env);
            visit(&path, &env, share);
        }
    }
    Ok(())
}
