use rand::{Rng, RngCore};
use rand_distr::Zeta;
use serde::{Deserialize, Serialize};

use super::RngStream;
use crate::error::{invalid, Result};

/// Integer-valued laws used for walk increments and sceneries.
///
/// All of them are symmetric, and each one's support generates the integers.
/// `ParetoTail` has pmf `c |k|^{-1-index}` for `k != 0` and an atom at zero
/// carrying the remaining mass; it lies in the normal domain of attraction
/// of the symmetric stable law of that index.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum LatticeLaw {
    Rademacher,
    Ternary { p0: f64 },
    LazyVertical { p: f64 },
    SimpleSymmetric,
    ParetoTail { index: f64, tail_constant: f64 },
}

impl LatticeLaw {
    pub fn validate(&self) -> Result<()> {
        match *self {
            LatticeLaw::Rademacher | LatticeLaw::SimpleSymmetric => Ok(()),
            LatticeLaw::Ternary { p0 } => {
                if (0.0..1.0).contains(&p0) {
                    Ok(())
                } else {
                    Err(invalid(format!("ternary p0 = {p0} outside [0, 1)")))
                }
            }
            LatticeLaw::LazyVertical { p } => {
                if p > 0.0 && p < 1.0 {
                    Ok(())
                } else {
                    Err(invalid(format!("lazy_vertical p = {p} outside (0, 1)")))
                }
            }
            LatticeLaw::ParetoTail {
                index,
                tail_constant,
            } => {
                if !(index > 0.0 && index < 2.0) {
                    return Err(invalid(format!("pareto_tail index {index} outside (0, 2)")));
                }
                if !(tail_constant > 0.0) {
                    return Err(invalid("pareto_tail tail_constant must be positive"));
                }
                let mass = 2.0 * tail_constant * riemann_zeta(1.0 + index);
                if mass > 1.0 {
                    return Err(invalid(format!(
                        "pareto_tail tails carry mass {mass} > 1; lower tail_constant"
                    )));
                }
                Ok(())
            }
        }
    }

    /// Index of the stable law whose normal domain of attraction contains
    /// this law.
    pub fn domain_index(&self) -> f64 {
        match *self {
            LatticeLaw::ParetoTail { index, .. } => index,
            _ => 2.0,
        }
    }

    pub fn variance(&self) -> Option<f64> {
        match *self {
            LatticeLaw::Rademacher | LatticeLaw::SimpleSymmetric => Some(1.0),
            LatticeLaw::Ternary { p0 } => Some(1.0 - p0),
            LatticeLaw::LazyVertical { p } => Some(1.0 - p),
            LatticeLaw::ParetoTail { .. } => None,
        }
    }

    pub fn pmf(&self, k: i64) -> f64 {
        match *self {
            LatticeLaw::Rademacher | LatticeLaw::SimpleSymmetric => {
                if k.abs() == 1 {
                    0.5
                } else {
                    0.0
                }
            }
            LatticeLaw::Ternary { p0: zero } | LatticeLaw::LazyVertical { p: zero } => match k {
                0 => zero,
                1 | -1 => 0.5 * (1.0 - zero),
                _ => 0.0,
            },
            LatticeLaw::ParetoTail {
                index,
                tail_constant,
            } => {
                if k == 0 {
                    self.zero_mass()
                } else {
                    tail_constant * (k.unsigned_abs() as f64).powf(-1.0 - index)
                }
            }
        }
    }

    /// Finite support with probabilities, or `None` for `ParetoTail`.
    pub fn support(&self) -> Option<Vec<(i64, f64)>> {
        match self {
            LatticeLaw::ParetoTail { .. } => None,
            _ => Some(
                (-1..=1)
                    .map(|k| (k, self.pmf(k)))
                    .filter(|&(_, w)| w > 0.0)
                    .collect(),
            ),
        }
    }

    fn zero_mass(&self) -> f64 {
        match *self {
            LatticeLaw::ParetoTail {
                index,
                tail_constant,
            } => 1.0 - 2.0 * tail_constant * riemann_zeta(1.0 + index),
            _ => self.pmf(0),
        }
    }

    /// `P(|X| > t)` computed from the pmf.
    pub fn tail(&self, t: u64) -> f64 {
        match *self {
            LatticeLaw::ParetoTail {
                index,
                tail_constant,
            } => {
                let s = 1.0 + index;
                let head: f64 = (1..=t).map(|k| (k as f64).powf(-s)).sum();
                2.0 * tail_constant * (riemann_zeta(s) - head)
            }
            _ => {
                if t == 0 {
                    1.0 - self.pmf(0)
                } else {
                    0.0
                }
            }
        }
    }

    pub fn sample(&self, rng: &mut RngStream) -> i64 {
        match *self {
            LatticeLaw::Rademacher | LatticeLaw::SimpleSymmetric => {
                if rng.next_u64() >> 63 == 0 {
                    -1
                } else {
                    1
                }
            }
            LatticeLaw::Ternary { p0: zero } | LatticeLaw::LazyVertical { p: zero } => {
                let u = rng.next_open01();
                if u < zero {
                    0
                } else if u < zero + 0.5 * (1.0 - zero) {
                    -1
                } else {
                    1
                }
            }
            LatticeLaw::ParetoTail { index, .. } => {
                let u = rng.next_open01();
                let zero = self.zero_mass();
                if u < zero {
                    return 0;
                }
                let sign = if u < zero + 0.5 * (1.0 - zero) { -1 } else { 1 };
                let zeta = Zeta::new(1.0 + index).expect("exponent > 1");
                let magnitude: f64 = rng.sample(zeta);
                let magnitude = if magnitude >= i64::MAX as f64 {
                    i64::MAX
                } else {
                    magnitude as i64
                };
                sign * magnitude
            }
        }
    }
}

/// Riemann zeta for real `s > 1` (Euler–Maclaurin after 64 direct terms).
pub fn riemann_zeta(s: f64) -> f64 {
    assert!(s > 1.0, "zeta needs s > 1");
    const N: usize = 64;
    let n = N as f64;
    let head: f64 = (1..N).map(|k| (k as f64).powf(-s)).sum();
    // Bernoulli corrections B2/2!, B4/4!, B6/6!
    let mut tail = n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);
    let mut rising = s;
    let mut power = n.powf(-s - 1.0);
    let coeffs = [1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0];
    for (i, c) in coeffs.iter().enumerate() {
        tail += c * rising * power;
        let k = (2 * i + 1) as f64;
        rising *= (s + k) * (s + k + 1.0);
        power /= n * n;
    }
    head + tail
}
