use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use super::RngStream;
use crate::error::{invalid, Result};

/// Strictly stable law with characteristic function
/// `exp(-|u|^index * (a1 + i * a2 * sgn(u)))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StableParams", into = "StableParams")]
pub struct StableLaw {
    index: f64,
    a1: f64,
    a2: f64,
    /// Skewness in the (skewness, scale) parameterization.
    skew: f64,
    scale: f64,
    // Chambers–Mallows–Stuck constants.
    shift_angle: f64,
    factor: f64,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StableParams {
    index: f64,
    a1: f64,
    #[serde(default)]
    a2: f64,
}

impl TryFrom<StableParams> for StableLaw {
    type Error = crate::Error;

    fn try_from(p: StableParams) -> Result<Self> {
        StableLaw::new(p.index, p.a1, p.a2)
    }
}

impl From<StableLaw> for StableParams {
    fn from(l: StableLaw) -> Self {
        StableParams {
            index: l.index,
            a1: l.a1,
            a2: l.a2,
        }
    }
}

impl StableLaw {
    pub fn new(index: f64, a1: f64, a2: f64) -> Result<Self> {
        if !(index > 0.0 && index <= 2.0) {
            return Err(invalid(format!("stable index {index} outside (0, 2]")));
        }
        if !(a1 > 0.0 && a1.is_finite()) {
            return Err(invalid(format!("a1 = {a1} must be positive and finite")));
        }
        if !a2.is_finite() {
            return Err(invalid("a2 must be finite"));
        }
        if (index == 1.0 || index == 2.0) && a2 != 0.0 {
            return Err(invalid(format!("index {index} requires a2 = 0")));
        }
        let (skew, shift_angle, factor) = if index == 1.0 || index == 2.0 {
            (0.0, 0.0, 1.0)
        } else {
            let tan = (FRAC_PI_2 * index).tan();
            if (a2 / a1).abs() > tan.abs() * (1.0 + 1e-12) {
                return Err(invalid(format!(
                    "|a2/a1| = {} exceeds |tan(pi*index/2)| = {}",
                    (a2 / a1).abs(),
                    tan.abs()
                )));
            }
            let skew = (-a2 / (a1 * tan)).clamp(-1.0, 1.0);
            let zeta = skew * tan;
            let shift_angle = zeta.atan() / index;
            let factor = (1.0 + zeta * zeta).powf(0.5 / index);
            (skew, shift_angle, factor)
        };
        Ok(StableLaw {
            index,
            a1,
            a2,
            skew,
            scale: a1.powf(1.0 / index),
            shift_angle,
            factor,
        })
    }

    /// Symmetric law `exp(-a1 |u|^index)`.
    pub fn symmetric(index: f64, a1: f64) -> Result<Self> {
        Self::new(index, a1, 0.0)
    }

    /// Limit of `n^{-1/2}` times a sum of unit-variance steps: `exp(-u^2/2)`.
    pub fn standard_gaussian() -> Self {
        Self::new(2.0, 0.5, 0.0).expect("valid")
    }

    pub fn index(&self) -> f64 {
        self.index
    }

    pub fn a1(&self) -> f64 {
        self.a1
    }

    pub fn a2(&self) -> f64 {
        self.a2
    }

    pub fn skewness(&self) -> f64 {
        self.skew
    }

    /// `a1^{1/index}`.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn is_symmetric(&self) -> bool {
        self.a2 == 0.0
    }

    pub fn characteristic_function(&self, u: f64) -> Complex64 {
        let exponent = Complex64::new(self.a1, self.a2 * u.signum()) * u.abs().powf(self.index);
        (-exponent).exp()
    }

    /// Chambers–Mallows–Stuck transform of a uniform angle and a unit
    /// exponential.
    pub fn sample(&self, rng: &mut RngStream) -> f64 {
        let v = PI * (rng.next_open01() - 0.5);
        let w: f64 = rng.sample(Exp1);
        let x = if self.index == 1.0 {
            v.tan()
        } else if self.index == 2.0 {
            2.0 * v.sin() * w.sqrt()
        } else {
            let a = self.index;
            let arg = a * (v + self.shift_angle);
            self.factor * arg.sin() / v.cos().powf(1.0 / a)
                * ((v - arg).cos() / w).powf((1.0 - a) / a)
        };
        self.scale * x
    }
}

/// One variate of `law`.
pub fn sample_stable(law: &StableLaw, rng: &mut RngStream) -> f64 {
    law.sample(rng)
}
