use super::{CpPath, Environment, StepKind};
use crate::error::{invalid, Result};
use crate::field::LazyField;
use crate::stable_core::{derive_stream, RngStream};

pub fn validate_p(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(invalid(format!("p = {p} outside (0, 1)")))
    }
}

/// Streaming quenched walker: one uniform per step.
pub struct CpWalker<'e> {
    p: f64,
    up: f64,
    env: &'e mut Environment,
    rng: RngStream,
    x: i64,
    y: i64,
}

impl<'e> CpWalker<'e> {
    pub fn new(p: f64, env: &'e mut Environment, rng: RngStream) -> Result<Self> {
        validate_p(p)?;
        Ok(CpWalker {
            p,
            up: p + 0.5 * (1.0 - p),
            env,
            rng,
            x: 0,
            y: 0,
        })
    }

    #[inline]
    pub fn step(&mut self) -> StepKind {
        let u = self.rng.next_open01();
        if u < self.p {
            self.x += self.env.orientation(self.y) as i64;
            StepKind::H
        } else if u < self.up {
            self.y += 1;
            StepKind::U
        } else {
            self.y -= 1;
            StepKind::D
        }
    }

    #[inline]
    pub fn position(&self) -> (i64, i64) {
        (self.x, self.y)
    }

    pub fn environment(&self) -> &Environment {
        self.env
    }

    fn record(mut self, n: usize) -> CpPath {
        let mut path = CpPath::new(self.p);
        path.positions.reserve(n);
        path.steps.reserve(n);
        for _ in 0..n {
            let s = self.step();
            path.steps.push(s);
            path.positions.push(self.position());
        }
        path
    }
}

/// Fixed environment, caller-supplied step stream.
pub fn simulate_quenched(env: &mut Environment, p: f64, n: usize, rng: RngStream) -> Result<CpPath> {
    Ok(CpWalker::new(p, env, rng)?.record(n))
}

/// Annealed trial: a fresh environment from substream 0 of `trial`, steps from
/// substream 1. Returns the environment so callers can inspect it.
pub fn annealed_trial(p: f64, n: usize, trial: RngStream) -> Result<(CpPath, Environment)> {
    let mut env = Environment::seeded(trial.substream(0).family_seed());
    let path = simulate_quenched(&mut env, p, n, trial.substream(1))?;
    Ok((path, env))
}

/// One annealed path of `n` steps.
pub fn simulate_annealed(p: f64, n: usize, master_seed: u64) -> Result<CpPath> {
    annealed_trial(p, n, derive_stream(master_seed, 0)).map(|(path, _)| path)
}

/// The shift system on `{±1}^Z × {-1,0,1}^Z`:
/// `T(ε, ω) = ((ε_{k+ω_0})_k, (ω_{k+1})_k)`, increment `f = (ε_0, 0)` if
/// `ω_0 = 0` and `(0, ω_0)` otherwise.
///
/// Both coordinates are realized lazily. After `j` shifts the ε-sequence is
/// offset by `ω_0 + … + ω_{j-1}` and the ω-sequence by `j`.
pub struct SkewProduct {
    p: f64,
    eps_seed: u64,
    eps: LazyField<i8>,
    omega: RngStream,
    eps_offset: i64,
    omega_offset: u64,
}

impl SkewProduct {
    pub fn new(p: f64, rng: RngStream) -> Result<Self> {
        validate_p(p)?;
        Ok(SkewProduct {
            p,
            eps_seed: rng.substream(0).family_seed(),
            eps: LazyField::new(),
            omega: rng.substream(1),
            eps_offset: 0,
            omega_offset: 0,
        })
    }

    /// `ε_k` of the current point.
    pub fn eps(&mut self, k: i64) -> i8 {
        let seed = self.eps_seed;
        self.eps.get_or_init(self.eps_offset + k, |site| {
            if derive_stream(seed, site as u64).word_at(0) >> 63 == 0 {
                -1
            } else {
                1
            }
        })
    }

    /// `ω_k` of the current point, k ≥ 0.
    pub fn omega(&self, k: u64) -> i64 {
        let w = self.omega.word_at(self.omega_offset + k);
        let u = ((w >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64);
        if u < self.p {
            0
        } else if u < self.p + 0.5 * (1.0 - self.p) {
            1
        } else {
            -1
        }
    }

    /// `f` at the current point.
    pub fn increment(&mut self) -> (i64, i64) {
        match self.omega(0) {
            0 => (self.eps(0) as i64, 0),
            w => (0, w),
        }
    }

    /// Applies `T`.
    pub fn shift(&mut self) {
        self.eps_offset += self.omega(0);
        self.omega_offset += 1;
    }
}

/// Path `M_j = f + f∘T + … + f∘T^{j-1}` of the shift system.
pub fn skew_product_path(p: f64, n: usize, rng: RngStream) -> Result<CpPath> {
    let mut system = SkewProduct::new(p, rng)?;
    let mut path = CpPath::new(p);
    let (mut x, mut y) = (0i64, 0i64);
    for _ in 0..n {
        let (dx, dy) = system.increment();
        system.shift();
        x += dx;
        y += dy;
        path.steps.push(match dy {
            0 => StepKind::H,
            1 => StepKind::U,
            _ => StepKind::D,
        });
        path.positions.push((x, y));
    }
    Ok(path)
}
