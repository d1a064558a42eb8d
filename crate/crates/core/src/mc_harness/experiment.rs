use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use super::{Summary, TrialStats};
use crate::cp_walk::{validate_p, CpWalker, Environment, SiteSet};
use crate::error::{Error, Result};
use crate::limit_process::{default_cell_width, functionals, limit_path};
use crate::rwrs::{normalizer_a, LocalTimeMap, RwrsModel, RwrsWalker};
use crate::stable_core::{derive_stream, RngStream, StableLaw};

/// Default cap on `max(sizes) × trials`.
pub const DEFAULT_MAX_WORK: u128 = 20_000_000_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelSpec {
    /// Oriented-lattice walk.
    Cp { p: f64 },
    /// Random walk in random scenery.
    Rwrs { model: RwrsModel },
    /// Limit process on a mesh of `n` points per unit time (the sizes).
    Limit {
        alpha_law: StableLaw,
        beta_law: StableLaw,
        /// Cell width at `m = 2^16`; scaled like `m^{-1/2}` for other meshes.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cell_width: Option<f64>,
    },
}

/// Per-trial functionals, evaluated at each size `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    /// Distinct sites (CP) or values (RWRS) among the first n+1 positions.
    Range,
    /// Distinct first coordinates of the CP walk.
    FirstRange,
    /// `V_n` of the walk (vertical coordinate for CP).
    SelfIntersections,
    /// `V_n(β)` with the scenery index β.
    VBeta,
    /// Level self-intersections of Z.
    ZSelfIntersections,
    /// `max - min` of the first coordinate / Z / the limit path.
    Spread,
    /// `max` of the first coordinate / Z / the limit path.
    Sup,
    /// Indicator of no return to the origin at times 1..=n.
    Escape,
}

impl Statistic {
    pub fn name(&self) -> &'static str {
        match self {
            Statistic::Range => "range",
            Statistic::FirstRange => "first_range",
            Statistic::SelfIntersections => "self_intersections",
            Statistic::VBeta => "v_beta",
            Statistic::ZSelfIntersections => "z_self_intersections",
            Statistic::Spread => "spread",
            Statistic::Sup => "sup",
            Statistic::Escape => "escape",
        }
    }
}

fn default_confidence() -> f64 {
    0.99
}

fn default_max_work() -> u128 {
    DEFAULT_MAX_WORK
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub model: ModelSpec,
    /// Strictly increasing horizons (mesh sizes for the limit model).
    pub sizes: Vec<u64>,
    pub trials: u64,
    pub master_seed: u64,
    pub outputs: Vec<Statistic>,
    #[serde(default = "default_confidence")]
    pub confidence: f64,
    #[serde(default = "default_max_work")]
    pub max_work: u128,
}

impl ExperimentSpec {
    pub fn new(model: ModelSpec, sizes: Vec<u64>, trials: u64, master_seed: u64, outputs: Vec<Statistic>) -> Self {
        ExperimentSpec {
            model,
            sizes,
            trials,
            master_seed,
            outputs,
            confidence: default_confidence(),
            max_work: default_max_work(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidExperiment(m));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.sizes.is_empty() {
            return bad("sizes must not be empty".into());
        }
        if self.sizes.windows(2).any(|w| w[1] <= w[0]) {
            return bad("sizes must be strictly increasing".into());
        }
        if self.outputs.is_empty() {
            return bad("no outputs requested".into());
        }
        if !(self.confidence > 0.0 && self.confidence < 1.0) {
            return bad(format!("confidence {} outside (0, 1)", self.confidence));
        }
        let allowed: &[Statistic] = match &self.model {
            ModelSpec::Cp { p } => {
                validate_p(*p)?;
                &[
                    Statistic::Range,
                    Statistic::FirstRange,
                    Statistic::SelfIntersections,
                    Statistic::Spread,
                    Statistic::Sup,
                    Statistic::Escape,
                ]
            }
            ModelSpec::Rwrs { .. } => &[
                Statistic::Range,
                Statistic::SelfIntersections,
                Statistic::VBeta,
                Statistic::ZSelfIntersections,
                Statistic::Spread,
                Statistic::Sup,
                Statistic::Escape,
            ],
            ModelSpec::Limit { cell_width, .. } => {
                if self.sizes[0] == 0 {
                    return bad("mesh sizes must be positive".into());
                }
                if let Some(h) = cell_width {
                    if !(*h > 0.0) {
                        return bad("cell_width must be positive".into());
                    }
                }
                &[Statistic::Spread, Statistic::Sup]
            }
        };
        if let Some(s) = self.outputs.iter().find(|s| !allowed.contains(s)) {
            return bad(format!("statistic {} is not available for this model", s.name()));
        }
        let work = self.work();
        if work > self.max_work {
            return Err(Error::ResourceCap {
                work,
                cap: self.max_work,
            });
        }
        Ok(())
    }

    /// Steps simulated in total (mesh points for the limit model).
    pub fn work(&self) -> u128 {
        let per_trial: u128 = match self.model {
            ModelSpec::Limit { .. } => self.sizes.iter().map(|&s| s as u128).sum(),
            _ => self.sizes.last().copied().unwrap_or(0) as u128,
        };
        per_trial * self.trials as u128
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub n: u64,
    pub statistic: Statistic,
    pub stats: TrialStats,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub rows: Vec<ResultRow>,
    pub confidence: f64,
}

impl ExperimentResult {
    pub fn get(&self, n: u64, statistic: Statistic) -> Option<&TrialStats> {
        self.rows
            .iter()
            .find(|r| r.n == n && r.statistic == statistic)
            .map(|r| &r.stats)
    }

    pub fn summary(&self, n: u64, statistic: Statistic) -> Option<Summary> {
        self.get(n, statistic).map(|s| s.summary(self.confidence))
    }

    /// `(n, summary)` for one statistic across sizes.
    pub fn series(&self, statistic: Statistic) -> Vec<(u64, Summary)> {
        self.rows
            .iter()
            .filter(|r| r.statistic == statistic)
            .map(|r| (r.n, r.stats.summary(self.confidence)))
            .collect()
    }
}

/// Runs every trial and reduces per `(size, statistic)`.
///
/// Trial `i` draws from stream `(master_seed, i)`. For the walk models one
/// path per trial is run to the largest size and read at each size. The
/// reduction is exact, so neither the thread count nor the scheduling
/// affects the result.
pub fn run_experiment(spec: &ExperimentSpec, threads: Option<usize>) -> Result<ExperimentResult> {
    spec.validate()?;
    let slots = spec.sizes.len() * spec.outputs.len();
    let job = || -> Result<Vec<TrialStats>> {
        (0..spec.trials)
            .into_par_iter()
            .map(|i| run_trial(spec, derive_stream(spec.master_seed, i)))
            .try_fold(
                || vec![TrialStats::new(); slots],
                |mut acc, values| {
                    for (a, v) in acc.iter_mut().zip(values?) {
                        a.push(v);
                    }
                    Ok(acc)
                },
            )
            .try_reduce(
                || vec![TrialStats::new(); slots],
                |a, b| Ok(a.iter().zip(&b).map(|(x, y)| x.merge(y)).collect()),
            )
    };
    let merged = match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidExperiment(e.to_string()))?
            .install(job)?,
        None => job()?,
    };
    let mut rows = Vec::with_capacity(slots);
    for (si, &n) in spec.sizes.iter().enumerate() {
        for (oi, &statistic) in spec.outputs.iter().enumerate() {
            rows.push(ResultRow {
                n,
                statistic,
                stats: merged[si * spec.outputs.len() + oi],
            });
        }
    }
    Ok(ExperimentResult {
        rows,
        confidence: spec.confidence,
    })
}

fn run_trial(spec: &ExperimentSpec, trial: RngStream) -> Result<Vec<f64>> {
    match &spec.model {
        ModelSpec::Cp { p } => cp_trial(*p, &spec.sizes, &spec.outputs, trial),
        ModelSpec::Rwrs { model } => Ok(rwrs_trial_values(model, &spec.sizes, &spec.outputs, trial)),
        ModelSpec::Limit {
            alpha_law,
            beta_law,
            cell_width,
        } => {
            let mut out = Vec::with_capacity(spec.sizes.len() * spec.outputs.len());
            for (si, &m) in spec.sizes.iter().enumerate() {
                let m = m as usize;
                let h = match cell_width {
                    Some(h0) => h0 * (65536.0 / m as f64).sqrt(),
                    None => default_cell_width(alpha_law, m),
                };
                let path = limit_path(alpha_law, beta_law, m, h, trial.substream(si as u64))?;
                let f = functionals(&path);
                for s in &spec.outputs {
                    out.push(match s {
                        Statistic::Sup => f.sup,
                        _ => f.spread,
                    });
                }
            }
            Ok(out)
        }
    }
}

fn only_escape(outputs: &[Statistic]) -> bool {
    outputs.iter().all(|&s| s == Statistic::Escape)
}

fn cp_trial(p: f64, sizes: &[u64], outputs: &[Statistic], trial: RngStream) -> Result<Vec<f64>> {
    let mut env = Environment::seeded(trial.substream(0).family_seed());
    let mut walker = CpWalker::new(p, &mut env, trial.substream(1))?;
    let want_range = outputs.contains(&Statistic::Range);
    let want_v = outputs.contains(&Statistic::SelfIntersections);
    let escape_only = only_escape(outputs);
    let mut sites = SiteSet::new();
    if want_range {
        sites.insert(0, 0);
    }
    let mut rows = LocalTimeMap::new();
    let mut v = 0u64;
    let (mut xmin, mut xmax) = (0i64, 0i64);
    let mut returned = false;
    let mut out = Vec::with_capacity(sizes.len() * outputs.len());
    let mut k = 0u64;
    for &n in sizes {
        while k < n {
            if escape_only && returned {
                k = n;
                break;
            }
            walker.step();
            k += 1;
            let (x, y) = walker.position();
            xmin = xmin.min(x);
            xmax = xmax.max(x);
            returned |= x == 0 && y == 0;
            if want_range {
                sites.insert(x, y);
            }
            if want_v {
                v += 2 * rows.record(y) + 1;
            }
        }
        for s in outputs {
            out.push(match s {
                Statistic::Range => sites.len() as f64,
                Statistic::FirstRange => (xmax - xmin + 1) as f64,
                Statistic::SelfIntersections => v as f64,
                Statistic::Spread => (xmax - xmin) as f64,
                Statistic::Sup => xmax as f64,
                Statistic::Escape => (!returned) as u8 as f64,
                _ => unreachable!("validated"),
            });
        }
    }
    Ok(out)
}

fn rwrs_trial_values(model: &RwrsModel, sizes: &[u64], outputs: &[Statistic], trial: RngStream) -> Vec<f64> {
    let mut walker = RwrsWalker::new(*model, trial);
    let beta = model.beta();
    let want_range = outputs.contains(&Statistic::Range);
    let want_walk_lt = outputs.contains(&Statistic::SelfIntersections) || outputs.contains(&Statistic::VBeta);
    let want_levels = outputs.contains(&Statistic::ZSelfIntersections);
    let escape_only = only_escape(outputs);
    let mut values: FxHashSet<i64> = FxHashSet::default();
    if want_range {
        values.insert(0);
    }
    let mut walk_lt = LocalTimeMap::new();
    let (mut v, mut vb) = (0u64, 0.0f64);
    let mut levels: FxHashMap<i64, u64> = FxHashMap::default();
    let mut z_v = 0u64;
    let (mut zmin, mut zmax) = (0i64, 0i64);
    let mut returned = false;
    let mut out = Vec::with_capacity(sizes.len() * outputs.len());
    let mut k = 0u64;
    for &n in sizes {
        while k < n {
            if escape_only && returned {
                k = n;
                break;
            }
            let (s, z) = walker.step();
            k += 1;
            zmin = zmin.min(z);
            zmax = zmax.max(z);
            returned |= z == 0;
            if want_range {
                values.insert(z);
            }
            if want_walk_lt {
                let c = walk_lt.record(s);
                v += 2 * c + 1;
                vb += ((c + 1) as f64).powf(beta) - (c as f64).powf(beta);
            }
            if want_levels {
                let c = levels.entry(z).or_insert(0);
                z_v += 2 * *c + 1;
                *c += 1;
            }
        }
        for s in outputs {
            out.push(match s {
                Statistic::Range => values.len() as f64,
                Statistic::SelfIntersections => v as f64,
                Statistic::VBeta => vb,
                Statistic::ZSelfIntersections => z_v as f64,
                Statistic::Spread => (zmax - zmin) as f64,
                Statistic::Sup => zmax as f64,
                Statistic::Escape => (!returned) as u8 as f64,
                _ => unreachable!("validated"),
            });
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub ci_half: Option<f64>,
    pub std_error: Option<f64>,
    pub trials: u64,
}

/// Fraction of trials with no return to the origin at times `1..=horizon`.
pub fn estimate_escape(
    model: &ModelSpec,
    horizon: u64,
    trials: u64,
    master_seed: u64,
    threads: Option<usize>,
) -> Result<Estimate> {
    if horizon == 0 {
        return Err(Error::InvalidExperiment("horizon must be at least 1".into()));
    }
    let mut spec = ExperimentSpec::new(model.clone(), vec![horizon], trials, master_seed, vec![Statistic::Escape]);
    spec.max_work = u128::MAX;
    let result = run_experiment(&spec, threads)?;
    let s = result.summary(horizon, Statistic::Escape).expect("requested");
    Ok(Estimate {
        mean: s.mean,
        ci_half: s.ci_half,
        std_error: s.std_error(),
        trials,
    })
}

/// Growth exponent the scaling results predict for `statistic`, when it is a
/// pure power.
pub fn expected_exponent(model: &ModelSpec, statistic: Statistic) -> Option<f64> {
    match model {
        ModelSpec::Cp { .. } => match statistic {
            Statistic::Range => Some(1.0),
            Statistic::FirstRange | Statistic::Spread | Statistic::Sup => Some(0.75),
            Statistic::SelfIntersections => Some(1.5),
            Statistic::Escape => Some(0.0),
            _ => None,
        },
        ModelSpec::Rwrs { model } => {
            let (alpha, beta) = (model.alpha(), model.beta());
            // exponent of a_n
            let a = if alpha == 1.0 {
                None
            } else {
                let probe = 1u64 << 20;
                normalizer_a(alpha, beta, probe).ok().map(|v| v.ln() / (probe as f64).ln())
            };
            match statistic {
                Statistic::Range => {
                    if beta < 1.0 {
                        Some(1.0)
                    } else if beta > 1.0 {
                        a
                    } else {
                        None
                    }
                }
                Statistic::Spread | Statistic::Sup => a,
                Statistic::SelfIntersections => match alpha {
                    x if x > 1.0 => Some(2.0 - 1.0 / alpha),
                    x if x < 1.0 => Some(1.0),
                    _ => None,
                },
                Statistic::VBeta => a.map(|e| beta * e),
                Statistic::ZSelfIntersections => a.map(|e| 2.0 - e),
                Statistic::Escape => Some(0.0),
                _ => None,
            }
        }
        ModelSpec::Limit { .. } => None,
    }
}
