//! Discretized limit processes.
//!
//! `Y` is a stable Lévy path on the mesh `t_j = j/m`. Its local time is
//! estimated by normalized occupation counts on cells of width `h`, and the
//! Kesten–Spitzer integral `Δ_t = ∫ L_t(x) dU(x)` becomes
//! `Σ_cells L_t(cell) ΔU(cell)`, which on the mesh is the cumulative sum of
//! `ΔU(cell(Y_j)) / (m h)`. One array of `U` increments is drawn per path and
//! shared by every `t`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::field::LazyField;
use crate::stable_core::{derive_stream, RngStream, StableLaw};

/// `Y(t_j)` for `j = 0..=m`.
#[derive(Clone, Debug, PartialEq)]
pub struct YPath {
    pub law: StableLaw,
    pub values: Vec<f64>,
}

impl YPath {
    pub fn new(law: StableLaw, values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(invalid("a mesh path needs at least two points"));
        }
        Ok(YPath { law, values })
    }

    /// Number of mesh intervals.
    pub fn mesh(&self) -> usize {
        self.values.len() - 1
    }

    pub fn at(&self, t: f64) -> f64 {
        self.values[time_index(t, self.mesh())]
    }
}

fn time_index(t: f64, m: usize) -> usize {
    ((t * m as f64).floor() as usize).min(m)
}

/// Stable Lévy path with increments `m^{-1/index}` times the law.
pub fn sample_y_path(law: &StableLaw, m: usize, rng: &mut RngStream) -> YPath {
    let scale = (m as f64).powf(-1.0 / law.index());
    let mut values = Vec::with_capacity(m + 1);
    let mut y = 0.0;
    values.push(y);
    for _ in 0..m {
        y += scale * law.sample(rng);
        values.push(y);
    }
    YPath { law: *law, values }
}

/// Cell estimates of `x ↦ L_t(x)`; cell `k` covers `[k h, (k+1) h)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalTimeGrid {
    pub h: f64,
    pub t: f64,
    pub cells: BTreeMap<i64, f64>,
}

impl LocalTimeGrid {
    pub fn at(&self, x: f64) -> f64 {
        self.cells.get(&cell_of(x, self.h)).copied().unwrap_or(0.0)
    }

    /// `h Σ L_t`, which should be close to `t`.
    pub fn occupation(&self) -> f64 {
        self.h * self.cells.values().sum::<f64>()
    }
}

#[inline]
fn cell_of(x: f64, h: f64) -> i64 {
    (x / h).floor() as i64
}

fn check_local_time_exists(law: &StableLaw) -> Result<()> {
    if law.index() <= 1.0 {
        Err(invalid(format!(
            "walk index {} has no local time; the limit is a multiple of U",
            law.index()
        )))
    } else {
        Ok(())
    }
}

/// `L_t(x) ≈ #{1 ≤ j ≤ t m : Y(t_j) ∈ cell(x)} / (m h)`.
pub fn estimate_local_time(y: &YPath, h: f64, t: f64) -> Result<LocalTimeGrid> {
    check_local_time_exists(&y.law)?;
    if !(h > 0.0) || !(0.0..=1.0).contains(&t) {
        return Err(invalid(format!("need h > 0 and t in [0, 1], got h={h}, t={t}")));
    }
    let m = y.mesh();
    let weight = 1.0 / (m as f64 * h);
    let mut cells = BTreeMap::new();
    for &v in &y.values[1..=time_index(t, m)] {
        *cells.entry(cell_of(v, h)).or_insert(0.0) += weight;
    }
    Ok(LocalTimeGrid { h, t, cells })
}

/// Times at which a limit path is reported.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeGrid {
    /// Every mesh point `j/m`.
    Mesh,
    /// Sorted times in `[0, 1]`.
    Points(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitPath {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

/// `Δ` on `grid` from a given `Y` path and cell increments `du(cell)`.
pub fn kesten_spitzer_integral(
    y: &YPath,
    h: f64,
    mut du: impl FnMut(i64) -> f64,
    grid: &TimeGrid,
) -> Result<LimitPath> {
    check_local_time_exists(&y.law)?;
    if !(h > 0.0) {
        return Err(invalid("cell width must be positive"));
    }
    let m = y.mesh();
    let weight = 1.0 / (m as f64 * h);
    let report: Vec<usize> = match grid {
        TimeGrid::Mesh => (0..=m).collect(),
        TimeGrid::Points(ts) => {
            if ts.windows(2).any(|w| w[1] < w[0]) || ts.iter().any(|t| !(0.0..=1.0).contains(t)) {
                return Err(invalid("time grid must be sorted within [0, 1]"));
            }
            ts.iter().map(|&t| time_index(t, m)).collect()
        }
    };
    let mut values = Vec::with_capacity(report.len());
    let mut next = report.iter().peekable();
    let mut acc = 0.0;
    for (j, &v) in y.values.iter().enumerate() {
        if j > 0 {
            acc += weight * du(cell_of(v, h));
        }
        while next.peek() == Some(&&j) {
            values.push(acc);
            next.next();
        }
    }
    let times = report.iter().map(|&j| j as f64 / m as f64).collect();
    Ok(LimitPath { times, values })
}

/// One Kesten–Spitzer path. `Y` uses substream 0 of `rng`; the increment of
/// `U` over cell `k` is `h^{1/β}` times a `beta_law` draw from stream
/// `(u_seed, k)` with `u_seed` taken from substream 1.
pub fn kesten_spitzer_sample(
    alpha_law: &StableLaw,
    beta_law: &StableLaw,
    m: usize,
    h: f64,
    grid: &TimeGrid,
    rng: RngStream,
) -> Result<LimitPath> {
    check_local_time_exists(alpha_law)?;
    let y = sample_y_path(alpha_law, m, &mut rng.substream(0));
    let u_seed = rng.substream(1).family_seed();
    let amplitude = h.powf(1.0 / beta_law.index());
    let mut cells: LazyField<f64> = LazyField::new();
    kesten_spitzer_integral(
        &y,
        h,
        |k| {
            cells.get_or_init(k, |site| {
                amplitude * beta_law.sample(&mut derive_stream(u_seed, site as u64))
            })
        },
        grid,
    )
}

/// Limit path on the full mesh: Kesten–Spitzer for `alpha > 1`, and the
/// scenery's stable process `U` itself (unit constant) for `alpha <= 1`.
pub fn limit_path(
    alpha_law: &StableLaw,
    beta_law: &StableLaw,
    m: usize,
    h: f64,
    rng: RngStream,
) -> Result<Vec<f64>> {
    if alpha_law.index() > 1.0 {
        Ok(kesten_spitzer_sample(alpha_law, beta_law, m, h, &TimeGrid::Mesh, rng)?.values)
    } else {
        Ok(sample_y_path(beta_law, m, &mut rng.substream(0)).values)
    }
}

/// Cell width giving about 2^10 cells across a typical path at `m = 2^16`,
/// shrinking like `m^{-1/2}`.
pub fn default_cell_width(alpha_law: &StableLaw, m: usize) -> f64 {
    2.0 * alpha_law.scale() / 1024.0 * (65536.0 / m as f64).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathFunctionals {
    pub sup: f64,
    pub inf: f64,
    pub spread: f64,
}

/// Sup, inf and their difference over a path started at 0.
pub fn functionals(values: &[f64]) -> PathFunctionals {
    let sup = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let inf = values.iter().copied().fold(f64::INFINITY, f64::min);
    PathFunctionals {
        sup,
        inf,
        spread: sup - inf,
    }
}

/// `p / (1 - p)^{1/4}`.
pub fn k_p(p: f64) -> Result<f64> {
    if p > 0.0 && p < 1.0 {
        Ok(p / (1.0 - p).powf(0.25))
    } else {
        Err(invalid(format!("p = {p} outside (0, 1)")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bm() -> StableLaw {
        StableLaw::standard_gaussian()
    }

    #[test]
    fn y_starts_at_zero_and_has_unit_variance() {
        let law = StableLaw::new(2.0, 1.0, 0.0).unwrap();
        let n = 20_000;
        let mut s2 = 0.0;
        for i in 0..n {
            let y = sample_y_path(&law, 64, &mut derive_stream(1, i));
            assert_eq!(y.values[0], 0.0);
            s2 += y.values[64].powi(2);
        }
        // Var Y(1) = 2 a1; sd of the estimate is 2 sqrt(2/n)
        let var = s2 / n as f64;
        assert!((var - 2.0).abs() < 4.0 * 2.0 * (2.0 / n as f64).sqrt(), "{var}");
    }

    #[test]
    fn self_similar_half_time() {
        let law = StableLaw::new(1.5, 1.0, 0.0).unwrap();
        let n = 20_000u64;
        let mut half: Vec<f64> = Vec::new();
        let mut full: Vec<f64> = Vec::new();
        for i in 0..n {
            half.push(sample_y_path(&law, 64, &mut derive_stream(2, i)).at(0.5));
            full.push(2f64.powf(-1.0 / 1.5) * sample_y_path(&law, 64, &mut derive_stream(3, i)).at(1.0));
        }
        let d = crate::mc_harness::ks_statistic(&mut half, &mut full);
        assert!(d < crate::mc_harness::ks_critical(n as usize, n as usize, 1e-3), "{d}");
    }

    #[test]
    fn degenerate_constant_path() {
        let y = YPath::new(bm(), vec![0.0; 101]).unwrap();
        let lt = estimate_local_time(&y, 0.1, 0.5).unwrap();
        assert_eq!(lt.cells.len(), 1);
        assert!((lt.at(0.0) - 0.5 / 0.1).abs() < 1e-12);
    }

    #[test]
    fn occupation_identity() {
        let m = 4096;
        for i in 0..20 {
            let y = sample_y_path(&bm(), m, &mut derive_stream(4, i));
            let lt = estimate_local_time(&y, 0.01, 1.0).unwrap();
            assert!((lt.occupation() - 1.0).abs() <= 2.0 / (m as f64).sqrt());
            assert!(lt.cells.values().all(|&v| v >= 0.0));
        }
    }

    #[test]
    fn no_local_time_below_index_one() {
        let cauchy = StableLaw::new(1.0, 1.0, 0.0).unwrap();
        let y = sample_y_path(&cauchy, 16, &mut derive_stream(0, 0));
        assert!(estimate_local_time(&y, 0.1, 1.0).is_err());
        assert!(kesten_spitzer_sample(&cauchy, &bm(), 16, 0.1, &TimeGrid::Mesh, derive_stream(0, 0)).is_err());
    }

    #[test]
    fn local_time_at_zero_matches_refined_run_and_closed_form() {
        // L_1(0) of standard Brownian motion is |N(0,1)|, mean sqrt(2/pi)
        let paths = 10_000u64;
        let mean_at_zero = |m: usize, h: f64, seed: u64| {
            (0..paths)
                .map(|i| {
                    let y = sample_y_path(&bm(), m, &mut derive_stream(seed, i));
                    estimate_local_time(&y, h, 1.0).unwrap().at(0.0)
                })
                .sum::<f64>()
                / paths as f64
        };
        let coarse = mean_at_zero(2048, 0.04, 5);
        let fine = mean_at_zero(20_480, 0.01, 6);
        assert!((coarse / fine - 1.0).abs() < 0.1, "{coarse} vs {fine}");
        let exact = (2.0 / std::f64::consts::PI).sqrt();
        assert!((fine / exact - 1.0).abs() < 0.05, "{fine}");
    }

    #[test]
    fn zero_noise_gives_zero_path() {
        let y = sample_y_path(&bm(), 512, &mut derive_stream(7, 7));
        let path = kesten_spitzer_integral(&y, 0.05, |_| 0.0, &TimeGrid::Mesh).unwrap();
        assert!(path.values.iter().all(|&v| v == 0.0));
        assert_eq!(path.values.len(), 513);
    }

    #[test]
    fn grid_points_agree_with_mesh() {
        let rng = derive_stream(8, 1);
        let full = kesten_spitzer_sample(&bm(), &bm(), 1000, 0.02, &TimeGrid::Mesh, rng).unwrap();
        let pts = TimeGrid::Points(vec![0.0, 0.25, 0.5, 1.0]);
        let part = kesten_spitzer_sample(&bm(), &bm(), 1000, 0.02, &pts, rng).unwrap();
        assert_eq!(part.values[0], 0.0);
        for (t, v) in part.times.iter().zip(&part.values) {
            assert_eq!(*v, full.values[(t * 1000.0) as usize]);
        }
        assert!(kesten_spitzer_sample(&bm(), &bm(), 10, 0.1, &TimeGrid::Points(vec![0.5, 0.2]), rng).is_err());
    }

    #[test]
    fn variance_stable_under_refinement() {
        let paths = 10_000u64;
        let var_at_one = |m: usize, h: f64, seed: u64| {
            (0..paths)
                .map(|i| {
                    let v = kesten_spitzer_sample(&bm(), &bm(), m, h, &TimeGrid::Points(vec![1.0]), derive_stream(seed, i))
                        .unwrap()
                        .values[0];
                    v * v
                })
                .sum::<f64>()
                / paths as f64
        };
        let coarse = var_at_one(1024, 0.04, 11);
        let fine = var_at_one(4096, 0.02, 12);
        assert!((coarse / fine - 1.0).abs() < 0.1, "{coarse} vs {fine}");
    }

    #[test]
    fn symmetric_integrator_is_centered() {
        let paths = 10_000u64;
        let xs: Vec<f64> = (0..paths)
            .map(|i| {
                kesten_spitzer_sample(&bm(), &bm(), 512, 0.05, &TimeGrid::Points(vec![1.0]), derive_stream(13, i))
                    .unwrap()
                    .values[0]
            })
            .collect();
        let mean = xs.iter().sum::<f64>() / paths as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (paths - 1) as f64;
        assert!(mean.abs() < 4.0 * (var / paths as f64).sqrt());
    }

    #[test]
    fn functionals_basics() {
        assert_eq!(
            functionals(&[0.0, 0.0]),
            PathFunctionals {
                sup: 0.0,
                inf: 0.0,
                spread: 0.0
            }
        );
        let f = functionals(&[0.0, 0.5, 1.0, 2.5]);
        assert_eq!((f.inf, f.sup, f.spread), (0.0, 2.5, 2.5));
    }

    #[test]
    fn k_p_values() {
        assert!((k_p(0.5).unwrap() - 2f64.powf(-0.75)).abs() < 1e-15);
        assert!((k_p(0.5).unwrap() - 0.5946).abs() < 1e-4);
        let direct = 0.75 / 0.25f64.sqrt().sqrt();
        assert!((k_p(0.75).unwrap() - direct).abs() < 1e-15);
        assert!((k_p(0.75).unwrap() - 1.0607).abs() < 1e-4);
        assert!(k_p(1e-9).unwrap() < 1e-8);
        assert!(k_p(1.0).is_err());
    }
}
