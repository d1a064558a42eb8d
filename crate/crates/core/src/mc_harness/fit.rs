use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{Error, Result};

/// Least squares of `log estimate` on `log n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub slope: f64,
    pub intercept: f64,
    /// Euclidean norm of the log residuals.
    pub residual_norm: f64,
    pub slope_std_error: f64,
    pub points: usize,
}

impl ScalingFit {
    /// Half-width of a residual-based interval for the slope.
    pub fn slope_ci_half(&self, confidence: f64) -> Option<f64> {
        let dof = self.points.checked_sub(2).filter(|&d| d > 0)? as f64;
        let t = StudentsT::new(0.0, 1.0, dof).ok()?.inverse_cdf(0.5 + 0.5 * confidence);
        Some(t * self.slope_std_error)
    }
}

pub fn scaling_fit(points: &[(f64, f64)]) -> Result<ScalingFit> {
    if points.len() < 3 {
        return Err(Error::InvalidExperiment(format!(
            "a scaling fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    if let Some(&(n, v)) = points.iter().find(|&&(n, v)| !(n > 0.0 && v > 0.0)) {
        return Err(Error::InvalidExperiment(format!(
            "nonpositive point ({n}, {v}) cannot be log-transformed"
        )));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(n, v)| (n.ln(), v.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidExperiment("all sizes are equal".into()));
    }
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = logs
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    Ok(ScalingFit {
        slope,
        intercept,
        residual_norm: rss.sqrt(),
        slope_std_error: (rss / (k - 2.0) / sxx).sqrt(),
        points: logs.len(),
    })
}
