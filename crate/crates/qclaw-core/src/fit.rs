//! Log-log least-squares exponent fitting for scaling sweeps.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A fitted power law: cost ~ C * size^slope (after optional normalization).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// The fitted (log2 size, log2 normalized cost) points.
    pub points: Vec<(f64, f64)>,
}

/// Least-squares line through (log2 size, log2 (cost / normalizer(size))).
///
/// Pass a normalizer to strip a known factor (e.g. divide by log2 N) before
/// fitting the exponent.
pub fn fit_exponent(
    points: &[(f64, f64)],
    normalizer: Option<&dyn Fn(f64) -> f64>,
) -> Result<FitResult> {
    if points.len() < 3 {
        return Err(Error::DegenerateFit(format!(
            "need at least 3 points, got {}",
            points.len()
        )));
    }
    let mut logs = Vec::with_capacity(points.len());
    for &(size, cost) in points {
        if !(size > 0.0 && cost > 0.0) {
            return Err(Error::DegenerateFit(format!(
                "non-positive point ({size}, {cost})"
            )));
        }
        let denom = match normalizer {
            Some(f) => f(size),
            None => 1.0,
        };
        if !denom.is_finite() || denom <= 0.0 {
            return Err(Error::DegenerateFit(format!(
                "normalizer not positive at {size}"
            )));
        }
        logs.push((size.log2(), (cost / denom).log2()));
    }
    let n = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit("all sizes identical".into()));
    }
    let sxy: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_tot: f64 = logs.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    let ss_res: f64 = logs
        .iter()
        .map(|p| (p.1 - (intercept + slope * p.0)).powi(2))
        .sum();
    let r_squared = if ss_tot == 0.0 {
        1.0
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    };
    Ok(FitResult {
        slope,
        intercept,
        r_squared,
        points: logs,
    })
}
