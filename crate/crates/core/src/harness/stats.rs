//! Sample statistics and scaling fits.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn mean(values: &[f64]) -> Option<f64> {
    (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
}

/// Unbiased sample variance (divisor `len − 1`).
pub fn sample_variance(values: &[f64]) -> Option<f64> {
    if values.len() < 2 {
        return None;
    }
    let m = mean(values)?;
    let ss: f64 = values.iter().map(|v| (v - m) * (v - m)).sum();
    Some(ss / (values.len() - 1) as f64)
}

/// Square root of [`sample_variance`]; zero for a single value.
pub fn sample_std(values: &[f64]) -> Option<f64> {
    match values.len() {
        0 => None,
        1 => Some(0.0),
        _ => sample_variance(values).map(f64::sqrt),
    }
}

/// Variance of `ln v`, defined only when every value is strictly positive.
pub fn log_variance(values: &[f64]) -> Option<f64> {
    if values.iter().any(|&v| v <= 0.0 || !v.is_finite()) {
        return None;
    }
    let logs: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    sample_variance(&logs)
}

pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let k = v.len() / 2;
    Some(if v.len() % 2 == 1 { v[k] } else { 0.5 * (v[k - 1] + v[k]) })
}

/// Ordinary least squares `y ≈ slope·x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<LinearFit> {
    if xs.len() != ys.len() {
        return Err(Error::SizeMismatch {
            expected: xs.len(),
            actual: ys.len(),
        });
    }
    if xs.len() < 2 {
        return Err(Error::Experiment("a fit needs at least two points".into()));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Experiment("fit abscissae are all equal".into()));
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - slope * x - intercept).powi(2))
        .sum();
    let r_squared = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Ok(LinearFit {
        slope,
        intercept,
        r_squared,
    })
}

/// Power-law fit on `(ln n, ln Var)` and exponential fit on `(n, ln Var)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    /// `Var ∝ n^exponent`; the exponent is `power_law.slope`.
    pub power_law: LinearFit,
    /// `Var ∝ e^{rate·n}`; the rate is `exponential.slope`.
    pub exponential: LinearFit,
}

impl ScalingFit {
    pub fn exponent(&self) -> f64 {
        self.power_law.slope
    }

    pub fn rate(&self) -> f64 {
        self.exponential.slope
    }
}

pub fn fit_scaling(points: &[(f64, f64)]) -> Result<ScalingFit> {
    if points.len() < 3 {
        return Err(Error::Experiment(format!(
            "scaling fits need at least 3 points, got {}",
            points.len()
        )));
    }
    if let Some(&(n, v)) = points.iter().find(|(n, v)| *v <= 0.0 || *n <= 0.0) {
        return Err(Error::Experiment(format!(
            "scaling fits need positive sizes and variances, got ({n}, {v})"
        )));
    }
    let ln_var: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let sizes: Vec<f64> = points.iter().map(|p| p.0).collect();
    let ln_sizes: Vec<f64> = sizes.iter().map(|n| n.ln()).collect();
    Ok(ScalingFit {
        power_law: linear_fit(&ln_sizes, &ln_var)?,
        exponential: linear_fit(&sizes, &ln_var)?,
    })
}
