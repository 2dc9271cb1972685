use serde::Serialize;

use crate::error::{Error, Result};

pub const MIN_FIT_POINTS: usize = 4;
/// Largest allowed change of local slope between the two halves of the data.
pub const SLOPE_DRIFT_LIMIT: f64 = 0.05;

#[derive(Clone, Debug, Serialize)]
pub struct DecayFit {
    /// `(t, p_{2t})` pairs that entered the fit.
    pub samples: Vec<(f64, f64)>,
    /// Slope `β` of `log(−log p_{2t})` against `log t`.
    pub beta: f64,
    pub intercept: f64,
    pub std_error: f64,
    pub residuals: Vec<f64>,
    /// Slope on the first half minus slope on the second half.
    pub slope_drift: f64,
    pub poor_fit: bool,
}

struct Line {
    slope: f64,
    intercept: f64,
    std_error: f64,
}

fn least_squares(xs: &[f64], ys: &[f64]) -> Line {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = xs.iter().zip(ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let std_error = if xs.len() > 2 { (ssr / (n - 2.0) / sxx).sqrt() } else { f64::NAN };
    Line { slope, intercept, std_error }
}

/// Least-squares fit of `log(−log p_{2t}) = β·log t + c` on the points with
/// `t > 0` and `0 < p_{2t} < 1`.
pub fn decay_fit(returns: &[(f64, f64)]) -> Result<DecayFit> {
    if returns.iter().all(|&(_, p)| p == 0.0) {
        return Err(Error::InsufficientData("all return probabilities are zero".into()));
    }
    let samples: Vec<(f64, f64)> = returns.iter().copied().filter(|&(t, p)| t > 0.0 && p > 0.0 && p < 1.0).collect();
    if samples.len() < MIN_FIT_POINTS {
        return Err(Error::InsufficientData(format!(
            "{} usable points, need at least {MIN_FIT_POINTS}",
            samples.len()
        )));
    }
    let xs: Vec<f64> = samples.iter().map(|(t, _)| t.ln()).collect();
    let ys: Vec<f64> = samples.iter().map(|(_, p)| (-p.ln()).ln()).collect();
    let line = least_squares(&xs, &ys);
    let residuals = xs.iter().zip(&ys).map(|(x, y)| y - line.intercept - line.slope * x).collect();
    let half = xs.len() / 2;
    let first = least_squares(&xs[..half.max(2)], &ys[..half.max(2)]);
    let second = least_squares(&xs[half.min(xs.len() - 2)..], &ys[half.min(xs.len() - 2)..]);
    let slope_drift = first.slope - second.slope;
    Ok(DecayFit {
        samples,
        beta: line.slope,
        intercept: line.intercept,
        std_error: line.std_error,
        residuals,
        slope_drift,
        poor_fit: slope_drift.abs() > SLOPE_DRIFT_LIMIT,
    })
}
