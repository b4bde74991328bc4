//! Least-squares (MMSE) fitting of close-in model parameters and empirical
//! distribution statistics for delay spreads.
//!
//! With `A = PL - PL_FS(d0)` and `B = 10 log10(d / d0)` the model is
//! `A = ple * B + chi`, a line through the origin, so the minimizer is
//! `sum(A B) / sum(B^2)`. The shadow factor is the RMS residual (population
//! normalization).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{ChannelError, Result};
use crate::pathloss::free_space_pl_db;
use crate::types::{
    CiModelParams, Directionality, Environment, FrequencyBand, PathLossSample, Polarization,
    StratumKey,
};
use crate::units::compensated_sum;

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub band: FrequencyBand,
    pub env: Environment,
    pub pol: Polarization,
    pub dir: Directionality,
    pub ple_hat: f64,
    pub sigma_hat_db: f64,
    pub n_samples: usize,
    pub residuals_db: Vec<f64>,
    pub d0_m: f64,
}

impl FitResult {
    pub fn stratum(&self) -> StratumKey {
        StratumKey {
            band: self.band,
            env: self.env,
            pol: self.pol,
            dir: self.dir,
        }
    }

    /// The fitted model in catalog form.
    pub fn to_params(&self) -> Result<CiModelParams> {
        CiModelParams::new(self.stratum(), self.ple_hat, self.sigma_hat_db, self.d0_m)
    }
}

/// Mean, population standard deviation, maximum and 90th percentile of a set
/// of RMS delay spreads, nanoseconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpreadSummary {
    pub mean_ns: f64,
    pub std_ns: f64,
    pub max_ns: f64,
    pub p90_ns: f64,
}

struct Regressors {
    excess_db: Vec<f64>,
    log_distance: Vec<f64>,
}

fn regressors(samples: &[PathLossSample], band: FrequencyBand, d0_m: f64) -> Result<Regressors> {
    let anchor = free_space_pl_db(band, d0_m)?;
    let mut excess_db = Vec::with_capacity(samples.len());
    let mut log_distance = Vec::with_capacity(samples.len());
    for s in samples {
        s.validate()?;
        if s.distance_m < d0_m {
            return Err(ChannelError::DistanceBelowReference {
                distance_m: s.distance_m,
                d0_m,
            });
        }
        excess_db.push(s.path_loss_db - anchor);
        log_distance.push(10.0 * (s.distance_m / d0_m).log10());
    }
    Ok(Regressors {
        excess_db,
        log_distance,
    })
}

/// Sum of squared residuals of `samples` about the line with exponent `ple`.
pub fn sum_squared_residuals(
    samples: &[PathLossSample],
    band: FrequencyBand,
    d0_m: f64,
    ple: f64,
) -> Result<f64> {
    let r = regressors(samples, band, d0_m)?;
    Ok(compensated_sum(
        r.excess_db
            .iter()
            .zip(&r.log_distance)
            .map(|(a, b)| (a - ple * b).powi(2)),
    ))
}

/// Fit exponent and shadow factor for a single stratum.
pub fn fit_ci_model(
    samples: &[PathLossSample],
    band: FrequencyBand,
    d0_m: f64,
) -> Result<FitResult> {
    let first = samples
        .first()
        .ok_or(ChannelError::EmptyInput("no path loss samples to fit"))?;
    let stratum = first.stratum();
    if !stratum.band.same_carrier(&band) {
        return Err(ChannelError::MixedStrata(format!(
            "samples are at {} but the fit was requested at {}",
            stratum.band, band
        )));
    }
    if let Some(other) = samples.iter().find(|s| {
        let k = s.stratum();
        !k.band.same_carrier(&band)
            || (k.env, k.pol, k.dir) != (stratum.env, stratum.pol, stratum.dir)
    }) {
        return Err(ChannelError::MixedStrata(format!(
            "{} and {} in one fit",
            stratum,
            other.stratum()
        )));
    }

    let r = regressors(samples, band, d0_m)?;
    let sxy = compensated_sum(r.excess_db.iter().zip(&r.log_distance).map(|(a, b)| a * b));
    let sxx = compensated_sum(r.log_distance.iter().map(|b| b * b));
    if sxx == 0.0 {
        return Err(ChannelError::DegenerateFit);
    }
    let ple_hat = sxy / sxx;
    let residuals_db: Vec<f64> = r
        .excess_db
        .iter()
        .zip(&r.log_distance)
        .map(|(a, b)| a - ple_hat * b)
        .collect();
    let n = residuals_db.len();
    let sigma_hat_db = (compensated_sum(residuals_db.iter().map(|e| e * e)) / n as f64).sqrt();

    Ok(FitResult {
        band,
        env: stratum.env,
        pol: stratum.pol,
        dir: stratum.dir,
        ple_hat,
        sigma_hat_db,
        n_samples: n,
        residuals_db,
        d0_m,
    })
}

/// Group samples by stratum and fit each group. Output is ordered by stratum.
pub fn fit_by_stratum(
    samples: &[PathLossSample],
    d0_m: f64,
) -> Vec<(StratumKey, Result<FitResult>)> {
    let mut groups: BTreeMap<StratumKey, Vec<PathLossSample>> = BTreeMap::new();
    for s in samples {
        groups.entry(s.stratum()).or_default().push(s.clone());
    }
    groups
        .into_iter()
        .map(|(key, group)| (key, fit_ci_model(&group, key.band, d0_m)))
        .collect()
}

fn sorted_finite(values: &[f64]) -> Result<Vec<f64>> {
    if values.is_empty() {
        return Err(ChannelError::EmptyInput("no values"));
    }
    if let Some(&bad) = values.iter().find(|v| !v.is_finite()) {
        return Err(ChannelError::InvalidParameter {
            name: "value",
            value: bad,
            reason: "values must be finite",
        });
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(sorted)
}

/// Step CDF: sorted values paired with `i / N` for `i = 1..=N`.
pub fn empirical_cdf(values: &[f64]) -> Result<Vec<(f64, f64)>> {
    let sorted = sorted_finite(values)?;
    let n = sorted.len() as f64;
    Ok(sorted
        .into_iter()
        .enumerate()
        .map(|(i, v)| (v, (i + 1) as f64 / n))
        .collect())
}

fn percentile_sorted(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    let cdf = |rank: usize| rank as f64 / n as f64;
    // Smallest rank whose step reaches p, evaluated with the same arithmetic
    // as `empirical_cdf` so the two agree exactly at sample points.
    let mut rank = ((p * n as f64).ceil() as usize).clamp(1, n);
    while rank > 1 && cdf(rank - 1) >= p {
        rank -= 1;
    }
    while rank < n && cdf(rank) < p {
        rank += 1;
    }
    sorted[rank - 1]
}

/// Inverse-CDF percentile (lower convention, no interpolation): the smallest
/// sample `v` with `F(v) >= p`.
pub fn percentile(values: &[f64], p: f64) -> Result<f64> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(ChannelError::InvalidProbability(p));
    }
    let sorted = sorted_finite(values)?;
    Ok(percentile_sorted(&sorted, p))
}

pub fn summarize_spreads(values: &[f64]) -> Result<SpreadSummary> {
    let sorted = sorted_finite(values)?;
    let n = sorted.len() as f64;
    let mean = compensated_sum(sorted.iter().copied()) / n;
    let var = compensated_sum(sorted.iter().map(|v| (v - mean).powi(2))) / n;
    Ok(SpreadSummary {
        mean_ns: mean,
        std_ns: var.sqrt(),
        max_ns: sorted[sorted.len() - 1],
        p90_ns: percentile_sorted(&sorted, 0.9),
    })
}
