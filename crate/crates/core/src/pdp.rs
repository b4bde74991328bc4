//! Power delay profile processing: multipath detection, power integration and
//! delay moments (mean excess delay, RMS delay spread).

use serde::{Deserialize, Serialize};

use crate::error::{ChannelError, Result};
use crate::types::Pdp;
use crate::units::{compensated_sum, db_to_linear, CompensatedSum};

pub const DEFAULT_THRESHOLD_DB: f64 = 5.0;
pub const DEFAULT_DYNAMIC_RANGE_DB: f64 = 30.0;

/// Multipath detection knobs: a bin survives only if it is at least
/// `threshold_db` above the noise floor and within `dynamic_range_db` of the
/// peak.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectionThresholds {
    pub threshold_db: f64,
    pub dynamic_range_db: f64,
}

impl Default for DetectionThresholds {
    fn default() -> Self {
        Self {
            threshold_db: DEFAULT_THRESHOLD_DB,
            dynamic_range_db: DEFAULT_DYNAMIC_RANGE_DB,
        }
    }
}

impl DetectionThresholds {
    /// Keeps every non-negative bin.
    pub const PASS_ALL: DetectionThresholds = DetectionThresholds {
        threshold_db: 0.0,
        dynamic_range_db: f64::INFINITY,
    };

    pub fn apply(&self, pdp: &Pdp) -> Result<Pdp> {
        threshold_pdp(pdp, self.threshold_db, self.dynamic_range_db)
    }
}

/// Delay moments of a power delay profile. Delays are excess delays measured
/// from the first positive bin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DelayStats {
    pub mean_excess_delay_ns: f64,
    pub second_moment_ns2: f64,
    pub rms_delay_spread_ns: f64,
    pub total_power_mw: f64,
}

/// Zero every bin below `max(noise * 10^(t/10), peak * 10^(-dr/10))`. The peak
/// bin is always kept.
pub fn threshold_pdp(
    pdp: &Pdp,
    threshold_db_above_noise: f64,
    dynamic_range_db: f64,
) -> Result<Pdp> {
    if threshold_db_above_noise.is_nan() || threshold_db_above_noise < 0.0 {
        return Err(ChannelError::InvalidParameter {
            name: "threshold_db",
            value: threshold_db_above_noise,
            reason: "threshold must be non-negative",
        });
    }
    if dynamic_range_db.is_nan() || dynamic_range_db < 0.0 {
        return Err(ChannelError::InvalidParameter {
            name: "dynamic_range_db",
            value: dynamic_range_db,
            reason: "dynamic range must be non-negative",
        });
    }
    let powers = pdp.powers_mw();
    let peak = pdp.peak_mw();
    if peak == 0.0 {
        return Ok(pdp.clone());
    }
    let noise_cut = pdp.noise_floor_mw() * db_to_linear(threshold_db_above_noise);
    let range_cut = peak * db_to_linear(-dynamic_range_db);
    let cut = noise_cut.max(range_cut);
    let peak_bin = powers
        .iter()
        .position(|&p| p == peak)
        .expect("peak is one of the bins");
    let kept = powers
        .iter()
        .enumerate()
        .map(|(k, &p)| if k == peak_bin || p >= cut { p } else { 0.0 })
        .collect();
    Ok(pdp.with_powers(kept))
}

/// Total power over all bins, mW.
pub fn integrate_power_mw(pdp: &Pdp) -> f64 {
    compensated_sum(pdp.powers_mw().iter().copied())
}

/// Power-weighted first and second delay moments and the RMS delay spread.
pub fn delay_stats(pdp: &Pdp) -> Result<DelayStats> {
    let first = pdp.first_positive_bin().ok_or(ChannelError::NoMultipath)?;
    let spacing = pdp.bin_spacing_ns();
    let tail = &pdp.powers_mw()[first..];

    let mut power = CompensatedSum::default();
    let mut first_moment = CompensatedSum::default();
    let mut second_moment = CompensatedSum::default();
    for (k, &p) in tail.iter().enumerate() {
        let tau = k as f64 * spacing;
        power.add(p);
        first_moment.add(p * tau);
        second_moment.add(p * tau * tau);
    }
    let total = power.value();
    let mean = first_moment.value() / total;
    let second = second_moment.value() / total;

    // Central moment in a second pass; avoids cancellation in second - mean^2.
    let central = compensated_sum(tail.iter().enumerate().map(|(k, &p)| {
        let dev = k as f64 * spacing - mean;
        p * dev * dev
    })) / total;

    Ok(DelayStats {
        mean_excess_delay_ns: mean,
        second_moment_ns2: second,
        rms_delay_spread_ns: central.max(0.0).sqrt(),
        total_power_mw: total,
    })
}

/// Drop leading empty bins so the first positive bin sits at zero delay.
pub fn excess_delay_rebase(pdp: &Pdp) -> Result<Pdp> {
    let first = pdp.first_positive_bin().ok_or(ChannelError::NoMultipath)?;
    Ok(pdp.with_powers(pdp.powers_mw()[first..].to_vec()))
}
