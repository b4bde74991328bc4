//! Omnidirectional received power and path loss synthesized from directional
//! sweeps.
//!
//! Powers at every unique TX/RX pointing combination are summed, then the
//! transmit power and both antenna gains are removed. Angles revisited by
//! several sweeps count once, keeping the strongest measurement. Summation
//! assumes adjacent pointings are one HPBW apart; tighter spacing is reported
//! as a warning.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{ChannelError, Result};
use crate::pdp::{integrate_power_mw, DetectionThresholds};
use crate::types::{
    CampaignRecord, Directionality, PathLossSample, PointingAngle, PointingKey, Polarization,
    SounderSpec, SweepId,
};
use crate::units::{compensated_sum, mw_to_dbm};

const ANGLE_EPS_DEG: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub enum SynthesisWarning {
    /// The same pointing combination was measured in more than one place.
    DuplicatePointing {
        angle: PointingAngle,
        first: SweepId,
        repeat: SweepId,
    },
    /// Azimuth steps inside a sweep are closer than the antenna HPBW.
    SubHpbwSpacing {
        sweep_id: SweepId,
        spacing_deg: f64,
        hpbw_deg: f64,
    },
    OutsideMeasuredSpan {
        distance_m: f64,
    },
}

impl fmt::Display for SynthesisWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SynthesisWarning::DuplicatePointing { angle, first, repeat } => write!(
                f,
                "duplicate pointing {angle} in {repeat} (first seen in {first}); keeping the stronger measurement"
            ),
            SynthesisWarning::SubHpbwSpacing {
                sweep_id,
                spacing_deg,
                hpbw_deg,
            } => write!(
                f,
                "{sweep_id}: azimuth spacing {spacing_deg}° is below the {hpbw_deg}° HPBW; adjacent beams overlap"
            ),
            SynthesisWarning::OutsideMeasuredSpan { distance_m } => write!(
                f,
                "distance {distance_m} m is outside the measured 3.9-45.9 m span"
            ),
        }
    }
}

/// Received power at one unique pointing combination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointingPower {
    pub angle: PointingAngle,
    pub power_mw: f64,
    pub sweep_id: SweepId,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OmniPower {
    pub power_mw: f64,
    pub pointings: Vec<PointingPower>,
    pub warnings: Vec<SynthesisWarning>,
}

/// Thresholded received power at every unique pointing combination, in a
/// stable (angle-sorted) order, plus duplicate warnings.
pub fn unique_pointing_powers(
    record: &CampaignRecord,
    thresholds: &DetectionThresholds,
) -> Result<(Vec<PointingPower>, Vec<SynthesisWarning>)> {
    if record.entry_count() == 0 {
        return Err(ChannelError::EmptyInput(
            "campaign record has no pointing entries",
        ));
    }
    let mut by_key: BTreeMap<PointingKey, PointingPower> = BTreeMap::new();
    let mut warnings = Vec::new();
    for sweep in &record.sweeps {
        for entry in &sweep.entries {
            let power_mw = integrate_power_mw(&thresholds.apply(&entry.pdp)?);
            let candidate = PointingPower {
                angle: entry.angle,
                power_mw,
                sweep_id: sweep.sweep_id,
            };
            match by_key.get_mut(&entry.angle.key()) {
                Some(existing) => {
                    warnings.push(SynthesisWarning::DuplicatePointing {
                        angle: entry.angle,
                        first: existing.sweep_id,
                        repeat: sweep.sweep_id,
                    });
                    if candidate.power_mw > existing.power_mw {
                        *existing = candidate;
                    }
                }
                None => {
                    by_key.insert(entry.angle.key(), candidate);
                }
            }
        }
    }
    Ok((by_key.into_values().collect(), warnings))
}

/// Smallest circular gap between distinct azimuths, if there are at least two.
fn min_azimuth_gap_deg(azimuths: impl Iterator<Item = f64>) -> Option<f64> {
    let mut wrapped: Vec<f64> = azimuths.map(|a| a.rem_euclid(360.0)).collect();
    wrapped.sort_by(f64::total_cmp);
    wrapped.dedup_by(|a, b| (*a - *b).abs() < ANGLE_EPS_DEG);
    if wrapped.len() < 2 {
        return None;
    }
    let wrap_gap = 360.0 - wrapped[wrapped.len() - 1] + wrapped[0];
    wrapped
        .windows(2)
        .map(|w| w[1] - w[0])
        .chain(std::iter::once(wrap_gap))
        .min_by(f64::total_cmp)
}

/// Warn for each sweep whose stepped azimuth (TX or RX) moves by less than the
/// azimuth HPBW.
pub fn sweep_spacing_warnings(record: &CampaignRecord) -> Vec<SynthesisWarning> {
    let hpbw = record.spec.azimuth_hpbw_deg;
    let mut warnings = Vec::new();
    for sweep in &record.sweeps {
        let tx = min_azimuth_gap_deg(sweep.entries.iter().map(|e| e.angle.theta_tx_deg));
        let rx = min_azimuth_gap_deg(sweep.entries.iter().map(|e| e.angle.theta_rx_deg));
        let spacing = match (tx, rx) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        if let Some(spacing_deg) = spacing {
            if spacing_deg < hpbw - ANGLE_EPS_DEG {
                warnings.push(SynthesisWarning::SubHpbwSpacing {
                    sweep_id: sweep.sweep_id,
                    spacing_deg,
                    hpbw_deg: hpbw,
                });
            }
        }
    }
    warnings
}

/// Sum of thresholded power over unique pointing combinations, mW.
pub fn omni_received_power_mw(
    record: &CampaignRecord,
    thresholds: &DetectionThresholds,
) -> Result<OmniPower> {
    let (pointings, mut warnings) = unique_pointing_powers(record, thresholds)?;
    warnings.extend(sweep_spacing_warnings(record));
    if record.outside_measured_span() {
        warnings.push(SynthesisWarning::OutsideMeasuredSpan {
            distance_m: record.distance_m,
        });
    }
    let power_mw = compensated_sum(pointings.iter().map(|p| p.power_mw));
    Ok(OmniPower {
        power_mw,
        pointings,
        warnings,
    })
}

/// `P_TX + G_t + G_r - 10 log10(Pr)` with `Pr` in mW (so its log is dBm).
pub fn path_loss_from_power_db(spec: &SounderSpec, received_mw: f64) -> Result<f64> {
    if received_mw.is_nan() || received_mw <= 0.0 {
        return Err(ChannelError::ZeroPower);
    }
    Ok(
        spec.max_tx_power_dbm + spec.tx_antenna_gain_dbi + spec.rx_antenna_gain_dbi
            - mw_to_dbm(received_mw),
    )
}

pub fn omni_path_loss_db(record: &CampaignRecord, thresholds: &DetectionThresholds) -> Result<f64> {
    let omni = omni_received_power_mw(record, thresholds)?;
    path_loss_from_power_db(&record.spec, omni.power_mw)
}

/// Polarization shared by all sweeps of a record.
pub fn record_polarization(record: &CampaignRecord) -> Result<Polarization> {
    let mut pols = record.sweeps.iter().map(|s| s.pol);
    let first = pols
        .next()
        .ok_or(ChannelError::EmptyInput("campaign record has no sweeps"))?;
    if pols.any(|p| p != first) {
        return Err(ChannelError::MixedStrata(format!(
            "location {} mixes V-V and V-H sweeps",
            record.location_id
        )));
    }
    Ok(first)
}

/// Omnidirectional path-loss sample for one location, with any warnings.
pub fn synthesize_sample(
    record: &CampaignRecord,
    thresholds: &DetectionThresholds,
) -> Result<(PathLossSample, Vec<SynthesisWarning>)> {
    let pol = record_polarization(record)?;
    let omni = omni_received_power_mw(record, thresholds)?;
    let path_loss_db = path_loss_from_power_db(&record.spec, omni.power_mw)?;
    let sample = PathLossSample {
        location_id: record.location_id.clone(),
        band: record.spec.band,
        env: record.env,
        pol,
        dir: Directionality::Omnidirectional,
        distance_m: record.distance_m,
        path_loss_db,
    };
    Ok((sample, omni.warnings))
}
