//! Close-in free-space reference path loss model.
//!
//! Mean loss is the exact free-space loss at the reference distance plus
//! `10 * ple` dB per decade beyond it. Shadowing is a zero-mean Gaussian in
//! dB (lognormal in linear power), drawn independently per sample.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{ChannelError, Result};
use crate::types::{CiModelParams, FrequencyBand};

/// One realization of the shadowing term, dB.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShadowingDraw {
    pub chi_db: f64,
}

impl ShadowingDraw {
    pub fn sample<R: Rng + ?Sized>(sigma_db: f64, rng: &mut R) -> Result<Self> {
        let normal = Normal::new(0.0, sigma_db).map_err(|_| ChannelError::InvalidParameter {
            name: "sigma_db",
            value: sigma_db,
            reason: "shadow factor must be non-negative and finite",
        })?;
        Ok(Self {
            chi_db: normal.sample(rng),
        })
    }
}

/// Free-space loss `20 log10(4 pi d0 / lambda)` in dB.
pub fn free_space_pl_db(band: FrequencyBand, d0_m: f64) -> Result<f64> {
    if !(d0_m.is_finite() && d0_m > 0.0) {
        return Err(ChannelError::InvalidParameter {
            name: "d0_m",
            value: d0_m,
            reason: "reference distance must be positive",
        });
    }
    Ok(20.0 * (4.0 * PI * d0_m / band.wavelength_m()).log10())
}

fn check_distance(params: &CiModelParams, distance_m: f64) -> Result<()> {
    if distance_m.is_nan() || distance_m < params.d0_m {
        return Err(ChannelError::DistanceBelowReference {
            distance_m,
            d0_m: params.d0_m,
        });
    }
    if !distance_m.is_finite() {
        return Err(ChannelError::InvalidParameter {
            name: "distance_m",
            value: distance_m,
            reason: "distance must be finite",
        });
    }
    Ok(())
}

/// Mean path loss (no shadowing) at `distance_m`.
pub fn mean_path_loss_db(params: &CiModelParams, distance_m: f64) -> Result<f64> {
    check_distance(params, distance_m)?;
    let anchor = free_space_pl_db(params.band, params.d0_m)?;
    Ok(anchor + 10.0 * params.ple * (distance_m / params.d0_m).log10())
}

/// Mean path loss plus one shadowing draw from `rng`.
pub fn sample_path_loss_db<R: Rng + ?Sized>(
    params: &CiModelParams,
    distance_m: f64,
    rng: &mut R,
) -> Result<f64> {
    let mean = mean_path_loss_db(params, distance_m)?;
    let chi = ShadowingDraw::sample(params.shadow_sigma_db, rng)?;
    Ok(mean + chi.chi_db)
}

/// Cross-polarization discrimination in dB per decade of distance:
/// `10 * (cross.ple - co.ple)`.
pub fn xpd_per_decade_db(co: &CiModelParams, cross: &CiModelParams) -> Result<f64> {
    if !co.band.same_carrier(&cross.band) {
        return Err(ChannelError::MismatchedParams("bands differ"));
    }
    if co.env != cross.env {
        return Err(ChannelError::MismatchedParams("environments differ"));
    }
    if co.dir != cross.dir {
        return Err(ChannelError::MismatchedParams("directionality differs"));
    }
    if co.d0_m != cross.d0_m {
        return Err(ChannelError::MismatchedParams("reference distances differ"));
    }
    Ok(10.0 * (cross.ple - co.ple))
}
