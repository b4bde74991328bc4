//! Built-in parameter catalog for the 28 GHz and 73.5 GHz indoor office
//! measurements: close-in model exponents and shadow factors, directional RMS
//! delay-spread statistics, and sounder hardware constants.
//!
//! The 73.5 GHz maximum transmit power is stored as 14.6 dBm (the sounder
//! equipment value). A lower 12.3 dBm figure also circulates for the same
//! campaign; it is not used here.

use serde::{Deserialize, Serialize};

use crate::error::{ChannelError, Result};
use crate::types::{
    CiModelParams, Directionality, Environment, FrequencyBand, Polarization, SounderSpec,
    StratumKey,
};

/// Reference distance used by every catalog model, meters.
pub const CATALOG_D0_M: f64 = 1.0;

/// Bands present in the catalog.
pub const BANDS: [FrequencyBand; 2] = [FrequencyBand::GHZ_28, FrequencyBand::GHZ_73_5];

use Directionality::{Directional as Dir, Omnidirectional as Omni};
use Environment::{Los, Nlos, NlosBest};
use Polarization::{Vh, Vv};

// (dir, env, pol, [ple, sigma] @ 28 GHz, [ple, sigma] @ 73.5 GHz)
type PathLossRow = (
    Directionality,
    Environment,
    Polarization,
    [f64; 2],
    [f64; 2],
);

const PATH_LOSS_ROWS: [PathLossRow; 10] = [
    (Dir, Los, Vv, [1.7, 2.6], [1.7, 2.1]),
    (Dir, Nlos, Vv, [4.5, 11.6], [5.3, 15.6]),
    (Dir, NlosBest, Vv, [3.0, 10.8], [3.4, 11.8]),
    (Omni, Los, Vv, [1.1, 1.7], [1.3, 1.9]),
    (Omni, Nlos, Vv, [2.7, 9.6], [3.2, 11.3]),
    (Dir, Los, Vh, [4.1, 8.0], [4.7, 9.0]),
    (Dir, Nlos, Vh, [5.1, 10.9], [6.4, 15.8]),
    (Dir, NlosBest, Vh, [4.3, 9.1], [5.0, 10.9]),
    (Omni, Los, Vh, [2.5, 3.0], [3.5, 6.3]),
    (Omni, Nlos, Vh, [3.6, 9.4], [4.6, 9.7]),
];

/// Directional RMS delay-spread statistics for one scenario, nanoseconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DelaySpreadEntry {
    #[serde(rename = "band_ghz")]
    pub band: FrequencyBand,
    pub env: Environment,
    pub pol: Polarization,
    pub mean_ns: f64,
    pub std_ns: f64,
    pub max_ns: f64,
    /// Delay spread below which 90% of pointing angles fall.
    pub p90_ns: f64,
}

// (env, pol, [mean, std, max, p90] @ 28 GHz, same @ 73.5 GHz)
type SpreadRow = (Environment, Polarization, [f64; 4], [f64; 4]);

const SPREAD_ROWS: [SpreadRow; 4] = [
    (Los, Vv, [4.1, 1.3, 5.5, 5.5], [3.3, 1.8, 5.1, 5.1]),
    (
        Nlos,
        Vv,
        [18.4, 14.9, 193.0, 36.4],
        [13.3, 16.2, 287.5, 33.2],
    ),
    (Los, Vh, [12.8, 7.2, 125.9, 21.8], [21.2, 13.9, 80.6, 37.8]),
    (
        Nlos,
        Vh,
        [18.7, 12.4, 176.2, 31.4],
        [10.3, 10.3, 143.8, 26.0],
    ),
];

fn catalog_band(band: FrequencyBand) -> Option<usize> {
    BANDS.iter().position(|b| b.same_carrier(&band))
}

/// Every path-loss model in the catalog: V-V rows then V-H rows, each band in
/// turn.
pub fn path_loss_catalog() -> Vec<CiModelParams> {
    let mut out = Vec::with_capacity(PATH_LOSS_ROWS.len() * BANDS.len());
    for (dir, env, pol, at_28, at_73) in PATH_LOSS_ROWS {
        for (band, [ple, sigma]) in BANDS.into_iter().zip([at_28, at_73]) {
            let stratum = StratumKey {
                band,
                env,
                pol,
                dir,
            };
            out.push(
                CiModelParams::new(stratum, ple, sigma, CATALOG_D0_M)
                    .expect("catalog rows are valid"),
            );
        }
    }
    out
}

pub fn delay_spread_catalog() -> Vec<DelaySpreadEntry> {
    let mut out = Vec::with_capacity(SPREAD_ROWS.len() * BANDS.len());
    for (env, pol, at_28, at_73) in SPREAD_ROWS {
        for (band, [mean_ns, std_ns, max_ns, p90_ns]) in BANDS.into_iter().zip([at_28, at_73]) {
            out.push(DelaySpreadEntry {
                band,
                env,
                pol,
                mean_ns,
                std_ns,
                max_ns,
                p90_ns,
            });
        }
    }
    out
}

/// Published model for a stratum, with d0 = 1 m.
pub fn catalog_lookup(
    band: FrequencyBand,
    env: Environment,
    pol: Polarization,
    dir: Directionality,
) -> Result<CiModelParams> {
    let unknown = || ChannelError::UnknownCombination {
        band_ghz: band.ghz(),
        env,
        pol,
        dir,
    };
    let band_idx = catalog_band(band).ok_or_else(unknown)?;
    let band = BANDS[band_idx];
    path_loss_catalog()
        .into_iter()
        .find(|p| p.band == band && p.env == env && p.pol == pol && p.dir == dir)
        .ok_or_else(unknown)
}

pub fn lookup_stratum(stratum: StratumKey) -> Result<CiModelParams> {
    catalog_lookup(stratum.band, stratum.env, stratum.pol, stratum.dir)
}

pub fn delay_spread_lookup(
    band: FrequencyBand,
    env: Environment,
    pol: Polarization,
) -> Option<DelaySpreadEntry> {
    let band = BANDS[catalog_band(band)?];
    delay_spread_catalog()
        .into_iter()
        .find(|e| e.band == band && e.env == env && e.pol == pol)
}

/// Sounder constants for a catalog band.
pub fn sounder_spec(band: FrequencyBand) -> Result<SounderSpec> {
    match catalog_band(band) {
        Some(0) => Ok(SounderSpec {
            band: FrequencyBand::GHZ_28,
            max_tx_power_dbm: 24.0,
            tx_antenna_gain_dbi: 15.0,
            rx_antenna_gain_dbi: 15.0,
            azimuth_hpbw_deg: 30.0,
            elevation_hpbw_deg: 28.8,
            max_measurable_pl_db: 162.0,
            bin_spacing_ns: 2.5,
            chip_rate_mcps: 400.0,
            slide_factor: 8000.0,
        }),
        Some(_) => Ok(SounderSpec {
            band: FrequencyBand::GHZ_73_5,
            max_tx_power_dbm: 14.6,
            tx_antenna_gain_dbi: 20.0,
            rx_antenna_gain_dbi: 20.0,
            azimuth_hpbw_deg: 15.0,
            elevation_hpbw_deg: 15.0,
            max_measurable_pl_db: 163.0,
            bin_spacing_ns: 2.5,
            chip_rate_mcps: 400.0,
            slide_factor: 8000.0,
        }),
        None => Err(ChannelError::InvalidParameter {
            name: "band_ghz",
            value: band.ghz(),
            reason: "no sounder specification for this band",
        }),
    }
}

/// Path-loss catalog as a JSON array of
/// `{band_ghz, env, pol, dir, ple, sigma_db, d0_m}` objects.
pub fn path_loss_catalog_json() -> String {
    serde_json::to_string_pretty(&path_loss_catalog()).expect("catalog serializes")
}

pub fn delay_spread_catalog_json() -> String {
    serde_json::to_string_pretty(&delay_spread_catalog()).expect("catalog serializes")
}
