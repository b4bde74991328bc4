//! Domain types shared by every analysis stage.
//!
//! All of these are plain values: once constructed (and validated) they are
//! never mutated, so they can be shared freely across threads.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ChannelError, Result};
use crate::units::SPEED_OF_LIGHT_M_S;

/// Lower and upper T-R separation covered by the measurement campaign, meters.
pub const MEASURED_SPAN_M: (f64, f64) = (3.9, 45.9);

/// Carrier frequency of a measurement band.
///
/// Stored in GHz so that values read from files (`band_ghz` columns) round-trip
/// exactly; `carrier_hz` is derived.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct FrequencyBand {
    ghz: f64,
}

impl FrequencyBand {
    pub const GHZ_28: FrequencyBand = FrequencyBand { ghz: 28.0 };
    pub const GHZ_73_5: FrequencyBand = FrequencyBand { ghz: 73.5 };

    pub fn from_ghz(ghz: f64) -> Result<Self> {
        if !(ghz.is_finite() && ghz > 0.0) {
            return Err(ChannelError::InvalidParameter {
                name: "band_ghz",
                value: ghz,
                reason: "carrier frequency must be positive and finite",
            });
        }
        Ok(Self { ghz })
    }

    pub fn from_hz(carrier_hz: f64) -> Result<Self> {
        Self::from_ghz(carrier_hz / 1e9)
    }

    pub fn ghz(&self) -> f64 {
        self.ghz
    }

    pub fn carrier_hz(&self) -> f64 {
        self.ghz * 1e9
    }

    /// Short name such as `28GHz` or `73.5GHz`.
    pub fn label(&self) -> String {
        format!("{}GHz", self.ghz)
    }

    /// Carrier wavelength c / f in meters.
    pub fn wavelength_m(&self) -> f64 {
        SPEED_OF_LIGHT_M_S / self.carrier_hz()
    }

    /// Same carrier, tolerating representation noise from unit conversion.
    pub fn same_carrier(&self, other: &FrequencyBand) -> bool {
        (self.ghz - other.ghz).abs() <= 1e-9 * self.ghz.max(other.ghz)
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        self.ghz.total_cmp(&other.ghz)
    }
}

impl TryFrom<f64> for FrequencyBand {
    type Error = ChannelError;

    fn try_from(ghz: f64) -> Result<Self> {
        Self::from_ghz(ghz)
    }
}

impl From<FrequencyBand> for f64 {
    fn from(band: FrequencyBand) -> f64 {
        band.ghz
    }
}

impl fmt::Display for FrequencyBand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} GHz", self.ghz)
    }
}

/// Wavelength of a band in meters.
pub fn wavelength_m(band: FrequencyBand) -> f64 {
    band.wavelength_m()
}

macro_rules! string_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum $name {
            $(#[serde(rename = $text)] $variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(&self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = String;

            fn from_str(s: &str) -> std::result::Result<Self, String> {
                match s {
                    $($text => Ok($name::$variant),)+
                    other => Err(format!(
                        concat!("unknown ", stringify!($name), " '{}' (expected one of: {})"),
                        other,
                        [$($text),+].join(", ")
                    )),
                }
            }
        }
    };
}

string_enum! {
    /// Propagation scenario. `NlosBest` is the strongest non-boresight link at a
    /// location and only exists for directional models.
    Environment { Los => "LOS", Nlos => "NLOS", NlosBest => "NLOS_BEST" }
}

string_enum! {
    /// TX-RX antenna polarization: co-polarized vertical or vertical-to-horizontal.
    Polarization { Vv => "VV", Vh => "VH" }
}

string_enum! {
    Directionality { Directional => "directional", Omnidirectional => "omni" }
}

string_enum! {
    /// Azimuth sweep identifier within one TX-RX location.
    SweepId {
        M1 => "M1", M2 => "M2", M3 => "M3", M4 => "M4",
        M5 => "M5", M6 => "M6", M7 => "M7", M8 => "M8",
    }
}

/// Fitting stratum: one row of the parameter tables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StratumKey {
    #[serde(rename = "band_ghz")]
    pub band: FrequencyBand,
    pub env: Environment,
    pub pol: Polarization,
    pub dir: Directionality,
}

impl Eq for StratumKey {}

impl Ord for StratumKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.band
            .total_cmp(&other.band)
            .then(self.dir.cmp(&other.dir))
            .then(self.pol.cmp(&other.pol))
            .then(self.env.cmp(&other.env))
    }
}

impl PartialOrd for StratumKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for StratumKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.band, self.env, self.pol, self.dir)
    }
}

/// A close-in free-space reference model: exponent and shadow factor for one
/// stratum, anchored at `d0_m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CiModelParamsRaw")]
pub struct CiModelParams {
    #[serde(rename = "band_ghz")]
    pub band: FrequencyBand,
    pub env: Environment,
    pub pol: Polarization,
    pub dir: Directionality,
    pub ple: f64,
    #[serde(rename = "sigma_db")]
    pub shadow_sigma_db: f64,
    pub d0_m: f64,
}

#[derive(Deserialize)]
struct CiModelParamsRaw {
    band_ghz: FrequencyBand,
    env: Environment,
    pol: Polarization,
    dir: Directionality,
    ple: f64,
    sigma_db: f64,
    d0_m: f64,
}

impl TryFrom<CiModelParamsRaw> for CiModelParams {
    type Error = ChannelError;

    fn try_from(raw: CiModelParamsRaw) -> Result<Self> {
        CiModelParams::new(
            StratumKey {
                band: raw.band_ghz,
                env: raw.env,
                pol: raw.pol,
                dir: raw.dir,
            },
            raw.ple,
            raw.sigma_db,
            raw.d0_m,
        )
    }
}

impl CiModelParams {
    pub fn new(stratum: StratumKey, ple: f64, shadow_sigma_db: f64, d0_m: f64) -> Result<Self> {
        if !(ple.is_finite() && ple > 0.0) {
            return Err(ChannelError::InvalidParameter {
                name: "ple",
                value: ple,
                reason: "path loss exponent must be positive",
            });
        }
        if !(shadow_sigma_db.is_finite() && shadow_sigma_db >= 0.0) {
            return Err(ChannelError::InvalidParameter {
                name: "sigma_db",
                value: shadow_sigma_db,
                reason: "shadow factor must be non-negative",
            });
        }
        if !(d0_m.is_finite() && d0_m > 0.0) {
            return Err(ChannelError::InvalidParameter {
                name: "d0_m",
                value: d0_m,
                reason: "reference distance must be positive",
            });
        }
        if stratum.env == Environment::NlosBest && stratum.dir == Directionality::Omnidirectional {
            return Err(ChannelError::UnknownCombination {
                band_ghz: stratum.band.ghz(),
                env: stratum.env,
                pol: stratum.pol,
                dir: stratum.dir,
            });
        }
        Ok(Self {
            band: stratum.band,
            env: stratum.env,
            pol: stratum.pol,
            dir: stratum.dir,
            ple,
            shadow_sigma_db,
            d0_m,
        })
    }

    pub fn stratum(&self) -> StratumKey {
        StratumKey {
            band: self.band,
            env: self.env,
            pol: self.pol,
            dir: self.dir,
        }
    }

    /// Copy with a different shadow factor.
    pub fn with_sigma(&self, shadow_sigma_db: f64) -> Result<Self> {
        Self::new(self.stratum(), self.ple, shadow_sigma_db, self.d0_m)
    }
}

/// One path-loss observation at a T-R separation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathLossSample {
    pub location_id: String,
    #[serde(rename = "band_ghz")]
    pub band: FrequencyBand,
    pub env: Environment,
    pub pol: Polarization,
    pub dir: Directionality,
    pub distance_m: f64,
    pub path_loss_db: f64,
}

impl PathLossSample {
    pub fn stratum(&self) -> StratumKey {
        StratumKey {
            band: self.band,
            env: self.env,
            pol: self.pol,
            dir: self.dir,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.distance_m.is_finite() && self.distance_m > 0.0) {
            return Err(ChannelError::InvalidParameter {
                name: "distance_m",
                value: self.distance_m,
                reason: "distance must be positive and finite",
            });
        }
        if !(self.path_loss_db.is_finite() && self.path_loss_db > 0.0) {
            return Err(ChannelError::InvalidParameter {
                name: "path_loss_db",
                value: self.path_loss_db,
                reason: "path loss must be positive and finite",
            });
        }
        Ok(())
    }
}

/// Channel sounder hardware constants for one band.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SounderSpec {
    #[serde(rename = "band_ghz")]
    pub band: FrequencyBand,
    pub max_tx_power_dbm: f64,
    pub tx_antenna_gain_dbi: f64,
    pub rx_antenna_gain_dbi: f64,
    pub azimuth_hpbw_deg: f64,
    pub elevation_hpbw_deg: f64,
    pub max_measurable_pl_db: f64,
    pub bin_spacing_ns: f64,
    pub chip_rate_mcps: f64,
    pub slide_factor: f64,
}

/// Power delay profile sampled in uniform delay bins; bin `k` sits at
/// `k * bin_spacing_ns`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PdpRaw")]
pub struct Pdp {
    bin_spacing_ns: f64,
    noise_floor_mw: f64,
    powers_mw: Vec<f64>,
}

#[derive(Deserialize)]
struct PdpRaw {
    bin_spacing_ns: f64,
    noise_floor_mw: f64,
    powers_mw: Vec<f64>,
}

impl TryFrom<PdpRaw> for Pdp {
    type Error = ChannelError;

    fn try_from(raw: PdpRaw) -> Result<Self> {
        Pdp::new(raw.bin_spacing_ns, raw.powers_mw, raw.noise_floor_mw)
    }
}

impl Pdp {
    pub fn new(bin_spacing_ns: f64, powers_mw: Vec<f64>, noise_floor_mw: f64) -> Result<Self> {
        if !(bin_spacing_ns.is_finite() && bin_spacing_ns > 0.0) {
            return Err(ChannelError::InvalidParameter {
                name: "bin_spacing_ns",
                value: bin_spacing_ns,
                reason: "bin spacing must be positive",
            });
        }
        if !(noise_floor_mw.is_finite() && noise_floor_mw >= 0.0) {
            return Err(ChannelError::InvalidParameter {
                name: "noise_floor_mw",
                value: noise_floor_mw,
                reason: "noise floor must be non-negative",
            });
        }
        if powers_mw.is_empty() {
            return Err(ChannelError::EmptyInput("power delay profile has no bins"));
        }
        if let Some(&bad) = powers_mw.iter().find(|p| !(p.is_finite() && **p >= 0.0)) {
            return Err(ChannelError::InvalidParameter {
                name: "powers_mw",
                value: bad,
                reason: "bin powers must be non-negative and finite",
            });
        }
        Ok(Self {
            bin_spacing_ns,
            noise_floor_mw,
            powers_mw,
        })
    }

    pub fn bin_spacing_ns(&self) -> f64 {
        self.bin_spacing_ns
    }

    pub fn noise_floor_mw(&self) -> f64 {
        self.noise_floor_mw
    }

    pub fn powers_mw(&self) -> &[f64] {
        &self.powers_mw
    }

    pub fn len(&self) -> usize {
        self.powers_mw.len()
    }

    pub fn is_empty(&self) -> bool {
        self.powers_mw.is_empty()
    }

    pub fn delay_ns(&self, bin: usize) -> f64 {
        bin as f64 * self.bin_spacing_ns
    }

    pub fn first_positive_bin(&self) -> Option<usize> {
        self.powers_mw.iter().position(|&p| p > 0.0)
    }

    pub fn peak_mw(&self) -> f64 {
        self.powers_mw.iter().copied().fold(0.0, f64::max)
    }

    pub(crate) fn with_powers(&self, powers_mw: Vec<f64>) -> Pdp {
        Pdp {
            bin_spacing_ns: self.bin_spacing_ns,
            noise_floor_mw: self.noise_floor_mw,
            powers_mw,
        }
    }
}

/// TX and RX azimuth (theta) and elevation (phi) of one measurement, degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointingAngle {
    pub theta_tx_deg: f64,
    pub phi_tx_deg: f64,
    pub theta_rx_deg: f64,
    pub phi_rx_deg: f64,
}

/// Hashable identity of a pointing angle: azimuths wrapped to [0, 360),
/// everything quantized to millidegrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointingKey([i64; 4]);

impl PointingAngle {
    pub fn key(&self) -> PointingKey {
        let q = |deg: f64| (deg * 1000.0).round() as i64;
        let wrap = |deg: f64| q(deg).rem_euclid(360_000);
        PointingKey([
            wrap(self.theta_tx_deg),
            q(self.phi_tx_deg),
            wrap(self.theta_rx_deg),
            q(self.phi_rx_deg),
        ])
    }
}

impl fmt::Display for PointingAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(tx az {}°, el {}°; rx az {}°, el {}°)",
            self.theta_tx_deg, self.phi_tx_deg, self.theta_rx_deg, self.phi_rx_deg
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointingEntry {
    #[serde(flatten)]
    pub angle: PointingAngle,
    pub pdp: Pdp,
}

/// One azimuth sweep (M1..M8) at a TX-RX location.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectionalSweep {
    pub sweep_id: SweepId,
    pub pol: Polarization,
    pub entries: Vec<PointingEntry>,
}

fn default_tx_height() -> f64 {
    2.5
}

fn default_rx_height() -> f64 {
    1.5
}

/// Every directional measurement taken at one TX-RX location.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignRecord {
    pub location_id: String,
    #[serde(default = "default_tx_height")]
    pub tx_height_m: f64,
    #[serde(default = "default_rx_height")]
    pub rx_height_m: f64,
    pub distance_m: f64,
    pub env: Environment,
    pub spec: SounderSpec,
    pub sweeps: Vec<DirectionalSweep>,
}

impl CampaignRecord {
    /// True when the separation lies outside the distances the models were
    /// measured over.
    pub fn outside_measured_span(&self) -> bool {
        self.distance_m < MEASURED_SPAN_M.0 || self.distance_m > MEASURED_SPAN_M.1
    }

    pub fn entry_count(&self) -> usize {
        self.sweeps.iter().map(|s| s.entries.len()).sum()
    }
}
