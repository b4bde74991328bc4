//! Synthetic measurement campaigns and link-budget checks.
//!
//! Every location draws from its own ChaCha stream derived from the root seed
//! and the location index, so output does not depend on how locations are
//! scheduled across threads.
//!
//! The PDP generator (exponential mean-power decay with lognormal per-tap
//! variation) is a test fixture for the delay-spread pipeline. It is not a
//! fitted model of any measured channel, and PDP shape is drawn independently
//! of distance.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{catalog_lookup, sounder_spec};
use crate::error::{ChannelError, ConfigIssue, Result};
use crate::pathloss::{free_space_pl_db, sample_path_loss_db};
use crate::pdp::integrate_power_mw;
use crate::types::{
    CampaignRecord, CiModelParams, DirectionalSweep, Directionality, Environment, FrequencyBand,
    PathLossSample, Pdp, PointingAngle, PointingEntry, Polarization, SounderSpec, StratumKey,
    SweepId, MEASURED_SPAN_M,
};
use crate::units::{db_to_linear, dbm_to_mw};

const PURPOSE_PATH_LOSS: u64 = 0;
const PURPOSE_PDP: u64 = 1;
const PURPOSE_RECORD: u64 = 2;

fn default_distance_range() -> [f64; 2] {
    [MEASURED_SPAN_M.0, MEASURED_SPAN_M.1]
}

/// Settings for the synthetic multipath profile generator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PdpSynthesisConfig {
    /// Inclusive [min, max] number of taps; ignored when `fixed_delays_ns` is set.
    #[serde(default = "default_tap_count")]
    pub tap_count: [usize; 2],
    /// Exponential decay constant of mean tap power; `None` gives a flat profile.
    #[serde(default)]
    pub decay_ns: Option<f64>,
    /// Random taps are placed uniformly in (0, max_excess_delay_ns].
    #[serde(default = "default_max_excess")]
    pub max_excess_delay_ns: f64,
    /// Explicit tap delays instead of random placement.
    #[serde(default)]
    pub fixed_delays_ns: Option<Vec<f64>>,
    #[serde(default)]
    pub tap_sigma_db: f64,
    #[serde(default = "default_first_tap_power")]
    pub first_tap_power_mw: f64,
    #[serde(default = "default_noise_floor")]
    pub noise_floor_mw: f64,
    /// Add exponentially distributed noise at the floor level to every bin.
    #[serde(default)]
    pub add_noise: bool,
    #[serde(default = "default_bin_spacing")]
    pub bin_spacing_ns: f64,
}

fn default_tap_count() -> [usize; 2] {
    [1, 8]
}
fn default_max_excess() -> f64 {
    100.0
}
fn default_first_tap_power() -> f64 {
    1.0
}
fn default_noise_floor() -> f64 {
    1e-9
}
fn default_bin_spacing() -> f64 {
    2.5
}

impl Default for PdpSynthesisConfig {
    fn default() -> Self {
        Self {
            tap_count: default_tap_count(),
            decay_ns: Some(20.0),
            max_excess_delay_ns: default_max_excess(),
            fixed_delays_ns: None,
            tap_sigma_db: 3.0,
            first_tap_power_mw: default_first_tap_power(),
            noise_floor_mw: default_noise_floor(),
            add_noise: false,
            bin_spacing_ns: default_bin_spacing(),
        }
    }
}

impl PdpSynthesisConfig {
    fn issues(&self) -> Vec<ConfigIssue> {
        let mut issues = Vec::new();
        let mut bad = |field, message: &str| {
            issues.push(ConfigIssue {
                field,
                message: message.to_string(),
            })
        };
        if self.fixed_delays_ns.is_none()
            && (self.tap_count[0] == 0 || self.tap_count[0] > self.tap_count[1])
        {
            bad("pdp_synthesis.tap_count", "need 1 <= min <= max");
        }
        if let Some(decay) = self.decay_ns {
            if !(decay.is_finite() && decay > 0.0) {
                bad("pdp_synthesis.decay_ns", "must be positive");
            }
        }
        if !(self.max_excess_delay_ns.is_finite() && self.max_excess_delay_ns >= 0.0) {
            bad("pdp_synthesis.max_excess_delay_ns", "must be non-negative");
        }
        if let Some(delays) = &self.fixed_delays_ns {
            if delays.is_empty() {
                bad(
                    "pdp_synthesis.fixed_delays_ns",
                    "must list at least one tap",
                );
            }
            if delays.iter().any(|d| !(d.is_finite() && *d >= 0.0)) {
                bad(
                    "pdp_synthesis.fixed_delays_ns",
                    "delays must be non-negative",
                );
            }
        }
        if !(self.tap_sigma_db.is_finite() && self.tap_sigma_db >= 0.0) {
            bad("pdp_synthesis.tap_sigma_db", "must be non-negative");
        }
        if !(self.first_tap_power_mw.is_finite() && self.first_tap_power_mw > 0.0) {
            bad("pdp_synthesis.first_tap_power_mw", "must be positive");
        }
        if !(self.noise_floor_mw.is_finite() && self.noise_floor_mw >= 0.0) {
            bad("pdp_synthesis.noise_floor_mw", "must be non-negative");
        }
        if !(self.bin_spacing_ns.is_finite() && self.bin_spacing_ns > 0.0) {
            bad("pdp_synthesis.bin_spacing_ns", "must be positive");
        }
        issues
    }

    pub fn validate(&self) -> Result<()> {
        let issues = self.issues();
        if issues.is_empty() {
            Ok(())
        } else {
            Err(ChannelError::InvalidConfig(issues))
        }
    }
}

/// Description of one synthetic campaign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    #[serde(rename = "band_ghz")]
    pub band: FrequencyBand,
    pub env: Environment,
    pub pol: Polarization,
    pub dir: Directionality,
    pub n_locations: usize,
    #[serde(default = "default_distance_range")]
    pub distance_range_m: [f64; 2],
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub params_override: Option<CiModelParams>,
    #[serde(default)]
    pub pdp_synthesis: Option<PdpSynthesisConfig>,
}

impl CampaignConfig {
    /// Catalog-backed config with the default distance span and no PDP synthesis.
    pub fn for_stratum(stratum: StratumKey, n_locations: usize, seed: u64) -> Self {
        Self {
            band: stratum.band,
            env: stratum.env,
            pol: stratum.pol,
            dir: stratum.dir,
            n_locations,
            distance_range_m: default_distance_range(),
            seed,
            params_override: None,
            pdp_synthesis: None,
        }
    }

    pub fn stratum(&self) -> StratumKey {
        StratumKey {
            band: self.band,
            env: self.env,
            pol: self.pol,
            dir: self.dir,
        }
    }

    /// Model parameters the campaign draws from.
    pub fn params(&self) -> Result<CiModelParams> {
        match self.params_override {
            Some(p) => Ok(p),
            None => catalog_lookup(self.band, self.env, self.pol, self.dir),
        }
    }

    /// Every field-level problem, or `Ok` if the config is usable.
    pub fn validate(&self) -> Result<()> {
        let mut issues = Vec::new();
        if self.n_locations == 0 {
            issues.push(ConfigIssue {
                field: "n_locations",
                message: "must be at least 1".into(),
            });
        }
        let [lo, hi] = self.distance_range_m;
        if !(lo.is_finite() && hi.is_finite() && lo >= 1.0 && lo <= hi) {
            issues.push(ConfigIssue {
                field: "distance_range_m",
                message: format!("need 1 <= min <= max, got [{lo}, {hi}]"),
            });
        }
        match self.params() {
            Ok(p) => {
                if p.stratum() != self.stratum() {
                    issues.push(ConfigIssue {
                        field: "params_override",
                        message: format!(
                            "stratum {} does not match config {}",
                            p.stratum(),
                            self.stratum()
                        ),
                    });
                }
                if lo.is_finite() && lo < p.d0_m {
                    issues.push(ConfigIssue {
                        field: "distance_range_m",
                        message: format!("minimum {lo} m is below d0 = {} m", p.d0_m),
                    });
                }
            }
            Err(e) => issues.push(ConfigIssue {
                field: "band_ghz/env/pol/dir",
                message: e.to_string(),
            }),
        }
        if let Some(pdp) = &self.pdp_synthesis {
            issues.extend(pdp.issues());
        }
        if issues.is_empty() {
            Ok(())
        } else {
            Err(ChannelError::InvalidConfig(issues))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

fn location_rng(seed: u64, purpose: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((purpose << 56) | index as u64);
    rng
}

fn per_location<T, F>(n: usize, exec: Execution, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    match exec {
        Execution::Serial => (0..n).map(f).collect(),
        Execution::Parallel => (0..n).into_par_iter().map(f).collect(),
    }
}

pub fn location_id(index: usize) -> String {
    format!("L{index:05}")
}

fn draw_distance<R: Rng>(range: [f64; 2], rng: &mut R) -> f64 {
    if range[0] == range[1] {
        range[0]
    } else {
        rng.random_range(range[0]..=range[1])
    }
}

/// Path-loss samples at uniformly drawn distances.
pub fn generate_pathloss_campaign(
    config: &CampaignConfig,
    exec: Execution,
) -> Result<Vec<PathLossSample>> {
    config.validate()?;
    let params = config.params()?;
    per_location(config.n_locations, exec, |i| {
        let mut rng = location_rng(config.seed, PURPOSE_PATH_LOSS, i);
        let distance_m = draw_distance(config.distance_range_m, &mut rng);
        let path_loss_db = sample_path_loss_db(&params, distance_m, &mut rng)?;
        Ok(PathLossSample {
            location_id: location_id(i),
            band: config.band,
            env: config.env,
            pol: config.pol,
            dir: config.dir,
            distance_m,
            path_loss_db,
        })
    })
}

/// One synthetic power delay profile.
pub fn generate_synthetic_pdp<R: Rng + ?Sized>(
    cfg: &PdpSynthesisConfig,
    rng: &mut R,
) -> Result<Pdp> {
    cfg.validate()?;
    let delays: Vec<f64> = match &cfg.fixed_delays_ns {
        Some(d) => d.clone(),
        None => {
            let taps = rng.random_range(cfg.tap_count[0]..=cfg.tap_count[1]);
            let mut d = vec![0.0];
            for _ in 1..taps {
                let u: f64 = rng.random();
                // (0, max], away from the direct path
                d.push((1.0 - u) * cfg.max_excess_delay_ns);
            }
            d
        }
    };
    let shadow = Normal::new(0.0, cfg.tap_sigma_db).expect("validated sigma");
    let bins: Vec<usize> = delays
        .iter()
        .map(|d| (d / cfg.bin_spacing_ns).round() as usize)
        .collect();
    let n_bins = bins.iter().max().copied().unwrap_or(0) + 1;
    let mut powers = vec![0.0; n_bins];
    for (&bin, &delay) in bins.iter().zip(&delays) {
        let mean = match cfg.decay_ns {
            Some(decay) => cfg.first_tap_power_mw * (-delay / decay).exp(),
            None => cfg.first_tap_power_mw,
        };
        let variation = if cfg.tap_sigma_db > 0.0 {
            db_to_linear(shadow.sample(rng))
        } else {
            1.0
        };
        powers[bin] += mean * variation;
    }
    if cfg.add_noise {
        for p in powers.iter_mut() {
            let e: f64 = Exp1.sample(rng);
            *p += cfg.noise_floor_mw * e;
        }
    }
    Pdp::new(cfg.bin_spacing_ns, powers, cfg.noise_floor_mw)
}

fn pdp_settings(config: &CampaignConfig) -> Result<&PdpSynthesisConfig> {
    config.pdp_synthesis.as_ref().ok_or_else(|| {
        ChannelError::InvalidConfig(vec![ConfigIssue {
            field: "pdp_synthesis",
            message: "required for PDP generation".into(),
        }])
    })
}

/// One synthetic PDP per location.
pub fn generate_pdp_batch(config: &CampaignConfig, exec: Execution) -> Result<Vec<Pdp>> {
    config.validate()?;
    let cfg = pdp_settings(config)?;
    per_location(config.n_locations, exec, |i| {
        generate_synthetic_pdp(cfg, &mut location_rng(config.seed, PURPOSE_PDP, i))
    })
}

fn scaled(pdp: &Pdp, target_mw: f64) -> Result<Pdp> {
    let total = integrate_power_mw(pdp);
    let k = target_mw / total;
    Pdp::new(
        pdp.bin_spacing_ns(),
        pdp.powers_mw().iter().map(|p| p * k).collect(),
        pdp.noise_floor_mw() * k,
    )
}

fn azimuth_steps(hpbw_deg: f64) -> Vec<f64> {
    let n = (360.0 / hpbw_deg).round().max(1.0) as usize;
    (0..n).map(|k| k as f64 * hpbw_deg).collect()
}

/// Directional records whose omnidirectional power follows the configured
/// close-in model: an AOA sweep (M1, RX stepped) and an AOD sweep (M2, TX
/// stepped), one HPBW apart, sharing the boresight pointing. The omni power is
/// split across unique pointings with random weights.
pub fn generate_campaign_records(
    config: &CampaignConfig,
    exec: Execution,
) -> Result<Vec<CampaignRecord>> {
    config.validate()?;
    if config.dir != Directionality::Omnidirectional {
        return Err(ChannelError::InvalidConfig(vec![ConfigIssue {
            field: "dir",
            message: "directional records are generated from an omni model".into(),
        }]));
    }
    let cfg = pdp_settings(config)?;
    let params = config.params()?;
    let spec = sounder_spec(config.band)?;
    let steps = azimuth_steps(spec.azimuth_hpbw_deg);
    per_location(config.n_locations, exec, |i| {
        let mut rng = location_rng(config.seed, PURPOSE_RECORD, i);
        let distance_m = draw_distance(config.distance_range_m, &mut rng);
        let path_loss_db = sample_path_loss_db(&params, distance_m, &mut rng)?;
        let omni_mw = dbm_to_mw(
            spec.max_tx_power_dbm + spec.tx_antenna_gain_dbi + spec.rx_antenna_gain_dbi
                - path_loss_db,
        );

        // Unique pointings: RX sweep with TX at boresight, then TX sweep
        // (excluding the shared boresight pointing).
        let n_unique = 2 * steps.len() - 1;
        let weights: Vec<f64> = (0..n_unique)
            .map(|_| {
                let w: f64 = Exp1.sample(&mut rng);
                w + f64::MIN_POSITIVE
            })
            .collect();
        let total_w: f64 = weights.iter().sum();
        let mut pdps = Vec::with_capacity(n_unique);
        for w in &weights {
            let shape = generate_synthetic_pdp(cfg, &mut rng)?;
            pdps.push(scaled(&shape, omni_mw * w / total_w)?);
        }

        let angle = |tx: f64, rx: f64| PointingAngle {
            theta_tx_deg: tx,
            phi_tx_deg: 0.0,
            theta_rx_deg: rx,
            phi_rx_deg: 0.0,
        };
        let m1 = steps
            .iter()
            .enumerate()
            .map(|(k, &rx)| PointingEntry {
                angle: angle(0.0, rx),
                pdp: pdps[k].clone(),
            })
            .collect();
        let m2 = steps
            .iter()
            .enumerate()
            .map(|(k, &tx)| PointingEntry {
                angle: angle(tx, 0.0),
                pdp: if k == 0 {
                    pdps[0].clone()
                } else {
                    pdps[steps.len() - 1 + k].clone()
                },
            })
            .collect();

        Ok(CampaignRecord {
            location_id: location_id(i),
            tx_height_m: 2.5,
            rx_height_m: 1.5,
            distance_m,
            env: config.env,
            spec,
            sweeps: vec![
                DirectionalSweep {
                    sweep_id: SweepId::M1,
                    pol: config.pol,
                    entries: m1,
                },
                DirectionalSweep {
                    sweep_id: SweepId::M2,
                    pol: config.pol,
                    entries: m2,
                },
            ],
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LinkStatus {
    Measurable,
    Outage,
}

/// Outage iff the loss exceeds the sounder's maximum measurable path loss; a
/// loss exactly at the limit is measurable.
pub fn check_link_budget(pl_db: f64, spec: &SounderSpec) -> LinkStatus {
    if pl_db > spec.max_measurable_pl_db {
        LinkStatus::Outage
    } else {
        LinkStatus::Measurable
    }
}

/// Distance at which the mean loss reaches the sounder limit.
pub fn max_range_m(params: &CiModelParams, spec: &SounderSpec) -> Result<f64> {
    let anchor = free_space_pl_db(params.band, params.d0_m)?;
    Ok(params.d0_m * 10f64.powf((spec.max_measurable_pl_db - anchor) / (10.0 * params.ple)))
}
