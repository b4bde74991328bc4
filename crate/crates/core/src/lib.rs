//! Indoor millimeter-wave channel toolkit.
//!
//! - [`catalog`]: measured 28 GHz / 73.5 GHz model parameters and sounder constants
//! - [`pathloss`]: close-in free-space reference path loss, shadowing, XPD
//! - [`pdp`]: power delay profile thresholding and delay-spread moments
//! - [`omni`]: omnidirectional power and path loss from directional sweeps
//! - [`estimation`]: MMSE model fitting, empirical CDFs and percentiles
//! - [`sim`]: seeded synthetic campaigns and link-budget checks

pub mod catalog;
pub mod error;
pub mod estimation;
pub mod omni;
pub mod pathloss;
pub mod pdp;
pub mod sim;
pub mod types;
pub mod units;

pub use error::{ChannelError, ConfigIssue, Result};
pub use types::{
    wavelength_m, CampaignRecord, CiModelParams, DirectionalSweep, Directionality, Environment,
    FrequencyBand, PathLossSample, Pdp, PointingAngle, PointingEntry, Polarization, SounderSpec,
    StratumKey, SweepId,
};
