use thiserror::Error;

use crate::types::{Directionality, Environment, Polarization};

/// One field-level problem found while validating a configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigIssue {
    pub field: &'static str,
    pub message: String,
}

impl std::fmt::Display for ConfigIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

#[derive(Debug, Error)]
pub enum ChannelError {
    #[error("no catalog entry for {band_ghz} GHz / {env} / {pol} / {dir}")]
    UnknownCombination {
        band_ghz: f64,
        env: Environment,
        pol: Polarization,
        dir: Directionality,
    },

    #[error("invalid {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("distance {distance_m} m is below the reference distance {d0_m} m")]
    DistanceBelowReference { distance_m: f64, d0_m: f64 },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("every sample sits at the reference distance; the exponent is unidentifiable")]
    DegenerateFit,

    #[error("samples mix strata: {0}")]
    MixedStrata(String),

    #[error("parameter sets must differ only in polarization: {0}")]
    MismatchedParams(&'static str),

    #[error("power delay profile has no positive bin")]
    NoMultipath,

    #[error("no detectable power at any pointing angle")]
    ZeroPower,

    #[error("probability {0} is outside (0, 1]")]
    InvalidProbability(f64),

    #[error("invalid configuration: {}", format_issues(.0))]
    InvalidConfig(Vec<ConfigIssue>),
}

fn format_issues(issues: &[ConfigIssue]) -> String {
    issues
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, ChannelError>;
