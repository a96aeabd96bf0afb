use thiserror::Error;

/// Parameter record failed validation. Carries the offending field name.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("parameter `{0}` must be strictly positive")]
    NonPositiveParameter(&'static str),
    #[error("parameter `{0}` must be non-negative")]
    NegativeParameter(&'static str),
    #[error("parameter `{0}` must be finite")]
    NonFinite(&'static str),
    #[error("invalid parameter `{name}`: {reason}")]
    Invalid { name: &'static str, reason: String },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DamperError {
    #[error("internal state `{state}` does not match damper model `{model}`")]
    StateModelMismatch { model: &'static str, state: &'static str },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Damper(#[from] DamperError),
    #[error("numerical blow-up at t = {t} s")]
    NumericalBlowup { t: f64 },
    #[error("internal damper state left its invariant bound at t = {t} s: |{name}| = {value} > {bound}")]
    InvariantViolation {
        t: f64,
        name: &'static str,
        value: f64,
        bound: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("series is empty")]
    EmptySeries,
    #[error("window too short: need {needed} samples, have {available}")]
    WindowTooShort { needed: usize, available: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
