use thiserror::Error;

/// Which angular coordinate of the polar form could not be defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Angle {
    Phi1,
    Phi2,
    Psi1,
    ThetaPlus,
}

impl std::fmt::Display for Angle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Angle::Phi1 => "phi1",
            Angle::Phi2 => "phi2",
            Angle::Psi1 => "psi1",
            Angle::ThetaPlus => "thetaplus",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("component {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },
    #[error("matrix is not circulant: deviation {deviation:e} exceeds {tolerance:e}")]
    NotCirculant { deviation: f64, tolerance: f64 },
    #[error("number is not invertible (v+ = {vplus:e}, rho1 = {rho1:e}, rho2 = {rho2:e})")]
    NonInvertible { vplus: f64, rho1: f64, rho2: f64 },
    #[error("angle {0} is undefined: its defining radius vanishes")]
    AngleUndefined(Angle),
    #[error("argument {y} is outside the series domain |y| <= 50")]
    DomainTooLarge { y: f64 },
    #[error("result overflows the representable range")]
    Overflow,
    #[error("logarithm requires v+ > 0 and rho1, rho2 > 0")]
    LogDomain,
    #[error("non-integer power requires v+ > 0 and rho1, rho2 > 0")]
    PowDomain,
    #[error("form undefined: {0}")]
    FormDomain(&'static str),
    #[error("need at least {needed} coefficients, got {got}")]
    InsufficientTerms { needed: usize, got: usize },
    #[error("coefficient {index} vanishes in the measured component; ratio undefined")]
    ZeroTail { index: usize },
    #[error("function evaluation failed: {0}")]
    EvaluationFailed(String),
    #[error("point lies within {tolerance:e} of the polygon boundary")]
    OnBoundary { tolerance: f64 },
    #[error("pole projection lies on the projected path in plane {plane}")]
    PoleOnPath { plane: usize },
    #[error("u - u0 is a zero divisor at path sample {sample}")]
    NonInvertibleOnPath { sample: usize },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("root finder did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("invalid root pairing: {0}")]
    InvalidPairing(String),
    #[error("repeated or complex roots: factorization count not defined")]
    Degenerate,
    #[error("leading coefficient is not invertible")]
    NonInvertibleLeading,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
