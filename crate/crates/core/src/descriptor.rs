//! Serializable distribution descriptors.
//!
//! A fitted univariate model is summarized as a family name plus a flat
//! parameter vector in the family's canonical order, so it can round-trip
//! through JSON and be rebuilt with [`reconstruct`] without losing a bit.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::univariate::UnivariateDist;

/// The univariate families shipped by this crate, with their canonical
/// parameter orders:
///
/// | family      | params              |
/// |-------------|---------------------|
/// | Uniform     | `[a, b]`            |
/// | Normal      | `[mu, sigma]`       |
/// | LogNormal   | `[mu, sigma]`       |
/// | Gamma       | `[shape, scale]`    |
/// | Exponential | `[scale]`           |
/// | Cauchy      | `[x0, gamma]`       |
/// | Triangular  | `[a, b, c]`         |
/// | Poisson     | `[lambda]`          |
/// | Bernoulli   | `[p]`               |
/// | Categorical | `[p1, ..., pK]`     |
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Uniform,
    Normal,
    LogNormal,
    Gamma,
    Exponential,
    Cauchy,
    Triangular,
    Poisson,
    Bernoulli,
    Categorical,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::Uniform,
        Family::Normal,
        Family::LogNormal,
        Family::Gamma,
        Family::Exponential,
        Family::Cauchy,
        Family::Triangular,
        Family::Poisson,
        Family::Bernoulli,
        Family::Categorical,
    ];

    /// Canonical family name as used in descriptors and JSON output.
    pub fn name(&self) -> &'static str {
        match self {
            Family::Uniform => "Uniform",
            Family::Normal => "Normal",
            Family::LogNormal => "LogNormal",
            Family::Gamma => "Gamma",
            Family::Exponential => "Exponential",
            Family::Cauchy => "Cauchy",
            Family::Triangular => "Triangular",
            Family::Poisson => "Poisson",
            Family::Bernoulli => "Bernoulli",
            Family::Categorical => "Categorical",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Case-insensitive lookup by canonical name.
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .copied()
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// Family name plus flat parameter vector; serializes to
/// `{"family": "...", "params": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionDescriptor {
    pub family: String,
    pub params: Vec<f64>,
}

impl DistributionDescriptor {
    pub fn new(family: impl Into<String>, params: Vec<f64>) -> Self {
        Self {
            family: family.into(),
            params,
        }
    }
}

/// Rebuild a univariate distribution from its descriptor.
///
/// The parameters are passed through unchanged, so the reconstructed
/// distribution evaluates identically (bit for bit) to the one that produced
/// the descriptor.
pub fn reconstruct(desc: &DistributionDescriptor) -> Result<UnivariateDist> {
    let family = Family::from_str(&desc.family)?;
    UnivariateDist::from_params(family, &desc.params)
}
