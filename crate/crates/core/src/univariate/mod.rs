//! The univariate distribution families.
//!
//! Each family is a small value type implementing [`Distribution`] and
//! [`Univariate`]; [`UnivariateDist`] wraps them all in one enum so
//! heterogeneous collections (mixture components, product marginals,
//! reconstructed descriptors) need no trait objects.

mod bernoulli;
mod categorical;
mod cauchy;
mod exponential;
mod gamma;
mod lognormal;
mod normal;
mod poisson;
mod triangular;
mod uniform;

pub use bernoulli::Bernoulli;
pub use categorical::Categorical;
pub use cauchy::Cauchy;
pub use exponential::Exponential;
pub use gamma::Gamma;
pub use lognormal::LogNormal;
pub use normal::Normal;
pub use poisson::Poisson;
pub use triangular::Triangular;
pub use uniform::Uniform;

use num_complex::Complex64;

use crate::descriptor::{DistributionDescriptor, Family};
use crate::error::{Error, Result};
use crate::rng::RngState;
use crate::traits::{Distribution, SupportBounds, Univariate, ValueSupport, VariateForm};

/// Any of the shipped univariate families, dispatching every operation to
/// the wrapped distribution.
#[derive(Debug, Clone, PartialEq)]
pub enum UnivariateDist {
    Uniform(Uniform),
    Normal(Normal),
    LogNormal(LogNormal),
    Gamma(Gamma),
    Exponential(Exponential),
    Cauchy(Cauchy),
    Triangular(Triangular),
    Poisson(Poisson),
    Bernoulli(Bernoulli),
    Categorical(Categorical),
}

macro_rules! dispatch {
    ($value:expr, $d:ident => $body:expr) => {
        match $value {
            UnivariateDist::Uniform($d) => $body,
            UnivariateDist::Normal($d) => $body,
            UnivariateDist::LogNormal($d) => $body,
            UnivariateDist::Gamma($d) => $body,
            UnivariateDist::Exponential($d) => $body,
            UnivariateDist::Cauchy($d) => $body,
            UnivariateDist::Triangular($d) => $body,
            UnivariateDist::Poisson($d) => $body,
            UnivariateDist::Bernoulli($d) => $body,
            UnivariateDist::Categorical($d) => $body,
        }
    };
}

impl UnivariateDist {
    /// Which family this is.
    pub fn family(&self) -> Family {
        match self {
            UnivariateDist::Uniform(_) => Family::Uniform,
            UnivariateDist::Normal(_) => Family::Normal,
            UnivariateDist::LogNormal(_) => Family::LogNormal,
            UnivariateDist::Gamma(_) => Family::Gamma,
            UnivariateDist::Exponential(_) => Family::Exponential,
            UnivariateDist::Cauchy(_) => Family::Cauchy,
            UnivariateDist::Triangular(_) => Family::Triangular,
            UnivariateDist::Poisson(_) => Family::Poisson,
            UnivariateDist::Bernoulli(_) => Family::Bernoulli,
            UnivariateDist::Categorical(_) => Family::Categorical,
        }
    }

    /// Build a distribution from a family tag and its canonical parameter
    /// vector (see [`Family`] for the orders). Triangular accepts either
    /// `[a, b]` (symmetric) or `[a, b, c]`.
    pub fn from_params(family: Family, params: &[f64]) -> Result<Self> {
        let expect = |n: usize| -> Result<()> {
            if params.len() == n {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "{family} expects {n} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        Ok(match family {
            Family::Uniform => {
                expect(2)?;
                Uniform::new(params[0], params[1])?.into()
            }
            Family::Normal => {
                expect(2)?;
                Normal::new(params[0], params[1])?.into()
            }
            Family::LogNormal => {
                expect(2)?;
                LogNormal::new(params[0], params[1])?.into()
            }
            Family::Gamma => {
                expect(2)?;
                Gamma::new(params[0], params[1])?.into()
            }
            Family::Exponential => {
                expect(1)?;
                Exponential::new(params[0])?.into()
            }
            Family::Cauchy => {
                expect(2)?;
                Cauchy::new(params[0], params[1])?.into()
            }
            Family::Triangular => match params.len() {
                2 => Triangular::symmetric(params[0], params[1])?.into(),
                3 => Triangular::new(params[0], params[1], params[2])?.into(),
                n => {
                    return Err(Error::InvalidParameter(format!(
                        "Triangular expects 2 or 3 parameters, got {n}"
                    )))
                }
            },
            Family::Poisson => {
                expect(1)?;
                Poisson::new(params[0])?.into()
            }
            Family::Bernoulli => {
                expect(1)?;
                Bernoulli::new(params[0])?.into()
            }
            Family::Categorical => Categorical::new(params.to_vec())?.into(),
        })
    }
}

macro_rules! impl_from {
    ($($variant:ident),*) => {
        $(impl From<$variant> for UnivariateDist {
            fn from(d: $variant) -> Self {
                UnivariateDist::$variant(d)
            }
        })*
    };
}

impl_from!(
    Uniform,
    Normal,
    LogNormal,
    Gamma,
    Exponential,
    Cauchy,
    Triangular,
    Poisson,
    Bernoulli,
    Categorical
);

impl Distribution for UnivariateDist {
    type Value = f64;

    fn variate_form(&self) -> VariateForm {
        VariateForm::Univariate
    }

    fn value_support(&self) -> ValueSupport {
        dispatch!(self, d => Distribution::value_support(d))
    }

    fn pdf(&self, x: &f64) -> f64 {
        dispatch!(self, d => d.pdf(x))
    }

    fn logpdf(&self, x: &f64) -> f64 {
        dispatch!(self, d => d.logpdf(x))
    }

    fn rand(&self, rng: &mut RngState) -> f64 {
        dispatch!(self, d => d.rand(rng))
    }
}

impl Univariate for UnivariateDist {
    fn cdf(&self, x: f64) -> f64 {
        dispatch!(self, d => d.cdf(x))
    }

    fn quantile(&self, p: f64) -> Result<f64> {
        dispatch!(self, d => d.quantile(p))
    }

    fn support(&self) -> SupportBounds {
        dispatch!(self, d => d.support())
    }

    fn integer_support(&self) -> Option<(u64, Option<u64>)> {
        dispatch!(self, d => d.integer_support())
    }

    fn mean(&self) -> Option<f64> {
        dispatch!(self, d => d.mean())
    }

    fn var(&self) -> Option<f64> {
        dispatch!(self, d => d.var())
    }

    fn cf(&self, t: f64) -> Result<Complex64> {
        dispatch!(self, d => d.cf(t))
    }

    fn descriptor(&self) -> DistributionDescriptor {
        dispatch!(self, d => d.descriptor())
    }
}
