//! Probability distributions: sampling, evaluation, fitting, nonparametric
//! estimation, and mixture models.
//!
//! The crate is organized around a small taxonomy — every distribution is
//! tagged with a [`VariateForm`] (scalar / vector draw) and a
//! [`ValueSupport`] (discrete / continuous) — plus a handful of focused
//! modules:
//!
//! * [`univariate`]: ten scalar families with pdf/cdf/quantile, moments,
//!   characteristic functions, and specialized or inverse-transform samplers.
//! * [`multivariate`]: dense-covariance multivariate normal and products of
//!   independent univariate marginals.
//! * [`fit`]: closed-form (weighted) maximum likelihood plus a numeric
//!   gradient-ascent fitter for product models.
//! * [`nonparam`]: empirical cdf, histograms, and FFT-accelerated kernel
//!   density estimation in one and two dimensions.
//! * [`mixture`]: finite mixtures over any component type and an EM fitter
//!   for multivariate normal mixtures.
//! * [`rng`]: the explicit deterministic random stream ([`RngState`]) that
//!   every sampler takes; there is no global generator.
//!
//! Sampling is reproducible by construction: a given seed yields the same
//! stream on every platform, and families without specialized samplers draw
//! through [`sample_fallback`] (inverse transform), bit-identical to calling
//! `quantile(rng.uniform01())` by hand.

pub mod descriptor;
pub mod error;
pub mod fit;
pub mod mixture;
pub mod multivariate;
pub mod nonparam;
pub mod rng;
mod special;
pub mod traits;
pub mod univariate;

pub use descriptor::{reconstruct, DistributionDescriptor, Family};
pub use error::{Error, Result};
pub use fit::{fit_mle, fit_mle_weighted, fit_mvnormal};
pub use mixture::{em_fit, EmConfig, EmFit, MixtureModel};
pub use multivariate::{MvNormal, ProductDistribution};
pub use rng::{sample_many, MarkovChain, RngState};
pub use traits::{
    sample_fallback, Distribution, Sampleable, SupportBounds, Univariate, ValueSupport, VariateForm,
};
pub use univariate::UnivariateDist;
