//! Distribution taxonomy: variate form and value support tags, the
//! `Sampleable`/`Distribution` contracts, the univariate interface, and the
//! generic fallbacks built on top of it.

use num_complex::Complex64;

use crate::descriptor::DistributionDescriptor;
use crate::error::{Error, Result};
use crate::rng::RngState;

/// Shape of a single draw: scalar, vector, or matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariateForm {
    Univariate,
    Multivariate,
    MatrixVariate,
}

/// Whether the distribution lives on a countable set or a continuum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueSupport {
    Discrete,
    Continuous,
}

/// Closed support interval of a univariate distribution; unbounded ends are
/// the IEEE infinities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportBounds {
    pub lower: f64,
    pub upper: f64,
}

impl SupportBounds {
    /// The whole real line.
    pub const REAL_LINE: SupportBounds = SupportBounds {
        lower: f64::NEG_INFINITY,
        upper: f64::INFINITY,
    };

    /// The non-negative half line.
    pub const NON_NEGATIVE: SupportBounds = SupportBounds {
        lower: 0.0,
        upper: f64::INFINITY,
    };

    pub fn new(lower: f64, upper: f64) -> Self {
        Self { lower, upper }
    }

    /// Whether `x` lies inside the (closed) support interval.
    pub fn contains(&self, x: f64) -> bool {
        x >= self.lower && x <= self.upper
    }
}

/// Anything that can produce draws when handed a random stream.
///
/// The receiver is mutable: stateful samplers such as Markov chains advance
/// their own state on every call. Plain distributions get this for free via
/// the blanket implementation below.
pub trait Sampleable {
    type Value;

    fn variate_form(&self) -> VariateForm;
    fn value_support(&self) -> ValueSupport;

    /// Draw one variate, advancing `rng` (and any internal state).
    fn sample(&mut self, rng: &mut RngState) -> Self::Value;
}

/// A distribution proper: density evaluation plus stateless sampling.
pub trait Distribution {
    type Value;

    fn variate_form(&self) -> VariateForm;
    fn value_support(&self) -> ValueSupport;

    /// Density at `x` for continuous distributions, probability mass at `x`
    /// for discrete ones (zero off the support set).
    fn pdf(&self, x: &Self::Value) -> f64;

    /// Log-density at `x`.
    ///
    /// The default is the generic fallback `ln(pdf(x))`, which is `-inf`
    /// wherever the density vanishes; families override it with closed forms
    /// that stay accurate deep in the tails.
    fn logpdf(&self, x: &Self::Value) -> f64 {
        self.pdf(x).ln()
    }

    /// Draw one variate.
    fn rand(&self, rng: &mut RngState) -> Self::Value;
}

impl<D: Distribution> Sampleable for D {
    type Value = D::Value;

    fn variate_form(&self) -> VariateForm {
        Distribution::variate_form(self)
    }

    fn value_support(&self) -> ValueSupport {
        Distribution::value_support(self)
    }

    fn sample(&mut self, rng: &mut RngState) -> Self::Value {
        self.rand(rng)
    }
}

/// Scalar distributions: cdf/quantile pair, support bounds, moments, and the
/// characteristic function.
pub trait Univariate: Distribution<Value = f64> {
    /// P(X ≤ x).
    fn cdf(&self, x: f64) -> f64;

    /// For continuous families the generalized inverse cdf; for discrete
    /// families the smallest support point `x` with `cdf(x) >= p`.
    ///
    /// Errors with [`Error::DomainError`] when `p` is outside `[0, 1]`.
    fn quantile(&self, p: f64) -> Result<f64>;

    /// Closed support interval.
    fn support(&self) -> SupportBounds;

    /// Integer view of a discrete support (`None` for continuous families
    /// and `None` upper end for unbounded counts).
    fn integer_support(&self) -> Option<(u64, Option<u64>)> {
        None
    }

    /// Mean, or `None` when the family has no first moment (Cauchy).
    fn mean(&self) -> Option<f64>;

    /// Variance, or `None` when the family has no second moment (Cauchy).
    fn var(&self) -> Option<f64>;

    /// Characteristic function E[exp(itX)] where a closed form is
    /// implemented; [`Error::NoCharacteristicFunction`] otherwise.
    fn cf(&self, t: f64) -> Result<Complex64>;

    /// Family name plus flat parameter vector, sufficient to rebuild the
    /// distribution via [`crate::descriptor::reconstruct`].
    fn descriptor(&self) -> DistributionDescriptor;
}

/// Inverse-transform sampling: `quantile(u)` with `u` uniform on `[0, 1)`.
///
/// This is the default sampling path for every univariate family without a
/// specialized sampler, so a plain `rand` call and an explicit
/// `quantile(rng.uniform01())` on the same stream produce identical bits.
pub fn sample_fallback<D: Univariate + ?Sized>(d: &D, rng: &mut RngState) -> f64 {
    let u = rng.uniform01();
    d.quantile(u)
        .expect("uniform01 draw is always a valid quantile level")
}

/// Validate a probability level argument.
pub(crate) fn check_prob(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::DomainError(format!(
            "probability level must lie in [0, 1], got {p}"
        )))
    }
}
