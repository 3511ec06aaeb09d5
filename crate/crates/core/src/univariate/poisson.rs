use std::f64::consts::PI;

use num_complex::Complex64;

use crate::descriptor::DistributionDescriptor;
use crate::error::{Error, Result};
use crate::rng::RngState;
use crate::special::{gamma_q, ln_gamma};
use crate::traits::{
    check_prob, sample_fallback, Distribution, SupportBounds, Univariate, ValueSupport, VariateForm,
};

/// Threshold between the inverse-transform sampler and Atkinson rejection.
const DIRECT_SAMPLING_MAX: f64 = 30.0;

/// Poisson distribution with rate `lambda`, supported on the non-negative
/// integers (represented as `f64` values like every univariate family).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Poisson {
    lambda: f64,
}

impl Poisson {
    pub fn new(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "Poisson requires lambda > 0, got {lambda}"
            )));
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Atkinson's PA rejection sampler (logistic envelope), exact and O(1)
    /// for large rates where sequential inversion would crawl.
    fn rand_rejection(&self, rng: &mut RngState) -> f64 {
        let lambda = self.lambda;
        let c = 0.767 - 3.36 / lambda;
        let beta = PI / (3.0 * lambda).sqrt();
        let alpha = beta * lambda;
        let k = c.ln() - lambda - beta.ln();
        loop {
            let u = rng.uniform01();
            if u == 0.0 {
                continue;
            }
            let x = (alpha - ((1.0 - u) / u).ln()) / beta;
            let n = (x + 0.5).floor();
            if n < 0.0 {
                continue;
            }
            let v = rng.uniform01();
            if v == 0.0 {
                continue;
            }
            let y = alpha - beta * x;
            let t = 1.0 + y.exp();
            let lhs = y + (v / (t * t)).ln();
            let rhs = k + n * lambda.ln() - ln_gamma(n + 1.0);
            if lhs <= rhs {
                return n;
            }
        }
    }
}

impl Distribution for Poisson {
    type Value = f64;

    fn variate_form(&self) -> VariateForm {
        VariateForm::Univariate
    }

    fn value_support(&self) -> ValueSupport {
        ValueSupport::Discrete
    }

    fn pdf(&self, x: &f64) -> f64 {
        self.logpdf(x).exp()
    }

    fn logpdf(&self, x: &f64) -> f64 {
        let x = *x;
        if !x.is_finite() || x < 0.0 || x.fract() != 0.0 {
            return f64::NEG_INFINITY;
        }
        x * self.lambda.ln() - self.lambda - ln_gamma(x + 1.0)
    }

    fn rand(&self, rng: &mut RngState) -> f64 {
        if self.lambda <= DIRECT_SAMPLING_MAX {
            sample_fallback(self, rng)
        } else {
            self.rand_rejection(rng)
        }
    }
}

impl Univariate for Poisson {
    /// P(X ≤ x) = Q(floor(x) + 1, lambda), the regularized upper incomplete
    /// gamma function.
    fn cdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        gamma_q(x.floor() + 1.0, self.lambda)
    }

    /// Smallest integer `k` with `cdf(k) >= p`: a sequential scan from zero
    /// for small rates, and an integer bisection for large ones (same
    /// convention, just without the O(lambda) walk).
    fn quantile(&self, p: f64) -> Result<f64> {
        check_prob(p)?;
        if p == 1.0 {
            return Ok(f64::INFINITY);
        }
        if self.lambda <= DIRECT_SAMPLING_MAX {
            let mut k = 0.0;
            while self.cdf(k) < p {
                k += 1.0;
            }
            return Ok(k);
        }
        let mut lo = 0u64;
        let mut hi = self.lambda.ceil() as u64 + 1;
        while self.cdf(hi as f64) < p {
            lo = hi + 1;
            hi *= 2;
        }
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.cdf(mid as f64) >= p {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Ok(lo as f64)
    }

    fn support(&self) -> SupportBounds {
        SupportBounds::NON_NEGATIVE
    }

    fn integer_support(&self) -> Option<(u64, Option<u64>)> {
        Some((0, None))
    }

    fn mean(&self) -> Option<f64> {
        Some(self.lambda)
    }

    fn var(&self) -> Option<f64> {
        Some(self.lambda)
    }

    fn cf(&self, _t: f64) -> Result<Complex64> {
        Err(Error::NoCharacteristicFunction("Poisson".into()))
    }

    fn descriptor(&self) -> DistributionDescriptor {
        DistributionDescriptor::new("Poisson", vec![self.lambda])
    }
}
