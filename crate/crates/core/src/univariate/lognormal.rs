use num_complex::Complex64;

use crate::descriptor::DistributionDescriptor;
use crate::error::{Error, Result};
use crate::rng::RngState;
use crate::special::{std_normal_cdf, std_normal_quantile, LN_2PI};
use crate::traits::{
    check_prob, sample_fallback, Distribution, SupportBounds, Univariate, ValueSupport, VariateForm,
};

/// Log-normal distribution: `ln X ~ Normal(mu, sigma)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogNormal {
    mu: f64,
    sigma: f64,
}

impl LogNormal {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        if !mu.is_finite() || !sigma.is_finite() || sigma <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "LogNormal requires finite mu and sigma > 0, got mu={mu}, sigma={sigma}"
            )));
        }
        Ok(Self { mu, sigma })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

impl Distribution for LogNormal {
    type Value = f64;

    fn variate_form(&self) -> VariateForm {
        VariateForm::Univariate
    }

    fn value_support(&self) -> ValueSupport {
        ValueSupport::Continuous
    }

    fn pdf(&self, x: &f64) -> f64 {
        if *x <= 0.0 {
            0.0
        } else {
            self.logpdf(x).exp()
        }
    }

    fn logpdf(&self, x: &f64) -> f64 {
        if *x <= 0.0 {
            return f64::NEG_INFINITY;
        }
        let z = (x.ln() - self.mu) / self.sigma;
        -0.5 * z * z - 0.5 * LN_2PI - self.sigma.ln() - x.ln()
    }

    fn rand(&self, rng: &mut RngState) -> f64 {
        sample_fallback(self, rng)
    }
}

impl Univariate for LogNormal {
    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else {
            std_normal_cdf((x.ln() - self.mu) / self.sigma)
        }
    }

    fn quantile(&self, p: f64) -> Result<f64> {
        check_prob(p)?;
        Ok((self.mu + self.sigma * std_normal_quantile(p)).exp())
    }

    fn support(&self) -> SupportBounds {
        SupportBounds::NON_NEGATIVE
    }

    fn mean(&self) -> Option<f64> {
        Some((self.mu + 0.5 * self.sigma * self.sigma).exp())
    }

    fn var(&self) -> Option<f64> {
        let s2 = self.sigma * self.sigma;
        Some(s2.exp_m1() * (2.0 * self.mu + s2).exp())
    }

    /// The log-normal characteristic function has no closed form.
    fn cf(&self, _t: f64) -> Result<Complex64> {
        Err(Error::NoCharacteristicFunction("LogNormal".into()))
    }

    fn descriptor(&self) -> DistributionDescriptor {
        DistributionDescriptor::new("LogNormal", vec![self.mu, self.sigma])
    }
}
