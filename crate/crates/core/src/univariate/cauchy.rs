use std::f64::consts::PI;

use num_complex::Complex64;

use crate::descriptor::DistributionDescriptor;
use crate::error::{Error, Result};
use crate::rng::RngState;
use crate::traits::{
    check_prob, sample_fallback, Distribution, SupportBounds, Univariate, ValueSupport, VariateForm,
};

/// Cauchy distribution with location `x0` and scale `gamma`.
///
/// Mean and variance do not exist for this family; [`Univariate::mean`] and
/// [`Univariate::var`] report that as `None` rather than returning NaN.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cauchy {
    x0: f64,
    gamma: f64,
}

impl Cauchy {
    pub fn new(x0: f64, gamma: f64) -> Result<Self> {
        if !x0.is_finite() || !gamma.is_finite() || gamma <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "Cauchy requires finite x0 and gamma > 0, got x0={x0}, gamma={gamma}"
            )));
        }
        Ok(Self { x0, gamma })
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

impl Distribution for Cauchy {
    type Value = f64;

    fn variate_form(&self) -> VariateForm {
        VariateForm::Univariate
    }

    fn value_support(&self) -> ValueSupport {
        ValueSupport::Continuous
    }

    fn pdf(&self, x: &f64) -> f64 {
        let z = (x - self.x0) / self.gamma;
        1.0 / (PI * self.gamma * (1.0 + z * z))
    }

    fn logpdf(&self, x: &f64) -> f64 {
        let z = (x - self.x0) / self.gamma;
        -(PI * self.gamma).ln() - (1.0 + z * z).ln()
    }

    fn rand(&self, rng: &mut RngState) -> f64 {
        sample_fallback(self, rng)
    }
}

impl Univariate for Cauchy {
    fn cdf(&self, x: f64) -> f64 {
        0.5 + ((x - self.x0) / self.gamma).atan() / PI
    }

    fn quantile(&self, p: f64) -> Result<f64> {
        check_prob(p)?;
        if p == 0.0 {
            return Ok(f64::NEG_INFINITY);
        }
        if p == 1.0 {
            return Ok(f64::INFINITY);
        }
        Ok(self.x0 + self.gamma * (PI * (p - 0.5)).tan())
    }

    fn support(&self) -> SupportBounds {
        SupportBounds::REAL_LINE
    }

    fn mean(&self) -> Option<f64> {
        None
    }

    fn var(&self) -> Option<f64> {
        None
    }

    /// `exp(i x0 t - gamma |t|)`.
    fn cf(&self, t: f64) -> Result<Complex64> {
        Ok(Complex64::cis(self.x0 * t) * (-self.gamma * t.abs()).exp())
    }

    fn descriptor(&self) -> DistributionDescriptor {
        DistributionDescriptor::new("Cauchy", vec![self.x0, self.gamma])
    }
}
