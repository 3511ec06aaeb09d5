use num_complex::Complex64;

use crate::descriptor::DistributionDescriptor;
use crate::error::{Error, Result};
use crate::rng::RngState;
use crate::traits::{
    check_prob, sample_fallback, Distribution, SupportBounds, Univariate, ValueSupport, VariateForm,
};

/// Exponential distribution parametrized by its scale (mean) `theta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponential {
    scale: f64,
}

impl Exponential {
    pub fn new(scale: f64) -> Result<Self> {
        if !scale.is_finite() || scale <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "Exponential requires scale > 0, got {scale}"
            )));
        }
        Ok(Self { scale })
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }
}

impl Distribution for Exponential {
    type Value = f64;

    fn variate_form(&self) -> VariateForm {
        VariateForm::Univariate
    }

    fn value_support(&self) -> ValueSupport {
        ValueSupport::Continuous
    }

    fn pdf(&self, x: &f64) -> f64 {
        if *x < 0.0 {
            0.0
        } else {
            (-x / self.scale).exp() / self.scale
        }
    }

    fn logpdf(&self, x: &f64) -> f64 {
        if *x < 0.0 {
            f64::NEG_INFINITY
        } else {
            -x / self.scale - self.scale.ln()
        }
    }

    fn rand(&self, rng: &mut RngState) -> f64 {
        sample_fallback(self, rng)
    }
}

impl Univariate for Exponential {
    fn cdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            0.0
        } else {
            -(-x / self.scale).exp_m1()
        }
    }

    fn quantile(&self, p: f64) -> Result<f64> {
        check_prob(p)?;
        Ok(-self.scale * (-p).ln_1p())
    }

    fn support(&self) -> SupportBounds {
        SupportBounds::NON_NEGATIVE
    }

    fn mean(&self) -> Option<f64> {
        Some(self.scale)
    }

    fn var(&self) -> Option<f64> {
        Some(self.scale * self.scale)
    }

    /// `1 / (1 - i theta t)`.
    fn cf(&self, t: f64) -> Result<Complex64> {
        Ok(Complex64::new(1.0, 0.0) / Complex64::new(1.0, -self.scale * t))
    }

    fn descriptor(&self) -> DistributionDescriptor {
        DistributionDescriptor::new("Exponential", vec![self.scale])
    }
}
