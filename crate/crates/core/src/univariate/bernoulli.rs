use num_complex::Complex64;

use crate::descriptor::DistributionDescriptor;
use crate::error::{Error, Result};
use crate::rng::RngState;
use crate::traits::{
    check_prob, sample_fallback, Distribution, SupportBounds, Univariate, ValueSupport, VariateForm,
};

/// Bernoulli distribution on `{0, 1}` with success probability `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bernoulli {
    p: f64,
}

impl Bernoulli {
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!(
                "Bernoulli requires p in [0, 1], got {p}"
            )));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

impl Distribution for Bernoulli {
    type Value = f64;

    fn variate_form(&self) -> VariateForm {
        VariateForm::Univariate
    }

    fn value_support(&self) -> ValueSupport {
        ValueSupport::Discrete
    }

    fn pdf(&self, x: &f64) -> f64 {
        if *x == 0.0 {
            1.0 - self.p
        } else if *x == 1.0 {
            self.p
        } else {
            0.0
        }
    }

    fn rand(&self, rng: &mut RngState) -> f64 {
        sample_fallback(self, rng)
    }
}

impl Univariate for Bernoulli {
    fn cdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            0.0
        } else if x < 1.0 {
            1.0 - self.p
        } else {
            1.0
        }
    }

    fn quantile(&self, p: f64) -> Result<f64> {
        check_prob(p)?;
        Ok(if p <= 1.0 - self.p { 0.0 } else { 1.0 })
    }

    fn support(&self) -> SupportBounds {
        SupportBounds::new(0.0, 1.0)
    }

    fn integer_support(&self) -> Option<(u64, Option<u64>)> {
        Some((0, Some(1)))
    }

    fn mean(&self) -> Option<f64> {
        Some(self.p)
    }

    fn var(&self) -> Option<f64> {
        Some(self.p * (1.0 - self.p))
    }

    fn cf(&self, _t: f64) -> Result<Complex64> {
        Err(Error::NoCharacteristicFunction("Bernoulli".into()))
    }

    fn descriptor(&self) -> DistributionDescriptor {
        DistributionDescriptor::new("Bernoulli", vec![self.p])
    }
}
