use num_complex::Complex64;

use crate::descriptor::DistributionDescriptor;
use crate::error::{Error, Result};
use crate::rng::RngState;
use crate::traits::{
    check_prob, sample_fallback, Distribution, SupportBounds, Univariate, ValueSupport, VariateForm,
};

/// Continuous uniform distribution on `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Uniform {
    a: f64,
    b: f64,
}

impl Uniform {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() || a >= b {
            return Err(Error::InvalidParameter(format!(
                "Uniform requires finite a < b, got a={a}, b={b}"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

impl Distribution for Uniform {
    type Value = f64;

    fn variate_form(&self) -> VariateForm {
        VariateForm::Univariate
    }

    fn value_support(&self) -> ValueSupport {
        ValueSupport::Continuous
    }

    fn pdf(&self, x: &f64) -> f64 {
        if *x >= self.a && *x <= self.b {
            1.0 / (self.b - self.a)
        } else {
            0.0
        }
    }

    fn logpdf(&self, x: &f64) -> f64 {
        if *x >= self.a && *x <= self.b {
            -(self.b - self.a).ln()
        } else {
            f64::NEG_INFINITY
        }
    }

    fn rand(&self, rng: &mut RngState) -> f64 {
        sample_fallback(self, rng)
    }
}

impl Univariate for Uniform {
    fn cdf(&self, x: f64) -> f64 {
        ((x - self.a) / (self.b - self.a)).clamp(0.0, 1.0)
    }

    fn quantile(&self, p: f64) -> Result<f64> {
        check_prob(p)?;
        Ok(self.a + p * (self.b - self.a))
    }

    fn support(&self) -> SupportBounds {
        SupportBounds::new(self.a, self.b)
    }

    fn mean(&self) -> Option<f64> {
        Some(0.5 * (self.a + self.b))
    }

    fn var(&self) -> Option<f64> {
        let w = self.b - self.a;
        Some(w * w / 12.0)
    }

    /// `(exp(itb) - exp(ita)) / (it (b - a))`, computed through the stable
    /// difference `exp(iθ) - 1` so nearby exponentials never cancel.
    fn cf(&self, t: f64) -> Result<Complex64> {
        if t == 0.0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        let w = self.b - self.a;
        // cf = exp(ita) * (exp(itw) - 1) / (itw)
        let num = cis_minus_one(t * w);
        let den = Complex64::new(0.0, t * w);
        Ok(Complex64::cis(t * self.a) * num / den)
    }

    fn descriptor(&self) -> DistributionDescriptor {
        DistributionDescriptor::new("Uniform", vec![self.a, self.b])
    }
}

/// `exp(iθ) - 1` without cancellation: the real part is `-2 sin²(θ/2)`.
pub(crate) fn cis_minus_one(theta: f64) -> Complex64 {
    let s = (0.5 * theta).sin();
    Complex64::new(-2.0 * s * s, theta.sin())
}
