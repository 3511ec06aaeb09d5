use num_complex::Complex64;

use crate::descriptor::DistributionDescriptor;
use crate::error::{Error, Result};
use crate::rng::RngState;
use crate::traits::{
    check_prob, sample_fallback, Distribution, SupportBounds, Univariate, ValueSupport, VariateForm,
};

/// Categorical distribution on the labels `1..=K`.
///
/// Probabilities are stored exactly as given (they must sum to 1 within
/// `1e-9`), so a descriptor round-trip reproduces the same masses bit for
/// bit; any round-off deficit is absorbed by the last label when sampling.
#[derive(Debug, Clone, PartialEq)]
pub struct Categorical {
    probs: Vec<f64>,
    cumulative: Vec<f64>,
}

impl Categorical {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidParameter(
                "Categorical requires at least one probability".into(),
            ));
        }
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::InvalidParameter(
                "Categorical probabilities must be finite and non-negative".into(),
            ));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParameter(format!(
                "Categorical probabilities sum to {sum}, expected 1 within 1e-9"
            )));
        }
        let mut cumulative = Vec::with_capacity(probs.len());
        let mut cum = 0.0;
        for p in &probs {
            cum += p;
            cumulative.push(cum);
        }
        Ok(Self { probs, cumulative })
    }

    /// Number of labels `K`.
    pub fn n_categories(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

impl Distribution for Categorical {
    type Value = f64;

    fn variate_form(&self) -> VariateForm {
        VariateForm::Univariate
    }

    fn value_support(&self) -> ValueSupport {
        ValueSupport::Discrete
    }

    fn pdf(&self, x: &f64) -> f64 {
        let x = *x;
        if x.fract() != 0.0 || x < 1.0 || x > self.probs.len() as f64 {
            return 0.0;
        }
        self.probs[x as usize - 1]
    }

    fn rand(&self, rng: &mut RngState) -> f64 {
        sample_fallback(self, rng)
    }
}

impl Univariate for Categorical {
    fn cdf(&self, x: f64) -> f64 {
        if x < 1.0 {
            return 0.0;
        }
        let k = x.floor() as usize;
        if k >= self.probs.len() {
            1.0
        } else {
            self.cumulative[k - 1].min(1.0)
        }
    }

    fn quantile(&self, p: f64) -> Result<f64> {
        check_prob(p)?;
        for (i, cum) in self.cumulative.iter().enumerate() {
            if p <= *cum {
                return Ok((i + 1) as f64);
            }
        }
        Ok(self.probs.len() as f64)
    }

    fn support(&self) -> SupportBounds {
        SupportBounds::new(1.0, self.probs.len() as f64)
    }

    fn integer_support(&self) -> Option<(u64, Option<u64>)> {
        Some((1, Some(self.probs.len() as u64)))
    }

    fn mean(&self) -> Option<f64> {
        Some(
            self.probs
                .iter()
                .enumerate()
                .map(|(i, p)| (i + 1) as f64 * p)
                .sum(),
        )
    }

    fn var(&self) -> Option<f64> {
        let mean = self.mean()?;
        let ex2: f64 = self
            .probs
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let k = (i + 1) as f64;
                k * k * p
            })
            .sum();
        Some(ex2 - mean * mean)
    }

    fn cf(&self, _t: f64) -> Result<Complex64> {
        Err(Error::NoCharacteristicFunction("Categorical".into()))
    }

    fn descriptor(&self) -> DistributionDescriptor {
        DistributionDescriptor::new("Categorical", self.probs.clone())
    }
}
