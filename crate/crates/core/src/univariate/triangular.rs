use num_complex::Complex64;

use crate::descriptor::DistributionDescriptor;
use crate::error::{Error, Result};
use crate::rng::RngState;
use crate::traits::{
    check_prob, sample_fallback, Distribution, SupportBounds, Univariate, ValueSupport, VariateForm,
};
use crate::univariate::uniform::cis_minus_one;

/// Triangular distribution on `[a, b]` with mode `c` (`a <= c <= b`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triangular {
    a: f64,
    b: f64,
    c: f64,
}

impl Triangular {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() || !c.is_finite() || a >= b || c < a || c > b {
            return Err(Error::InvalidParameter(format!(
                "Triangular requires finite a < b and a <= c <= b, got a={a}, b={b}, c={c}"
            )));
        }
        Ok(Self { a, b, c })
    }

    /// Symmetric triangle: mode at the midpoint of `[a, b]`.
    pub fn symmetric(a: f64, b: f64) -> Result<Self> {
        Self::new(a, b, 0.5 * (a + b))
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }
}

impl Distribution for Triangular {
    type Value = f64;

    fn variate_form(&self) -> VariateForm {
        VariateForm::Univariate
    }

    fn value_support(&self) -> ValueSupport {
        ValueSupport::Continuous
    }

    fn pdf(&self, x: &f64) -> f64 {
        let (a, b, c, x) = (self.a, self.b, self.c, *x);
        if x < a || x > b {
            0.0
        } else if x < c {
            2.0 * (x - a) / ((b - a) * (c - a))
        } else if x > c {
            2.0 * (b - x) / ((b - a) * (b - c))
        } else {
            // At the mode both one-sided formulas agree (2/(b-a)); this also
            // covers the degenerate corners c == a and c == b.
            2.0 / (b - a)
        }
    }

    fn rand(&self, rng: &mut RngState) -> f64 {
        sample_fallback(self, rng)
    }
}

impl Univariate for Triangular {
    fn cdf(&self, x: f64) -> f64 {
        let (a, b, c) = (self.a, self.b, self.c);
        if x <= a {
            0.0
        } else if x >= b {
            1.0
        } else if x <= c {
            (x - a) * (x - a) / ((b - a) * (c - a))
        } else {
            1.0 - (b - x) * (b - x) / ((b - a) * (b - c))
        }
    }

    fn quantile(&self, p: f64) -> Result<f64> {
        check_prob(p)?;
        let (a, b, c) = (self.a, self.b, self.c);
        let split = (c - a) / (b - a);
        Ok(if p <= split {
            a + (p * (b - a) * (c - a)).sqrt()
        } else {
            b - ((1.0 - p) * (b - a) * (b - c)).sqrt()
        })
    }

    fn support(&self) -> SupportBounds {
        SupportBounds::new(self.a, self.b)
    }

    fn mean(&self) -> Option<f64> {
        Some((self.a + self.b + self.c) / 3.0)
    }

    fn var(&self) -> Option<f64> {
        let (a, b, c) = (self.a, self.b, self.c);
        Some((a * a + b * b + c * c - a * b - a * c - b * c) / 18.0)
    }

    /// Characteristic function written as a difference of chord slopes of
    /// `exp(itx)`:
    ///
    /// ```text
    /// cf(t) = -2 [ S(c, b) - S(a, c) ] / ((b - a) t²),
    /// S(u, v) = (exp(itv) - exp(itu)) / (v - u)
    /// ```
    ///
    /// which is the closed form with one cancellation level removed; `S`
    /// degenerates smoothly to `it exp(itu)` when `u == v`, covering the
    /// corner modes. Below `|t (b-a)| = 1e-5` a second-order Taylor expansion
    /// in the raw moments takes over.
    fn cf(&self, t: f64) -> Result<Complex64> {
        let (a, b, c) = (self.a, self.b, self.c);
        if t == 0.0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        if (t * (b - a)).abs() < 1e-5 {
            let m1 = (a + b + c) / 3.0;
            let m2 = (a * a + b * b + c * c + a * b + a * c + b * c) / 6.0;
            return Ok(Complex64::new(1.0 - 0.5 * t * t * m2, t * m1));
        }
        let slope = |u: f64, v: f64| -> Complex64 {
            if u == v {
                Complex64::new(0.0, t) * Complex64::cis(t * u)
            } else {
                Complex64::cis(t * u) * cis_minus_one(t * (v - u)) / (v - u)
            }
        };
        Ok((slope(c, b) - slope(a, c)) * (-2.0 / ((b - a) * t * t)))
    }

    fn descriptor(&self) -> DistributionDescriptor {
        DistributionDescriptor::new("Triangular", vec![self.a, self.b, self.c])
    }
}
