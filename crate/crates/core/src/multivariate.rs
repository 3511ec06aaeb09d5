//! Multivariate distributions: the dense-covariance multivariate normal and
//! products of independent univariate marginals.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::rng::RngState;
use crate::special::{std_normal_quantile, LN_2PI};
use crate::traits::{Distribution, ValueSupport, VariateForm};
use crate::univariate::UnivariateDist;

/// Multivariate normal with mean vector `mu` and dense covariance `sigma`.
///
/// The Cholesky factorization `sigma = L Lᵀ` is computed once at
/// construction; log-density evaluation goes through a triangular solve and
/// the cached log-determinant (never an explicit inverse), and sampling maps
/// standard normal draws through `mu + L z`.
#[derive(Debug, Clone, PartialEq)]
pub struct MvNormal {
    mu: DVector<f64>,
    sigma: DMatrix<f64>,
    chol_l: DMatrix<f64>,
    log_det: f64,
}

impl MvNormal {
    /// Build from a mean vector and covariance matrix.
    ///
    /// `sigma` must be square with matching dimension, symmetric within
    /// `1e-12`, and positive definite; anything else is
    /// [`Error::DimensionMismatch`] or [`Error::NotPositiveDefinite`].
    pub fn new(mu: DVector<f64>, sigma: DMatrix<f64>) -> Result<Self> {
        let d = mu.len();
        if d == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        if sigma.nrows() != d || sigma.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: sigma.nrows().max(sigma.ncols()),
            });
        }
        for i in 0..d {
            for j in (i + 1)..d {
                if (sigma[(i, j)] - sigma[(j, i)]).abs() > 1e-12 {
                    return Err(Error::NotPositiveDefinite);
                }
            }
        }
        if mu.iter().any(|m| !m.is_finite()) || sigma.iter().any(|s| !s.is_finite()) {
            return Err(Error::NotPositiveDefinite);
        }
        let chol = nalgebra::Cholesky::new(sigma.clone()).ok_or(Error::NotPositiveDefinite)?;
        let chol_l = chol.unpack();
        let log_det = 2.0 * chol_l.diagonal().iter().map(|v| v.ln()).sum::<f64>();
        Ok(Self {
            mu,
            sigma,
            chol_l,
            log_det,
        })
    }

    /// Convenience constructor from plain slices/rows.
    pub fn from_rows(mu: &[f64], sigma_rows: &[Vec<f64>]) -> Result<Self> {
        let d = mu.len();
        if sigma_rows.len() != d || sigma_rows.iter().any(|r| r.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: sigma_rows.len(),
            });
        }
        let sigma = DMatrix::from_fn(d, d, |i, j| sigma_rows[i][j]);
        Self::new(DVector::from_column_slice(mu), sigma)
    }

    /// Dimension of one draw.
    pub fn dim(&self) -> usize {
        self.mu.len()
    }

    pub fn mu(&self) -> &[f64] {
        self.mu.as_slice()
    }

    pub fn sigma(&self) -> &DMatrix<f64> {
        &self.sigma
    }

    /// Covariance as plain rows (for serialization).
    pub fn sigma_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim())
            .map(|i| self.sigma.row(i).iter().copied().collect())
            .collect()
    }

    /// Log-density at `x`:
    ///
    /// ```text
    /// logpdf(x) = -1/2 [ d ln(2π) + ln det Σ + ‖L⁻¹(x - µ)‖² ]
    /// ```
    pub fn logpdf(&self, x: &[f64]) -> Result<f64> {
        let d = self.dim();
        if x.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: x.len(),
            });
        }
        let mut z = DVector::from_column_slice(x);
        z -= &self.mu;
        let y = self
            .chol_l
            .solve_lower_triangular(&z)
            .expect("Cholesky factor has positive diagonal");
        let quad = y.norm_squared();
        Ok(-0.5 * (d as f64 * LN_2PI + self.log_det + quad))
    }

    /// Density at `x`.
    pub fn pdf(&self, x: &[f64]) -> Result<f64> {
        Ok(self.logpdf(x)?.exp())
    }

    /// Affine map of a standard normal vector: `mu + L z`. With `z = 0`
    /// this returns exactly `mu`; sampling draws `z` and applies this map.
    pub fn map_standard(&self, z: &[f64]) -> Result<Vec<f64>> {
        let d = self.dim();
        if z.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: z.len(),
            });
        }
        let zv = DVector::from_column_slice(z);
        let x = &self.mu + &self.chol_l * zv;
        Ok(x.as_slice().to_vec())
    }

    /// Log-likelihood of a data matrix (rows are observations).
    pub fn loglikelihood(&self, data: &DMatrix<f64>) -> Result<f64> {
        let d = self.dim();
        if data.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: data.ncols(),
            });
        }
        let mut total = 0.0;
        let mut row = vec![0.0; d];
        for i in 0..data.nrows() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = data[(i, j)];
            }
            total += self.logpdf(&row)?;
        }
        Ok(total)
    }
}

impl Distribution for MvNormal {
    type Value = Vec<f64>;

    fn variate_form(&self) -> VariateForm {
        VariateForm::Multivariate
    }

    fn value_support(&self) -> ValueSupport {
        ValueSupport::Continuous
    }

    /// Panics if `x` has the wrong dimension; use [`MvNormal::pdf`] for a
    /// checked variant.
    fn pdf(&self, x: &Vec<f64>) -> f64 {
        MvNormal::pdf(self, x).expect("dimension mismatch")
    }

    fn logpdf(&self, x: &Vec<f64>) -> f64 {
        MvNormal::logpdf(self, x).expect("dimension mismatch")
    }

    fn rand(&self, rng: &mut RngState) -> Vec<f64> {
        let z: Vec<f64> = (0..self.dim())
            .map(|_| std_normal_quantile(rng.uniform01()))
            .collect();
        self.map_standard(&z).expect("dimensions match by construction")
    }
}

/// Product of independent univariate marginals: a multivariate distribution
/// whose log-density is the sum of the component log-densities.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductDistribution {
    components: Vec<UnivariateDist>,
}

impl ProductDistribution {
    pub fn new(components: Vec<UnivariateDist>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyComponents);
        }
        Ok(Self { components })
    }

    /// Dimension of one draw (number of marginals).
    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[UnivariateDist] {
        &self.components
    }

    /// Log-density at `x`: Σⱼ logpdf(componentⱼ, xⱼ).
    pub fn logpdf(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        Ok(self
            .components
            .iter()
            .zip(x)
            .map(|(c, xi)| c.logpdf(xi))
            .sum())
    }

    /// Density at `x`.
    pub fn pdf(&self, x: &[f64]) -> Result<f64> {
        Ok(self.logpdf(x)?.exp())
    }

    /// Log-likelihood of a data matrix: column `j` is scored under marginal
    /// `j`, so the total is the sum of per-column univariate log-likelihoods.
    pub fn loglikelihood(&self, data: &DMatrix<f64>) -> Result<f64> {
        if data.ncols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: data.ncols(),
            });
        }
        let mut total = 0.0;
        for (j, c) in self.components.iter().enumerate() {
            for i in 0..data.nrows() {
                total += c.logpdf(&data[(i, j)]);
            }
        }
        Ok(total)
    }
}

impl Distribution for ProductDistribution {
    type Value = Vec<f64>;

    fn variate_form(&self) -> VariateForm {
        VariateForm::Multivariate
    }

    /// Continuous unless every marginal is discrete.
    fn value_support(&self) -> ValueSupport {
        if self
            .components
            .iter()
            .all(|c| Distribution::value_support(c) == ValueSupport::Discrete)
        {
            ValueSupport::Discrete
        } else {
            ValueSupport::Continuous
        }
    }

    /// Panics if `x` has the wrong dimension; use [`ProductDistribution::pdf`]
    /// for a checked variant.
    fn pdf(&self, x: &Vec<f64>) -> f64 {
        ProductDistribution::pdf(self, x).expect("dimension mismatch")
    }

    fn logpdf(&self, x: &Vec<f64>) -> f64 {
        ProductDistribution::logpdf(self, x).expect("dimension mismatch")
    }

    fn rand(&self, rng: &mut RngState) -> Vec<f64> {
        self.components.iter().map(|c| c.rand(rng)).collect()
    }
}
