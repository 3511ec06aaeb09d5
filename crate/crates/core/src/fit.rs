//! Maximum-likelihood fitting.
//!
//! Closed-form fits work from sufficient statistics (means, extrema,
//! frequency counts) and support optional non-negative observation weights;
//! all variance estimates are the biased maximum-likelihood (1/n) kind, not
//! the unbiased sample variance. Families without an elementary closed form
//! can be fitted through [`gradient_ascent_mle`], a first-order optimizer
//! over products of marginals driven by central finite differences.

use nalgebra::DMatrix;

use crate::descriptor::Family;
use crate::error::{Error, Result};
use crate::multivariate::{MvNormal, ProductDistribution};
use crate::rng::RngState;
use crate::traits::Distribution;
use crate::univariate::{
    Bernoulli, Categorical, Exponential, LogNormal, Normal, Poisson, Uniform, UnivariateDist,
};

/// Smallest scale parameter the gradient-ascent iteration will keep after
/// reflecting a negative step. Reflection alone can leave a scale arbitrarily
/// close to zero, where the log-likelihood surface is unbounded; the floor
/// keeps the next finite-difference probe in the valid parameter space.
pub const SCALE_FLOOR: f64 = 1e-8;

/// Log-likelihood of `data` under `d`: Σᵢ logpdf(d, xᵢ).
///
/// Out-of-support observations contribute `-inf`, which propagates.
pub fn loglikelihood<D: Distribution<Value = f64>>(d: &D, data: &[f64]) -> f64 {
    data.iter().map(|x| d.logpdf(x)).sum()
}

/// Weighted log-likelihood Σᵢ wᵢ·logpdf(d, xᵢ).
///
/// Zero-weight observations contribute exactly zero even when they fall
/// outside the support, so the value matches [`loglikelihood`] on the
/// dataset replicated according to integer weights.
pub fn loglikelihood_weighted<D: Distribution<Value = f64>>(
    d: &D,
    data: &[f64],
    weights: &[f64],
) -> Result<f64> {
    check_weights(data.len(), weights)?;
    Ok(data
        .iter()
        .zip(weights)
        .map(|(x, &w)| if w == 0.0 { 0.0 } else { w * d.logpdf(x) })
        .sum())
}

pub(crate) fn check_weights(n: usize, weights: &[f64]) -> Result<()> {
    if weights.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: weights.len(),
        });
    }
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(Error::InvalidParameter(
            "weights must be finite and non-negative".into(),
        ));
    }
    if !weights.iter().any(|w| *w > 0.0) {
        return Err(Error::InvalidParameter(
            "weights must contain at least one positive entry".into(),
        ));
    }
    Ok(())
}

/// The observations that actually enter a weighted MLE. Zero-weight points
/// are dropped so that integer weights reproduce dataset replication exactly
/// (a weight-zero outlier must not trip domain checks either).
fn effective_points(data: &[f64], weights: Option<&[f64]>) -> Vec<(f64, f64)> {
    match weights {
        None => data.iter().map(|&x| (x, 1.0)).collect(),
        Some(w) => data
            .iter()
            .zip(w)
            .filter(|&(_, &wi)| wi > 0.0)
            .map(|(&x, &wi)| (x, wi))
            .collect(),
    }
}

fn weighted_mean(points: &[(f64, f64)]) -> f64 {
    let total: f64 = points.iter().map(|(_, w)| w).sum();
    points.iter().map(|(x, w)| w * x).sum::<f64>() / total
}

/// Weighted mean and biased (1/n-style) variance.
fn weighted_mean_var(points: &[(f64, f64)]) -> (f64, f64) {
    let total: f64 = points.iter().map(|(_, w)| w).sum();
    let mean = points.iter().map(|(x, w)| w * x).sum::<f64>() / total;
    let var = points
        .iter()
        .map(|(x, w)| w * (x - mean) * (x - mean))
        .sum::<f64>()
        / total;
    (mean, var)
}

/// Closed-form maximum-likelihood fit of `family` to `data`.
///
/// Supported families and their MLEs:
///
/// | family      | estimate                                   |
/// |-------------|--------------------------------------------|
/// | Normal      | mean, biased standard deviation            |
/// | LogNormal   | Normal fit of the log-data                 |
/// | Uniform     | (min, max)                                 |
/// | Exponential | mean                                       |
/// | Poisson     | mean                                       |
/// | Bernoulli   | relative frequency of 1                    |
/// | Categorical | relative frequencies over labels `1..=K`   |
///
/// Errors with [`Error::DegenerateData`] when the MLE falls outside the
/// valid parameter space (zero-variance Normal data, all-equal or single
/// Uniform observations, all-zero Poisson counts) and
/// [`Error::NonPositive`] for LogNormal/Exponential data ≤ 0. MvNormal
/// takes a data matrix; see [`fit_mvnormal`].
pub fn fit_mle(family: Family, data: &[f64]) -> Result<UnivariateDist> {
    if data.is_empty() {
        return Err(Error::EmptyData);
    }
    fit_points(family, &effective_points(data, None))
}

/// Weighted variant of [`fit_mle`]: each observation enters the sufficient
/// statistics with its weight. Integer weights reproduce the unweighted fit
/// on the correspondingly replicated dataset.
pub fn fit_mle_weighted(
    family: Family,
    data: &[f64],
    weights: &[f64],
) -> Result<UnivariateDist> {
    if data.is_empty() {
        return Err(Error::EmptyData);
    }
    check_weights(data.len(), weights)?;
    fit_points(family, &effective_points(data, Some(weights)))
}

fn fit_points(family: Family, points: &[(f64, f64)]) -> Result<UnivariateDist> {
    match family {
        Family::Normal => {
            let (mean, var) = weighted_mean_var(points);
            if var == 0.0 {
                return Err(Error::DegenerateData(
                    "all observations are equal; the Normal MLE has zero variance".into(),
                ));
            }
            Ok(Normal::new(mean, var.sqrt())?.into())
        }
        Family::LogNormal => {
            let logs = log_points(points)?;
            let (mean, var) = weighted_mean_var(&logs);
            if var == 0.0 {
                return Err(Error::DegenerateData(
                    "all observations are equal; the LogNormal MLE has zero variance".into(),
                ));
            }
            Ok(LogNormal::new(mean, var.sqrt())?.into())
        }
        Family::Uniform => {
            let min = points.iter().map(|(x, _)| *x).fold(f64::INFINITY, f64::min);
            let max = points
                .iter()
                .map(|(x, _)| *x)
                .fold(f64::NEG_INFINITY, f64::max);
            if min == max {
                return Err(Error::DegenerateData(
                    "Uniform MLE needs at least two distinct observations".into(),
                ));
            }
            Ok(Uniform::new(min, max)?.into())
        }
        Family::Exponential => {
            if let Some((x, _)) = points.iter().find(|(x, _)| *x <= 0.0) {
                return Err(Error::NonPositive(format!(
                    "Exponential fitting requires positive data, got {x}"
                )));
            }
            Ok(Exponential::new(weighted_mean(points))?.into())
        }
        Family::Poisson => {
            check_discrete(points, Family::Poisson, 0.0)?;
            let mean = weighted_mean(points);
            if mean <= 0.0 {
                return Err(Error::DegenerateData(
                    "all counts are zero; the Poisson MLE has lambda = 0".into(),
                ));
            }
            Ok(Poisson::new(mean)?.into())
        }
        Family::Bernoulli => {
            if let Some((x, _)) = points.iter().find(|(x, _)| *x != 0.0 && *x != 1.0) {
                return Err(Error::DomainError(format!(
                    "Bernoulli fitting requires data in {{0, 1}}, got {x}"
                )));
            }
            Ok(Bernoulli::new(weighted_mean(points))?.into())
        }
        Family::Categorical => {
            check_discrete(points, Family::Categorical, 1.0)?;
            let k = points.iter().map(|(x, _)| *x as usize).max().unwrap_or(0);
            let total: f64 = points.iter().map(|(_, w)| w).sum();
            let mut probs = vec![0.0; k];
            for (x, w) in points {
                probs[*x as usize - 1] += w / total;
            }
            Ok(Categorical::new(probs)?.into())
        }
        other => Err(Error::DomainError(format!(
            "no closed-form maximum-likelihood fit for {other}"
        ))),
    }
}

fn log_points(points: &[(f64, f64)]) -> Result<Vec<(f64, f64)>> {
    points
        .iter()
        .map(|&(x, w)| {
            if x <= 0.0 {
                Err(Error::NonPositive(format!(
                    "LogNormal fitting requires positive data, got {x}"
                )))
            } else {
                Ok((x.ln(), w))
            }
        })
        .collect()
}

fn check_discrete(points: &[(f64, f64)], family: Family, min: f64) -> Result<()> {
    if let Some((x, _)) = points
        .iter()
        .find(|(x, _)| !x.is_finite() || x.fract() != 0.0 || *x < min)
    {
        return Err(Error::DomainError(format!(
            "{family} fitting requires integer data >= {min}, got {x}"
        )));
    }
    Ok(())
}

/// Maximum-likelihood fit of a multivariate normal to a data matrix
/// (rows are observations): mean vector and biased (1/n) empirical
/// covariance. Weights, when given, play the same role as in
/// [`fit_mle_weighted`].
///
/// Errors with [`Error::DegenerateData`] when the empirical covariance is
/// not positive definite (fewer distinct observations than dimensions, or a
/// constant column).
pub fn fit_mvnormal(data: &DMatrix<f64>, weights: Option<&[f64]>) -> Result<MvNormal> {
    let (n, d) = (data.nrows(), data.ncols());
    if n == 0 || d == 0 {
        return Err(Error::EmptyData);
    }
    if let Some(w) = weights {
        check_weights(n, w)?;
    }
    let weight_at = |i: usize| weights.map_or(1.0, |w| w[i]);
    let total: f64 = (0..n).map(weight_at).sum();

    let mut mu = vec![0.0; d];
    for i in 0..n {
        let w = weight_at(i);
        for (j, m) in mu.iter_mut().enumerate() {
            *m += w * data[(i, j)];
        }
    }
    for m in &mut mu {
        *m /= total;
    }

    let mut sigma = DMatrix::zeros(d, d);
    for i in 0..n {
        let w = weight_at(i);
        if w == 0.0 {
            continue;
        }
        for j in 0..d {
            let dj = data[(i, j)] - mu[j];
            for k in j..d {
                sigma[(j, k)] += w * dj * (data[(i, k)] - mu[k]);
            }
        }
    }
    for j in 0..d {
        for k in j..d {
            sigma[(j, k)] /= total;
            sigma[(k, j)] = sigma[(j, k)];
        }
    }

    MvNormal::new(nalgebra::DVector::from_vec(mu), sigma).map_err(|e| match e {
        Error::NotPositiveDefinite => Error::DegenerateData(
            "empirical covariance is not positive definite".into(),
        ),
        other => other,
    })
}

/// The parameter pinned in a partial Normal fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FixedParam {
    Mu(f64),
    Sigma(f64),
}

/// Normal fit that maximizes likelihood over one free parameter while the
/// other is pinned: fixed `mu` gives `sigma² = mean((x - mu)²)`, fixed
/// `sigma` gives `mu = mean(x)`.
pub fn fit_mle_partial(data: &[f64], fixed: FixedParam) -> Result<Normal> {
    if data.is_empty() {
        return Err(Error::EmptyData);
    }
    let n = data.len() as f64;
    match fixed {
        FixedParam::Mu(mu) => {
            let var = data.iter().map(|x| (x - mu) * (x - mu)).sum::<f64>() / n;
            if var == 0.0 {
                return Err(Error::DegenerateData(
                    "all observations equal the fixed mean; sigma would be zero".into(),
                ));
            }
            Normal::new(mu, var.sqrt())
        }
        FixedParam::Sigma(sigma) => {
            let mean = data.iter().sum::<f64>() / n;
            Normal::new(mean, sigma)
        }
    }
}

/// Central-difference gradient of `f` at `p`.
///
/// The step along coordinate `i` is `fd_step·(1 + |pᵢ|)`, so the relative
/// step stays comparable across parameter magnitudes. Errors with
/// [`Error::NonFinite`] when `f` evaluates non-finite at any probe.
pub fn numeric_gradient<F: Fn(&[f64]) -> f64>(
    f: F,
    p: &[f64],
    fd_step: f64,
) -> Result<Vec<f64>> {
    let mut grad = vec![0.0; p.len()];
    let mut probe = p.to_vec();
    for i in 0..p.len() {
        let h = fd_step * (1.0 + p[i].abs());
        probe[i] = p[i] + h;
        let hi = f(&probe);
        probe[i] = p[i] - h;
        let lo = f(&probe);
        probe[i] = p[i];
        if !hi.is_finite() || !lo.is_finite() {
            return Err(Error::NonFinite(format!(
                "objective is non-finite near parameter {i}"
            )));
        }
        grad[i] = (hi - lo) / (2.0 * h);
    }
    Ok(grad)
}

/// Settings for [`gradient_ascent_mle`]. The step at iteration `k`
/// (counting from 1) is `rho0 / (k + m)`, strictly decreasing.
#[derive(Debug, Clone)]
pub struct GradientAscentConfig {
    /// Initial step-size numerator.
    pub rho0: f64,
    /// Step-offset constant in the denominator.
    pub m: f64,
    /// Maximum number of ascent steps.
    pub max_iter: usize,
    /// Stop once the L1 norm of the gradient falls below this.
    pub grad_tol: f64,
    /// Base finite-difference step (scaled per coordinate, see
    /// [`numeric_gradient`]).
    pub fd_step: f64,
}

impl Default for GradientAscentConfig {
    fn default() -> Self {
        Self {
            rho0: 0.05,
            m: 5.0,
            max_iter: 5000,
            grad_tol: 1e-6,
            fd_step: 1e-6,
        }
    }
}

/// Result of a gradient-ascent fit.
#[derive(Debug, Clone)]
pub struct GradientAscentFit {
    /// Final parameter vector.
    pub params: Vec<f64>,
    /// `builder(params)`.
    pub distribution: ProductDistribution,
    /// Number of ascent steps taken (0 when the init already satisfies the
    /// gradient tolerance).
    pub iterations: usize,
    /// Log-likelihood of the data at the final parameters.
    pub loglikelihood: f64,
}

/// First-order maximum-likelihood ascent for a product distribution built
/// from a parameter vector:
///
/// ```text
/// p ← p + (rho0 / (k + m)) · ∇L(p),   k = 1, 2, ...
/// ```
///
/// until the L1 gradient norm drops below `cfg.grad_tol` (checked before
/// each step) or `cfg.max_iter` steps have been taken. After each step the
/// entries listed in `scale_indices` are reflected to positive (a negative
/// scale is replaced by its absolute value) and floored at [`SCALE_FLOOR`].
/// The gradient is the central-difference gradient of the log-likelihood of
/// `data` (rows are observations) under `builder(p)`.
///
/// Errors with [`Error::NonFinite`] when the likelihood is non-finite at a
/// probe and reflection cannot recover (for example data outside the
/// support of a marginal for every candidate parameter).
pub fn gradient_ascent_mle<F>(
    builder: F,
    data: &DMatrix<f64>,
    init: &[f64],
    scale_indices: &[usize],
    cfg: &GradientAscentConfig,
) -> Result<GradientAscentFit>
where
    F: Fn(&[f64]) -> Result<ProductDistribution>,
{
    if data.nrows() == 0 {
        return Err(Error::EmptyData);
    }
    let objective = |p: &[f64]| -> f64 {
        match builder(p) {
            Ok(d) => d.loglikelihood(data).unwrap_or(f64::NAN),
            Err(_) => f64::NAN,
        }
    };
    let mut p = init.to_vec();
    let mut iterations = 0;
    loop {
        let grad = numeric_gradient(objective, &p, cfg.fd_step)?;
        let l1: f64 = grad.iter().map(|g| g.abs()).sum();
        if l1 < cfg.grad_tol || iterations >= cfg.max_iter {
            break;
        }
        let rho = cfg.rho0 / ((iterations + 1) as f64 + cfg.m);
        for (pi, gi) in p.iter_mut().zip(&grad) {
            *pi += rho * gi;
        }
        for &i in scale_indices {
            p[i] = p[i].abs().max(SCALE_FLOOR);
        }
        iterations += 1;
    }
    let distribution = builder(&p)?;
    let loglikelihood = distribution.loglikelihood(data)?;
    Ok(GradientAscentFit {
        params: p,
        distribution,
        iterations,
        loglikelihood,
    })
}

/// Marginal families supported by [`fit_product_gradient_ascent`]. Each is
/// parameterized by a (location, scale) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarginalKind {
    Normal,
    LogNormal,
}

impl MarginalKind {
    fn build(self, mu: f64, sigma: f64) -> Result<UnivariateDist> {
        match self {
            MarginalKind::Normal => Ok(Normal::new(mu, sigma)?.into()),
            MarginalKind::LogNormal => Ok(LogNormal::new(mu, sigma)?.into()),
        }
    }

    /// Randomized initialization box: location in `[10, 13]` (Normal) or
    /// `[2, 5]` (LogNormal), scale in `[1, 2]`.
    fn draw_init(self, rng: &mut RngState) -> [f64; 2] {
        let loc = match self {
            MarginalKind::Normal => 10.0 + 3.0 * rng.uniform01(),
            MarginalKind::LogNormal => 2.0 + 3.0 * rng.uniform01(),
        };
        [loc, 1.0 + rng.uniform01()]
    }
}

impl TryFrom<Family> for MarginalKind {
    type Error = Error;

    fn try_from(family: Family) -> Result<Self> {
        match family {
            Family::Normal => Ok(MarginalKind::Normal),
            Family::LogNormal => Ok(MarginalKind::LogNormal),
            other => Err(Error::DomainError(format!(
                "gradient ascent supports Normal and LogNormal marginals, not {other}"
            ))),
        }
    }
}

/// Gradient-ascent fit of a product of (location, scale) marginals to the
/// columns of `data`. The parameter vector is laid out as
/// `[mu_1, sigma_1, mu_2, sigma_2, ...]`.
///
/// When `init` is `None` the starting point is drawn per marginal from the
/// default initialization box (see [`MarginalKind`]); pass an explicit
/// vector to control the start instead.
pub fn fit_product_gradient_ascent(
    kinds: &[MarginalKind],
    data: &DMatrix<f64>,
    init: Option<&[f64]>,
    cfg: &GradientAscentConfig,
    rng: &mut RngState,
) -> Result<GradientAscentFit> {
    if kinds.is_empty() {
        return Err(Error::EmptyComponents);
    }
    if data.ncols() != kinds.len() {
        return Err(Error::DimensionMismatch {
            expected: kinds.len(),
            found: data.ncols(),
        });
    }
    let p0 = match init {
        Some(p) => {
            if p.len() != 2 * kinds.len() {
                return Err(Error::DimensionMismatch {
                    expected: 2 * kinds.len(),
                    found: p.len(),
                });
            }
            p.to_vec()
        }
        None => kinds
            .iter()
            .flat_map(|k| k.draw_init(rng))
            .collect(),
    };
    let scale_indices: Vec<usize> = (0..kinds.len()).map(|j| 2 * j + 1).collect();
    let kinds = kinds.to_vec();
    let builder = move |p: &[f64]| -> Result<ProductDistribution> {
        let components = kinds
            .iter()
            .enumerate()
            .map(|(j, k)| k.build(p[2 * j], p[2 * j + 1]))
            .collect::<Result<Vec<_>>>()?;
        ProductDistribution::new(components)
    };
    gradient_ascent_mle(builder, data, &p0, &scale_indices, cfg)
}
