//! Finite mixture models and an expectation-maximization fitter for
//! multivariate-normal mixtures.
//!
//! [`MixtureModel`] is generic over its component type: any collection of
//! distributions sharing a variate form and value support can be mixed. The
//! EM machinery is split the same way the estimation problem splits: the E
//! step and the likelihood work for any component that can score an
//! observation row ([`ComponentDensity`]), while the M step is specific to
//! the family being fitted (here multivariate normal, which has a
//! closed-form weighted MLE). Supporting another family means writing its
//! maximization step; the rest of the loop is unchanged.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::multivariate::{MvNormal, ProductDistribution};
use crate::rng::{cumulative_select, RngState};
use crate::traits::{Distribution, ValueSupport, VariateForm};

/// Finite mixture with weights on the unit simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureModel<C: Distribution> {
    components: Vec<C>,
    weights: Vec<f64>,
}

impl<C: Distribution> MixtureModel<C> {
    /// Build a mixture from components and non-negative weights.
    ///
    /// The weights must sum to 1 within `1e-9` and are normalized exactly on
    /// construction. All components must share a variate form and value
    /// support.
    pub fn new(components: Vec<C>, weights: Vec<f64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyComponents);
        }
        if components.len() != weights.len() {
            return Err(Error::DimensionMismatch {
                expected: components.len(),
                found: weights.len(),
            });
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::NotASimplex(
                "weights must be finite and non-negative".into(),
            ));
        }
        let sum = symmetric_sum(weights.clone());
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::NotASimplex(format!(
                "weights sum to {sum}, expected 1 within 1e-9"
            )));
        }
        let form = components[0].variate_form();
        let support = components[0].value_support();
        if components
            .iter()
            .any(|c| c.variate_form() != form || c.value_support() != support)
        {
            return Err(Error::MixedVariateForms);
        }
        let weights = weights.iter().map(|w| w / sum).collect();
        Ok(Self {
            components,
            weights,
        })
    }

    pub fn ncomponents(&self) -> usize {
        self.components.len()
    }

    /// Component `k`, 1-based.
    pub fn component(&self, k: usize) -> Result<&C> {
        if k == 0 || k > self.components.len() {
            return Err(Error::IndexOutOfRange {
                index: k,
                len: self.components.len(),
            });
        }
        Ok(&self.components[k - 1])
    }

    pub fn components(&self) -> &[C] {
        &self.components
    }

    /// Normalized mixture weights.
    pub fn probs(&self) -> &[f64] {
        &self.weights
    }
}

impl<C: Distribution> Distribution for MixtureModel<C> {
    type Value = C::Value;

    fn variate_form(&self) -> VariateForm {
        self.components[0].variate_form()
    }

    fn value_support(&self) -> ValueSupport {
        self.components[0].value_support()
    }

    /// `Σₖ πₖ · pdf(componentₖ, x)`, accumulated branch-free over every
    /// component (zero weights contribute an exact 0 rather than being
    /// skipped). The terms are added in value order, which makes the result
    /// independent of how the components happen to be labeled.
    fn pdf(&self, x: &C::Value) -> f64 {
        let terms: Vec<f64> = self
            .components
            .iter()
            .zip(&self.weights)
            .map(|(c, w)| w * c.pdf(x))
            .collect();
        symmetric_sum(terms)
    }

    /// Log-sum-exp of `ln πₖ + logpdf(componentₖ, x)` over the positive
    /// weights; stays finite in tails where the plain pdf underflows.
    fn logpdf(&self, x: &C::Value) -> f64 {
        let terms: Vec<f64> = self
            .components
            .iter()
            .zip(&self.weights)
            .filter(|(_, w)| **w > 0.0)
            .map(|(c, w)| w.ln() + c.logpdf(x))
            .collect();
        log_sum_exp(&terms)
    }

    /// Hierarchical sampling: pick a component by its weight, then draw
    /// from it.
    fn rand(&self, rng: &mut RngState) -> C::Value {
        let k = cumulative_select(&self.weights, rng.uniform01())
            .expect("mixture weights sum to 1");
        self.components[k].rand(rng)
    }
}

/// Sum in ascending value order: permuting the inputs cannot change the
/// result bit-for-bit (a plain left fold can, since float addition is not
/// associative), and small terms accumulate before large ones.
fn symmetric_sum(mut terms: Vec<f64>) -> f64 {
    terms.sort_unstable_by(f64::total_cmp);
    terms.iter().sum()
}

fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        // All terms -inf (zero density everywhere), or empty.
        return f64::NEG_INFINITY;
    }
    max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
}

// ---------------------------------------------------------------------------
// Expectation-maximization
// ---------------------------------------------------------------------------

/// Log-density of one observation row. Implemented by the multivariate
/// families that can serve as EM mixture components.
pub trait ComponentDensity {
    fn logpdf_row(&self, row: &[f64]) -> Result<f64>;
}

impl ComponentDensity for MvNormal {
    fn logpdf_row(&self, row: &[f64]) -> Result<f64> {
        self.logpdf(row)
    }
}

impl ComponentDensity for ProductDistribution {
    fn logpdf_row(&self, row: &[f64]) -> Result<f64> {
        self.logpdf(row)
    }
}

fn check_prior(dists_len: usize, prior: &[f64]) -> Result<()> {
    if dists_len == 0 {
        return Err(Error::EmptyComponents);
    }
    if prior.len() != dists_len {
        return Err(Error::DimensionMismatch {
            expected: dists_len,
            found: prior.len(),
        });
    }
    if prior.iter().any(|p| !p.is_finite() || *p < 0.0) {
        return Err(Error::NotASimplex(
            "prior must be finite and non-negative".into(),
        ));
    }
    let sum: f64 = prior.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::NotASimplex(format!(
            "prior sums to {sum}, expected 1 within 1e-9"
        )));
    }
    Ok(())
}

/// E step: posterior membership probabilities
///
/// ```text
/// Z[i,k] = πₖ fₖ(xᵢ) / Σⱼ πⱼ fⱼ(xᵢ)
/// ```
///
/// computed in log-space with a per-row maximum shift, so well-separated
/// high-dimensional components do not underflow the naive ratio. Rows of
/// the result sum to 1.
///
/// Errors with [`Error::AllZeroDensity`] when some observation has zero
/// density under every component.
pub fn expectation_step<D: ComponentDensity>(
    x: &DMatrix<f64>,
    dists: &[D],
    prior: &[f64],
) -> Result<DMatrix<f64>> {
    check_prior(dists.len(), prior)?;
    let (n, k) = (x.nrows(), dists.len());
    let mut z = DMatrix::zeros(n, k);
    let mut row = vec![0.0; x.ncols()];
    let mut terms = vec![0.0; k];
    for i in 0..n {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = x[(i, j)];
        }
        for (j, d) in dists.iter().enumerate() {
            terms[j] = if prior[j] > 0.0 {
                prior[j].ln() + d.logpdf_row(&row)?
            } else {
                f64::NEG_INFINITY
            };
        }
        let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if !max.is_finite() {
            return Err(Error::AllZeroDensity { row: i });
        }
        let denom: f64 = terms.iter().map(|t| (t - max).exp()).sum();
        for (j, t) in terms.iter().enumerate() {
            z[(i, j)] = (t - max).exp() / denom;
        }
    }
    Ok(z)
}

/// M step for multivariate-normal components: responsibility-weighted means
/// and covariances plus a `ridge` multiple of the identity on each
/// covariance, and prior weights `πₖ = (1/n) Σᵢ Z[i,k]`.
///
/// Errors with [`Error::EmptyComponent`] when a component's responsibility
/// column sums below `1e-12` (a collapsed cluster; reduce the component
/// count).
pub fn maximization_step_mvnormal(
    x: &DMatrix<f64>,
    z: &DMatrix<f64>,
    ridge: f64,
) -> Result<(Vec<MvNormal>, Vec<f64>)> {
    let (n, d) = (x.nrows(), x.ncols());
    if z.nrows() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: z.nrows(),
        });
    }
    let k = z.ncols();
    let mut dists = Vec::with_capacity(k);
    let mut prior = Vec::with_capacity(k);
    for j in 0..k {
        let colsum: f64 = (0..n).map(|i| z[(i, j)]).sum();
        if colsum < 1e-12 {
            return Err(Error::EmptyComponent { component: j + 1 });
        }

        let mut mu = DVector::zeros(d);
        for i in 0..n {
            for c in 0..d {
                mu[c] += z[(i, j)] * x[(i, c)];
            }
        }
        mu /= colsum;

        let mut sigma = DMatrix::zeros(d, d);
        for i in 0..n {
            let zij = z[(i, j)];
            if zij == 0.0 {
                continue;
            }
            for a in 0..d {
                let da = x[(i, a)] - mu[a];
                for b in a..d {
                    sigma[(a, b)] += zij * da * (x[(i, b)] - mu[b]);
                }
            }
        }
        for a in 0..d {
            for b in a..d {
                sigma[(a, b)] /= colsum;
                sigma[(b, a)] = sigma[(a, b)];
            }
            sigma[(a, a)] += ridge;
        }

        dists.push(MvNormal::new(mu, sigma)?);
        prior.push(colsum / n as f64);
    }
    Ok((dists, prior))
}

/// Mixture log-likelihood `Σᵢ ln Σₖ πₖ fₖ(xᵢ)`, each inner sum via
/// log-sum-exp over the positive prior weights. Returns `-inf` when some
/// observation has zero density under every component.
pub fn loglike_mixture<D: ComponentDensity>(
    x: &DMatrix<f64>,
    dists: &[D],
    prior: &[f64],
) -> Result<f64> {
    check_prior(dists.len(), prior)?;
    let mut total = 0.0;
    let mut row = vec![0.0; x.ncols()];
    let mut terms = Vec::with_capacity(dists.len());
    for i in 0..x.nrows() {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = x[(i, j)];
        }
        terms.clear();
        for (d, p) in dists.iter().zip(prior) {
            if *p > 0.0 {
                terms.push(p.ln() + d.logpdf_row(&row)?);
            }
        }
        total += log_sum_exp(&terms);
    }
    Ok(total)
}

/// Settings for [`em_fit`].
#[derive(Debug, Clone)]
pub struct EmConfig {
    /// Number of mixture components `K`.
    pub n_components: usize,
    /// Iteration cap.
    pub max_iter: usize,
    /// Stop once `|ℓ_prev − ℓ| ≤ loglike_diff`.
    pub loglike_diff: f64,
    /// Multiple of the identity added to every M-step covariance.
    pub ridge: f64,
}

impl EmConfig {
    /// Defaults: 500 iterations, stopping tolerance `1e-4`, ridge `1e-6`.
    pub fn new(n_components: usize) -> Self {
        Self {
            n_components,
            max_iter: 500,
            loglike_diff: 1e-4,
            ridge: 1e-6,
        }
    }
}

/// Result of an EM fit.
#[derive(Debug, Clone)]
pub struct EmFit {
    /// The fitted mixture.
    pub mixture: MixtureModel<MvNormal>,
    /// Responsibilities from the final E step (rows sum to 1).
    pub responsibilities: DMatrix<f64>,
    /// Mixture log-likelihood at the final parameters.
    pub loglike: f64,
    /// Number of full E/M iterations performed.
    pub iterations: usize,
    /// Log-likelihood after the initial M step and after each iteration.
    pub trace: Vec<f64>,
}

/// Expectation-maximization fit of a `K`-component multivariate-normal
/// mixture to the rows of `x`.
///
/// Responsibilities are initialized by alternating assignment: observation
/// `i` (1-based) puts mass 0.75 on label `mod(i, K) + 1` and 0.25 on the
/// label below it (label 1 delegates to label 2). For `K = 1` that scheme
/// would address a second label, so the single column is simply all ones.
/// The loop alternates M and E steps, always completing at least one full
/// iteration, and stops when the log-likelihood improves by at most
/// `loglike_diff` or the iteration cap is reached.
pub fn em_fit(x: &DMatrix<f64>, cfg: &EmConfig) -> Result<EmFit> {
    let n = x.nrows();
    let k = cfg.n_components;
    if k == 0 {
        return Err(Error::InvalidParameter(
            "EM needs at least one component".into(),
        ));
    }
    if n == 0 || x.ncols() == 0 {
        return Err(Error::EmptyData);
    }
    if n < k {
        return Err(Error::DegenerateData(format!(
            "{n} observations cannot support {k} components"
        )));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::DomainError("EM data must be finite".into()));
    }

    let mut z = DMatrix::zeros(n, k);
    if k == 1 {
        z.fill(1.0);
    } else {
        for r in 0..n {
            let j0 = (r + 1) % k;
            let j1 = if j0 >= 1 { j0 - 1 } else { 1 };
            z[(r, j0)] = 0.75;
            z[(r, j1)] = 0.25;
        }
    }

    let (mut dists, mut prior) = maximization_step_mvnormal(x, &z, cfg.ridge)?;
    let mut loglike = loglike_mixture(x, &dists, &prior)?;
    let mut trace = vec![loglike];
    let mut prev = f64::INFINITY;
    let mut iterations = 0;
    while iterations < cfg.max_iter && (loglike - prev).abs() > cfg.loglike_diff {
        z = expectation_step(x, &dists, &prior)?;
        let step = maximization_step_mvnormal(x, &z, cfg.ridge)?;
        dists = step.0;
        prior = step.1;
        prev = loglike;
        loglike = loglike_mixture(x, &dists, &prior)?;
        trace.push(loglike);
        iterations += 1;
    }

    Ok(EmFit {
        mixture: MixtureModel::new(dists, prior)?,
        responsibilities: z,
        loglike,
        iterations,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fit::fit_mvnormal;
    use crate::univariate::{Normal, Poisson, UnivariateDist};
    use approx::assert_relative_eq;

    fn three_normal_mixture() -> MixtureModel<UnivariateDist> {
        MixtureModel::new(
            vec![
                Normal::new(-1.0, 0.3).unwrap().into(),
                Normal::new(0.0, 0.5).unwrap().into(),
                Normal::new(3.0, 1.0).unwrap().into(),
            ],
            vec![0.25, 0.25, 0.5],
        )
        .unwrap()
    }

    #[test]
    fn three_normal_mixture_density_at_zero() {
        let m = three_normal_mixture();
        assert_eq!(m.ncomponents(), 3);
        assert_eq!(m.probs(), &[0.25, 0.25, 0.5]);
        assert!((m.pdf(&0.0) - 0.2029724).abs() < 1e-6);
        match m.component(3).unwrap() {
            UnivariateDist::Normal(n) => {
                assert_eq!(n.mu(), 3.0);
                assert_eq!(n.sigma(), 1.0);
            }
            other => panic!("expected Normal, got {other:?}"),
        }
        assert!(matches!(
            m.component(4),
            Err(Error::IndexOutOfRange { index: 4, len: 3 })
        ));
        assert!(matches!(m.component(0), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn construction_rejects_invalid_models() {
        let c = |mu: f64| -> UnivariateDist { Normal::new(mu, 1.0).unwrap().into() };
        assert!(matches!(
            MixtureModel::new(vec![c(0.0), c(1.0)], vec![0.6, 0.5]),
            Err(Error::NotASimplex(_))
        ));
        assert!(matches!(
            MixtureModel::<UnivariateDist>::new(vec![], vec![]),
            Err(Error::EmptyComponents)
        ));
        assert!(matches!(
            MixtureModel::new(
                vec![c(0.0), Poisson::new(2.0).unwrap().into()],
                vec![0.5, 0.5]
            ),
            Err(Error::MixedVariateForms)
        ));
    }

    #[test]
    fn zero_weight_component_changes_nothing() {
        let with = MixtureModel::new(
            vec![
                Normal::new(0.0, 1.0).unwrap(),
                Normal::new(50.0, 0.1).unwrap(),
            ],
            vec![1.0, 0.0],
        )
        .unwrap();
        let without = MixtureModel::new(vec![Normal::new(0.0, 1.0).unwrap()], vec![1.0]).unwrap();
        for x in [-2.0, 0.0, 1.3] {
            assert_eq!(with.pdf(&x), without.pdf(&x));
            assert_eq!(with.logpdf(&x), without.logpdf(&x));
        }
    }

    #[test]
    fn single_component_mixture_is_the_component() {
        let n = Normal::new(1.5, 2.0).unwrap();
        let m = MixtureModel::new(vec![n], vec![1.0]).unwrap();
        for x in [-3.0, 0.0, 4.2] {
            assert_eq!(m.pdf(&x), n.pdf(&x));
            assert_eq!(m.logpdf(&x), n.logpdf(&x));
        }
    }

    #[test]
    fn logpdf_survives_tail_underflow() {
        let m = MixtureModel::new(
            vec![
                Normal::new(0.0, 1.0).unwrap(),
                Normal::new(5.0, 1.0).unwrap(),
            ],
            vec![0.5, 0.5],
        )
        .unwrap();
        // Healthy region: logpdf agrees with ln(pdf).
        assert_relative_eq!(m.logpdf(&1.0), m.pdf(&1.0).ln(), epsilon = 1e-10);
        // Far tail: pdf underflows to 0 but logpdf stays finite and is
        // dominated by the nearer component.
        let x = 60.0;
        assert_eq!(m.pdf(&x), 0.0);
        let expected = 0.5f64.ln() + Normal::new(5.0, 1.0).unwrap().logpdf(&x);
        assert_relative_eq!(m.logpdf(&x), expected, max_relative = 1e-12);
    }

    #[test]
    fn sampling_respects_weights() {
        let m = MixtureModel::new(
            vec![
                Normal::new(-10.0, 0.1).unwrap(),
                Normal::new(10.0, 0.1).unwrap(),
            ],
            vec![1.0, 0.0],
        )
        .unwrap();
        let mut rng = RngState::new(42);
        for _ in 0..100 {
            assert!(m.rand(&mut rng) < 0.0);
        }

        // Law of total expectation on the three-Normal mixture:
        // E = 0.25·(-1) + 0.25·0 + 0.5·3 = 1.25, sd ≈ 1.942.
        let m = three_normal_mixture();
        let n = 100_000;
        let mean: f64 = (0..n).map(|_| m.rand(&mut rng)).sum::<f64>() / n as f64;
        let se = 1.9423 / (n as f64).sqrt();
        assert!((mean - 1.25).abs() < 3.0 * se, "mean {mean}");
    }

    fn mvn1(mu: f64, var: f64) -> MvNormal {
        MvNormal::from_rows(&[mu], &[vec![var]]).unwrap()
    }

    #[test]
    fn expectation_step_symmetries() {
        let x = DMatrix::from_column_slice(3, 1, &[-1.0, 0.0, 2.0]);
        let twins = vec![mvn1(0.0, 1.0), mvn1(0.0, 1.0)];
        let z = expectation_step(&x, &twins, &[0.5, 0.5]).unwrap();
        for i in 0..3 {
            assert_relative_eq!(z[(i, 0)], 0.5, epsilon = 1e-12);
            assert_relative_eq!(z[(i, 1)], 0.5, epsilon = 1e-12);
        }

        let z = expectation_step(&x, &twins, &[1.0, 0.0]).unwrap();
        for i in 0..3 {
            assert_eq!(z[(i, 0)], 1.0);
            assert_eq!(z[(i, 1)], 0.0);
        }
    }

    #[test]
    fn expectation_step_matches_direct_ratio() {
        let mut rng = RngState::new(17);
        let src = Normal::new(0.0, 2.0).unwrap();
        let x = DMatrix::from_fn(20, 2, |_, _| src.rand(&mut rng));
        let dists = vec![
            MvNormal::from_rows(&[0.0, 0.0], &[vec![1.0, 0.2], vec![0.2, 1.0]]).unwrap(),
            MvNormal::from_rows(&[1.0, -1.0], &[vec![2.0, 0.0], vec![0.0, 0.5]]).unwrap(),
        ];
        let prior = [0.3, 0.7];
        let z = expectation_step(&x, &dists, &prior).unwrap();
        for i in 0..x.nrows() {
            let row = [x[(i, 0)], x[(i, 1)]];
            let f0 = prior[0] * dists[0].pdf(&row).unwrap();
            let f1 = prior[1] * dists[1].pdf(&row).unwrap();
            assert_relative_eq!(z[(i, 0)], f0 / (f0 + f1), max_relative = 1e-12);
            assert_relative_eq!(z[(i, 1)], f1 / (f0 + f1), max_relative = 1e-12);
            assert_relative_eq!(z[(i, 0)] + z[(i, 1)], 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn maximization_step_hard_assignments_recover_cloud_means() {
        let x = DMatrix::from_row_slice(4, 2, &[
            0.0, 0.0, //
            2.0, 2.0, //
            10.0, 10.0, //
            14.0, 10.0,
        ]);
        let z = DMatrix::from_row_slice(4, 2, &[
            1.0, 0.0, //
            1.0, 0.0, //
            0.0, 1.0, //
            0.0, 1.0,
        ]);
        let (dists, prior) = maximization_step_mvnormal(&x, &z, 1e-6).unwrap();
        assert_eq!(dists[0].mu(), &[1.0, 1.0]);
        assert_eq!(dists[1].mu(), &[12.0, 10.0]);
        assert_eq!(prior, vec![0.5, 0.5]);
        // Ridge lands on the diagonal: cloud 1 has per-axis variance 1.
        assert_relative_eq!(dists[0].sigma()[(0, 0)], 1.0 + 1e-6);

        // Uniform responsibilities pool everything.
        let uniform = DMatrix::from_element(4, 2, 0.5);
        let (dists, _) = maximization_step_mvnormal(&x, &uniform, 0.0).unwrap();
        assert_eq!(dists[0].mu(), dists[1].mu());
        assert_relative_eq!(dists[0].mu()[0], 6.5);

        // A collapsed column is an error.
        let dead = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 1.0, 0.0]);
        let x2 = DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 1.0, 1.0]);
        assert!(matches!(
            maximization_step_mvnormal(&x2, &dead, 1e-6),
            Err(Error::EmptyComponent { component: 2 })
        ));
    }

    #[test]
    fn loglike_mixture_reductions() {
        let mut rng = RngState::new(29);
        let src = Normal::new(1.0, 1.5).unwrap();
        let x = DMatrix::from_fn(15, 2, |_, _| src.rand(&mut rng));
        let d0 = MvNormal::from_rows(&[0.0, 0.0], &[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let d1 = MvNormal::from_rows(&[2.0, 2.0], &[vec![3.0, 1.0], vec![1.0, 3.0]]).unwrap();

        // Single component: plain log-likelihood.
        let single = loglike_mixture(&x, &[d0.clone()], &[1.0]).unwrap();
        assert_relative_eq!(single, d0.loglikelihood(&x).unwrap(), max_relative = 1e-12);

        // Zero-weight component is inert.
        let padded = loglike_mixture(&x, &[d0.clone(), d1.clone()], &[1.0, 0.0]).unwrap();
        assert_eq!(padded, single);

        // Naive double loop oracle.
        let prior = [0.4, 0.6];
        let value = loglike_mixture(&x, &[d0.clone(), d1.clone()], &prior).unwrap();
        let mut naive = 0.0;
        for i in 0..x.nrows() {
            let row = [x[(i, 0)], x[(i, 1)]];
            naive += (prior[0] * d0.pdf(&row).unwrap() + prior[1] * d1.pdf(&row).unwrap()).ln();
        }
        assert_relative_eq!(value, naive, max_relative = 1e-10);
    }

    /// Draws rows from a two-cluster Gaussian mixture. The clusters are
    /// deliberately unequal in weight and spread: the alternating-label
    /// initialisation starts both components near the pooled distribution,
    /// and perfectly balanced clusters leave it stranded on that symmetric
    /// ridge where the log-likelihood plateaus below the stopping tolerance.
    fn two_cluster_data(n: usize, seed: u64) -> DMatrix<f64> {
        let mut rng = RngState::new(seed);
        let a = MvNormal::from_rows(&[0.0, 0.0], &[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let b = MvNormal::from_rows(&[10.0, 10.0], &[vec![2.0, 0.5], vec![0.5, 1.0]]).unwrap();
        let truth = MixtureModel::new(vec![a, b], vec![0.4, 0.6]).unwrap();
        let rows: Vec<Vec<f64>> = (0..n).map(|_| truth.rand(&mut rng)).collect();
        DMatrix::from_fn(n, 2, |i, j| rows[i][j])
    }

    #[test]
    fn em_separates_two_clusters() {
        let x = two_cluster_data(400, 12);
        let fit = em_fit(&x, &EmConfig::new(2)).unwrap();
        assert!(fit.iterations < 500);

        let mu0 = fit.mixture.component(1).unwrap().mu().to_vec();
        let mu1 = fit.mixture.component(2).unwrap().mu().to_vec();
        let close = |m: &[f64], t: [f64; 2]| (m[0] - t[0]).abs() < 0.1 && (m[1] - t[1]).abs() < 0.1;
        let direct = close(&mu0, [0.0, 0.0]) && close(&mu1, [10.0, 10.0]);
        let swapped = close(&mu0, [10.0, 10.0]) && close(&mu1, [0.0, 0.0]);
        assert!(direct || swapped, "means {mu0:?} / {mu1:?}");

        // Monotone log-likelihood trace (tiny round-off slack).
        for w in fit.trace.windows(2) {
            assert!(w[1] >= w[0] - 1e-10, "trace decreased: {:?}", fit.trace);
        }
        // Responsibilities rows sum to one.
        for i in 0..x.nrows() {
            let s: f64 = (0..2).map(|j| fit.responsibilities[(i, j)]).sum();
            assert_relative_eq!(s, 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn em_with_one_component_is_the_mle() {
        let x = two_cluster_data(50, 7);
        let cfg = EmConfig {
            ridge: 0.0,
            ..EmConfig::new(1)
        };
        let fit = em_fit(&x, &cfg).unwrap();
        assert_eq!(fit.iterations, 1);

        let mle = fit_mvnormal(&x, None).unwrap();
        let got = fit.mixture.component(1).unwrap();
        for (a, b) in got.mu().iter().zip(mle.mu()) {
            assert_relative_eq!(a, b, epsilon = 1e-8);
        }
        for (a, b) in got.sigma().iter().zip(mle.sigma().iter()) {
            assert_relative_eq!(a, b, epsilon = 1e-8);
        }
        assert_eq!(fit.mixture.probs(), &[1.0]);
    }

    #[test]
    fn em_rejects_impossible_setups() {
        let x = two_cluster_data(2, 3);
        assert!(matches!(
            em_fit(&x, &EmConfig::new(0)),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            em_fit(&x, &EmConfig::new(5)),
            Err(Error::DegenerateData(_))
        ));
        assert!(matches!(
            em_fit(&DMatrix::zeros(0, 2), &EmConfig::new(1)),
            Err(Error::EmptyData)
        ));
    }
}
