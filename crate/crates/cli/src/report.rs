//! Serializable shapes for the JSON outputs. Field order is the struct
//! declaration order, so serialized files are byte-stable across runs.

use distkit::{DistributionDescriptor, MvNormal, ProductDistribution, Univariate};
use serde::Serialize;

/// `sample` output in JSON form. The `family`/`params` pair is the same
/// descriptor shape the fitting commands emit, so the file also identifies
/// the distribution it was drawn from.
#[derive(Serialize)]
pub struct SampleReport {
    pub family: String,
    pub params: Vec<f64>,
    pub seed: u64,
    pub samples: Vec<f64>,
}

/// `fit` output for a univariate family.
#[derive(Serialize)]
pub struct UnivariateFitReport {
    pub family: String,
    pub params: Vec<f64>,
    pub loglikelihood: f64,
    pub n: usize,
    /// Iteration count for iterative fits; `null` for closed forms.
    pub iterations: Option<u64>,
}

/// A multivariate normal as mean vector plus covariance rows.
#[derive(Serialize)]
pub struct MvNormalJson {
    pub family: &'static str,
    pub mu: Vec<f64>,
    pub sigma: Vec<Vec<f64>>,
}

impl MvNormalJson {
    pub fn from_dist(d: &MvNormal) -> Self {
        Self {
            family: "MvNormal",
            mu: d.mu().to_vec(),
            sigma: d.sigma_rows(),
        }
    }
}

/// `fit --dist MvNormal` output.
#[derive(Serialize)]
pub struct MvNormalFitReport {
    pub family: &'static str,
    pub mu: Vec<f64>,
    pub sigma: Vec<Vec<f64>>,
    pub loglikelihood: f64,
    pub n: usize,
    pub iterations: Option<u64>,
}

/// `fit --dist Product` output: one descriptor per marginal.
#[derive(Serialize)]
pub struct ProductFitReport {
    pub family: &'static str,
    pub components: Vec<DistributionDescriptor>,
    pub loglikelihood: f64,
    pub n: usize,
    pub iterations: Option<u64>,
}

impl ProductFitReport {
    pub fn from_fit(d: &ProductDistribution, loglikelihood: f64, n: usize, iters: u64) -> Self {
        Self {
            family: "Product",
            components: d.components().iter().map(|c| c.descriptor()).collect(),
            loglikelihood,
            n,
            iterations: Some(iters),
        }
    }
}

/// `em` output: the fitted Gaussian mixture plus its convergence record.
#[derive(Serialize)]
pub struct EmReport {
    pub family: &'static str,
    pub weights: Vec<f64>,
    pub components: Vec<MvNormalJson>,
    pub loglike: f64,
    pub iterations: usize,
    /// Log-likelihood after each iteration, for convergence plots.
    pub trace: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub responsibilities_file: Option<String>,
}

/// `kde` output in JSON form (the CSV form is the x,density grid).
#[derive(Serialize)]
pub struct KdeReport {
    pub bandwidth: f64,
    pub x: Vec<f64>,
    pub density: Vec<f64>,
}

/// Two-dimensional `kde` output in JSON form; `density[i][j]` pairs with
/// `(x[i], y[j])`.
#[derive(Serialize)]
pub struct Kde2dReport {
    pub bandwidths: [f64; 2],
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub density: Vec<Vec<f64>>,
}

/// `hist` output.
#[derive(Serialize)]
pub struct HistReport {
    pub edges: Vec<f64>,
    pub counts: Vec<f64>,
    pub closed: &'static str,
    pub total: f64,
}

/// One benchmark case. Timing fields are absent in gate-only runs.
#[derive(Serialize)]
pub struct BenchCaseReport {
    pub name: &'static str,
    pub components: usize,
    pub heterogeneous: bool,
    pub x: f64,
    pub library_value: f64,
    pub manual_value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub library_ns_per_eval: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub manual_ns_per_eval: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio_manual_over_library: Option<f64>,
}

/// Full `bench` output.
#[derive(Serialize)]
pub struct BenchReport {
    pub seed: u64,
    pub evals: u64,
    pub gate: &'static str,
    pub cases: Vec<BenchCaseReport>,
    /// Typical manual/library ratios from the hardware this benchmark was
    /// first calibrated on; for comparison only, strongly machine-dependent.
    pub reference_ratios: [f64; 3],
}
