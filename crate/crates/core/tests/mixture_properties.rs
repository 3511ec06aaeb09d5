//! Mixture-model properties: agreement with the manual component loop on a
//! large population of random models, exact label-permutation invariance,
//! log-density consistency, and EM step oracles.

use distkit::mixture::{
    expectation_step, loglike_mixture, maximization_step_mvnormal, MixtureModel,
};
use distkit::multivariate::MvNormal;
use distkit::univariate::{LogNormal, Normal};
use distkit::{Distribution, RngState, UnivariateDist};
use nalgebra::DMatrix;

/// Random mixture of Normal and LogNormal marginals; roughly a fifth of the
/// weights are exactly zero, exercising the branch-free accumulation.
fn random_model(rng: &mut RngState) -> MixtureModel<UnivariateDist> {
    let k = 1 + (rng.uniform01() * 5.0) as usize;
    let mut components: Vec<UnivariateDist> = Vec::with_capacity(k);
    let mut weights = Vec::with_capacity(k);
    for _ in 0..k {
        let c: UnivariateDist = if rng.uniform01() < 0.5 {
            Normal::new(rng.uniform01() * 10.0 - 5.0, 0.1 + rng.uniform01() * 3.0)
                .unwrap()
                .into()
        } else {
            LogNormal::new(rng.uniform01() * 2.0 - 1.0, 0.2 + rng.uniform01() * 1.3)
                .unwrap()
                .into()
        };
        components.push(c);
        weights.push(if rng.uniform01() < 0.2 {
            0.0
        } else {
            rng.uniform01()
        });
    }
    let total: f64 = weights.iter().sum();
    if total == 0.0 {
        weights[0] = 1.0;
    } else {
        for w in &mut weights {
            *w /= total;
        }
    }
    MixtureModel::new(components, weights).unwrap()
}

#[test]
fn pdf_matches_manual_skip_zero_loop_on_many_random_models() {
    let mut rng = RngState::new(60);
    for _ in 0..1000 {
        let m = random_model(&mut rng);
        let x = rng.uniform01() * 16.0 - 8.0;

        let manual: f64 = m
            .probs()
            .iter()
            .zip(m.components())
            .filter(|(w, _)| **w > 0.0)
            .map(|(w, c)| w * c.pdf(&x))
            .sum();
        let lib = m.pdf(&x);
        if manual == 0.0 {
            assert_eq!(lib, 0.0);
        } else {
            let rel = (lib - manual).abs() / manual;
            assert!(rel <= 1e-12, "pdf({x}) = {lib} vs manual {manual}");
        }
    }
}

#[test]
fn permuting_labels_leaves_pdf_bits_unchanged() {
    let mut rng = RngState::new(61);
    for _ in 0..500 {
        // Raw construction inputs, then the same inputs relabeled.
        let k = 2 + (rng.uniform01() * 4.0) as usize;
        let components: Vec<UnivariateDist> = (0..k)
            .map(|_| {
                Normal::new(rng.uniform01() * 10.0 - 5.0, 0.1 + rng.uniform01() * 3.0)
                    .unwrap()
                    .into()
            })
            .collect();
        let mut weights: Vec<f64> = (0..k).map(|_| rng.uniform01()).collect();
        let total: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= total;
        }

        let mut order: Vec<usize> = (0..k).collect();
        for i in (1..k).rev() {
            let j = (rng.uniform01() * (i + 1) as f64) as usize;
            order.swap(i, j.min(i));
        }

        let m = MixtureModel::new(components.clone(), weights.clone()).unwrap();
        let permuted = MixtureModel::new(
            order.iter().map(|&i| components[i].clone()).collect(),
            order.iter().map(|&i| weights[i]).collect(),
        )
        .unwrap();

        for _ in 0..5 {
            let x = rng.uniform01() * 16.0 - 8.0;
            assert!(
                m.pdf(&x).to_bits() == permuted.pdf(&x).to_bits(),
                "pdf changed under label permutation at {x}"
            );
        }
    }
}

#[test]
fn logpdf_is_consistent_and_survives_the_far_tail() {
    let mut rng = RngState::new(62);
    for _ in 0..500 {
        let m = random_model(&mut rng);
        let x = rng.uniform01() * 16.0 - 8.0;
        let p = m.pdf(&x);
        if p > 1e-300 {
            assert!(
                (m.logpdf(&x) - p.ln()).abs() <= 1e-10,
                "logpdf vs ln(pdf) at {x}"
            );
        }
    }

    // Deep in the tail the plain pdf underflows to zero while the
    // log-sum-exp path keeps a finite value.
    let m = MixtureModel::new(
        vec![
            Normal::new(0.0, 1.0).unwrap(),
            Normal::new(3.0, 1.0).unwrap(),
        ],
        vec![0.5, 0.5],
    )
    .unwrap();
    let far = 60.0;
    assert_eq!(m.pdf(&far), 0.0);
    let lp = m.logpdf(&far);
    assert!(lp.is_finite() && lp < -1000.0, "tail logpdf {lp}");
}

#[test]
fn expectation_step_matches_direct_ratio_oracle() {
    let mut rng = RngState::new(63);
    for _ in 0..100 {
        let d = 2;
        let n = 20;
        let dists: Vec<MvNormal> = (0..2)
            .map(|_| {
                let mu: Vec<f64> = (0..d).map(|_| rng.uniform01() * 6.0 - 3.0).collect();
                let sigma: Vec<Vec<f64>> = (0..d)
                    .map(|i| {
                        (0..d)
                            .map(|j| if i == j { 0.5 + rng.uniform01() * 2.0 } else { 0.0 })
                            .collect()
                    })
                    .collect();
                MvNormal::from_rows(&mu, &sigma).unwrap()
            })
            .collect();
        let pi = 0.2 + rng.uniform01() * 0.6;
        let prior = [pi, 1.0 - pi];
        let x = DMatrix::from_fn(n, d, |_, _| rng.uniform01() * 8.0 - 4.0);

        let z = expectation_step(&x, &dists, &prior).unwrap();
        for i in 0..n {
            let row: Vec<f64> = (0..d).map(|j| x[(i, j)]).collect();
            let f0 = prior[0] * dists[0].pdf(&row).unwrap();
            let f1 = prior[1] * dists[1].pdf(&row).unwrap();
            let denom = f0 + f1;
            assert!((z[(i, 0)] - f0 / denom).abs() <= 1e-12);
            assert!((z[(i, 1)] - f1 / denom).abs() <= 1e-12);
            assert!((z[(i, 0)] + z[(i, 1)] - 1.0).abs() <= 1e-10);
        }
    }
}

#[test]
fn maximization_step_matches_brute_force_moments() {
    let mut rng = RngState::new(64);
    let (n, d, k) = (30, 2, 3);
    let ridge = 1e-6;
    for _ in 0..50 {
        let x = DMatrix::from_fn(n, d, |_, _| rng.uniform01() * 10.0 - 5.0);
        // Row-stochastic responsibilities.
        let mut z = DMatrix::from_fn(n, k, |_, _| 0.05 + rng.uniform01());
        for i in 0..n {
            let s: f64 = (0..k).map(|j| z[(i, j)]).sum();
            for j in 0..k {
                z[(i, j)] /= s;
            }
        }

        let (dists, prior) = maximization_step_mvnormal(&x, &z, ridge).unwrap();
        for j in 0..k {
            let colsum: f64 = (0..n).map(|i| z[(i, j)]).sum();
            assert!((prior[j] - colsum / n as f64).abs() <= 1e-10);

            let mut mu = vec![0.0; d];
            for i in 0..n {
                for c in 0..d {
                    mu[c] += z[(i, j)] * x[(i, c)];
                }
            }
            for m in &mut mu {
                *m /= colsum;
            }
            for (a, b) in dists[j].mu().iter().zip(&mu) {
                assert!((a - b).abs() <= 1e-10);
            }

            let mut cov = vec![vec![0.0; d]; d];
            for i in 0..n {
                for r in 0..d {
                    for c in 0..d {
                        cov[r][c] += z[(i, j)] * (x[(i, r)] - mu[r]) * (x[(i, c)] - mu[c]);
                    }
                }
            }
            for (r, row) in cov.iter_mut().enumerate() {
                for (c, v) in row.iter_mut().enumerate() {
                    *v /= colsum;
                    if r == c {
                        *v += ridge;
                    }
                }
            }
            let sigma = dists[j].sigma_rows();
            for r in 0..d {
                for c in 0..d {
                    assert!((sigma[r][c] - cov[r][c]).abs() <= 1e-10);
                }
            }
        }
    }
}

#[test]
fn mixture_sampling_obeys_the_law_of_total_expectation() {
    // Three-component normal mixture with mean 0.25·(−1) + 0.25·0 + 0.5·3.
    let m = MixtureModel::new(
        vec![
            Normal::new(-1.0, 0.3).unwrap(),
            Normal::new(0.0, 0.5).unwrap(),
            Normal::new(3.0, 1.0).unwrap(),
        ],
        vec![0.25, 0.25, 0.5],
    )
    .unwrap();
    let n = 100_000;
    let mut rng = RngState::new(42);
    let mean = (0..n).map(|_| m.rand(&mut rng)).sum::<f64>() / n as f64;

    // Var = Σ wᵢ(σᵢ² + µᵢ²) − 1.25² = 3.7725, so 3·SE ≈ 0.0184.
    let se = (3.7725f64 / n as f64).sqrt();
    assert!(
        (mean - 1.25).abs() <= 3.0 * se,
        "sample mean {mean} vs 1.25 ± {:.4}",
        3.0 * se
    );
}

#[test]
fn single_component_loglike_equals_plain_loglikelihood() {
    let mut rng = RngState::new(65);
    let x = DMatrix::from_fn(40, 2, |_, _| rng.uniform01() * 4.0);
    let d = MvNormal::from_rows(&[1.0, 2.0], &[vec![1.0, 0.2], vec![0.2, 2.0]]).unwrap();

    let single = loglike_mixture(&x, std::slice::from_ref(&d), &[1.0]).unwrap();
    let direct = d.loglikelihood(&x).unwrap();
    assert!((single - direct).abs() <= 1e-10);
}
