//! Deterministic random streams and stateful samplers.
//!
//! No global generator exists anywhere in the crate: every sampling routine
//! takes an explicit [`RngState`], so runs are reproducible end to end from a
//! single `u64` seed.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::traits::{Sampleable, ValueSupport, VariateForm};

/// Seedable deterministic random stream.
///
/// Backed by the ChaCha8 keystream, whose output for a given seed is stable
/// across platforms and releases; [`RngState::uniform01`] maps each 64-bit
/// word to a double in `[0, 1)` with 53 random bits.
#[derive(Debug, Clone)]
pub struct RngState {
    inner: ChaCha8Rng,
}

impl RngState {
    /// Create a stream from a 64-bit seed.
    pub fn new(seed: u64) -> Self {
        Self {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Next uniform draw in `[0, 1)`.
    pub fn uniform01(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        (self.inner.next_u64() >> 11) as f64 * SCALE
    }

    /// Next raw 64-bit word of the stream.
    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }
}

/// Draw `n` variates by repeated single draws on one stream, so the result
/// equals `n` sequential [`Sampleable::sample`] calls bit for bit.
pub fn sample_many<S: Sampleable + ?Sized>(
    s: &mut S,
    rng: &mut RngState,
    n: usize,
) -> Vec<S::Value> {
    (0..n).map(|_| s.sample(rng)).collect()
}

/// Select the first index whose cumulative probability reaches `u`.
///
/// Returns a 0-based index. When the row mass falls short of `u`, the last
/// index is returned if the deficit is round-off sized, and
/// [`Error::DegenerateRow`] (reported with row 0) if the row sums to less
/// than `1 - 1e-9`.
pub fn cumulative_select(row: &[f64], u: f64) -> Result<usize> {
    let mut cum = 0.0;
    for (j, p) in row.iter().enumerate() {
        cum += p;
        if u <= cum {
            return Ok(j);
        }
    }
    if cum < 1.0 - 1e-9 {
        Err(Error::DegenerateRow { row: 0 })
    } else {
        Ok(row.len() - 1)
    }
}

/// Discrete-state Markov chain sampled by inverse transform on the current
/// transition row. Implements [`Sampleable`] with mutable state: each draw
/// moves the chain and returns the new state.
///
/// States are 1-based (`1..=N`), matching the row indices of the transition
/// matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkovChain {
    state: usize,
    transition: Vec<Vec<f64>>,
}

impl MarkovChain {
    /// Build a chain from a 1-based initial state and an `N x N` transition
    /// matrix whose rows each sum to 1 within `1e-12`.
    pub fn new(initial_state: usize, transition: Vec<Vec<f64>>) -> Result<Self> {
        let n = transition.len();
        if n == 0 {
            return Err(Error::InvalidParameter(
                "transition matrix must have at least one state".into(),
            ));
        }
        for (i, row) in transition.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            if row.iter().any(|p| !p.is_finite() || *p < 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "transition row {} has negative or non-finite entries",
                    i + 1
                )));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidParameter(format!(
                    "transition row {} sums to {sum}, expected 1",
                    i + 1
                )));
            }
        }
        if initial_state < 1 || initial_state > n {
            return Err(Error::InvalidParameter(format!(
                "initial state {initial_state} outside 1..={n}"
            )));
        }
        Ok(Self {
            state: initial_state,
            transition,
        })
    }

    /// Current 1-based state.
    pub fn state(&self) -> usize {
        self.state
    }

    /// Number of states.
    pub fn n_states(&self) -> usize {
        self.transition.len()
    }

    /// Advance the chain one step: scan the cumulative sum of the current
    /// state's row against one uniform draw, mutate the state to the first
    /// index reaching the draw, and return it (1-based).
    pub fn step(&mut self, rng: &mut RngState) -> Result<usize> {
        let u = rng.uniform01();
        let row = &self.transition[self.state - 1];
        let next = cumulative_select(row, u).map_err(|e| match e {
            Error::DegenerateRow { .. } => Error::DegenerateRow { row: self.state },
            other => other,
        })?;
        self.state = next + 1;
        Ok(self.state)
    }
}

impl Sampleable for MarkovChain {
    type Value = usize;

    fn variate_form(&self) -> VariateForm {
        VariateForm::Univariate
    }

    fn value_support(&self) -> ValueSupport {
        ValueSupport::Discrete
    }

    fn sample(&mut self, rng: &mut RngState) -> usize {
        self.step(rng)
            .expect("constructor validated the transition rows")
    }
}
