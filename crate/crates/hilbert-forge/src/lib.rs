//! Numerical verification toolkit for Hilbert-type inequalities.
//!
//! The crate evaluates both sides of the classical Hilbert integral and
//! discrete inequalities, their sum-type extensions with integer
//! multiplicities, and the Gamma-weighted integral variants, producing
//! reports with explicit error budgets. A sharpness module drives truncated
//! extremal families to exhibit best-possible-constant behavior.
//!
//! Module map:
//!
//! * [`specialfn`]: Gamma, log-Gamma, and the inequality constants.
//! * [`funcspace`]: test-function and sequence families with exact
//!   derivatives and certified norms.
//! * [`quadrature`]: adaptive semi-infinite quadrature and the kernel
//!   double integral.
//! * [`series`]: double series with the `1/(m+n+offset)` kernel and
//!   certified truncation tails.
//! * [`inequalities`]: one verifier per inequality, each emitting a
//!   [`inequalities::VerificationReport`].
//! * [`sharpness`]: extremal-family ratio probes.

// `!(x > 0.0)` is the NaN-rejecting form of the domain checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod funcspace;
pub mod inequalities;
pub mod quadrature;
pub mod series;
pub mod sharpness;
pub mod specialfn;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument left the admissible domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A result exceeds the representable floating-point range.
    #[error("overflow: {0}")]
    Overflow(String),
    /// The requested tolerance cannot be met within the evaluation budget.
    #[error("tolerance unreachable: {0}")]
    ToleranceUnreachable(String),
    /// Sequence start index and kernel offset disagree.
    #[error("index mismatch: {0}")]
    IndexMismatch(String),
    /// Endpoint exponent analysis shows the instance is non-integrable.
    #[error("divergence detected: {0}")]
    Divergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Evaluation budgets shared by quadrature and series summation.
///
/// The defaults match the library contract (1e6 integrand evaluations per
/// integral, 1e8 series terms); callers may override both, and the CLI maps
/// the `HILBERT_FORGE_CAP` environment variable onto them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Budget {
    /// Maximum integrand evaluations for a single integral.
    pub max_quad_evals: usize,
    /// Maximum number of series terms (work units) for a single sum.
    pub max_series_terms: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_quad_evals: 1_000_000,
            max_series_terms: 100_000_000,
        }
    }
}

impl Budget {
    /// Budget with both caps set to `cap` (used by the CLI env override).
    pub fn with_cap(cap: u64) -> Self {
        Budget {
            max_quad_evals: cap.min(usize::MAX as u64) as usize,
            max_series_terms: cap,
        }
    }
}

/// Compensated (Kahan) accumulator used wherever many terms are summed.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub(crate) fn add(&mut self, term: f64) {
        let y = term - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum
    }
}
