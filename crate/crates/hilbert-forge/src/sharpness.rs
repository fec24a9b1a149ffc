//! Best-possible-constant probes via truncated extremal families.
//!
//! The classical near-extremizers drive the LHS/RHS ratio of the unweighted
//! inequalities toward 1: x^(−1/p) (paired with x^(−1/q)) truncated to
//! [1, T] for the integral form, and m^(−1/p), m^(−1/q) truncated at N for
//! the discrete form. At p = 2 both members of each pair coincide. The
//! ratio stays strictly inside (0, 1) for every finite truncation and
//! approaches 1 like 1 − O(1/ln T).

use crate::funcspace::TestFunction;
use crate::quadrature::{integrate_kernel_double, integrate_semi_infinite_with_breakpoints};
use crate::specialfn::{hilbert_constant, HolderPair};
use crate::{Budget, Error, KahanSum, Result};

/// One sharpness measurement at a truncation point.
#[derive(Debug, Clone, Copy)]
pub struct SharpnessProbe {
    /// The truncation parameter (T for integral mode, N for discrete).
    pub probe: f64,
    pub lhs: f64,
    pub lhs_error: f64,
    pub rhs: f64,
    pub rhs_error: f64,
    pub ratio: f64,
}

impl SharpnessProbe {
    fn from_sides(probe: f64, lhs: f64, lhs_error: f64, rhs: f64, rhs_error: f64) -> Self {
        SharpnessProbe { probe, lhs, lhs_error, rhs, rhs_error, ratio: lhs / rhs }
    }
}

/// Ratio of the two sides of the integral inequality on the family
/// f = x^(−1/p), g = x^(−1/q) restricted to [1, T].
///
/// Both power norms equal ln T, so the RHS is κ_p · ln T; the ratio
/// increases toward 1 as T grows.
pub fn extremal_ratio_integral(
    pair: &HolderPair,
    truncation: f64,
    tol: f64,
    budget: &Budget,
) -> Result<SharpnessProbe> {
    if !(truncation > 1.0) || !truncation.is_finite() {
        return Err(Error::Domain(format!(
            "truncation must exceed 1, got {truncation}"
        )));
    }
    let f = TestFunction::truncated_power(-1.0 / pair.p(), 1.0, truncation)?;
    let g = TestFunction::truncated_power(-1.0 / pair.q(), 1.0, truncation)?;

    let lhs = integrate_kernel_double(&f, &g, 1.0, tol, budget)?;

    // ∫ f^p = ∫ g^q = ∫_1^T dx/x, evaluated through the quadrature pipeline.
    let power_norm = |exponent: f64, power: f64| {
        integrate_semi_infinite_with_breakpoints(
            |x: f64| {
                if x >= 1.0 && x <= truncation {
                    x.powf(exponent * power)
                } else {
                    0.0
                }
            },
            &[1.0, truncation],
            tol,
            budget,
        )
    };
    let norm_f = power_norm(-1.0 / pair.p(), pair.p())?;
    let norm_g = power_norm(-1.0 / pair.q(), pair.q())?;

    let kappa = hilbert_constant(pair);
    let rhs = kappa * norm_f.value.powf(1.0 / pair.p()) * norm_g.value.powf(1.0 / pair.q());
    let rhs_error = rhs
        * (norm_f.error_bound / (pair.p() * norm_f.value)
            + norm_g.error_bound / (pair.q() * norm_g.value));
    Ok(SharpnessProbe::from_sides(truncation, lhs.value, lhs.error_bound, rhs, rhs_error))
}

/// Ratio of the two sides of the discrete inequality on the family
/// a_m = m^(−1/p), b_m = m^(−1/q) for 1 ≤ m ≤ N.
///
/// Both power norms equal the harmonic number H_N, so the RHS is
/// κ_p · H_N. The double sum is evaluated exactly over cached term arrays.
pub fn extremal_ratio_discrete(
    pair: &HolderPair,
    cutoff: u64,
    budget: &Budget,
) -> Result<SharpnessProbe> {
    if cutoff < 2 {
        return Err(Error::Domain(format!("cutoff must be at least 2, got {cutoff}")));
    }
    let work = 2u128 * (cutoff as u128) * (cutoff as u128);
    if work > budget.max_series_terms as u128 {
        return Err(Error::ToleranceUnreachable(format!(
            "cutoff {cutoff} needs ~{work} term operations, beyond the cap {}",
            budget.max_series_terms
        )));
    }

    let n = cutoff as usize;
    let mut a = vec![0.0f64; n + 1];
    let mut b = vec![0.0f64; n + 1];
    let mut harmonic = KahanSum::default();
    for m in 1..=n {
        let mf = m as f64;
        a[m] = mf.powf(-1.0 / pair.p());
        b[m] = mf.powf(-1.0 / pair.q());
        harmonic.add(1.0 / mf);
    }

    // Diagonal resummation of Σ a_m b_k / (m + k) over the N×N box.
    let mut lhs = KahanSum::default();
    for s in 2..=(2 * n) {
        let lo = 1.max(s.saturating_sub(n));
        let hi = n.min(s - 1);
        let mut conv = 0.0;
        for m in lo..=hi {
            conv += a[m] * b[s - m];
        }
        lhs.add(conv / s as f64);
    }

    let lhs_value = lhs.value();
    let lhs_error = lhs_value * 1e-13;
    let kappa = hilbert_constant(pair);
    let h = harmonic.value();
    let rhs = kappa * h.powf(1.0 / pair.p()) * h.powf(1.0 / pair.q());
    let rhs_error = rhs * 1e-13;
    Ok(SharpnessProbe::from_sides(cutoff as f64, lhs_value, lhs_error, rhs, rhs_error))
}
