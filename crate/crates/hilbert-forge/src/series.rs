//! Double series Σ_m Σ_n a_m b_n / (m + n + offset) with certified tails.
//!
//! The canonical evaluation order is diagonal resummation: the kernel is
//! constant on each diagonal s = m + n, so the double sum collapses into a
//! single sum of convolution coefficients and the tail analysis becomes
//! one-dimensional. Terms on a diagonal are accumulated in symmetric pairs
//! (a_m b_{s−m} + a_{s−m} b_m), which makes the result bitwise identical
//! under exchange of the two sequences.
//!
//! The untreated region {m + n > S} is bounded by the smaller of two
//! rigorous estimates: the classical inequality applied to the sequence
//! tails (valid whenever some conjugate pair of norms is finite), and a
//! union bound with the kernel supremum for ℓ¹-summable families. Both only
//! use quantities with closed-form bounds, so the reported interval
//! value ± error_bound always contains the true sum.

use crate::funcspace::SequenceFamily;
use crate::specialfn::{hilbert_constant, HolderPair};
use crate::{Budget, Error, KahanSum, Result};

/// How often the (comparatively expensive) tail bounds are re-evaluated.
const TAIL_CHECK_STRIDE: u64 = 16;

/// Σ_{m,n ≥ start} a_m b_n / (m + n + offset) with |true − value| ≤ error.
///
/// Offset 0 requires both sequences to start at index 1 (the kernel would
/// be singular at (0,0)); offset 1 requires start index 0.
pub fn double_sum_kernel(
    a: &SequenceFamily,
    b: &SequenceFamily,
    offset: u32,
    tol: f64,
    budget: &Budget,
) -> Result<(f64, f64)> {
    let required_start = match offset {
        0 => 1,
        1 => 0,
        other => {
            return Err(Error::Domain(format!("kernel offset must be 0 or 1, got {other}")));
        }
    };
    if a.start_index() != required_start || b.start_index() != required_start {
        return Err(Error::IndexMismatch(format!(
            "offset {offset} requires start index {required_start}, got {} and {}",
            a.start_index(),
            b.start_index()
        )));
    }
    double_sum_kernel_restricted(a, b, offset, required_start, tol, budget)
}

/// Same sum restricted to indices m, n ≥ `min_index`.
///
/// Used for the multiplicity terms of the sum-type inequalities, whose
/// second component runs over m, n ≥ 1 while the sequences start at 0.
pub fn double_sum_kernel_restricted(
    a: &SequenceFamily,
    b: &SequenceFamily,
    offset: u32,
    min_index: u64,
    tol: f64,
    budget: &Budget,
) -> Result<(f64, f64)> {
    if offset > 1 {
        return Err(Error::Domain(format!("kernel offset must be 0 or 1, got {offset}")));
    }
    if min_index < a.start_index().max(b.start_index()) {
        return Err(Error::IndexMismatch(format!(
            "restriction index {min_index} precedes the sequence start"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    if min_index == 0 && offset == 0 {
        return Err(Error::IndexMismatch(
            "offset 0 with index 0 makes the kernel singular at (0,0)".into(),
        ));
    }
    if a.is_zero() || b.is_zero() {
        return Ok((0.0, 0.0));
    }

    let tails = TailMachinery::prepare(a, b, min_index, budget)?;

    let support_cap = match (a.support_end(), b.support_end()) {
        (Some(ea), Some(eb)) => Some(ea + eb),
        _ => None,
    };

    let lo = min_index;
    let mut sum = KahanSum::default();
    let mut work: u64 = 0;
    let mut s = 2 * lo;

    let tail_bound = loop {
        // Exact termination once both supports are exhausted.
        if let Some(cap) = support_cap {
            if s > cap {
                break 0.0;
            }
        }
        let conv = diagonal_convolution(a, b, s, lo);
        let kernel = 1.0 / (s + offset as u64) as f64;
        sum.add(conv * kernel);
        work += s - 2 * lo + 1;
        if work > budget.max_series_terms {
            return Err(Error::ToleranceUnreachable(format!(
                "double sum exceeded the {} term cap at diagonal {s}",
                budget.max_series_terms
            )));
        }
        if s.is_multiple_of(TAIL_CHECK_STRIDE) || support_cap.is_some_and(|cap| s >= cap) {
            let bound = tails.bound(a, b, s, offset);
            if bound <= tol / 2.0 {
                break bound;
            }
        }
        s += 1;
    };

    let partial = sum.value();
    let value = partial + tail_bound / 2.0;
    let error = tail_bound / 2.0 + partial.abs() * 1e-14;
    Ok((value, error))
}

/// Convolution Σ a_m b_{s−m} over m ∈ [lo, s−lo], accumulated in symmetric
/// pairs so the result is bitwise exchange-symmetric.
fn diagonal_convolution(a: &SequenceFamily, b: &SequenceFamily, s: u64, lo: u64) -> f64 {
    if s < 2 * lo {
        return 0.0;
    }
    // Geometric × geometric diagonals have a closed form; (rmin, rmax) keeps
    // the evaluation canonical under exchange.
    if let (Some((r1, scale_a)), Some((r2, scale_b))) = (a.as_geometric(), b.as_geometric()) {
        let count = s - 2 * lo + 1;
        let amplitude = scale_a * scale_b;
        if r1 == r2 {
            return amplitude * count as f64 * r1.powi(s as i32);
        }
        let (rmin, rmax) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
        let q = rmin / rmax;
        let geometric_part = q.powi(lo as i32) * (1.0 - q.powi(count as i32)) / (1.0 - q);
        return amplitude * rmax.powi(s as i32) * geometric_part;
    }
    let mut m = lo;
    let mut k = s - lo;
    let mut sum = KahanSum::default();
    while m < k {
        sum.add(a.term(m) * b.term(k) + a.term(k) * b.term(m));
        m += 1;
        k -= 1;
    }
    if m == k {
        sum.add(a.term(m) * b.term(m));
    }
    sum.value()
}

/// Precomputed full norms used by the per-diagonal tail bounds.
struct TailMachinery {
    /// Conjugate pair for the classical-inequality tail, when one exists.
    pair: Option<HolderPair>,
    /// κ_p · (Σ b^q)^(1/q) and κ_p · (Σ a^p)^(1/p) upper bounds.
    cross_b: f64,
    cross_a: f64,
    /// Full ℓ¹ norms (upper bounds), infinite when not summable.
    l1_a: f64,
    l1_b: f64,
}

impl TailMachinery {
    fn prepare(
        a: &SequenceFamily,
        b: &SequenceFamily,
        min_index: u64,
        budget: &Budget,
    ) -> Result<Self> {
        let pair = choose_tail_pair(a, b);
        let (mut cross_a, mut cross_b) = (f64::INFINITY, f64::INFINITY);
        if let Some(pair) = &pair {
            let kappa = hilbert_constant(pair);
            let norm_tol = 1e-10;
            let a_full = a.lp_norm_power(pair.p(), norm_tol, budget)?;
            let b_full = b.lp_norm_power(pair.q(), norm_tol, budget)?;
            cross_b = kappa * (b_full.0 + b_full.1).powf(1.0 / pair.q());
            cross_a = kappa * (a_full.0 + a_full.1).powf(1.0 / pair.p());
        }
        let l1_a = a.l1_tail_bound(min_index);
        let l1_b = b.l1_tail_bound(min_index);
        if pair.is_none() && !(l1_a.is_finite() && l1_b.is_finite()) {
            return Err(Error::Domain(
                "no conjugate pair with finite norms; the double sum cannot be certified".into(),
            ));
        }
        Ok(TailMachinery { pair, cross_a, cross_b, l1_a, l1_b })
    }

    /// Upper bound on Σ over {m + n > s} of a_m b_n/(m+n+offset).
    fn bound(&self, a: &SequenceFamily, b: &SequenceFamily, s: u64, offset: u32) -> f64 {
        // Any (m, n) with m + n ≥ s+1 has max(m, n) ≥ ceil((s+1)/2).
        let half = (s + 2) / 2;

        // Classical-inequality route: the shifted tail sequence still
        // dominates the true kernel because m+n+offset ≥ (m−M)+n for m > M.
        let by_inequality = match &self.pair {
            Some(pair) => {
                let tail_a = a.lp_tail_bound(pair.p(), half).powf(1.0 / pair.p());
                let tail_b = b.lp_tail_bound(pair.q(), half).powf(1.0 / pair.q());
                tail_a * self.cross_b + tail_b * self.cross_a
            }
            None => f64::INFINITY,
        };

        // Union bound with the kernel supremum 1/(s+1+offset).
        let by_l1 = if self.l1_a.is_finite() && self.l1_b.is_finite() {
            (a.l1_tail_bound(half) * self.l1_b + self.l1_a * b.l1_tail_bound(half))
                / (s + 1 + offset as u64) as f64
        } else {
            f64::INFINITY
        };

        by_inequality.min(by_l1)
    }
}

/// Picks conjugate exponents (p, q) with Σ a^p and Σ b^q both finite.
fn choose_tail_pair(a: &SequenceFamily, b: &SequenceFamily) -> Option<HolderPair> {
    let margin = 1.05;
    let lo = a.min_lp_exponent().max(1.0) * margin;
    let hi = if b.min_lp_exponent() > 1.0 {
        b.min_lp_exponent() / (b.min_lp_exponent() - 1.0) / margin
    } else {
        f64::INFINITY
    };
    let candidate = if lo < 2.0 && 2.0 < hi {
        2.0
    } else if hi.is_finite() {
        if lo >= hi {
            return None;
        }
        0.5 * (lo.max(1.0 + 1e-6) + hi)
    } else {
        lo.max(2.0)
    };
    HolderPair::new(candidate).ok()
}
