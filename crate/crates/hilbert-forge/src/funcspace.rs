//! Test-function and sequence families.
//!
//! Only families with closed-form derivatives are admitted, so the weighted
//! integrands can evaluate the n-th derivative pointwise with no numerical
//! differentiation in the error budget. Admissibility against the inequality
//! hypotheses (vanishing derivatives at zero, positive derivatives, finite
//! weighted norms) is checked by [`check_admissible`]; positivity is sampled
//! on a fixed 256-point log grid over [1e-6, 1e3].

use crate::specialfn::HolderPair;
use crate::{Budget, Error, KahanSum, Result};

/// Number of sample points of the positivity grid.
const POSITIVITY_GRID: usize = 256;
/// Grid range [1e-6, 1e3] in log space.
const GRID_LO: f64 = 1e-6;
const GRID_HI: f64 = 1e3;
/// Margin for open-interval and endpoint-exponent checks.
const INTERVAL_MARGIN: f64 = 1e-9;

/// Kernel parameters (λ, γ, n) of the weighted inequalities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelParams {
    lambda: f64,
    gamma_shift: f64,
    n: u32,
}

impl KernelParams {
    /// Validates λ > 2n and γ strictly inside (n − λ/p, λ/q − n).
    pub fn new(lambda: f64, gamma_shift: f64, n: u32, pair: &HolderPair) -> Result<Self> {
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(Error::Domain(format!(
                "kernel power lambda must be positive, got {lambda}"
            )));
        }
        let nf = n as f64;
        if lambda <= 2.0 * nf {
            return Err(Error::Domain(format!(
                "kernel power must satisfy lambda > 2n, got lambda={lambda}, n={n}"
            )));
        }
        if !gamma_shift.is_finite() {
            return Err(Error::Domain("weight shift gamma must be finite".into()));
        }
        let lo = nf - lambda / pair.p();
        let hi = lambda / pair.q() - nf;
        if gamma_shift <= lo + INTERVAL_MARGIN || gamma_shift >= hi - INTERVAL_MARGIN {
            return Err(Error::Domain(format!(
                "gamma = {gamma_shift} outside the open interval ({lo}, {hi}) for p = {}",
                pair.p()
            )));
        }
        Ok(KernelParams { lambda, gamma_shift, n })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn gamma_shift(&self) -> f64 {
        self.gamma_shift
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Same parameters with γ replaced by zero (the unshifted weight).
    pub fn with_zero_shift(&self) -> Self {
        KernelParams { lambda: self.lambda, gamma_shift: 0.0, n: self.n }
    }
}

/// A nonnegative test function on (0, ∞) with closed-form derivatives.
#[derive(Debug, Clone, PartialEq)]
pub enum TestFunction {
    /// scale · x^s · e^(−bx); derivatives of every order in closed form.
    MonomialExponential { s: f64, b: f64, scale: f64 },
    /// x^exponent restricted to [lower, upper]; order 0 only.
    TruncatedPower { exponent: f64, lower: f64, upper: f64 },
}

impl TestFunction {
    pub fn monomial_exponential(s: f64, b: f64, scale: f64) -> Result<Self> {
        if !s.is_finite() || s < 0.0 {
            return Err(Error::Domain(format!("monomial power s must be >= 0, got {s}")));
        }
        if !b.is_finite() || b <= 0.0 {
            return Err(Error::Domain(format!("decay rate b must be positive, got {b}")));
        }
        if !scale.is_finite() || scale < 0.0 {
            return Err(Error::Domain(format!("scale must be >= 0, got {scale}")));
        }
        Ok(TestFunction::MonomialExponential { s, b, scale })
    }

    pub fn truncated_power(exponent: f64, lower: f64, upper: f64) -> Result<Self> {
        if !exponent.is_finite() {
            return Err(Error::Domain("exponent must be finite".into()));
        }
        if !(lower > 0.0) || !(upper > lower) || !upper.is_finite() {
            return Err(Error::Domain(format!(
                "truncation must satisfy 0 < lower < upper, got [{lower}, {upper}]"
            )));
        }
        Ok(TestFunction::TruncatedPower { exponent, lower, upper })
    }

    /// f(x) for x ≥ 0.
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            TestFunction::MonomialExponential { s, b, scale } => {
                if x == 0.0 {
                    if s == 0.0 { scale } else { 0.0 }
                } else {
                    // exp(s ln x − bx) instead of x^s·e^(−bx): the latter can
                    // hit inf·0 for huge x before the decay wins.
                    let log = if s == 0.0 { -b * x } else { s * x.ln() - b * x };
                    scale * log.exp()
                }
            }
            TestFunction::TruncatedPower { exponent, lower, upper } => {
                if x >= lower && x <= upper {
                    x.powf(exponent)
                } else {
                    0.0
                }
            }
        }
    }

    /// f^(order)(x) via the closed form; `order = 0` is `eval`.
    ///
    /// For the monomial-exponential family,
    /// d^k/dx^k [x^s e^(−bx)] = e^(−bx) Σ_j C(k,j) s(s−1)…(s−j+1) x^(s−j) (−b)^(k−j).
    /// At x = 0 a term with s − j < 0 and nonzero falling factorial means the
    /// derivative is singular there, which is a domain error.
    pub fn eval_derivative(&self, order: u32, x: f64) -> Result<f64> {
        if x < 0.0 || !x.is_finite() {
            return Err(Error::Domain(format!("evaluation point must be >= 0, got {x}")));
        }
        match *self {
            TestFunction::MonomialExponential { s, b, scale } => {
                if order == 0 {
                    return Ok(self.eval(x));
                }
                let mut sum = 0.0;
                let mut binom = 1.0;
                let mut falling = 1.0;
                for j in 0..=order {
                    if j > 0 {
                        binom = binom * (order - j + 1) as f64 / j as f64;
                        falling *= s - (j - 1) as f64;
                    }
                    if falling == 0.0 {
                        continue;
                    }
                    let power = s - j as f64;
                    let sign_b = (-b).powi((order - j) as i32);
                    // x^(s−j) e^(−bx) folded into one exp to dodge inf·0.
                    let weighted = if x == 0.0 {
                        if power > 0.0 {
                            0.0
                        } else if power == 0.0 {
                            1.0
                        } else {
                            return Err(Error::Domain(format!(
                                "derivative of order {order} is singular at 0 for s = {s}"
                            )));
                        }
                    } else if power == 0.0 {
                        (-b * x).exp()
                    } else {
                        (power * x.ln() - b * x).exp()
                    };
                    sum += binom * falling * weighted * sign_b;
                }
                Ok(scale * sum)
            }
            TestFunction::TruncatedPower { .. } => {
                if order == 0 {
                    Ok(self.eval(x))
                } else {
                    Err(Error::Domain(
                        "truncated power family supports n=0 only".into(),
                    ))
                }
            }
        }
    }

    /// A value with the same sign as f^(order)(x), safe from exponential
    /// underflow: for the monomial-exponential family the positive factor
    /// e^(−bx) is stripped and only the polynomial part is evaluated.
    pub fn derivative_sign_witness(&self, order: u32, x: f64) -> Result<f64> {
        match *self {
            TestFunction::MonomialExponential { s, b, scale } => {
                if x <= 0.0 {
                    return self.eval_derivative(order, x);
                }
                let mut sum = 0.0;
                let mut binom = 1.0;
                let mut falling = 1.0;
                for j in 0..=order {
                    if j > 0 {
                        binom = binom * (order - j + 1) as f64 / j as f64;
                        falling *= s - (j - 1) as f64;
                    }
                    if falling == 0.0 {
                        continue;
                    }
                    let power = s - j as f64;
                    let sign_b = (-b).powi((order - j) as i32);
                    sum += binom * falling * x.powf(power) * sign_b;
                }
                Ok(scale * sum)
            }
            TestFunction::TruncatedPower { .. } => self.eval_derivative(order, x),
        }
    }

    /// Closure of the set where f may be nonzero.
    pub fn support(&self) -> (f64, f64) {
        match *self {
            TestFunction::MonomialExponential { .. } => (0.0, f64::INFINITY),
            TestFunction::TruncatedPower { lower, upper, .. } => (lower, upper),
        }
    }

    /// Growth exponent of f near 0: f(x) ~ c·x^σ. Infinite when the support
    /// is bounded away from zero.
    pub fn vanishing_order(&self) -> f64 {
        match *self {
            TestFunction::MonomialExponential { s, .. } => s,
            TestFunction::TruncatedPower { .. } => f64::INFINITY,
        }
    }

    /// Growth exponent of f^(n) near 0 (σ − n for the monomial family).
    pub fn derivative_vanishing_order(&self, order: u32) -> f64 {
        match *self {
            TestFunction::MonomialExponential { s, .. } => s - order as f64,
            TestFunction::TruncatedPower { .. } => f64::INFINITY,
        }
    }

    /// True when the function is identically zero.
    pub fn is_zero(&self) -> bool {
        match *self {
            TestFunction::MonomialExponential { scale, .. } => scale == 0.0,
            TestFunction::TruncatedPower { .. } => false,
        }
    }

    /// Compact one-line descriptor for reports.
    pub fn describe(&self) -> String {
        match *self {
            TestFunction::MonomialExponential { s, b, scale } => {
                format!("monexp(s={s}, b={b}, scale={scale})")
            }
            TestFunction::TruncatedPower { exponent, lower, upper } => {
                format!("truncpow(e={exponent}, [{lower}, {upper}])")
            }
        }
    }
}

/// A single failed admissibility condition.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// The family has no closed-form derivative of the requested order.
    UnsupportedOrder { reason: String },
    /// f^(order)(0) must vanish for order < n but does not.
    NonvanishingDerivative { order: u32, value: f64 },
    /// f^(order) must be positive but is ≤ 0 at a grid point.
    NonpositiveDerivative { order: u32, x: f64, value: f64 },
    /// The weighted norm integrand has endpoint exponent ≤ −1 at zero.
    DivergentWeightedNorm { exponent: f64 },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::UnsupportedOrder { reason } => write!(f, "{reason}"),
            Violation::NonvanishingDerivative { order, value } => {
                write!(f, "f^({order})(0) = {value} != 0")
            }
            Violation::NonpositiveDerivative { order, x, value } => {
                write!(f, "f^({order})({x}) = {value} <= 0")
            }
            Violation::DivergentWeightedNorm { exponent } => {
                write!(f, "weighted norm integrand exponent {exponent} <= -1 at 0")
            }
        }
    }
}

/// Verdict of the hypothesis check; empty violation list means admissible.
#[derive(Debug, Clone, PartialEq)]
pub struct Admissibility {
    pub violations: Vec<Violation>,
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The fixed positivity sample grid: 256 log-spaced points over [1e-6, 1e3].
pub fn positivity_grid() -> impl Iterator<Item = f64> {
    (0..POSITIVITY_GRID).map(|i| {
        let t = i as f64 / (POSITIVITY_GRID - 1) as f64;
        GRID_LO * (GRID_HI / GRID_LO).powf(t)
    })
}

/// Checks f against the weighted-inequality hypotheses for (pair, params):
/// vanishing derivatives at 0 up to order n−1, positive derivatives of all
/// orders 0..=n on the sample grid, and finiteness of
/// ∫ x^(p(n+1)−pγ−λ−1) (f^(n))^p dx by endpoint exponent analysis.
pub fn check_admissible(
    f: &TestFunction,
    pair: &HolderPair,
    params: &KernelParams,
) -> Admissibility {
    let mut violations = Vec::new();
    let n = params.n();

    if matches!(f, TestFunction::TruncatedPower { .. }) && n > 0 {
        violations.push(Violation::UnsupportedOrder {
            reason: "family supports n=0 only".into(),
        });
        return Admissibility { violations };
    }

    // (i) f(0) = f'(0) = ... = f^(n-1)(0) = 0.
    for order in 0..n {
        match f.eval_derivative(order, 0.0) {
            Ok(value) => {
                if value != 0.0 {
                    violations.push(Violation::NonvanishingDerivative { order, value });
                }
            }
            Err(_) => violations.push(Violation::NonvanishingDerivative {
                order,
                value: f64::INFINITY,
            }),
        }
    }

    // (ii) positivity of every order 0..=n on the sample grid; each order
    // reported separately with the first offending point.
    for order in 0..=n {
        let mut first_bad: Option<(f64, f64)> = None;
        for x in positivity_grid() {
            match f.derivative_sign_witness(order, x) {
                Ok(value) if value > 0.0 => {}
                Ok(value) => {
                    first_bad = Some((x, value));
                    break;
                }
                Err(_) => {
                    first_bad = Some((x, f64::NAN));
                    break;
                }
            }
        }
        if let Some((x, value)) = first_bad {
            violations.push(Violation::NonpositiveDerivative { order, x, value });
        }
    }

    // (iii) endpoint exponent at 0: the integrand behaves like
    // x^(p(n+1)−pγ−λ−1 + p(σ−n)) with σ the growth order of f; the factor at
    // infinity decays exponentially or has compact support for all families.
    let sigma_n = f.derivative_vanishing_order(n);
    if sigma_n.is_finite() {
        let p = pair.p();
        let weight = p * (n as f64 + 1.0) - p * params.gamma_shift() - params.lambda() - 1.0;
        let exponent = weight + p * sigma_n;
        if exponent <= -1.0 + INTERVAL_MARGIN {
            violations.push(Violation::DivergentWeightedNorm { exponent });
        }
    }

    Admissibility { violations }
}

/// A nonnegative sequence with certified ℓ^p partial norms.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceFamily {
    kind: SequenceKind,
    start_index: u64,
}

#[derive(Debug, Clone, PartialEq)]
enum SequenceKind {
    /// scale · m^(−α) for m ≥ 1.
    PowerDecay { alpha: f64, scale: f64 },
    /// scale · r^m from the start index.
    Geometric { ratio: f64, scale: f64 },
    /// Listed values from the start index, zero-extended.
    Explicit { values: Vec<f64> },
    /// m^exponent for max(1, start) ≤ m ≤ cutoff, zero elsewhere.
    TruncatedPower { exponent: f64, cutoff: u64 },
}

impl SequenceFamily {
    /// Power-law decay scale·m^(−α); only defined from index 1.
    pub fn power_decay(alpha: f64, scale: f64, start_index: u64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::Domain(format!("decay exponent must be positive, got {alpha}")));
        }
        if !scale.is_finite() || scale < 0.0 {
            return Err(Error::Domain(format!("scale must be >= 0, got {scale}")));
        }
        if start_index != 1 {
            return Err(Error::Domain(
                "power-decay sequences are defined from start index 1".into(),
            ));
        }
        Ok(SequenceFamily { kind: SequenceKind::PowerDecay { alpha, scale }, start_index })
    }

    pub fn geometric(ratio: f64, scale: f64, start_index: u64) -> Result<Self> {
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(Error::Domain(format!("ratio must lie in (0,1), got {ratio}")));
        }
        if !scale.is_finite() || scale < 0.0 {
            return Err(Error::Domain(format!("scale must be >= 0, got {scale}")));
        }
        Self::check_start(start_index)?;
        Ok(SequenceFamily { kind: SequenceKind::Geometric { ratio, scale }, start_index })
    }

    pub fn explicit(values: Vec<f64>, start_index: u64) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::Domain("explicit terms must be finite and >= 0".into()));
        }
        Self::check_start(start_index)?;
        Ok(SequenceFamily { kind: SequenceKind::Explicit { values }, start_index })
    }

    pub fn truncated_power(exponent: f64, cutoff: u64, start_index: u64) -> Result<Self> {
        if !exponent.is_finite() {
            return Err(Error::Domain("exponent must be finite".into()));
        }
        if cutoff < 1 {
            return Err(Error::Domain("cutoff index must be >= 1".into()));
        }
        Self::check_start(start_index)?;
        Ok(SequenceFamily { kind: SequenceKind::TruncatedPower { exponent, cutoff }, start_index })
    }

    fn check_start(start_index: u64) -> Result<()> {
        if start_index > 1 {
            return Err(Error::Domain(format!(
                "start index must be 0 or 1, got {start_index}"
            )));
        }
        Ok(())
    }

    pub fn start_index(&self) -> u64 {
        self.start_index
    }

    /// Term at absolute index m (m ≥ start_index; earlier indices are 0).
    pub fn term(&self, m: u64) -> f64 {
        if m < self.start_index {
            return 0.0;
        }
        match &self.kind {
            SequenceKind::PowerDecay { alpha, scale } => scale * (m as f64).powf(-alpha),
            SequenceKind::Geometric { ratio, scale } => scale * ratio.powi(m as i32),
            SequenceKind::Explicit { values } => {
                let offset = (m - self.start_index) as usize;
                values.get(offset).copied().unwrap_or(0.0)
            }
            SequenceKind::TruncatedPower { exponent, cutoff } => {
                if m >= 1 && m <= *cutoff {
                    (m as f64).powf(*exponent)
                } else {
                    0.0
                }
            }
        }
    }

    /// Index beyond which every term is zero, when the support is finite.
    pub fn support_end(&self) -> Option<u64> {
        match &self.kind {
            SequenceKind::Explicit { values } => {
                let last_nonzero = values.iter().rposition(|v| *v != 0.0);
                Some(match last_nonzero {
                    Some(i) => self.start_index + i as u64,
                    None => 0,
                })
            }
            SequenceKind::TruncatedPower { cutoff, .. } => Some(*cutoff),
            _ => None,
        }
    }

    /// True when every term is zero.
    pub fn is_zero(&self) -> bool {
        match &self.kind {
            SequenceKind::PowerDecay { scale, .. } | SequenceKind::Geometric { scale, .. } => {
                *scale == 0.0
            }
            SequenceKind::Explicit { values } => values.iter().all(|v| *v == 0.0),
            SequenceKind::TruncatedPower { .. } => false,
        }
    }

    /// Infimum of the exponents p for which Σ a_m^p is finite.
    pub fn min_lp_exponent(&self) -> f64 {
        match &self.kind {
            SequenceKind::PowerDecay { alpha, .. } => 1.0 / alpha,
            _ => 0.0,
        }
    }

    /// Upper bound on the ℓ¹ tail Σ_{m ≥ from} a_m; infinite if divergent.
    pub fn l1_tail_bound(&self, from: u64) -> f64 {
        let from = from.max(self.start_index);
        match &self.kind {
            SequenceKind::PowerDecay { alpha, scale } => {
                if *alpha <= 1.0 {
                    return f64::INFINITY;
                }
                if *scale == 0.0 {
                    return 0.0;
                }
                let m = from.max(1) as f64;
                scale * (m.powf(-alpha) + m.powf(1.0 - alpha) / (alpha - 1.0))
            }
            SequenceKind::Geometric { ratio, scale } => {
                scale * ratio.powi(from as i32) / (1.0 - ratio)
            }
            SequenceKind::Explicit { values } => {
                let skip = (from - self.start_index) as usize;
                values.iter().skip(skip).sum()
            }
            SequenceKind::TruncatedPower { exponent, cutoff } => {
                let lo = from.max(1);
                let mut sum = KahanSum::default();
                for m in lo..=*cutoff {
                    sum.add((m as f64).powf(*exponent));
                }
                sum.value()
            }
        }
    }

    /// (ratio, scale) when the family is geometric; enables closed-form
    /// diagonal convolutions in the series module.
    pub(crate) fn as_geometric(&self) -> Option<(f64, f64)> {
        match &self.kind {
            SequenceKind::Geometric { ratio, scale } => Some((*ratio, *scale)),
            _ => None,
        }
    }

    /// Upper bound on the ℓ^p tail Σ_{m ≥ from} a_m^p; infinite if divergent.
    pub fn lp_tail_bound(&self, p: f64, from: u64) -> f64 {
        let from = from.max(self.start_index);
        match &self.kind {
            SequenceKind::PowerDecay { alpha, scale } => {
                let beta = alpha * p;
                if beta <= 1.0 {
                    return f64::INFINITY;
                }
                if *scale == 0.0 {
                    return 0.0;
                }
                let m = from.max(1) as f64;
                scale.powf(p) * (m.powf(-beta) + m.powf(1.0 - beta) / (beta - 1.0))
            }
            SequenceKind::Geometric { ratio, scale } => {
                let rho = ratio.powf(p);
                scale.powf(p) * rho.powi(from as i32) / (1.0 - rho)
            }
            SequenceKind::Explicit { values } => {
                let skip = (from - self.start_index) as usize;
                values
                    .iter()
                    .skip(skip)
                    .filter(|v| **v > 0.0)
                    .map(|v| v.powf(p))
                    .sum()
            }
            SequenceKind::TruncatedPower { exponent, cutoff } => {
                let lo = from.max(1);
                let mut sum = KahanSum::default();
                for m in lo..=*cutoff {
                    sum.add((m as f64).powf(exponent * p));
                }
                sum.value()
            }
        }
    }

    /// Σ a_m^p (the p-th power sum) with a certified error bound ≤ tol.
    ///
    /// Geometric, explicit, and truncated families evaluate in closed or
    /// finite form; power-decay tails use a midpoint integral comparison.
    pub fn lp_norm_power(&self, p: f64, tol: f64, budget: &Budget) -> Result<(f64, f64)> {
        if !(p >= 1.0) || !p.is_finite() {
            return Err(Error::Domain(format!("norm exponent must be >= 1, got {p}")));
        }
        if !(tol > 0.0) {
            return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
        }
        match &self.kind {
            SequenceKind::Geometric { ratio, scale } => {
                let rho = ratio.powf(p);
                let value = scale.powf(p) * rho.powi(self.start_index as i32) / (1.0 - rho);
                Ok((value, value * 1e-14))
            }
            SequenceKind::Explicit { values } => {
                let mut sum = KahanSum::default();
                for v in values {
                    if *v > 0.0 {
                        sum.add(v.powf(p));
                    }
                }
                let value = sum.value();
                Ok((value, value * 1e-14))
            }
            SequenceKind::TruncatedPower { exponent, cutoff } => {
                if *cutoff > budget.max_series_terms {
                    return Err(Error::ToleranceUnreachable(format!(
                        "cutoff {cutoff} exceeds the series term cap"
                    )));
                }
                let mut sum = KahanSum::default();
                for m in self.start_index.max(1)..=*cutoff {
                    sum.add((m as f64).powf(exponent * p));
                }
                let value = sum.value();
                Ok((value, value * 1e-13))
            }
            SequenceKind::PowerDecay { alpha, scale } => {
                if *scale == 0.0 {
                    return Ok((0.0, 0.0));
                }
                let beta = alpha * p;
                if beta <= 1.0 + INTERVAL_MARGIN {
                    return Err(Error::Domain(format!(
                        "lp norm diverges: alpha*p = {beta} <= 1"
                    )));
                }
                let amplitude = scale.powf(p);
                // Midpoint comparison: Σ_{m>M} m^(−β) = (M+½)^(1−β)/(β−1) with
                // error at most [β(β+1)(M+½)^(−β−2) + β(M+½)^(−β−1)]/24.
                let mut cutoff = 64u64;
                loop {
                    let mid = cutoff as f64 + 0.5;
                    let err = amplitude
                        * (beta * (beta + 1.0) * mid.powf(-beta - 2.0)
                            + beta * mid.powf(-beta - 1.0))
                        / 24.0;
                    if err <= tol / 2.0 {
                        break;
                    }
                    if cutoff >= budget.max_series_terms {
                        return Err(Error::ToleranceUnreachable(format!(
                            "power-decay norm needs more than {cutoff} terms for tol {tol}"
                        )));
                    }
                    cutoff = (cutoff * 2).min(budget.max_series_terms);
                }
                let mut sum = KahanSum::default();
                for m in 1..=cutoff {
                    sum.add((m as f64).powf(-beta));
                }
                let mid = cutoff as f64 + 0.5;
                let tail = mid.powf(1.0 - beta) / (beta - 1.0);
                let tail_err = (beta * (beta + 1.0) * mid.powf(-beta - 2.0)
                    + beta * mid.powf(-beta - 1.0))
                    / 24.0;
                let value = amplitude * (sum.value() + tail);
                let error = amplitude * tail_err + value * 1e-14;
                Ok((value, error))
            }
        }
    }

    /// Compact one-line descriptor for reports.
    pub fn describe(&self) -> String {
        let start = self.start_index;
        match &self.kind {
            SequenceKind::PowerDecay { alpha, scale } => {
                format!("powdecay(alpha={alpha}, scale={scale}, start={start})")
            }
            SequenceKind::Geometric { ratio, scale } => {
                format!("geometric(r={ratio}, scale={scale}, start={start})")
            }
            SequenceKind::Explicit { values } => {
                let shown: Vec<String> = values.iter().take(8).map(|v| format!("{v}")).collect();
                let ellipsis = if values.len() > 8 { ", ..." } else { "" };
                format!("explicit([{}{}], start={start})", shown.join(", "), ellipsis)
            }
            SequenceKind::TruncatedPower { exponent, cutoff } => {
                format!("truncpow(e={exponent}, cutoff={cutoff}, start={start})")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn default_budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn derivative_examples() {
        // (x e^{-x})' at 0 is 1.
        let f = TestFunction::monomial_exponential(1.0, 1.0, 1.0).unwrap();
        assert!((f.eval_derivative(1, 0.0).unwrap() - 1.0).abs() < 1e-15);

        // e^{-x} at 0 is 1.
        let f = TestFunction::monomial_exponential(0.0, 1.0, 1.0).unwrap();
        assert!((f.eval_derivative(0, 0.0).unwrap() - 1.0).abs() < 1e-15);

        // (x^2 e^{-x})'' at 1 is -e^{-1}.
        let f = TestFunction::monomial_exponential(2.0, 1.0, 1.0).unwrap();
        let value = f.eval_derivative(2, 1.0).unwrap();
        assert!((value + std::f64::consts::E.recip()).abs() < 1e-14);
        assert!((value + 0.36787944117144233).abs() < 1e-14);
    }

    /// Five-point central difference with one Richardson step, applied to
    /// an independent closed-form evaluation of the function.
    fn finite_difference(f: &dyn Fn(f64) -> f64, order: u32, x: f64, h: f64) -> f64 {
        fn stencil(f: &dyn Fn(f64) -> f64, order: u32, x: f64, h: f64) -> f64 {
            if order == 0 {
                return f(x);
            }
            let d = |y: f64| stencil(f, order - 1, y, h);
            (-d(x + 2.0 * h) + 8.0 * d(x + h) - 8.0 * d(x - h) + d(x - 2.0 * h)) / (12.0 * h)
        }
        let coarse = stencil(f, order, x, h);
        let fine = stencil(f, order, x, h / 2.0);
        fine + (fine - coarse) / 15.0
    }

    #[test]
    fn derivatives_match_finite_differences() {
        // Steps widen with the order and scale with the decay rate:
        // repeated stencils divide by (12h)^k, so a fixed h = 1e-4 at
        // order 3+ would sit below the f64 noise floor.
        let steps = [1e-4, 1e-4, 1e-3, 3e-2, 3e-2];
        let families = [
            (0.0, 1.0, 1.0),
            (1.0, 1.0, 1.0),
            (2.0, 0.5, 3.0),
            (3.0, 2.0, 0.7),
            (4.0, 1.0, 1.0),
        ];
        for &(s, b, scale) in &families {
            let f = TestFunction::monomial_exponential(s, b, scale).unwrap();
            // Integer powers extend smoothly across 0, which the wide
            // high-order stencils need near x = 0.1.
            let analytic = move |x: f64| scale * x.powi(s as i32) * (-b * x).exp();
            for order in 0..=4u32 {
                let h = steps[order as usize] / b;
                for i in 0..10 {
                    let x = 0.1 + (10.0 - 0.1) * i as f64 / 9.0;
                    let exact = f.eval_derivative(order, x).unwrap();
                    let approx = finite_difference(&analytic, order, x, h);
                    assert!(
                        (exact - approx).abs() < 1e-6,
                        "{} order {order} at x={x}: {exact} vs {approx}",
                        f.describe()
                    );
                }
            }
        }
        // Non-integer powers have singular high derivatives near zero; the
        // oracle check stays at orders whose stencils resolve them.
        let fractional = TestFunction::monomial_exponential(2.5, 2.0, 0.7).unwrap();
        let analytic = |x: f64| 0.7 * x.powf(2.5) * (-2.0 * x).exp();
        for order in 0..=2u32 {
            let h = steps[order as usize] / 2.0;
            for i in 0..10 {
                let x = 0.5 + (10.0 - 0.5) * i as f64 / 9.0;
                let exact = fractional.eval_derivative(order, x).unwrap();
                let approx = finite_difference(&analytic, order, x, h);
                assert!((exact - approx).abs() < 1e-6, "order {order} at x={x}");
            }
        }
    }

    #[test]
    fn vanishing_boundary_below_s() {
        for &s in &[1.0, 2.0, 3.0, 2.5] {
            let f = TestFunction::monomial_exponential(s, 1.0, 1.0).unwrap();
            let n = s.floor() as u32;
            for k in 0..n {
                assert_eq!(f.eval_derivative(k, 0.0).unwrap(), 0.0, "s={s}, k={k}");
            }
        }
    }

    #[test]
    fn truncated_power_rejects_derivatives() {
        let f = TestFunction::truncated_power(-0.5, 1.0, 100.0).unwrap();
        assert!(f.eval_derivative(1, 2.0).is_err());
        assert_eq!(f.eval(0.5), 0.0);
        assert_eq!(f.eval(200.0), 0.0);
        assert!((f.eval(4.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn admissibility_spec_cases() {
        let pair = HolderPair::new(2.0).unwrap();

        // x e^{-x} at n=1: the exponent analysis passes (exponent 0 > -1)
        // but the sampled positivity check sees f' < 0 past x = 1.
        let f = TestFunction::monomial_exponential(1.0, 1.0, 1.0).unwrap();
        let params = KernelParams::new(3.0, 0.0, 1, &pair).unwrap();
        let verdict = check_admissible(&f, &pair, &params);
        assert_eq!(verdict.violations.len(), 1);
        assert!(matches!(
            verdict.violations[0],
            Violation::NonpositiveDerivative { order: 1, .. }
        ));

        // Same shape with a slow decay rate keeps f' positive on the grid.
        let f = TestFunction::monomial_exponential(1.0, 1e-4, 1.0).unwrap();
        let verdict = check_admissible(&f, &pair, &params);
        assert!(verdict.is_admissible(), "violations: {:?}", verdict.violations);

        // e^{-x} at n=1 fails the vanishing condition f(0) = 0.
        let f = TestFunction::monomial_exponential(0.0, 1.0, 1.0).unwrap();
        let verdict = check_admissible(&f, &pair, &params);
        assert!(verdict
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NonvanishingDerivative { order: 0, .. })));

        // Truncated power at n=1 is rejected outright.
        let f = TestFunction::truncated_power(-0.5, 1.0, 100.0).unwrap();
        let verdict = check_admissible(&f, &pair, &params);
        assert_eq!(
            verdict.violations,
            vec![Violation::UnsupportedOrder { reason: "family supports n=0 only".into() }]
        );
    }

    #[test]
    fn admissibility_divergent_weighted_norm() {
        let pair = HolderPair::new(2.0).unwrap();
        // n=0, λ=1.5, γ=0.2: exponent at 0 is p(1-γ) - λ - 1 + p·s;
        // with s=0 that is 2·0.8 - 2.5 = -0.9 ≤ -1 + margin? No: -0.9 > -1.
        // Push λ up: λ=1.7 gives exponent -1.1.
        let f = TestFunction::monomial_exponential(0.0, 1.0, 1.0).unwrap();
        let params = KernelParams::new(1.7, 0.2, 0, &pair).unwrap();
        let verdict = check_admissible(&f, &pair, &params);
        assert!(verdict
            .violations
            .iter()
            .any(|v| matches!(v, Violation::DivergentWeightedNorm { .. })));
    }

    #[test]
    fn kernel_params_interval_checks() {
        let pair = HolderPair::new(2.0).unwrap();
        assert!(KernelParams::new(3.0, 0.0, 1, &pair).is_ok());
        // λ must exceed 2n.
        assert!(KernelParams::new(2.0, 0.0, 1, &pair).is_err());
        // γ must stay inside (n - λ/p, λ/q - n) = (-0.5, 0.5).
        assert!(KernelParams::new(3.0, 0.5, 1, &pair).is_err());
        assert!(KernelParams::new(3.0, -0.5, 1, &pair).is_err());
        assert!(KernelParams::new(3.0, 0.49, 1, &pair).is_ok());
    }

    #[test]
    fn lp_norm_geometric_closed_form() {
        // Σ (1/2)^{2m} from m=1 is 1/3.
        let seq = SequenceFamily::geometric(0.5, 1.0, 1).unwrap();
        let (value, err) = seq.lp_norm_power(2.0, 1e-12, &default_budget()).unwrap();
        assert!((value - 1.0 / 3.0).abs() <= err.max(1e-14));
    }

    #[test]
    fn lp_norm_explicit_single_term() {
        let seq = SequenceFamily::explicit(vec![1.0, 0.0, 0.0], 1).unwrap();
        let (value, _) = seq.lp_norm_power(3.0, 1e-12, &default_budget()).unwrap();
        assert!((value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn lp_norm_power_decay_hits_basel() {
        let seq = SequenceFamily::power_decay(1.0, 1.0, 1).unwrap();
        let (value, err) = seq.lp_norm_power(2.0, 1e-10, &default_budget()).unwrap();
        let basel = std::f64::consts::PI * std::f64::consts::PI / 6.0;
        assert!(err <= 1e-10, "error bound {err}");
        assert!((value - basel).abs() <= err, "value {value} vs {basel}, err {err}");
    }

    #[test]
    fn lp_norm_monotone_in_p_for_small_terms() {
        let seq = SequenceFamily::geometric(0.5, 1.0, 1).unwrap();
        let mut previous = f64::INFINITY;
        for &p in &[2.0, 3.0, 4.0] {
            let (value, _) = seq.lp_norm_power(p, 1e-12, &default_budget()).unwrap();
            assert!(value <= previous, "norm power not nonincreasing at p={p}");
            previous = value;
        }
    }

    #[test]
    fn power_decay_requires_start_one() {
        assert!(SequenceFamily::power_decay(2.0, 1.0, 0).is_err());
    }

    #[test]
    fn lp_norm_power_decay_divergent_is_domain_error() {
        let seq = SequenceFamily::power_decay(0.4, 1.0, 1).unwrap();
        assert!(matches!(
            seq.lp_norm_power(2.0, 1e-8, &default_budget()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn sequence_terms_and_support() {
        let seq = SequenceFamily::truncated_power(-0.5, 4, 1).unwrap();
        assert_eq!(seq.term(0), 0.0);
        assert!((seq.term(4) - 0.5).abs() < 1e-15);
        assert_eq!(seq.term(5), 0.0);
        assert_eq!(seq.support_end(), Some(4));

        let seq = SequenceFamily::explicit(vec![0.0, 2.0, 0.0], 0).unwrap();
        assert_eq!(seq.support_end(), Some(1));
        assert_eq!(seq.term(1), 2.0);
    }
}
