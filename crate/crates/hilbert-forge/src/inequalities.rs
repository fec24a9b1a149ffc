//! One verifier per inequality, each producing a [`VerificationReport`].
//!
//! Every report is normalized so the theorem under test asserts lhs ≤ rhs,
//! including the product-superadditivity checker whose natural direction is
//! reversed at the report boundary. Verdicts are decided against the error
//! budgets: HOLDS needs lhs + lhs_error ≤ rhs − rhs_error, VIOLATED needs
//! lhs − lhs_error > rhs + rhs_error (which would indicate an
//! implementation bug, never a counterexample), and anything in between is
//! HOLDS_WITHIN_ERROR. Instances that fail the stated hypotheses yield
//! INADMISSIBLE instead of a trivial verdict.
//!
//! RHS error bounds use first-order propagation through the power/product
//! composition: for R = K·A^(1/p)·B^(1/q), δR ≈ R·(δA/(pA) + δB/(qB)).

use crate::funcspace::{check_admissible, KernelParams, SequenceFamily, TestFunction};
use crate::quadrature::{
    integrate_kernel_double, integrate_semi_infinite_with_breakpoints, QuadResult,
};
use crate::series::{double_sum_kernel, double_sum_kernel_restricted};
use crate::specialfn::{bound_constants, hilbert_constant, HolderPair};
use crate::{Budget, Error, Result};

/// Stable identifiers of the verifiable inequalities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InequalityId {
    HilbertIntegral,
    HilbertDiscrete,
    Lemma21,
    Lemma22,
    Lemma23,
    Lemma24,
    Thm21,
    Thm22,
}

impl InequalityId {
    pub fn as_str(&self) -> &'static str {
        match self {
            InequalityId::HilbertIntegral => "hilbert_integral",
            InequalityId::HilbertDiscrete => "hilbert_discrete",
            InequalityId::Lemma21 => "lemma_2_1",
            InequalityId::Lemma22 => "lemma_2_2",
            InequalityId::Lemma23 => "lemma_2_3",
            InequalityId::Lemma24 => "lemma_2_4",
            InequalityId::Thm21 => "thm_2_1",
            InequalityId::Thm22 => "thm_2_2",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(match text {
            "hilbert_integral" => InequalityId::HilbertIntegral,
            "hilbert_discrete" => InequalityId::HilbertDiscrete,
            "lemma_2_1" => InequalityId::Lemma21,
            "lemma_2_2" => InequalityId::Lemma22,
            "lemma_2_3" => InequalityId::Lemma23,
            "lemma_2_4" => InequalityId::Lemma24,
            "thm_2_1" => InequalityId::Thm21,
            "thm_2_2" => InequalityId::Thm22,
            other => {
                return Err(Error::Domain(format!("unknown inequality identifier '{other}'")));
            }
        })
    }

    pub const ALL: [InequalityId; 8] = [
        InequalityId::HilbertIntegral,
        InequalityId::HilbertDiscrete,
        InequalityId::Lemma21,
        InequalityId::Lemma22,
        InequalityId::Lemma23,
        InequalityId::Lemma24,
        InequalityId::Thm21,
        InequalityId::Thm22,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    HoldsWithinError,
    Violated,
    Inadmissible,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Holds => "HOLDS",
            Verdict::HoldsWithinError => "HOLDS_WITHIN_ERROR",
            Verdict::Violated => "VIOLATED",
            Verdict::Inadmissible => "INADMISSIBLE",
        }
    }
}

/// LHS/RHS comparison with error budgets and a verdict.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub inequality_id: InequalityId,
    pub lhs: f64,
    pub lhs_error: f64,
    pub rhs: f64,
    pub rhs_error: f64,
    pub ratio: f64,
    pub verdict: Verdict,
    pub instance_descriptor: String,
}

impl VerificationReport {
    fn from_sides(
        inequality_id: InequalityId,
        lhs: f64,
        lhs_error: f64,
        rhs: f64,
        rhs_error: f64,
        instance_descriptor: String,
    ) -> Self {
        let verdict = if lhs + lhs_error <= rhs - rhs_error {
            Verdict::Holds
        } else if lhs - lhs_error > rhs + rhs_error {
            Verdict::Violated
        } else {
            Verdict::HoldsWithinError
        };
        let ratio = if rhs > 0.0 { lhs / rhs } else { 0.0 };
        VerificationReport { inequality_id, lhs, lhs_error, rhs, rhs_error, ratio, verdict, instance_descriptor }
    }

    fn inadmissible(inequality_id: InequalityId, descriptor: String, reasons: Vec<String>) -> Self {
        VerificationReport {
            inequality_id,
            lhs: 0.0,
            lhs_error: 0.0,
            rhs: 0.0,
            rhs_error: 0.0,
            ratio: 0.0,
            verdict: Verdict::Inadmissible,
            instance_descriptor: format!("{descriptor} | inadmissible: {}", reasons.join("; ")),
        }
    }
}

/// κ·A^(1/p)·B^(1/q) with first-order error propagation.
fn holder_product(
    constant: f64,
    pair: &HolderPair,
    a: (f64, f64),
    b: (f64, f64),
) -> (f64, f64) {
    let value = constant * a.0.powf(1.0 / pair.p()) * b.0.powf(1.0 / pair.q());
    let relative = a.1 / (pair.p() * a.0) + b.1 / (pair.q() * b.0);
    (value, value * relative)
}

/// Weighted norm integral ∫ x^weight |f^(n)(x)|^p dx.
///
/// f^(n) is positive for admissible instances; the absolute value keeps
/// off-grid sign dips from producing NaN powers.
fn weighted_norm(
    f: &TestFunction,
    order: u32,
    weight: f64,
    p: f64,
    tol: f64,
    budget: &Budget,
) -> Result<QuadResult> {
    let (lo, hi) = f.support();
    let mut breakpoints = Vec::new();
    if lo > 0.0 {
        breakpoints.push(lo);
    }
    if hi.is_finite() {
        breakpoints.push(hi);
    }
    let integrand = |x: f64| {
        if x <= 0.0 {
            return 0.0;
        }
        let derivative = f.eval_derivative(order, x).unwrap_or(f64::NAN);
        if derivative == 0.0 {
            return 0.0;
        }
        x.powf(weight) * derivative.abs().powf(p)
    };
    integrate_semi_infinite_with_breakpoints(integrand, &breakpoints, tol, budget)
}

fn describe_pair(pair: &HolderPair) -> String {
    format!("p={}, q={}", pair.p(), pair.q())
}

/// Hilbert's integral inequality: ∬ f(x)g(y)/(x+y) ≤ κ_p‖f‖_p‖g‖_q.
pub fn verify_hilbert_integral(
    f: &TestFunction,
    g: &TestFunction,
    pair: &HolderPair,
    tol: f64,
    budget: &Budget,
) -> Result<VerificationReport> {
    let id = InequalityId::HilbertIntegral;
    let descriptor = format!("f={}, g={}, {}", f.describe(), g.describe(), describe_pair(pair));

    let mut reasons = Vec::new();
    if f.is_zero() {
        reasons.push("f has zero norm".to_string());
    }
    if g.is_zero() {
        reasons.push("g has zero norm".to_string());
    }
    if !reasons.is_empty() {
        return Ok(VerificationReport::inadmissible(id, descriptor, reasons));
    }

    let lhs = match integrate_kernel_double(f, g, 1.0, tol / 2.0, budget) {
        Ok(result) => result,
        Err(Error::Divergence(reason)) => {
            return Ok(VerificationReport::inadmissible(id, descriptor, vec![reason]));
        }
        Err(other) => return Err(other),
    };
    let norm_f = weighted_norm(f, 0, 0.0, pair.p(), tol / 4.0, budget)?;
    let norm_g = weighted_norm(g, 0, 0.0, pair.q(), tol / 4.0, budget)?;
    if !(norm_f.value > norm_f.error_bound) || !(norm_g.value > norm_g.error_bound) {
        return Ok(VerificationReport::inadmissible(
            id,
            descriptor,
            vec!["a norm is indistinguishable from zero".to_string()],
        ));
    }

    let kappa = hilbert_constant(pair);
    let (rhs, rhs_error) = holder_product(
        kappa,
        pair,
        (norm_f.value, norm_f.error_bound),
        (norm_g.value, norm_g.error_bound),
    );
    Ok(VerificationReport::from_sides(id, lhs.value, lhs.error_bound, rhs, rhs_error, descriptor))
}

/// Hilbert's discrete inequality: ΣΣ a_m b_n/(m+n) ≤ κ_p‖a‖_p‖b‖_q.
pub fn verify_hilbert_discrete(
    a: &SequenceFamily,
    b: &SequenceFamily,
    pair: &HolderPair,
    tol: f64,
    budget: &Budget,
) -> Result<VerificationReport> {
    verify_discrete_kernel(InequalityId::HilbertDiscrete, a, b, pair, 0, tol, budget)
}

/// The offset-kernel inequality on start-0 sequences:
/// ΣΣ c_m d_n/(m+n+1) ≤ κ_p‖c‖_p‖d‖_q.
pub fn verify_lemma_offset_discrete(
    c: &SequenceFamily,
    d: &SequenceFamily,
    pair: &HolderPair,
    tol: f64,
    budget: &Budget,
) -> Result<VerificationReport> {
    verify_discrete_kernel(InequalityId::Lemma22, c, d, pair, 1, tol, budget)
}

fn verify_discrete_kernel(
    id: InequalityId,
    a: &SequenceFamily,
    b: &SequenceFamily,
    pair: &HolderPair,
    offset: u32,
    tol: f64,
    budget: &Budget,
) -> Result<VerificationReport> {
    let descriptor = format!(
        "a={}, b={}, {}, offset={offset}",
        a.describe(),
        b.describe(),
        describe_pair(pair)
    );

    let mut reasons = Vec::new();
    if a.is_zero() {
        reasons.push("first sequence has zero norm".to_string());
    }
    if b.is_zero() {
        reasons.push("second sequence has zero norm".to_string());
    }
    if !reasons.is_empty() {
        return Ok(VerificationReport::inadmissible(id, descriptor, reasons));
    }

    let norm_a = a.lp_norm_power(pair.p(), tol / 4.0, budget)?;
    let norm_b = b.lp_norm_power(pair.q(), tol / 4.0, budget)?;
    let (lhs, lhs_error) = double_sum_kernel(a, b, offset, tol / 2.0, budget)?;

    let kappa = hilbert_constant(pair);
    let (rhs, rhs_error) = holder_product(kappa, pair, norm_a, norm_b);
    Ok(VerificationReport::from_sides(id, lhs, lhs_error, rhs, rhs_error, descriptor))
}

/// Instance of the sum-discrete inequality with multiplicity k.
#[derive(Debug, Clone)]
pub struct SumDiscreteInstance {
    pub a: SequenceFamily,
    pub b: SequenceFamily,
    pub c: SequenceFamily,
    pub d: SequenceFamily,
    pub pair: HolderPair,
    pub k: u32,
}

impl SumDiscreteInstance {
    pub fn new(
        a: SequenceFamily,
        b: SequenceFamily,
        c: SequenceFamily,
        d: SequenceFamily,
        pair: HolderPair,
        k: u32,
    ) -> Result<Self> {
        if a.start_index() != 1 || b.start_index() != 1 {
            return Err(Error::IndexMismatch("a and b must start at index 1".into()));
        }
        if c.start_index() != 0 || d.start_index() != 0 {
            return Err(Error::IndexMismatch("c and d must start at index 0".into()));
        }
        if k < 1 {
            return Err(Error::Domain("multiplicity k must be >= 1".into()));
        }
        Ok(SumDiscreteInstance { a, b, c, d, pair, k })
    }

    fn describe(&self) -> String {
        format!(
            "a={}, b={}, c={}, d={}, {}, k={}",
            self.a.describe(),
            self.b.describe(),
            self.c.describe(),
            self.d.describe(),
            describe_pair(&self.pair),
            self.k
        )
    }
}

/// The sum-discrete inequality with multiplicity k:
/// k·c₀d₀ + ΣΣ(a_m b_n/(m+n) + k·c_m d_n/(m+n+1)) over m,n ≥ 1
///   ≤ κ_p (k c₀^p + Σ(a^p + k c^p))^(1/p) (k d₀^q + Σ(b^q + k d^q))^(1/q).
pub fn verify_sum_discrete(
    inst: &SumDiscreteInstance,
    tol: f64,
    budget: &Budget,
) -> Result<VerificationReport> {
    let id = InequalityId::Thm21;
    let descriptor = inst.describe();
    let pair = &inst.pair;
    let k = inst.k as f64;

    // LHS components.
    let head = k * inst.c.term(0) * inst.d.term(0);
    let (sum_ab, err_ab) = if inst.a.is_zero() || inst.b.is_zero() {
        (0.0, 0.0)
    } else {
        double_sum_kernel(&inst.a, &inst.b, 0, tol / 4.0, budget)?
    };
    let (sum_cd, err_cd) = if inst.c.is_zero() || inst.d.is_zero() {
        (0.0, 0.0)
    } else {
        double_sum_kernel_restricted(&inst.c, &inst.d, 1, 1, tol / 4.0, budget)?
    };
    let lhs = head + sum_ab + k * sum_cd;
    let lhs_error = err_ab + k * err_cd;

    // Combined norms: k c₀^p + Σ_{m≥1}(a_m^p + k c_m^p), and the q-side.
    let (x_norm, x_err) = combined_norm(&inst.a, &inst.c, pair.p(), k, tol / 4.0, budget)?;
    let (y_norm, y_err) = combined_norm(&inst.b, &inst.d, pair.q(), k, tol / 4.0, budget)?;
    if !(x_norm > x_err) || !(y_norm > y_err) {
        return Ok(VerificationReport::inadmissible(
            id,
            descriptor,
            vec!["a combined norm is indistinguishable from zero".to_string()],
        ));
    }

    let kappa = hilbert_constant(pair);
    let (rhs, rhs_error) = holder_product(kappa, pair, (x_norm, x_err), (y_norm, y_err));
    Ok(VerificationReport::from_sides(id, lhs, lhs_error, rhs, rhs_error, descriptor))
}

/// k·h₀^p + Σ_{m≥1} (g_m^p + k·h_m^p) for a start-1 g and start-0 h.
fn combined_norm(
    g: &SequenceFamily,
    h: &SequenceFamily,
    p: f64,
    k: f64,
    tol: f64,
    budget: &Budget,
) -> Result<(f64, f64)> {
    let (g_norm, g_err) = if g.is_zero() {
        (0.0, 0.0)
    } else {
        g.lp_norm_power(p, tol / 2.0, budget)?
    };
    let (h_full, h_err) = if h.is_zero() {
        (0.0, 0.0)
    } else {
        h.lp_norm_power(p, tol / 2.0, budget)?
    };
    let head = h.term(0).powf(p);
    let h_tail = (h_full - head).max(0.0);
    Ok((k * head + g_norm + k * h_tail, g_err + k * h_err))
}

/// Which weighted bound constant a report is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightVariant {
    /// Weights x^(p(n+1)−λ−1), y^(q(n+1)−λ−1) with constant C.
    C,
    /// Weights x^(p(n+1)−pγ−λ−1), y^(q(n+1)+qγ−λ−1) with constant C′.
    ///
    /// The shift enters the two sides with opposite signs: that is the
    /// scale-consistent pairing (both sides transform identically under
    /// x → x/c) and the one whose Gamma arguments are positive exactly on
    /// the admissible interval γ ∈ (n − λ/p, λ/q − n).
    CPrime,
}

fn check_params_for(variant: WeightVariant, params: &KernelParams) -> KernelParams {
    match variant {
        WeightVariant::C => params.with_zero_shift(),
        WeightVariant::CPrime => *params,
    }
}

/// The weighted integral inequality (C or C′ form):
/// ∬ f(x)g(y)/(x+y)^λ ≤ K (∫ x^w_x |f^(n)|^p)^(1/p) (∫ y^w_y |g^(n)|^q)^(1/q).
pub fn verify_weighted_integral(
    f: &TestFunction,
    g: &TestFunction,
    pair: &HolderPair,
    params: &KernelParams,
    variant: WeightVariant,
    tol: f64,
    budget: &Budget,
) -> Result<VerificationReport> {
    let id = match variant {
        WeightVariant::C => InequalityId::Lemma23,
        WeightVariant::CPrime => InequalityId::Lemma24,
    };
    let p = pair.p();
    let q = pair.q();
    let lambda = params.lambda();
    let n = params.n();
    let nf = n as f64;
    let gamma_shift = match variant {
        WeightVariant::C => 0.0,
        WeightVariant::CPrime => params.gamma_shift(),
    };
    // Mixed-sign weight exponents: the x-side carries −pγ, the y-side +qγ.
    let weight_x = p * (nf + 1.0) - p * gamma_shift - lambda - 1.0;
    let weight_y = q * (nf + 1.0) + q * gamma_shift - lambda - 1.0;
    let descriptor = format!(
        "f={}, g={}, {}, lambda={lambda}, gamma={gamma_shift}, n={n}, x-weight={weight_x}, y-weight={weight_y} (mixed-sign form)",
        f.describe(),
        g.describe(),
        describe_pair(pair)
    );

    let mut reasons = Vec::new();
    let swapped = pair.swapped();
    // The g-side sees the mirrored instance (q, p, −γ); its admissibility
    // interval maps onto the f-side one exactly.
    let mirrored = KernelParams::new(lambda, -gamma_shift, n, &swapped);
    match (check_params_for(variant, params), mirrored) {
        (check_params, Ok(mirrored_params)) => {
            for violation in check_admissible(f, pair, &check_params).violations {
                reasons.push(format!("f: {violation}"));
            }
            for violation in check_admissible(g, &swapped, &mirrored_params).violations {
                reasons.push(format!("g: {violation}"));
            }
        }
        (_, Err(e)) => reasons.push(e.to_string()),
    }
    let constant = match bound_constants(pair, lambda, params.gamma_shift(), n) {
        Ok(constants) => match variant {
            WeightVariant::C => constants.c,
            WeightVariant::CPrime => constants.c_prime,
        },
        Err(Error::Domain(message)) => {
            reasons.push(message);
            f64::NAN
        }
        Err(other) => return Err(other),
    };
    if !reasons.is_empty() {
        return Ok(VerificationReport::inadmissible(id, descriptor, reasons));
    }

    let lhs = match integrate_kernel_double(f, g, lambda, tol / 2.0, budget) {
        Ok(result) => result,
        Err(Error::Divergence(reason)) => {
            return Ok(VerificationReport::inadmissible(id, descriptor, vec![reason]));
        }
        Err(other) => return Err(other),
    };
    let norm_f = weighted_norm(f, n, weight_x, p, tol / 4.0, budget)?;
    let norm_g = weighted_norm(g, n, weight_y, q, tol / 4.0, budget)?;
    if !(norm_f.value > norm_f.error_bound) || !(norm_g.value > norm_g.error_bound) {
        return Ok(VerificationReport::inadmissible(
            id,
            descriptor,
            vec!["a weighted norm is indistinguishable from zero".to_string()],
        ));
    }

    let (rhs, rhs_error) = holder_product(
        constant,
        pair,
        (norm_f.value, norm_f.error_bound),
        (norm_g.value, norm_g.error_bound),
    );
    Ok(VerificationReport::from_sides(id, lhs.value, lhs.error_bound, rhs, rhs_error, descriptor))
}

/// Instance of the sum-integral inequality with multiplicity m.
#[derive(Debug, Clone)]
pub struct SumIntegralInstance {
    pub f: TestFunction,
    pub g: TestFunction,
    pub pair: HolderPair,
    pub params: KernelParams,
    pub m: u32,
}

impl SumIntegralInstance {
    pub fn new(
        f: TestFunction,
        g: TestFunction,
        pair: HolderPair,
        params: KernelParams,
        m: u32,
    ) -> Result<Self> {
        if m < 1 {
            return Err(Error::Domain("multiplicity m must be >= 1".into()));
        }
        Ok(SumIntegralInstance { f, g, pair, params, m })
    }

    fn describe(&self) -> String {
        format!(
            "f={}, g={}, {}, lambda={}, gamma={}, n={}, m={}",
            self.f.describe(),
            self.g.describe(),
            describe_pair(&self.pair),
            self.params.lambda(),
            self.params.gamma_shift(),
            self.params.n(),
            self.m
        )
    }
}

/// The sum-integral inequality with multiplicity m:
/// ∬ f g/(x+y)^λ ≤ (1/(m+1)) (∫ x^(p(n+1)−λ−pγ−1) (C x^(pγ) + m C′) |f^(n)|^p)^(1/p)
///                           (∫ y^(q(n+1)−λ−qγ−1) (C y^(qγ) + m C′) |g^(n)|^q)^(1/q).
pub fn verify_sum_integral(
    inst: &SumIntegralInstance,
    tol: f64,
    budget: &Budget,
) -> Result<VerificationReport> {
    let id = InequalityId::Thm22;
    let descriptor = inst.describe();
    let pair = &inst.pair;
    let p = pair.p();
    let q = pair.q();
    let params = &inst.params;
    let lambda = params.lambda();
    let gamma_shift = params.gamma_shift();
    let n = params.n();
    let nf = n as f64;
    let multiplicity = inst.m as f64;

    let mut reasons = Vec::new();
    let swapped = pair.swapped();
    match KernelParams::new(lambda, -gamma_shift, n, &swapped) {
        Ok(mirrored_params) => {
            for violation in check_admissible(&inst.f, pair, params).violations {
                reasons.push(format!("f: {violation}"));
            }
            for violation in check_admissible(&inst.g, &swapped, &mirrored_params).violations {
                reasons.push(format!("g: {violation}"));
            }
        }
        Err(e) => reasons.push(e.to_string()),
    }
    let constants = match bound_constants(pair, lambda, gamma_shift, n) {
        Ok(constants) => Some(constants),
        Err(Error::Domain(message)) => {
            reasons.push(message);
            None
        }
        Err(other) => return Err(other),
    };
    if !reasons.is_empty() {
        return Ok(VerificationReport::inadmissible(id, descriptor, reasons));
    }
    let constants = constants.expect("constants present when no violation was recorded");

    let lhs = match integrate_kernel_double(&inst.f, &inst.g, lambda, tol / 2.0, budget) {
        Ok(result) => result,
        Err(Error::Divergence(reason)) => {
            return Ok(VerificationReport::inadmissible(id, descriptor, vec![reason]));
        }
        Err(other) => return Err(other),
    };

    // x-side weight carries −pγ, y-side +qγ; the C-portion of each combined
    // integrand restores the unshifted weight through the opposite shift.
    let weight_x = p * (nf + 1.0) - lambda - p * gamma_shift - 1.0;
    let weight_y = q * (nf + 1.0) - lambda + q * gamma_shift - 1.0;
    let norm_x = combined_weighted_norm(
        &inst.f, n, weight_x, p, p * gamma_shift, constants.c, multiplicity * constants.c_prime,
        tol / 4.0, budget,
    )?;
    let norm_y = combined_weighted_norm(
        &inst.g, n, weight_y, q, -q * gamma_shift, constants.c, multiplicity * constants.c_prime,
        tol / 4.0, budget,
    )?;
    if !(norm_x.value > norm_x.error_bound) || !(norm_y.value > norm_y.error_bound) {
        return Ok(VerificationReport::inadmissible(
            id,
            descriptor,
            vec!["a combined weighted norm is indistinguishable from zero".to_string()],
        ));
    }

    let (rhs, rhs_error) = holder_product(
        1.0 / (multiplicity + 1.0),
        pair,
        (norm_x.value, norm_x.error_bound),
        (norm_y.value, norm_y.error_bound),
    );
    Ok(VerificationReport::from_sides(id, lhs.value, lhs.error_bound, rhs, rhs_error, descriptor))
}

/// ∫ x^weight (C·x^shift + mC′) |f^(n)(x)|^p dx.
#[allow(clippy::too_many_arguments)]
fn combined_weighted_norm(
    f: &TestFunction,
    order: u32,
    weight: f64,
    p: f64,
    shift: f64,
    c: f64,
    m_c_prime: f64,
    tol: f64,
    budget: &Budget,
) -> Result<QuadResult> {
    let (lo, hi) = f.support();
    let mut breakpoints = Vec::new();
    if lo > 0.0 {
        breakpoints.push(lo);
    }
    if hi.is_finite() {
        breakpoints.push(hi);
    }
    let integrand = |x: f64| {
        if x <= 0.0 {
            return 0.0;
        }
        let derivative = f.eval_derivative(order, x).unwrap_or(f64::NAN);
        if derivative == 0.0 {
            return 0.0;
        }
        x.powf(weight) * (c * x.powf(shift) + m_c_prime) * derivative.abs().powf(p)
    };
    integrate_semi_infinite_with_breakpoints(integrand, &breakpoints, tol, budget)
}

/// Weighted product superadditivity:
/// Π(a_i+b_i)^(α_i) ≥ Πa_i^(α_i) + Πb_i^(α_i) for Σα_i = 1.
///
/// Reported with lhs = Πa^α + Πb^α and rhs = Π(a+b)^α so the HOLDS
/// convention lhs ≤ rhs is preserved; equality holds exactly when the
/// ratios a_i/b_i are all equal.
pub fn check_superadditivity(a: &[f64], b: &[f64], alphas: &[f64]) -> Result<VerificationReport> {
    let id = InequalityId::Lemma21;
    if a.len() != b.len() || a.len() != alphas.len() || a.is_empty() {
        return Err(Error::Domain(
            "a, b, and alphas must be nonempty lists of equal length".into(),
        ));
    }
    if a.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::Domain("entries of a must be finite and >= 0".into()));
    }
    if b.iter().any(|v| !v.is_finite() || *v <= 0.0) {
        return Err(Error::Domain("entries of b must be finite and > 0".into()));
    }
    if alphas.iter().any(|v| !v.is_finite() || *v <= 0.0) {
        return Err(Error::Domain("weights must be finite and > 0".into()));
    }
    let weight_sum: f64 = alphas.iter().sum();
    if (weight_sum - 1.0).abs() > 1e-12 {
        return Err(Error::Domain(format!(
            "weights must sum to 1, got {weight_sum}"
        )));
    }

    let mut product_a = 1.0;
    let mut product_b = 1.0;
    let mut product_sum = 1.0;
    for i in 0..a.len() {
        product_a *= a[i].powf(alphas[i]);
        product_b *= b[i].powf(alphas[i]);
        product_sum *= (a[i] + b[i]).powf(alphas[i]);
    }

    let lhs = product_a + product_b;
    let rhs = product_sum;
    let slop = 1e-14 * a.len() as f64;
    let descriptor = format!("a={a:?}, b={b:?}, alphas={alphas:?}");
    Ok(VerificationReport::from_sides(id, lhs, lhs * slop, rhs, rhs * slop, descriptor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn budget() -> Budget {
        Budget::default()
    }

    fn pair2() -> HolderPair {
        HolderPair::new(2.0).unwrap()
    }

    fn expfn() -> TestFunction {
        TestFunction::monomial_exponential(0.0, 1.0, 1.0).unwrap()
    }

    fn xexpfn() -> TestFunction {
        TestFunction::monomial_exponential(1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn hilbert_integral_exponential() {
        let report =
            verify_hilbert_integral(&expfn(), &expfn(), &pair2(), 1e-8, &budget()).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
        assert!((report.lhs - 1.0).abs() <= report.lhs_error + 1e-9);
        assert!((report.rhs - PI / 2.0).abs() <= report.rhs_error + 1e-8);
    }

    #[test]
    fn hilbert_integral_first_moment() {
        let report =
            verify_hilbert_integral(&xexpfn(), &xexpfn(), &pair2(), 1e-8, &budget()).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
        assert!((report.lhs - 1.0 / 3.0).abs() <= report.lhs_error + 1e-9);
        assert!((report.rhs - PI / 4.0).abs() <= report.rhs_error + 1e-8);
    }

    #[test]
    fn hilbert_integral_accepts_truncated_powers() {
        // Nonnegativity and positive finite norms are the only hypotheses
        // of the unweighted inequality, so truncated families verify.
        let f = TestFunction::truncated_power(-0.5, 1.0, 50.0).unwrap();
        let g = TestFunction::truncated_power(-0.25, 2.0, 20.0).unwrap();
        let report = verify_hilbert_integral(&f, &g, &pair2(), 1e-6, &budget()).unwrap();
        assert_eq!(report.verdict, Verdict::Holds, "{}", report.instance_descriptor);
        assert!(report.ratio > 0.0 && report.ratio < 1.0);
    }

    #[test]
    fn hilbert_integral_zero_function_is_inadmissible() {
        let zero = TestFunction::monomial_exponential(0.0, 1.0, 0.0).unwrap();
        let report = verify_hilbert_integral(&zero, &zero, &pair2(), 1e-8, &budget()).unwrap();
        assert_eq!(report.verdict, Verdict::Inadmissible);
    }

    #[test]
    fn hilbert_discrete_geometric() {
        let a = SequenceFamily::geometric(0.5, 1.0, 1).unwrap();
        let report = verify_hilbert_discrete(&a, &a, &pair2(), 1e-8, &budget()).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
        assert!((report.lhs - 0.3068528194400547).abs() < 1e-7);
        assert!((report.rhs - PI / 3.0).abs() < 1e-8);
    }

    #[test]
    fn hilbert_discrete_single_term() {
        let a = SequenceFamily::explicit(vec![1.0], 1).unwrap();
        let report = verify_hilbert_discrete(&a, &a, &pair2(), 1e-10, &budget()).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
        assert!((report.lhs - 0.5).abs() < 1e-12);
        assert!((report.rhs - PI).abs() < 1e-12);
    }

    #[test]
    fn hilbert_discrete_zero_norm_inadmissible() {
        let a = SequenceFamily::explicit(vec![1.0], 1).unwrap();
        let b = SequenceFamily::explicit(vec![0.0], 1).unwrap();
        let report = verify_hilbert_discrete(&a, &b, &pair2(), 1e-8, &budget()).unwrap();
        assert_eq!(report.verdict, Verdict::Inadmissible);
    }

    #[test]
    fn lemma_offset_single_term() {
        let c = SequenceFamily::explicit(vec![1.0], 0).unwrap();
        let report = verify_lemma_offset_discrete(&c, &c, &pair2(), 1e-10, &budget()).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
        assert!((report.lhs - 1.0).abs() < 1e-12);
        assert!((report.rhs - PI).abs() < 1e-12);
    }

    #[test]
    fn lemma_offset_geometric_start_zero() {
        let c = SequenceFamily::geometric(0.5, 1.0, 0).unwrap();
        let report = verify_lemma_offset_discrete(&c, &c, &pair2(), 1e-9, &budget()).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
        // Diagonal closed form: Σ_{s≥0} r^s = 2 at r = 1/2.
        assert!((report.lhs - 2.0).abs() < 1e-8);
        let norm = 1.0 / (1.0 - 0.25);
        assert!((report.rhs - PI * norm).abs() < 1e-8);
    }

    #[test]
    fn sum_discrete_hand_computed() {
        let a = SequenceFamily::explicit(vec![1.0], 1).unwrap();
        let b = SequenceFamily::explicit(vec![1.0], 1).unwrap();
        let c = SequenceFamily::explicit(vec![1.0], 0).unwrap();
        let d = SequenceFamily::explicit(vec![1.0], 0).unwrap();
        let inst = SumDiscreteInstance::new(a, b, c, d, pair2(), 1).unwrap();
        let report = verify_sum_discrete(&inst, 1e-10, &budget()).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
        assert!((report.lhs - 1.5).abs() < 1e-12, "lhs = {}", report.lhs);
        assert!((report.rhs - 2.0 * PI).abs() < 1e-12, "rhs = {}", report.rhs);
    }

    #[test]
    fn sum_discrete_reduces_to_hilbert_discrete() {
        let a = SequenceFamily::geometric(0.5, 1.0, 1).unwrap();
        let b = SequenceFamily::geometric(0.3, 2.0, 1).unwrap();
        let zero = SequenceFamily::explicit(vec![], 0).unwrap();
        let inst =
            SumDiscreteInstance::new(a.clone(), b.clone(), zero.clone(), zero, pair2(), 5)
                .unwrap();
        let combined = verify_sum_discrete(&inst, 1e-9, &budget()).unwrap();
        let plain = verify_hilbert_discrete(&a, &b, &pair2(), 1e-9, &budget()).unwrap();
        assert!(
            (combined.lhs - plain.lhs).abs() <= combined.lhs_error + plain.lhs_error + 1e-12
        );
        assert!(
            (combined.rhs - plain.rhs).abs() <= combined.rhs_error + plain.rhs_error + 1e-12
        );
    }

    #[test]
    fn sum_discrete_reduces_to_offset_lemma_when_index_zero_terms_vanish() {
        // With a = b = 0 and c₀ = d₀ = 0 the sum-type statement coincides
        // with the offset-kernel inequality.
        let zero1 = SequenceFamily::explicit(vec![], 1).unwrap();
        let c = SequenceFamily::explicit(vec![0.0, 0.5, 0.25, 0.125], 0).unwrap();
        let d = SequenceFamily::explicit(vec![0.0, 1.0, 0.5], 0).unwrap();
        let inst = SumDiscreteInstance::new(
            zero1.clone(),
            zero1,
            c.clone(),
            d.clone(),
            pair2(),
            1,
        )
        .unwrap();
        let combined = verify_sum_discrete(&inst, 1e-10, &budget()).unwrap();
        let plain = verify_lemma_offset_discrete(&c, &d, &pair2(), 1e-10, &budget()).unwrap();
        assert!(
            (combined.lhs - plain.lhs).abs() <= combined.lhs_error + plain.lhs_error + 1e-12
        );
        assert!(
            (combined.rhs - plain.rhs).abs() <= combined.rhs_error + plain.rhs_error + 1e-12
        );
    }

    #[test]
    fn weighted_c_variant_matches_hilbert_integral_at_unit_lambda() {
        let pair = pair2();
        let params = KernelParams::new(1.0, 0.0, 0, &pair).unwrap();
        let weighted = verify_weighted_integral(
            &expfn(),
            &expfn(),
            &pair,
            &params,
            WeightVariant::C,
            1e-8,
            &budget(),
        )
        .unwrap();
        let plain = verify_hilbert_integral(&expfn(), &expfn(), &pair, 1e-8, &budget()).unwrap();
        assert_eq!(weighted.verdict, Verdict::Holds);
        assert!(
            (weighted.lhs - plain.lhs).abs() <= weighted.lhs_error + plain.lhs_error + 1e-10
        );
        assert!(
            (weighted.rhs - plain.rhs).abs() <= weighted.rhs_error + plain.rhs_error + 1e-10
        );
    }

    #[test]
    fn weighted_rejects_sign_changing_derivative() {
        let pair = pair2();
        let params = KernelParams::new(3.0, 0.0, 1, &pair).unwrap();
        let report = verify_weighted_integral(
            &xexpfn(),
            &xexpfn(),
            &pair,
            &params,
            WeightVariant::C,
            1e-6,
            &budget(),
        )
        .unwrap();
        assert_eq!(report.verdict, Verdict::Inadmissible);
        assert!(report.instance_descriptor.contains("f^(1)"));
    }

    #[test]
    fn weighted_holds_for_slow_decay() {
        let pair = pair2();
        let params = KernelParams::new(3.0, 0.0, 1, &pair).unwrap();
        let f = TestFunction::monomial_exponential(1.0, 1e-4, 1.0).unwrap();
        let report = verify_weighted_integral(
            &f,
            &f,
            &pair,
            &params,
            WeightVariant::C,
            1e-5,
            &budget(),
        )
        .unwrap();
        assert!(
            matches!(report.verdict, Verdict::Holds | Verdict::HoldsWithinError),
            "verdict {:?}, descriptor {}",
            report.verdict,
            report.instance_descriptor
        );
        assert!(report.lhs <= report.rhs + report.lhs_error + report.rhs_error);
    }

    #[test]
    fn weighted_c_prime_with_negative_shift() {
        // The admissible interval is two-sided; a negative shift swaps the
        // roles of the two weights.
        let pair = pair2();
        let params = KernelParams::new(1.5, -0.3, 0, &pair).unwrap();
        let f = TestFunction::monomial_exponential(0.5, 1.0, 1.0).unwrap();
        let report = verify_weighted_integral(
            &f,
            &f,
            &pair,
            &params,
            WeightVariant::CPrime,
            1e-6,
            &budget(),
        )
        .unwrap();
        assert_eq!(report.verdict, Verdict::Holds, "{}", report.instance_descriptor);
        // Mirror instance: same functions, shift negated. The two RHS values
        // coincide because the roles of the x- and y-sides swap exactly.
        let mirrored = KernelParams::new(1.5, 0.3, 0, &pair).unwrap();
        let mirror_report = verify_weighted_integral(
            &f,
            &f,
            &pair,
            &mirrored,
            WeightVariant::CPrime,
            1e-6,
            &budget(),
        )
        .unwrap();
        assert!(
            (report.rhs - mirror_report.rhs).abs()
                <= report.rhs_error + mirror_report.rhs_error + 1e-10
        );
    }

    #[test]
    fn sum_integral_exponential_with_shift() {
        let pair = pair2();
        let params = KernelParams::new(1.0, 0.25, 0, &pair).unwrap();
        let inst =
            SumIntegralInstance::new(expfn(), expfn(), pair, params, 1).unwrap();
        let report = verify_sum_integral(&inst, 1e-7, &budget()).unwrap();
        assert_eq!(report.verdict, Verdict::Holds, "{}", report.instance_descriptor);
        assert!((report.lhs - 1.0).abs() <= report.lhs_error + 1e-8);
    }

    #[test]
    fn sum_integral_reduces_to_weighted_c_at_unit_multiplicity_zero_shift() {
        let pair = pair2();
        let params = KernelParams::new(1.0, 0.0, 0, &pair).unwrap();
        let inst = SumIntegralInstance::new(expfn(), expfn(), pair, params, 1).unwrap();
        let combined = verify_sum_integral(&inst, 1e-8, &budget()).unwrap();
        let weighted = verify_weighted_integral(
            &expfn(),
            &expfn(),
            &pair2(),
            &params,
            WeightVariant::C,
            1e-8,
            &budget(),
        )
        .unwrap();
        assert!(
            (combined.rhs - weighted.rhs).abs()
                <= combined.rhs_error + weighted.rhs_error + 1e-9,
            "combined rhs {} vs weighted rhs {}",
            combined.rhs,
            weighted.rhs
        );
    }

    #[test]
    fn sum_integral_rhs_between_pure_bounds() {
        let pair = pair2();
        let params = KernelParams::new(1.0, 0.25, 0, &pair).unwrap();
        let lemma23 = verify_weighted_integral(
            &expfn(), &expfn(), &pair, &params, WeightVariant::C, 1e-8, &budget(),
        )
        .unwrap();
        let lemma24 = verify_weighted_integral(
            &expfn(), &expfn(), &pair, &params, WeightVariant::CPrime, 1e-8, &budget(),
        )
        .unwrap();
        for m in [1u32, 5] {
            let inst = SumIntegralInstance::new(expfn(), expfn(), pair, params, m).unwrap();
            let report = verify_sum_integral(&inst, 1e-7, &budget()).unwrap();
            assert_eq!(report.verdict, Verdict::Holds);
            let lo = lemma23.rhs.min(lemma24.rhs);
            let hi = lemma23.rhs.max(lemma24.rhs);
            let slack = report.rhs_error + lemma23.rhs_error + lemma24.rhs_error + 1e-8;
            assert!(
                report.rhs >= lo - slack && report.rhs <= hi + slack,
                "m={m}: rhs {} outside [{lo}, {hi}]",
                report.rhs
            );
        }
    }

    #[test]
    fn superadditivity_equality_case() {
        let report = check_superadditivity(&[1.0, 1.0], &[1.0, 1.0], &[0.5, 0.5]).unwrap();
        assert!((report.ratio - 1.0).abs() < 1e-12);
        assert_eq!(report.verdict, Verdict::HoldsWithinError);
        assert!((report.lhs - 2.0).abs() < 1e-14);
        assert!((report.rhs - 2.0).abs() < 1e-14);
    }

    #[test]
    fn superadditivity_strict_case() {
        let report = check_superadditivity(&[4.0, 1.0], &[1.0, 4.0], &[0.5, 0.5]).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
        assert!((report.lhs - 4.0).abs() < 1e-13);
        assert!((report.rhs - 5.0).abs() < 1e-13);
    }

    #[test]
    fn superadditivity_rejects_bad_weights() {
        assert!(matches!(
            check_superadditivity(&[1.0, 2.0], &[1.0, 1.0], &[0.7, 0.4]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn ratio_bound_for_holds_reports() {
        let a = SequenceFamily::geometric(0.5, 1.0, 1).unwrap();
        let report = verify_hilbert_discrete(&a, &a, &pair2(), 1e-8, &budget()).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
        assert!(report.ratio <= 1.0 + (report.lhs_error + report.rhs_error) / report.rhs);
    }
}
