//! Built-in oracle checks for the special-function and quadrature stages.

use hilbert_forge::funcspace::TestFunction;
use hilbert_forge::quadrature::{integrate_kernel_double, integrate_semi_infinite};
use hilbert_forge::series::double_sum_kernel;
use hilbert_forge::funcspace::SequenceFamily;
use hilbert_forge::specialfn::{bound_constants, gamma, hilbert_constant, HolderPair};
use hilbert_forge::Budget;
use std::f64::consts::PI;

struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check { name, passed, detail }
}

fn run_checks(budget: &Budget) -> Vec<Check> {
    let mut checks = Vec::new();

    // Gamma vs factorials.
    let mut worst = 0.0f64;
    let mut factorial = 1.0f64;
    for k in 1..=20u32 {
        let value = gamma(k as f64).unwrap_or(f64::NAN);
        worst = worst.max(((value - factorial) / factorial).abs());
        factorial *= k as f64;
    }
    checks.push(check(
        "gamma factorial identity k=1..20",
        worst <= 1e-12,
        format!("worst relative error {worst:.3e}"),
    ));

    // Reflection identity on the open unit interval.
    let mut worst = 0.0f64;
    for i in 1..100 {
        let x = i as f64 / 100.0;
        let value = gamma(x).unwrap_or(f64::NAN) * gamma(1.0 - x).unwrap_or(f64::NAN)
            * (PI * x).sin()
            / PI;
        worst = worst.max((value - 1.0).abs());
    }
    checks.push(check(
        "gamma reflection identity on (0,1)",
        worst <= 1e-10,
        format!("worst relative error {worst:.3e}"),
    ));

    // Bound constants coincide with the Hilbert constant at lambda = 1.
    let mut worst = 0.0f64;
    for &p in &[1.1, 1.5, 2.0, 3.0, 5.0, 10.0] {
        let pair = HolderPair::new(p).unwrap();
        let c = bound_constants(&pair, 1.0, 0.0, 0).map(|b| b.c).unwrap_or(f64::NAN);
        let kappa = hilbert_constant(&pair);
        worst = worst.max(((c - kappa) / kappa).abs());
    }
    checks.push(check(
        "bound constant matches pi/sin(pi/p) at lambda=1",
        worst <= 1e-10,
        format!("worst relative error {worst:.3e}"),
    ));

    // Semi-infinite quadrature oracles.
    type OracleCase = (&'static str, fn(f64) -> f64, f64);
    #[allow(clippy::excessive_precision)]
    let singles: [OracleCase; 3] = [
        ("integral of exp(-x)", |x| (-x).exp(), 1.0),
        ("integral of x exp(-x)", |x| x * (-x).exp(), 1.0),
        ("integral of x^(-1/2) exp(-x)", |x| x.powf(-0.5) * (-x).exp(), 1.7724538509055160),
    ];
    for (name, integrand, exact) in singles {
        let result = integrate_semi_infinite(integrand, 1e-8, budget);
        let (passed, detail) = match result {
            Ok(r) => (
                r.converged && (r.value - exact).abs() <= r.error_bound && r.error_bound <= 1e-8,
                format!("value {:.12e}, bound {:.3e}", r.value, r.error_bound),
            ),
            Err(e) => (false, e.to_string()),
        };
        checks.push(check(name, passed, detail));
    }

    // Kernel double-integral oracles.
    let expfn = TestFunction::monomial_exponential(0.0, 1.0, 1.0).unwrap();
    let xexpfn = TestFunction::monomial_exponential(1.0, 1.0, 1.0).unwrap();
    let doubles = [
        ("double kernel exp/exp lambda=1", &expfn, 1.0f64, 1.0f64),
        ("double kernel xexp/xexp lambda=1", &xexpfn, 1.0, 1.0 / 3.0),
        ("double kernel xexp/xexp lambda=2", &xexpfn, 2.0, 1.0 / 6.0),
    ];
    for (name, f, lambda, exact) in doubles {
        let result = integrate_kernel_double(f, f, lambda, 1e-8, budget);
        let (passed, detail) = match result {
            Ok(r) => (
                r.converged && (r.value - exact).abs() <= r.error_bound && r.error_bound <= 1e-8,
                format!("value {:.12e}, bound {:.3e}", r.value, r.error_bound),
            ),
            Err(e) => (false, e.to_string()),
        };
        checks.push(check(name, passed, detail));
    }

    // Geometric double-series closed forms.
    for &r in &[0.1, 0.5, 0.9] {
        let seq = SequenceFamily::geometric(r, 1.0, 1).unwrap();
        let exact = r * r / (1.0 - r) + (1.0 - r).ln() + r;
        let result = double_sum_kernel(&seq, &seq, 0, 1e-10, budget);
        let (passed, detail) = match result {
            Ok((value, err)) => (
                (value - exact).abs() <= err.max(1e-10),
                format!("value {value:.12e}, bound {err:.3e}"),
            ),
            Err(e) => (false, e.to_string()),
        };
        checks.push(check("geometric double-series closed form", passed, detail));
    }

    checks
}

/// Runs every oracle check, printing one pass/fail line each.
/// Returns true when everything passed.
pub fn run(budget: &Budget) -> bool {
    let checks = run_checks(budget);
    let mut all_passed = true;
    for c in &checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {} ({})", c.name, c.detail);
        all_passed &= c.passed;
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    println!("selftest: {passed}/{} checks passed", checks.len());
    all_passed
}
