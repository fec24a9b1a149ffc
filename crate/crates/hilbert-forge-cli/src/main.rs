//! Command-line interface for the Hilbert-type inequality verification
//! toolkit.
//!
//! Exit codes: 0 on success; 1 when a verification run produced a VIOLATED
//! verdict, an instance declared admissible came back INADMISSIBLE, a
//! sharpness sweep broke monotonicity, or a comparison drifted; 2 on
//! configuration or argument errors.

mod config;
mod instances;
mod report;
mod selftest;

use clap::{Parser, Subcommand, ValueEnum};
use config::SuiteConfig;
use hilbert_forge::inequalities::Verdict;
use hilbert_forge::sharpness::{extremal_ratio_discrete, extremal_ratio_integral, SharpnessProbe};
use hilbert_forge::specialfn::{bound_constants, hilbert_constant, HolderPair};
use hilbert_forge::Budget;
use instances::{plan_instance, PlannedInstance};
use report::{fmt_f64, ReportEntry};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

const DEFAULT_SUITE: &str = include_str!("../suites/default.json");

#[derive(Parser)]
#[command(name = "hilbert-forge")]
#[command(about = "Numerical verification and sharpness exploration for Hilbert-type inequalities")]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print q, pi/sin(pi/p), C, C' and the four Gamma arguments.
    Constants {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 0)]
        n: u32,
        #[arg(long, default_value_t = 0.0)]
        gamma: f64,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Run a verification suite and write a JSON report.
    Verify {
        /// Suite configuration (JSON); the bundled default suite when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Report output path.
        #[arg(long, default_value = "hilbert_report.json")]
        out: PathBuf,
        /// Tolerance override for every instance.
        #[arg(long)]
        tol: Option<f64>,
        /// Worker threads (default: available parallelism).
        #[arg(long)]
        jobs: Option<usize>,
        /// Baseline report; exit 1 on drift beyond --compare-tol.
        #[arg(long)]
        compare: Option<PathBuf>,
        /// Numeric drift tolerance for --compare (0 = byte-identical subset).
        #[arg(long, default_value_t = 0.0)]
        compare_tol: f64,
    },
    /// Expand the grids of a config into an explicit instance list.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Probe best-possible-constant behavior on truncated extremal families.
    Sharpness {
        #[arg(long, value_parser = ["integral", "discrete"])]
        mode: String,
        #[arg(long)]
        p: f64,
        /// Comma-separated truncation points (T > 1 or N >= 2).
        #[arg(long, value_delimiter = ',')]
        points: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    /// Run the built-in special-function and quadrature oracle checks.
    Selftest,
}

fn env_budget() -> Budget {
    match std::env::var("HILBERT_FORGE_CAP") {
        Ok(text) => match text.parse::<f64>() {
            Ok(cap) if cap >= 1.0 => Budget::with_cap(cap as u64),
            _ => {
                eprintln!("warning: ignoring unparsable HILBERT_FORGE_CAP={text}");
                Budget::default()
            }
        },
        Err(_) => Budget::default(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Constants { p, lambda, n, gamma, format } => cmd_constants(p, lambda, n, gamma, format),
        Command::Verify { config, out, tol, jobs, compare, compare_tol } => {
            cmd_verify(config, out, tol, jobs, compare, compare_tol)
        }
        Command::Sweep { config, out } => cmd_sweep(config, out),
        Command::Sharpness { mode, p, points, out, tol } => cmd_sharpness(&mode, p, &points, out, tol),
        Command::Selftest => {
            if selftest::run(&env_budget()) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn cmd_constants(p: f64, lambda: f64, n: u32, gamma: f64, format: OutputFormat) -> ExitCode {
    let pair = match HolderPair::new(p) {
        Ok(pair) => pair,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let constants = match bound_constants(&pair, lambda, gamma, n) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let kappa = hilbert_constant(&pair);
    match format {
        OutputFormat::Json => {
            println!("{{");
            println!("  \"p\": {},", fmt_f64(pair.p()));
            println!("  \"q\": {},", fmt_f64(pair.q()));
            println!("  \"hilbert_constant\": {},", fmt_f64(kappa));
            println!("  \"lambda\": {},", fmt_f64(lambda));
            println!("  \"gamma\": {},", fmt_f64(gamma));
            println!("  \"n\": {n},");
            println!(
                "  \"gamma_args\": [{}, {}, {}, {}],",
                fmt_f64(constants.gamma_args[0]),
                fmt_f64(constants.gamma_args[1]),
                fmt_f64(constants.gamma_args[2]),
                fmt_f64(constants.gamma_args[3])
            );
            println!("  \"c\": {},", fmt_f64(constants.c));
            println!("  \"c_prime\": {}", fmt_f64(constants.c_prime));
            println!("}}");
        }
        OutputFormat::Text => {
            println!("p            = {}", pair.p());
            println!("q            = {}", pair.q());
            println!("pi/sin(pi/p) = {}", fmt_f64(kappa));
            println!("lambda       = {lambda}");
            println!("gamma        = {gamma}");
            println!("n            = {n}");
            println!(
                "Gamma args   = {}, {}, {}, {}  (lambda/p-n, lambda/q-n, lambda/p-gamma-n, lambda/q-gamma-n)",
                constants.gamma_args[0],
                constants.gamma_args[1],
                constants.gamma_args[2],
                constants.gamma_args[3]
            );
            println!("C            = {}", fmt_f64(constants.c));
            println!("C'           = {}", fmt_f64(constants.c_prime));
        }
    }
    ExitCode::SUCCESS
}

fn load_config(path: &Option<PathBuf>) -> Result<SuiteConfig, String> {
    let text = match path {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?,
        None => DEFAULT_SUITE.to_string(),
    };
    SuiteConfig::parse(&text)
}

fn cmd_verify(
    config_path: Option<PathBuf>,
    out: PathBuf,
    tol_override: Option<f64>,
    jobs_flag: Option<usize>,
    compare: Option<PathBuf>,
    compare_tol: f64,
) -> ExitCode {
    let started = Instant::now();
    let config = match load_config(&config_path) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let expanded = match config.expand() {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let suite_tol = tol_override.unwrap_or(expanded.tol);
    let mut planned = Vec::new();
    for entry in &expanded.instances {
        match plan_instance(entry, suite_tol) {
            Ok(mut instance) => {
                if tol_override.is_some() {
                    instance.tol = suite_tol;
                }
                planned.push(instance);
            }
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
    }
    if planned.is_empty() {
        eprintln!("error: the configuration produced no instances");
        return ExitCode::from(2);
    }

    let mut budget = env_budget();
    if let Some(caps) = &expanded.caps {
        if let Some(quad) = caps.quad_evals {
            budget.max_quad_evals = quad.min(usize::MAX as u64) as usize;
        }
        if let Some(terms) = caps.series_terms {
            budget.max_series_terms = terms;
        }
    }
    let jobs = jobs_flag
        .or(expanded.jobs)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
        .max(1);

    let entries = match run_pool(&planned, jobs, &budget) {
        Ok(entries) => entries,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    // Verdict accounting.
    let mut violated = 0usize;
    let mut unexpected_inadmissible = 0usize;
    let mut holds = 0usize;
    let mut within_error = 0usize;
    let mut expected_inadmissible = 0usize;
    for (entry, planned) in entries.iter().zip(&planned) {
        match entry.report.verdict {
            Verdict::Holds => holds += 1,
            Verdict::HoldsWithinError => within_error += 1,
            Verdict::Violated => {
                violated += 1;
                eprintln!(
                    "VIOLATED: {} :: {}",
                    entry.report.inequality_id.as_str(),
                    entry.report.instance_descriptor
                );
            }
            Verdict::Inadmissible => {
                if planned.expect_inadmissible {
                    expected_inadmissible += 1;
                } else {
                    unexpected_inadmissible += 1;
                    eprintln!(
                        "UNEXPECTED INADMISSIBLE: {} :: {}",
                        entry.report.inequality_id.as_str(),
                        entry.report.instance_descriptor
                    );
                }
            }
        }
    }

    let total_wall_ms = started.elapsed().as_secs_f64() * 1e3;
    let document = report::render_report(&entries, suite_tol, jobs, total_wall_ms);
    if let Err(e) = std::fs::write(&out, &document) {
        eprintln!("error: cannot write report {}: {e}", out.display());
        return ExitCode::from(2);
    }
    println!(
        "verified {} instances: {holds} HOLDS, {within_error} HOLDS_WITHIN_ERROR, {violated} VIOLATED, {} INADMISSIBLE ({expected_inadmissible} expected)",
        entries.len(),
        expected_inadmissible + unexpected_inadmissible,
    );
    println!("report written to {}", out.display());

    if let Some(baseline_path) = compare {
        match compare_reports(&document, &baseline_path, compare_tol) {
            Ok(drifts) if drifts.is_empty() => {
                println!("comparison against {} passed", baseline_path.display());
            }
            Ok(drifts) => {
                for drift in &drifts {
                    eprintln!("drift: {drift}");
                }
                return ExitCode::from(1);
            }
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
    }

    if violated > 0 || unexpected_inadmissible > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn compare_reports(
    current_document: &str,
    baseline_path: &PathBuf,
    tol: f64,
) -> Result<Vec<String>, String> {
    let baseline_text = std::fs::read_to_string(baseline_path)
        .map_err(|e| format!("cannot read baseline {}: {e}", baseline_path.display()))?;
    let baseline: serde_json::Value = serde_json::from_str(&baseline_text)
        .map_err(|e| format!("baseline is not valid JSON: {e}"))?;
    let current: serde_json::Value = serde_json::from_str(current_document)
        .map_err(|e| format!("current report is not valid JSON: {e}"))?;

    if tol == 0.0 {
        let current_subset = report::comparison_subset_from_json(&current)?;
        let baseline_subset = report::comparison_subset_from_json(&baseline)?;
        if current_subset == baseline_subset {
            Ok(Vec::new())
        } else {
            Ok(vec!["comparison subsets are not byte-identical".to_string()])
        }
    } else {
        Ok(report::drift_report(&current, &baseline, tol))
    }
}

/// Runs the planned instances on a fixed-size worker pool. Results keep
/// config order regardless of completion order.
fn run_pool(
    planned: &[PlannedInstance],
    jobs: usize,
    budget: &Budget,
) -> Result<Vec<ReportEntry>, String> {
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Result<ReportEntry, String>>>> =
        (0..planned.len()).map(|_| Mutex::new(None)).collect();

    std::thread::scope(|scope| {
        for _ in 0..jobs.min(planned.len()) {
            scope.spawn(|| loop {
                let index = next.fetch_add(1, Ordering::Relaxed);
                if index >= planned.len() {
                    break;
                }
                let instance = &planned[index];
                let start = Instant::now();
                let outcome = instance
                    .runner
                    .run(instance.tol, budget)
                    .map(|report| ReportEntry {
                        report,
                        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
                    })
                    .map_err(|e| e.to_string());
                *slots[index].lock().expect("result slot poisoned") = Some(outcome);
            });
        }
    });

    let mut entries = Vec::with_capacity(planned.len());
    for (i, slot) in slots.into_iter().enumerate() {
        match slot.into_inner().expect("result slot poisoned") {
            Some(Ok(entry)) => entries.push(entry),
            Some(Err(e)) => return Err(format!("instance {i} failed: {e}")),
            None => return Err(format!("instance {i} was never executed")),
        }
    }
    Ok(entries)
}

fn cmd_sweep(config_path: PathBuf, out: PathBuf) -> ExitCode {
    let config = match load_config(&Some(config_path)) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let expanded = match config.expand() {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match serde_json::to_string_pretty(&expanded) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot serialize expanded config: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = std::fs::write(&out, text + "\n") {
        eprintln!("error: cannot write {}: {e}", out.display());
        return ExitCode::from(2);
    }
    println!(
        "expanded {} instances to {}",
        expanded.instances.len(),
        out.display()
    );
    ExitCode::SUCCESS
}

fn cmd_sharpness(
    mode: &str,
    p: f64,
    points: &[f64],
    out: Option<PathBuf>,
    tol: f64,
) -> ExitCode {
    let pair = match HolderPair::new(p) {
        Ok(pair) => pair,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if points.is_empty() {
        eprintln!("error: at least one probe point is required");
        return ExitCode::from(2);
    }
    for &point in points {
        let valid = match mode {
            "integral" => point > 1.0,
            _ => point >= 2.0 && point.fract() == 0.0,
        };
        if !valid {
            eprintln!("error: invalid probe point {point} for mode {mode}");
            return ExitCode::from(2);
        }
    }

    let budget = env_budget();
    let mut probes: Vec<SharpnessProbe> = Vec::new();
    for &point in points {
        let result = match mode {
            "integral" => extremal_ratio_integral(&pair, point, tol, &budget),
            _ => extremal_ratio_discrete(&pair, point as u64, &budget),
        };
        match result {
            Ok(probe) => probes.push(probe),
            Err(e) => {
                eprintln!("error: probe {point}: {e}");
                return ExitCode::from(2);
            }
        }
    }

    let mut csv = String::from("probe,lhs,lhs_error,rhs,rhs_error,ratio\n");
    for probe in &probes {
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            probe.probe,
            fmt_f64(probe.lhs),
            fmt_f64(probe.lhs_error),
            fmt_f64(probe.rhs),
            fmt_f64(probe.rhs_error),
            fmt_f64(probe.ratio)
        ));
    }
    match &out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &csv) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
            println!("sharpness CSV written to {}", path.display());
        }
        None => print!("{csv}"),
    }

    // Monotone-approach invariant over ascending probe points.
    let mut indices: Vec<usize> = (0..probes.len()).collect();
    indices.sort_by(|&i, &j| probes[i].probe.total_cmp(&probes[j].probe));
    for window in indices.windows(2) {
        let (a, b) = (&probes[window[0]], &probes[window[1]]);
        if b.ratio <= a.ratio {
            eprintln!(
                "monotone approach failed: ratio({}) = {} does not exceed ratio({}) = {}",
                b.probe, b.ratio, a.probe, a.ratio
            );
            return ExitCode::from(1);
        }
    }
    ExitCode::SUCCESS
}
