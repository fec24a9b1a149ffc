//! Deterministic JSON report writer and the comparison mode.
//!
//! Reports are serialized by hand with a fixed field order and floats
//! printed with 17 significant digits, so identical configs and builds
//! produce byte-identical output on the comparison subset. Volatile fields
//! (timestamps, wall times) live outside that subset: `meta` is skipped
//! entirely and `wall_time_ms` is stripped from each result before
//! comparison.

use hilbert_forge::inequalities::VerificationReport;

pub const REPORT_VERSION: u32 = 1;

/// A report entry: the verification result plus its wall time.
pub struct ReportEntry {
    pub report: VerificationReport,
    pub wall_time_ms: f64,
}

/// 17-significant-digit float form, stable across runs.
pub fn fmt_f64(x: f64) -> String {
    if !x.is_finite() {
        return "0.0".to_string();
    }
    format!("{x:.16e}")
}

fn json_escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

fn write_result(out: &mut String, entry: &ReportEntry, with_wall_time: bool) {
    let r = &entry.report;
    out.push_str("    {\n");
    out.push_str(&format!("      \"version\": {REPORT_VERSION},\n"));
    out.push_str(&format!(
        "      \"inequality_id\": \"{}\",\n",
        r.inequality_id.as_str()
    ));
    out.push_str(&format!(
        "      \"instance_descriptor\": \"{}\",\n",
        json_escape(&r.instance_descriptor)
    ));
    out.push_str(&format!("      \"lhs\": {},\n", fmt_f64(r.lhs)));
    out.push_str(&format!("      \"lhs_error\": {},\n", fmt_f64(r.lhs_error)));
    out.push_str(&format!("      \"rhs\": {},\n", fmt_f64(r.rhs)));
    out.push_str(&format!("      \"rhs_error\": {},\n", fmt_f64(r.rhs_error)));
    out.push_str(&format!("      \"ratio\": {},\n", fmt_f64(r.ratio)));
    if with_wall_time {
        out.push_str(&format!("      \"verdict\": \"{}\",\n", r.verdict.as_str()));
        out.push_str(&format!("      \"wall_time_ms\": {:.3}\n", entry.wall_time_ms));
    } else {
        out.push_str(&format!("      \"verdict\": \"{}\"\n", r.verdict.as_str()));
    }
    out.push_str("    }");
}

/// Full report document, including the volatile `meta` block.
pub fn render_report(entries: &[ReportEntry], tol: f64, jobs: usize, total_wall_ms: f64) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!("  \"version\": {REPORT_VERSION},\n"));
    out.push_str("  \"meta\": {\n");
    out.push_str(&format!("    \"tol\": {},\n", fmt_f64(tol)));
    out.push_str(&format!("    \"jobs\": {jobs},\n"));
    out.push_str(&format!("    \"total_wall_ms\": {total_wall_ms:.3}\n"));
    out.push_str("  },\n");
    out.push_str("  \"results\": [\n");
    for (i, entry) in entries.iter().enumerate() {
        write_result(&mut out, entry, true);
        out.push_str(if i + 1 < entries.len() { ",\n" } else { "\n" });
    }
    out.push_str("  ]\n");
    out.push_str("}\n");
    out
}

/// Comparison subset re-derived from a report document: results only, wall
/// times stripped.
pub fn comparison_subset_from_json(document: &serde_json::Value) -> Result<String, String> {
    let results = document
        .get("results")
        .and_then(|v| v.as_array())
        .ok_or_else(|| "report has no results array".to_string())?;
    let mut out = String::new();
    out.push_str("[\n");
    for (i, result) in results.iter().enumerate() {
        let get_str = |key: &str| -> Result<&str, String> {
            result
                .get(key)
                .and_then(|v| v.as_str())
                .ok_or_else(|| format!("result {i} missing string field '{key}'"))
        };
        let get_f64 = |key: &str| -> Result<f64, String> {
            result
                .get(key)
                .and_then(|v| v.as_f64())
                .ok_or_else(|| format!("result {i} missing numeric field '{key}'"))
        };
        let version = result
            .get("version")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| format!("result {i} missing version"))?;
        out.push_str("    {\n");
        out.push_str(&format!("      \"version\": {version},\n"));
        out.push_str(&format!("      \"inequality_id\": \"{}\",\n", get_str("inequality_id")?));
        out.push_str(&format!(
            "      \"instance_descriptor\": \"{}\",\n",
            json_escape(get_str("instance_descriptor")?)
        ));
        out.push_str(&format!("      \"lhs\": {},\n", fmt_f64(get_f64("lhs")?)));
        out.push_str(&format!("      \"lhs_error\": {},\n", fmt_f64(get_f64("lhs_error")?)));
        out.push_str(&format!("      \"rhs\": {},\n", fmt_f64(get_f64("rhs")?)));
        out.push_str(&format!("      \"rhs_error\": {},\n", fmt_f64(get_f64("rhs_error")?)));
        out.push_str(&format!("      \"ratio\": {},\n", fmt_f64(get_f64("ratio")?)));
        out.push_str(&format!("      \"verdict\": \"{}\"\n", get_str("verdict")?));
        out.push_str("    }");
        out.push_str(if i + 1 < results.len() { ",\n" } else { "\n" });
    }
    out.push_str("]\n");
    Ok(out)
}

/// Numeric drift check between two report documents.
///
/// Returns a list of human-readable drift descriptions; empty means the
/// reports agree within `tol` on every numeric field and exactly on
/// verdicts and identifiers.
pub fn drift_report(
    current: &serde_json::Value,
    baseline: &serde_json::Value,
    tol: f64,
) -> Vec<String> {
    let mut drifts = Vec::new();
    let empty = Vec::new();
    let current_results = current
        .get("results")
        .and_then(|v| v.as_array())
        .unwrap_or(&empty);
    let baseline_results = baseline
        .get("results")
        .and_then(|v| v.as_array())
        .unwrap_or(&empty);
    if current_results.len() != baseline_results.len() {
        drifts.push(format!(
            "result count differs: {} vs baseline {}",
            current_results.len(),
            baseline_results.len()
        ));
        return drifts;
    }
    for (i, (cur, base)) in current_results.iter().zip(baseline_results).enumerate() {
        for key in ["inequality_id", "instance_descriptor", "verdict"] {
            let a = cur.get(key).and_then(|v| v.as_str());
            let b = base.get(key).and_then(|v| v.as_str());
            if a != b {
                drifts.push(format!("result {i}: field '{key}' differs ({a:?} vs {b:?})"));
            }
        }
        for key in ["lhs", "lhs_error", "rhs", "rhs_error", "ratio"] {
            let a = cur.get(key).and_then(|v| v.as_f64()).unwrap_or(f64::NAN);
            let b = base.get(key).and_then(|v| v.as_f64()).unwrap_or(f64::NAN);
            // The negated form keeps NaN drift from passing silently.
            #[allow(clippy::neg_cmp_op_on_partial_ord)]
            if !((a - b).abs() <= tol) {
                drifts.push(format!(
                    "result {i}: field '{key}' drifts: {a} vs baseline {b} (tol {tol})"
                ));
            }
        }
    }
    drifts
}
