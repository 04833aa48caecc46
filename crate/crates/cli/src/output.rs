//! Output helpers: stable JSON with integers as decimal strings, plain
//! tables, and file-or-stdout writing.

use std::path::Path;

use toricdyn_core::dynamics::{DegreeReport, GrowthFit, PullbackMatrix};
use toricdyn_core::Int;

use crate::errors::CliError;

pub fn int_strings(values: &[Int]) -> Vec<String> {
    values.iter().map(|x| x.to_string()).collect()
}

/// Pullback matrix as JSON: rows of decimal strings plus the basis labels
/// (1-based subsets) so matrices are comparable across runs.
pub fn pullback_matrix_json(p: &PullbackMatrix) -> serde_json::Value {
    let rows: Vec<Vec<String>> = (0..p.size())
        .map(|r| {
            (0..p.size())
                .map(|c| p.matrix.at(r, c).to_string())
                .collect()
        })
        .collect();
    let basis: Vec<Vec<usize>> = p
        .subsets
        .iter()
        .map(|s| s.iter().map(|i| i + 1).collect())
        .collect();
    serde_json::json!({
        "k": p.k,
        "basis_subsets": basis,
        "entries": rows,
    })
}

pub fn degree_report_json(r: &DegreeReport, _log2: bool) -> serde_json::Value {
    // JSON always carries both entropy fields; --log2 only affects the table
    let mut value = serde_json::json!({
        "lambdas": r.lambdas,
        "moduli": r.moduli,
        "entropy": r.entropy,
        "entropy_log2": r.entropy_log2,
        "norm_growth": r.growth,
        "pullback_matrices": r.pullback_matrices.iter().map(pullback_matrix_json).collect::<Vec<_>>(),
    });
    if let Some(fits) = &r.degree_growth {
        value["degree_growth"] = serde_json::Value::Array(fits.iter().map(growth_fit_json).collect());
    }
    value
}

pub fn degree_report_table(r: &DegreeReport, log2: bool) -> String {
    let mut out = String::new();
    out.push_str("k      lambda_k\n");
    for (k, l) in r.lambdas.iter().enumerate() {
        out.push_str(&format!("{:<6} {}\n", k, l));
    }
    if log2 {
        out.push_str(&format!("entropy (log2) = {}\n", r.entropy_log2));
    } else {
        out.push_str(&format!("entropy = {}\n", r.entropy));
    }
    out
}

pub fn growth_fit_json(g: &GrowthFit) -> serde_json::Value {
    serde_json::json!({
        "k": g.k,
        "degrees": int_strings(&g.values),
        "lambda_k": g.lambda_k,
        "fitted_base": g.fitted_base,
        "fitted_order": g.fitted_order,
        "degenerate": g.degenerate,
    })
}

pub fn growth_fit_table(g: &GrowthFit) -> String {
    let mut out = String::new();
    out.push_str("l      deg_k(f^l)\n");
    for (i, v) in g.values.iter().enumerate() {
        out.push_str(&format!("{:<6} {}\n", i + 1, v));
    }
    out.push_str(&format!(
        "lambda_k = {}  fitted_base = {}  fitted_order = {}{}\n",
        g.lambda_k,
        g.fitted_base,
        g.fitted_order,
        if g.degenerate { "  (degenerate fit)" } else { "" }
    ));
    out
}

/// Write to `--out` when given, stdout otherwise.
pub fn emit(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::input("INPUT", format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::input("INPUT", format!("cannot read {}: {e}", path.display())))
}
