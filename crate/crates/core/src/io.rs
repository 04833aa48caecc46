//! File formats: integer matrices (JSON and plain text), fans, and
//! Minkowski weights.
//!
//! Matrix JSON is an array of row arrays whose entries are decimal strings
//! (big-int safe); plain JSON numbers are also accepted on input. The plain
//! text form is the dimension on the first line followed by the rows.
//! Fan JSON lists the maximal cones only; faces are rebuilt on load.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fan::{make_cone, Fan, FanError};
use crate::weight::{MinkowskiWeight, WeightError};
use crate::{Int, IntMatrix, LatticeVector};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Linalg(#[from] crate::linalg::LinalgError),
}

// ---- matrices ----

/// Parse a matrix from JSON: rows of decimal strings or plain integers.
pub fn matrix_from_json(input: &str) -> Result<IntMatrix, IoError> {
    let value: serde_json::Value = serde_json::from_str(input)?;
    let rows = value
        .as_array()
        .ok_or_else(|| IoError::Parse("expected a JSON array of rows".into()))?;
    let mut out: Vec<Vec<Int>> = Vec::with_capacity(rows.len());
    for row in rows {
        let entries = row
            .as_array()
            .ok_or_else(|| IoError::Parse("expected each row to be an array".into()))?;
        let mut r = Vec::with_capacity(entries.len());
        for e in entries {
            r.push(json_int(e)?);
        }
        out.push(r);
    }
    Ok(IntMatrix::from_rows(out)?)
}

fn json_int(value: &serde_json::Value) -> Result<Int, IoError> {
    match value {
        serde_json::Value::String(s) => {
            Int::from_str(s.trim()).map_err(|e| IoError::Parse(format!("bad integer {s:?}: {e}")))
        }
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Int::from(i))
            } else {
                Err(IoError::Parse(format!("non-integer number {n}")))
            }
        }
        other => Err(IoError::Parse(format!("expected integer, got {other}"))),
    }
}

/// Serialize a matrix as rows of decimal strings.
pub fn matrix_to_json(m: &IntMatrix) -> serde_json::Value {
    serde_json::Value::Array(
        (0..m.rows())
            .map(|r| {
                serde_json::Value::Array(
                    (0..m.cols())
                        .map(|c| serde_json::Value::String(m.at(r, c).to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

/// Plain text: first line the dimension n, then n rows of n integers.
pub fn matrix_from_text(input: &str) -> Result<IntMatrix, IoError> {
    let mut lines = input.lines().filter(|l| !l.trim().is_empty());
    let n: usize = lines
        .next()
        .ok_or_else(|| IoError::Parse("empty matrix file".into()))?
        .trim()
        .parse()
        .map_err(|e| IoError::Parse(format!("bad dimension line: {e}")))?;
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| IoError::Parse(format!("expected {n} rows")))?;
        let row: Result<Vec<Int>, IoError> = line
            .split_whitespace()
            .map(|t| Int::from_str(t).map_err(|e| IoError::Parse(format!("bad entry {t:?}: {e}"))))
            .collect();
        let row = row?;
        if row.len() != n {
            return Err(IoError::Parse(format!(
                "expected {n} entries per row, got {}",
                row.len()
            )));
        }
        rows.push(row);
    }
    Ok(IntMatrix::from_rows(rows)?)
}

pub fn matrix_to_text(m: &IntMatrix) -> String {
    let mut out = format!("{}\n", m.rows());
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|c| m.at(r, c).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Sniff the format: JSON if the first non-space byte is '[', else text.
pub fn matrix_from_str(input: &str) -> Result<IntMatrix, IoError> {
    if input.trim_start().starts_with('[') {
        matrix_from_json(input)
    } else {
        matrix_from_text(input)
    }
}

// ---- fans ----

#[derive(Serialize, Deserialize)]
struct FanDto {
    rank: usize,
    cones: Vec<ConeDto>,
}

#[derive(Serialize, Deserialize)]
struct ConeDto {
    generators: Vec<Vec<i64>>,
}

/// Fan JSON: `{ "rank": n, "cones": [ { "generators": [[..]] } ] }`,
/// maximal cones only.
pub fn fan_to_json(fan: &Fan) -> Result<serde_json::Value, IoError> {
    let cones: Result<Vec<ConeDto>, IoError> = fan
        .maximal_cones()
        .map(|c| {
            let generators: Result<Vec<Vec<i64>>, IoError> = c
                .generators()
                .iter()
                .map(|g| {
                    g.iter()
                        .map(|x| {
                            x.to_i64().ok_or_else(|| {
                                IoError::Parse(format!("generator entry {x} exceeds i64"))
                            })
                        })
                        .collect()
                })
                .collect();
            Ok(ConeDto {
                generators: generators?,
            })
        })
        .collect();
    Ok(serde_json::to_value(FanDto {
        rank: fan.rank(),
        cones: cones?,
    })?)
}

/// Load a fan from JSON, rebuilding the face closure.
pub fn fan_from_json(input: &str) -> Result<Fan, IoError> {
    let dto: FanDto = serde_json::from_str(input)?;
    let mut maximal = Vec::with_capacity(dto.cones.len());
    for c in &dto.cones {
        let gens: Vec<LatticeVector> = c
            .generators
            .iter()
            .map(|g| g.iter().map(|&x| Int::from(x)).collect())
            .collect();
        maximal.push(make_cone(dto.rank, &gens)?);
    }
    Ok(Fan::from_maximal(dto.rank, maximal)?)
}

// ---- weights ----

#[derive(Serialize, Deserialize)]
struct WeightDto {
    codim: usize,
    values: Vec<WeightEntryDto>,
}

#[derive(Serialize, Deserialize)]
struct WeightEntryDto {
    cone: Vec<Vec<i64>>,
    value: String,
}

/// Weight JSON: `{ "codim": k, "values": [ { "cone": [[gens]], "value": "int" } ] }`.
pub fn weight_to_json(w: &MinkowskiWeight) -> Result<serde_json::Value, IoError> {
    let mut values = Vec::with_capacity(w.values().len());
    for (key, value) in w.values() {
        let cone: Result<Vec<Vec<i64>>, IoError> = key
            .iter()
            .map(|g| {
                g.iter()
                    .map(|x| {
                        x.to_i64()
                            .ok_or_else(|| IoError::Parse(format!("generator {x} exceeds i64")))
                    })
                    .collect()
            })
            .collect();
        values.push(WeightEntryDto {
            cone: cone?,
            value: value.to_string(),
        });
    }
    Ok(serde_json::to_value(WeightDto {
        codim: w.codim(),
        values,
    })?)
}

/// Load a weight over a known fan; cone keys are canonicalized through
/// `make_cone`, and coverage of the codimension-k cones is enforced.
pub fn weight_from_json(input: &str, fan: &Arc<Fan>) -> Result<MinkowskiWeight, IoError> {
    let dto: WeightDto = serde_json::from_str(input)?;
    let mut values: BTreeMap<_, _> = BTreeMap::new();
    for entry in &dto.values {
        let gens: Vec<LatticeVector> = entry
            .cone
            .iter()
            .map(|g| g.iter().map(|&x| Int::from(x)).collect())
            .collect();
        let cone = make_cone(fan.rank(), &gens)?;
        let value = Int::from_str(entry.value.trim())
            .map_err(|e| IoError::Parse(format!("bad weight value {:?}: {e}", entry.value)))?;
        values.insert(cone.key().clone(), value);
    }
    Ok(MinkowskiWeight::new(fan.clone(), dto.codim, values)?)
}
