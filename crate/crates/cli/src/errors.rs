//! CLI error classification: every failure carries a machine-readable kind
//! mirroring the library error names, emitted as JSON on stderr.
//!
//! Exit codes: 0 success, 1 invariant failure (a mathematical check that
//! should have held did not), 2 input error.

use toricdyn_core::dynamics::DynError;
use toricdyn_core::fan::FanError;
use toricdyn_core::io::IoError;
use toricdyn_core::linalg::LinalgError;
use toricdyn_core::weight::WeightError;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unreadable/invalid input files (exit 2).
    Input { kind: String, message: String },
    /// A mathematical invariant failed (exit 1).
    Invariant {
        kind: String,
        message: String,
        detail: serde_json::Value,
    },
}

impl CliError {
    pub fn input(kind: &str, message: impl Into<String>) -> CliError {
        CliError::Input {
            kind: kind.to_string(),
            message: message.into(),
        }
    }

    pub fn invariant(kind: &str, message: impl Into<String>, detail: serde_json::Value) -> CliError {
        CliError::Invariant {
            kind: kind.to_string(),
            message: message.into(),
            detail,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input { .. } => 2,
            CliError::Invariant { .. } => 1,
        }
    }

    pub fn to_stderr_json(&self) -> serde_json::Value {
        match self {
            CliError::Input { kind, message } => serde_json::json!({
                "kind": kind,
                "message": message,
            }),
            CliError::Invariant { kind, message, detail } => serde_json::json!({
                "kind": kind,
                "message": message,
                "detail": detail,
            }),
        }
    }
}

pub fn linalg_kind(e: &LinalgError) -> &'static str {
    match e {
        LinalgError::Singular => "SINGULAR",
        LinalgError::KOutOfRange { .. } => "K_OUT_OF_RANGE",
        LinalgError::SizeMismatch | LinalgError::BadIndexSet => "BAD_INDEX_SET",
        _ => "DIMENSION_MISMATCH",
    }
}

pub fn fan_kind(e: &FanError) -> &'static str {
    match e {
        FanError::NotStronglyConvex => "NOT_STRONGLY_CONVEX",
        FanError::Singular => "SINGULAR",
        FanError::DimensionGap => "DIMENSION_GAP",
        FanError::NotAFace => "NOT_A_FACE",
        FanError::MeetDimContract => "MEET_DIM_CONTRACT",
        FanError::NotComplete => "NOT_COMPLETE",
        FanError::DimensionMismatch => "DIMENSION_MISMATCH",
        FanError::Linalg(inner) => linalg_kind(inner),
    }
}

pub fn weight_kind(e: &WeightError) -> &'static str {
    match e {
        WeightError::UnsupportedTarget => "UNSUPPORTED_TARGET",
        WeightError::Incompatible => "INCOMPATIBLE",
        WeightError::GenericityFailure => "GENERICITY_FAILURE",
        WeightError::Exhausted { .. } => "EXHAUSTED",
        WeightError::FanMismatch | WeightError::CodimMismatch | WeightError::CoverageMismatch { .. } => {
            "WEIGHT_MISMATCH"
        }
        WeightError::Fan(inner) => fan_kind(inner),
        WeightError::Linalg(inner) => linalg_kind(inner),
    }
}

pub fn dyn_kind(e: &DynError) -> &'static str {
    match e {
        DynError::Singular => "SINGULAR",
        DynError::NotSquare => "DIMENSION_MISMATCH",
        DynError::KOutOfRange { .. } => "K_OUT_OF_RANGE",
        DynError::LmaxTooSmall(_) => "INPUT",
        DynError::CremonaMismatch { .. } => "CREMONA_MISMATCH",
        DynError::Weight(inner) => weight_kind(inner),
        DynError::Fan(inner) => fan_kind(inner),
        DynError::Linalg(inner) => linalg_kind(inner),
    }
}

pub fn io_kind(e: &IoError) -> &'static str {
    match e {
        IoError::Parse(_) | IoError::Json(_) => "INPUT",
        IoError::Fan(inner) => fan_kind(inner),
        IoError::Weight(inner) => weight_kind(inner),
        IoError::Linalg(inner) => linalg_kind(inner),
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        CliError::input(io_kind(&e), e.to_string())
    }
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        CliError::input(linalg_kind(&e), e.to_string())
    }
}

impl From<FanError> for CliError {
    fn from(e: FanError) -> Self {
        CliError::input(fan_kind(&e), e.to_string())
    }
}

impl From<WeightError> for CliError {
    fn from(e: WeightError) -> Self {
        match &e {
            WeightError::GenericityFailure | WeightError::Exhausted { .. } => {
                CliError::invariant(weight_kind(&e), e.to_string(), serde_json::Value::Null)
            }
            _ => CliError::input(weight_kind(&e), e.to_string()),
        }
    }
}

impl From<DynError> for CliError {
    fn from(e: DynError) -> Self {
        match &e {
            DynError::CremonaMismatch { computed, expected } => CliError::invariant(
                "CREMONA_MISMATCH",
                e.to_string(),
                serde_json::json!({
                    "computed": computed.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "expected": expected.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                }),
            ),
            DynError::Weight(w @ WeightError::GenericityFailure)
            | DynError::Weight(w @ WeightError::Exhausted { .. }) => {
                CliError::invariant(weight_kind(w), e.to_string(), serde_json::Value::Null)
            }
            _ => CliError::input(dyn_kind(&e), e.to_string()),
        }
    }
}
