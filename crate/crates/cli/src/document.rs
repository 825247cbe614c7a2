//! The `pro-kit/1` JSON document format.
//!
//! ```json
//! { "schema": "pro-kit/1", "kind": "state_space", "m": 1,
//!   "payload": { "M": [[0.0]], "D": [[0.0]], "A": [[0.0, 1.0], [-1.0, 0.0]], "B": [[1.0], [0.0]] },
//!   "meta": { "note": "z / (z^2 + 1)" } }
//! ```
//!
//! Matrices are row-major nested arrays; a matrix with no rows is `[]`.
//! Foster payloads carry `Q`, `R` and `terms: [{omega, Q, R}]`, descriptor
//! payloads carry `E`, `A`, `B`, `C`, `D`.

use std::collections::BTreeMap;
use std::fmt;

use prokit::{DescriptorRealization, FosterForm, FosterTerm, RealMatrix, StateSpaceRealization, TransferFunction};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: &str = "pro-kit/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Foster,
    StateSpace,
    Descriptor,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Foster => "foster",
            Kind::StateSpace => "state_space",
            Kind::Descriptor => "descriptor",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocumentEnvelope {
    pub schema: String,
    pub kind: Kind,
    pub m: usize,
    pub payload: Value,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, Value>,
}

type Rows = Vec<Vec<f64>>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FosterPayload {
    #[serde(rename = "Q")]
    q: Rows,
    #[serde(rename = "R")]
    r: Rows,
    #[serde(default)]
    terms: Vec<TermPayload>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermPayload {
    omega: f64,
    #[serde(rename = "Q")]
    q: Rows,
    #[serde(rename = "R")]
    r: Rows,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateSpacePayload {
    #[serde(rename = "M")]
    m: Rows,
    #[serde(rename = "D")]
    d: Rows,
    #[serde(rename = "A")]
    a: Rows,
    #[serde(rename = "B")]
    b: Rows,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DescriptorPayload {
    #[serde(rename = "E")]
    e: Rows,
    #[serde(rename = "A")]
    a: Rows,
    #[serde(rename = "B")]
    b: Rows,
    #[serde(rename = "C")]
    c: Rows,
    #[serde(rename = "D")]
    d: Rows,
}

/// A parsed document body.
#[derive(Clone, Debug, PartialEq)]
pub enum Function {
    Foster(FosterForm),
    StateSpace(StateSpaceRealization),
    Descriptor(DescriptorRealization),
}

impl Function {
    pub fn kind(&self) -> Kind {
        match self {
            Function::Foster(_) => Kind::Foster,
            Function::StateSpace(_) => Kind::StateSpace,
            Function::Descriptor(_) => Kind::Descriptor,
        }
    }

    pub fn ports(&self) -> usize {
        self.as_transfer().ports()
    }

    pub fn as_transfer(&self) -> &dyn TransferFunction {
        match self {
            Function::Foster(f) => f,
            Function::StateSpace(r) => r,
            Function::Descriptor(d) => d,
        }
    }

    /// State dimension, or the summed pole count for Foster data.
    pub fn states(&self) -> Option<usize> {
        match self {
            Function::Foster(_) => None,
            Function::StateSpace(r) => Some(r.states()),
            Function::Descriptor(d) => Some(d.states()),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema {0:?}, expected {SCHEMA:?}")]
    Schema(String),
    #[error("{path}: {message}")]
    Shape { path: String, message: String },
}

fn shape_error(path: &str, message: impl Into<String>) -> DocumentError {
    DocumentError::Shape { path: path.to_string(), message: message.into() }
}

/// Builds a matrix with `cols` columns and `rows` rows (when given).
fn matrix(data: &Rows, rows: Option<usize>, cols: usize, path: &str) -> Result<RealMatrix, DocumentError> {
    if let Some(r) = rows {
        if data.len() != r {
            return Err(shape_error(path, format!("expected {r} rows, found {}", data.len())));
        }
    }
    for (i, row) in data.iter().enumerate() {
        if row.len() != cols {
            return Err(shape_error(path, format!("row {i} has {} entries, expected {cols}", row.len())));
        }
    }
    Ok(RealMatrix::from_fn(data.len(), cols, |i, j| data[i][j]))
}

fn square(data: &Rows, path: &str) -> Result<RealMatrix, DocumentError> {
    matrix(data, None, data.len(), path)
}

fn rows(x: &RealMatrix) -> Rows {
    x.row_iter().map(|r| r.iter().copied().collect()).collect()
}

impl DocumentEnvelope {
    pub fn new(function: &Function, meta: BTreeMap<String, Value>) -> Self {
        let payload = match function {
            Function::Foster(f) => serde_json::to_value(FosterPayload {
                q: rows(&f.q),
                r: rows(&f.r),
                terms: f
                    .terms
                    .iter()
                    .map(|t| TermPayload { omega: t.omega, q: rows(&t.q), r: rows(&t.r) })
                    .collect(),
            }),
            Function::StateSpace(r) => serde_json::to_value(StateSpacePayload {
                m: rows(&r.m),
                d: rows(&r.d),
                a: rows(&r.a),
                b: rows(&r.b),
            }),
            Function::Descriptor(d) => serde_json::to_value(DescriptorPayload {
                e: rows(&d.e),
                a: rows(&d.a),
                b: rows(&d.b),
                c: rows(&d.c),
                d: rows(&d.d),
            }),
        }
        .expect("payload structs serialize");
        DocumentEnvelope { schema: SCHEMA.to_string(), kind: function.kind(), m: function.ports(), payload, meta }
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let doc: DocumentEnvelope = serde_json::from_str(text)?;
        if doc.schema != SCHEMA {
            return Err(DocumentError::Schema(doc.schema));
        }
        Ok(doc)
    }

    /// Pretty-printed JSON with a trailing newline. Numbers use the shortest
    /// representation that round-trips, so re-serializing a parsed document
    /// reproduces it byte for byte.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("documents serialize");
        out.push('\n');
        out
    }

    /// Decodes the payload according to `kind`, checking every shape against `m`.
    pub fn function(&self) -> Result<Function, DocumentError> {
        let m = self.m;
        match self.kind {
            Kind::Foster => {
                let p: FosterPayload = payload(&self.payload)?;
                let terms = p
                    .terms
                    .iter()
                    .enumerate()
                    .map(|(j, t)| {
                        Ok(FosterTerm::new(
                            t.omega,
                            matrix(&t.q, Some(m), m, &format!("payload.terms[{j}].Q"))?,
                            matrix(&t.r, Some(m), m, &format!("payload.terms[{j}].R"))?,
                        ))
                    })
                    .collect::<Result<Vec<_>, DocumentError>>()?;
                Ok(Function::Foster(FosterForm::new(
                    matrix(&p.q, Some(m), m, "payload.Q")?,
                    matrix(&p.r, Some(m), m, "payload.R")?,
                    terms,
                )))
            }
            Kind::StateSpace => {
                let p: StateSpacePayload = payload(&self.payload)?;
                let a = square(&p.a, "payload.A")?;
                let n = a.nrows();
                Ok(Function::StateSpace(StateSpaceRealization::new(
                    matrix(&p.m, Some(m), m, "payload.M")?,
                    matrix(&p.d, Some(m), m, "payload.D")?,
                    a,
                    matrix(&p.b, Some(n), m, "payload.B")?,
                )))
            }
            Kind::Descriptor => {
                let p: DescriptorPayload = payload(&self.payload)?;
                let e = square(&p.e, "payload.E")?;
                let n = e.nrows();
                Ok(Function::Descriptor(DescriptorRealization::new(
                    e,
                    matrix(&p.a, Some(n), n, "payload.A")?,
                    matrix(&p.b, Some(n), m, "payload.B")?,
                    matrix(&p.c, Some(n), m, "payload.C")?,
                    matrix(&p.d, Some(m), m, "payload.D")?,
                )))
            }
        }
    }
}

fn payload<T: for<'de> Deserialize<'de>>(value: &Value) -> Result<T, DocumentError> {
    serde_json::from_value(value.clone()).map_err(|e| shape_error("payload", e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use prokit::matlin::{skew_block, zeros};

    fn oscillator() -> Function {
        Function::StateSpace(StateSpaceRealization::new(
            zeros(1, 1),
            zeros(1, 1),
            skew_block(1.0, 1),
            RealMatrix::from_column_slice(2, 1, &[1.0, 0.0]),
        ))
    }

    #[test]
    fn round_trip_every_kind() {
        let foster = Function::Foster(FosterForm::new(
            RealMatrix::identity(2, 2),
            zeros(2, 2),
            vec![FosterTerm::new(0.1 + 0.2, RealMatrix::identity(2, 2) * (1.0 / 3.0), zeros(2, 2))],
        ));
        let descriptor = Function::Descriptor(DescriptorRealization::new(
            RealMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0]),
            RealMatrix::identity(2, 2),
            RealMatrix::from_column_slice(2, 1, &[1.0, 2.0]),
            RealMatrix::from_column_slice(2, 1, &[1.0, 2.0]),
            zeros(1, 1),
        ));
        for f in [foster, oscillator(), descriptor] {
            let mut meta = BTreeMap::new();
            meta.insert("seed".to_string(), Value::from(7));
            let doc = DocumentEnvelope::new(&f, meta);
            let text = doc.to_json();
            let back = DocumentEnvelope::parse(&text).unwrap();
            assert_eq!(back, doc);
            assert_eq!(back.function().unwrap(), f);
            assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn empty_state_space_has_empty_arrays() {
        let f = Function::StateSpace(StateSpaceRealization::new(
            RealMatrix::identity(2, 2),
            zeros(2, 2),
            zeros(0, 0),
            zeros(0, 2),
        ));
        let doc = DocumentEnvelope::new(&f, BTreeMap::new());
        assert_eq!(doc.payload["A"], serde_json::json!([]));
        assert_eq!(DocumentEnvelope::parse(&doc.to_json()).unwrap().function().unwrap(), f);
    }

    #[test]
    fn shape_errors_name_the_field() {
        let text = r#"{"schema": "pro-kit/1", "kind": "state_space", "m": 1,
            "payload": {"M": [[0.0]], "D": [[0.0]], "A": [[0.0, 1.0], [-1.0, 0.0]], "B": [[1.0, 0.0], [0.0, 1.0]]}}"#;
        let err = DocumentEnvelope::parse(text).unwrap().function().unwrap_err();
        assert!(err.to_string().starts_with("payload.B: row 0"), "{err}");
        let wrong = text.replace("pro-kit/1", "pro-kit/0");
        assert!(matches!(DocumentEnvelope::parse(&wrong), Err(DocumentError::Schema(_))));
        let truncated = &text[..40];
        let err = DocumentEnvelope::parse(truncated).unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");
    }
}
