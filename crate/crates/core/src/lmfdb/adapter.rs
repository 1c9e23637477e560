//! Maps raw LMFDB exports (JSON, JSON Lines, or CSV with arbitrary column
//! names) onto [`RawRow`] using a TOML field map.
//!
//! ```toml
//! format = "jsonl"
//!
//! [fields]
//! label = "label"
//! g = "g"
//! q = "q"
//! poly = "poly"
//! p_rank = "p_rank"
//!
//! [fields.hyp_jacobian]
//! field = "has_hyp_jacobian"
//! kind = "tristate"
//! ```

use std::io::{BufRead, BufReader, Read};

use serde::Deserialize;
use serde_json::{Map, Value};

use super::record::{Ingested, RawRow};
use crate::error::{Error, Result};
use crate::rules::FactorCountConvention;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RawFormat {
    /// A top-level array, or an object holding the array under `records_key`.
    Json,
    Jsonl,
    Csv,
}

/// How a flag column encodes yes/no/unknown.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlagKind {
    /// `1` yes, `-1` no, `0` or null unknown.
    #[default]
    Tristate,
    /// true/false or 1/0.
    Boolean,
    /// A count of curves: positive yes, zero no.
    Count,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum FlagField {
    Name(String),
    Spec {
        field: String,
        #[serde(default)]
        kind: FlagKind,
    },
}

impl FlagField {
    fn parts(&self) -> (&str, FlagKind) {
        match self {
            FlagField::Name(n) => (n, FlagKind::Tristate),
            FlagField::Spec { field, kind } => (field, *kind),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorCountKind {
    #[default]
    Integer,
    /// Length of a list of factors.
    ListLength,
    /// Sum of a list of multiplicities.
    ListSum,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldMap {
    pub label: String,
    pub g: Option<String>,
    pub q: Option<String>,
    pub p: Option<String>,
    pub r: Option<String>,
    pub s: Option<String>,
    pub t: Option<String>,
    pub u: Option<String>,
    /// Full coefficient list of the Weil polynomial, in either order.
    pub poly: Option<String>,
    pub p_rank: Option<String>,
    pub factor_count: Option<String>,
    #[serde(default)]
    pub factor_count_kind: FactorCountKind,
    pub hyp_jacobian: Option<FlagField>,
    pub jacobian: Option<FlagField>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdapterConfig {
    pub format: RawFormat,
    #[serde(default = "default_records_key")]
    pub records_key: String,
    pub fields: FieldMap,
}

fn default_records_key() -> String {
    "data".to_string()
}

impl AdapterConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    /// Reads and validates every object of a raw export.
    pub fn ingest<R: Read>(&self, source: R, convention: FactorCountConvention) -> Result<Ingested> {
        let objects = self.objects(source)?;
        let mut out = Ingested::default();
        for object in objects {
            out.rows_read += 1;
            match self.map_object(&object)?.validate(convention)? {
                Some(record) => out.records.push(record),
                None => out.skipped_other_genus += 1,
            }
        }
        Ok(out)
    }

    fn objects<R: Read>(&self, source: R) -> Result<Vec<Map<String, Value>>> {
        let as_object = |v: Value| match v {
            Value::Object(m) => Ok(m),
            other => Err(Error::Schema(format!("expected an object, found {other}"))),
        };
        match self.format {
            RawFormat::Json => {
                let value: Value = serde_json::from_reader(source)?;
                let items = match value {
                    Value::Array(items) => items,
                    Value::Object(mut m) => match m.remove(&self.records_key) {
                        Some(Value::Array(items)) => items,
                        _ => return Err(Error::Schema(format!("no `{}` array in export", self.records_key))),
                    },
                    _ => return Err(Error::Schema("export is neither an array nor an object".to_string())),
                };
                items.into_iter().map(as_object).collect()
            }
            RawFormat::Jsonl => {
                let mut out = Vec::new();
                for line in BufReader::new(source).lines() {
                    let line = line?;
                    if !line.trim().is_empty() {
                        out.push(as_object(serde_json::from_str(&line)?)?);
                    }
                }
                Ok(out)
            }
            RawFormat::Csv => {
                let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(source);
                let headers = reader.headers()?.clone();
                let mut out = Vec::new();
                for row in reader.records() {
                    let row = row?;
                    let mut m = Map::new();
                    for (h, cell) in headers.iter().zip(row.iter()) {
                        let value = if cell.is_empty() {
                            Value::Null
                        } else if cell.starts_with('[') {
                            serde_json::from_str(cell)?
                        } else {
                            Value::String(cell.to_string())
                        };
                        m.insert(h.to_string(), value);
                    }
                    out.push(m);
                }
                Ok(out)
            }
        }
    }

    /// Applies the field map to one export object.
    pub fn map_object(&self, object: &Map<String, Value>) -> Result<RawRow> {
        let f = &self.fields;
        let label = match object.get(&f.label) {
            Some(Value::String(s)) => s.clone(),
            _ => return Err(Error::Schema(format!("object without string field `{}`", f.label))),
        };
        let get = |name: &Option<String>| name.as_ref().and_then(|n| object.get(n)).filter(|v| !v.is_null());
        let int = |name: &Option<String>| -> Result<Option<i128>> {
            get(name).map(|v| integer(&label, v)).transpose()
        };
        let narrow = |v: Option<i128>, column: &str| -> Result<Option<i64>> {
            v.map(|x| i64::try_from(x).map_err(|_| schema(&label, column, "out of range"))).transpose()
        };
        let g = narrow(int(&f.g)?, "g")?.map(|x| x as u32);
        let q = narrow(int(&f.q)?, "q")?.map(|x| x as u64);
        let weil_polynomial = get(&f.poly).map(|v| weil_from_list(&label, v)).transpose()?;
        let factor_count = match get(&f.factor_count) {
            None => None,
            Some(v) => Some(match f.factor_count_kind {
                FactorCountKind::Integer => integer(&label, v)?,
                FactorCountKind::ListLength => list(&label, v)?.len() as i128,
                FactorCountKind::ListSum => list(&label, v)?.iter().sum(),
            }),
        };
        let flag = |spec: &Option<FlagField>| -> Result<Option<bool>> {
            let Some(spec) = spec else { return Ok(None) };
            let (name, kind) = spec.parts();
            object.get(name).filter(|v| !v.is_null()).map_or(Ok(None), |v| decode_flag(&label, name, kind, v))
        };
        Ok(RawRow {
            g,
            q,
            p: narrow(int(&f.p)?, "p")?.map(|x| x as u64),
            r: narrow(int(&f.r)?, "r")?.map(|x| x as u32),
            s: narrow(int(&f.s)?, "s")?,
            t: narrow(int(&f.t)?, "t")?,
            u: narrow(int(&f.u)?, "u")?,
            weil_polynomial,
            p_rank: narrow(int(&f.p_rank)?, "p_rank")?.map(|x| x as u8),
            factor_count: narrow(factor_count, "factor_count")?.map(|x| x as u8),
            hyp_jacobian: flag(&f.hyp_jacobian)?,
            jacobian: flag(&f.jacobian)?,
            label,
        })
    }
}

fn schema(label: &str, column: &str, what: &str) -> Error {
    Error::Schema(format!("{label}: field `{column}` {what}"))
}

fn integer(label: &str, v: &Value) -> Result<i128> {
    match v {
        Value::Number(n) => n.as_i64().map(i128::from),
        Value::String(s) => s.trim().parse().ok(),
        Value::Bool(b) => Some(*b as i128),
        _ => None,
    }
    .ok_or_else(|| Error::Schema(format!("{label}: expected an integer, found {v}")))
}

fn list(label: &str, v: &Value) -> Result<Vec<i128>> {
    match v {
        Value::Array(items) => items.iter().map(|x| integer(label, x)).collect(),
        Value::String(s) => list(label, &serde_json::from_str(s)?),
        _ => Err(Error::Schema(format!("{label}: expected a list, found {v}"))),
    }
}

/// Accepts the 7 coefficients either constant-first or leading-first
/// (the latter is the L-polynomial order LMFDB uses) and normalizes to
/// constant-first. The monic end identifies the order.
fn weil_from_list(label: &str, v: &Value) -> Result<Vec<i128>> {
    let mut coeffs = list(label, v)?;
    if coeffs.len() != 7 {
        return Err(Error::Schema(format!("{label}: polynomial has {} coefficients, expected 7", coeffs.len())));
    }
    match (coeffs[0], coeffs[6]) {
        (_, 1) if coeffs[0] != 1 => {}
        (1, _) if coeffs[6] != 1 => coeffs.reverse(),
        _ => return Err(Error::Schema(format!("{label}: cannot tell the coefficient order of {v}"))),
    }
    Ok(coeffs)
}

fn decode_flag(label: &str, column: &str, kind: FlagKind, v: &Value) -> Result<Option<bool>> {
    let bad = || schema(label, column, &format!("has unexpected flag value {v}"));
    let n = match v {
        Value::Bool(b) => *b as i128,
        _ => integer(label, v).map_err(|_| bad())?,
    };
    match (kind, n) {
        (FlagKind::Tristate, 1) => Ok(Some(true)),
        (FlagKind::Tristate, -1) => Ok(Some(false)),
        (FlagKind::Tristate, 0) => Ok(None),
        (FlagKind::Boolean, 1) => Ok(Some(true)),
        (FlagKind::Boolean, 0) => Ok(Some(false)),
        (FlagKind::Count, n) if n >= 0 => Ok(Some(n > 0)),
        _ => Err(bad()),
    }
}
