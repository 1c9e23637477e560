//! LMFDB labels, record ingest, and the soundness audit.

mod adapter;
mod audit;
mod label;
mod record;

pub use adapter::{AdapterConfig, FactorCountKind, FieldMap, FlagField, FlagKind, RawFormat};
pub use audit::{audit, classify_all, AuditReport, FalsePositive};
pub use label::{decode_label, decode_token, encode_label, encode_token, LabelParts};
pub use record::{
    factor_count, parse_records, write_records, IngestSummary, Ingested, IsogenyRecord, RawRow,
    RecordReader, NORMALIZED_COLUMNS,
};
