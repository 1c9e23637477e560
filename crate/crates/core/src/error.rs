use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("field cardinality {0} is too large for the fixed-width kernel")]
    FieldTooLarge(u64),

    #[error("power-sum index must be at least 1")]
    ZeroPowerIndex,

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("(s, t, u) = ({s}, {t}, {u}) is not a Weil polynomial over F_{q}")]
    NotWeil { q: u64, s: i64, t: i64, u: i64 },

    #[error("type vector requires a real Weil polynomial with three linear factors")]
    NotThreeLinear,

    #[error("resultant needs two polynomials of degree at least 1")]
    DegenerateResultant,

    #[error("unknown rule id `{0}`")]
    UnknownRule(String),

    #[error("unknown interpretation `{0}`")]
    UnknownInterpretation(String),

    #[error("malformed label `{label}`: {reason}")]
    MalformedLabel { label: String, reason: String },

    #[error("record {label}: column `{field}` is {found} but recomputed value is {expected}")]
    RecordMismatch { label: String, field: &'static str, found: String, expected: String },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("no records for q = {0}")]
    NoRecords(u64),

    #[error("record {0} has no hyperelliptic-Jacobian flag")]
    MissingFlag(String),

    #[error("dataset admissibility requested but no records are loaded")]
    DatasetNotLoaded,

    #[error("genus {0} is not supported (expected 1, 2 or 3)")]
    UnsupportedGenus(u32),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Toml(#[from] toml::de::Error),
}
