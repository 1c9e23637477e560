use std::collections::HashMap;
use std::io::{Read, Write};

use serde::Serialize;

use super::label::{decode_label, encode_label};
use crate::error::{Error, Result};
use crate::rules::FactorCountConvention;
use crate::weil::{is_weil_root_locus, FieldParams, Profile, WeilCoeffs};

/// Columns of the normalized interchange format, in order.
pub const NORMALIZED_COLUMNS: [&str; 11] =
    ["label", "q", "p", "r", "s", "t", "u", "p_rank", "factor_count", "hyp_jacobian", "jacobian"];

/// One validated genus-3 isogeny class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsogenyRecord {
    pub label: String,
    pub g: u32,
    pub field: FieldParams,
    pub coeffs: WeilCoeffs,
    pub p_rank: u8,
    pub factor_count: u8,
    pub hyp_jacobian: Option<bool>,
    pub jacobian: Option<bool>,
    profile: Profile,
}

impl IsogenyRecord {
    /// Builds a record from coefficients, computing every derived column.
    pub fn from_coeffs(
        coeffs: WeilCoeffs,
        convention: FactorCountConvention,
        hyp_jacobian: Option<bool>,
        jacobian: Option<bool>,
    ) -> Result<Self> {
        let profile = Profile::new(coeffs)?;
        Ok(Self {
            label: encode_label(3, coeffs.field.q(), &[coeffs.s, coeffs.t, coeffs.u]),
            g: 3,
            field: coeffs.field,
            coeffs,
            p_rank: profile.p_rank,
            factor_count: factor_count(&profile, convention),
            hyp_jacobian,
            jacobian,
            profile,
        })
    }

    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }
}

pub fn factor_count(profile: &Profile, convention: FactorCountConvention) -> u8 {
    match convention {
        FactorCountConvention::Multiplicity => profile.shape.factor_count(),
        FactorCountConvention::Distinct => profile.shape.distinct_factor_count(),
    }
}

/// Columns of one source row before validation. `None` means unknown.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawRow {
    pub label: String,
    pub g: Option<u32>,
    pub q: Option<u64>,
    pub p: Option<u64>,
    pub r: Option<u32>,
    pub s: Option<i64>,
    pub t: Option<i64>,
    pub u: Option<i64>,
    /// Full Weil polynomial, constant term first.
    pub weil_polynomial: Option<Vec<i128>>,
    pub p_rank: Option<u8>,
    pub factor_count: Option<u8>,
    pub hyp_jacobian: Option<bool>,
    pub jacobian: Option<bool>,
}

fn check<T: PartialEq + ToString>(label: &str, field: &'static str, found: Option<T>, expected: T) -> Result<()> {
    match found {
        Some(v) if v != expected => Err(Error::RecordMismatch {
            label: label.to_string(),
            field,
            found: v.to_string(),
            expected: expected.to_string(),
        }),
        _ => Ok(()),
    }
}

impl RawRow {
    /// Validates the row against the label and recomputed invariants.
    /// Returns `Ok(None)` for rows of another dimension.
    pub fn validate(self, convention: FactorCountConvention) -> Result<Option<IsogenyRecord>> {
        let parts = decode_label(&self.label)?;
        let label = self.label.as_str();
        check(label, "g", self.g, parts.g)?;
        if parts.g != 3 {
            return Ok(None);
        }
        let field = FieldParams::from_q(parts.q)?;
        check(label, "q", self.q, field.q())?;
        check(label, "p", self.p, field.p())?;
        check(label, "r", self.r, field.r())?;
        let [s, t, u] = [parts.coeffs[0], parts.coeffs[1], parts.coeffs[2]];
        check(label, "s", self.s, s)?;
        check(label, "t", self.t, t)?;
        check(label, "u", self.u, u)?;
        let coeffs = WeilCoeffs::new(field, s, t, u);
        if let Some(poly) = &self.weil_polynomial {
            let expected = coeffs.weil_polynomial();
            if poly.as_slice() != expected.as_slice() {
                return Err(Error::RecordMismatch {
                    label: label.to_string(),
                    field: "poly",
                    found: format!("{poly:?}"),
                    expected: format!("{expected:?}"),
                });
            }
        }
        if !is_weil_root_locus(&coeffs) {
            return Err(Error::RecordMismatch {
                label: label.to_string(),
                field: "label",
                found: format!("({s}, {t}, {u})"),
                expected: "a Weil polynomial".to_string(),
            });
        }
        let record = IsogenyRecord::from_coeffs(coeffs, convention, self.hyp_jacobian, self.jacobian)?;
        check(label, "p_rank", self.p_rank, record.p_rank)?;
        check(label, "factor_count", self.factor_count, record.factor_count)?;
        Ok(Some(IsogenyRecord { label: self.label, ..record }))
    }
}

fn parse_cell<T: std::str::FromStr>(label: &str, column: &str, cell: &str) -> Result<Option<T>> {
    let cell = cell.trim();
    if cell.is_empty() {
        return Ok(None);
    }
    cell.parse()
        .map(Some)
        .map_err(|_| Error::Schema(format!("{label}: column `{column}` has unparseable value `{cell}`")))
}

fn parse_flag(label: &str, column: &str, cell: &str) -> Result<Option<bool>> {
    match cell.trim() {
        "" => Ok(None),
        "1" | "true" | "True" => Ok(Some(true)),
        "0" | "false" | "False" => Ok(Some(false)),
        other => Err(Error::Schema(format!("{label}: column `{column}` is not a 0/1 flag: `{other}`"))),
    }
}

/// Streaming reader over the normalized CSV format.
pub struct RecordReader<R: Read> {
    rows: csv::StringRecordsIntoIter<R>,
    index: HashMap<String, usize>,
    convention: FactorCountConvention,
    /// Rows seen so far, including skipped ones.
    pub rows_read: u64,
    /// Rows skipped because their dimension is not 3.
    pub skipped_other_genus: u64,
}

impl<R: Read> RecordReader<R> {
    pub fn new(source: R, convention: FactorCountConvention) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).flexible(false).from_reader(source);
        let headers = reader.headers()?.clone();
        let mut index = HashMap::new();
        for (i, name) in headers.iter().enumerate() {
            if !NORMALIZED_COLUMNS.contains(&name) {
                return Err(Error::Schema(format!("unknown column `{name}`")));
            }
            if index.insert(name.to_string(), i).is_some() {
                return Err(Error::Schema(format!("duplicate column `{name}`")));
            }
        }
        if !index.contains_key("label") && !headers.is_empty() {
            return Err(Error::Schema("missing `label` column".to_string()));
        }
        Ok(Self { rows: reader.into_records(), index, convention, rows_read: 0, skipped_other_genus: 0 })
    }

    fn raw_row(&self, row: &csv::StringRecord) -> Result<RawRow> {
        let cell = |name: &str| self.index.get(name).and_then(|&i| row.get(i)).unwrap_or("");
        let label = cell("label").to_string();
        let l = label.as_str();
        Ok(RawRow {
            g: None,
            q: parse_cell(l, "q", cell("q"))?,
            p: parse_cell(l, "p", cell("p"))?,
            r: parse_cell(l, "r", cell("r"))?,
            s: parse_cell(l, "s", cell("s"))?,
            t: parse_cell(l, "t", cell("t"))?,
            u: parse_cell(l, "u", cell("u"))?,
            weil_polynomial: None,
            p_rank: parse_cell(l, "p_rank", cell("p_rank"))?,
            factor_count: parse_cell(l, "factor_count", cell("factor_count"))?,
            hyp_jacobian: parse_flag(l, "hyp_jacobian", cell("hyp_jacobian"))?,
            jacobian: parse_flag(l, "jacobian", cell("jacobian"))?,
            label,
        })
    }
}

impl<R: Read> Iterator for RecordReader<R> {
    type Item = Result<IsogenyRecord>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let row = match self.rows.next()? {
                Ok(row) => row,
                Err(e) => return Some(Err(e.into())),
            };
            self.rows_read += 1;
            let validated = self.raw_row(&row).and_then(|raw| raw.validate(self.convention));
            match validated {
                Ok(Some(record)) => return Some(Ok(record)),
                Ok(None) => self.skipped_other_genus += 1,
                Err(e) => return Some(Err(e)),
            }
        }
    }
}

/// Outcome of reading a whole source.
#[derive(Debug, Clone, Default)]
pub struct Ingested {
    pub records: Vec<IsogenyRecord>,
    pub rows_read: u64,
    pub skipped_other_genus: u64,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct IngestSummary {
    pub rows_read: u64,
    pub records: u64,
    pub skipped_other_genus: u64,
    pub with_hyp_flag: u64,
    pub per_q: Vec<(u64, u64)>,
}

impl Ingested {
    pub fn summary(&self) -> IngestSummary {
        let mut per_q = std::collections::BTreeMap::<u64, u64>::new();
        for r in &self.records {
            *per_q.entry(r.q()).or_default() += 1;
        }
        IngestSummary {
            rows_read: self.rows_read,
            records: self.records.len() as u64,
            skipped_other_genus: self.skipped_other_genus,
            with_hyp_flag: self.records.iter().filter(|r| r.hyp_jacobian.is_some()).count() as u64,
            per_q: per_q.into_iter().collect(),
        }
    }
}

/// Reads every record of a normalized CSV source; the first bad row aborts.
pub fn parse_records<R: Read>(source: R, convention: FactorCountConvention) -> Result<Ingested> {
    let mut reader = RecordReader::new(source, convention)?;
    let records = reader.by_ref().collect::<Result<Vec<_>>>()?;
    Ok(Ingested { records, rows_read: reader.rows_read, skipped_other_genus: reader.skipped_other_genus })
}

fn flag_cell(flag: Option<bool>) -> &'static str {
    match flag {
        Some(true) => "1",
        Some(false) => "0",
        None => "",
    }
}

/// Writes records in the normalized format. With `ground_truth = false`
/// the two flag columns are omitted.
pub fn write_records<'a, W: Write>(
    out: W,
    records: impl IntoIterator<Item = &'a IsogenyRecord>,
    ground_truth: bool,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let columns = if ground_truth { &NORMALIZED_COLUMNS[..] } else { &NORMALIZED_COLUMNS[..9] };
    w.write_record(columns)?;
    for r in records {
        let mut row = vec![
            r.label.clone(),
            r.field.q().to_string(),
            r.field.p().to_string(),
            r.field.r().to_string(),
            r.coeffs.s.to_string(),
            r.coeffs.t.to_string(),
            r.coeffs.u.to_string(),
            r.p_rank.to_string(),
            r.factor_count.to_string(),
        ];
        if ground_truth {
            row.push(flag_cell(r.hyp_jacobian).to_string());
            row.push(flag_cell(r.jacobian).to_string());
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
