//! Census tables: per-rule hits, undetected proportions by category, and
//! rule co-firing counts.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lmfdb::{classify_all, AuditReport, IsogenyRecord};
use crate::rules::{RuleEngine, RuleId, Verdict};

/// (number of factors, p-rank).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CategoryKey {
    pub factor_count: u8,
    pub p_rank: u8,
}

impl CategoryKey {
    /// The twelve categories, in the printed order.
    pub fn all() -> impl Iterator<Item = CategoryKey> {
        (1..=3u8).rev().flat_map(|factor_count| (0..=3u8).map(move |p_rank| CategoryKey { factor_count, p_rank }))
    }
}

impl fmt::Display for CategoryKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.factor_count, self.p_rank)
    }
}

impl std::str::FromStr for CategoryKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Schema(format!("bad category key `{s}`"));
        let (a, b) = s.split_once(':').ok_or_else(bad)?;
        let key = CategoryKey {
            factor_count: a.trim().parse().map_err(|_| bad())?,
            p_rank: b.trim().parse().map_err(|_| bad())?,
        };
        if !(1..=3).contains(&key.factor_count) || key.p_rank > 3 {
            return Err(bad());
        }
        Ok(key)
    }
}

impl Serialize for CategoryKey {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Fraction {
    pub num: u64,
    pub den: u64,
}

impl Fraction {
    /// Four decimals, rounded half to even, computed exactly.
    pub fn decimal(&self) -> String {
        format_ratio(self.num, self.den, 4)
    }
}

/// `num / den` to `places` decimals, rounded half to even.
pub fn format_ratio(num: u64, den: u64, places: u32) -> String {
    if den == 0 {
        return "-".to_string();
    }
    let scale = 10u128.pow(places);
    let scaled = num as u128 * scale;
    let (mut q, r) = (scaled / den as u128, scaled % den as u128);
    let twice = 2 * r;
    if twice > den as u128 || (twice == den as u128 && q % 2 == 1) {
        q += 1;
    }
    let (int, frac) = (q / scale, q % scale);
    if places == 0 {
        int.to_string()
    } else {
        format!("{int}.{frac:0width$}", width = places as usize)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleCounts {
    pub hits: u64,
    pub unique_hits: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusTables {
    pub table2: BTreeMap<RuleId, RuleCounts>,
    /// Undetected over non-hyperelliptic records, per category.
    pub table3: BTreeMap<CategoryKey, Fraction>,
    pub total: Fraction,
    pub records: u64,
    /// Records left out of the second table because their flag is unknown.
    pub unflagged: u64,
}

impl CensusTables {
    pub fn from_verdicts(records: &[IsogenyRecord], verdicts: &[Verdict]) -> Self {
        let audit = AuditReport::from_verdicts(records, verdicts);
        let table2 = RuleId::all()
            .map(|r| {
                let counts = RuleCounts {
                    hits: audit.per_rule_hits.get(&r).copied().unwrap_or(0),
                    unique_hits: audit.per_rule_unique_hits.get(&r).copied().unwrap_or(0),
                };
                (r, counts)
            })
            .collect();
        let mut table3: BTreeMap<CategoryKey, Fraction> =
            CategoryKey::all().map(|k| (k, Fraction::default())).collect();
        let mut unflagged = 0;
        for (r, v) in records.iter().zip(verdicts) {
            match r.hyp_jacobian {
                Some(false) => {
                    let key = CategoryKey { factor_count: r.factor_count, p_rank: r.p_rank };
                    let cell = table3.entry(key).or_default();
                    cell.den += 1;
                    if v.fired.is_empty() {
                        cell.num += 1;
                    }
                }
                Some(true) => {}
                None => unflagged += 1,
            }
        }
        let total = table3
            .values()
            .fold(Fraction::default(), |acc, f| Fraction { num: acc.num + f.num, den: acc.den + f.den });
        Self { table2, table3, total, records: records.len() as u64, unflagged }
    }

    /// Rows in display order: categories as printed, then the total.
    fn table3_rows(&self) -> Vec<(String, Fraction)> {
        let mut rows: Vec<(String, Fraction)> = CategoryKey::all()
            .map(|k| (format!("({}, {})", k.factor_count, k.p_rank), self.table3.get(&k).copied().unwrap_or_default()))
            .collect();
        rows.push(("Total".to_string(), self.total));
        rows
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["table", "key", "first", "second", "ratio"])?;
        for (r, c) in &self.table2 {
            w.write_record(["table2", r.as_str(), &c.hits.to_string(), &c.unique_hits.to_string(), ""])?;
        }
        for k in CategoryKey::all() {
            let f = self.table3[&k];
            w.write_record(["table3", &k.to_string(), &f.num.to_string(), &f.den.to_string(), &f.decimal()])?;
        }
        let t = self.total;
        w.write_record(["table3", "total", &t.num.to_string(), &t.den.to_string(), &t.decimal()])?;
        w.flush()?;
        Ok(())
    }

    pub fn to_markdown(&self) -> String {
        let mut md = String::from("| Rule | hits | unique hits |\n|---|---|---|\n");
        for (r, c) in &self.table2 {
            md.push_str(&format!("| {r} | {} | {} |\n", c.hits, c.unique_hits));
        }
        md.push_str("\n| type | Undetected by rules |\n|---|---|\n");
        for (key, f) in self.table3_rows() {
            md.push_str(&format!("| {key} | {}/{} = {} |\n", f.num, f.den, f.decimal()));
        }
        md
    }

    /// Rules whose hit count differs from the registry's reference column.
    pub fn reference_deltas(&self) -> Vec<ReferenceDelta> {
        self.table2
            .iter()
            .filter_map(|(r, c)| {
                let reference = r.def().reference_count;
                (reference != c.hits).then_some(ReferenceDelta { rule: *r, reference, hits: c.hits })
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReferenceDelta {
    pub rule: RuleId,
    pub reference: u64,
    pub hits: u64,
}

pub fn census(records: &[IsogenyRecord], engine: &RuleEngine) -> CensusTables {
    CensusTables::from_verdicts(records, &classify_all(records, engine))
}

/// Symmetric co-firing counts; the diagonal holds the hit counts.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OverlapMatrix(pub BTreeMap<(RuleId, RuleId), u64>);

impl OverlapMatrix {
    pub fn from_verdicts(verdicts: &[Verdict]) -> Self {
        let counts = verdicts
            .par_iter()
            .fold(BTreeMap::<(RuleId, RuleId), u64>::new, |mut m, v| {
                for a in &v.fired {
                    for b in &v.fired {
                        *m.entry((*a, *b)).or_default() += 1;
                    }
                }
                m
            })
            .reduce(BTreeMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_default() += v;
                }
                a
            });
        Self(counts)
    }

    pub fn get(&self, a: RuleId, b: RuleId) -> u64 {
        self.0.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let rules: Vec<RuleId> = RuleId::all().collect();
        let mut header = vec!["rule".to_string()];
        header.extend(rules.iter().map(|r| r.to_string()));
        w.write_record(&header)?;
        for a in &rules {
            let mut row = vec![a.to_string()];
            row.extend(rules.iter().map(|b| self.get(*a, *b).to_string()));
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}

impl Serialize for OverlapMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let nested: BTreeMap<String, BTreeMap<String, u64>> =
            self.0.iter().fold(BTreeMap::new(), |mut m, ((a, b), v)| {
                m.entry(a.to_string()).or_default().insert(b.to_string(), *v);
                m
            });
        nested.serialize(s)
    }
}

pub fn overlap_matrix(records: &[IsogenyRecord], engine: &RuleEngine) -> OverlapMatrix {
    OverlapMatrix::from_verdicts(&classify_all(records, engine))
}

/// One row of an expected-tables file: `table,key,first,second`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpectedRow {
    Rule { rule: RuleId, hits: u64, unique_hits: u64 },
    Category { key: CategoryKey, undetected: u64, total: u64 },
    Total { undetected: u64, total: u64 },
}

pub fn read_expected<R: Read>(source: R) -> Result<Vec<ExpectedRow>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(source);
    let headers = reader.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["table", "key", "first", "second"] {
        return Err(Error::Schema("expected header `table,key,first,second`".to_string()));
    }
    let mut out = Vec::new();
    for row in reader.records() {
        let row = row?;
        let num = |i: usize| -> Result<u64> {
            row[i].parse().map_err(|_| Error::Schema(format!("bad count `{}` in expected tables", &row[i])))
        };
        let (a, b) = (num(2)?, num(3)?);
        out.push(match (&row[0], &row[1]) {
            ("table2", rule) => ExpectedRow::Rule { rule: rule.parse()?, hits: a, unique_hits: b },
            ("table3", "total") => ExpectedRow::Total { undetected: a, total: b },
            ("table3", key) => ExpectedRow::Category { key: key.parse()?, undetected: a, total: b },
            (table, _) => return Err(Error::Schema(format!("unknown table `{table}`"))),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub table: &'static str,
    pub key: String,
    pub expected: (u64, u64),
    pub found: (u64, u64),
}

/// Every expected row whose counts differ from the census.
pub fn compare(expected: &[ExpectedRow], census: &CensusTables) -> Vec<Mismatch> {
    expected
        .iter()
        .filter_map(|row| {
            let (table, key, exp, found) = match row {
                ExpectedRow::Rule { rule, hits, unique_hits } => {
                    let c = &census.table2[rule];
                    ("table2", rule.to_string(), (*hits, *unique_hits), (c.hits, c.unique_hits))
                }
                ExpectedRow::Category { key, undetected, total } => {
                    let f = census.table3.get(key).copied().unwrap_or_default();
                    ("table3", key.to_string(), (*undetected, *total), (f.num, f.den))
                }
                ExpectedRow::Total { undetected, total } => {
                    ("table3", "total".to_string(), (*undetected, *total), (census.total.num, census.total.den))
                }
            };
            (exp != found).then_some(Mismatch { table, key, expected: exp, found })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lmfdb::parse_records;
    use crate::rules::FactorCountConvention;

    #[test]
    fn ratios_round_half_even() {
        assert_eq!(format_ratio(6009, 247844, 4), "0.0242");
        assert_eq!(format_ratio(15117, 301235, 4), "0.0502");
        assert_eq!(format_ratio(183, 416, 4), "0.4399");
        assert_eq!(format_ratio(0, 122, 4), "0.0000");
        assert_eq!(format_ratio(1, 8, 2), "0.12");
        assert_eq!(format_ratio(3, 8, 2), "0.38");
        assert_eq!(format_ratio(1, 1, 4), "1.0000");
        assert_eq!(format_ratio(1, 0, 4), "-");
    }

    #[test]
    fn categories() {
        let all: Vec<_> = CategoryKey::all().collect();
        assert_eq!(all.len(), 12);
        assert_eq!(all[0].to_string(), "3:0");
        assert_eq!("1:3".parse::<CategoryKey>().unwrap(), CategoryKey { factor_count: 1, p_rank: 3 });
        assert!("4:0".parse::<CategoryKey>().is_err());
    }

    fn sample() -> Vec<IsogenyRecord> {
        let text = "label,hyp_jacobian\n3.25.f_ay_ajl,0\n3.23.c_e_do,1\n3.9.a_a_a,0\n3.5.a_a_a,0\n3.2.a_a_a,\n";
        parse_records(text.as_bytes(), FactorCountConvention::Multiplicity).unwrap().records
    }

    #[test]
    fn census_invariants() {
        let records = sample();
        let engine = RuleEngine::default();
        let c = census(&records, &engine);
        assert_eq!(c.unflagged, 1);
        assert_eq!(c.total.den, 3);
        assert_eq!(c.table3.values().map(|f| f.den).sum::<u64>(), c.total.den);
        for f in c.table3.values() {
            assert!(f.num <= f.den);
        }
        let overlaps = overlap_matrix(&records, &engine);
        for (r, counts) in &c.table2 {
            assert_eq!(overlaps.get(*r, *r), counts.hits);
            assert!(counts.unique_hits <= counts.hits);
        }
        for ((a, b), v) in &overlaps.0 {
            assert_eq!(overlaps.get(*b, *a), *v);
        }
    }

    #[test]
    fn expected_file_round_trip() {
        let c = census(&sample(), &RuleEngine::default());
        let mut out = Vec::new();
        c.write_csv(&mut out).unwrap();
        // drop the ratio column to obtain an expected-tables file
        let text = String::from_utf8(out).unwrap();
        let stripped: String = text
            .lines()
            .map(|l| l.rsplit_once(',').unwrap().0.to_string() + "\n")
            .collect();
        let expected = read_expected(stripped.as_bytes()).unwrap();
        assert_eq!(expected.len(), 24 + 12 + 1);
        assert!(compare(&expected, &c).is_empty());
        let mut wrong = expected.clone();
        wrong[0] = ExpectedRow::Rule { rule: "0.2.2.0".parse().unwrap(), hits: 99, unique_hits: 0 };
        assert_eq!(compare(&wrong, &c).len(), 1);
    }

    #[test]
    fn shipped_expected_tables_are_consistent() {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/reference_tables.csv");
        let rows = read_expected(std::fs::File::open(path).unwrap()).unwrap();
        let (mut undetected, mut total) = (0, 0);
        let mut declared = None;
        for row in &rows {
            match row {
                ExpectedRow::Category { undetected: u, total: t, .. } => {
                    undetected += u;
                    total += t;
                }
                ExpectedRow::Total { undetected, total } => declared = Some((*undetected, *total)),
                ExpectedRow::Rule { hits, unique_hits, .. } => assert!(unique_hits <= hits),
            }
        }
        assert_eq!(declared, Some((undetected, total)));
    }

    #[test]
    fn reference_deltas_flag_disagreeing_rules() {
        let c = census(&sample(), &RuleEngine::default());
        // tiny sample: nearly every rule differs from the reference column
        assert!(c.reference_deltas().len() >= 20);
    }
}
