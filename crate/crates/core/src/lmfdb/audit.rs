use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::record::IsogenyRecord;
use crate::rules::{RuleEngine, RuleId, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FalsePositive {
    pub label: String,
    pub fired: Vec<RuleId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub total: u64,
    /// Records whose hyperelliptic flag is known.
    pub flagged: u64,
    pub false_positives: Vec<FalsePositive>,
    pub per_rule_hits: BTreeMap<RuleId, u64>,
    pub per_rule_unique_hits: BTreeMap<RuleId, u64>,
}

impl Default for AuditReport {
    fn default() -> Self {
        let zeros: BTreeMap<RuleId, u64> = RuleId::all().map(|r| (r, 0)).collect();
        Self {
            total: 0,
            flagged: 0,
            false_positives: Vec::new(),
            per_rule_hits: zeros.clone(),
            per_rule_unique_hits: zeros,
        }
    }
}

impl AuditReport {
    fn add(mut self, record: &IsogenyRecord, verdict: &Verdict) -> Self {
        self.total += 1;
        if record.hyp_jacobian.is_some() {
            self.flagged += 1;
        }
        for r in &verdict.fired {
            *self.per_rule_hits.entry(*r).or_default() += 1;
        }
        if let [only] = verdict.fired.as_slice() {
            *self.per_rule_unique_hits.entry(*only).or_default() += 1;
        }
        if record.hyp_jacobian == Some(true) && !verdict.fired.is_empty() {
            self.false_positives.push(FalsePositive { label: record.label.clone(), fired: verdict.fired.clone() });
        }
        self
    }

    fn merge(mut self, other: Self) -> Self {
        self.total += other.total;
        self.flagged += other.flagged;
        self.false_positives.extend(other.false_positives);
        for (k, v) in other.per_rule_hits {
            *self.per_rule_hits.entry(k).or_default() += v;
        }
        for (k, v) in other.per_rule_unique_hits {
            *self.per_rule_unique_hits.entry(k).or_default() += v;
        }
        self
    }

    /// Aggregates precomputed verdicts (one per record, same order).
    pub fn from_verdicts(records: &[IsogenyRecord], verdicts: &[Verdict]) -> Self {
        assert_eq!(records.len(), verdicts.len());
        let mut report = records
            .par_iter()
            .zip(verdicts.par_iter())
            .fold(Self::default, |acc, (r, v)| acc.add(r, v))
            .reduce(Self::default, Self::merge);
        report.false_positives.sort_by(|a, b| a.label.cmp(&b.label));
        report
    }

    pub fn is_sound(&self) -> bool {
        self.false_positives.is_empty()
    }
}

/// Classifies every record in parallel, preserving order.
pub fn classify_all(records: &[IsogenyRecord], engine: &RuleEngine) -> Vec<Verdict> {
    records.par_iter().map(|r| engine.classify(r.profile())).collect()
}

pub fn audit(records: &[IsogenyRecord], engine: &RuleEngine) -> AuditReport {
    AuditReport::from_verdicts(records, &classify_all(records, engine))
}
