//! Registry of the 24 obstruction rules and the classifier built on it.
//!
//! Labels follow the `c.n.r.i` scheme: characteristic mod 2, number of factors
//! of `f` over the integers, p-rank, and an index, with `N` meaning "no
//! requirement". Every rule is an independent predicate behind an
//! applicability gate; [`RuleEngine::classify`] evaluates all of them.

pub mod predicates;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

pub use predicates::{
    char2_supersingular_obstruction, discriminant_obstruction, p_times_vp, parity_rule,
    point_count_obstruction, resultant_one_obstruction, type_obstruction, FORBIDDEN_DISCRIMINANTS,
};

use crate::error::{Error, Result};
use crate::numeric::is_prime;
use crate::weil::{Profile, Slope};

/// Label of a registered rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleId(&'static str);

impl RuleId {
    pub fn as_str(&self) -> &'static str {
        self.0
    }

    pub fn all() -> impl Iterator<Item = RuleId> {
        REGISTRY.iter().map(|r| RuleId(r.id))
    }

    pub fn def(&self) -> &'static RuleDef {
        REGISTRY.iter().find(|r| r.id == self.0).expect("registered id")
    }
}

impl FromStr for RuleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        REGISTRY
            .iter()
            .find(|r| r.id == s)
            .map(|r| RuleId(r.id))
            .ok_or_else(|| Error::UnknownRule(s.to_string()))
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl Serialize for RuleId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Proved,
    Partial,
    Conjectured,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Proved => "proved",
            Provenance::Partial => "partial",
            Provenance::Conjectured => "conjectured",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Parity {
    #[serde(rename = "E")]
    Even,
    #[serde(rename = "O")]
    Odd,
    #[serde(rename = "O,E")]
    Any,
}

/// The "Other" column of a gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtraGate {
    None,
    QSquare,
    QNonsquare,
    QPrime,
    /// `p = q ≡ 1 (mod 3)` and first Newton slope 1/3.
    PrimeOneModThreeFirstSlopeThird,
    QIsPSquared,
    /// `q` prime, `q ≡ 3 (mod 4)`, `q > 3`.
    PrimeThreeModFourAboveThree,
    PNotQ,
    QOneModFour,
    PInTwoThreeFive,
}

impl ExtraGate {
    fn admits(&self, profile: &Profile) -> bool {
        let field = profile.coeffs.field;
        let q = field.q();
        match self {
            ExtraGate::None => true,
            ExtraGate::QSquare => field.is_square(),
            ExtraGate::QNonsquare => !field.is_square(),
            ExtraGate::QPrime => field.is_prime_field(),
            ExtraGate::PrimeOneModThreeFirstSlopeThird => {
                field.is_prime_field() && q % 3 == 1 && profile.newton.first_slope() == Slope::new(1, 3)
            }
            ExtraGate::QIsPSquared => field.r() == 2,
            ExtraGate::PrimeThreeModFourAboveThree => is_prime(q) && q % 4 == 3 && q > 3,
            ExtraGate::PNotQ => field.r() != 1,
            ExtraGate::QOneModFour => q % 4 == 1,
            ExtraGate::PInTwoThreeFive => matches!(field.p(), 2 | 3 | 5),
        }
    }

    pub fn describe(&self) -> &'static str {
        match self {
            ExtraGate::None => "",
            ExtraGate::QSquare => "q square",
            ExtraGate::QNonsquare => "q nonsquare",
            ExtraGate::QPrime => "q prime",
            ExtraGate::PrimeOneModThreeFirstSlopeThird => "p = q ≡ 1 (mod 3), NP first slope 1/3",
            ExtraGate::QIsPSquared => "q = p^2",
            ExtraGate::PrimeThreeModFourAboveThree => "q prime, q ≡ 3 (mod 4), q > 3",
            ExtraGate::PNotQ => "p ≠ q",
            ExtraGate::QOneModFour => "q ≡ 1 (mod 4)",
            ExtraGate::PInTwoThreeFive => "p ∈ {2,3,5}",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Parity,
    Supersingular,
    PointCount,
    ResultantOne,
    Type,
    Discriminant,
    Table,
}

/// One row of the obstruction catalog.
#[derive(Debug)]
pub struct RuleDef {
    pub id: &'static str,
    pub parity: Parity,
    pub factors: &'static [u8],
    pub p_ranks: &'static [u8],
    pub extra: ExtraGate,
    pub condition: &'static str,
    pub provenance: Provenance,
    /// Isogeny-class count printed next to the rule in the catalog table.
    pub reference_count: u64,
    kind: Kind,
}

const ANY_FACTORS: &[u8] = &[1, 2, 3];
const ANY_RANK: &[u8] = &[0, 1, 2, 3];

macro_rules! rule {
    ($id:literal, $par:ident, $f:expr, $r:expr, $extra:ident, $kind:ident, $prov:ident, $count:literal, $cond:literal) => {
        RuleDef {
            id: $id,
            parity: Parity::$par,
            factors: $f,
            p_ranks: $r,
            extra: ExtraGate::$extra,
            condition: $cond,
            provenance: Provenance::$prov,
            reference_count: $count,
            kind: Kind::$kind,
        }
    };
}

/// Sorted by label.
pub static REGISTRY: [RuleDef; 24] = [
    rule!("0.2.2.0", Even, &[2], ANY_RANK, None, Table, Conjectured, 42, "alpha = 0, epsilon = ±3"),
    rule!("0.3.1.0", Even, &[3], &[1], QNonsquare, Table, Conjectured, 32,
        "gamma - alpha ∈ {1, sqrt(pq)} or (beta - alpha, gamma - beta) ∈ {(sqrt(pq), 1), (1, sqrt(pq))}"),
    rule!("0.3.2.0", Even, &[3], &[2], None, Table, Conjectured, 90, "alpha + 5 > gamma"),
    rule!("0.3.2.1", Even, &[3], &[2], None, Table, Conjectured, 24,
        "alpha = -p v_p(q), beta < gamma < p v_p(q) - 1"),
    rule!("0.3.2.2", Even, &[3], &[2], None, Table, Conjectured, 24,
        "1 - p v_p(q) < alpha < beta <= gamma = p v_p(q)"),
    rule!("0.N.0.0", Even, ANY_FACTORS, &[0], None, Supersingular, Proved, 164,
        "all Newton-polygon slopes equal 1/2"),
    rule!("0.N.N.0", Even, ANY_FACTORS, ANY_RANK, None, Parity, Partial, 33370,
        "(s, t, u) ≡ (0,1,1), (1,0,1) or (1,1,0) mod 2"),
    rule!("1.1.0.0", Odd, &[1], &[0], PrimeOneModThreeFirstSlopeThird, Table, Conjectured, 6,
        "b > -q and b an even multiple of q"),
    rule!("1.1.0.1", Odd, &[1], &[0], QIsPSquared, Table, Conjectured, 34,
        "(b = -3q and c = odd * q) or (b ∈ {-2q, -q} and |a| = 2p)"),
    rule!("1.2.1.0", Odd, &[2], &[1], QPrime, Table, Conjectured, 52,
        "alpha odd and (delta, epsilon) ≡ (0, 2 - 2q) mod 4"),
    rule!("1.2.2.0", Odd, &[2], &[2], QPrime, Table, Conjectured, 136,
        "delta odd and epsilon ∈ {±2, ±3}"),
    rule!("1.3.1.0", Odd, &[3], &[1], QSquare, Table, Conjectured, 38, "s odd and |s| <= sqrt(q)"),
    rule!("1.3.1.1", Odd, &[3], &[1], PrimeThreeModFourAboveThree, Table, Conjectured, 24,
        "|alpha| <= 3 and |gamma| <= 3"),
    rule!("1.3.2.0", Odd, &[3], &[2], PNotQ, Table, Conjectured, 64,
        "gamma = p v_p(q) and (beta - alpha = 2 or (alpha = -p v_p(q) and gamma - beta = 2))"),
    rule!("1.3.2.1", Odd, &[3], &[2], QOneModFour, Table, Conjectured, 8,
        "(alpha, beta, gamma) ∈ {(-2,-2,0), (0,2,2)}"),
    rule!("1.3.N.0", Odd, &[3], ANY_RANK, None, Table, Conjectured, 78,
        "alpha^2 + beta^2 + gamma^2 = 9"),
    rule!("1.3.N.1", Odd, &[3], ANY_RANK, None, Table, Conjectured, 68,
        "(alpha, beta, gamma) ∈ {(-4,-1,0), (0,1,4), (-4,-3,0), (0,3,4), (-3,-2,0), (0,2,3), (-1,0,2), (-2,0,1)}"),
    rule!("1.N.N.0", Odd, ANY_FACTORS, ANY_RANK, None, Parity, Proved, 245548,
        "t ≡ 0 and u ≡ 1 mod 2"),
    rule!("N.3.0.0", Any, &[3], &[0], PInTwoThreeFive, Table, Conjectured, 47,
        "|alpha| ≠ p v_p(q) and |gamma| ≠ p v_p(q)"),
    rule!("N.3.0.1", Any, &[3], &[0], None, Table, Conjectured, 50,
        "(alpha, beta) = (-p v_p(q), -p v_p(q)) or (beta, gamma) = (p v_p(q), p v_p(q))"),
    rule!("N.3.N.0", Any, &[3], ANY_RANK, None, Discriminant, Partial, 78,
        "f = f_E^3 with alpha^2 - 4q in the forbidden discriminant list"),
    rule!("N.N.N.0", Any, ANY_FACTORS, ANY_RANK, None, PointCount, Proved, 1422,
        "illegal predicted point counts"),
    rule!("N.N.N.1", Any, ANY_FACTORS, ANY_RANK, None, ResultantOne, Proved, 4187,
        "real Weil polynomial splits as h1 h2 with res(h1, h2) = ±1"),
    rule!("N.N.N.2", Any, ANY_FACTORS, ANY_RANK, QSquare, Type, Proved, 2328,
        "g = h0 (x ± 2 sqrt q)^n, h0 nonconstant ordinary, h0(±2 sqrt q) squarefree"),
];

/// Readings of `p · v_p(q)` in the table conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PvqReading {
    /// The integer product `p × r`.
    #[default]
    PTimesR,
    /// `floor(2 sqrt q)`; agrees with `p × r` for `q = p^2` and `q = 16`.
    FloorTwoSqrtQ,
}

/// Where `h0` is evaluated in the type obstruction's squarefree test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TypeEvaluation {
    /// At the root `±2 sqrt q` actually split off.
    #[default]
    SplitRoot,
    /// Always at `+2 sqrt q`.
    PlusRoot,
}

/// How ingested factor counts are compared and how census categories are keyed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorCountConvention {
    #[default]
    Multiplicity,
    Distinct,
}

const PVQ_RULES: [&str; 5] = ["0.3.2.1", "0.3.2.2", "1.3.2.0", "N.3.0.0", "N.3.0.1"];

/// Switches for the documented ambiguous readings.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Interpretation {
    pub pvq_overrides: BTreeMap<RuleId, PvqReading>,
    pub type_evaluation: TypeEvaluation,
    pub factor_count: FactorCountConvention,
}

impl Interpretation {
    pub fn pvq(&self, id: &str) -> PvqReading {
        self.pvq_overrides
            .iter()
            .find(|(k, _)| k.as_str() == id)
            .map(|(_, v)| *v)
            .unwrap_or_default()
    }

    /// Applies one `<ruleid>=<variant>` switch (or `factor-count=<variant>`).
    pub fn apply(&mut self, spec: &str) -> Result<()> {
        let bad = || Error::UnknownInterpretation(spec.to_string());
        let (key, variant) = spec.split_once('=').ok_or_else(bad)?;
        let (key, variant) = (key.trim(), variant.trim());
        if key == "factor-count" {
            self.factor_count = match variant {
                "multiplicity" => FactorCountConvention::Multiplicity,
                "distinct" => FactorCountConvention::Distinct,
                _ => return Err(bad()),
            };
            return Ok(());
        }
        let id: RuleId = key.parse()?;
        if id.as_str() == "N.N.N.2" {
            self.type_evaluation = match variant {
                "split-root" => TypeEvaluation::SplitRoot,
                "plus-root" => TypeEvaluation::PlusRoot,
                _ => return Err(bad()),
            };
        } else if PVQ_RULES.contains(&id.as_str()) {
            let reading = match variant {
                "p-times-r" => PvqReading::PTimesR,
                "floor-two-sqrt-q" => PvqReading::FloorTwoSqrtQ,
                _ => return Err(bad()),
            };
            self.pvq_overrides.insert(id, reading);
        } else {
            return Err(bad());
        }
        Ok(())
    }
}

/// Result of classifying one Weil polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub fired: Vec<RuleId>,
    pub obstructed: bool,
    pub advisory: Option<String>,
}

pub const CONTAINMENT_ADVISORY: &str = "characteristic 2 with first Newton slope 1/3: \
     conjecturally the class contains a hyperelliptic Jacobian (advisory only)";

/// Immutable rule registry plus interpretation switches.
#[derive(Debug, Clone, Default)]
pub struct RuleEngine {
    interpretation: Interpretation,
}

impl RuleEngine {
    pub fn new(interpretation: Interpretation) -> Self {
        Self { interpretation }
    }

    pub fn interpretation(&self) -> &Interpretation {
        &self.interpretation
    }

    pub fn rules(&self) -> impl Iterator<Item = RuleId> {
        RuleId::all()
    }

    pub fn gate_admits(def: &RuleDef, profile: &Profile) -> bool {
        let even = profile.coeffs.field.is_even();
        let parity_ok = match def.parity {
            Parity::Even => even,
            Parity::Odd => !even,
            Parity::Any => true,
        };
        parity_ok
            && def.factors.contains(&profile.factor_count())
            && def.p_ranks.contains(&profile.p_rank)
            && def.extra.admits(profile)
    }

    fn fires(&self, def: &RuleDef, profile: &Profile) -> bool {
        if !Self::gate_admits(def, profile) {
            return false;
        }
        match def.kind {
            Kind::Parity => parity_rule(profile),
            Kind::Supersingular => char2_supersingular_obstruction(profile),
            Kind::PointCount => point_count_obstruction(profile),
            Kind::ResultantOne => resultant_one_obstruction(profile),
            Kind::Type => type_obstruction(profile, self.interpretation.type_evaluation),
            Kind::Discriminant => discriminant_obstruction(profile),
            Kind::Table => predicates::table_condition(def.id, profile, &self.interpretation),
        }
    }

    /// Gate plus condition for a single rule.
    pub fn evaluate(&self, rule: RuleId, profile: &Profile) -> bool {
        self.fires(rule.def(), profile)
    }

    /// Gate plus condition for a rule given by label.
    pub fn conjectured_table_rule(&self, rule: &str, profile: &Profile) -> Result<bool> {
        let id: RuleId = rule.parse()?;
        Ok(self.evaluate(id, profile))
    }

    /// Every rule whose gate admits the profile and whose condition holds.
    pub fn classify(&self, profile: &Profile) -> Verdict {
        let fired: Vec<RuleId> =
            REGISTRY.iter().filter(|def| self.fires(def, profile)).map(|def| RuleId(def.id)).collect();
        let advisory = (profile.coeffs.field.is_even()
            && profile.newton.first_slope() == Slope::new(1, 3))
        .then(|| CONTAINMENT_ADVISORY.to_string());
        Verdict { obstructed: !fired.is_empty(), fired, advisory }
    }
}

/// Machine-readable catalog entry.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub parity: Parity,
    pub factors: String,
    pub p_rank: String,
    pub other: &'static str,
    pub condition: &'static str,
    pub provenance: Provenance,
    pub reference_count: u64,
}

fn set_text(v: &[u8]) -> String {
    if v.len() == 1 {
        v[0].to_string()
    } else {
        format!("{{{}}}", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
    }
}

pub fn catalog() -> Vec<CatalogEntry> {
    REGISTRY
        .iter()
        .map(|d| CatalogEntry {
            id: d.id,
            parity: d.parity,
            factors: set_text(d.factors),
            p_rank: set_text(d.p_ranks),
            other: d.extra.describe(),
            condition: d.condition,
            provenance: d.provenance,
            reference_count: d.reference_count,
        })
        .collect()
}

#[cfg(test)]
mod tests;
