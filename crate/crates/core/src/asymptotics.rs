//! Predicted isogeny-class counts by splitting type, and the parity-rule
//! proportion χ₃ over several universes of Weil polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::enumeration::{lattice_counts, LatticeCounts};
use crate::error::{Error, Result};
use crate::lmfdb::IsogenyRecord;
use crate::numeric::exact_sqrt;
use crate::rules::parity_rule;
use crate::weil::FieldParams;

/// `rat + irr * sqrt(radicand)` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadRational {
    pub rat: BigRational,
    pub irr: BigRational,
    pub radicand: u64,
}

impl QuadRational {
    pub fn new(rat: BigRational, irr: BigRational, radicand: u64) -> Self {
        match exact_sqrt(radicand as i128) {
            Some(root) => Self {
                rat: rat + irr * BigRational::from_integer(BigInt::from(root)),
                irr: BigRational::zero(),
                radicand,
            },
            None => Self { rat, irr, radicand },
        }
    }

    pub fn rational(rat: BigRational, radicand: u64) -> Self {
        Self { rat, irr: BigRational::zero(), radicand }
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.rat.to_f64().unwrap_or(f64::NAN);
        if self.irr.is_zero() {
            r
        } else {
            r + self.irr.to_f64().unwrap_or(f64::NAN) * (self.radicand as f64).sqrt()
        }
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(self.radicand, other.radicand, "mixing quadratic fields");
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self { rat: &self.rat * k, irr: &self.irr * k, radicand: self.radicand }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_field(o);
        Self { rat: &self.rat + &o.rat, irr: &self.irr + &o.irr, radicand: self.radicand }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.same_field(o);
        Self { rat: &self.rat - &o.rat, irr: &self.irr - &o.irr, radicand: self.radicand }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same_field(o);
        let d = BigRational::from_integer(BigInt::from(self.radicand));
        Self {
            rat: &self.rat * &o.rat + &self.irr * &o.irr * d,
            irr: &self.rat * &o.irr + &self.irr * &o.rat,
            radicand: self.radicand,
        }
    }

    pub fn add_int(&self, k: i64) -> Self {
        Self { rat: &self.rat + BigRational::from_integer(k.into()), ..self.clone() }
    }
}

impl fmt::Display for QuadRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irr.is_zero() {
            return write!(f, "{}", self.rat);
        }
        let sign = if self.irr.is_negative() { "-" } else { "+" };
        if self.rat.is_zero() {
            write!(f, "{}*sqrt({})", self.irr, self.radicand)
        } else {
            write!(f, "{} {sign} {}*sqrt({})", self.rat, self.irr.abs(), self.radicand)
        }
    }
}

impl Serialize for QuadRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// How the density factor `r` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DensityReading {
    /// `phi(q) / q = 1 - 1/p`.
    #[default]
    TotientRatio,
    /// `r = 1`.
    One,
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `2^g / g! * prod_{i=1}^{g} (2i / (2i - 1))^(g + 1 - i)`.
pub fn volume_constant(g: u32) -> Result<BigRational> {
    if !(1..=3).contains(&g) {
        return Err(Error::UnsupportedGenus(g));
    }
    let factorial: i64 = (1..=g as i64).product();
    let mut c = ratio(1 << g, factorial);
    for i in 1..=g as i64 {
        let base = ratio(2 * i, 2 * i - 1);
        for _ in 0..(g as i64 + 1 - i) {
            c *= &base;
        }
    }
    Ok(c)
}

/// Predicted number of `g`-dimensional isogeny classes over `F_q`.
pub fn predicted_count(g: u32, field: FieldParams, density: DensityReading) -> Result<QuadRational> {
    let c = volume_constant(g)?;
    let r = match density {
        DensityReading::TotientRatio => BigRational::one() - ratio(1, field.p() as i64),
        DensityReading::One => BigRational::one(),
    };
    // q^(g(g+1)/4) = q^(k/2)
    let k = g * (g + 1) / 2;
    let q = field.q();
    let whole = BigRational::from_integer(BigInt::from(q).pow(k / 2));
    let coeff = c * r * whole;
    Ok(if k % 2 == 1 {
        QuadRational::new(BigRational::zero(), coeff, q)
    } else {
        QuadRational::rational(coeff, q)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitCounts {
    pub q: u64,
    pub i1: QuadRational,
    pub i2: QuadRational,
    pub i3: QuadRational,
    /// Three elliptic factors, order `q^(3/2)`.
    pub n222: QuadRational,
    /// Elliptic times simple surface, order `q^2`.
    pub n24: QuadRational,
    /// Simple threefolds, order `q^3`.
    pub n6: QuadRational,
}

pub const SPLIT_ORDERS: [&str; 3] = ["q^(3/2)", "q^2", "q^3"];

impl SplitCounts {
    /// Share of simple threefolds among all predicted classes.
    pub fn simple_share(&self) -> f64 {
        self.n6.to_f64() / self.i3.to_f64()
    }
}

pub fn split_counts(field: FieldParams, density: DensityReading) -> SplitCounts {
    let i = |g| predicted_count(g, field, density).expect("genus in range");
    let (i1, i2, i3) = (i(1), i(2), i(3));
    let half = ratio(1, 2);
    let sixth = ratio(1, 6);
    // binom(I1 + 2, 3) and binom(I1 + 1, 2)
    let n222 = i1.add_int(2).mul(&i1.add_int(1)).mul(&i1).scale(&sixth);
    let pairs = i1.add_int(1).mul(&i1).scale(&half);
    let n24 = i1.mul(&i2.sub(&pairs));
    let n6 = i3.sub(&n24).sub(&n222);
    SplitCounts { q: field.q(), i1, i2, i3, n222, n24, n6 }
}

/// An unreduced count ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Proportion {
    pub num: u64,
    pub den: u64,
}

impl Proportion {
    pub fn value(&self) -> f64 {
        if self.den == 0 {
            f64::NAN
        } else {
            self.num as f64 / self.den as f64
        }
    }

    pub fn reduced(&self) -> num_rational::Ratio<u64> {
        num_rational::Ratio::new(self.num, self.den.max(1))
    }
}

impl fmt::Display for Proportion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// The set of polynomials a proportion is taken over.
#[derive(Debug, Clone, Copy)]
pub enum Universe<'a> {
    /// Every integer `(s, t, u)` passing the root-locus test.
    RootLocus,
    /// Root-locus polynomials with `p ∤ u`. Each is the Weil polynomial of
    /// an ordinary isogeny class, so this is an exact sub-universe of the
    /// isogeny classes.
    Ordinary,
    /// Ingested isogeny-class records.
    Records(&'a [IsogenyRecord]),
}

impl Universe<'_> {
    pub fn name(&self) -> &'static str {
        match self {
            Universe::RootLocus => "root-locus",
            Universe::Ordinary => "ordinary",
            Universe::Records(_) => "records",
        }
    }
}

fn records_at(records: &[IsogenyRecord], q: u64) -> Result<Vec<&IsogenyRecord>> {
    let at: Vec<_> = records.iter().filter(|r| r.q() == q).collect();
    if at.is_empty() {
        return Err(Error::NoRecords(q));
    }
    Ok(at)
}

/// Parity-rule hits, non-ordinary count and total for one field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UniverseCounts {
    pub total: u64,
    pub parity_hits: u64,
    pub nonordinary: u64,
}

pub fn universe_counts(field: FieldParams, universe: Universe<'_>) -> Result<UniverseCounts> {
    Ok(match universe {
        Universe::RootLocus => {
            let LatticeCounts { total, parity_hits, nonordinary, .. } = lattice_counts(field);
            UniverseCounts { total, parity_hits, nonordinary }
        }
        Universe::Ordinary => {
            let c = lattice_counts(field);
            UniverseCounts { total: c.total - c.nonordinary, parity_hits: c.ordinary_parity_hits, nonordinary: 0 }
        }
        Universe::Records(records) => {
            let at = records_at(records, field.q())?;
            UniverseCounts {
                total: at.len() as u64,
                parity_hits: at.iter().filter(|r| parity_rule(r.profile())).count() as u64,
                nonordinary: at.iter().filter(|r| r.p_rank < 3).count() as u64,
            }
        }
    })
}

/// Proportion of the universe on which the parity rule of the field's
/// characteristic fires (all three residue classes jointly when `p = 2`).
pub fn chi3(field: FieldParams, universe: Universe<'_>) -> Result<Proportion> {
    let c = universe_counts(field, universe)?;
    Ok(Proportion { num: c.parity_hits, den: c.total })
}

pub fn nonordinary_fraction(field: FieldParams, universe: Universe<'_>) -> Result<Proportion> {
    let c = universe_counts(field, universe)?;
    Ok(Proportion { num: c.nonordinary, den: c.total })
}

/// Share of records at `q` without a hyperelliptic Jacobian.
pub fn pi3(records: &[IsogenyRecord], q: u64) -> Result<Proportion> {
    let at = records_at(records, q)?;
    let mut non_hyp = 0;
    for r in &at {
        match r.hyp_jacobian {
            Some(false) => non_hyp += 1,
            Some(true) => {}
            None => return Err(Error::MissingFlag(r.label.clone())),
        }
    }
    Ok(Proportion { num: non_hyp, den: at.len() as u64 })
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub q: u64,
    pub parity: &'static str,
    pub chi3: Proportion,
    pub nonordinary: Proportion,
    pub split: SplitCounts,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub universe: &'static str,
    pub density: DensityReading,
    pub rows: Vec<SweepRow>,
}

/// Evaluates every field of the sweep, in parallel, sorted by `q`.
pub fn sweep(qs: &[u64], universe: Universe<'_>, density: DensityReading) -> Result<SweepReport> {
    let mut qs = qs.to_vec();
    qs.sort_unstable();
    qs.dedup();
    let rows = qs
        .par_iter()
        .map(|&q| {
            let field = FieldParams::from_q(q)?;
            let c = universe_counts(field, universe)?;
            Ok(SweepRow {
                q,
                parity: if field.is_even() { "even" } else { "odd" },
                chi3: Proportion { num: c.parity_hits, den: c.total },
                nonordinary: Proportion { num: c.nonordinary, den: c.total },
                split: split_counts(field, density),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport { universe: universe.name(), density, rows })
}

pub const SWEEP_COLUMNS: [&str; 12] =
    ["q", "parity", "chi3_num", "chi3_den", "chi3", "nonordinary_fraction", "I1", "I2", "I3", "n222", "n24", "n6"];

impl SweepReport {
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(SWEEP_COLUMNS)?;
        for r in &self.rows {
            let s = &r.split;
            w.write_record([
                r.q.to_string(),
                r.parity.to_string(),
                r.chi3.num.to_string(),
                r.chi3.den.to_string(),
                format!("{:.6}", r.chi3.value()),
                format!("{:.6}", r.nonordinary.value()),
                format!("{:.6}", s.i1.to_f64()),
                format!("{:.6}", s.i2.to_f64()),
                format!("{:.6}", s.i3.to_f64()),
                format!("{:.6}", s.n222.to_f64()),
                format!("{:.6}", s.n24.to_f64()),
                format!("{:.6}", s.n6.to_f64()),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_markdown(&self) -> String {
        let mut md = format!(
            "## Parity-rule proportion over the {} universe\n\n\
             Density factor: {}. Split-count orders: (2,2,2) ~ {}, (2,4) ~ {}, (6) ~ {}.\n\n\
             | q | parity | chi3 | chi3 (decimal) | non-ordinary | n6 / I3 |\n\
             |---|---|---|---|---|---|\n",
            self.universe,
            match self.density {
                DensityReading::TotientRatio => "r = 1 - 1/p",
                DensityReading::One => "r = 1",
            },
            SPLIT_ORDERS[0],
            SPLIT_ORDERS[1],
            SPLIT_ORDERS[2],
        );
        for r in &self.rows {
            md.push_str(&format!(
                "| {} | {} | {} | {:.4} | {:.4} | {:.6} |\n",
                r.q,
                r.parity,
                r.chi3,
                r.chi3.value(),
                r.nonordinary.value(),
                r.split.simple_share()
            ));
        }
        if let (Some(first), Some(last)) = (self.rows.first(), self.rows.last()) {
            md.push_str(&format!(
                "\nchi3 moved from {:.4} (q = {}) to {:.4} (q = {}).\n",
                first.chi3.value(),
                first.q,
                last.chi3.value(),
                last.q
            ));
        }
        md
    }
}
