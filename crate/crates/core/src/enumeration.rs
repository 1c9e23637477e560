//! Interval-pruned enumeration of every `(s, t, u)` passing the root-locus
//! test over a field.
//!
//! For fixed `(a, b) = (s, t - 3q)` the admissible constant terms `c` of the
//! real cubic form an interval: the two boundary sign conditions are
//! monotone in `c`, and the discriminant is a concave quadratic in `c`.
//! Endpoints are located from a floating-point guess and then pinned down
//! by exact bisection, so the result never depends on rounding.

use std::collections::HashSet;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lmfdb::{write_records, IsogenyRecord};
use crate::numeric::isqrt;
use crate::rules::FactorCountConvention;
use crate::weil::{FieldParams, Profile, RealWeilCubic, WeilCoeffs};

/// Inclusive range of `u`; empty when `lo > hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UInterval {
    pub lo: i64,
    pub hi: i64,
}

impl UInterval {
    pub const EMPTY: UInterval = UInterval { lo: 1, hi: 0 };

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn len(&self) -> u64 {
        if self.is_empty() {
            0
        } else {
            (self.hi - self.lo) as u64 + 1
        }
    }

    pub fn contains(&self, u: i64) -> bool {
        self.lo <= u && u <= self.hi
    }

    /// Number of members congruent to `residue` modulo `modulus`.
    pub fn count_congruent(&self, modulus: i64, residue: i64) -> u64 {
        if self.is_empty() {
            return 0;
        }
        let below = |x: i64| (x - residue).div_euclid(modulus);
        (below(self.hi) - below(self.lo - 1)) as u64
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

/// Smallest integer where a monotone (false, then true) predicate holds.
fn smallest_true(pred: impl Fn(i128) -> bool, guess: i128) -> i128 {
    let (mut lo, mut hi);
    let mut step = 1i128;
    if pred(guess) {
        hi = guess;
        lo = guess - step;
        while pred(lo) {
            hi = lo;
            step *= 2;
            lo = hi - step;
        }
    } else {
        lo = guess;
        hi = guess + step;
        while !pred(hi) {
            lo = hi;
            step *= 2;
            hi = lo + step;
        }
    }
    // pred(lo) false, pred(hi) true
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

fn guess(x: f64) -> i128 {
    if x.is_finite() {
        x.round() as i128
    } else {
        0
    }
}

/// Range of `b = t - 3q` for which some `c` can work, given `a = s`.
fn b_range(a: i128, q: i128) -> Option<(i128, i128)> {
    if a * a > 36 * q {
        return None;
    }
    let derivative_ok = |b: i128| {
        let (dp, dm) = RealWeilCubic { a, b, c: 0 }.derivative_at_boundary(q);
        dp.is_nonnegative() && dm.is_nonnegative()
    };
    let lo = smallest_true(derivative_ok, guess(-12.0 * q as f64 + 4.0 * (a.abs() as f64) * (q as f64).sqrt()));
    // three real roots need a^2 - 3b >= 0
    let hi = (a * a).div_euclid(3);
    (lo <= hi).then_some((lo, hi))
}

/// Admissible `c` for fixed `(a, b)`, assuming the derivative conditions hold.
fn c_interval(a: i128, b: i128, q: i128) -> Option<(i128, i128)> {
    let cubic = |c: i128| RealWeilCubic { a, b, c };
    let disc = |c: i128| cubic(c).discriminant();

    // integer maximizer of the concave discriminant
    let m0 = (9 * a * b - 2 * a * a * a).div_euclid(27);
    let m = if disc(m0 + 1) > disc(m0) { m0 + 1 } else { m0 };
    if disc(m) < 0 {
        return None;
    }
    let centre = (9 * a * b - 2 * a * a * a) as f64 / 27.0;
    let k = (a * a - 3 * b) as f64;
    let half_width = 2.0 * k.max(0.0).powf(1.5) / 27.0;
    let d_lo = smallest_true(|c| c > m || disc(c) >= 0, guess(centre - half_width).min(m));
    let d_hi = smallest_true(|c| c > m && disc(c) < 0, guess(centre + half_width).max(m)) - 1;

    let sqrt_q = (q as f64).sqrt();
    let af = a as f64;
    let bf = b as f64;
    let qf = q as f64;
    // g(w) >= 0 and g(-w) <= 0
    let b_lo = smallest_true(
        |c| cubic(c).at_boundary(q).0.is_nonnegative(),
        guess(-4.0 * af * qf - 2.0 * (4.0 * qf + bf) * sqrt_q),
    );
    let b_hi = smallest_true(
        |c| !cubic(c).at_boundary(q).1.is_nonpositive(),
        guess(-4.0 * af * qf + 2.0 * (4.0 * qf + bf) * sqrt_q),
    ) - 1;

    let (lo, hi) = (d_lo.max(b_lo), d_hi.min(b_hi));
    (lo <= hi).then_some((lo, hi))
}

/// All `u` with `(s, t, u)` passing the root-locus test.
pub fn u_interval(s: i64, t: i64, field: FieldParams) -> UInterval {
    let q = field.q() as i128;
    let (a, b) = (s as i128, t as i128 - 3 * q);
    let Some((b_lo, b_hi)) = b_range(a, q) else {
        return UInterval::EMPTY;
    };
    if b < b_lo || b > b_hi {
        return UInterval::EMPTY;
    }
    match c_interval(a, b, q) {
        Some((lo, hi)) => {
            let shift = 2 * q * a;
            UInterval { lo: (lo + shift) as i64, hi: (hi + shift) as i64 }
        }
        None => UInterval::EMPTY,
    }
}

/// Values of `s` worth visiting, ascending.
pub fn s_range(field: FieldParams) -> std::ops::RangeInclusive<i64> {
    let smax = isqrt(36 * field.q() as u128) as i64;
    -smax..=smax
}

/// Values of `t` worth visiting for this `s`, ascending (possibly empty).
pub fn t_range(s: i64, field: FieldParams) -> std::ops::RangeInclusive<i64> {
    let q = field.q() as i128;
    match b_range(s as i128, q) {
        Some((lo, hi)) => (lo + 3 * q) as i64..=(hi + 3 * q) as i64,
        #[allow(clippy::reversed_empty_ranges)]
        None => 1..=0,
    }
}

/// Every valid `(s, t, u)` in lexicographic order, lazily.
pub fn valid_triples(field: FieldParams) -> impl Iterator<Item = WeilCoeffs> {
    s_range(field).flat_map(move |s| slice_triples(s, field))
}

fn slice_triples(s: i64, field: FieldParams) -> impl Iterator<Item = WeilCoeffs> {
    t_range(s, field).flat_map(move |t| u_interval(s, t, field).iter().map(move |u| WeilCoeffs::new(field, s, t, u)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Materialize,
    Count,
}

/// Which polynomials count as present.
#[derive(Debug, Clone, Copy)]
pub enum Admissibility<'a> {
    /// Every polynomial passing the root-locus test.
    RootLocus,
    /// Only polynomials with an ingested isogeny-class record.
    Dataset(&'a [IsogenyRecord]),
}

#[derive(Debug, Clone)]
pub enum Enumerated {
    Profiles(Vec<Profile>),
    Count(u64),
}

impl Enumerated {
    pub fn len(&self) -> u64 {
        match self {
            Enumerated::Profiles(v) => v.len() as u64,
            Enumerated::Count(n) => *n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn enumerate_valid(field: FieldParams, mode: Mode, admissibility: Admissibility<'_>) -> Result<Enumerated> {
    let present: Option<HashSet<(i64, i64, i64)>> = match admissibility {
        Admissibility::RootLocus => None,
        Admissibility::Dataset([]) => return Err(Error::DatasetNotLoaded),
        Admissibility::Dataset(records) => Some(
            records
                .iter()
                .filter(|r| r.q() == field.q())
                .map(|r| (r.coeffs.s, r.coeffs.t, r.coeffs.u))
                .collect(),
        ),
    };
    let admitted = |c: &WeilCoeffs| present.as_ref().is_none_or(|set| set.contains(&(c.s, c.t, c.u)));
    let slices: Vec<i64> = s_range(field).collect();
    Ok(match mode {
        Mode::Count if present.is_none() => Enumerated::Count(lattice_counts(field).total),
        Mode::Count => Enumerated::Count(
            slices.par_iter().map(|&s| slice_triples(s, field).filter(|c| admitted(c)).count() as u64).sum(),
        ),
        Mode::Materialize => {
            let per_slice: Vec<Vec<Profile>> = slices
                .par_iter()
                .map(|&s| slice_triples(s, field).filter(|c| admitted(c)).map(Profile::new_unchecked).collect())
                .collect();
            Enumerated::Profiles(per_slice.into_iter().flatten().collect())
        }
    })
}

/// Lattice counts gathered without materializing any polynomial.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct LatticeCounts {
    pub total: u64,
    /// Polynomials satisfying the parity rule of the field's characteristic.
    pub parity_hits: u64,
    /// Polynomials with `p | u`, i.e. non-ordinary ones.
    pub nonordinary: u64,
    /// Parity-rule hits with `p ∤ u`.
    pub ordinary_parity_hits: u64,
}

impl std::ops::Add for LatticeCounts {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        Self {
            total: self.total + o.total,
            parity_hits: self.parity_hits + o.parity_hits,
            nonordinary: self.nonordinary + o.nonordinary,
            ordinary_parity_hits: self.ordinary_parity_hits + o.ordinary_parity_hits,
        }
    }
}

/// Parity class of `u` that makes the parity rule fire, if any.
fn parity_target(field: FieldParams, s: i64, t: i64) -> Option<i64> {
    let (s, t) = (s.rem_euclid(2), t.rem_euclid(2));
    if field.is_even() {
        match (s, t) {
            (0, 1) | (1, 0) => Some(1),
            (1, 1) => Some(0),
            _ => None,
        }
    } else {
        (t == 0).then_some(1)
    }
}

fn slice_counts(s: i64, field: FieldParams) -> LatticeCounts {
    let p = field.p() as i64;
    t_range(s, field)
        .map(|t| {
            let iv = u_interval(s, t, field);
            let target = parity_target(field, s, t);
            let parity_hits = target.map_or(0, |r| iv.count_congruent(2, r));
            // hits divisible by p: u = 0 mod p and u = r mod 2
            let nonordinary_hits = match target {
                None => 0,
                Some(r) if p == 2 => if r == 0 { parity_hits } else { 0 },
                Some(r) => iv.count_congruent(2 * p, if r == p % 2 { p } else { 0 }),
            };
            LatticeCounts {
                total: iv.len(),
                parity_hits,
                nonordinary: iv.count_congruent(p, 0),
                ordinary_parity_hits: parity_hits - nonordinary_hits,
            }
        })
        .fold(LatticeCounts::default(), |a, b| a + b)
}

pub fn lattice_counts(field: FieldParams) -> LatticeCounts {
    let slices: Vec<i64> = s_range(field).collect();
    slices.par_iter().map(|&s| slice_counts(s, field)).reduce(LatticeCounts::default, |a, b| a + b)
}

/// Streams valid triples in the normalized format without ground-truth columns.
pub fn write_stream<W: Write>(out: W, field: FieldParams, convention: FactorCountConvention) -> Result<()> {
    let records = valid_triples(field)
        .map(|c| IsogenyRecord::from_coeffs(c, convention, None, None))
        .collect::<Result<Vec<_>>>()?;
    write_records(out, &records, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weil::is_weil_root_locus;

    fn field(q: u64) -> FieldParams {
        FieldParams::from_q(q).unwrap()
    }

    #[test]
    fn intervals_match_brute_force() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 16, 25] {
            let f = field(q);
            let [(smin, smax), (tmin, tmax), (umin, umax)] = WeilCoeffs::prefilter_box(f);
            for s in (smin..=smax).step_by(3) {
                for t in (tmin..=tmax).step_by(5) {
                    let iv = u_interval(s, t, f);
                    for u in umin - 1..=umax + 1 {
                        assert_eq!(iv.contains(u), is_weil_root_locus(&WeilCoeffs::new(f, s, t, u)), "{q} {s} {t} {u}");
                    }
                }
            }
        }
    }

    #[test]
    fn symmetric_when_a_and_b_vanish() {
        for q in [3u64, 9, 23, 25] {
            let iv = u_interval(0, 3 * q as i64, field(q));
            assert!(!iv.is_empty());
            assert_eq!(iv.lo, -iv.hi);
        }
    }

    #[test]
    fn extreme_t_is_empty() {
        let f = field(7);
        assert!(u_interval(0, 15 * 7, f).is_empty());
        assert!(u_interval(0, -15 * 7, f).is_empty());
    }

    #[test]
    fn congruence_counts() {
        let iv = UInterval { lo: -5, hi: 7 };
        for (m, r) in [(2, 0), (2, 1), (3, 0), (5, 2)] {
            let direct = iv.iter().filter(|u| u.rem_euclid(m) == r).count() as u64;
            assert_eq!(iv.count_congruent(m, r), direct);
        }
        assert_eq!(UInterval::EMPTY.count_congruent(2, 0), 0);
    }

    #[test]
    fn count_and_materialize_agree() {
        for q in [2u64, 3, 4, 9] {
            let f = field(q);
            let m = enumerate_valid(f, Mode::Materialize, Admissibility::RootLocus).unwrap();
            let c = enumerate_valid(f, Mode::Count, Admissibility::RootLocus).unwrap();
            assert_eq!(m.len(), c.len());
            let Enumerated::Profiles(ps) = m else { unreachable!() };
            let keys: Vec<_> = ps.iter().map(|p| (p.coeffs.s, p.coeffs.t, p.coeffs.u)).collect();
            let mut sorted = keys.clone();
            sorted.sort();
            assert_eq!(keys, sorted);
        }
    }

    #[test]
    fn dataset_mode_requires_records() {
        let f = field(2);
        assert!(matches!(
            enumerate_valid(f, Mode::Count, Admissibility::Dataset(&[])),
            Err(Error::DatasetNotLoaded)
        ));
    }

    #[test]
    fn pruning_stays_in_prefilter_box() {
        for q in [2u64, 5, 27, 101] {
            let f = field(q);
            let bound = 20.0 * (q as f64).powf(1.5) + 1.0;
            for s in s_range(f) {
                for t in t_range(s, f) {
                    let iv = u_interval(s, t, f);
                    if !iv.is_empty() {
                        assert!((iv.lo as f64) >= -bound && (iv.hi as f64) <= bound);
                    }
                }
            }
        }
    }
}
