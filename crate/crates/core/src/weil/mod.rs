//! Exact invariants of degree-6 Weil polynomials
//! `f(x) = x^6 + s x^5 + t x^4 + u x^3 + q t x^2 + q^2 s x + q^3`.

mod field;
mod newton;
mod profile;
mod quad;
mod resultant;
mod shape;

pub use field::{FieldParams, MAX_Q};
pub use newton::{newton_polygon, newton_slopes, NewtonPolygon, Slope};
pub use profile::Profile;
pub use quad::QuadExtValue;
pub use resultant::{sylvester_resultant, IntPoly};
pub use shape::{factor_shape, type_vector, FactorShape};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::isqrt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeilCoeffs {
    pub field: FieldParams,
    pub s: i64,
    pub t: i64,
    pub u: i64,
}

impl WeilCoeffs {
    pub fn new(field: FieldParams, s: i64, t: i64, u: i64) -> Self {
        Self { field, s, t, u }
    }

    pub fn q(&self) -> i128 {
        self.field.q() as i128
    }

    /// Coefficients of `f` from the constant term up.
    pub fn weil_polynomial(&self) -> [i128; 7] {
        let q = self.q();
        let (s, t, u) = (self.s as i128, self.t as i128, self.u as i128);
        [q * q * q, q * q * s, q * t, u, t, s, 1]
    }

    /// Necessary bounds `|s| <= 6 sqrt(q)`, `|t| <= 15 q`, `|u| <= 20 q^(3/2)`.
    pub fn within_prefilter(&self) -> bool {
        let q = self.q();
        let (s, t, u) = (self.s as i128, self.t as i128, self.u as i128);
        s * s <= 36 * q && t.abs() <= 15 * q && u * u <= 400 * q * q * q
    }

    /// The (s, t, u) box the prefilter admits, as inclusive ranges.
    pub fn prefilter_box(field: FieldParams) -> [(i64, i64); 3] {
        let q = field.q() as u128;
        let smax = isqrt(36 * q) as i64;
        let tmax = 15 * q as i64;
        let umax = isqrt(400 * q * q * q) as i64;
        [(-smax, smax), (-tmax, tmax), (-umax, umax)]
    }
}

/// `g(x) = x^3 + a x^2 + b x + c` with `f(x) = x^3 g(x + q/x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RealWeilCubic {
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

impl RealWeilCubic {
    pub fn eval(&self, x: i128) -> i128 {
        ((x + self.a) * x + self.b) * x + self.c
    }

    pub fn discriminant(&self) -> i128 {
        let (a, b, c) = (self.a, self.b, self.c);
        18 * a * b * c - 4 * a * a * a * c + a * a * b * b - 4 * b * b * b - 27 * c * c
    }

    /// `g(±2 sqrt(q))` as exact quadratic-extension values `(g(w), g(-w))`.
    pub fn at_boundary(&self, q: i128) -> (QuadExtValue, QuadExtValue) {
        let rat = 4 * self.a * q + self.c;
        let irr = 2 * (4 * q + self.b);
        (QuadExtValue::new(rat, irr, q), QuadExtValue::new(rat, -irr, q))
    }

    /// `g'(±2 sqrt(q))`.
    pub fn derivative_at_boundary(&self, q: i128) -> (QuadExtValue, QuadExtValue) {
        let rat = 12 * q + self.b;
        let irr = 4 * self.a;
        (QuadExtValue::new(rat, irr, q), QuadExtValue::new(rat, -irr, q))
    }

    /// All three roots real and inside `[-2 sqrt(q), 2 sqrt(q)]`, multiplicities allowed.
    ///
    /// For a monic cubic with nonnegative discriminant this is equivalent to
    /// `g(-w) <= 0 <= g(w)`, `g'(±w) >= 0` and the inflection point `-a/3` in `[-w, w]`.
    pub fn roots_in_interval(&self, q: i128) -> bool {
        if self.a * self.a > 36 * q {
            return false;
        }
        let (dp, dm) = self.derivative_at_boundary(q);
        if !dp.is_nonnegative() || !dm.is_nonnegative() {
            return false;
        }
        let (gp, gm) = self.at_boundary(q);
        gp.is_nonnegative() && gm.is_nonpositive() && self.discriminant() >= 0
    }
}

pub fn real_weil(coeffs: &WeilCoeffs) -> RealWeilCubic {
    let q = coeffs.q();
    let s = coeffs.s as i128;
    RealWeilCubic { a: s, b: coeffs.t as i128 - 3 * q, c: coeffs.u as i128 - 2 * q * s }
}

pub fn is_weil_root_locus(coeffs: &WeilCoeffs) -> bool {
    coeffs.within_prefilter() && real_weil(coeffs).roots_in_interval(coeffs.q())
}

/// Overflow-tracking integer used by the closed-form power sums.
#[derive(Clone, Copy)]
struct Ck(Option<i128>);

impl Ck {
    fn of(x: i128) -> Self {
        Ck(Some(x))
    }
}

impl std::ops::Add for Ck {
    type Output = Ck;
    fn add(self, o: Ck) -> Ck {
        Ck(self.0.zip(o.0).and_then(|(a, b)| a.checked_add(b)))
    }
}

impl std::ops::Sub for Ck {
    type Output = Ck;
    fn sub(self, o: Ck) -> Ck {
        Ck(self.0.zip(o.0).and_then(|(a, b)| a.checked_sub(b)))
    }
}

impl std::ops::Mul for Ck {
    type Output = Ck;
    fn mul(self, o: Ck) -> Ck {
        Ck(self.0.zip(o.0).and_then(|(a, b)| a.checked_mul(b)))
    }
}

impl std::ops::Mul<Ck> for i128 {
    type Output = Ck;
    fn mul(self, o: Ck) -> Ck {
        Ck::of(self) * o
    }
}

/// Power sums `p_1..p_6` of the roots whose elementary symmetric functions
/// are `(s, t, u, q t, q^2 s, q^3)`, from the closed forms.
fn closed_form_power_sums(coeffs: &WeilCoeffs) -> [Option<i128>; 6] {
    let s = Ck::of(coeffs.s as i128);
    let t = Ck::of(coeffs.t as i128);
    let u = Ck::of(coeffs.u as i128);
    let q = Ck::of(coeffs.q());
    let s2 = s * s;
    let s3 = s2 * s;
    let s4 = s3 * s;
    let q2 = q * q;
    let p1 = s;
    let p2 = s2 - 2 * t;
    let p3 = s3 - 3 * (s * t) + 3 * u;
    let p4 = s4 - 4 * (s2 * t) + 2 * (t * t) + 4 * (s * u) - 4 * (q * t);
    let p5 = s4 * s - 5 * (s3 * t) + 5 * (s2 * u) + 5 * (s * t * t) - 5 * (t * u) - 5 * (q * s * t)
        + 5 * (q2 * s);
    let p6 = s3 * s3 - 6 * (s4 * t) + 6 * (s3 * u) + 9 * (s2 * t * t) - 6 * (q * s2 * t)
        - 12 * (s * t * u)
        + 6 * (q2 * s2)
        - 2 * (t * t * t)
        + 3 * (u * u)
        + 6 * (q * t * t)
        - 6 * (q2 * q);
    [p1.0, p2.0, p3.0, p4.0, p5.0, p6.0]
}

/// `p_n = sum of alpha_i^n` over the six roots, with `p_1 = s`.
///
/// Uses the closed forms for `n <= 6` and the order-6 linear recurrence beyond.
pub fn power_sum(coeffs: &WeilCoeffs, n: u32) -> Result<i128> {
    if n == 0 {
        return Err(Error::ZeroPowerIndex);
    }
    let closed = closed_form_power_sums(coeffs);
    if n <= 6 {
        return closed[n as usize - 1].ok_or(Error::Overflow("power sum"));
    }
    let mut window = [0i128; 6];
    for (slot, value) in window.iter_mut().zip(closed) {
        *slot = value.ok_or(Error::Overflow("power sum"))?;
    }
    let q = coeffs.q();
    let (s, t, u) = (coeffs.s as i128, coeffs.t as i128, coeffs.u as i128);
    // p_n = e1 p_{n-1} - e2 p_{n-2} + e3 p_{n-3} - e4 p_{n-4} + e5 p_{n-5} - e6 p_{n-6}
    let signed_e = [s, -t, u, -(q * t), q * q * s, -(q * q * q)];
    for _ in 7..=n {
        let mut next: i128 = 0;
        for (k, e) in signed_e.iter().enumerate() {
            let term = e.checked_mul(window[5 - k]).ok_or(Error::Overflow("power sum"))?;
            next = next.checked_add(term).ok_or(Error::Overflow("power sum"))?;
        }
        window.rotate_left(1);
        window[5] = next;
    }
    Ok(window[5])
}

/// Predicted `#C(F_{q^n}) = 1 + q^n - p_n`. May be negative.
pub fn curve_point_count(coeffs: &WeilCoeffs, n: u32) -> Result<i128> {
    let pn = power_sum(coeffs, n)?;
    let qn = coeffs.q().checked_pow(n).ok_or(Error::Overflow("q^n"))?;
    (1 + qn).checked_sub(pn).ok_or(Error::Overflow("point count"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn co(q: u64, s: i64, t: i64, u: i64) -> WeilCoeffs {
        WeilCoeffs::new(FieldParams::from_q(q).unwrap(), s, t, u)
    }

    /// Coefficients realizing a given real cubic over F_q.
    fn from_real(q: u64, a: i64, b: i64, c: i64) -> WeilCoeffs {
        let qi = q as i64;
        co(q, a, b + 3 * qi, c + 2 * qi * a)
    }

    #[test]
    fn real_weil_examples() {
        let g = real_weil(&co(7, 0, 0, 0));
        assert_eq!((g.a, g.b, g.c), (0, -21, 0));
        let g = real_weil(&co(23, 2, 4, 92));
        assert_eq!((g.a, g.b, g.c), (2, -65, 0));
        let g = real_weil(&co(25, 5, -24, -245));
        assert_eq!((g.a, g.b, g.c), (5, -99, -495));
    }

    #[test]
    fn real_weil_round_trip_expansion() {
        // x^3 g(x + q/x), expanded by hand: x^6 + a x^5 + (b + 3q) x^4 + (c + 2aq) x^3 + ...
        for (q, s, t, u) in [(7, 1, -3, 11), (25, 5, -24, -245), (2, -1, 0, 3)] {
            let w = co(q, s, t, u);
            let g = real_weil(&w);
            let qi = q as i128;
            let expanded = [
                qi * qi * qi,
                g.a * qi * qi,
                (g.b + 3 * qi) * qi,
                g.c + 2 * g.a * qi,
                g.b + 3 * qi,
                g.a,
                1,
            ];
            assert_eq!(expanded, w.weil_polynomial());
        }
    }

    #[test]
    fn root_locus_examples() {
        for q in [2, 3, 4, 9, 25] {
            assert!(is_weil_root_locus(&from_real(q, 0, -1, 0)));
        }
        // (x - 5)^3 over F_4: root 5 > 4
        assert!(!is_weil_root_locus(&co(4, -15, 87, -245)));
        // x (x - 4)(x + 4) over F_4: boundary roots
        assert!(is_weil_root_locus(&from_real(4, 0, -16, 0)));
        // (x + 4)^3 over F_4: triple boundary root
        assert!(is_weil_root_locus(&from_real(4, 12, 48, 64)));
        // x^2 + 1 factor: complex roots
        assert!(!is_weil_root_locus(&from_real(7, 0, 1, 0)));
    }

    #[test]
    fn power_sum_examples() {
        let w = co(13, 3, -4, 17);
        assert_eq!(power_sum(&w, 1).unwrap(), 3);
        assert_eq!(power_sum(&co(5, 1, 1, 0), 2).unwrap(), -1);
        assert!(matches!(power_sum(&w, 0), Err(Error::ZeroPowerIndex)));
    }

    #[test]
    fn point_count_examples() {
        assert_eq!(curve_point_count(&co(7, 0, 0, 0), 1).unwrap(), 8);
        assert_eq!(curve_point_count(&co(23, 2, 4, 92), 1).unwrap(), 22);
        assert_eq!(curve_point_count(&co(5, 7, 0, 0), 1).unwrap(), -1);
    }

    #[test]
    fn prefilter_box_matches_predicate() {
        let f = FieldParams::from_q(7).unwrap();
        let [(s0, s1), (t0, t1), (u0, u1)] = WeilCoeffs::prefilter_box(f);
        assert!(WeilCoeffs::new(f, s1, t1, u1).within_prefilter());
        assert!(WeilCoeffs::new(f, s0, t0, u0).within_prefilter());
        assert!(!WeilCoeffs::new(f, s1 + 1, 0, 0).within_prefilter());
        assert!(!WeilCoeffs::new(f, 0, t1 + 1, 0).within_prefilter());
        assert!(!WeilCoeffs::new(f, 0, 0, u1 + 1).within_prefilter());
    }
}
