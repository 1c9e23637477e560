//! The obstruction predicates. Each function evaluates only the rule's
//! condition; applicability gates live in the registry.

use super::{Interpretation, PvqReading, TypeEvaluation};
use crate::numeric::{exact_sqrt, floor_sqrt_i, is_squarefree};
use crate::weil::{curve_point_count, newton_slopes, FactorShape, Profile, Slope};

/// Discriminants `alpha^2 - 4q` forbidden for `f = f_E^3`.
pub const FORBIDDEN_DISCRIMINANTS: [i128; 20] =
    [0, -3, -4, -7, -8, -11, -19, -20, -23, -27, -35, -39, -43, -51, -59, -67, -75, -83, -91, -99];

const TYPE_1_3_N_1: [[i128; 3]; 8] = [
    [-4, -1, 0],
    [0, 1, 4],
    [-4, -3, 0],
    [0, 3, 4],
    [-3, -2, 0],
    [0, 2, 3],
    [-1, 0, 2],
    [-2, 0, 1],
];

fn three_linear(profile: &Profile) -> Option<(i128, i128, i128)> {
    match profile.shape {
        FactorShape::ThreeLinear { alpha, beta, gamma } => Some((alpha, beta, gamma)),
        _ => None,
    }
}

fn linear_quadratic(profile: &Profile) -> Option<(i128, i128, i128)> {
    match profile.shape {
        FactorShape::LinearQuadratic { alpha, delta, epsilon } => Some((alpha, delta, epsilon)),
        _ => None,
    }
}

/// `p * v_p(q)` under the selected reading.
pub fn p_times_vp(profile: &Profile, reading: PvqReading) -> i128 {
    let field = profile.coeffs.field;
    match reading {
        PvqReading::PTimesR => field.p() as i128 * field.r() as i128,
        PvqReading::FloorTwoSqrtQ => floor_sqrt_i(4 * field.q() as i128),
    }
}

/// Rules 1.N.N.0 (odd p) and 0.N.N.0 (p = 2).
pub fn parity_rule(profile: &Profile) -> bool {
    let c = &profile.coeffs;
    let (s, t, u) = (c.s.rem_euclid(2), c.t.rem_euclid(2), c.u.rem_euclid(2));
    if c.field.is_even() {
        matches!((s, t, u), (0, 1, 1) | (1, 0, 1) | (1, 1, 0))
    } else {
        (t, u) == (0, 1)
    }
}

/// Rule N.N.N.0: negative predicted counts, non-monotone counts in small
/// extensions, and counts above the double-cover bound.
pub fn point_count_obstruction(profile: &Profile) -> bool {
    let coeffs = &profile.coeffs;
    let q = coeffs.q();
    let count = |n: u32| curve_point_count(coeffs, n).ok();

    if count(1).is_some_and(|c| c < 0) {
        return true;
    }

    let mut n = 1u32;
    while q.pow(n) <= 8 {
        if let Some(base) = count(n) {
            for m in 2..=6u32 {
                if count(m * n).is_some_and(|c| c < base) {
                    return true;
                }
            }
        }
        n += 1;
    }

    let exceeds_double_cover = |n: u32| count(n).is_some_and(|c| c > 2 * (q.pow(n) + 1));
    (q <= 32 && exceeds_double_cover(1)) || (q <= 5 && exceeds_double_cover(2))
}

/// Rule N.N.N.1: some splitting `g = h1 h2` over the integers has `res(h1, h2) = ±1`.
pub fn resultant_one_obstruction(profile: &Profile) -> bool {
    match profile.shape {
        FactorShape::LinearQuadratic { alpha, delta, epsilon } => {
            (alpha * alpha - alpha * delta + epsilon).abs() == 1
        }
        FactorShape::ThreeLinear { alpha, beta, gamma } => [
            (beta - alpha) * (gamma - alpha),
            (alpha - beta) * (gamma - beta),
            (alpha - gamma) * (beta - gamma),
        ]
        .iter()
        .any(|r| r.abs() == 1),
        FactorShape::IrreducibleCubic { .. } => false,
    }
}

/// p-rank of the abelian variety with real Weil polynomial `h` (constant term first).
fn real_factor_p_rank(h: &[i128], q: i128, p: u64) -> usize {
    let weil: Vec<i128> = match *h {
        [alpha, 1] => vec![q, alpha, 1],
        [epsilon, delta, 1] => vec![q * q, delta * q, epsilon + 2 * q, delta, 1],
        _ => unreachable!("h0 has degree 1 or 2"),
    };
    newton_slopes(p, &weil).iter().filter(|v| **v == Slope::from_integer(0)).count()
}

/// Rule N.N.N.2 (square q only): `g = h0 (x ∓ 2 sqrt q)^n` with `h0` nonconstant,
/// ordinary and `|h0(root)|` squarefree.
pub fn type_obstruction(profile: &Profile, eval: TypeEvaluation) -> bool {
    let field = profile.coeffs.field;
    let Some(sqrt_q) = field.sqrt_q() else {
        return false;
    };
    let w = 2 * sqrt_q;
    let q = field.q() as i128;
    let g = &profile.real;
    [w, -w].into_iter().any(|root| {
        // deflate g by (x - root) as often as possible
        let mut h = vec![g.c, g.b, g.a, 1];
        let mut n = 0;
        while h.len() > 1 {
            let value = h.iter().rev().fold(0i128, |acc, &c| acc * root + c);
            if value != 0 {
                break;
            }
            let mut quotient = vec![0i128; h.len() - 1];
            let mut carry = 0i128;
            for i in (1..h.len()).rev() {
                carry = h[i] + carry * root;
                quotient[i - 1] = carry;
            }
            h = quotient;
            n += 1;
        }
        if n == 0 || h.len() < 2 {
            return false;
        }
        let degree = h.len() - 1;
        if real_factor_p_rank(&h, q, field.p()) != degree {
            return false;
        }
        let at = match eval {
            TypeEvaluation::SplitRoot => root,
            TypeEvaluation::PlusRoot => w,
        };
        let value = h.iter().rev().fold(0i128, |acc, &c| acc * at + c);
        is_squarefree(value)
    })
}

/// Rule N.3.N.0: `f = f_E^3` with a forbidden discriminant.
pub fn discriminant_obstruction(profile: &Profile) -> bool {
    match three_linear(profile) {
        Some((a, b, c)) if a == b && b == c => {
            FORBIDDEN_DISCRIMINANTS.contains(&(a * a - 4 * profile.coeffs.q()))
        }
        _ => false,
    }
}

/// Rule 0.N.0.0: in characteristic 2 with 2-rank 0, a supersingular Newton polygon.
pub fn char2_supersingular_obstruction(profile: &Profile) -> bool {
    profile.coeffs.field.is_even() && profile.p_rank == 0 && profile.newton.is_supersingular()
}

/// Condition column of the remaining table rows, keyed by label.
pub(super) fn table_condition(id: &str, profile: &Profile, interp: &Interpretation) -> bool {
    let field = profile.coeffs.field;
    let (p, q) = (field.p() as i128, field.q() as i128);
    let pv = p_times_vp(profile, interp.pvq(id));
    let real = &profile.real;
    match id {
        "0.2.2.0" => linear_quadratic(profile).is_some_and(|(a, _, e)| a == 0 && e.abs() == 3),
        "0.3.1.0" => three_linear(profile).is_some_and(|(a, b, c)| {
            let root = exact_sqrt(p * q);
            let is_root = |x: i128| Some(x) == root;
            c - a == 1
                || is_root(c - a)
                || (is_root(b - a) && c - b == 1)
                || (b - a == 1 && is_root(c - b))
        }),
        "0.3.2.0" => three_linear(profile).is_some_and(|(a, _, c)| a + 5 > c),
        "0.3.2.1" => three_linear(profile).is_some_and(|(a, b, c)| a == -pv && b < c && c < pv - 1),
        "0.3.2.2" => {
            three_linear(profile).is_some_and(|(a, b, c)| 1 - pv < a && a < b && b <= c && c == pv)
        }
        "1.1.0.0" => real.b > -q && real.b % q == 0 && (real.b / q) % 2 == 0,
        "1.1.0.1" => {
            (real.b == -3 * q && real.c % q == 0 && (real.c / q) % 2 != 0)
                || ((real.b == -2 * q || real.b == -q) && real.a.abs() == 2 * p)
        }
        "1.2.1.0" => linear_quadratic(profile).is_some_and(|(a, d, e)| {
            a % 2 != 0 && d.rem_euclid(4) == 0 && e.rem_euclid(4) == (2 - 2 * q).rem_euclid(4)
        }),
        "1.2.2.0" => linear_quadratic(profile)
            .is_some_and(|(_, d, e)| d % 2 != 0 && matches!(e, -3 | -2 | 2 | 3)),
        "1.3.1.0" => {
            let s = profile.coeffs.s as i128;
            let root = field.sqrt_q().unwrap_or(0);
            three_linear(profile).is_some() && s % 2 != 0 && s.abs() <= root
        }
        "1.3.1.1" => three_linear(profile).is_some_and(|(a, _, c)| a.abs() <= 3 && c.abs() <= 3),
        "1.3.2.0" => three_linear(profile)
            .is_some_and(|(a, b, c)| c == pv && (b - a == 2 || (a == -pv && c - b == 2))),
        "1.3.2.1" => three_linear(profile)
            .is_some_and(|(a, b, c)| [a, b, c] == [-2, -2, 0] || [a, b, c] == [0, 2, 2]),
        "1.3.N.0" => three_linear(profile).is_some_and(|(a, b, c)| a * a + b * b + c * c == 9),
        "1.3.N.1" => three_linear(profile).is_some_and(|(a, b, c)| TYPE_1_3_N_1.contains(&[a, b, c])),
        "N.3.0.0" => three_linear(profile).is_some_and(|(a, _, c)| a.abs() != pv && c.abs() != pv),
        "N.3.0.1" => three_linear(profile)
            .is_some_and(|(a, b, c)| (a, b) == (-pv, -pv) || (b, c) == (pv, pv)),
        _ => false,
    }
}
