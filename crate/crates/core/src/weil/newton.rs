use num_rational::Ratio;

use super::WeilCoeffs;
use crate::numeric::valuation;

pub type Slope = Ratio<i64>;

/// Newton polygon of a Weil polynomial, slopes normalized by `v_p(q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NewtonPolygon {
    /// Six slopes in `[0, 1]`, ascending, with multiplicity.
    pub slopes: Vec<Slope>,
    pub p_rank: u8,
}

impl NewtonPolygon {
    pub fn first_slope(&self) -> Slope {
        self.slopes[0]
    }

    pub fn is_supersingular(&self) -> bool {
        let half = Slope::new(1, 2);
        self.slopes.iter().all(|&s| s == half)
    }
}

/// Root valuations (negated lower-hull slopes) of the polynomial with the
/// given coefficients, constant term first; ascending with multiplicity.
///
/// Zero coefficients are skipped (valuation +infinity). The constant and
/// leading coefficients must be nonzero.
pub fn newton_slopes(p: u64, coeffs: &[i128]) -> Vec<Ratio<i64>> {
    let points: Vec<(i64, i64)> = coeffs
        .iter()
        .enumerate()
        .filter_map(|(i, &a)| valuation(p, a).map(|v| (i as i64, v as i64)))
        .collect();
    assert!(
        points.first().map(|pt| pt.0) == Some(0)
            && points.last().map(|pt| pt.0) == Some(coeffs.len() as i64 - 1),
        "constant and leading coefficients must be nonzero"
    );

    // lower hull, left to right
    let mut hull: Vec<(i64, i64)> = Vec::with_capacity(points.len());
    for &pt in &points {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 - o.0) * (pt.1 - o.1) - (a.1 - o.1) * (pt.0 - o.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }

    let mut slopes = Vec::with_capacity(coeffs.len() - 1);
    for seg in hull.windows(2) {
        let (dx, dy) = (seg[1].0 - seg[0].0, seg[1].1 - seg[0].1);
        let root_val = Ratio::new(-dy, dx);
        slopes.extend(std::iter::repeat_n(root_val, dx as usize));
    }
    slopes.sort();
    slopes
}

pub fn newton_polygon(coeffs: &WeilCoeffs) -> NewtonPolygon {
    let field = coeffs.field;
    let r = field.r() as i64;
    let slopes: Vec<Slope> = newton_slopes(field.p(), &coeffs.weil_polynomial())
        .into_iter()
        .map(|v| v / r)
        .collect();
    let p_rank = slopes.iter().filter(|s| **s == Slope::from_integer(0)).count() as u8;
    NewtonPolygon { slopes, p_rank }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weil::FieldParams;

    fn np(q: u64, s: i64, t: i64, u: i64) -> NewtonPolygon {
        newton_polygon(&WeilCoeffs::new(FieldParams::from_q(q).unwrap(), s, t, u))
    }

    fn sl(v: &[(i64, i64)]) -> Vec<Slope> {
        v.iter().map(|&(n, d)| Slope::new(n, d)).collect()
    }

    #[test]
    fn ordinary_example() {
        let n = np(2, 0, 0, 1);
        assert_eq!(n.slopes, sl(&[(0, 1), (0, 1), (0, 1), (1, 1), (1, 1), (1, 1)]));
        assert_eq!(n.p_rank, 3);
    }

    #[test]
    fn supersingular_example() {
        let n = np(4, 0, 0, 0);
        assert!(n.is_supersingular());
        assert_eq!(n.p_rank, 0);
    }

    #[test]
    fn first_slope_one_third() {
        let n = np(2, 0, 0, 2);
        assert_eq!(n.slopes, sl(&[(1, 3), (1, 3), (1, 3), (2, 3), (2, 3), (2, 3)]));
        assert_eq!(n.p_rank, 0);
        assert!(!n.is_supersingular());
    }

    #[test]
    fn unit_trace_forces_slope_zero() {
        for q in [3u64, 9, 25, 49] {
            let n = np(q, 1, 0, 0);
            assert!(n.p_rank >= 1);
            assert_eq!(n.first_slope(), Slope::from_integer(0));
        }
    }

    #[test]
    fn p_rank_one_and_two() {
        // v(s) > 0, v(t) = 0 -> p-rank 2
        assert_eq!(np(3, 3, 1, 3).p_rank, 2);
        // v(s), v(t) > 0, v(u) = 0 -> ordinary
        assert_eq!(np(3, 3, 3, 1).p_rank, 3);
        // only s is a unit -> p-rank 1
        assert_eq!(np(3, 1, 3, 3).p_rank, 1);
    }
}
