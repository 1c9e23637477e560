use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Integer polynomial, constant term first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly(Vec<i128>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    /// `x + alpha`
    pub fn linear(alpha: i128) -> Self {
        Self::new(vec![alpha, 1])
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.0
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.0.is_empty() || other.0.is_empty() {
            return IntPoly(Vec::new());
        }
        let mut out = vec![0i128; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn eval(&self, x: i128) -> i128 {
        self.0.iter().rev().fold(0, |acc, &c| acc * x + c)
    }
}

/// Sylvester matrix with `h1`'s coefficients (leading first) in the top rows.
pub fn sylvester_matrix(h1: &IntPoly, h2: &IntPoly) -> Result<Vec<Vec<i128>>> {
    let (m, n) = match (h1.degree(), h2.degree()) {
        (Some(m), Some(n)) if m >= 1 && n >= 1 => (m, n),
        _ => return Err(Error::DegenerateResultant),
    };
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (poly, deg, copies) in [(h1, m, n), (h2, n, m)] {
        for shift in 0..copies {
            let mut row = vec![0i128; size];
            for (k, &c) in poly.coeffs().iter().rev().enumerate() {
                row[shift + k] = c;
            }
            debug_assert_eq!(poly.coeffs().len(), deg + 1);
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Exact determinant of the Sylvester matrix (fraction-free Bareiss elimination).
pub fn sylvester_resultant(h1: &IntPoly, h2: &IntPoly) -> Result<BigInt> {
    let rows = sylvester_matrix(h1, h2)?;
    Ok(bareiss_determinant(rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()))
}

fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn res(a: &[i128], b: &[i128]) -> BigInt {
        sylvester_resultant(&IntPoly::new(a.to_vec()), &IntPoly::new(b.to_vec())).unwrap()
    }

    #[test]
    fn small_cases() {
        assert_eq!(res(&[1, 1], &[2, 1]), BigInt::from(1));
        assert_eq!(res(&[2, 1], &[0, 1, 1]), BigInt::from(2));
        // shared root
        let h = IntPoly::linear(3);
        let other = h.mul(&IntPoly::new(vec![5, -2, 1]));
        assert_eq!(sylvester_resultant(&h, &other).unwrap(), BigInt::zero());
    }

    #[test]
    fn closed_forms() {
        for alpha in -50i128..=50 {
            for beta in [-50i128, -7, -1, 0, 2, 31] {
                assert_eq!(res(&[alpha, 1], &[beta, 1]), BigInt::from(beta - alpha));
            }
        }
        for alpha in (-50i128..=50).step_by(7) {
            for delta in -50i128..=50 {
                for eps in (-50i128..=50).step_by(5) {
                    let expected = alpha * alpha - alpha * delta + eps;
                    assert_eq!(res(&[alpha, 1], &[eps, delta, 1]), BigInt::from(expected));
                }
            }
        }
    }

    #[test]
    fn rejects_constants() {
        assert!(sylvester_resultant(&IntPoly::new(vec![3]), &IntPoly::linear(1)).is_err());
    }

    #[test]
    fn higher_degree_matches_product_of_root_differences() {
        // res(prod (x - a_i), prod (x - b_j)) = prod (a_i - b_j)
        let roots_a = [2i128, -3];
        let roots_b = [1i128, 5, -4];
        let build = |rs: &[i128]| rs.iter().fold(IntPoly::new(vec![1]), |acc, &r| acc.mul(&IntPoly::linear(-r)));
        let expected: i128 = roots_a.iter().flat_map(|a| roots_b.iter().map(move |b| a - b)).product();
        assert_eq!(sylvester_resultant(&build(&roots_a), &build(&roots_b)).unwrap(), BigInt::from(expected));
    }
}
