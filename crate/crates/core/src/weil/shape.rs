use serde::{Deserialize, Serialize};

use super::{FieldParams, RealWeilCubic};
use crate::error::{Error, Result};
use crate::numeric::{ceil_sqrt, is_perfect_square};

/// Factorization of the real Weil cubic over the integers, written with the
/// convention `g(x) = (x + alpha)(x + beta)(x + gamma)` etc., so stored values
/// are the negatives of integer roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FactorShape {
    ThreeLinear { alpha: i128, beta: i128, gamma: i128 },
    LinearQuadratic { alpha: i128, delta: i128, epsilon: i128 },
    IrreducibleCubic { a: i128, b: i128, c: i128 },
}

impl FactorShape {
    /// Number of irreducible factors counted with multiplicity.
    pub fn factor_count(&self) -> u8 {
        match self {
            FactorShape::ThreeLinear { .. } => 3,
            FactorShape::LinearQuadratic { .. } => 2,
            FactorShape::IrreducibleCubic { .. } => 1,
        }
    }

    /// Number of distinct irreducible factors.
    pub fn distinct_factor_count(&self) -> u8 {
        match *self {
            FactorShape::ThreeLinear { alpha, beta, gamma } => {
                1 + (alpha != beta) as u8 + (beta != gamma) as u8
            }
            _ => self.factor_count(),
        }
    }

    pub fn linear_terms(&self) -> Vec<i128> {
        match *self {
            FactorShape::ThreeLinear { alpha, beta, gamma } => vec![alpha, beta, gamma],
            FactorShape::LinearQuadratic { alpha, .. } => vec![alpha],
            FactorShape::IrreducibleCubic { .. } => Vec::new(),
        }
    }

    /// Expands back to the monic cubic `(a, b, c)`.
    pub fn expand(&self) -> RealWeilCubic {
        match *self {
            FactorShape::ThreeLinear { alpha, beta, gamma } => RealWeilCubic {
                a: alpha + beta + gamma,
                b: alpha * beta + alpha * gamma + beta * gamma,
                c: alpha * beta * gamma,
            },
            FactorShape::LinearQuadratic { alpha, delta, epsilon } => RealWeilCubic {
                a: alpha + delta,
                b: alpha * delta + epsilon,
                c: alpha * epsilon,
            },
            FactorShape::IrreducibleCubic { a, b, c } => RealWeilCubic { a, b, c },
        }
    }
}

fn find_integer_root(g: &RealWeilCubic, bound: i128) -> Option<i128> {
    (-bound..=bound).find(|&x| (g.c == 0 || (x != 0 && g.c % x == 0)) && g.eval(x) == 0)
}

/// Integer factorization of `g` by scanning divisors of the constant term
/// inside `[-ceil(2 sqrt q), ceil(2 sqrt q)]`.
pub fn factor_shape(real: &RealWeilCubic, field: FieldParams) -> FactorShape {
    let bound = ceil_sqrt(4 * field.q() as u128) as i128;
    let Some(root) = find_integer_root(real, bound) else {
        return FactorShape::IrreducibleCubic { a: real.a, b: real.b, c: real.c };
    };
    // g = (x - root)(x^2 + delta x + epsilon)
    let delta = real.a + root;
    let epsilon = real.b + root * delta;
    let alpha = -root;
    let disc = delta * delta - 4 * epsilon;
    if !is_perfect_square(disc) {
        return FactorShape::LinearQuadratic { alpha, delta, epsilon };
    }
    let sq = crate::numeric::isqrt(disc as u128) as i128;
    // x^2 + delta x + epsilon = (x + (delta - sq)/2)(x + (delta + sq)/2)
    let mut terms = [alpha, (delta - sq) / 2, (delta + sq) / 2];
    terms.sort();
    FactorShape::ThreeLinear { alpha: terms[0], beta: terms[1], gamma: terms[2] }
}

/// Howe–Lauter type `[x1, x2, x3]`: the entries of `g(x) = prod (x + x_i)`, ascending.
pub fn type_vector(shape: &FactorShape) -> Result<[i128; 3]> {
    match *shape {
        FactorShape::ThreeLinear { alpha, beta, gamma } => Ok([alpha, beta, gamma]),
        _ => Err(Error::NotThreeLinear),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(q: u64, a: i128, b: i128, c: i128) -> FactorShape {
        factor_shape(&RealWeilCubic { a, b, c }, FieldParams::from_q(q).unwrap())
    }

    #[test]
    fn examples() {
        assert_eq!(
            shape(5, 0, -1, 0),
            FactorShape::ThreeLinear { alpha: -1, beta: 0, gamma: 1 }
        );
        assert_eq!(
            shape(5, 2, 4, 3),
            FactorShape::LinearQuadratic { alpha: 1, delta: 1, epsilon: 3 }
        );
        assert_eq!(shape(5, 0, -6, 1), FactorShape::IrreducibleCubic { a: 0, b: -6, c: 1 });
        assert_eq!(
            shape(25, 5, -99, -495),
            FactorShape::LinearQuadratic { alpha: 5, delta: 0, epsilon: -99 }
        );
    }

    #[test]
    fn repeated_and_boundary_roots() {
        // (x + 4)^3 over F_4
        let s = shape(4, 12, 48, 64);
        assert_eq!(s, FactorShape::ThreeLinear { alpha: 4, beta: 4, gamma: 4 });
        assert_eq!(s.factor_count(), 3);
        assert_eq!(s.distinct_factor_count(), 1);
        // (x - 6)(x^2 + x - 5) over F_9
        assert_eq!(
            shape(9, -5, -11, 30),
            FactorShape::LinearQuadratic { alpha: -6, delta: 1, epsilon: -5 }
        );
    }

    #[test]
    fn expansion_round_trips() {
        for g in [(0, -1, 0), (2, 4, 3), (0, -6, 1), (-5, -11, 30), (12, 48, 64), (1, -4, -4)] {
            let real = RealWeilCubic { a: g.0, b: g.1, c: g.2 };
            assert_eq!(factor_shape(&real, FieldParams::from_q(9).unwrap()).expand(), real);
        }
    }

    #[test]
    fn type_vectors() {
        let s = FactorShape::ThreeLinear { alpha: -1, beta: 0, gamma: 1 };
        assert_eq!(type_vector(&s).unwrap(), [-1, 0, 1]);
        let q = 7;
        let s = FactorShape::ThreeLinear { alpha: 2 * q - 3, beta: 2 * q, gamma: 2 * q };
        assert_eq!(type_vector(&s).unwrap(), [2 * q - 3, 2 * q, 2 * q]);
        let s = FactorShape::ThreeLinear { alpha: 3, beta: 3, gamma: 3 };
        assert_eq!(type_vector(&s).unwrap(), [3, 3, 3]);
        let s = FactorShape::IrreducibleCubic { a: 0, b: -6, c: 1 };
        assert!(type_vector(&s).is_err());
    }
}
