use std::cmp::Ordering;

use crate::numeric::exact_sqrt;

/// The number `rat + irr * sqrt(radicand)` with integer parts.
///
/// Signs are decided exactly by comparing `rat^2` against `radicand * irr^2`;
/// when the radicand is a perfect square the value collapses to an integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadExtValue {
    pub rat: i128,
    pub irr: i128,
    pub radicand: i128,
}

impl QuadExtValue {
    pub fn new(rat: i128, irr: i128, radicand: i128) -> Self {
        debug_assert!(radicand >= 0);
        Self { rat, irr, radicand }
    }

    pub fn signum(&self) -> i32 {
        if let Some(root) = exact_sqrt(self.radicand) {
            return sign(self.rat + self.irr * root);
        }
        match (sign(self.rat), sign(self.irr)) {
            (0, s) | (s, 0) => s,
            (a, b) if a == b => a,
            (ra, _) => {
                // opposite signs: the larger magnitude wins
                let rat_sq = self.rat * self.rat;
                let irr_sq = self.radicand * self.irr * self.irr;
                match rat_sq.cmp(&irr_sq) {
                    Ordering::Greater => ra,
                    Ordering::Less => -ra,
                    Ordering::Equal => 0,
                }
            }
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.signum() >= 0
    }

    pub fn is_nonpositive(&self) -> bool {
        self.signum() <= 0
    }

    pub fn to_f64(&self) -> f64 {
        self.rat as f64 + self.irr as f64 * (self.radicand as f64).sqrt()
    }
}

fn sign(x: i128) -> i32 {
    x.signum() as i32
}
