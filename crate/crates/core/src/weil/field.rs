use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{exact_sqrt, is_prime, prime_power};

/// Upper limit on `q` keeping every kernel computation inside `i128`.
pub const MAX_Q: u64 = 1 << 32;

/// The finite field `F_q` with `q = p^r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldParams {
    p: u64,
    r: u32,
    q: u64,
}

impl FieldParams {
    pub fn new(p: u64, r: u32) -> Result<Self> {
        if !is_prime(p) || r == 0 {
            return Err(Error::NotPrimePower(p.saturating_pow(r)));
        }
        let q = p.checked_pow(r).filter(|&q| q <= MAX_Q).ok_or(Error::FieldTooLarge(u64::MAX))?;
        Ok(Self { p, r, q })
    }

    pub fn from_q(q: u64) -> Result<Self> {
        if q > MAX_Q {
            return Err(Error::FieldTooLarge(q));
        }
        let (p, r) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Ok(Self { p, r, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `v_p(q)`.
    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_square(&self) -> bool {
        self.r.is_multiple_of(2)
    }

    pub fn is_prime_field(&self) -> bool {
        self.r == 1
    }

    pub fn is_even(&self) -> bool {
        self.p == 2
    }

    /// `sqrt(q)` when `q` is a square.
    pub fn sqrt_q(&self) -> Option<i128> {
        exact_sqrt(self.q as i128)
    }
}

impl std::fmt::Display for FieldParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}", self.q)
    }
}
