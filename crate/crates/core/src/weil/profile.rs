use serde::Serialize;

use super::{
    factor_shape, is_weil_root_locus, newton_polygon, real_weil, FactorShape, NewtonPolygon,
    RealWeilCubic, Slope, WeilCoeffs,
};
use crate::error::{Error, Result};

/// Every invariant the obstruction rules read.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    pub coeffs: WeilCoeffs,
    pub real: RealWeilCubic,
    pub shape: FactorShape,
    pub newton: NewtonPolygon,
    pub p_rank: u8,
    pub ordinary: bool,
    /// `q` square and `g` has a root `±2 sqrt(q)`, so `x^2 + alpha x + q` is a square.
    pub splits_further: bool,
}

impl Profile {
    pub fn new(coeffs: WeilCoeffs) -> Result<Self> {
        if !is_weil_root_locus(&coeffs) {
            let WeilCoeffs { s, t, u, .. } = coeffs;
            return Err(Error::NotWeil { q: coeffs.field.q(), s, t, u });
        }
        Ok(Self::new_unchecked(coeffs))
    }

    /// Builds a profile without the root-locus check (caller guarantees it).
    pub fn new_unchecked(coeffs: WeilCoeffs) -> Self {
        let real = real_weil(&coeffs);
        let shape = factor_shape(&real, coeffs.field);
        let newton = newton_polygon(&coeffs);
        let p_rank = newton.p_rank;
        let splits_further = match coeffs.field.sqrt_q() {
            Some(root) => shape.linear_terms().iter().any(|a| a.abs() == 2 * root),
            None => false,
        };
        Self { coeffs, real, shape, newton, p_rank, ordinary: p_rank == 3, splits_further }
    }

    pub fn factor_count(&self) -> u8 {
        self.shape.factor_count()
    }

    pub fn slopes(&self) -> &[Slope] {
        &self.newton.slopes
    }

    pub fn summary(&self) -> ProfileSummary {
        ProfileSummary {
            q: self.coeffs.field.q(),
            p: self.coeffs.field.p(),
            r: self.coeffs.field.r(),
            s: self.coeffs.s,
            t: self.coeffs.t,
            u: self.coeffs.u,
            real_cubic: [self.real.a, self.real.b, self.real.c],
            shape: self.shape,
            factor_count: self.factor_count(),
            p_rank: self.p_rank,
            slopes: self.newton.slopes.iter().map(|s| s.to_string()).collect(),
            ordinary: self.ordinary,
            splits_further: self.splits_further,
        }
    }
}

/// Serializable view of a [`Profile`].
#[derive(Debug, Clone, Serialize)]
pub struct ProfileSummary {
    pub q: u64,
    pub p: u64,
    pub r: u32,
    pub s: i64,
    pub t: i64,
    pub u: i64,
    pub real_cubic: [i128; 3],
    pub shape: FactorShape,
    pub factor_count: u8,
    pub p_rank: u8,
    pub slopes: Vec<String>,
    pub ordinary: bool,
    pub splits_further: bool,
}
