//! Curve parameter sets.
//!
//! * `paper47`: `y^2 = x^3 + 4x` over `GF(47^6)`, `l = 103`. The curve is
//!   supersingular with `#E(GF(47)) = 48`, so `E(GF(47^6)) = Z_N x Z_N` with
//!   `N = 47^3 + 1 = 103824`, and all of `E[103]` is rational.
//! * `toy11`: `y^2 = x^3 + x` over `GF(11^2)`, `l = 3`, `N = 12`. Small
//!   enough to enumerate every point.

use num_bigint::BigUint;

use crate::algebra::{ExtField, ModulusChoice, Zl};
use crate::curve::{count_points_prime_field, full_torsion_exponent, order_over_extension, Curve};
use crate::error::{Error, Result};

/// A curve `y^2 = x^3 + ax + b` with `a, b` in the prime subfield, over
/// `GF(p^r)`, together with the torsion order `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    pub p: u64,
    pub r: usize,
    pub a: u64,
    pub b: u64,
    pub l: u64,
    pub k: u32,
    /// Group exponent `N`. Derived from the point count when `None`, which
    /// only works when the group is `Z_N x Z_N`.
    pub exponent: Option<BigUint>,
}

impl CurveSpec {
    pub fn paper47() -> Self {
        CurveSpec {
            p: 47,
            r: 6,
            a: 4,
            b: 0,
            l: 103,
            k: 1,
            exponent: None,
        }
    }

    pub fn toy11() -> Self {
        CurveSpec {
            p: 11,
            r: 2,
            a: 1,
            b: 0,
            l: 3,
            k: 1,
            exponent: None,
        }
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "paper47" => Some(Self::paper47()),
            "toy11" => Some(Self::toy11()),
            _ => None,
        }
    }

    pub fn build(&self) -> Result<CurveSetup> {
        let field = ExtField::new(self.p, self.r, ModulusChoice::Auto)?;
        let curve = Curve::from_base_coeffs(&field, self.a, self.b)?;
        let ring = Zl::new(self.l)?;
        let base_count = count_points_prime_field(self.p, self.a, self.b);
        let order = order_over_extension(base_count, self.p, self.r as u32);
        let exponent = match &self.exponent {
            Some(n) => n.clone(),
            None => full_torsion_exponent(&order).ok_or(Error::TorsionNotRational)?,
        };
        Ok(CurveSetup {
            field,
            curve,
            ring,
            order,
            exponent,
            k: self.k,
        })
    }
}

/// Everything derived from a [`CurveSpec`] before any random choice.
#[derive(Clone, Debug)]
pub struct CurveSetup {
    pub field: ExtField,
    pub curve: Curve,
    pub ring: Zl,
    pub order: BigUint,
    pub exponent: BigUint,
    pub k: u32,
}
