use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::{Rng, RngCore};

use super::prime::{add_mod, inv_mod, is_prime, mul_mod, pow_mod, sub_mod};
use crate::error::{Error, Result};

/// The scalar ring `Z_l` for a prime group order `l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Zl {
    l: u64,
}

impl Zl {
    pub fn new(l: u64) -> Result<Self> {
        if !is_prime(l) {
            return Err(Error::NotPrime(l));
        }
        Ok(Zl { l })
    }

    pub fn modulus(&self) -> u64 {
        self.l
    }

    pub fn elem(&self, v: u64) -> Scalar {
        Scalar {
            value: v % self.l,
            l: self.l,
        }
    }

    /// Reduces a signed integer, so `elem_i64(-1)` is `l - 1`.
    pub fn elem_i64(&self, v: i64) -> Scalar {
        self.elem((v as i128).rem_euclid(self.l as i128) as u64)
    }

    pub fn zero(&self) -> Scalar {
        self.elem(0)
    }

    pub fn one(&self) -> Scalar {
        self.elem(1)
    }

    pub fn random<R: RngCore + ?Sized>(&self, rng: &mut R) -> Scalar {
        self.elem(rng.gen_range(0..self.l))
    }

    /// Uniform in `[1, l - 1]`.
    pub fn random_nonzero<R: RngCore + ?Sized>(&self, rng: &mut R) -> Scalar {
        self.elem(rng.gen_range(1..self.l))
    }

    pub fn all(&self) -> impl Iterator<Item = Scalar> + '_ {
        (0..self.l).map(|v| self.elem(v))
    }
}

/// An element of `Z_l`, always reduced.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    value: u64,
    l: u64,
}

impl Scalar {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.l
    }

    pub fn ring(&self) -> Zl {
        Zl { l: self.l }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn inv(&self) -> Result<Scalar> {
        inv_mod(self.value, self.l)
            .map(|v| Scalar { value: v, l: self.l })
            .ok_or(Error::DivisionByZero)
    }

    pub fn pow(&self, e: u64) -> Scalar {
        Scalar {
            value: pow_mod(self.value, e, self.l),
            l: self.l,
        }
    }

    #[inline]
    fn same_ring(&self, other: &Scalar) {
        assert_eq!(self.l, other.l, "mixed scalars of different moduli");
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.l)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.same_ring(&rhs);
        Scalar {
            value: add_mod(self.value, rhs.value, self.l),
            l: self.l,
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.same_ring(&rhs);
        Scalar {
            value: sub_mod(self.value, rhs.value, self.l),
            l: self.l,
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.same_ring(&rhs);
        Scalar {
            value: mul_mod(self.value, rhs.value, self.l),
            l: self.l,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            value: sub_mod(0, self.value, self.l),
            l: self.l,
        }
    }
}

/// Dense polynomial over `Z_l`, low-to-high. The slot count is kept even when
/// the top coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyZl {
    coeffs: Vec<Scalar>,
}

impl PolyZl {
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        assert!(!coeffs.is_empty(), "polynomial needs at least one slot");
        PolyZl { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn slots(&self) -> usize {
        self.coeffs.len()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Scalar) -> Scalar {
        let zero = x.ring().zero();
        self.coeffs.iter().rev().fold(zero, |acc, &c| acc * x + c)
    }
}

fn check_abscissae(xs: &[Scalar]) -> Result<()> {
    for (i, x) in xs.iter().enumerate() {
        if x.is_zero() {
            return Err(Error::ZeroX);
        }
        if xs[..i].contains(x) {
            return Err(Error::DuplicateX(x.value()));
        }
    }
    Ok(())
}

pub(crate) fn check_distinct_nonzero(xs: &[Scalar]) -> Result<()> {
    check_abscissae(xs)
}

/// Lagrange coefficients for evaluation at zero:
/// `λ_k = Π_{j≠k} x_j / (x_j - x_k)`, so `Σ λ_k g(x_k) = g(0)` whenever
/// `deg g < xs.len()`.
pub fn lagrange_zero(xs: &[Scalar]) -> Result<Vec<Scalar>> {
    if xs.is_empty() {
        return Err(Error::BadDims("need at least one abscissa".into()));
    }
    check_abscissae(xs)?;
    let ring = xs[0].ring();
    xs.iter()
        .enumerate()
        .map(|(k, &xk)| {
            let mut num = ring.one();
            let mut den = ring.one();
            for (j, &xj) in xs.iter().enumerate() {
                if j != k {
                    num = num * xj;
                    den = den * (xj - xk);
                }
            }
            Ok(num * den.inv()?)
        })
        .collect()
}
