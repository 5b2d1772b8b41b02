//! Shamir sharing over `Z_l` with two secret slots: the constant term `a0`
//! and the leading term `b0` of `f(x) = a0 + a1 x + .. + b0 x^(t-1)`.

use rand::RngCore;

use crate::algebra::{check_distinct_nonzero, vandermonde_rows, PolyZl, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShamirPoly {
    poly: PolyZl,
}

impl ShamirPoly {
    /// Wraps an explicit coefficient vector of `t >= 2` slots.
    pub fn from_coeffs(coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::ThresholdTooSmall);
        }
        Ok(ShamirPoly {
            poly: PolyZl::new(coeffs),
        })
    }

    pub fn threshold(&self) -> usize {
        self.poly.slots()
    }

    pub fn a0(&self) -> Scalar {
        self.poly.coeffs()[0]
    }

    pub fn b0(&self) -> Scalar {
        *self.poly.coeffs().last().unwrap()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        self.poly.coeffs()
    }

    pub fn eval(&self, x: Scalar) -> Scalar {
        self.poly.eval(x)
    }
}

/// A participant's share `(x, f(x))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ShamirShare {
    pub x: Scalar,
    pub s: Scalar,
}

impl ShamirShare {
    pub fn new(x: Scalar, s: Scalar) -> Self {
        ShamirShare { x, s }
    }
}

/// Places `a0` and `b0` in the first and last slots; the `t - 2` middle
/// coefficients are uniform in `[1, l-1]`.
pub fn make_poly<R: RngCore + ?Sized>(
    a0: Scalar,
    b0: Scalar,
    t: usize,
    rng: &mut R,
) -> Result<ShamirPoly> {
    if t < 2 {
        return Err(Error::ThresholdTooSmall);
    }
    let ring = a0.ring();
    let mut coeffs = Vec::with_capacity(t);
    coeffs.push(a0);
    coeffs.extend((0..t - 2).map(|_| ring.random_nonzero(rng)));
    coeffs.push(b0);
    ShamirPoly::from_coeffs(coeffs)
}

pub fn eval_shares(poly: &ShamirPoly, xs: &[Scalar]) -> Result<Vec<ShamirShare>> {
    check_distinct_nonzero(xs)?;
    Ok(xs.iter().map(|&x| ShamirShare::new(x, poly.eval(x))).collect())
}

/// Output of [`interpolate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interpolant {
    pub a0: Scalar,
    pub b0: Scalar,
    pub poly: PolyZl,
}

/// Recovers the full degree-`(t-1)` coefficient vector from exactly `t` shares.
pub fn interpolate(shares: &[ShamirShare], t: usize) -> Result<Interpolant> {
    if shares.len() != t || t == 0 {
        return Err(Error::WrongShareCount {
            expected: t,
            got: shares.len(),
        });
    }
    let xs: Vec<Scalar> = shares.iter().map(|sh| sh.x).collect();
    check_distinct_nonzero(&xs)?;
    let ys: Vec<Scalar> = shares.iter().map(|sh| sh.s).collect();
    let coeffs = vandermonde_rows(&xs, t).inverse()?.mul_vec(&ys)?;
    Ok(Interpolant {
        a0: coeffs[0],
        b0: coeffs[t - 1],
        poly: PolyZl::new(coeffs),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Zl;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn z103() -> Zl {
        Zl::new(103).unwrap()
    }

    fn share(x: u64, s: u64) -> ShamirShare {
        ShamirShare::new(z103().elem(x), z103().elem(s))
    }

    fn xs(v: &[u64]) -> Vec<Scalar> {
        v.iter().map(|&x| z103().elem(x)).collect()
    }

    #[test]
    fn make_poly_layout() {
        let z = z103();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let f = make_poly(z.elem(5), z.elem(7), 2, &mut rng).unwrap();
        assert_eq!(f.coeffs(), &[z.elem(5), z.elem(7)]);
        let g = make_poly(z.elem(5), z.elem(7), 3, &mut rng).unwrap();
        assert_eq!(g.threshold(), 3);
        assert_eq!((g.a0(), g.b0()), (z.elem(5), z.elem(7)));
        assert!(!g.coeffs()[1].is_zero());
        assert!(matches!(
            make_poly(z.elem(5), z.elem(7), 1, &mut rng),
            Err(Error::ThresholdTooSmall)
        ));
        // b0 = 0 keeps its slot
        let h = make_poly(z.elem(5), z.zero(), 4, &mut rng).unwrap();
        assert_eq!(h.threshold(), 4);
    }

    #[test]
    fn eval_examples() {
        let z = z103();
        let f = ShamirPoly::from_coeffs(vec![z.elem(5), z.elem(7)]).unwrap();
        assert_eq!(
            eval_shares(&f, &xs(&[1, 2, 3])).unwrap(),
            vec![share(1, 12), share(2, 19), share(3, 26)]
        );
        assert!(matches!(eval_shares(&f, &xs(&[0])), Err(Error::ZeroX)));
        assert!(matches!(
            eval_shares(&f, &xs(&[1, 1])),
            Err(Error::DuplicateX(1))
        ));
    }

    #[test]
    fn interpolate_examples() {
        let z = z103();
        let i = interpolate(&[share(1, 12), share(2, 19)], 2).unwrap();
        assert_eq!((i.a0, i.b0), (z.elem(5), z.elem(7)));
        let i = interpolate(&[share(2, 19), share(3, 26)], 2).unwrap();
        assert_eq!((i.a0, i.b0), (z.elem(5), z.elem(7)));
        assert!(matches!(
            interpolate(&[share(1, 12)], 2),
            Err(Error::WrongShareCount {
                expected: 2,
                got: 1
            })
        ));
        assert!(matches!(
            interpolate(&[share(1, 12), share(1, 19)], 2),
            Err(Error::DuplicateX(1))
        ));
    }

    #[test]
    fn constant_one_polynomial() {
        let z = z103();
        for t in 2..6 {
            let mut coeffs = vec![z.zero(); t];
            coeffs[0] = z.one();
            let f = ShamirPoly::from_coeffs(coeffs.clone()).unwrap();
            let pts: Vec<Scalar> = (1..=t as u64).map(|x| z.elem(x * 7)).collect();
            let shares = eval_shares(&f, &pts).unwrap();
            assert_eq!(interpolate(&shares, t).unwrap().poly.coeffs(), &coeffs[..]);
        }
    }

    #[test]
    fn missing_share_leaves_every_pair_possible() {
        let z = z103();
        for t in [2usize, 3, 4] {
            let mut rng = ChaCha8Rng::seed_from_u64(t as u64);
            let f = make_poly(z.elem(5), z.elem(7), t, &mut rng).unwrap();
            let pts: Vec<Scalar> = (1..=t as u64).map(|x| z.elem(x)).collect();
            let mut shares = eval_shares(&f, &pts).unwrap();
            let mut seen = HashSet::new();
            for s in z.all() {
                shares[t - 1].s = s;
                let i = interpolate(&shares, t).unwrap();
                seen.insert((i.a0, i.b0));
            }
            assert_eq!(seen.len(), 103);
        }
    }

    proptest! {
        #[test]
        fn every_t_subset_reconstructs(
            a0 in 0u64..103, b0 in 0u64..103,
            t in 2usize..=8, extra in 0usize..=4, seed: u64,
        ) {
            let z = z103();
            let n = t + extra;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = make_poly(z.elem(a0), z.elem(b0), t, &mut rng).unwrap();
            let pts: Vec<Scalar> = (1..=n as u64).map(|x| z.elem(x)).collect();
            let shares = eval_shares(&f, &pts).unwrap();
            for start in 0..=extra {
                let i = interpolate(&shares[start..start + t], t).unwrap();
                prop_assert_eq!((i.a0.value(), i.b0.value()), (a0, b0));
                prop_assert_eq!(i.poly.coeffs(), f.coeffs());
            }
        }
    }
}
