//! Pairings on `E[l]`.
//!
//! * [`SelfPairingCtx::self_pair`] is the coefficient self-pairing
//!   `e(P, Q) = (r1*s2 - r2*s1) * W` with `W = alpha*G + beta*H`. It is
//!   alternating, so `e(P, P) = O`; it backs every share verification.
//! * [`weil_pair`] is the Weil pairing computed with Miller's algorithm.
//! * [`modified_weil`] composes the Weil pairing with the distortion map
//!   `(x, y) -> (-x, u*y)` on `y^2 = x^3 + Ax`. Its diagonal value
//!   `ê(P, P)` is a primitive l-th root of unity, which is what the
//!   recovery-code masks need (the self-pairing would give `O` there and
//!   leave every secret in the clear).

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{ExtField, ExtFieldElement, Scalar, Zl};
use crate::curve::{CoordPoint, Curve, Point, TorsionBasis};
use crate::error::{Error, Result};

const MILLER_RETRIES: usize = 32;
const AUX_POINT_SEED: u64 = 0x6d696c6c6572;

/// Coefficient self-pairing context: the basis plus `W = alpha*G + beta*H`.
/// `alpha`, `beta` are known only to whoever built the context; a context
/// rebuilt from public data carries just `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfPairingCtx {
    basis: TorsionBasis,
    w: Point,
    coeffs: Option<(Scalar, Scalar)>,
}

impl SelfPairingCtx {
    pub fn new(basis: TorsionBasis, alpha: Scalar, beta: Scalar) -> Result<Self> {
        if alpha.is_zero() && beta.is_zero() {
            return Err(Error::OutOfRange("alpha and beta are both zero".into()));
        }
        let w = basis.combine(alpha, beta);
        Ok(SelfPairingCtx {
            basis,
            w,
            coeffs: Some((alpha, beta)),
        })
    }

    /// Context from a published `W` only.
    pub fn from_public(basis: TorsionBasis, w: Point) -> Result<Self> {
        let curve = basis.curve();
        if !curve.contains(&w) {
            return Err(Error::OffCurveInput);
        }
        if w.is_infinity() || !curve.mul_u64(basis.ring().modulus(), &w).is_infinity() {
            return Err(Error::NotTorsion);
        }
        Ok(SelfPairingCtx {
            basis,
            w,
            coeffs: None,
        })
    }

    pub fn basis(&self) -> &TorsionBasis {
        &self.basis
    }

    pub fn w(&self) -> &Point {
        &self.w
    }

    pub fn alpha_beta(&self) -> Option<(Scalar, Scalar)> {
        self.coeffs
    }

    /// The pairing exponent `r1*s2 - r2*s1` as a scalar.
    pub fn pair_scalar(r1: Scalar, s1: Scalar, r2: Scalar, s2: Scalar) -> Scalar {
        r1 * s2 - r2 * s1
    }

    /// `e(r1*G + s1*H, r2*G + s2*H)` straight from coordinates.
    pub fn pair_coeffs(&self, r1: Scalar, s1: Scalar, r2: Scalar, s2: Scalar) -> Point {
        self.scalar_w(Self::pair_scalar(r1, s1, r2, s2))
    }

    /// `k * W`.
    pub fn scalar_w(&self, k: Scalar) -> Point {
        self.basis.curve().mul_scalar(k, &self.w)
    }

    pub fn self_pair(&self, p: &CoordPoint, q: &CoordPoint) -> Result<Point> {
        if p.basis_id() != self.basis.id() || q.basis_id() != self.basis.id() {
            return Err(Error::BasisMismatch);
        }
        Ok(self.pair_coeffs(p.r(), p.s(), q.r(), q.s()))
    }
}

/// A nonzero field element of multiplicative order dividing `l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MaskValue {
    value: ExtFieldElement,
}

impl MaskValue {
    pub fn value(&self) -> &ExtFieldElement {
        &self.value
    }

    pub fn into_value(self) -> ExtFieldElement {
        self.value
    }

    pub fn pow(&self, e: u64) -> MaskValue {
        MaskValue {
            value: self.value.pow_u64(e),
        }
    }

    pub fn is_one(&self) -> bool {
        self.value.is_one()
    }
}

/// Running `num / den` of a Miller function evaluated at one point.
struct Eval {
    num: ExtFieldElement,
    den: ExtFieldElement,
}

impl Eval {
    fn one(f: &ExtField) -> Self {
        Eval {
            num: f.one(),
            den: f.one(),
        }
    }

    fn square(&mut self) {
        self.num = self.num.square();
        self.den = self.den.square();
    }
}

/// Multiplies `acc` by `g_{A,B}(R) = line_{A,B}(R) / vertical_{A+B}(R)` and
/// returns `A + B`. `None` if a factor vanishes at `R`.
fn line_step(
    curve: &Curve,
    a: &Point,
    b: &Point,
    r: (&ExtFieldElement, &ExtFieldElement),
    acc: &mut Eval,
) -> Option<Point> {
    let (Point::Affine { x: xa, y: ya }, Point::Affine { x: xb, y: yb }) = (a, b) else {
        // only reached with finite T and P when l is prime
        unreachable!("Miller loop hit the point at infinity")
    };
    let (xr, yr) = r;
    let sum = curve.add_unchecked(a, b);
    let line = match &sum {
        Point::Infinity => xr - xa,
        Point::Affine { .. } => {
            let slope = if xa == xb {
                let f = curve.field();
                &(&(&f.from_base(3) * &xa.square()) + curve.a()) * &ya.double().inv().ok()?
            } else {
                &(yb - ya) * &(xb - xa).inv().ok()?
            };
            &(yr - ya) - &(&slope * &(xr - xa))
        }
    };
    if line.is_zero() {
        return None;
    }
    acc.num = &acc.num * &line;
    if let Point::Affine { x: xs, .. } = &sum {
        let vertical = xr - xs;
        if vertical.is_zero() {
            return None;
        }
        acc.den = &acc.den * &vertical;
    }
    Some(sum)
}

/// `f_{l,P}(R1) / f_{l,P}(R2)` where `div(f_{l,P}) = l(P) - l(O)`.
fn miller_ratio(
    curve: &Curve,
    p: &Point,
    l: u64,
    r1: &Point,
    r2: &Point,
) -> Option<ExtFieldElement> {
    let (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) = (r1, r2) else {
        return None;
    };
    let f = curve.field();
    let mut e1 = Eval::one(f);
    let mut e2 = Eval::one(f);
    let mut t = p.clone();
    let bits = 64 - l.leading_zeros();
    for i in (0..bits - 1).rev() {
        e1.square();
        e2.square();
        let doubled = line_step(curve, &t, &t, (x1, y1), &mut e1)?;
        line_step(curve, &t, &t, (x2, y2), &mut e2)?;
        t = doubled;
        if (l >> i) & 1 == 1 {
            let added = line_step(curve, &t, p, (x1, y1), &mut e1)?;
            line_step(curve, &t, p, (x2, y2), &mut e2)?;
            t = added;
        }
    }
    debug_assert!(t.is_infinity());
    let num = &e1.num * &e2.den;
    let den = &e1.den * &e2.num;
    if den.is_zero() || num.is_zero() {
        return None;
    }
    Some(&num * &den.inv().ok()?)
}

/// Weil pairing `e_l(P, Q)`:
/// `[f_P(Q+S) / f_P(S)] / [f_Q(P-S) / f_Q(-S)]` for an auxiliary point `S`.
/// `S` comes from a fixed-seed stream, so the function is deterministic.
pub fn weil_pair(p: &Point, q: &Point, ring: Zl, curve: &Curve) -> Result<ExtFieldElement> {
    let l = ring.modulus();
    for pt in [p, q] {
        if !curve.contains(pt) {
            return Err(Error::OffCurveInput);
        }
        if !curve.mul_u64(l, pt).is_infinity() {
            return Err(Error::NotTorsion);
        }
    }
    let f = curve.field();
    if p.is_infinity() || q.is_infinity() || p == q {
        return Ok(f.one());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(AUX_POINT_SEED);
    for _ in 0..MILLER_RETRIES {
        let s = curve.random_point(&mut rng);
        let q_plus_s = curve.add_unchecked(q, &s);
        let p_minus_s = curve.add_unchecked(p, &s.neg());
        let neg_s = s.neg();
        let Some(fp) = miller_ratio(curve, p, l, &q_plus_s, &s) else {
            continue;
        };
        let Some(fq) = miller_ratio(curve, q, l, &p_minus_s, &neg_s) else {
            continue;
        };
        return Ok(&fp * &fq.inv()?);
    }
    Err(Error::DegenerateEvaluation)
}

/// `(x, y) -> (-x, u*y)` on `y^2 = x^3 + Ax`, with `u^2 = -1`.
pub fn distortion(p: &Point, u: &ExtFieldElement, curve: &Curve) -> Result<Point> {
    if !curve.b().is_zero() {
        return Err(Error::UnsupportedCurveForm);
    }
    if !(&u.square() + &curve.field().one()).is_zero() {
        return Err(Error::BadDistortionUnit);
    }
    Ok(match p {
        Point::Infinity => Point::Infinity,
        Point::Affine { x, y } => Point::affine(-x, u * y),
    })
}

/// A square root of `-1`, found as `g^((q-1)/4)` for the first candidate
/// `g` (in base-p counting order) whose power squares to `-1`.
pub fn distortion_unit(field: &ExtField) -> Result<ExtFieldElement> {
    let q_minus_1 = field.order() - 1u32;
    if (&q_minus_1 % 4u32) != BigUint::from(0u32) {
        return Err(Error::BadDistortionUnit);
    }
    let exp = &q_minus_1 >> 2;
    let minus_one = -&field.one();
    let p = field.p();
    let mut digits = vec![0u64; field.degree()];
    // counting over coefficient vectors, skipping zero
    loop {
        let mut i = 0;
        loop {
            if i == digits.len() {
                return Err(Error::BadDistortionUnit);
            }
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        let g = field.from_coeffs(digits.clone())?;
        let u = g.pow(&exp);
        if u.square() == minus_one {
            return Ok(u);
        }
    }
}

/// `ê(P, Q) = e_l(P, φ(Q))` with `φ` the distortion map.
pub fn modified_weil(
    p: &Point,
    q: &Point,
    ring: Zl,
    curve: &Curve,
    u: &ExtFieldElement,
) -> Result<MaskValue> {
    let distorted = distortion(q, u, curve)?;
    let value = weil_pair(p, &distorted, ring, curve)?;
    Ok(MaskValue { value })
}

/// `ê(P0, P0)`, checked to be a primitive l-th root of unity.
pub fn mask_base(p0: &Point, ring: Zl, curve: &Curve, u: &ExtFieldElement) -> Result<MaskValue> {
    if p0.is_infinity() {
        return Err(Error::IdentityPoint);
    }
    let base = modified_weil(p0, p0, ring, curve, u)?;
    if base.is_one() {
        return Err(Error::NonPrimitiveSelfValue);
    }
    Ok(base)
}

/// Mask for recovery code `i`: `ê(P0, i*P0) = ê(P0, P0)^i`.
pub fn mask(
    p0: &Point,
    i: u64,
    ring: Zl,
    curve: &Curve,
    u: &ExtFieldElement,
) -> Result<MaskValue> {
    check_mask_index(i, ring)?;
    Ok(mask_base(p0, ring, curve, u)?.pow(i))
}

pub(crate) fn check_mask_index(i: u64, ring: Zl) -> Result<()> {
    if i == 0 || i.is_multiple_of(ring.modulus()) {
        return Err(Error::DegenerateIndex(i));
    }
    Ok(())
}
