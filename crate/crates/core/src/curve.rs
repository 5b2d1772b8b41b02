//! Short-Weierstrass curves `y^2 = x^3 + Ax + B` over `GF(p^r)`.

use std::hash::{DefaultHasher, Hash, Hasher};

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use rand::{Rng, RngCore};

use crate::algebra::{ExtField, ExtFieldElement, Scalar, Zl};
use crate::error::{Error, Result};
use crate::pairing::weil_pair;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Infinity,
    Affine { x: ExtFieldElement, y: ExtFieldElement },
}

impl Point {
    pub fn affine(x: ExtFieldElement, y: ExtFieldElement) -> Self {
        Point::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&ExtFieldElement> {
        match self {
            Point::Affine { x, .. } => Some(x),
            Point::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&ExtFieldElement> {
        match self {
            Point::Affine { y, .. } => Some(y),
            Point::Infinity => None,
        }
    }

    pub fn neg(&self) -> Point {
        match self {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::Affine {
                x: x.clone(),
                y: -y,
            },
        }
    }

    /// `inf` or `x:y` with hex-encoded coordinates.
    pub fn to_text(&self) -> String {
        match self {
            Point::Infinity => "inf".to_string(),
            Point::Affine { x, y } => format!("{}:{}", x.to_hex(), y.to_hex()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    a: ExtFieldElement,
    b: ExtFieldElement,
}

impl Curve {
    pub fn new(a: ExtFieldElement, b: ExtFieldElement) -> Result<Self> {
        if a.field() != b.field() {
            return Err(Error::FieldMismatch);
        }
        let f = a.field();
        let disc = &(&f.from_base(4) * &(&a.square() * &a)) + &(&f.from_base(27) * &b.square());
        if disc.is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(Curve { a, b })
    }

    /// Curve with coefficients taken from the prime subfield.
    pub fn from_base_coeffs(field: &ExtField, a: u64, b: u64) -> Result<Self> {
        Curve::new(field.from_base(a), field.from_base(b))
    }

    pub fn field(&self) -> &ExtField {
        self.a.field()
    }

    pub fn a(&self) -> &ExtFieldElement {
        &self.a
    }

    pub fn b(&self) -> &ExtFieldElement {
        &self.b
    }

    fn rhs(&self, x: &ExtFieldElement) -> ExtFieldElement {
        &(&(&x.square() * x) + &(&self.a * x)) + &self.b
    }

    pub fn contains(&self, p: &Point) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine { x, y } => {
                x.field() == self.field() && y.field() == self.field() && y.square() == self.rhs(x)
            }
        }
    }

    /// Builds a point from coordinates, rejecting anything off the curve.
    pub fn point(&self, x: ExtFieldElement, y: ExtFieldElement) -> Result<Point> {
        let p = Point::affine(x, y);
        if self.contains(&p) {
            Ok(p)
        } else {
            Err(Error::OffCurveInput)
        }
    }

    /// Parses `inf` or `x:y`.
    pub fn point_from_text(&self, s: &str) -> Result<Point> {
        if s == "inf" {
            return Ok(Point::Infinity);
        }
        let (x, y) = s
            .split_once(':')
            .ok_or_else(|| Error::OutOfRange(format!("point {s:?} is not x:y")))?;
        let f = self.field();
        self.point(f.element_from_hex(x)?, f.element_from_hex(y)?)
    }

    pub fn add(&self, p: &Point, q: &Point) -> Result<Point> {
        if !self.contains(p) || !self.contains(q) {
            return Err(Error::OffCurveInput);
        }
        Ok(self.add_unchecked(p, q))
    }

    pub(crate) fn add_unchecked(&self, p: &Point, q: &Point) -> Point {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if (y1 + y2).is_zero() {
                return Point::Infinity;
            }
            let f = self.field();
            let num = &(&f.from_base(3) * &x1.square()) + &self.a;
            &num * &y1.double().inv().expect("y1 != 0")
        } else {
            &(y2 - y1) * &(x2 - x1).inv().expect("x1 != x2")
        };
        let x3 = &(&lambda.square() - x1) - x2;
        let y3 = &(&lambda * &(x1 - &x3)) - y1;
        Point::Affine { x: x3, y: y3 }
    }

    pub fn double(&self, p: &Point) -> Point {
        self.add_unchecked(p, p)
    }

    /// `n * P`; negative `n` goes through `-P`.
    pub fn scalar_mul(&self, n: i64, p: &Point) -> Result<Point> {
        if !self.contains(p) {
            return Err(Error::OffCurveInput);
        }
        let base = if n < 0 { p.neg() } else { p.clone() };
        Ok(self.mul_u64(n.unsigned_abs(), &base))
    }

    pub fn mul_scalar(&self, k: Scalar, p: &Point) -> Point {
        self.mul_u64(k.value(), p)
    }

    pub fn mul_u64(&self, n: u64, p: &Point) -> Point {
        self.mul_big(&BigUint::from(n), p)
    }

    /// Left-to-right double-and-add.
    pub fn mul_big(&self, n: &BigUint, p: &Point) -> Point {
        let mut acc = Point::Infinity;
        for i in (0..n.bits()).rev() {
            acc = self.double(&acc);
            if n.bit(i) {
                acc = self.add_unchecked(&acc, p);
            }
        }
        acc
    }

    /// Uniformly random x, resampled until `x^3 + Ax + B` is a square.
    pub fn random_point<R: RngCore + ?Sized>(&self, rng: &mut R) -> Point {
        loop {
            let x = self.field().random(rng);
            if let Some(y) = self.rhs(&x).sqrt() {
                let y = if rng.gen::<bool>() { -&y } else { y };
                return Point::Affine { x, y };
            }
        }
    }

    /// Every rational point, including infinity. Tiny fields only.
    pub fn points(&self) -> Vec<Point> {
        let mut out = vec![Point::Infinity];
        for x in self.field().elements() {
            let rhs = self.rhs(&x);
            if let Some(y) = rhs.sqrt() {
                if y.is_zero() {
                    out.push(Point::affine(x, y));
                } else {
                    out.push(Point::affine(x.clone(), -&y));
                    out.push(Point::affine(x, y));
                }
            }
        }
        out
    }
}

/// `#E(GF(p))` for `y^2 = x^3 + ax + b` by direct enumeration.
pub fn count_points_prime_field(p: u64, a: u64, b: u64) -> u64 {
    let mut squares = vec![0u64; p as usize];
    for y in 0..p {
        squares[((y as u128 * y as u128) % p as u128) as usize] += 1;
    }
    let (a, b) = (a % p, b % p);
    1 + (0..p)
        .map(|x| {
            let x = x as u128;
            let p128 = p as u128;
            let rhs = (x * x % p128 * x + a as u128 * x + b as u128) % p128;
            squares[rhs as usize]
        })
        .sum::<u64>()
}

/// `#E(GF(p^r))` from `#E(GF(p))` via the Frobenius trace recursion
/// `t_n = t_1 t_{n-1} - p t_{n-2}`, `t_0 = 2`.
pub fn order_over_extension(count_base: u64, p: u64, r: u32) -> BigUint {
    let p_big = BigInt::from(p);
    let t1: BigInt = &p_big + 1 - BigInt::from(count_base);
    let (mut prev, mut cur) = (BigInt::from(2), t1.clone());
    for _ in 1..r {
        let next = &t1 * &cur - &p_big * &prev;
        prev = cur;
        cur = next;
    }
    let trace = if r == 0 { BigInt::from(2) } else { cur };
    let order: BigInt = p_big.pow(r) + 1 - trace;
    debug_assert!(!order.is_negative());
    order.to_biguint().expect("Hasse bound keeps the order positive")
}

/// `N` with `N^2 = order`, for groups shaped `Z_N x Z_N`.
pub fn full_torsion_exponent(order: &BigUint) -> Option<BigUint> {
    let n = order.sqrt();
    (&n * &n == *order).then_some(n)
}

/// Generating pair `{G, H}` of `E[l]`, certified independent by a
/// nontrivial Weil pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionBasis {
    curve: Curve,
    g: Point,
    h: Point,
    ring: Zl,
    id: u64,
}

impl TorsionBasis {
    /// Validates a given pair: both of exact order `l`, Weil pairing `!= 1`.
    pub fn new(curve: Curve, g: Point, h: Point, ring: Zl) -> Result<Self> {
        for pt in [&g, &h] {
            if !curve.contains(pt) {
                return Err(Error::OffCurveInput);
            }
            if pt.is_infinity() || !curve.mul_u64(ring.modulus(), pt).is_infinity() {
                return Err(Error::NotTorsion);
            }
        }
        if weil_pair(&g, &h, ring, &curve)?.is_one() {
            return Err(Error::TorsionNotRational);
        }
        Ok(Self::assemble(curve, g, h, ring))
    }

    fn assemble(curve: Curve, g: Point, h: Point, ring: Zl) -> Self {
        let mut hasher = DefaultHasher::new();
        g.to_text().hash(&mut hasher);
        h.to_text().hash(&mut hasher);
        ring.modulus().hash(&mut hasher);
        TorsionBasis {
            curve,
            g,
            h,
            ring,
            id: hasher.finish(),
        }
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn g(&self) -> &Point {
        &self.g
    }

    pub fn h(&self) -> &Point {
        &self.h
    }

    pub fn ring(&self) -> Zl {
        self.ring
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    /// `r*G + s*H`.
    pub fn combine(&self, r: Scalar, s: Scalar) -> Point {
        let rg = self.curve.mul_scalar(r, &self.g);
        let sh = self.curve.mul_scalar(s, &self.h);
        self.curve.add_unchecked(&rg, &sh)
    }

    pub fn coord_point(&self, r: Scalar, s: Scalar) -> CoordPoint {
        CoordPoint {
            r,
            s,
            point: self.combine(r, s),
            basis_id: self.id,
        }
    }
}

/// Samples `G, H` of exact order `l` by cofactor-clearing random points.
/// `exponent` is the group exponent `N` (the group is `Z_N x Z_N`).
pub fn sample_generating_pair<R: RngCore + ?Sized>(
    curve: &Curve,
    ring: Zl,
    exponent: &BigUint,
    rng: &mut R,
) -> Result<TorsionBasis> {
    let l = BigUint::from(ring.modulus());
    if exponent.is_zero() || !(exponent % &l).is_zero() {
        return Err(Error::TorsionNotRational);
    }
    let cofactor = exponent / &l;
    let torsion_point = |rng: &mut R| -> Option<Point> {
        (0..64)
            .map(|_| curve.mul_big(&cofactor, &curve.random_point(rng)))
            .find(|pt| !pt.is_infinity())
    };
    const RETRIES: usize = 64;
    for _ in 0..RETRIES {
        let (Some(g), Some(h)) = (torsion_point(rng), torsion_point(rng)) else {
            return Err(Error::TorsionNotRational);
        };
        if !curve.mul_big(&l, &g).is_infinity() || !curve.mul_big(&l, &h).is_infinity() {
            // N was not actually an exponent of the group
            return Err(Error::TorsionNotRational);
        }
        if !weil_pair(&g, &h, ring, curve)?.is_one() {
            return Ok(TorsionBasis::assemble(curve.clone(), g, h, ring));
        }
    }
    Err(Error::TorsionNotRational)
}

/// A point of `E[l]` together with its coordinates `(r, s)` in a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordPoint {
    r: Scalar,
    s: Scalar,
    point: Point,
    basis_id: u64,
}

impl CoordPoint {
    /// Checks that `point == r*G + s*H`.
    pub fn from_parts(basis: &TorsionBasis, r: Scalar, s: Scalar, point: Point) -> Result<Self> {
        if basis.combine(r, s) != point {
            return Err(Error::BasisMismatch);
        }
        Ok(CoordPoint {
            r,
            s,
            point,
            basis_id: basis.id,
        })
    }

    pub fn r(&self) -> Scalar {
        self.r
    }

    pub fn s(&self) -> Scalar {
        self.s
    }

    pub fn point(&self) -> &Point {
        &self.point
    }

    pub fn basis_id(&self) -> u64 {
        self.basis_id
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ModulusChoice;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z47() -> ExtField {
        ExtField::new(47, 1, ModulusChoice::Auto).unwrap()
    }

    fn pt(f: &ExtField, x: u64, y: i64) -> Point {
        let p = f.p() as i64;
        Point::affine(f.from_base(x), f.from_base(y.rem_euclid(p) as u64))
    }

    #[test]
    fn group_law_examples() {
        let f = z47();
        let e = Curve::from_base_coeffs(&f, 4, 0).unwrap();
        let p = pt(&f, 2, 4);
        assert!(e.contains(&p));
        assert_eq!(e.add(&p, &Point::Infinity).unwrap(), p);
        assert_eq!(e.add(&p, &p).unwrap(), pt(&f, 0, 0));
        assert_eq!(e.add(&p, &pt(&f, 2, -4)).unwrap(), Point::Infinity);
        assert!(matches!(e.add(&p, &pt(&f, 2, 5)), Err(Error::OffCurveInput)));
    }

    #[test]
    fn scalar_mul_examples() {
        let f = z47();
        let e = Curve::from_base_coeffs(&f, 4, 0).unwrap();
        let p = pt(&f, 2, 4);
        assert_eq!(e.scalar_mul(0, &p).unwrap(), Point::Infinity);
        assert_eq!(e.scalar_mul(4, &p).unwrap(), Point::Infinity);
        assert_eq!(e.scalar_mul(-1, &p).unwrap(), p.neg());
        assert_eq!(e.scalar_mul(3, &p).unwrap(), e.scalar_mul(-1, &p).unwrap());
        assert!(matches!(
            e.scalar_mul(2, &pt(&f, 2, 5)),
            Err(Error::OffCurveInput)
        ));
    }

    #[test]
    fn singular_curve_rejected() {
        let f = z47();
        assert!(matches!(
            Curve::from_base_coeffs(&f, 0, 0),
            Err(Error::SingularCurve)
        ));
    }

    #[test]
    fn point_counts() {
        assert_eq!(count_points_prime_field(47, 4, 0), 48);
        assert_eq!(count_points_prime_field(11, 1, 0), 12);
        let e = Curve::from_base_coeffs(&z47(), 4, 0).unwrap();
        assert_eq!(e.points().len(), 48);
    }

    #[test]
    fn trace_recursion() {
        assert_eq!(order_over_extension(48, 47, 1), BigUint::from(48u32));
        assert_eq!(order_over_extension(48, 47, 2), BigUint::from(2304u32));
        assert_eq!(
            order_over_extension(48, 47, 6),
            BigUint::from(10779422976u64)
        );
        assert_eq!(order_over_extension(12, 11, 2), BigUint::from(144u32));
        // brute force agrees on GF(11^2)
        let f = ExtField::new(11, 2, ModulusChoice::Auto).unwrap();
        let e = Curve::from_base_coeffs(&f, 1, 0).unwrap();
        assert_eq!(e.points().len(), 144);
        assert_eq!(
            full_torsion_exponent(&BigUint::from(144u32)),
            Some(BigUint::from(12u32))
        );
        assert_eq!(full_torsion_exponent(&BigUint::from(48u32)), None);
    }

    #[test]
    fn group_axioms_on_random_points() {
        let f = ExtField::new(47, 6, ModulusChoice::Auto).unwrap();
        let e = Curve::from_base_coeffs(&f, 4, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let p = e.random_point(&mut rng);
            let q = e.random_point(&mut rng);
            let r = e.random_point(&mut rng);
            assert!(e.contains(&p));
            let left = e.add(&e.add(&p, &q).unwrap(), &r).unwrap();
            let right = e.add(&p, &e.add(&q, &r).unwrap()).unwrap();
            assert_eq!(left, right);
            assert_eq!(e.add(&p, &q).unwrap(), e.add(&q, &p).unwrap());
            assert_eq!(e.add(&p, &p.neg()).unwrap(), Point::Infinity);
        }
    }

    #[test]
    fn toy_generating_pair() {
        let f = ExtField::new(11, 2, ModulusChoice::Auto).unwrap();
        let e = Curve::from_base_coeffs(&f, 1, 0).unwrap();
        let ring = Zl::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let basis = sample_generating_pair(&e, ring, &BigUint::from(12u32), &mut rng).unwrap();
        // exhaustive: the nine combinations r*G + s*H are exactly E[3]
        let torsion: Vec<Point> = e
            .points()
            .into_iter()
            .filter(|p| e.mul_u64(3, p).is_infinity())
            .collect();
        assert_eq!(torsion.len(), 9);
        let mut spanned: Vec<Point> = Vec::new();
        for r in ring.all() {
            for s in ring.all() {
                let p = basis.combine(r, s);
                assert!(!spanned.contains(&p));
                spanned.push(p);
            }
        }
        assert!(torsion.iter().all(|p| spanned.contains(p)));
        assert!(matches!(
            sample_generating_pair(&e, Zl::new(5).unwrap(), &BigUint::from(12u32), &mut rng),
            Err(Error::TorsionNotRational)
        ));
    }

    #[test]
    fn coord_point_consistency() {
        let f = ExtField::new(11, 2, ModulusChoice::Auto).unwrap();
        let e = Curve::from_base_coeffs(&f, 1, 0).unwrap();
        let ring = Zl::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let basis = sample_generating_pair(&e, ring, &BigUint::from(12u32), &mut rng).unwrap();
        let cp = basis.coord_point(ring.elem(1), ring.elem(2));
        let again = CoordPoint::from_parts(&basis, cp.r(), cp.s(), cp.point().clone()).unwrap();
        assert_eq!(again, cp);
        assert!(matches!(
            CoordPoint::from_parts(&basis, ring.elem(2), ring.elem(2), cp.point().clone()),
            Err(Error::BasisMismatch)
        ));
    }
}
