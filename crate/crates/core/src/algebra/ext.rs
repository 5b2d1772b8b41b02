use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, RngCore};

use super::prime::{add_mod, inv_mod, mul_mod, sub_mod, PrimeField};
use crate::error::{Error, Result};

/// How to pick the defining polynomial of `GF(p^r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModulusChoice {
    /// Lexicographically least monic irreducible of degree `r`.
    Auto,
    /// Coefficients low-to-high, including the leading 1.
    Explicit(Vec<u64>),
}

/// `GF(p^r)` as `Z_p[x] / (m(x))`. Cheap to clone.
#[derive(Clone)]
pub struct ExtField {
    inner: Arc<Inner>,
}

struct Inner {
    base: PrimeField,
    r: usize,
    modulus: Vec<u64>,
    order: BigUint,
    sqrt_ctx: OnceLock<SqrtCtx>,
}

// q - 1 = 2^two_adicity * odd, plus a fixed quadratic non-residue.
struct SqrtCtx {
    two_adicity: u32,
    odd: BigUint,
    non_residue: Vec<u64>,
}

impl ExtField {
    pub fn new(p: u64, r: usize, modulus: ModulusChoice) -> Result<Self> {
        let base = PrimeField::new(p)?;
        if r == 0 {
            return Err(Error::DegreeMismatch { expected: 1, got: 0 });
        }
        let modulus = match modulus {
            ModulusChoice::Auto => least_irreducible(p, r),
            ModulusChoice::Explicit(coeffs) => {
                let coeffs = zpoly::trim(coeffs.into_iter().map(|c| c % p).collect());
                if coeffs.is_empty() || coeffs.len() - 1 != r {
                    return Err(Error::DegreeMismatch {
                        expected: r,
                        got: coeffs.len().saturating_sub(1),
                    });
                }
                if *coeffs.last().unwrap() != 1 {
                    return Err(Error::NonMonicModulus);
                }
                if !zpoly::is_irreducible(&coeffs, p) {
                    return Err(Error::ReducibleModulus);
                }
                coeffs
            }
        };
        let order = BigUint::from(p).pow(r as u32);
        Ok(ExtField {
            inner: Arc::new(Inner {
                base,
                r,
                modulus,
                order,
                sqrt_ctx: OnceLock::new(),
            }),
        })
    }

    pub fn p(&self) -> u64 {
        self.inner.base.p()
    }

    pub fn base(&self) -> PrimeField {
        self.inner.base
    }

    pub fn degree(&self) -> usize {
        self.inner.r
    }

    /// Defining polynomial, low-to-high, monic (length `r + 1`).
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    /// Field cardinality `q = p^r`.
    pub fn order(&self) -> &BigUint {
        &self.inner.order
    }

    pub fn zero(&self) -> ExtFieldElement {
        ExtFieldElement {
            coeffs: vec![0; self.degree()],
            field: self.clone(),
        }
    }

    pub fn one(&self) -> ExtFieldElement {
        self.from_base(1)
    }

    pub fn from_base(&self, v: u64) -> ExtFieldElement {
        let mut e = self.zero();
        e.coeffs[0] = v % self.p();
        e
    }

    /// Builds an element from coefficients low-to-high; must be fully reduced.
    pub fn from_coeffs(&self, coeffs: Vec<u64>) -> Result<ExtFieldElement> {
        if coeffs.len() != self.degree() {
            return Err(Error::OutOfRange(format!(
                "expected {} coefficients, got {}",
                self.degree(),
                coeffs.len()
            )));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.p()) {
            return Err(Error::OutOfRange(format!("coefficient {c} >= p")));
        }
        Ok(ExtFieldElement {
            coeffs,
            field: self.clone(),
        })
    }

    pub fn random<R: RngCore + ?Sized>(&self, rng: &mut R) -> ExtFieldElement {
        let p = self.p();
        ExtFieldElement {
            coeffs: (0..self.degree()).map(|_| rng.gen_range(0..p)).collect(),
            field: self.clone(),
        }
    }

    /// Every element in base-p counting order. Only sensible for tiny fields.
    pub fn elements(&self) -> impl Iterator<Item = ExtFieldElement> + '_ {
        let total = self.order().to_u64().expect("field too large to enumerate");
        (0..total).map(move |n| self.nth_element(n))
    }

    fn nth_element(&self, mut n: u64) -> ExtFieldElement {
        let p = self.p();
        let mut e = self.zero();
        for c in e.coeffs.iter_mut() {
            *c = n % p;
            n /= p;
        }
        e
    }

    /// Maps an integer in `[0, q)` to the element whose coefficients are its
    /// base-p digits.
    pub fn encode_secret(&self, raw: &BigUint) -> Result<ExtFieldElement> {
        if raw >= self.order() {
            return Err(Error::OutOfRange(format!("{raw} >= field size")));
        }
        let digits = raw.to_radix_le(self.p() as u32);
        let mut e = self.zero();
        for (c, d) in e.coeffs.iter_mut().zip(digits) {
            *c = d as u64;
        }
        Ok(e)
    }

    pub fn decode_secret(&self, e: &ExtFieldElement) -> BigUint {
        let p = BigUint::from(self.p());
        e.coeffs
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, &c| acc * &p + BigUint::from(c))
    }

    /// Fixed-width lowercase hex of the base-p digits, low-to-high.
    pub fn element_from_hex(&self, s: &str) -> Result<ExtFieldElement> {
        let w = self.inner.base.hex_width();
        if !s.is_ascii() || s.len() != w * self.degree() {
            return Err(Error::OutOfRange(format!(
                "element hex must be {} characters",
                w * self.degree()
            )));
        }
        let mut coeffs = Vec::with_capacity(self.degree());
        for i in 0..self.degree() {
            let digit = &s[i * w..(i + 1) * w];
            if digit.bytes().any(|b| !matches!(b, b'0'..=b'9' | b'a'..=b'f')) {
                return Err(Error::OutOfRange(format!("bad hex digit group {digit:?}")));
            }
            coeffs.push(u64::from_str_radix(digit, 16).unwrap());
        }
        self.from_coeffs(coeffs)
    }

    fn sqrt_ctx(&self) -> &SqrtCtx {
        self.inner.sqrt_ctx.get_or_init(|| {
            let q_minus_1 = self.order() - 1u32;
            let two_adicity = q_minus_1.trailing_zeros().unwrap_or(0) as u32;
            let odd = &q_minus_1 >> two_adicity;
            let n = (1..)
                .map(|n| self.nth_element(n))
                .find(|e| !e.is_zero() && !e.is_square())
                .unwrap();
            SqrtCtx {
                two_adicity,
                odd,
                non_residue: n.coeffs,
            }
        })
    }

    fn same(&self, other: &ExtField) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.p() == other.p() && self.modulus() == other.modulus())
    }
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for ExtField {}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.p(), self.degree(), self.modulus())
    }
}

/// Lexicographically least monic irreducible: the low coefficients are read
/// as base-p digits of a counter, least significant first.
fn least_irreducible(p: u64, r: usize) -> Vec<u64> {
    if r == 1 {
        return vec![0, 1];
    }
    let mut n: u64 = 0;
    loop {
        let mut f = vec![0u64; r + 1];
        let mut v = n;
        for c in f.iter_mut().take(r) {
            *c = v % p;
            v /= p;
        }
        f[r] = 1;
        if zpoly::is_irreducible(&f, p) {
            return f;
        }
        n += 1;
    }
}

/// An element of `GF(p^r)`, stored as `r` reduced coefficients.
#[derive(Clone)]
pub struct ExtFieldElement {
    coeffs: Vec<u64>,
    field: ExtField,
}

impl ExtFieldElement {
    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn to_hex(&self) -> String {
        let w = self.field.inner.base.hex_width();
        self.coeffs.iter().map(|c| format!("{c:0w$x}")).collect()
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn double(&self) -> Self {
        self + self
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.field.p();
        let inv = zpoly::inv_mod_poly(&self.coeffs, self.field.modulus(), p)
            .expect("nonzero element of a field is invertible");
        let mut coeffs = inv;
        coeffs.resize(self.field.degree(), 0);
        Ok(ExtFieldElement {
            coeffs,
            field: self.field.clone(),
        })
    }

    pub fn pow(&self, exp: &BigUint) -> Self {
        let mut acc = self.field.one();
        for i in (0..exp.bits()).rev() {
            acc = acc.square();
            if exp.bit(i) {
                acc = &acc * self;
            }
        }
        acc
    }

    pub fn pow_u64(&self, exp: u64) -> Self {
        self.pow(&BigUint::from(exp))
    }

    /// Euler's criterion; zero counts as a square.
    pub fn is_square(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let half = (self.field.order() - 1u32) >> 1;
        self.pow(&half).is_one()
    }

    /// Tonelli-Shanks over `GF(q)`. Returns `None` for non-squares.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        if !self.is_square() {
            return None;
        }
        let ctx = self.field.sqrt_ctx();
        let field = &self.field;
        let z = ExtFieldElement {
            coeffs: ctx.non_residue.clone(),
            field: field.clone(),
        };
        let mut m = ctx.two_adicity;
        let mut c = z.pow(&ctx.odd);
        let mut t = self.pow(&ctx.odd);
        let mut root = self.pow(&((&ctx.odd + 1u32) >> 1));
        while !t.is_one() {
            let mut i = 0;
            let mut t2 = t.clone();
            while !t2.is_one() {
                t2 = t2.square();
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = b.square();
            }
            m = i;
            c = b.square();
            t = &t * &c;
            root = &root * &b;
        }
        Some(root)
    }

    fn check_field(&self, other: &Self) {
        assert!(
            self.field.same(&other.field),
            "mixed elements of different fields"
        );
    }
}

impl PartialEq for ExtFieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field.same(&other.field)
    }
}

impl Eq for ExtFieldElement {}

impl Hash for ExtFieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for ExtFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Renders as a polynomial in `i`, highest power first, e.g. `25i^5 + 3i + 19`.
impl fmt::Display for ExtFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            terms.push(match (k, c) {
                (0, _) => format!("{c}"),
                (1, 1) => "i".to_string(),
                (1, _) => format!("{c}i"),
                (_, 1) => format!("i^{k}"),
                _ => format!("{c}i^{k}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl<'a> Add<&'a ExtFieldElement> for &'a ExtFieldElement {
    type Output = ExtFieldElement;
    fn add(self, rhs: &ExtFieldElement) -> ExtFieldElement {
        self.check_field(rhs);
        let p = self.field.p();
        ExtFieldElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(&a, &b)| add_mod(a, b, p))
                .collect(),
            field: self.field.clone(),
        }
    }
}

impl<'a> Sub<&'a ExtFieldElement> for &'a ExtFieldElement {
    type Output = ExtFieldElement;
    fn sub(self, rhs: &ExtFieldElement) -> ExtFieldElement {
        self.check_field(rhs);
        let p = self.field.p();
        ExtFieldElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(&a, &b)| sub_mod(a, b, p))
                .collect(),
            field: self.field.clone(),
        }
    }
}

impl<'a> Mul<&'a ExtFieldElement> for &'a ExtFieldElement {
    type Output = ExtFieldElement;
    fn mul(self, rhs: &ExtFieldElement) -> ExtFieldElement {
        self.check_field(rhs);
        let p = self.field.p();
        let r = self.field.degree();
        let modulus = self.field.modulus();
        let mut prod = vec![0u64; 2 * r - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] = add_mod(prod[i + j], mul_mod(a, b, p), p);
            }
        }
        for top in (r..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for (j, &mj) in modulus.iter().enumerate().take(r) {
                let k = top - r + j;
                prod[k] = sub_mod(prod[k], mul_mod(c, mj, p), p);
            }
        }
        prod.truncate(r);
        ExtFieldElement {
            coeffs: prod,
            field: self.field.clone(),
        }
    }
}

impl Neg for &ExtFieldElement {
    type Output = ExtFieldElement;
    fn neg(self) -> ExtFieldElement {
        let p = self.field.p();
        ExtFieldElement {
            coeffs: self.coeffs.iter().map(|&c| sub_mod(0, c, p)).collect(),
            field: self.field.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<ExtFieldElement> for ExtFieldElement {
            type Output = ExtFieldElement;
            fn $m(self, rhs: ExtFieldElement) -> ExtFieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a ExtFieldElement> for ExtFieldElement {
            type Output = ExtFieldElement;
            fn $m(self, rhs: &'a ExtFieldElement) -> ExtFieldElement {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for ExtFieldElement {
    type Output = ExtFieldElement;
    fn neg(self) -> ExtFieldElement {
        -&self
    }
}

/// Dense polynomials over `Z_p` as coefficient vectors, low-to-high, trimmed.
pub(crate) mod zpoly {
    use super::*;

    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn deg(a: &[u64]) -> Option<usize> {
        a.iter().rposition(|&c| c != 0)
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                sub_mod(
                    a.get(i).copied().unwrap_or(0),
                    b.get(i).copied().unwrap_or(0),
                    p,
                )
            })
            .collect();
        trim(out)
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(x, y, p), p);
            }
        }
        trim(out)
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn div_rem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let db = deg(b).expect("division by zero polynomial");
        let lead_inv = inv_mod(b[db], p).unwrap();
        let mut rem = trim(a.to_vec());
        if rem.len() <= db {
            return (Vec::new(), rem);
        }
        let mut quot = vec![0u64; rem.len() - db];
        while let Some(dr) = deg(&rem) {
            if dr < db {
                break;
            }
            let c = mul_mod(rem[dr], lead_inv, p);
            quot[dr - db] = c;
            for j in 0..=db {
                rem[dr - db + j] = sub_mod(rem[dr - db + j], mul_mod(c, b[j], p), p);
            }
            rem = trim(rem);
        }
        (trim(quot), rem)
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        div_rem(a, b, p).1
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    /// Inverse of `a` modulo `m`, if `gcd(a, m)` is a unit.
    pub fn inv_mod_poly(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
        let (mut r0, mut r1) = (trim(m.to_vec()), rem(a, m, p));
        let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = div_rem(&r0, &r1, p);
            let s = sub(&s0, &mul(&q, &s1, p), p);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = inv_mod(r0[0], p)?;
        Some(s0.iter().map(|&x| mul_mod(x, c, p)).collect())
    }

    fn pow_mod_poly(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, m, p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            exp >>= 1;
        }
        acc
    }

    fn eval(f: &[u64], x: u64, p: u64) -> u64 {
        f.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
    }

    /// Ben-Or: `f` of degree `r` is irreducible iff
    /// `gcd(x^(p^i) - x, f) = 1` for `1 <= i <= r/2`.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let Some(r) = deg(f) else { return false };
        if r <= 1 {
            return r == 1;
        }
        // cheap sieve: a root means a linear factor
        if p <= 4096 && (0..p).any(|x| eval(f, x, p) == 0) {
            return false;
        }
        let x = vec![0, 1];
        let mut h = x.clone();
        for _ in 1..=r / 2 {
            h = pow_mod_poly(&h, p, f, p);
            let g = gcd(&sub(&h, &x, p), f, p);
            if deg(&g) != Some(0) {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf47_6() -> ExtField {
        ExtField::new(47, 6, ModulusChoice::Auto).unwrap()
    }

    #[test]
    fn field_size_is_p_to_the_r() {
        // 47^6 by repeated squaring: 47^2 = 2209, 47^4 = 2209^2 = 4879681,
        // 47^6 = 4879681 * 2209
        let sq = 47u64 * 47;
        let fourth = sq * sq;
        assert_eq!(fourth * sq, 10779215329);
        assert_eq!(gf47_6().order(), &BigUint::from(10779215329u64));
    }

    #[test]
    fn auto_modulus_is_deterministic_and_irreducible() {
        let a = gf47_6();
        let b = gf47_6();
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a.modulus().len(), 7);
        assert!(zpoly::is_irreducible(a.modulus(), 47));
        // x^2 + 1 is the least monic irreducible quadratic over Z_11 (-1 is
        // a non-residue) once x^2 + c for smaller c are ruled out.
        let f = ExtField::new(11, 2, ModulusChoice::Auto).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn degree_one_field() {
        let f = ExtField::new(47, 1, ModulusChoice::Auto).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.order(), &BigUint::from(47u32));
        let a = f.from_base(40);
        let b = f.from_base(10);
        assert_eq!((&a + &b).coeffs(), &[3]);
        assert_eq!((&a * &b).coeffs(), &[400 % 47]);
    }

    #[test]
    fn explicit_modulus_errors() {
        // (x - 1)(x^5 + 1) expanded: x^6 - x^5 + x - 1
        let reducible = vec![46, 1, 0, 0, 0, 46, 1];
        assert!(matches!(
            ExtField::new(47, 6, ModulusChoice::Explicit(reducible)),
            Err(Error::ReducibleModulus)
        ));
        assert!(matches!(
            ExtField::new(47, 6, ModulusChoice::Explicit(vec![1, 0, 1])),
            Err(Error::DegreeMismatch { expected: 6, got: 2 })
        ));
        assert!(matches!(
            ExtField::new(11, 2, ModulusChoice::Explicit(vec![1, 0, 2])),
            Err(Error::NonMonicModulus)
        ));
        assert!(matches!(
            ExtField::new(45, 2, ModulusChoice::Auto),
            Err(Error::NotPrime(45))
        ));
    }

    #[test]
    fn inverse_examples() {
        let f = gf47_6();
        assert!(f.one().inv().unwrap().is_one());
        assert!(matches!(f.zero().inv(), Err(Error::DivisionByZero)));
        let z103 = ExtField::new(103, 1, ModulusChoice::Auto).unwrap();
        assert_eq!(z103.from_base(2).inv().unwrap().coeffs(), &[52]);
    }

    #[test]
    fn field_axioms_on_random_samples() {
        let f = gf47_6();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let a = f.random(&mut rng);
            let b = f.random(&mut rng);
            let c = f.random(&mut rng);
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            assert_eq!(&a * &b, &b * &a);
            assert_eq!(&a + &b, &b + &a);
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            assert!((&a - &a).is_zero());
            if !a.is_zero() {
                assert!((&a * &a.inv().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn fermat_and_sqrt() {
        let f = gf47_6();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let q = f.order().clone();
        for _ in 0..50 {
            let a = f.random(&mut rng);
            assert_eq!(a.pow(&q), a);
            let sq = a.square();
            let root = sq.sqrt().unwrap();
            assert_eq!(root.square(), sq);
        }
        let toy = ExtField::new(11, 2, ModulusChoice::Auto).unwrap();
        let squares = toy.elements().filter(|e| e.is_square()).count();
        assert_eq!(squares, 1 + 60);
        for e in toy.elements() {
            match e.sqrt() {
                Some(r) => assert_eq!(r.square(), e),
                None => assert!(!e.is_square()),
            }
        }
    }

    #[test]
    fn encode_secret_examples() {
        let f = gf47_6();
        assert!(f.encode_secret(&BigUint::zero()).unwrap().is_zero());
        assert_eq!(
            f.encode_secret(&BigUint::from(42u32)).unwrap().coeffs(),
            &[42, 0, 0, 0, 0, 0]
        );
        assert_eq!(
            f.encode_secret(&BigUint::from(47u32)).unwrap().coeffs(),
            &[0, 1, 0, 0, 0, 0]
        );
        assert!(matches!(
            f.encode_secret(f.order()),
            Err(Error::OutOfRange(_))
        ));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let raw = BigUint::from(rng.gen_range(0..10779215329u64));
            let e = f.encode_secret(&raw).unwrap();
            assert_eq!(f.decode_secret(&e), raw);
        }
    }

    #[test]
    fn hex_codec() {
        let f = gf47_6();
        let e = f.from_coeffs(vec![19, 39, 15, 11, 3, 25]).unwrap();
        assert_eq!(e.to_hex(), "13270f0b0319");
        assert_eq!(f.element_from_hex("13270f0b0319").unwrap(), e);
        assert!(f.element_from_hex("13270f0b031").is_err());
        assert!(f.element_from_hex("13270f0b03ff").is_err());
        assert!(f.element_from_hex("13270F0b0319").is_err());
        assert_eq!(e.to_string(), "25i^5 + 3i^4 + 11i^3 + 15i^2 + 39i + 19");
    }
}
