//! Text codec for the notice board and the private files around it.
//!
//! Every document is UTF-8, one `key = value` pair per line, keys in a fixed
//! order, each line ending in `\n`. Field elements are fixed-width lowercase
//! hex of their base-p digits (low-to-high, `ceil(log16 p)` characters per
//! digit), points are `inf` or `x:y`, integers are canonical decimal.
//! Parsing is strict: anything that would not serialize back to the same
//! bytes is rejected.
//!
//! A proposed-scheme bulletin looks like
//!
//! ```text
//! scheme = mvss
//! version = 1
//! deal = 3f9a0c1d2e4b5a67
//! p = 47
//! r = 6
//! modulus = ...        low r coefficients of the monic modulus
//! curve.a = ...
//! curve.b = ...
//! q = 10779215329
//! l = 103
//! k = 1
//! g = x:y
//! h = x:y
//! w = x:y
//! u = ...              square root of -1 used by the distortion map
//! t = 2
//! n = 3
//! m = 2
//! c = 15
//! d = 11
//! v0 = x:y
//! v.1 = x:y            keyed by the participant's abscissa
//! v.2 = x:y
//! v.3 = x:y
//! r.1 = ...
//! r.2 = ...
//! ```
//!
//! Parameter count (`7 + n + m`): the curve description `{p, r, modulus,
//! curve.a, curve.b, g, h, u}` counts as one item; then `q`, `l`, `k`, `W`,
//! `Q = (c, d)` and `V0`; then each `V_i` and each `R_i`. The threshold `t`
//! and the bookkeeping lines are not counted.
//!
//! The deal id is the first 8 bytes of SHA-256 over every line except
//! `deal`, `m` and the `r.*` block, so it survives `add_secret` and binds
//! share files to their bulletin.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::algebra::{ExtField, ExtFieldElement, ModulusChoice, Scalar, Zl};
use crate::curve::{Curve, Point, TorsionBasis};
use crate::error::{Error, Result};
use crate::liu::{LiuBulletin, LiuSecretEntry, LiuShare};
use crate::mvss::{Bulletin, DealerState, SystemParams};
use crate::pairing::SelfPairingCtx;
use crate::shamir::{ShamirPoly, ShamirShare};

pub const FORMAT_VERSION: &str = "1";

/// 64-bit deal identifier, written as 16 lowercase hex digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DealId(pub u64);

impl fmt::Display for DealId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

impl DealId {
    pub fn parse(s: &str) -> Option<DealId> {
        if s.len() != 16 || s.bytes().any(|b| !matches!(b, b'0'..=b'9' | b'a'..=b'f')) {
            return None;
        }
        u64::from_str_radix(s, 16).ok().map(DealId)
    }
}

#[derive(Default)]
struct Writer {
    lines: Vec<(String, String)>,
}

impl Writer {
    fn put(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.lines.push((key.into(), value.to_string()));
    }

    fn finish(&self) -> String {
        self.lines
            .iter()
            .map(|(k, v)| format!("{k} = {v}\n"))
            .collect()
    }
}

struct Reader<'a> {
    lines: Vec<(&'a str, &'a str)>,
    pos: usize,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::malformed(0, "empty document"));
        }
        let Some(body) = text.strip_suffix('\n') else {
            return Err(Error::malformed(0, "document must end with a newline"));
        };
        let mut lines = Vec::new();
        for (i, line) in body.split('\n').enumerate() {
            let (key, value) = line
                .split_once(" = ")
                .ok_or_else(|| Error::malformed(i + 1, "expected `key = value`"))?;
            if key.is_empty() || key.contains(char::is_whitespace) {
                return Err(Error::malformed(i + 1, "bad key"));
            }
            if value.is_empty() || value != value.trim() {
                return Err(Error::malformed(i + 1, "bad value"));
            }
            lines.push((key, value));
        }
        Ok(Reader { lines, pos: 0 })
    }

    fn line(&self) -> usize {
        self.pos + 1
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::malformed(self.pos, msg)
    }

    fn next(&mut self) -> Result<(&'a str, &'a str)> {
        let item = *self
            .lines
            .get(self.pos)
            .ok_or_else(|| Error::malformed(self.line(), "unexpected end of document"))?;
        self.pos += 1;
        Ok(item)
    }

    fn expect(&mut self, key: &str) -> Result<&'a str> {
        let (k, v) = self.next()?;
        if k != key {
            return Err(self.err(format!("expected key `{key}`, found `{k}`")));
        }
        Ok(v)
    }

    fn expect_prefixed(&mut self, prefix: &str) -> Result<(&'a str, &'a str)> {
        let (k, v) = self.next()?;
        let suffix = k
            .strip_prefix(prefix)
            .ok_or_else(|| self.err(format!("expected key `{prefix}*`, found `{k}`")))?;
        Ok((suffix, v))
    }

    fn decimal(&mut self, key: &str) -> Result<u64> {
        let v = self.expect(key)?;
        parse_decimal(v).ok_or_else(|| self.err(format!("`{key}` is not a canonical integer")))
    }

    fn scalar(&mut self, key: &str, ring: Zl) -> Result<Scalar> {
        let v = self.decimal(key)?;
        if v >= ring.modulus() {
            return Err(self.err(format!("`{key}` is not reduced mod l")));
        }
        Ok(ring.elem(v))
    }

    fn element(&mut self, key: &str, field: &ExtField) -> Result<ExtFieldElement> {
        let v = self.expect(key)?;
        field
            .element_from_hex(v)
            .map_err(|e| self.err(format!("`{key}`: {e}")))
    }

    fn point(&mut self, key: &str, curve: &Curve) -> Result<Point> {
        let v = self.expect(key)?;
        self.parse_point(v, curve)
    }

    fn parse_point(&self, v: &str, curve: &Curve) -> Result<Point> {
        curve
            .point_from_text(v)
            .map_err(|e| self.err(format!("bad point: {e}")))
    }

    fn finish(&self) -> Result<()> {
        if self.pos != self.lines.len() {
            return Err(Error::malformed(self.line(), "unexpected trailing lines"));
        }
        Ok(())
    }
}

fn parse_decimal(s: &str) -> Option<u64> {
    let v: u64 = s.parse().ok()?;
    (v.to_string() == s).then_some(v)
}

fn header(w: &mut Writer, scheme: &str) {
    w.put("scheme", scheme);
    w.put("version", FORMAT_VERSION);
}

fn read_header(r: &mut Reader<'_>) -> Result<&'static str> {
    let scheme = r.expect("scheme")?;
    let version = r.expect("version")?;
    let known = ["mvss", "liu", "setup", "dealer"];
    let scheme = known
        .into_iter()
        .find(|k| *k == scheme)
        .ok_or_else(|| Error::UnknownSchemeVersion(format!("scheme {scheme}")))?;
    if version != FORMAT_VERSION {
        return Err(Error::UnknownSchemeVersion(format!("version {version}")));
    }
    Ok(scheme)
}

fn read_deal(r: &mut Reader<'_>) -> Result<DealId> {
    let v = r.expect("deal")?;
    DealId::parse(v).ok_or_else(|| r.err("deal id must be 16 lowercase hex digits"))
}

fn write_params(w: &mut Writer, params: &SystemParams) {
    let field = params.field();
    let low = field.from_coeffs(field.modulus()[..field.degree()].to_vec()).unwrap();
    let curve = params.curve();
    w.put("p", field.p());
    w.put("r", field.degree());
    w.put("modulus", low.to_hex());
    w.put("curve.a", curve.a().to_hex());
    w.put("curve.b", curve.b().to_hex());
    w.put("q", params.q());
    w.put("l", params.ring().modulus());
    w.put("k", params.k());
    w.put("g", params.basis().g().to_text());
    w.put("h", params.basis().h().to_text());
    w.put("w", params.w().to_text());
    w.put("u", params.u().to_hex());
}

struct ParamsBlock {
    basis: TorsionBasis,
    w: Point,
    u: ExtFieldElement,
    k: u32,
}

fn read_params(r: &mut Reader<'_>) -> Result<ParamsBlock> {
    let p = r.decimal("p")?;
    let deg = r.decimal("r")? as usize;
    let modulus_hex = r.expect("modulus")?;
    let width = crate::algebra::PrimeField::new(p)
        .map_err(|e| r.err(e.to_string()))?
        .hex_width();
    if deg == 0 || modulus_hex.len() != width * deg || !modulus_hex.is_ascii() {
        return Err(r.err("modulus has the wrong length"));
    }
    let mut coeffs = Vec::with_capacity(deg + 1);
    for i in 0..deg {
        let digit = &modulus_hex[i * width..(i + 1) * width];
        if digit.bytes().any(|b| !matches!(b, b'0'..=b'9' | b'a'..=b'f')) {
            return Err(r.err("modulus is not lowercase hex"));
        }
        coeffs.push(u64::from_str_radix(digit, 16).unwrap());
    }
    coeffs.push(1);
    let field = ExtField::new(p, deg, ModulusChoice::Explicit(coeffs))
        .map_err(|e| r.err(format!("modulus: {e}")))?;
    let a = r.element("curve.a", &field)?;
    let b = r.element("curve.b", &field)?;
    let curve = Curve::new(a, b).map_err(|e| r.err(e.to_string()))?;
    let q = r.expect("q")?;
    if q != field.order().to_string() {
        return Err(r.err("q does not equal p^r"));
    }
    let l = r.decimal("l")?;
    let ring = Zl::new(l).map_err(|e| r.err(e.to_string()))?;
    let k = r.decimal("k")?;
    let k = u32::try_from(k).map_err(|_| r.err("k out of range"))?;
    let g = r.point("g", &curve)?;
    let h = r.point("h", &curve)?;
    let basis = TorsionBasis::new(curve.clone(), g, h, ring)
        .map_err(|e| r.err(format!("basis: {e}")))?;
    let w = r.point("w", &curve)?;
    let u = r.element("u", &field)?;
    Ok(ParamsBlock { basis, w, u, k })
}

fn public_params(r: &Reader<'_>, block: ParamsBlock) -> Result<SystemParams> {
    let ctx = SelfPairingCtx::from_public(block.basis, block.w).map_err(|e| r.err(format!("w: {e}")))?;
    SystemParams::new(ctx, block.k, block.u).map_err(|e| r.err(format!("u: {e}")))
}

fn write_mvss(b: &Bulletin, w: &mut Writer) {
    header(w, "mvss");
    w.put("deal", b.deal_id);
    write_params(w, &b.params);
    w.put("t", b.t);
    w.put("n", b.n());
    w.put("m", b.m());
    w.put("c", b.challenge.0);
    w.put("d", b.challenge.1);
    w.put("v0", b.v0.to_text());
    for (x, v) in &b.v {
        w.put(format!("v.{x}"), v.to_text());
    }
    for (i, code) in b.r.iter().enumerate() {
        w.put(format!("r.{}", i + 1), code.to_hex());
    }
}

fn read_mvss(r: &mut Reader<'_>) -> Result<Bulletin> {
    let deal_id = read_deal(r)?;
    let block = read_params(r)?;
    let params = public_params(r, block)?;
    let ring = params.ring();
    let curve = params.curve().clone();
    let t = r.decimal("t")? as usize;
    let n = r.decimal("n")? as usize;
    let m = r.decimal("m")? as usize;
    if t < 2 || t > n || n as u64 >= ring.modulus() {
        return Err(r.err("need 2 <= t <= n < l"));
    }
    if m as u64 >= ring.modulus() {
        return Err(r.err("need m < l"));
    }
    let c = r.scalar("c", ring)?;
    let d = r.scalar("d", ring)?;
    if c.is_zero() || d.is_zero() {
        return Err(r.err("challenge coefficients must be nonzero"));
    }
    let v0 = r.point("v0", &curve)?;
    let mut v: Vec<(Scalar, Point)> = Vec::with_capacity(n);
    for _ in 0..n {
        let (suffix, value) = r.expect_prefixed("v.")?;
        let x = parse_decimal(suffix)
            .filter(|&x| x != 0 && x < ring.modulus())
            .ok_or_else(|| r.err("participant abscissa must be in [1, l-1]"))?;
        let x = ring.elem(x);
        if v.iter().any(|(seen, _)| *seen == x) {
            return Err(r.err("duplicate participant abscissa"));
        }
        v.push((x, r.parse_point(value, &curve)?));
    }
    let field = params.field().clone();
    let mut codes = Vec::with_capacity(m);
    for i in 1..=m {
        codes.push(r.element(&format!("r.{i}"), &field)?);
    }
    r.finish()?;
    Ok(Bulletin {
        params,
        deal_id,
        t,
        challenge: (c, d),
        v0,
        v,
        r: codes,
    })
}

fn write_liu(b: &LiuBulletin, w: &mut Writer) {
    header(w, "liu");
    w.put("deal", b.deal_id);
    write_params(w, &b.params);
    w.put("t", b.t);
    w.put("n", b.n);
    w.put("m", b.entries.len());
    for (i, e) in b.entries.iter().enumerate() {
        w.put(format!("e.{}", i + 1), format!("{} {} {}", e.c, e.d, e.r.to_text()));
    }
}

fn read_liu(r: &mut Reader<'_>) -> Result<LiuBulletin> {
    let deal_id = read_deal(r)?;
    let block = read_params(r)?;
    let params = public_params(r, block)?;
    let ring = params.ring();
    let curve = params.curve().clone();
    let t = r.decimal("t")? as usize;
    let n = r.decimal("n")? as usize;
    let m = r.decimal("m")? as usize;
    if t == 0 || t > n || n as u64 >= ring.modulus() || m > t {
        return Err(r.err("need 1 <= t <= n < l and m <= t"));
    }
    let mut entries = Vec::with_capacity(m);
    for i in 1..=m {
        let v = r.expect(&format!("e.{i}"))?;
        let parts: Vec<&str> = v.split(' ').collect();
        let [c, d, pt] = parts[..] else {
            return Err(r.err("entry must be `<c> <d> <point>`"));
        };
        let scalar = |s: &str| {
            parse_decimal(s)
                .filter(|&v| v < ring.modulus())
                .map(|v| ring.elem(v))
                .ok_or_else(|| r.err("entry scalar is not a reduced integer"))
        };
        entries.push(LiuSecretEntry {
            c: scalar(c)?,
            d: scalar(d)?,
            r: r.parse_point(pt, &curve)?,
        });
    }
    r.finish()?;
    Ok(LiuBulletin {
        params,
        deal_id,
        t,
        n,
        entries,
    })
}

/// Any public notice-board document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BulletinDocument {
    Mvss(Bulletin),
    Liu(LiuBulletin),
}

impl BulletinDocument {
    pub fn serialize(&self) -> String {
        let mut w = Writer::default();
        match self {
            BulletinDocument::Mvss(b) => write_mvss(b, &mut w),
            BulletinDocument::Liu(b) => write_liu(b, &mut w),
        }
        w.finish()
    }

    pub fn deserialize(bytes: &[u8]) -> Result<Self> {
        let text = std::str::from_utf8(bytes).map_err(|_| Error::malformed(0, "not UTF-8"))?;
        let mut r = Reader::new(text)?;
        let doc = match read_header(&mut r)? {
            "mvss" => BulletinDocument::Mvss(read_mvss(&mut r)?),
            "liu" => BulletinDocument::Liu(read_liu(&mut r)?),
            other => {
                return Err(Error::UnknownSchemeVersion(format!(
                    "{other} is not a bulletin"
                )))
            }
        };
        if doc.serialize() != text {
            return Err(Error::malformed(0, "document is not in canonical form"));
        }
        Ok(doc)
    }

    pub fn deal_id(&self) -> DealId {
        match self {
            BulletinDocument::Mvss(b) => b.deal_id,
            BulletinDocument::Liu(b) => b.deal_id,
        }
    }
}

impl Bulletin {
    pub fn serialize(&self) -> String {
        BulletinDocument::Mvss(self.clone()).serialize()
    }

    pub fn deserialize(bytes: &[u8]) -> Result<Self> {
        match BulletinDocument::deserialize(bytes)? {
            BulletinDocument::Mvss(b) => Ok(b),
            BulletinDocument::Liu(_) => Err(Error::WrongScheme),
        }
    }

    /// `7 + n + m`, see the module docs for what the 7 are.
    pub fn param_count(&self) -> usize {
        7 + self.n() + self.m()
    }
}

pub fn param_count(doc: &BulletinDocument) -> Result<usize> {
    match doc {
        BulletinDocument::Mvss(b) => Ok(b.param_count()),
        BulletinDocument::Liu(_) => Err(Error::WrongScheme),
    }
}

fn hash_id(text: &str) -> DealId {
    let digest = Sha256::digest(text.as_bytes());
    DealId(u64::from_be_bytes(digest[..8].try_into().unwrap()))
}

pub fn compute_deal_id(b: &Bulletin) -> DealId {
    let mut w = Writer::default();
    write_mvss(b, &mut w);
    w.lines
        .retain(|(k, _)| k != "deal" && k != "m" && !k.starts_with("r."));
    hash_id(&w.finish())
}

pub fn compute_liu_deal_id(b: &LiuBulletin) -> DealId {
    let mut w = Writer::default();
    write_liu(b, &mut w);
    w.lines.retain(|(k, _)| k != "deal");
    hash_id(&w.finish())
}

/// System parameters together with the dealer's private `alpha, beta`.
pub fn serialize_setup(params: &SystemParams) -> Result<String> {
    let (alpha, beta) = params.ctx().alpha_beta().ok_or(Error::StateMismatch)?;
    let mut w = Writer::default();
    header(&mut w, "setup");
    write_params(&mut w, params);
    w.put("alpha", alpha);
    w.put("beta", beta);
    Ok(w.finish())
}

pub fn deserialize_setup(bytes: &[u8]) -> Result<SystemParams> {
    let text = std::str::from_utf8(bytes).map_err(|_| Error::malformed(0, "not UTF-8"))?;
    let mut r = Reader::new(text)?;
    if read_header(&mut r)? != "setup" {
        return Err(Error::UnknownSchemeVersion("expected a setup file".into()));
    }
    let block = read_params(&mut r)?;
    let ring = block.basis.ring();
    let alpha = r.scalar("alpha", ring)?;
    let beta = r.scalar("beta", ring)?;
    r.finish()?;
    let ctx = SelfPairingCtx::new(block.basis, alpha, beta).map_err(|e| r.err(e.to_string()))?;
    if ctx.w() != &block.w {
        return Err(r.err("w does not equal alpha*G + beta*H"));
    }
    let params = SystemParams::new(ctx, block.k, block.u).map_err(|e| r.err(e.to_string()))?;
    if serialize_setup(&params)? != text {
        return Err(Error::malformed(0, "document is not in canonical form"));
    }
    Ok(params)
}

pub fn serialize_dealer(d: &DealerState) -> String {
    let mut w = Writer::default();
    header(&mut w, "dealer");
    w.put("deal", d.deal_id);
    w.put("l", d.a0.modulus());
    w.put("t", d.t);
    w.put("n", d.n);
    w.put("m", d.m);
    w.put("a0", d.a0);
    w.put("b0", d.b0);
    let coeffs: Vec<String> = d.poly.coeffs().iter().map(ToString::to_string).collect();
    w.put("coeffs", coeffs.join(","));
    w.put("c", d.c);
    w.put("d", d.d);
    w.finish()
}

/// Restores dealer state; `P0` is recomputed with the bulletin's basis.
pub fn deserialize_dealer(bytes: &[u8], bulletin: &Bulletin) -> Result<DealerState> {
    let text = std::str::from_utf8(bytes).map_err(|_| Error::malformed(0, "not UTF-8"))?;
    let mut r = Reader::new(text)?;
    if read_header(&mut r)? != "dealer" {
        return Err(Error::UnknownSchemeVersion("expected a dealer file".into()));
    }
    let deal_id = read_deal(&mut r)?;
    let l = r.decimal("l")?;
    let ring = Zl::new(l).map_err(|e| r.err(e.to_string()))?;
    if ring != bulletin.params.ring() || deal_id != bulletin.deal_id {
        return Err(Error::StateMismatch);
    }
    let t = r.decimal("t")? as usize;
    let n = r.decimal("n")? as usize;
    let m = r.decimal("m")? as usize;
    let a0 = r.scalar("a0", ring)?;
    let b0 = r.scalar("b0", ring)?;
    let coeffs_text = r.expect("coeffs")?;
    let mut coeffs = Vec::new();
    for c in coeffs_text.split(',') {
        let v = parse_decimal(c)
            .filter(|&v| v < l)
            .ok_or_else(|| r.err("bad polynomial coefficient"))?;
        coeffs.push(ring.elem(v));
    }
    let poly = ShamirPoly::from_coeffs(coeffs).map_err(|e| r.err(e.to_string()))?;
    if poly.threshold() != t || poly.a0() != a0 || poly.b0() != b0 {
        return Err(r.err("polynomial does not match t, a0, b0"));
    }
    let c = r.scalar("c", ring)?;
    let d = r.scalar("d", ring)?;
    r.finish()?;
    let state = DealerState {
        deal_id,
        a0,
        b0,
        p0: bulletin.params.basis().combine(a0, b0),
        poly,
        c,
        d,
        n,
        t,
        m,
    };
    if serialize_dealer(&state) != text {
        return Err(Error::malformed(0, "document is not in canonical form"));
    }
    Ok(state)
}

/// A private share file: one record per line,
/// `x=<dec> s=<dec> l=<dec> deal=<hex id>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShareFile {
    pub deal_id: DealId,
    pub records: Vec<ShamirShare>,
}

impl ShareFile {
    pub fn single(deal_id: DealId, share: ShamirShare) -> Self {
        ShareFile {
            deal_id,
            records: vec![share],
        }
    }

    pub fn serialize(&self) -> String {
        self.records
            .iter()
            .map(|sh| {
                format!(
                    "x={} s={} l={} deal={}\n",
                    sh.x,
                    sh.s,
                    sh.x.modulus(),
                    self.deal_id
                )
            })
            .collect()
    }

    pub fn deserialize(bytes: &[u8]) -> Result<Self> {
        let recs = parse_records(bytes, &["x", "s"])?;
        let deal_id = recs[0].1;
        let records = recs
            .into_iter()
            .enumerate()
            .map(|(i, (vals, id, ring))| {
                if id != deal_id {
                    return Err(Error::malformed(i + 1, "records from different deals"));
                }
                if vals[0] == 0 {
                    return Err(Error::malformed(i + 1, "x must be nonzero"));
                }
                Ok(ShamirShare::new(ring.elem(vals[0]), ring.elem(vals[1])))
            })
            .collect::<Result<_>>()?;
        Ok(ShareFile { deal_id, records })
    }
}

/// Liu share file, records `j=<dec> a=<dec> b=<dec> l=<dec> deal=<hex id>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiuShareFile {
    pub deal_id: DealId,
    pub records: Vec<LiuShare>,
}

impl LiuShareFile {
    pub fn serialize(&self) -> String {
        self.records
            .iter()
            .map(|sh| {
                format!(
                    "j={} a={} b={} l={} deal={}\n",
                    sh.j,
                    sh.a,
                    sh.b,
                    sh.a.modulus(),
                    self.deal_id
                )
            })
            .collect()
    }

    pub fn deserialize(bytes: &[u8]) -> Result<Self> {
        let recs = parse_records(bytes, &["j", "a", "b"])?;
        let deal_id = recs[0].1;
        let records = recs
            .into_iter()
            .enumerate()
            .map(|(i, (vals, id, ring))| {
                if id != deal_id {
                    return Err(Error::malformed(i + 1, "records from different deals"));
                }
                let j = u32::try_from(vals[0])
                    .ok()
                    .filter(|&j| j > 0)
                    .ok_or_else(|| Error::malformed(i + 1, "bad participant index"))?;
                Ok(LiuShare {
                    j,
                    a: ring.elem(vals[1]),
                    b: ring.elem(vals[2]),
                })
            })
            .collect::<Result<_>>()?;
        Ok(LiuShareFile { deal_id, records })
    }
}

type Record = (Vec<u64>, DealId, Zl);

fn parse_records(bytes: &[u8], fields: &[&str]) -> Result<Vec<Record>> {
    let text = std::str::from_utf8(bytes).map_err(|_| Error::malformed(0, "not UTF-8"))?;
    let body = text
        .strip_suffix('\n')
        .ok_or_else(|| Error::malformed(0, "share file must end with a newline"))?;
    let mut out = Vec::new();
    for (i, line) in body.split('\n').enumerate() {
        let lineno = i + 1;
        let parts: Vec<&str> = line.split(' ').collect();
        if parts.len() != fields.len() + 2 {
            return Err(Error::malformed(lineno, "wrong number of fields"));
        }
        let field = |idx: usize, name: &str| -> Result<&str> {
            parts[idx]
                .strip_prefix(name)
                .and_then(|rest| rest.strip_prefix('='))
                .ok_or_else(|| Error::malformed(lineno, format!("expected `{name}=`")))
        };
        let l = parse_decimal(field(fields.len(), "l")?)
            .ok_or_else(|| Error::malformed(lineno, "bad l"))?;
        let ring = Zl::new(l).map_err(|e| Error::malformed(lineno, e.to_string()))?;
        let mut vals = Vec::with_capacity(fields.len());
        for (idx, name) in fields.iter().enumerate() {
            let v = parse_decimal(field(idx, name)?)
                .ok_or_else(|| Error::malformed(lineno, format!("`{name}` is not canonical")))?;
            if *name != "j" && v >= l {
                return Err(Error::malformed(lineno, format!("`{name}` is not reduced mod l")));
            }
            vals.push(v);
        }
        let deal = DealId::parse(field(fields.len() + 1, "deal")?)
            .ok_or_else(|| Error::malformed(lineno, "bad deal id"))?;
        out.push((vals, deal, ring));
    }
    Ok(out)
}

pub fn bulletin_path(dir: &Path, deal: DealId) -> PathBuf {
    dir.join(format!("{deal}.bulletin"))
}

pub fn share_path(dir: &Path, deal: DealId, index: u32) -> PathBuf {
    dir.join(format!("{deal}.share.{index}"))
}

pub fn dealer_path(dir: &Path, deal: DealId) -> PathBuf {
    dir.join(format!("{deal}.dealer"))
}

/// Participant index from a `<deal>.share.<index>` file name.
pub fn share_index_from_path(path: &Path) -> Option<u32> {
    let name = path.file_name()?.to_str()?;
    let (_, idx) = name.rsplit_once(".share.")?;
    parse_decimal(idx).and_then(|v| u32::try_from(v).ok())
}

/// Writes to a sibling temp file, then renames over `path`.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .and_then(|n| n.to_str())
        .ok_or_else(|| Error::OutOfRange(format!("bad path {}", path.display())))?;
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}
