//! The verifiable multi-secret sharing scheme.
//!
//! Dealing picks a secret point `P0 = a0*G + b0*H` and a Shamir polynomial
//! with `a0` in the constant slot and `b0` in the leading slot. Participant
//! `i` receives `(x_i, S_i = f(x_i))`. The bulletin publishes
//!
//! * a challenge point `Q = c*G + d*H` (as its coefficients `c, d`),
//! * `V_i = e(x_i*G + S_i*H, Q) = (x_i*d - c*S_i) * W` for each participant,
//! * `V0 = e(P0, Q) = (a0*d - c*b0) * W`,
//! * recovery codes `R_i = K_i - ê(P0, P0)^i` for every secret.
//!
//! Any `t` valid shares interpolate `(a0, b0)`, hence `P0`, hence every
//! mask. The number of secrets is independent of `t`.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rand::RngCore;

use crate::algebra::{ExtField, ExtFieldElement, Scalar, Zl};
use crate::bulletin::{compute_deal_id, DealId};
use crate::curve::{sample_generating_pair, Curve, Point, TorsionBasis};
use crate::error::{Error, Result};
use crate::pairing::{check_mask_index, distortion_unit, mask_base, MaskValue, SelfPairingCtx};
use crate::presets::CurveSetup;
use crate::shamir::{eval_shares, interpolate, make_poly, ShamirPoly, ShamirShare};

/// Public system parameters `{E, q, l, k, G, H, W}` plus the distortion unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemParams {
    ctx: SelfPairingCtx,
    k: u32,
    u: ExtFieldElement,
}

impl SystemParams {
    pub fn new(ctx: SelfPairingCtx, k: u32, u: ExtFieldElement) -> Result<Self> {
        let curve = ctx.basis().curve();
        if !curve.b().is_zero() {
            return Err(Error::UnsupportedCurveForm);
        }
        if u.field() != curve.field() || !(&u.square() + &curve.field().one()).is_zero() {
            return Err(Error::BadDistortionUnit);
        }
        Ok(SystemParams { ctx, k, u })
    }

    /// Samples `G, H` and `alpha, beta in [1, l-1]`, then checks that the
    /// modified pairing is nontrivial on the diagonal.
    pub fn generate<R: RngCore + ?Sized>(setup: &CurveSetup, rng: &mut R) -> Result<Self> {
        let basis = sample_generating_pair(&setup.curve, setup.ring, &setup.exponent, rng)?;
        let alpha = setup.ring.random_nonzero(rng);
        let beta = setup.ring.random_nonzero(rng);
        Self::with_basis(basis, alpha, beta, setup.k)
    }

    pub fn with_basis(basis: TorsionBasis, alpha: Scalar, beta: Scalar, k: u32) -> Result<Self> {
        let u = distortion_unit(basis.curve().field())?;
        let ring = basis.ring();
        mask_base(basis.g(), ring, basis.curve(), &u)?;
        let ctx = SelfPairingCtx::new(basis, alpha, beta)?;
        Self::new(ctx, k, u)
    }

    /// The same parameters with `alpha, beta` forgotten.
    pub fn public(&self) -> SystemParams {
        SystemParams {
            ctx: SelfPairingCtx::from_public(self.ctx.basis().clone(), self.ctx.w().clone())
                .expect("W is valid"),
            k: self.k,
            u: self.u.clone(),
        }
    }

    pub fn ctx(&self) -> &SelfPairingCtx {
        &self.ctx
    }

    pub fn basis(&self) -> &TorsionBasis {
        self.ctx.basis()
    }

    pub fn curve(&self) -> &Curve {
        self.ctx.basis().curve()
    }

    pub fn field(&self) -> &ExtField {
        self.curve().field()
    }

    pub fn q(&self) -> &BigUint {
        self.field().order()
    }

    pub fn ring(&self) -> Zl {
        self.ctx.basis().ring()
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn w(&self) -> &Point {
        self.ctx.w()
    }

    pub fn u(&self) -> &ExtFieldElement {
        &self.u
    }

    /// `ê(P0, P0)`.
    pub fn mask_base(&self, p0: &Point) -> Result<MaskValue> {
        mask_base(p0, self.ring(), self.curve(), &self.u)
    }

    /// `ê(P0, i*P0)`.
    pub fn mask(&self, p0: &Point, i: u64) -> Result<MaskValue> {
        check_mask_index(i, self.ring())?;
        Ok(self.mask_base(p0)?.pow(i))
    }
}

/// The secrets `K_1..K_m`, elements of the working field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecretVector(pub Vec<ExtFieldElement>);

/// The public notice board of one deal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bulletin {
    pub params: SystemParams,
    pub deal_id: DealId,
    pub t: usize,
    /// Challenge coefficients `(c, d)` of `Q = c*G + d*H`.
    pub challenge: (Scalar, Scalar),
    pub v0: Point,
    /// `(x_i, V_i)` in participant order; participant `i` owns entry `i - 1`.
    pub v: Vec<(Scalar, Point)>,
    pub r: Vec<ExtFieldElement>,
}

impl Bulletin {
    pub fn n(&self) -> usize {
        self.v.len()
    }

    pub fn m(&self) -> usize {
        self.r.len()
    }

    pub fn x_assign(&self) -> Vec<Scalar> {
        self.v.iter().map(|(x, _)| *x).collect()
    }

    pub fn challenge_point(&self) -> Point {
        self.params.basis().combine(self.challenge.0, self.challenge.1)
    }

    /// 1-based participant index owning abscissa `x`.
    pub fn participant_of(&self, x: Scalar) -> Option<u32> {
        self.v
            .iter()
            .position(|(xi, _)| *xi == x)
            .map(|i| i as u32 + 1)
    }

    fn v_for(&self, x: Scalar) -> Result<&Point> {
        self.v
            .iter()
            .find(|(xi, _)| *xi == x)
            .map(|(_, v)| v)
            .ok_or(Error::UnknownParticipant(x.value()))
    }
}

/// Private dealer material, needed to append secrets later.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DealerState {
    pub deal_id: DealId,
    pub a0: Scalar,
    pub b0: Scalar,
    pub p0: Point,
    pub poly: ShamirPoly,
    pub c: Scalar,
    pub d: Scalar,
    pub n: usize,
    pub t: usize,
    pub m: usize,
}

/// A share as submitted by a participant over an authenticated channel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Submission {
    pub participant: u32,
    pub share: ShamirShare,
}

impl Submission {
    pub fn new(participant: u32, share: ShamirShare) -> Self {
        Submission { participant, share }
    }
}

/// Result of a deal: one share per participant, the bulletin, and the
/// dealer's private state.
#[derive(Clone, Debug)]
pub struct Deal {
    pub shares: Vec<ShamirShare>,
    pub bulletin: Bulletin,
    pub dealer: DealerState,
}

/// Deals `secrets` to `n` participants with abscissae `1..=n`.
pub fn deal<R: RngCore + ?Sized>(
    params: &SystemParams,
    t: usize,
    n: usize,
    secrets: &SecretVector,
    rng: &mut R,
) -> Result<Deal> {
    let ring = params.ring();
    let xs: Vec<Scalar> = (1..=n as u64).map(|x| ring.elem(x)).collect();
    deal_with_xs(params, t, &xs, secrets, rng)
}

pub fn deal_with_xs<R: RngCore + ?Sized>(
    params: &SystemParams,
    t: usize,
    xs: &[Scalar],
    secrets: &SecretVector,
    rng: &mut R,
) -> Result<Deal> {
    let ring = params.ring();
    let l = ring.modulus();
    let n = xs.len();
    if t < 2 || t > n || n as u64 >= l {
        return Err(Error::BadThreshold(format!(
            "need 2 <= t <= n < l, got t={t} n={n} l={l}"
        )));
    }
    let m = secrets.0.len();
    if m == 0 {
        return Err(Error::OutOfRange("need at least one secret".into()));
    }
    if m as u64 >= l {
        return Err(Error::TooManySecrets(format!("m={m} must be below l={l}")));
    }
    if secrets.0.iter().any(|k| k.field() != params.field()) {
        return Err(Error::FieldMismatch);
    }

    let (a0, b0) = loop {
        let (a0, b0) = (ring.random(rng), ring.random(rng));
        if !(a0.is_zero() && b0.is_zero()) {
            break (a0, b0);
        }
    };
    let p0 = params.basis().combine(a0, b0);
    let poly = make_poly(a0, b0, t, rng)?;
    let shares = eval_shares(&poly, xs)?;
    let c = ring.random_nonzero(rng);
    let d = ring.random_nonzero(rng);

    let ctx = params.ctx();
    let v = shares
        .iter()
        .map(|sh| (sh.x, ctx.pair_coeffs(sh.x, sh.s, c, d)))
        .collect();
    let v0 = ctx.pair_coeffs(a0, b0, c, d);
    let base = params.mask_base(&p0)?;
    let r = secrets
        .0
        .iter()
        .enumerate()
        .map(|(i, k)| k - base.pow(i as u64 + 1).value())
        .collect();

    let mut bulletin = Bulletin {
        params: params.public(),
        deal_id: DealId(0),
        t,
        challenge: (c, d),
        v0,
        v,
        r,
    };
    bulletin.deal_id = compute_deal_id(&bulletin);
    let dealer = DealerState {
        deal_id: bulletin.deal_id,
        a0,
        b0,
        p0,
        poly,
        c,
        d,
        n,
        t,
        m,
    };
    Ok(Deal {
        shares,
        bulletin,
        dealer,
    })
}

/// Accepts iff `(x*d - c*s) * W` equals the published `V` for `x`.
pub fn verify_share(share: &ShamirShare, bulletin: &Bulletin) -> Result<bool> {
    let published = bulletin.v_for(share.x)?;
    let (c, d) = bulletin.challenge;
    let computed = bulletin.params.ctx().pair_coeffs(share.x, share.s, c, d);
    Ok(&computed == published)
}

/// A submission is valid when it carries the participant's own abscissa and
/// passes [`verify_share`].
pub fn verify_submission(sub: &Submission, bulletin: &Bulletin) -> bool {
    let idx = sub.participant as usize;
    if idx == 0 || idx > bulletin.n() || bulletin.v[idx - 1].0 != sub.share.x {
        return false;
    }
    verify_share(&sub.share, bulletin).unwrap_or(false)
}

/// Participants whose submission fails verification. Each share is judged
/// on its own, so the result does not depend on order or on other cheaters.
pub fn identify_cheaters(submitted: &[Submission], bulletin: &Bulletin) -> BTreeSet<u32> {
    submitted
        .iter()
        .filter(|sub| !verify_submission(sub, bulletin))
        .map(|sub| sub.participant)
        .collect()
}

/// Interpolates `(a0, b0)` from exactly `t` shares and forms `P0`.
pub fn recover_point(
    shares: &[ShamirShare],
    t: usize,
    basis: &TorsionBasis,
) -> Result<(Scalar, Scalar, Point)> {
    let interp = interpolate(shares, t)?;
    let p0 = basis.combine(interp.a0, interp.b0);
    Ok((interp.a0, interp.b0, p0))
}

/// Secrets plus the bookkeeping of how they were obtained.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub secrets: SecretVector,
    pub cheaters: BTreeSet<u32>,
    pub used: Vec<u32>,
}

pub fn reconstruct(submitted: &[Submission], bulletin: &Bulletin) -> Result<SecretVector> {
    reconstruct_report(submitted, bulletin).map(|r| r.secrets)
}

/// Filters cheaters, interpolates from the first `t` honest shares, checks
/// `V0`, and unmasks every recovery code.
pub fn reconstruct_report(submitted: &[Submission], bulletin: &Bulletin) -> Result<Reconstruction> {
    let t = bulletin.t;
    if submitted.len() < t {
        return Err(Error::NotEnoughShares {
            needed: t,
            got: submitted.len(),
        });
    }
    let cheaters = identify_cheaters(submitted, bulletin);
    let mut honest: Vec<&Submission> = Vec::new();
    for sub in submitted {
        if !cheaters.contains(&sub.participant)
            && !honest.iter().any(|h| h.participant == sub.participant)
        {
            honest.push(sub);
        }
    }
    if honest.len() < t {
        if cheaters.is_empty() {
            return Err(Error::NotEnoughShares {
                needed: t,
                got: honest.len(),
            });
        }
        return Err(Error::CheaterDetected(cheaters.into_iter().collect()));
    }
    let chosen = &honest[..t];
    let shares: Vec<ShamirShare> = chosen.iter().map(|s| s.share).collect();
    let (a0, b0, p0) = recover_point(&shares, t, bulletin.params.basis())?;

    let (c, d) = bulletin.challenge;
    if bulletin.params.ctx().pair_coeffs(a0, b0, c, d) != bulletin.v0 {
        return Err(Error::InconsistentShares);
    }
    let secrets = unmask(&bulletin.params, &p0, &bulletin.r)?;
    Ok(Reconstruction {
        secrets,
        cheaters,
        used: chosen.iter().map(|s| s.participant).collect(),
    })
}

/// `K_i = R_i + ê(P0, P0)^i`.
pub fn unmask(params: &SystemParams, p0: &Point, codes: &[ExtFieldElement]) -> Result<SecretVector> {
    let base = params.mask_base(p0)?;
    Ok(SecretVector(
        codes
            .iter()
            .enumerate()
            .map(|(i, r)| r + base.pow(i as u64 + 1).value())
            .collect(),
    ))
}

/// Appends `R_{m+1} = K_new - ê(P0, (m+1)*P0)`. Shares are untouched.
pub fn add_secret(
    dealer: &mut DealerState,
    bulletin: &Bulletin,
    k_new: &ExtFieldElement,
) -> Result<Bulletin> {
    let (c, d) = bulletin.challenge;
    let consistent = dealer.deal_id == bulletin.deal_id
        && (dealer.c, dealer.d) == (c, d)
        && dealer.t == bulletin.t
        && dealer.n == bulletin.n()
        && dealer.m == bulletin.m()
        && bulletin.params.ctx().pair_coeffs(dealer.a0, dealer.b0, c, d) == bulletin.v0;
    if !consistent {
        return Err(Error::StateMismatch);
    }
    if k_new.field() != bulletin.params.field() {
        return Err(Error::FieldMismatch);
    }
    let index = dealer.m as u64 + 1;
    let ring = bulletin.params.ring();
    check_mask_index(index, ring)?;
    let mask = bulletin.params.mask(&dealer.p0, index)?;
    let mut updated = bulletin.clone();
    updated.r.push(k_new - mask.value());
    dealer.m += 1;
    Ok(updated)
}
