//! Baseline point-sharing scheme built on an `n x t` Vandermonde matrix.
//!
//! The dealer keeps `t` private pairs `(a'_i, b'_i)` and hands participant
//! `j` row `j` of `(A a', A b')`. Secret point `M_i` is published as
//! `R_i = e(Q_i, P'_i) + M_i` with a public `Q_i = c_i G + d_i H`. At most
//! `t` secrets can be shared, and shares cannot be verified.
//!
//! To recover `M_i`, each of `t` participants publishes the pseudo-share
//! `SS_ij = e(Q_i, P_j)`. Because `(a_j)` is the Vandermonde image of `a'`,
//! row `i` of the inverse Vandermonde over the chosen indices combines the
//! pseudo-shares into `e(Q_i, P'_i)`.

use rand::RngCore;
use sha2::{Digest, Sha256};

use crate::algebra::{vandermonde, vandermonde_rows, Scalar, Zl};
use crate::bulletin::DealId;
use crate::curve::{Point, TorsionBasis};
use crate::error::{Error, Result};
use crate::mvss::SystemParams;
use crate::pairing::SelfPairingCtx;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiuDealerState {
    aprime: Vec<Scalar>,
    bprime: Vec<Scalar>,
    ctx: SelfPairingCtx,
}

impl LiuDealerState {
    pub fn new(ctx: SelfPairingCtx, aprime: Vec<Scalar>, bprime: Vec<Scalar>) -> Result<Self> {
        if aprime.is_empty() || aprime.len() != bprime.len() {
            return Err(Error::BadDims(format!(
                "need matching non-empty a', b', got {} and {}",
                aprime.len(),
                bprime.len()
            )));
        }
        if aprime.iter().chain(&bprime).any(Scalar::is_zero) {
            return Err(Error::OutOfRange("a', b' must lie in [1, l-1]".into()));
        }
        Ok(LiuDealerState {
            aprime,
            bprime,
            ctx,
        })
    }

    pub fn random<R: RngCore + ?Sized>(ctx: SelfPairingCtx, t: usize, rng: &mut R) -> Result<Self> {
        let ring = ctx.basis().ring();
        let aprime = (0..t).map(|_| ring.random_nonzero(rng)).collect();
        let bprime = (0..t).map(|_| ring.random_nonzero(rng)).collect();
        Self::new(ctx, aprime, bprime)
    }

    pub fn t(&self) -> usize {
        self.aprime.len()
    }

    pub fn aprime(&self) -> &[Scalar] {
        &self.aprime
    }

    pub fn bprime(&self) -> &[Scalar] {
        &self.bprime
    }

    pub fn ctx(&self) -> &SelfPairingCtx {
        &self.ctx
    }

    fn ring(&self) -> Zl {
        self.ctx.basis().ring()
    }
}

/// Participant `j`'s share `(a_j, b_j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiuShare {
    pub j: u32,
    pub a: Scalar,
    pub b: Scalar,
}

/// Public record `{c_i, d_i, R_i}` for one secret.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiuSecretEntry {
    pub c: Scalar,
    pub d: Scalar,
    pub r: Point,
}

/// Public notice board of a Liu deal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiuBulletin {
    pub params: SystemParams,
    pub deal_id: DealId,
    pub t: usize,
    pub n: usize,
    pub entries: Vec<LiuSecretEntry>,
}

pub fn liu_distribute(state: &LiuDealerState, t: usize, n: usize) -> Result<Vec<LiuShare>> {
    if t != state.t() {
        return Err(Error::BadDims(format!(
            "dealer holds {} pairs but t = {t}",
            state.t()
        )));
    }
    let a = vandermonde(n, t, state.ring())?;
    let col_a = a.mul_vec(&state.aprime)?;
    let col_b = a.mul_vec(&state.bprime)?;
    Ok(col_a
        .into_iter()
        .zip(col_b)
        .enumerate()
        .map(|(j, (a, b))| LiuShare {
            j: j as u32 + 1,
            a,
            b,
        })
        .collect())
}

/// `c_i b'_i - a'_i d_i`: the multiple of `W` masking secret `i` (1-based).
pub fn liu_mask_scalar(state: &LiuDealerState, i: usize, c: Scalar, d: Scalar) -> Scalar {
    SelfPairingCtx::pair_scalar(c, d, state.aprime[i - 1], state.bprime[i - 1])
}

pub fn liu_publish(
    state: &LiuDealerState,
    secrets: &[Point],
    cd: &[(Scalar, Scalar)],
) -> Result<Vec<LiuSecretEntry>> {
    if secrets.len() > state.t() {
        return Err(Error::TooManySecrets(format!(
            "m={} exceeds t={}",
            secrets.len(),
            state.t()
        )));
    }
    if secrets.len() != cd.len() {
        return Err(Error::BadDims("one (c, d) pair per secret".into()));
    }
    let curve = state.ctx.basis().curve();
    secrets
        .iter()
        .zip(cd)
        .enumerate()
        .map(|(idx, (m, &(c, d)))| {
            if !curve.contains(m) {
                return Err(Error::OffCurveInput);
            }
            let mask = state.ctx.scalar_w(liu_mask_scalar(state, idx + 1, c, d));
            Ok(LiuSecretEntry {
                c,
                d,
                r: curve.add_unchecked(&mask, m),
            })
        })
        .collect()
}

/// `c_i b_j - a_j d_i`.
pub fn liu_pseudo_scalar(entry: &LiuSecretEntry, share: &LiuShare) -> Scalar {
    SelfPairingCtx::pair_scalar(entry.c, entry.d, share.a, share.b)
}

/// `SS_ij = e(Q_i, P_j)`.
pub fn liu_pseudo_share(entry: &LiuSecretEntry, share: &LiuShare, ctx: &SelfPairingCtx) -> Point {
    ctx.scalar_w(liu_pseudo_scalar(entry, share))
}

/// Row `i` (1-based) of the inverse of the `t x t` Vandermonde over `js`.
pub fn reconstruction_row(i: usize, js: &[u32], ring: Zl) -> Result<Vec<Scalar>> {
    let t = js.len();
    if i == 0 || i > t {
        return Err(Error::BadDims(format!("secret index {i} outside 1..={t}")));
    }
    let xs: Vec<Scalar> = js.iter().map(|&j| ring.elem(j as u64)).collect();
    let inv = vandermonde_rows(&xs, t).inverse()?;
    Ok(inv.row(i - 1).to_vec())
}

/// Recovers `M_i = R_i - T_i` with `T_i = Σ_k row_i[k] * SS_{i, j_k}`.
pub fn liu_reconstruct(
    i: usize,
    t: usize,
    pseudo: &[(u32, Point)],
    entry: &LiuSecretEntry,
    ctx: &SelfPairingCtx,
) -> Result<Point> {
    let t_i = liu_combine(i, t, pseudo, ctx)?;
    let curve = ctx.basis().curve();
    Ok(curve.add_unchecked(&entry.r, &t_i.neg()))
}

/// `T_i` alone.
pub fn liu_combine(
    i: usize,
    t: usize,
    pseudo: &[(u32, Point)],
    ctx: &SelfPairingCtx,
) -> Result<Point> {
    if pseudo.len() != t {
        return Err(Error::WrongShareCount {
            expected: t,
            got: pseudo.len(),
        });
    }
    let js: Vec<u32> = pseudo.iter().map(|(j, _)| *j).collect();
    let row = reconstruction_row(i, &js, ctx.basis().ring())?;
    let curve = ctx.basis().curve();
    Ok(row
        .iter()
        .zip(pseudo)
        .fold(Point::Infinity, |acc, (&y, (_, ss))| {
            curve.add_unchecked(&acc, &curve.mul_scalar(y, ss))
        }))
}

/// Maps a payload to a curve point `r*G + s*H` with `(r, s)` taken from
/// SHA-256 of the payload. Returns the coefficients too.
pub fn point_secret(basis: &TorsionBasis, payload: &[u8]) -> (Scalar, Scalar, Point) {
    let digest = Sha256::digest(payload);
    let ring = basis.ring();
    let r = ring.elem(u64::from_be_bytes(digest[0..8].try_into().unwrap()));
    let s = ring.elem(u64::from_be_bytes(digest[8..16].try_into().unwrap()));
    (r, s, basis.combine(r, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::CurveSpec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p47_state() -> LiuDealerState {
        let setup = CurveSpec::paper47().build().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let basis = crate::curve::sample_generating_pair(
            &setup.curve,
            setup.ring,
            &setup.exponent,
            &mut rng,
        )
        .unwrap();
        let z = setup.ring;
        let ctx = SelfPairingCtx::new(basis, z.elem(51), z.elem(35)).unwrap();
        LiuDealerState::new(ctx, vec![z.elem(11), z.elem(25)], vec![z.elem(15), z.elem(33)])
            .unwrap()
    }

    #[test]
    fn distribute_matches_worked_example() {
        let state = p47_state();
        let shares = liu_distribute(&state, 2, 3).unwrap();
        let got: Vec<(u64, u64)> = shares.iter().map(|s| (s.a.value(), s.b.value())).collect();
        assert_eq!(got, vec![(36, 48), (61, 81), (86, 11)]);
        assert!(matches!(liu_distribute(&state, 2, 1), Err(Error::BadDims(_))));
    }

    #[test]
    fn single_custodian() {
        let state = p47_state();
        let z = state.ring();
        let solo =
            LiuDealerState::new(state.ctx().clone(), vec![z.elem(9)], vec![z.elem(4)]).unwrap();
        let shares = liu_distribute(&solo, 1, 1).unwrap();
        assert_eq!((shares[0].a, shares[0].b), (z.elem(9), z.elem(4)));
    }

    #[test]
    fn publish_and_pseudo_scalars() {
        let state = p47_state();
        let z = state.ring();
        assert_eq!(liu_mask_scalar(&state, 1, z.elem(15), z.elem(11)).value(), 1);
        assert_eq!(liu_mask_scalar(&state, 2, z.elem(23), z.elem(39)).value(), 93);
        let shares = liu_distribute(&state, 2, 3).unwrap();
        let e1 = LiuSecretEntry {
            c: z.elem(15),
            d: z.elem(11),
            r: Point::Infinity,
        };
        let e2 = LiuSecretEntry {
            c: z.elem(23),
            d: z.elem(39),
            r: Point::Infinity,
        };
        assert_eq!(liu_pseudo_scalar(&e1, &shares[0]).value(), 15);
        assert_eq!(liu_pseudo_scalar(&e2, &shares[0]).value(), 9);
        assert_eq!(liu_pseudo_scalar(&e2, &shares[1]).value(), 102);
        let m = point_secret(state.ctx().basis(), b"x").2;
        assert!(matches!(
            liu_publish(&state, &[m.clone(), m.clone(), m], &[(z.one(), z.one()); 3]),
            Err(Error::TooManySecrets(_))
        ));
    }

    #[test]
    fn reconstruct_rejects_repeated_users() {
        let state = p47_state();
        let z = state.ring();
        let shares = liu_distribute(&state, 2, 3).unwrap();
        let (_, _, m1) = point_secret(state.ctx().basis(), b"one");
        let entry = liu_publish(&state, &[m1], &[(z.elem(15), z.elem(11))]).unwrap();
        let ss = liu_pseudo_share(&entry[0], &shares[0], state.ctx());
        assert!(matches!(
            liu_reconstruct(1, 2, &[(1, ss.clone()), (1, ss.clone())], &entry[0], state.ctx()),
            Err(Error::Singular)
        ));
        assert!(matches!(
            liu_reconstruct(1, 2, &[(1, ss)], &entry[0], state.ctx()),
            Err(Error::WrongShareCount { .. })
        ));
    }

    #[test]
    fn row_identity_for_all_subsets() {
        let state = p47_state();
        let shares = liu_distribute(&state, 2, 3).unwrap();
        for js in [[1u32, 2], [1, 3], [2, 3]] {
            for i in 1..=2 {
                let row = reconstruction_row(i, &js, state.ring()).unwrap();
                let (mut a, mut b) = (state.ring().zero(), state.ring().zero());
                for (y, &j) in row.iter().zip(&js) {
                    let sh = &shares[j as usize - 1];
                    a = a + *y * sh.a;
                    b = b + *y * sh.b;
                }
                assert_eq!((a, b), (state.aprime()[i - 1], state.bprime()[i - 1]));
            }
        }
        let row = reconstruction_row(1, &[1, 2], state.ring()).unwrap();
        assert_eq!(row.iter().map(Scalar::value).collect::<Vec<_>>(), vec![2, 102]);
    }
}
