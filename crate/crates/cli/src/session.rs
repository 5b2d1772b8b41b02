//! In-process dealer/participant simulation.
//!
//! Parties are plain state machines passing values: the dealer deals, each
//! participant receives and checks its share, cheaters tamper with what they
//! submit, and a combiner runs cheater identification and reconstruction.
//! Everything draws from one seeded RNG, so a config always produces the
//! same report.

use std::fmt;
use std::str::FromStr;

use mvss_core::liu::{
    liu_distribute, liu_publish, liu_reconstruct, point_secret, LiuDealerState, LiuShare,
};
use mvss_core::mvss::{deal, reconstruct_report, verify_share, SecretVector, Submission, SystemParams};
use mvss_core::presets::CurveSpec;
use mvss_core::{Error, ExtFieldElement, Result, Scalar, ShamirShare};
use num_bigint::BigUint;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{join_or_none, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    Proposed,
    Liu,
}

impl FromStr for Scheme {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "proposed" | "mvss" => Ok(Scheme::Proposed),
            "liu" => Ok(Scheme::Liu),
            _ => Err(format!("unknown scheme {s:?} (proposed, liu)")),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Proposed => "proposed",
            Scheme::Liu => "liu",
        })
    }
}

/// How a cheating participant alters its share before submitting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheatMode {
    FlipS,
    FlipX,
    Random,
}

impl FromStr for CheatMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "flip-s" => Ok(CheatMode::FlipS),
            "flip-x" => Ok(CheatMode::FlipX),
            "random" => Ok(CheatMode::Random),
            _ => Err(format!("unknown corruption mode {s:?} (flip-s, flip-x, random)")),
        }
    }
}

impl fmt::Display for CheatMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheatMode::FlipS => "flip-s",
            CheatMode::FlipX => "flip-x",
            CheatMode::Random => "random",
        })
    }
}

/// Parses `<idx>:<mode>`.
pub fn parse_cheat(s: &str) -> std::result::Result<(u32, CheatMode), String> {
    let (idx, mode) = s
        .split_once(':')
        .ok_or_else(|| format!("cheat {s:?} is not <idx>:<mode>"))?;
    let idx: u32 = idx.parse().map_err(|_| format!("bad participant index {idx:?}"))?;
    Ok((idx, mode.parse()?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SecretInput {
    Integer(BigUint),
    Hex(String),
}

impl FromStr for SecretInput {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if let Some(hex) = s.strip_prefix("hex:") {
            return Ok(SecretInput::Hex(hex.to_string()));
        }
        BigUint::parse_bytes(s.as_bytes(), 10)
            .map(SecretInput::Integer)
            .ok_or_else(|| format!("secret {s:?} is neither a decimal integer nor hex:<element>"))
    }
}

impl SecretInput {
    pub fn to_element(&self, params: &SystemParams) -> Result<ExtFieldElement> {
        let field = params.field();
        match self {
            SecretInput::Integer(v) => field.encode_secret(v),
            SecretInput::Hex(h) => field.element_from_hex(h),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SessionConfig {
    pub scheme: Scheme,
    pub preset_name: String,
    pub curve: CurveSpec,
    pub t: usize,
    pub n: usize,
    pub m: usize,
    /// Explicit secrets; when empty, `m` random secrets are drawn.
    pub secrets: Vec<SecretInput>,
    pub cheaters: Vec<(u32, CheatMode)>,
    pub seed: u64,
}

impl SessionConfig {
    pub fn validate(&self) -> Result<()> {
        for (idx, _) in &self.cheaters {
            if *idx == 0 || *idx as usize > self.n {
                return Err(Error::BadThreshold(format!(
                    "cheater index {idx} outside 1..={}",
                    self.n
                )));
            }
        }
        if !self.secrets.is_empty() && self.secrets.len() != self.m {
            return Err(Error::OutOfRange(format!(
                "{} secrets given but m = {}",
                self.secrets.len(),
                self.m
            )));
        }
        Ok(())
    }

    fn cheat_of(&self, idx: u32) -> Option<CheatMode> {
        self.cheaters
            .iter()
            .rev()
            .find(|(i, _)| *i == idx)
            .map(|(_, mode)| *mode)
    }
}

struct Participant {
    index: u32,
    share: Option<ShamirShare>,
    cheat: Option<CheatMode>,
}

impl Participant {
    fn receive(&mut self, share: ShamirShare) {
        self.share = Some(share);
    }

    /// What this participant sends to the combiner.
    fn submit<R: RngCore + ?Sized>(&self, rng: &mut R) -> Submission {
        let share = self.share.expect("share delivered before reconstruction");
        let one = share.x.ring().one();
        let sent = match self.cheat {
            None => share,
            Some(CheatMode::FlipS) => ShamirShare::new(share.x, share.s + one),
            Some(CheatMode::FlipX) => ShamirShare::new(bump_nonzero(share.x), share.s),
            Some(CheatMode::Random) => loop {
                let s = share.x.ring().random(rng);
                if s != share.s {
                    break ShamirShare::new(share.x, s);
                }
            },
        };
        Submission::new(self.index, sent)
    }
}

fn bump_nonzero(x: Scalar) -> Scalar {
    let one = x.ring().one();
    let y = x + one;
    if y.is_zero() {
        y + one
    } else {
        y
    }
}

pub fn simulate(config: &SessionConfig) -> Result<Report> {
    config.validate()?;
    match config.scheme {
        Scheme::Proposed => simulate_proposed(config),
        Scheme::Liu => simulate_liu(config),
    }
}

fn header(config: &SessionConfig) -> Report {
    let mut report = Report::new();
    report
        .put("scheme", config.scheme)
        .put("preset", &config.preset_name)
        .put("t", config.t)
        .put("n", config.n)
        .put("m", config.m)
        .put("seed", config.seed)
        .put(
            "injected",
            join_or_none(config.cheaters.iter().map(|(i, m)| format!("{i}:{m}"))),
        );
    report
}

fn simulate_proposed(config: &SessionConfig) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let setup = config.curve.build()?;
    let params = SystemParams::generate(&setup, &mut rng)?;
    let secrets = if config.secrets.is_empty() {
        SecretVector(
            (0..config.m)
                .map(|_| params.field().random(&mut rng))
                .collect(),
        )
    } else {
        SecretVector(
            config
                .secrets
                .iter()
                .map(|s| s.to_element(&params))
                .collect::<Result<_>>()?,
        )
    };
    let dealt = deal(&params, config.t, config.n, &secrets, &mut rng)?;
    let bulletin = &dealt.bulletin;

    let mut parties: Vec<Participant> = (1..=config.n as u32)
        .map(|index| Participant {
            index,
            share: None,
            cheat: config.cheat_of(index),
        })
        .collect();
    for (party, share) in parties.iter_mut().zip(&dealt.shares) {
        party.receive(*share);
    }
    let complaints: Vec<u32> = parties
        .iter()
        .filter(|p| !verify_share(&p.share.unwrap(), bulletin).unwrap_or(false))
        .map(|p| p.index)
        .collect();

    let submissions: Vec<Submission> = parties.iter().map(|p| p.submit(&mut rng)).collect();

    let mut report = header(config);
    report
        .put("deal", bulletin.deal_id)
        .put("param-count", bulletin.param_count())
        .put("dealer-complaints", join_or_none(&complaints));

    let field = params.field();
    match reconstruct_report(&submissions, bulletin) {
        Ok(rec) => {
            let matches = rec.secrets == secrets;
            report
                .put("cheaters", join_or_none(&rec.cheaters))
                .put("used", join_or_none(&rec.used))
                .put("status", "ok")
                .put("recovered", if matches { "all" } else { "mismatch" });
            for (i, k) in rec.secrets.0.iter().enumerate() {
                report.put(format!("secret.{}", i + 1), field.decode_secret(k));
            }
        }
        Err(Error::CheaterDetected(cheaters)) => {
            report
                .put("cheaters", join_or_none(&cheaters))
                .put("used", "none")
                .put("status", "insufficient-honest-shares")
                .put("recovered", "none");
        }
        Err(Error::InconsistentShares) => {
            report
                .put("cheaters", "none")
                .put("used", "none")
                .put("status", "inconsistent-shares")
                .put("recovered", "none");
        }
        Err(e) => return Err(e),
    }
    Ok(report)
}

fn corrupt_liu<R: RngCore + ?Sized>(share: LiuShare, mode: CheatMode, rng: &mut R) -> LiuShare {
    let one = share.a.ring().one();
    match mode {
        CheatMode::FlipS => LiuShare {
            b: share.b + one,
            ..share
        },
        CheatMode::FlipX => LiuShare {
            a: share.a + one,
            ..share
        },
        CheatMode::Random => LiuShare {
            a: share.a.ring().random(rng),
            b: share.b + one,
            ..share
        },
    }
}

/// Liu's scheme has no verification: cheaters cannot be named, and a
/// tampered share silently yields wrong points.
fn simulate_liu(config: &SessionConfig) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let setup = config.curve.build()?;
    let params = SystemParams::generate(&setup, &mut rng)?;
    let ctx = params.ctx();
    let ring = params.ring();
    if config.n as u64 >= ring.modulus() || config.t == 0 || config.t > config.n {
        return Err(Error::BadThreshold(format!(
            "need 1 <= t <= n < l, got t={} n={}",
            config.t, config.n
        )));
    }
    let dealer = LiuDealerState::random(ctx.clone(), config.t, &mut rng)?;
    let shares = liu_distribute(&dealer, config.t, config.n)?;
    let payloads: Vec<Vec<u8>> = if config.secrets.is_empty() {
        (0..config.m)
            .map(|_| rng.next_u64().to_be_bytes().to_vec())
            .collect()
    } else {
        config
            .secrets
            .iter()
            .map(|s| format!("{s:?}").into_bytes())
            .collect()
    };
    let points: Vec<_> = payloads
        .iter()
        .map(|p| point_secret(params.basis(), p).2)
        .collect();
    let cd: Vec<(Scalar, Scalar)> = (0..points.len())
        .map(|_| (ring.random_nonzero(&mut rng), ring.random_nonzero(&mut rng)))
        .collect();
    let entries = liu_publish(&dealer, &points, &cd)?;

    let submitted: Vec<LiuShare> = shares
        .iter()
        .take(config.t)
        .map(|sh| match config.cheat_of(sh.j) {
            Some(mode) => corrupt_liu(*sh, mode, &mut rng),
            None => *sh,
        })
        .collect();
    let mut recovered = 0;
    for (i, entry) in entries.iter().enumerate() {
        let pseudo: Vec<_> = submitted
            .iter()
            .map(|sh| (sh.j, mvss_core::liu::liu_pseudo_share(entry, sh, ctx)))
            .collect();
        if liu_reconstruct(i + 1, config.t, &pseudo, entry, ctx)? == points[i] {
            recovered += 1;
        }
    }
    let mut report = header(config);
    report
        .put("cheaters", "unverifiable")
        .put("used", join_or_none(submitted.iter().map(|s| s.j)))
        .put("status", "ok")
        .put(
            "recovered",
            match recovered {
                r if r == points.len() => "all".to_string(),
                0 => "none".to_string(),
                r => format!("{r}/{}", points.len()),
            },
        );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(cheaters: Vec<(u32, CheatMode)>) -> SessionConfig {
        SessionConfig {
            scheme: Scheme::Proposed,
            preset_name: "paper47".into(),
            curve: CurveSpec::paper47(),
            t: 2,
            n: 3,
            m: 5,
            secrets: Vec::new(),
            cheaters,
            seed: 1,
        }
    }

    #[test]
    fn honest_session_recovers_everything() {
        let r = simulate(&config(vec![])).unwrap();
        assert_eq!(r.get("cheaters"), Some("none"));
        assert_eq!(r.get("recovered"), Some("all"));
        assert_eq!(r.get("dealer-complaints"), Some("none"));
        assert!(r.get("secret.5").is_some());
    }

    #[test]
    fn one_cheater_is_named_and_bypassed() {
        let r = simulate(&config(vec![(2, CheatMode::FlipS)])).unwrap();
        assert_eq!(r.get("cheaters"), Some("2"));
        assert_eq!(r.get("used"), Some("1,3"));
        assert_eq!(r.get("recovered"), Some("all"));
    }

    #[test]
    fn two_cheaters_of_three_block_recovery() {
        let r = simulate(&config(vec![(1, CheatMode::FlipX), (2, CheatMode::Random)])).unwrap();
        assert_eq!(r.get("status"), Some("insufficient-honest-shares"));
        assert_eq!(r.get("cheaters"), Some("1,2"));
        assert_eq!(r.get("recovered"), Some("none"));
    }

    #[test]
    fn deterministic_for_a_seed() {
        let a = simulate(&config(vec![(3, CheatMode::Random)])).unwrap();
        let b = simulate(&config(vec![(3, CheatMode::Random)])).unwrap();
        assert_eq!(a.to_string(), b.to_string());
    }

    #[test]
    fn config_validation() {
        assert!(simulate(&config(vec![(4, CheatMode::FlipS)])).is_err());
        assert_eq!(parse_cheat("2:flip-s"), Ok((2, CheatMode::FlipS)));
        assert!(parse_cheat("2-flip").is_err());
        assert!(parse_cheat("2:flip-y").is_err());
    }

    #[test]
    fn liu_session() {
        let mut c = config(vec![]);
        c.scheme = Scheme::Liu;
        c.m = 2;
        let r = simulate(&c).unwrap();
        assert_eq!(r.get("recovered"), Some("all"));
        c.cheaters = vec![(1, CheatMode::FlipS)];
        let r = simulate(&c).unwrap();
        assert_eq!(r.get("cheaters"), Some("unverifiable"));
        assert_ne!(r.get("recovered"), Some("all"));
        c.m = 3;
        assert!(matches!(simulate(&c), Err(Error::TooManySecrets(_))));
    }
}
