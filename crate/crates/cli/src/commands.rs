//! Subcommands and the exit-code contract.
//!
//! Exit codes: 0 success, 1 protocol failure (a `reason = ...` line is
//! printed on stdout), 2 usage or file errors.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use mvss_core::bulletin::{
    bulletin_path, dealer_path, deserialize_dealer, deserialize_setup, serialize_dealer,
    serialize_setup, share_index_from_path, share_path, write_atomic, ShareFile,
};
use mvss_core::mvss::{
    add_secret, deal, reconstruct_report, verify_share, Bulletin, SecretVector, Submission,
    SystemParams,
};
use mvss_core::presets::CurveSpec;
use mvss_core::{Error, Result};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::demo::liu_demo;
use crate::report::{join_or_none, Report};
use crate::session::{parse_cheat, simulate, CheatMode, Scheme, SecretInput, SessionConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROTOCOL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "mvss", version, about = "Verifiable multi-secret sharing on a self-pairing")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sample a basis and W, write `system.setup`.
    Setup {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Deal secrets: writes the bulletin, one share file per participant,
    /// and the private dealer file.
    Deal {
        /// Setup file; without it parameters are sampled from the preset.
        #[arg(long)]
        setup: Option<PathBuf>,
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        n: usize,
        /// Comma separated; decimal integers or `hex:<element>`.
        #[arg(long, value_delimiter = ',', required = true)]
        secrets: Vec<SecretInput>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Check share files against the bulletin.
    Verify {
        #[arg(long)]
        bulletin: PathBuf,
        #[arg(required = true)]
        shares: Vec<PathBuf>,
    },
    /// Identify cheaters and recover every secret.
    Reconstruct {
        #[arg(long)]
        bulletin: PathBuf,
        shares: Vec<PathBuf>,
    },
    /// Append secrets to an existing deal without touching the shares.
    AddSecret {
        #[arg(long)]
        bulletin: PathBuf,
        #[arg(long)]
        dealer: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        secrets: Vec<SecretInput>,
    },
    /// Run a whole session in memory and print a report.
    Simulate {
        #[arg(long, default_value = "proposed")]
        scheme: Scheme,
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Number of random secrets when `--secrets` is absent.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        secrets: Vec<SecretInput>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// `<idx>:<mode>` with mode one of flip-s, flip-x, random.
        #[arg(long, value_parser = parse_cheat)]
        cheat: Vec<(u32, CheatMode)>,
    },
    /// Replay the two-secret Liu example with its fixed scalars.
    LiuDemo {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rough timings of the main operations.
    Bench {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value_t = 10)]
        iterations: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug, Clone)]
pub struct CurveArgs {
    /// paper47, toy11 or custom.
    #[arg(long, default_value = "paper47")]
    pub preset: String,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long = "curve-a")]
    pub curve_a: Option<u64>,
    #[arg(long = "curve-b")]
    pub curve_b: Option<u64>,
    #[arg(long)]
    pub l: Option<u64>,
    /// Group exponent N; derived from the point count if omitted.
    #[arg(long)]
    pub exponent: Option<BigUint>,
}

impl CurveArgs {
    fn spec(&self) -> std::result::Result<CurveSpec, String> {
        let custom = [self.p.is_some(), self.r.is_some(), self.curve_a.is_some()]
            .into_iter()
            .chain([self.curve_b.is_some(), self.l.is_some(), self.exponent.is_some()])
            .any(|b| b);
        if self.preset != "custom" {
            if custom {
                return Err("curve flags need --preset custom".into());
            }
            return CurveSpec::by_name(&self.preset)
                .ok_or_else(|| format!("unknown preset {:?} (paper47, toy11, custom)", self.preset));
        }
        let need = |v: Option<u64>, flag: &str| v.ok_or(format!("--preset custom needs --{flag}"));
        Ok(CurveSpec {
            p: need(self.p, "p")?,
            r: self.r.ok_or("--preset custom needs --r")?,
            a: need(self.curve_a, "curve-a")?,
            b: need(self.curve_b, "curve-b")?,
            l: need(self.l, "l")?,
            k: 1,
            exponent: self.exponent.clone(),
        })
    }
}

/// What a command produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout: stdout.into(),
            stderr: String::new(),
        }
    }

    fn protocol(report: &Report) -> Self {
        Outcome {
            code: EXIT_PROTOCOL,
            stdout: report.to_string(),
            stderr: String::new(),
        }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {}\n", msg.into()),
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    execute(cli.command)
}

pub fn execute(command: Command) -> Outcome {
    let result = match command {
        Command::Setup { curve, seed, out } => cmd_setup(&curve, seed, &out),
        Command::Deal {
            setup,
            curve,
            t,
            n,
            secrets,
            seed,
            out,
        } => cmd_deal(setup.as_deref(), &curve, t, n, &secrets, seed, &out),
        Command::Verify { bulletin, shares } => cmd_verify(&bulletin, &shares),
        Command::Reconstruct { bulletin, shares } => cmd_reconstruct(&bulletin, &shares),
        Command::AddSecret {
            bulletin,
            dealer,
            secrets,
        } => cmd_add_secret(&bulletin, &dealer, &secrets),
        Command::Simulate {
            scheme,
            curve,
            t,
            n,
            m,
            secrets,
            seed,
            cheat,
        } => cmd_simulate(scheme, &curve, t, n, m, secrets, seed, cheat),
        Command::LiuDemo { seed } => cmd_liu_demo(seed),
        Command::Bench {
            curve,
            iterations,
            seed,
        } => cmd_bench(&curve, iterations, seed),
    };
    result.unwrap_or_else(|e| e)
}

type CmdResult = std::result::Result<Outcome, Outcome>;

fn core_err(context: &str) -> impl Fn(Error) -> Outcome + '_ {
    move |e| Outcome::usage(format!("{context}: {e}"))
}

fn read_file(path: &Path) -> std::result::Result<Vec<u8>, Outcome> {
    fs::read(path).map_err(|e| Outcome::usage(format!("{}: {e}", path.display())))
}

fn load_bulletin(path: &Path) -> std::result::Result<Bulletin, Outcome> {
    Bulletin::deserialize(&read_file(path)?).map_err(core_err(&path.display().to_string()))
}

fn write(path: &Path, contents: &str) -> std::result::Result<(), Outcome> {
    write_atomic(path, contents).map_err(core_err(&path.display().to_string()))
}

fn secret_vector(params: &SystemParams, inputs: &[SecretInput]) -> Result<SecretVector> {
    inputs
        .iter()
        .map(|s| s.to_element(params))
        .collect::<Result<_>>()
        .map(SecretVector)
}

fn sample_params(curve: &CurveArgs, seed: u64) -> std::result::Result<SystemParams, Outcome> {
    let spec = curve.spec().map_err(Outcome::usage)?;
    let setup = spec.build().map_err(core_err("curve"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    SystemParams::generate(&setup, &mut rng).map_err(core_err("setup"))
}

fn cmd_setup(curve: &CurveArgs, seed: u64, out: &Path) -> CmdResult {
    let params = sample_params(curve, seed)?;
    let path = out.join("system.setup");
    write(&path, &serialize_setup(&params).map_err(core_err("setup"))?)?;
    let mut report = Report::new();
    report
        .put("setup", path.display())
        .put("l", params.ring().modulus())
        .put("w", params.w().to_text());
    Ok(Outcome::ok(report.to_string()))
}

fn cmd_deal(
    setup: Option<&Path>,
    curve: &CurveArgs,
    t: usize,
    n: usize,
    secrets: &[SecretInput],
    seed: u64,
    out: &Path,
) -> CmdResult {
    let params = match setup {
        Some(path) => deserialize_setup(&read_file(path)?)
            .map_err(core_err(&path.display().to_string()))?,
        None => sample_params(curve, seed)?,
    };
    let secrets = secret_vector(&params, secrets).map_err(core_err("secrets"))?;
    // Distinct stream from the one used for setup.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    let dealt = deal(&params, t, n, &secrets, &mut rng).map_err(core_err("deal"))?;
    let id = dealt.bulletin.deal_id;
    fs::create_dir_all(out).map_err(|e| Outcome::usage(format!("{}: {e}", out.display())))?;

    let mut report = Report::new();
    report.put("deal", id);
    let bpath = bulletin_path(out, id);
    write(&bpath, &dealt.bulletin.serialize())?;
    report.put("bulletin", bpath.display());
    for (i, share) in dealt.shares.iter().enumerate() {
        let idx = i as u32 + 1;
        let path = share_path(out, id, idx);
        write(&path, &ShareFile::single(id, *share).serialize())?;
        report.put(format!("share.{idx}"), path.display());
    }
    let dpath = dealer_path(out, id);
    write(&dpath, &serialize_dealer(&dealt.dealer))?;
    report
        .put("dealer", dpath.display())
        .put("param-count", dealt.bulletin.param_count());
    Ok(Outcome::ok(report.to_string()))
}

/// Loads share files as submissions. A single-record file takes its
/// participant index from the `<deal>.share.<index>` name; otherwise the
/// index is looked up from the share's abscissa.
fn load_submissions(
    bulletin: &Bulletin,
    paths: &[PathBuf],
) -> std::result::Result<Vec<Submission>, Outcome> {
    let mut out = Vec::new();
    for path in paths {
        let file = ShareFile::deserialize(&read_file(path)?)
            .map_err(core_err(&path.display().to_string()))?;
        if file.deal_id != bulletin.deal_id {
            return Err(Outcome::usage(format!(
                "{}: belongs to deal {}, bulletin is {}",
                path.display(),
                file.deal_id,
                bulletin.deal_id
            )));
        }
        if file.records[0].x.modulus() != bulletin.params.ring().modulus() {
            return Err(Outcome::usage(format!("{}: wrong l", path.display())));
        }
        let from_name = share_index_from_path(path).filter(|_| file.records.len() == 1);
        for share in &file.records {
            let participant = from_name
                .or_else(|| bulletin.participant_of(share.x))
                .ok_or_else(|| {
                    Outcome::usage(format!(
                        "{}: cannot tell which participant holds x={}",
                        path.display(),
                        share.x
                    ))
                })?;
            out.push(Submission::new(participant, *share));
        }
    }
    Ok(out)
}

fn cmd_verify(bulletin_file: &Path, shares: &[PathBuf]) -> CmdResult {
    let bulletin = load_bulletin(bulletin_file)?;
    let subs = load_submissions(&bulletin, shares)?;
    let mut report = Report::new();
    report.put("deal", bulletin.deal_id);
    let mut bad = Vec::new();
    for sub in &subs {
        let owner_ok = bulletin.participant_of(sub.share.x) == Some(sub.participant);
        let ok = owner_ok && verify_share(&sub.share, &bulletin).unwrap_or(false);
        report.put(
            format!("share.{}", sub.participant),
            if ok { "ok" } else { "mismatch" },
        );
        if !ok {
            bad.push(sub.participant);
        }
    }
    if bad.is_empty() {
        report.put("status", "ok");
        Ok(Outcome::ok(report.to_string()))
    } else {
        report.put("status", "failed").put(
            "reason",
            format!("share-mismatch participant={}", join_or_none(&bad)),
        );
        Err(Outcome::protocol(&report))
    }
}

fn cmd_reconstruct(bulletin_file: &Path, shares: &[PathBuf]) -> CmdResult {
    let bulletin = load_bulletin(bulletin_file)?;
    let subs = load_submissions(&bulletin, shares)?;
    let mut report = Report::new();
    report.put("deal", bulletin.deal_id);
    match reconstruct_report(&subs, &bulletin) {
        Ok(rec) => {
            report
                .put("cheaters", join_or_none(&rec.cheaters))
                .put("used", join_or_none(&rec.used))
                .put("status", "ok");
            let field = bulletin.params.field();
            for (i, k) in rec.secrets.0.iter().enumerate() {
                report.put(format!("secret.{}", i + 1), field.decode_secret(k));
            }
            Ok(Outcome::ok(report.to_string()))
        }
        Err(Error::NotEnoughShares { needed, got }) => {
            report
                .put("status", "failed")
                .put("reason", "not-enough-shares")
                .put("needed", needed)
                .put("got", got);
            Err(Outcome {
                code: EXIT_USAGE,
                stdout: report.to_string(),
                stderr: format!("error: need {needed} shares, got {got}\n"),
            })
        }
        Err(Error::CheaterDetected(cheaters)) => {
            report
                .put("cheaters", join_or_none(&cheaters))
                .put("status", "failed")
                .put("reason", "insufficient-honest-shares");
            Err(Outcome::protocol(&report))
        }
        Err(Error::InconsistentShares) => {
            report
                .put("status", "failed")
                .put("reason", "inconsistent-shares");
            Err(Outcome::protocol(&report))
        }
        Err(e) => Err(Outcome::usage(format!("reconstruct: {e}"))),
    }
}

fn cmd_add_secret(bulletin_file: &Path, dealer_file: &Path, secrets: &[SecretInput]) -> CmdResult {
    let mut bulletin = load_bulletin(bulletin_file)?;
    let mut dealer = deserialize_dealer(&read_file(dealer_file)?, &bulletin)
        .map_err(core_err(&dealer_file.display().to_string()))?;
    let secrets = secret_vector(&bulletin.params, secrets).map_err(core_err("secrets"))?;
    for k in &secrets.0 {
        bulletin = match add_secret(&mut dealer, &bulletin, k) {
            Ok(b) => b,
            Err(Error::StateMismatch) => {
                let mut report = Report::new();
                report
                    .put("status", "failed")
                    .put("reason", "dealer-state-mismatch");
                return Err(Outcome::protocol(&report));
            }
            Err(e) => return Err(Outcome::usage(format!("add-secret: {e}"))),
        };
    }
    write(bulletin_file, &bulletin.serialize())?;
    write(dealer_file, &serialize_dealer(&dealer))?;
    let mut report = Report::new();
    report
        .put("deal", bulletin.deal_id)
        .put("m", bulletin.m())
        .put("param-count", bulletin.param_count());
    Ok(Outcome::ok(report.to_string()))
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    scheme: Scheme,
    curve: &CurveArgs,
    t: usize,
    n: usize,
    m: Option<usize>,
    secrets: Vec<SecretInput>,
    seed: u64,
    cheaters: Vec<(u32, CheatMode)>,
) -> CmdResult {
    let spec = curve.spec().map_err(Outcome::usage)?;
    let m = m.unwrap_or(if secrets.is_empty() { 1 } else { secrets.len() });
    let config = SessionConfig {
        scheme,
        preset_name: curve.preset.clone(),
        curve: spec,
        t,
        n,
        m,
        secrets,
        cheaters,
        seed,
    };
    let report = simulate(&config).map_err(core_err("simulate"))?;
    match report.get("status") {
        Some("ok") => Ok(Outcome::ok(report.to_string())),
        _ => Err(Outcome::protocol(&report)),
    }
}

fn cmd_liu_demo(seed: u64) -> CmdResult {
    let tr = liu_demo(seed).map_err(core_err("liu-demo"))?;
    if tr.ok() {
        Ok(Outcome::ok(tr.text()))
    } else {
        Err(Outcome {
            code: EXIT_PROTOCOL,
            stdout: tr.text(),
            stderr: format!("error: {} check(s) failed\n", tr.failures),
        })
    }
}

fn cmd_bench(curve: &CurveArgs, iterations: u32, seed: u64) -> CmdResult {
    let iterations = iterations.max(1);
    let params = sample_params(curve, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = params.field().clone();
    let time = |f: &mut dyn FnMut() -> Result<()>| -> std::result::Result<f64, Outcome> {
        let start = Instant::now();
        for _ in 0..iterations {
            f().map_err(core_err("bench"))?;
        }
        Ok(start.elapsed().as_secs_f64() * 1e6 / iterations as f64)
    };
    let basis = params.basis().clone();
    let ring = params.ring();
    let p0 = basis.combine(ring.elem(3), ring.elem(5));
    let pairing_us = time(&mut || params.mask_base(&p0).map(|_| ()))?;
    let n = 5.min(ring.modulus() as usize - 1);
    let t = 3.min(n);
    let m = 5.min(ring.modulus() as usize - 1);
    let secrets = SecretVector((0..m).map(|_| field.random(&mut rng)).collect());
    let mut last = None;
    let deal_us = time(&mut || {
        last = Some(deal(&params, t, n, &secrets, &mut rng)?);
        Ok(())
    })?;
    let dealt = last.expect("at least one iteration");
    let subs: Vec<Submission> = dealt
        .shares
        .iter()
        .enumerate()
        .map(|(i, s)| Submission::new(i as u32 + 1, *s))
        .collect();
    let rec_us = time(&mut || reconstruct_report(&subs, &dealt.bulletin).map(|_| ()))?;
    let mut report = Report::new();
    report
        .put("preset", &curve.preset)
        .put("iterations", iterations)
        .put("mask-base.us", format!("{pairing_us:.1}"))
        .put(format!("deal.t{t}n{n}m{m}.us"), format!("{deal_us:.1}"))
        .put(format!("reconstruct.t{t}n{n}m{m}.us"), format!("{rec_us:.1}"));
    Ok(Outcome::ok(report.to_string()))
}
