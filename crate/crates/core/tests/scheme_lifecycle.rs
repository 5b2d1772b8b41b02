use mvss_core::mvss::{
    add_secret, deal, identify_cheaters, reconstruct, reconstruct_report, verify_share,
    SecretVector, Submission, SystemParams,
};
use mvss_core::presets::CurveSpec;
use mvss_core::{Error, ShamirShare};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn p47() -> SystemParams {
    let setup = CurveSpec::paper47().build().unwrap();
    SystemParams::generate(&setup, &mut ChaCha8Rng::seed_from_u64(31)).unwrap()
}

fn subs(shares: &[ShamirShare]) -> Vec<Submission> {
    shares
        .iter()
        .enumerate()
        .map(|(i, s)| Submission::new(i as u32 + 1, *s))
        .collect()
}

#[test]
fn integers_survive_deal_and_reconstruct() {
    let p = p47();
    let f = p.field();
    let vals = [0u64, 1, 42, 10_779_215_328];
    let secrets = SecretVector(
        vals.iter()
            .map(|&v| f.encode_secret(&BigUint::from(v)).unwrap())
            .collect(),
    );
    let dealt = deal(&p, 3, 5, &secrets, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
    for share in &dealt.shares {
        assert!(verify_share(share, &dealt.bulletin).unwrap());
    }
    let all = subs(&dealt.shares);
    let got = reconstruct(&all[2..], &dealt.bulletin).unwrap();
    let decoded: Vec<BigUint> = got.0.iter().map(|k| f.decode_secret(k)).collect();
    assert_eq!(decoded, vals.map(BigUint::from).to_vec());
    assert!(f.encode_secret(&BigUint::from(10_779_215_329u64)).is_err());
}

#[test]
fn public_params_are_enough_to_reconstruct() {
    let p = p47();
    let secrets = SecretVector(vec![p.field().from_base(3)]);
    let mut dealt = deal(&p, 2, 3, &secrets, &mut ChaCha8Rng::seed_from_u64(2)).unwrap();
    dealt.bulletin.params = p.public();
    assert_eq!(dealt.bulletin.params.ctx().alpha_beta(), None);
    let got = reconstruct(&subs(&dealt.shares), &dealt.bulletin).unwrap();
    assert_eq!(got, secrets);
}

#[test]
fn cheaters_and_failures() {
    let p = p47();
    let secrets = SecretVector(vec![p.field().from_base(3), p.field().from_base(4)]);
    let dealt = deal(&p, 2, 4, &secrets, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
    let one = p.ring().one();
    let mut all = subs(&dealt.shares);
    all[0].share.s = all[0].share.s + one;
    all[3].share.x = all[1].share.x;
    let named = identify_cheaters(&all, &dealt.bulletin);
    assert_eq!(named.into_iter().collect::<Vec<_>>(), vec![1, 4]);
    let rec = reconstruct_report(&all, &dealt.bulletin).unwrap();
    assert_eq!(rec.used, vec![2, 3]);
    assert_eq!(rec.secrets, secrets);

    assert!(matches!(
        reconstruct(&all[..1], &dealt.bulletin),
        Err(Error::NotEnoughShares { needed: 2, got: 1 })
    ));
    assert!(matches!(
        reconstruct(&[all[0], all[1]], &dealt.bulletin),
        Err(Error::CheaterDetected(c)) if c == vec![1]
    ));

    let mut forged = dealt.bulletin.clone();
    forged.v0 = p.curve().add(&forged.v0, p.w()).unwrap();
    assert!(matches!(
        reconstruct(&subs(&dealt.shares), &forged),
        Err(Error::InconsistentShares)
    ));
}

#[test]
fn added_secrets_are_recovered_with_old_shares() {
    let p = p47();
    let f = p.field();
    let secrets = SecretVector(vec![f.from_base(1)]);
    let mut dealt = deal(&p, 2, 3, &secrets, &mut ChaCha8Rng::seed_from_u64(4)).unwrap();
    let mut bulletin = dealt.bulletin.clone();
    let mut want = secrets.0.clone();
    for v in 2..=6u64 {
        let k = f.from_base(v * 7);
        bulletin = add_secret(&mut dealt.dealer, &bulletin, &k).unwrap();
        want.push(k);
        assert_eq!(bulletin.param_count(), 7 + 3 + want.len());
    }
    let got = reconstruct(&subs(&dealt.shares)[1..], &bulletin).unwrap();
    assert_eq!(got.0, want);
    let stale = dealt.bulletin.clone();
    assert!(matches!(
        add_secret(&mut dealt.dealer, &stale, &f.one()),
        Err(Error::StateMismatch)
    ));
}

#[test]
fn bad_deal_arguments() {
    let p = p47();
    let s = SecretVector(vec![p.field().one()]);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    assert!(matches!(deal(&p, 1, 3, &s, &mut rng), Err(Error::BadThreshold(_))));
    assert!(matches!(deal(&p, 4, 3, &s, &mut rng), Err(Error::BadThreshold(_))));
    assert!(matches!(deal(&p, 2, 103, &s, &mut rng), Err(Error::BadThreshold(_))));
    let too_many = SecretVector(vec![p.field().one(); 103]);
    assert!(deal(&p, 2, 3, &too_many, &mut rng).is_err());
}
