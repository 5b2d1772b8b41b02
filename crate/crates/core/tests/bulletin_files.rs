use std::sync::OnceLock;

use mvss_core::bulletin::{
    deserialize_dealer, deserialize_setup, param_count, serialize_dealer, serialize_setup,
    BulletinDocument, DealId, ShareFile,
};
use mvss_core::mvss::{add_secret, deal, Bulletin, SecretVector, SystemParams};
use mvss_core::presets::CurveSpec;
use mvss_core::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn params() -> &'static SystemParams {
    static P: OnceLock<SystemParams> = OnceLock::new();
    P.get_or_init(|| {
        let setup = CurveSpec::paper47().build().unwrap();
        SystemParams::generate(&setup, &mut ChaCha8Rng::seed_from_u64(11)).unwrap()
    })
}

fn random_bulletin(seed: u64, t: usize, n: usize, m: usize) -> Bulletin {
    let p = params();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let secrets = SecretVector((0..m).map(|_| p.field().random(&mut rng)).collect());
    deal(p, t, n, &secrets, &mut rng).unwrap().bulletin
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn bulletins_round_trip(seed in any::<u64>(), t in 2usize..5, extra in 0usize..4, m in 1usize..6) {
        let b = random_bulletin(seed, t, t + extra, m);
        let text = b.serialize();
        let back = Bulletin::deserialize(text.as_bytes()).unwrap();
        prop_assert_eq!(&back, &b);
        prop_assert_eq!(back.serialize(), text);
        prop_assert_eq!(b.param_count(), 7 + b.n() + b.m());
    }
}

#[test]
fn distinct_bulletins_serialize_differently() {
    let a = random_bulletin(1, 2, 3, 2);
    let mut b = a.clone();
    b.r[1] = b.r[1].clone() + b.params.field().one();
    assert_ne!(a.serialize(), b.serialize());
    b = a.clone();
    b.challenge.0 = b.challenge.0 + b.params.ring().one();
    assert_ne!(a.serialize(), b.serialize());
}

#[test]
fn rejects_non_canonical_text() {
    let text = random_bulletin(2, 2, 3, 1).serialize();
    let cases = [
        text.replace("version = 1", "version = 2"),
        text.replace("t = 2", "t = 02"),
        text.replace("t = 2\n", "t  = 2\n"),
        text.replacen('\n', "\r\n", 1),
        text.trim_end().to_string(),
        format!("{text}extra = 1\n"),
        text.replace("scheme = mvss", "scheme = nope"),
    ];
    for bad in cases {
        assert!(Bulletin::deserialize(bad.as_bytes()).is_err(), "accepted:\n{bad}");
    }
}

#[test]
fn setup_and_dealer_files() {
    let p = params();
    let text = serialize_setup(p).unwrap();
    let back = deserialize_setup(text.as_bytes()).unwrap();
    assert_eq!(&back, p);
    assert!(serialize_setup(&p.public()).is_err());

    let secrets = SecretVector(vec![p.field().from_base(5)]);
    let dealt = deal(p, 2, 3, &secrets, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
    let dtext = serialize_dealer(&dealt.dealer);
    let mut dealer = deserialize_dealer(dtext.as_bytes(), &dealt.bulletin).unwrap();
    assert_eq!(dealer, dealt.dealer);

    let grown = add_secret(&mut dealer, &dealt.bulletin, &p.field().from_base(9)).unwrap();
    assert_eq!(grown.deal_id, dealt.bulletin.deal_id);
    let doc = BulletinDocument::deserialize(grown.serialize().as_bytes()).unwrap();
    assert_eq!(param_count(&doc).unwrap(), 7 + 3 + 2);
    assert!(deserialize_dealer(dtext.as_bytes(), &random_bulletin(4, 2, 3, 1)).is_err());
}

#[test]
fn share_files() {
    let b = random_bulletin(5, 2, 3, 1);
    let z = b.params.ring();
    let file = ShareFile::single(b.deal_id, mvss_core::ShamirShare::new(z.elem(2), z.elem(19)));
    let text = file.serialize();
    assert_eq!(text, format!("x=2 s=19 l=103 deal={}\n", b.deal_id));
    assert_eq!(ShareFile::deserialize(text.as_bytes()).unwrap(), file);
    for bad in [
        "x=0 s=19 l=103 deal=0000000000000abc\n",
        "x=2 s=103 l=103 deal=0000000000000abc\n",
        "x=2 s=19 l=104 deal=0000000000000abc\n",
        "x=2 s=19 l=103 deal=abc\n",
        "s=19 x=2 l=103 deal=0000000000000abc\n",
        "x=2 s=19 l=103 deal=0000000000000abc",
    ] {
        assert!(ShareFile::deserialize(bad.as_bytes()).is_err(), "{bad}");
    }
    assert_eq!(DealId::parse("0000000000000abc"), Some(DealId(0xabc)));
    assert_eq!(DealId(0xabc).to_string(), "0000000000000abc");
}

#[test]
fn liu_document_is_not_an_mvss_bulletin() {
    let b = random_bulletin(6, 2, 3, 1);
    let text = b.serialize().replace("scheme = mvss", "scheme = liu");
    assert!(Bulletin::deserialize(text.as_bytes()).is_err());
    assert!(matches!(
        Bulletin::deserialize(b"scheme = setup\n"),
        Err(Error::MalformedDocument { .. } | Error::UnknownSchemeVersion(_))
    ));
}
