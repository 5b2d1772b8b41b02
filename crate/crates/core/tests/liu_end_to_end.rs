use mvss_core::liu::{
    liu_distribute, liu_publish, liu_pseudo_share, liu_reconstruct, point_secret,
    reconstruction_row, LiuDealerState,
};
use mvss_core::mvss::SystemParams;
use mvss_core::presets::CurveSpec;
use mvss_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn subsets(n: u32, t: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: u32, n: u32, t: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for j in start..=n {
            cur.push(j);
            go(j + 1, n, t, cur, out);
            cur.pop();
        }
    }
    go(1, n, t, &mut cur, &mut out);
    out
}

#[test]
fn recovers_point_secrets_from_every_subset() {
    let setup = CurveSpec::paper47().build().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let params = SystemParams::generate(&setup, &mut rng).unwrap();
    let ctx = params.ctx();
    let z = params.ring();
    for (t, n) in [(2usize, 3usize), (3, 5)] {
        let dealer = LiuDealerState::random(ctx.clone(), t, &mut rng).unwrap();
        let shares = liu_distribute(&dealer, t, n).unwrap();
        for m in 1..=t {
            let secrets: Vec<_> = (0..m)
                .map(|i| point_secret(params.basis(), format!("secret {i}").as_bytes()).2)
                .collect();
            let cd: Vec<_> = (0..m)
                .map(|_| (z.random_nonzero(&mut rng), z.random_nonzero(&mut rng)))
                .collect();
            let entries = liu_publish(&dealer, &secrets, &cd).unwrap();
            for js in subsets(n as u32, t) {
                for (i, entry) in entries.iter().enumerate() {
                    let pseudo: Vec<_> = js
                        .iter()
                        .map(|&j| (j, liu_pseudo_share(entry, &shares[j as usize - 1], ctx)))
                        .collect();
                    let got = liu_reconstruct(i + 1, t, &pseudo, entry, ctx).unwrap();
                    assert_eq!(got, secrets[i], "t={t} n={n} m={m} js={js:?} i={}", i + 1);
                }
            }
        }
    }
}

#[test]
fn row_identity_holds_for_every_subset() {
    let setup = CurveSpec::paper47().build().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let params = SystemParams::generate(&setup, &mut rng).unwrap();
    let z = params.ring();
    for (t, n) in [(2usize, 3usize), (3, 5)] {
        let dealer = LiuDealerState::random(params.ctx().clone(), t, &mut rng).unwrap();
        let shares = liu_distribute(&dealer, t, n).unwrap();
        for js in subsets(n as u32, t) {
            for i in 1..=t {
                let row = reconstruction_row(i, &js, z).unwrap();
                let (mut a, mut b) = (z.zero(), z.zero());
                for (y, &j) in row.iter().zip(&js) {
                    a = a + *y * shares[j as usize - 1].a;
                    b = b + *y * shares[j as usize - 1].b;
                }
                assert_eq!((a, b), (dealer.aprime()[i - 1], dealer.bprime()[i - 1]));
            }
        }
    }
}

#[test]
fn more_secrets_than_threshold_is_refused() {
    let setup = CurveSpec::toy11().build().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let params = SystemParams::generate(&setup, &mut rng).unwrap();
    let z = params.ring();
    let dealer = LiuDealerState::random(params.ctx().clone(), 2, &mut rng).unwrap();
    let m = point_secret(params.basis(), b"m").2;
    let cd = vec![(z.one(), z.one()); 3];
    assert!(matches!(
        liu_publish(&dealer, &[m.clone(), m.clone(), m], &cd),
        Err(Error::TooManySecrets(_))
    ));
}
