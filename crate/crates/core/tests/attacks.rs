use mst3_ree::attack::{
    brute_force_r_pair, brute_force_r_pair_with, brute_force_split, brute_force_split_with,
    brute_force_t, brute_force_t_with, AttackError, AttackKind, Recovered,
};
use mst3_ree::worked_example::WorkedExample;
use mst3_ree::{
    decrypt, encrypt, keygen, Ciphertext, Execution, Plaintext, PrivateKey, Profile, Randomness,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn challenge(
    seed: u64,
) -> (
    mst3_ree::PublicKey,
    PrivateKey,
    Plaintext,
    Randomness,
    Ciphertext,
) {
    let p = Profile::Toy.params();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (pk, sk) = keygen(&p, &mut rng);
    let m = Plaintext::random(&p.group, &mut rng);
    let r = Randomness::sample(&p, &mut rng);
    let ct = encrypt(&pk, &m, &r).unwrap();
    (pk, sk, m, r, ct)
}

#[test]
fn pair_recovers_worked_example_randomness() {
    let ex = WorkedExample::load();
    let ct = encrypt(&ex.public, &ex.message(), &ex.randomness()).unwrap();
    let report = brute_force_r_pair(&ex.public, &ct).unwrap();
    assert!(report.succeeded);
    assert_eq!(report.tried, 29 * 243 + 31 + 1);
    assert!(report.tried <= 59049);
    assert_eq!(
        report.recovered,
        Some(Recovered::Randomness {
            r: Randomness::new(29u32, 31u32),
            message: ex.message()
        })
    );
    let split = brute_force_split(&ex.public, &ct).unwrap();
    assert!(split.succeeded && split.tried <= 4 * 243);
}

#[test]
fn pair_fails_off_image() {
    let (pk, _, _, _, mut ct) = challenge(41);
    let g = Profile::Toy.params().group;
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    // y2 drawn until it is not gamma'(R) for any R
    let images: std::collections::HashSet<_> = (0..27u32)
        .flat_map(|r1| (0..27u32).map(move |r2| (r1, r2)))
        .map(|(r1, r2)| {
            encrypt(&pk, &Plaintext::default(), &Randomness::new(r1, r2))
                .unwrap()
                .y2
        })
        .collect();
    ct.y2 = loop {
        let y = g.random(&mut rng);
        if !images.contains(&y) {
            break y;
        }
    };
    let report = brute_force_r_pair(&pk, &ct).unwrap();
    assert!(!report.succeeded);
    assert_eq!(report.tried, 729);
    assert!(report.recovered.is_none());
}

#[test]
fn split_handles_ambiguous_first_stage() {
    for seed in 0..200 {
        let (pk, _, m, r, ct) = challenge(1000 + seed);
        let g = &pk.params.group;
        let (r1, _) = r.to_u64_pair().unwrap();
        let a_of = |x: u64| {
            let mut d = vec![0; pk.params.type1.len()];
            pk.params.type1.digits_of_u64(x, &mut d);
            pk.alpha1.evaluate_digits(g, &d).a
        };
        let matches = (0..27).filter(|&x| a_of(x) == a_of(r1)).count();
        if matches > 1 {
            let report = brute_force_split(&pk, &ct).unwrap();
            assert!(report.succeeded);
            assert!(report.tried > 54);
            assert_eq!(report.recovered.unwrap().message(), m);
            return;
        }
    }
    panic!("no ambiguous challenge found");
}

#[test]
fn split_beats_pair_on_average() {
    let (mut pair, mut split) = (0u64, 0u64);
    let mut injective_hits = 0;
    for seed in 0..100 {
        let (pk, _, m, _, ct) = challenge(2000 + seed);
        let a = brute_force_r_pair(&pk, &ct).unwrap();
        let b = brute_force_split(&pk, &ct).unwrap();
        assert!(a.succeeded && b.succeeded);
        assert_eq!(a.recovered.unwrap().message(), m);
        assert_eq!(b.recovered.unwrap().message(), m);
        assert!(a.tried <= 729 && b.tried <= 4 * 27);
        if b.tried == 54 {
            injective_hits += 1;
        }
        pair += a.tried;
        split += b.tried;
    }
    assert!(split < pair, "split {split} pair {pair}");
    assert!(injective_hits > 0);
}

#[test]
fn tkey_recovers_equivalent_translations() {
    let (pk, sk, m, _, ct) = challenge(43);
    let report = brute_force_t(&pk, &sk.beta1, &sk.beta2, &ct).unwrap();
    assert!(report.succeeded);
    assert!(report.tried <= 19683);
    let Some(Recovered::Translations { t1, t2, message }) = report.recovered else {
        panic!("expected translations");
    };
    assert_eq!(message, m);
    let recovered = PrivateKey::new(sk.beta1.clone(), sk.beta2.clone(), t1, t2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for _ in 0..50 {
        let m = Plaintext::random(&pk.params.group, &mut rng);
        let r = Randomness::new(rng.random_range(0..27u32), rng.random_range(0..27u32));
        let ct = encrypt(&pk, &m, &r).unwrap();
        assert_eq!(decrypt(&pk, &recovered, &ct).unwrap(), m);
    }
}

#[test]
fn tkey_guard_at_243() {
    let ex = WorkedExample::load();
    let ct = encrypt(&ex.public, &ex.message(), &ex.randomness()).unwrap();
    let err = brute_force_t(&ex.public, &ex.private.beta1, &ex.private.beta2, &ct).unwrap_err();
    assert!(matches!(
        err,
        AttackError::SearchSpaceTooLarge {
            attack: AttackKind::TKey,
            ..
        }
    ));
}

#[test]
fn execution_modes_agree() {
    let (pk, sk, _, _, ct) = challenge(45);
    for (seq, par) in [
        (
            brute_force_r_pair_with(&pk, &ct, Execution::Sequential).unwrap(),
            brute_force_r_pair_with(&pk, &ct, Execution::Parallel).unwrap(),
        ),
        (
            brute_force_split_with(&pk, &ct, Execution::Sequential).unwrap(),
            brute_force_split_with(&pk, &ct, Execution::Parallel).unwrap(),
        ),
        (
            brute_force_t_with(&pk, &sk.beta1, &sk.beta2, &ct, Execution::Sequential).unwrap(),
            brute_force_t_with(&pk, &sk.beta1, &sk.beta2, &ct, Execution::Parallel).unwrap(),
        ),
    ] {
        assert_eq!(
            (seq.tried, seq.succeeded, &seq.recovered),
            (par.tried, par.succeeded, &par.recovered)
        );
    }
}
