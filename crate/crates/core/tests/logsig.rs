use std::collections::HashSet;

use mst3_ree::logsig::LogSigError;
use mst3_ree::worked_example::{Expected, WorkedExample, BETA1, BETA2, R1, R2};
use mst3_ree::{Cover, FactorIndex, Field, Group, LogSignature, SignatureType};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gf27() -> Field {
    Field::new(3, &[1, 2, 0, 1]).unwrap()
}

fn gf243() -> Field {
    Field::new(5, &[1, 2, 0, 0, 0, 1]).unwrap()
}

fn assert_bijective(f: &Field, sig: &LogSignature) {
    let t = sig.sig_type();
    let q = t.index_count().unwrap();
    let mut image = HashSet::new();
    let mut digits = vec![0; t.len()];
    for r in 0..q {
        t.digits_of_u64(r, &mut digits);
        let v = sig.evaluate_digits(&digits);
        assert!(image.insert(f.index_of(v)));
        let back = sig.factorize(v).unwrap();
        assert_eq!(back.digits(), digits.as_slice());
        assert_eq!(back.to_u64(), Some(r));
    }
    assert_eq!(image.len() as u64, q);
}

#[test]
fn generated_signatures_are_bijective() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for (f, radices) in [
        (gf27(), vec![3, 9]),
        (gf27(), vec![3, 3, 3]),
        (gf243(), vec![9, 9, 3]),
    ] {
        let t = SignatureType::for_degree(&radices, f.degree()).unwrap();
        for _ in 0..5 {
            let sig = LogSignature::generate(&f, &t, &mut rng);
            assert_bijective(&f, &sig);
            assert_bijective(&f, &sig.shuffled(&mut rng));
        }
    }
}

#[test]
fn mixed_radix_examples() {
    let t1 = SignatureType::new(&[9, 9, 3]).unwrap();
    let t2 = SignatureType::new(&[3, 9, 9]).unwrap();
    assert_eq!(FactorIndex::from_u64(&t1, R1).unwrap().digits(), &[2, 3, 0]);
    assert_eq!(FactorIndex::from_u64(&t2, R2).unwrap().digits(), &[1, 1, 1]);
    assert_eq!(FactorIndex::from_u64(&t1, 0).unwrap().digits(), &[0, 0, 0]);
    assert_eq!(
        FactorIndex::from_u64(&t1, 243).unwrap_err(),
        LogSigError::OutOfRange
    );
    assert_eq!(
        FactorIndex::from_digits(&t1, &[2, 3, 0]).unwrap().to_u64(),
        Some(29)
    );
}

#[test]
fn fixture_signatures_factorize() {
    let ex = WorkedExample::load();
    let f = WorkedExample::field();
    let (b1, b2) = (&ex.private.beta1, &ex.private.beta2);
    assert_bijective(&f, b1);
    assert_bijective(&f, b2);
    assert_eq!(
        b1.blocks()[2]
            .iter()
            .map(|x| f.format(*x))
            .collect::<Vec<_>>(),
        BETA1[2]
    );
    assert_eq!(
        b2.blocks()[1]
            .iter()
            .map(|x| f.format(*x))
            .collect::<Vec<_>>(),
        BETA2[1]
    );

    let v1 = f.parse(Expected::BETA1_VALUE).unwrap();
    assert_eq!(v1, f.primitive_power(2));
    let (idx, residues) = b1.factorize_traced(v1).unwrap();
    assert_eq!(idx.digits(), &[2, 3, 0]);
    let res: Vec<String> = residues.iter().map(|x| f.format(*x)).collect();
    assert_eq!(res, Expected::BETA1_RESIDUES);

    let v2 = f.parse(Expected::BETA2_VALUE).unwrap();
    assert_eq!(v2, f.primitive_power(227));
    let (idx, residues) = b2.factorize_traced(v2).unwrap();
    assert_eq!(idx.digits(), &[1, 1, 1]);
    let res: Vec<String> = residues.iter().map(|x| f.format(*x)).collect();
    assert_eq!(res, Expected::BETA2_RESIDUES);
}

#[test]
fn permutation_is_invisible_to_factorization() {
    let f = gf27();
    let t = SignatureType::for_degree(&[27], 3).unwrap();
    let sig = LogSignature::generate(&f, &t, &mut ChaCha8Rng::seed_from_u64(1));
    let reverse: Vec<usize> = (0..27).rev().collect();
    let reversed = sig.permute_block_rows(0, &reverse).unwrap();
    assert_eq!(f.format(reversed.blocks()[0][0]), "222");
    assert_eq!(f.format(reversed.blocks()[0][26]), "000");
    let two = f.from_trits(&[2, 0, 0]).unwrap();
    assert_eq!(reversed.factorize(two).unwrap().digits(), &[2]);
    assert_eq!(reversed.row(0, 2), two);
    let identity: Vec<usize> = (0..27).collect();
    assert_eq!(sig.permute_block_rows(0, &identity).unwrap(), sig);
    let mut bad = identity.clone();
    bad[1] = 0;
    assert_eq!(
        sig.permute_block_rows(0, &bad).unwrap_err(),
        LogSigError::BadPermutation
    );
}

#[test]
fn cover_evaluation_respects_block_order() {
    let g = Group::new(gf27());
    let t = SignatureType::new(&[3, 9]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let cover = Cover::generate(&g, &t, &mut rng, false);
    let (x, y) = (cover.row(0, 1), cover.row(1, 4));
    assert_ne!(g.mul(x, y), g.mul(y, x));
    assert_eq!(cover.evaluate_digits(&g, &[1, 4]), g.mul(x, y));
}

#[test]
fn covers_have_no_zero_coordinates() {
    let g = Group::new(gf243());
    let t = SignatureType::new(&[9, 9, 3]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let a1 = Cover::generate(&g, &t, &mut rng, false);
    let a2 = Cover::generate(&g, &t, &mut rng, true);
    assert!(a1.zero_entries().is_empty());
    assert!(a2.zero_entries().is_empty());
    assert!(a2.blocks().iter().flatten().all(|x| x.a.is_zero()));
    assert_ne!(
        a1,
        Cover::generate(&g, &t, &mut ChaCha8Rng::seed_from_u64(10), false)
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn round_trip_large_profile(seed in any::<u64>(), r in proptest::collection::vec(0u32..243, 17)) {
        let p = mst3_ree::Profile::Large.params();
        let f = p.group.field().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sig = LogSignature::generate(&f, &p.type1, &mut rng);
        let mut digits = r;
        digits[16] %= 3;
        let v = sig.evaluate_digits(&digits);
        let back = sig.factorize(v).unwrap();
        prop_assert_eq!(back.digits(), digits.as_slice());
    }
}
