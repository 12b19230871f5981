//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use mst3_ree::attack::{brute_force_r_pair, brute_force_split, Recovered};
use mst3_ree::profile::SizingReport;
use mst3_ree::scheme::{decrypt_batch, decrypt_traced, encrypt_batch};
use mst3_ree::worked_example::{Expected, WorkedExample, R1_DIGITS, R2_DIGITS};
use mst3_ree::{
    decrypt, encrypt, keygen, Execution, Field, Group, LogSignature, Plaintext, Profile,
    Randomness, SignatureType,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Outcome {
    id: &'static str,
    name: &'static str,
    failures: Vec<String>,
    elapsed: Duration,
    limit: Option<Duration>,
    detail: String,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.failures.is_empty() && self.limit.is_none_or(|l| self.elapsed < l)
    }

    fn print(&self) {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        println!(
            "[{status}] {} {}: {} ({:.3} ms, {})",
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64() * 1e3,
            self.limit.map_or("no time limit".to_string(), |l| format!(
                "limit {} ms",
                l.as_millis()
            ))
        );
        for f in &self.failures {
            println!("       mismatch: {f}");
        }
        if self.failures.is_empty() && !self.passed() {
            println!("       over time limit");
        }
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn check<T: PartialEq + std::fmt::Debug>(failures: &mut Vec<String>, what: &str, got: T, want: T) {
    if got != want {
        failures.push(format!("{what}: got {got:?}, want {want:?}"));
    }
}

/// 1a-1c: the worked example over GF(3^5). Fixtures are loaded and the
/// expected values converted before timing starts.
fn worked_example() -> Vec<Outcome> {
    let ex = WorkedExample::load();
    let g = &ex.params.group;
    let pk = &ex.public;
    let m = ex.message();
    let r = ex.randomness();
    let e = |x| ex.element(x);
    let limit = Some(Duration::from_millis(1));

    // warm-up so the measured runs see no one-time initialisation
    let warm = encrypt(pk, &m, &r).unwrap();
    let _ = decrypt_traced(pk, &ex.private, &warm);

    let mut out = Vec::new();
    let ((g1, g2), elapsed) = timed(|| {
        (
            pk.gamma1.evaluate_digits(g, &R1_DIGITS),
            pk.gamma2.evaluate_digits(g, &R2_DIGITS),
        )
    });
    let mut failures = Vec::new();
    check(&mut failures, "gamma1(29)", g1, e(&Expected::GAMMA1_R1));
    check(&mut failures, "gamma2(31)", g2, e(&Expected::GAMMA2_R2));
    out.push(Outcome {
        id: "1a",
        name: "worked example gamma",
        failures,
        elapsed,
        limit,
        detail: format!(
            "gamma1(29) = {}, gamma2(31) = {}",
            g.format_power(&g1),
            g.format_power(&g2)
        ),
    });

    let (ct, elapsed) = timed(|| encrypt(pk, &m, &r).unwrap());
    let mut failures = Vec::new();
    check(&mut failures, "y1", ct.y1, e(&Expected::Y1));
    check(&mut failures, "y2", ct.y2, e(&Expected::Y2));
    check(&mut failures, "y3", ct.y3, e(&Expected::Y3));
    out.push(Outcome {
        id: "1b",
        name: "worked example encryption",
        failures,
        elapsed,
        limit,
        detail: format!(
            "y1 = {}, y2 = {}, y3 = {}",
            g.format_power(&ct.y1),
            g.format_power(&ct.y2),
            g.format_power(&ct.y3)
        ),
    });

    let (tr, elapsed) = timed(|| decrypt_traced(pk, &ex.private, &ct));
    let mut failures = Vec::new();
    match tr {
        Ok(tr) => {
            check(&mut failures, "D1", tr.d1, e(&Expected::D1));
            check(&mut failures, "D2", tr.d2, e(&Expected::D2));
            check(&mut failures, "Dstar2", tr.dstar2, e(&Expected::DSTAR2));
            check(&mut failures, "R1", tr.r1.to_u64(), Some(29));
            check(&mut failures, "R2", tr.r2.to_u64(), Some(31));
            check(&mut failures, "m", tr.message, m);
        }
        Err(err) => failures.push(format!("decryption failed: {err}")),
    }
    out.push(Outcome {
        id: "1c",
        name: "worked example decryption",
        failures,
        elapsed,
        limit,
        detail: "D1, D2, Dstar2, R = (29, 31), m = S(0, a0, a1)".into(),
    });
    out
}

fn exhaustive_round_trip() -> Outcome {
    let p = Profile::Toy.params();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0002);
    let (failures, elapsed) = timed(|| {
        let (pk, sk) = keygen(&p, &mut rng);
        let messages: Vec<Plaintext> = (0..20)
            .map(|_| Plaintext::random(&p.group, &mut rng))
            .collect();
        let items: Vec<_> = messages
            .iter()
            .flat_map(|m| (0..729u32).map(move |k| (*m, Randomness::new(k / 27, k % 27))))
            .collect();
        let cts = encrypt_batch(&pk, &items, Execution::default()).unwrap();
        let mut failures = Vec::new();
        for (ct, (m, r)) in cts.iter().zip(&items) {
            match decrypt(&pk, &sk, ct) {
                Ok(got) if got == *m => {}
                other => failures.push(format!("R = ({}, {}): {other:?}", r.r1, r.r2)),
            }
        }
        check(&mut failures, "cases", items.len(), 14_580);
        let batch = decrypt_batch(&pk, &sk, &cts, Execution::default()).unwrap();
        check(
            &mut failures,
            "batch",
            batch,
            items.iter().map(|(m, _)| *m).collect(),
        );
        failures.truncate(5);
        failures
    });
    Outcome {
        id: "2",
        name: "exhaustive toy round trip",
        detail: format!("729 R pairs x 20 messages, {} failures", failures.len()),
        failures,
        elapsed,
        limit: Some(Duration::from_secs(10)),
    }
}

fn bijectivity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0003);
    let setups = [
        (Field::new(3, &[1, 2, 0, 1]).unwrap(), vec![3u64, 9]),
        (Field::new(5, &[1, 2, 0, 0, 0, 1]).unwrap(), vec![9, 9, 3]),
    ];
    let ((checked, failures), elapsed) = timed(|| {
        let mut failures = Vec::new();
        let mut checked = 0;
        for (f, radices) in &setups {
            let t = SignatureType::for_degree(radices, f.degree()).unwrap();
            let q = t.index_count().unwrap();
            for k in 0..50 {
                let mut sig = LogSignature::generate(f, &t, &mut rng);
                if k % 2 == 1 {
                    sig = sig.shuffled(&mut rng);
                }
                let mut image = HashSet::new();
                let mut digits = vec![0; t.len()];
                for r in 0..q {
                    t.digits_of_u64(r, &mut digits);
                    let v = sig.evaluate_digits(&digits);
                    image.insert(f.index_of(v));
                    if sig.factorize(v).ok().and_then(|i| i.to_u64()) != Some(r) {
                        failures.push(format!("q = {q}, signature {k}, R = {r}"));
                    }
                }
                if image.len() as u64 != q {
                    failures.push(format!(
                        "q = {q}, signature {k}: image has {} elements",
                        image.len()
                    ));
                }
                checked += 1;
            }
        }
        failures.truncate(5);
        (checked, failures)
    });
    Outcome {
        id: "3",
        name: "tame signature bijectivity",
        detail: format!("{checked} signatures at q = 27 and q = 243, half row-permuted"),
        failures,
        elapsed,
        limit: Some(Duration::from_secs(30)),
    }
}

fn group_law() -> Outcome {
    let u27 = Group::new(Field::new(3, &[1, 2, 0, 1]).unwrap());
    let u243 = Group::new(Field::new(5, &[1, 2, 0, 0, 0, 1]).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0004);
    let (failures, elapsed) = timed(|| {
        let mut failures = Vec::new();
        for k in 0..19_683u128 {
            let x = u27.from_index(k);
            if !u27.mul(&x, &u27.inv(&x)).is_identity() {
                failures.push(format!("inverse of {}", u27.format(&x)));
            }
            let want = if x.is_identity() {
                1
            } else if x.a.is_zero() {
                3
            } else {
                9
            };
            if u27.element_order(&x) != want {
                failures.push(format!("order of {}", u27.format(&x)));
            }
        }
        for _ in 0..100_000 {
            let (x, y, z) = (
                u243.random(&mut rng),
                u243.random(&mut rng),
                u243.random(&mut rng),
            );
            if u243.mul(&u243.mul(&x, &y), &z) != u243.mul(&x, &u243.mul(&y, &z)) {
                failures.push(format!("associativity at {}", u243.format(&x)));
            }
        }
        failures.truncate(5);
        failures
    });
    Outcome {
        id: "4",
        name: "group law",
        detail: "19683 inverses and orders at q = 27, 10^5 associativity triples at q = 243".into(),
        failures,
        elapsed,
        limit: None,
    }
}

fn attack_orders() -> Outcome {
    let p = Profile::Toy.params();
    let q = 27u64;
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0005);
    let ((max_pair, max_split), elapsed, failures) = {
        let mut failures = Vec::new();
        let (maxes, elapsed) = timed(|| {
            let (mut max_pair, mut max_split) = (0, 0);
            for k in 0..100 {
                let (pk, _) = keygen(&p, &mut rng);
                let m = Plaintext::random(&p.group, &mut rng);
                let ct = encrypt(&pk, &m, &Randomness::sample(&p, &mut rng)).unwrap();
                for report in [
                    brute_force_r_pair(&pk, &ct).unwrap(),
                    brute_force_split(&pk, &ct).unwrap(),
                ] {
                    let verified = match &report.recovered {
                        Some(Recovered::Randomness { r, message }) => {
                            *message == m && encrypt(&pk, message, r).unwrap() == ct
                        }
                        _ => false,
                    };
                    if !report.succeeded || !verified {
                        failures.push(format!(
                            "challenge {k}: {} did not recover m",
                            report.attack
                        ));
                    }
                }
                let pair = brute_force_r_pair(&pk, &ct).unwrap().tried;
                let split = brute_force_split(&pk, &ct).unwrap().tried;
                max_pair = max_pair.max(pair);
                max_split = max_split.max(split);
            }
            (max_pair, max_split)
        });
        (maxes, elapsed, failures)
    };
    let mut failures = failures;
    if max_pair > q * q {
        failures.push(format!("pair tried {max_pair} > q^2"));
    }
    if max_split > 4 * q {
        failures.push(format!("split tried {max_split} > 4q"));
    }
    Outcome {
        id: "5",
        name: "attack trial counts",
        detail: format!(
            "100 challenges at q = 27: max pair {max_pair} <= 729, max split {max_split} <= 108"
        ),
        failures,
        elapsed,
        limit: Some(Duration::from_secs(60)),
    }
}

fn sizing() -> Outcome {
    let (report, elapsed) = timed(SizingReport::quoted_128_bit);
    let mut failures = Vec::new();
    check(
        &mut failures,
        "rows per signature",
        report.rows_per_signature,
        1944,
    );
    check(
        &mut failures,
        "s * r",
        report.rows_per_signature,
        report.blocks as u64 * report.radix,
    );
    check(&mut failures, "covered degree", report.covered_degree, 40);
    if !report
        .warnings
        .iter()
        .any(|w| w.contains("3^40") && w.contains("3^80"))
    {
        failures.push("3^40 vs 3^80 warning missing".into());
    }
    let large = Profile::Large.params();
    check(
        &mut failures,
        "large rows",
        large.type1.row_count(),
        16 * 243 + 3,
    );
    Outcome {
        id: "6",
        name: "sizing arithmetic",
        detail: format!(
            "8 x 243 = {} rows; {}",
            report.rows_per_signature,
            report.warnings.join("; ")
        ),
        failures,
        elapsed,
        limit: None,
    }
}

fn main() -> ExitCode {
    let mut outcomes = worked_example();
    outcomes.push(exhaustive_round_trip());
    outcomes.push(bijectivity());
    outcomes.push(group_law());
    outcomes.push(attack_orders());
    outcomes.push(sizing());
    for o in &outcomes {
        o.print();
    }
    println!("[INFO] the 128-bit security level is not measurable at this scale; security rests on the checks above");
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        outcomes.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
