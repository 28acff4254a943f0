//! End-to-end acceptance gate: one test per criterion, each printing a
//! single pass/fail line (visible with `cargo test -- --nocapture`).

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::Command;

use num_bigint::BigInt;
use ybe::braces::{enumerate_braces, permutation_brace, FiniteGroup, SkewBrace};
use ybe::braces::examples;
use ybe::fixtures;
use ybe::perm::{p_part_of, prime_divisors, DEFAULT_CLOSURE_CAP as CAP};
use ybe::promislow::{self, PromislowCertificate};
use ybe::solutions::{enumerate, Solution};
use ybe::structure_group::{eval_word, StructureRep, Word};

fn criterion(number: usize, name: &str, body: impl FnOnce()) {
    let outcome = panic::catch_unwind(AssertUnwindSafe(body));
    match &outcome {
        Ok(()) => println!("criterion {number} ({name}): pass"),
        Err(_) => println!("criterion {number} ({name}): FAIL"),
    }
    if let Err(cause) = outcome {
        panic::resume_unwind(cause);
    }
}

fn rep_of(s: &Solution) -> StructureRep {
    StructureRep::new(s, CAP).expect("structure representation")
}

/// The fixtures with no Promislow subgroup: the two table families.
fn exhausted_stems() -> Vec<&'static str> {
    vec![
        "tab_4_13_1", "tab_4_13_2", "tab_4_13_3", "tab_4_13_4", "tab_4_19_1", "tab_4_19_2",
        "tab_4_19_3", "tab_4_19_4",
    ]
}

fn fixture(stem: &str) -> Solution {
    fixtures::registry()
        .into_iter()
        .find(|(name, _)| *name == stem)
        .map(|(_, s)| s)
        .unwrap_or_else(|| panic!("unknown fixture {stem}"))
}

#[test]
fn criterion_1_golden_verification() {
    criterion(1, "golden fixture verification", || {
        let registry = fixtures::registry();
        assert_eq!(registry.len(), 14);
        for (name, s) in registry {
            // the shipped file must parse back to the in-code table
            let path = format!("fixtures/{name}.json");
            let text = std::fs::read_to_string(&path)
                .unwrap_or_else(|e| panic!("reading {path}: {e}"));
            let loaded = Solution::from_json(&text).expect("fixture file parses");
            assert_eq!(loaded, s, "{name}: file disagrees with the registry");

            let report = s.verify();
            assert!(report.nondegenerate, "{name}: degenerate");
            assert!(report.bijective_r, "{name}: r is not bijective");
            assert!(report.braid, "{name}: braid identity fails");
            assert!(s.is_involutive(), "{name}: not involutive");
        }
    });
}

#[test]
fn criterion_2_size_4_census() {
    criterion(2, "census of involutive solutions up to size 4", || {
        let expected_totals = [1usize, 2, 5, 23];
        let expected_not_mp = [0usize, 0, 0, 2];
        for n in 1..=4usize {
            let solutions = enumerate(n).expect("enumeration succeeds");
            assert_eq!(solutions.len(), expected_totals[n - 1], "total at n={n}");
            let not_mp = solutions
                .iter()
                .filter(|s| s.mp_level().expect("mp level computes").is_none())
                .count();
            assert_eq!(not_mp, expected_not_mp[n - 1], "not-mp count at n={n}");
        }
    });
}

#[test]
fn criterion_3_retraction_chain() {
    criterion(3, "retraction chain and fixed points", || {
        let s8 = fixtures::solution_8_15579();
        let (retracted, classes) = s8.retract().expect("retract");
        assert_eq!(classes.len(), 8);
        assert_eq!(retracted.size(), 4);
        assert!(
            retracted.is_isomorphic(&fixtures::solution_4_13()).unwrap().is_some(),
            "retract of the size-8 solution must match the size-4 one"
        );

        for s in [fixtures::solution_4_13(), fixtures::solution_4_19()] {
            let (r, _) = s.retract().expect("retract");
            assert_eq!(r.size(), s.size(), "irretractable solution shrank");
            assert!(r.is_isomorphic(&s).unwrap().is_some(), "retract moved a fixed point");
        }

        let mp = fixtures::mp_example_c2c2();
        let level = mp.mp_level().expect("mp level").expect("finite level");
        assert!(level >= 1);
        let group = mp.permutation_group(CAP).expect("permutation group");
        assert_eq!(group.order(), 4);
        assert_eq!(group.exponent(), 2);
    });
}

#[test]
fn criterion_4_promislow_search() {
    criterion(4, "Promislow subgroup search", || {
        for stem in ["s4_13", "s4_19", "s8_gi"] {
            let rep = rep_of(&fixture(stem));
            let report = promislow::find_promislow(&rep).expect("search runs");
            assert!(report.pairs_tested > 0, "{stem}: no pairs tested");
            assert!(!report.exhausted, "{stem}: expected a certificate");
            let cert = report.certificate.expect("certificate");
            assert!(cert.verified_relations, "{stem}: unverified certificate");
            assert!(
                PromislowCertificate::verify(&cert.alpha, &cert.beta).unwrap(),
                "{stem}: certificate fails independent re-verification"
            );
        }
        for stem in exhausted_stems() {
            let rep = rep_of(&fixture(stem));
            let report = promislow::find_promislow(&rep).expect("search runs");
            assert!(report.exhausted, "{stem}: unexpected certificate");
            assert!(report.certificate.is_none(), "{stem}: exhausted but certified");
            assert!(report.pairs_tested > 0, "{stem}: no pairs tested");
        }
    });
}

#[test]
fn criterion_5_upp_failure_witness() {
    criterion(5, "unique product property failure witness", || {
        let cases = [
            ("s4_19", "1,-2", "1,-3"),
            ("s8_gi", "4,-2,1,-3", "1,-2,3,-1,4,-1"),
        ];
        for (stem, xw, yw) in cases {
            let s = fixture(stem);
            let x = eval_word(&s, &Word::parse(xw).unwrap()).expect("x evaluates");
            let y = eval_word(&s, &Word::parse(yw).unwrap()).expect("y evaluates");
            let set = promislow::promislow_set(&x, &y)
                .unwrap_or_else(|e| panic!("{stem}: set collapsed: {e}"));
            assert_eq!(set.len(), 14, "{stem}: wrong set size");
            let counts = promislow::product_factorizations(&set);
            assert!(
                counts.values().all(|&c| c >= 2),
                "{stem}: an element of S^2 factors uniquely"
            );
            assert!(promislow::upp_failure_witness(&set), "{stem}: witness false");
        }
    });
}

#[test]
fn criterion_6_holonomy_index() {
    criterion(6, "lattice index equals permutation group order", || {
        for (name, s) in fixtures::registry() {
            let rep = rep_of(&s);
            let lattice = rep.lattice();
            assert_eq!(lattice.ambient_dim(), s.size(), "{name}: wrong ambient dimension");
            let index = lattice
                .index_in_ambient()
                .unwrap_or_else(|| panic!("{name}: lattice is not full rank"));
            assert_eq!(index, BigInt::from(rep.holonomy().order()), "{name}: index mismatch");
        }
    });
}

#[test]
fn criterion_7_curated_brace_examples() {
    criterion(7, "curated skew brace examples", || {
        // order 6: additive S3, multiplicative C6
        let c6 = examples::c6_nonnilpotent_type();
        assert_eq!(c6.order(), 6);
        assert!(!c6.additive().is_abelian());
        assert!(c6.multiplicative().is_isomorphic(&FiniteGroup::cyclic(6)));
        let sylows = c6.additive().sylow_subgroups_bruteforce(2).expect("Sylow search");
        assert_eq!(sylows.len(), 3, "S3 has three Sylow 2-subgroups");
        // exactly one of the three is a left ideal (the one matching the
        // unique order-2 subgroup of the multiplicative group)
        let stable: Vec<_> = sylows.iter().filter(|s| c6.is_left_ideal(s)).collect();
        assert_eq!(stable.len(), 1, "exactly one Sylow 2-subgroup is a left ideal");
        assert_eq!(stable[0], &vec![0, 3]);

        // order 8: additive dihedral, multiplicative C8, right nilpotent
        let d8 = examples::d8_example();
        assert_eq!(d8.order(), 8);
        assert!(d8.additive().is_isomorphic(&FiniteGroup::dihedral(4)));
        assert_eq!(d8.additive().exponent(), 4);
        assert!(d8.multiplicative().is_isomorphic(&FiniteGroup::cyclic(8)));
        assert!(d8.is_right_nilpotent());

        // order 8 on Z/8 with a o b = a + 3^a b: multiplicative quaternion
        let z8 = examples::z8_3a_example();
        assert!(z8.additive().is_isomorphic(&FiniteGroup::cyclic(8)));
        assert!(z8.is_right_nilpotent());
        let circ = z8.multiplicative();
        assert!(!circ.is_abelian());
        assert_eq!(circ.order(), 8);
        let involutions = (0..8).filter(|&a| circ.element_order(a) == 2).count();
        assert_eq!(involutions, 1, "quaternion fingerprint: unique involution");
        assert!(circ.is_isomorphic(&FiniteGroup::quaternion8()));
    });
}

/// All skew braces of order <= 8 up to isomorphism.
fn brace_population() -> Vec<SkewBrace> {
    (1..=8).flat_map(|n| enumerate_braces(n).expect("enumeration succeeds")).collect()
}

fn set_of(v: &[usize]) -> BTreeSet<usize> {
    v.iter().copied().collect()
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

/// Does the multiplicative group have a cyclic Sylow p-subgroup?
fn circ_sylow_cyclic(b: &SkewBrace, p: usize) -> bool {
    let full = p_part_of(b.order(), p);
    (0..b.order()).any(|a| b.multiplicative().element_order(a) == full)
}

/// Checks that the image of each socle-series step in the quotient by the
/// previous step is exactly the socle of that quotient.
fn socle_series_matches_quotients(b: &SkewBrace) -> bool {
    let series = b.socle_series();
    for k in 0..series.len() - 1 {
        let ideal = &series[k];
        if !b.is_ideal(ideal) {
            return false;
        }
        // additive-coset class labels, in the same first-seen order used by
        // the quotient construction
        let n = b.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = 0usize;
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            for &i in ideal {
                class_of[b.add(a, i)] = classes;
            }
            classes += 1;
        }
        let quotient = b.quotient(ideal).expect("quotient by socle step");
        let image: BTreeSet<usize> = series[k + 1].iter().map(|&x| class_of[x]).collect();
        if image != set_of(&quotient.socle()) {
            return false;
        }
    }
    true
}

#[test]
fn criterion_8_theorem_sweeps() {
    criterion(8, "nilpotency theorems over all braces of order <= 8", || {
        let population = brace_population();
        assert_eq!(population.len(), 1 + 1 + 1 + 4 + 1 + 6 + 1 + 47);
        for (index, b) in population.iter().enumerate() {
            let order = b.order();
            let all: Vec<usize> = (0..order).collect();
            let primes = prime_divisors(order);

            // the socle series must agree with its quotient characterization
            assert!(
                socle_series_matches_quotients(b),
                "brace #{index} (order {order}): socle series disagrees with quotients"
            );

            if b.is_nilpotent_type() {
                let left_nilpotent = b.is_left_nilpotent();
                let mut left_p_all = true;
                for &p in &primes {
                    let sylow = b.sylow_additive(p).unwrap();
                    let hall = b.hall_p_prime(p).unwrap();
                    let left_p = b.is_left_p_nilpotent(p).unwrap();
                    left_p_all &= left_p;

                    // left p-nilpotent <=> A_{p'} * A_p = 0
                    //                 <=> (A, o) is p-nilpotent
                    let star_vanishes = b.star_span(&hall, &sylow) == vec![0];
                    let circ_p_nilpotent = b.multiplicative().is_p_nilpotent(p);
                    assert_eq!(left_p, star_vanishes, "brace #{index}, p={p}");
                    assert_eq!(left_p, circ_p_nilpotent, "brace #{index}, p={p}");

                    // abelian normal Sylow of (A, o) forces right p-nilpotency
                    if b.multiplicative().has_abelian_normal_sylow(p).unwrap() {
                        assert!(
                            b.is_right_p_nilpotent(p).unwrap(),
                            "brace #{index}, p={p}: abelian normal Sylow but not right p-nilpotent"
                        );
                    }

                    // A_p eventually inside the socle series <=> right p-nilpotent
                    let soc_limit = b.socle_series().last().unwrap().clone();
                    assert_eq!(
                        is_subset(&sylow, &soc_limit),
                        b.is_right_p_nilpotent(p).unwrap(),
                        "brace #{index}, p={p}: socle containment vs right p-nilpotency"
                    );

                    // star distributes over the Sylow-Hall decomposition
                    if sylow.len() > 1 && hall.len() > 1 {
                        assert_eq!(set_of(&b.additive_closure(&[sylow.clone(), hall.clone()].concat())), set_of(&all));
                        assert_eq!(set_of(&sylow).intersection(&set_of(&hall)).count(), 1);
                        let whole = b.star_span(&all, &all);
                        let split = b.additive_closure(
                            &[b.star_span(&all, &sylow), b.star_span(&all, &hall)].concat(),
                        );
                        assert_eq!(whole, split, "brace #{index}, p={p}: star span does not split");
                    }
                }

                // left nilpotent <=> (A, o) nilpotent <=> left p-nilpotent for all p
                assert_eq!(left_nilpotent, b.multiplicative().is_nilpotent(), "brace #{index}");
                assert_eq!(left_nilpotent, left_p_all, "brace #{index}");

                // right nilpotent <=> the socle series reaches A
                let soc_limit = b.socle_series().last().unwrap().clone();
                assert_eq!(
                    b.is_right_nilpotent(),
                    soc_limit == all,
                    "brace #{index}: right nilpotency vs socle series"
                );
            }

            if b.is_abelian_type() {
                // cyclic Sylows of (A, o) force right nilpotency
                if primes.iter().all(|&p| circ_sylow_cyclic(b, p)) {
                    assert!(
                        b.is_right_nilpotent(),
                        "brace #{index}: cyclic Sylows but not right nilpotent"
                    );
                }
                // the permutation group of the associated solution is A/Soc(A)
                let s = b.to_solution();
                assert!(s.is_involutive());
                let group = s.permutation_group(CAP).unwrap();
                assert_eq!(
                    group.order() * b.socle().len(),
                    order,
                    "brace #{index}: permutation group is not A modulo the socle"
                );
            }
        }

        // same identification at the solution level: the brace carried by the
        // permutation group has the holonomy as its multiplicative group
        for stem in ["lyubashenko_2", "mp_c2c2", "s4_13", "s4_19"] {
            let rep = rep_of(&fixture(stem));
            let b = permutation_brace(&rep).expect("permutation brace");
            assert_eq!(b.order(), rep.holonomy().order(), "{stem}");
            assert_eq!(
                b.multiplicative().order_multiset(),
                rep.holonomy().order_multiset(),
                "{stem}: multiplicative group differs from the holonomy"
            );
        }
    });
}

fn run_cli(threads: &str, args: &[&str]) -> Vec<u8> {
    let output = Command::new(env!("CARGO_BIN_EXE_ybe"))
        .args(["--format", "json", "--threads", threads])
        .args(args)
        .output()
        .expect("cli binary runs");
    assert!(
        output.status.success(),
        "cli {:?} failed: {}",
        args,
        String::from_utf8_lossy(&output.stderr)
    );
    output.stdout
}

#[test]
fn criterion_9_thread_count_determinism() {
    criterion(9, "byte-identical output across thread counts", || {
        let census_1 = run_cli("1", &["enumerate-solutions", "--n", "4", "--count-only"]);
        let census_8 = run_cli("8", &["enumerate-solutions", "--n", "4", "--count-only"]);
        assert_eq!(census_1, census_8, "census output depends on thread count");
        let parsed: serde_json::Value = serde_json::from_slice(&census_1).unwrap();
        assert_eq!(parsed["total"], 23);
        assert_eq!(parsed["not_mp"], 2);

        let mut stems = vec!["s4_13", "s4_19", "s8_gi"];
        stems.extend(exhausted_stems());
        for stem in stems {
            let path = format!("fixtures/{stem}.json");
            let one = run_cli("1", &["find-promislow", &path]);
            let eight = run_cli("8", &["find-promislow", &path]);
            assert_eq!(one, eight, "{stem}: search output depends on thread count");
        }
    });
}
