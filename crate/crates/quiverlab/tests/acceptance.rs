//! End-to-end acceptance: fixtures, randomized oracle equivalence, and the
//! structural guarantees, each printed as its own pass line.
//!
//! Run with `cargo test -p quiverlab --test acceptance -- --nocapture` to see
//! the per-criterion summary.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use quiverlab::{
    blowup_retraction, classify, construct_blowup, coproduct, cycle_quiver, find_retraction,
    find_section, independent_set, is_phi_injective_brute, is_phin_injective, loaded_quiver,
    path_quiver, phi_n, product, recognize_blowup, verify_blowup_witness,
    verify_retraction_certificate, verify_section_certificate, BlowupSpec, Budget,
    ClassificationDetail, ComponentKind, Multiplicity, Quiver, QuiverMorphism, RawQuiver,
    VertexId,
};
use rand::prelude::*;

use common::{brute_has_left_inverse, brute_has_right_inverse, random_quiver, rng};

fn the_bad_case() -> Arc<Quiver> {
    let raw = RawQuiver::default()
        .vertex("u")
        .vertex("w")
        .edge("a", "u", "w")
        .edge("b", "u", "w")
        .edge("c", "w", "u")
        .edge("f", "w", "w");
    Arc::new(Quiver::validate(&raw).unwrap())
}

fn badness_middle() -> Arc<Quiver> {
    let raw = RawQuiver::default()
        .vertex("w_prime")
        .vertex("v")
        .vertex("w")
        .vertex("v_prime")
        .edge("e", "v", "w")
        .edge("f", "w", "v")
        .edge("e_prime", "v", "w_prime")
        .edge("f_prime", "w", "v_prime");
    Arc::new(Quiver::validate(&raw).unwrap())
}

fn timed<T>(label: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(1),
        "fixture `{label}` took {elapsed:?}, expected under 1s"
    );
    out
}

#[test]
fn criterion_1_fixture_suite() {
    timed("loop blow-ups are loaded", || {
        let c1 = Arc::new(cycle_quiver(1).unwrap());
        for k in 1..=4 {
            let w = construct_blowup(&BlowupSpec {
                base: c1.clone(),
                vertex_sizes: vec![k],
                multiplicity: Multiplicity::Uniform(1),
            })
            .unwrap();
            assert!(w.blown.is_loaded());
            assert!(!w.blown.is_empty());
        }
        for k in 1..=3 {
            for m in 1..=3 {
                let l = Arc::new(loaded_quiver(k, m).unwrap());
                let found = recognize_blowup(&c1, &l, &mut Budget::unlimited()).unwrap();
                let witness = found.expect("loaded quivers are blow-ups of the loop");
                verify_blowup_witness(&witness).unwrap();
            }
        }
    });

    timed("pendant middle quiver", || {
        let c2 = Arc::new(cycle_quiver(2).unwrap());
        let mid = badness_middle();
        assert!(recognize_blowup(&c2, &mid, &mut Budget::unlimited())
            .unwrap()
            .is_none());

        let inclusion = QuiverMorphism::new(
            c2,
            mid.clone(),
            vec![
                mid.vertex_by_name("v").unwrap(),
                mid.vertex_by_name("w").unwrap(),
            ],
            vec![
                mid.edge_by_name("e").unwrap(),
                mid.edge_by_name("f").unwrap(),
            ],
        )
        .unwrap();
        let retraction = find_retraction(&inclusion, &mut Budget::unlimited())
            .unwrap()
            .expect("the inclusion is a section");
        verify_section_certificate(&inclusion, &retraction.certificate).unwrap();
    });

    timed("paths vs embeddings", || {
        for m in 2..=8usize {
            let pm = Arc::new(path_quiver(m).unwrap());
            for n in 2..=8usize {
                let verdict = is_phin_injective(&pm, n).unwrap();
                assert_eq!(verdict.injective(), n > m, "P_{m} at n={n}");
            }
        }
    });

    timed("cycles vs embeddings", || {
        for m in 2..=8usize {
            let cm = Arc::new(cycle_quiver(m).unwrap());
            for n in 2..=8usize {
                let verdict = is_phin_injective(&cm, n).unwrap();
                assert_eq!(verdict.injective(), n % m == 0, "C_{m} at n={n}");
            }
        }
    });

    timed("the two-vertex boundary case", || {
        let q = the_bad_case();
        assert!(is_phin_injective(&q, 2).unwrap().injective());
        for n in 3..=6 {
            assert!(!is_phin_injective(&q, n).unwrap().injective(), "n={n}");
        }
    });

    timed("products", || {
        let p2 = Arc::new(path_quiver(2).unwrap());
        for m in 2..=4usize {
            let pm = Arc::new(path_quiver(m).unwrap());
            let prod = product(&p2, &pm).quiver;
            for n in 3..=5usize {
                assert!(
                    is_phin_injective(&prod, n).unwrap().injective(),
                    "P_2 x P_{m} at n={n}"
                );
            }
        }
        let i1 = Arc::new(independent_set(1));
        for m in 2..=4usize {
            let pm = Arc::new(path_quiver(m).unwrap());
            let prod = product(&i1, &pm).quiver;
            assert_eq!(prod.vertex_count(), m);
            assert_eq!(prod.edge_count(), 0);
            assert!(is_phin_injective(&prod, 2).unwrap().injective());
        }
    });

    println!("criterion 1 (fixture suite): PASS");
}

#[test]
fn criterion_2_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = rng(0x5eed_0002);
    let mut checks = 0usize;
    for _ in 0..500 {
        let q = random_quiver(&mut rng, 6, 8, 0.2);
        for n in 2..=6usize {
            let fast = is_phin_injective(&q, n).unwrap().injective();
            let phi = phi_n(n).unwrap();
            let brute = is_phi_injective_brute(&q, &phi, &mut Budget::unlimited())
                .unwrap()
                .injective();
            assert_eq!(
                fast, brute,
                "disagreement at n={n} on {:?}",
                q.to_raw()
            );
            checks += 1;
        }
    }
    let elapsed = start.elapsed();
    assert_eq!(checks, 2500);
    assert!(
        elapsed < Duration::from_secs(60),
        "oracle equivalence took {elapsed:?}"
    );
    println!(
        "criterion 2 (oracle equivalence, {checks} checks in {elapsed:?}): PASS"
    );
}

#[test]
fn criterion_3_structure_round_trip() {
    // Same generator and seed as criterion 2, so the sample is the same.
    let mut rng = rng(0x5eed_0002);
    let mut certified = 0usize;
    for _ in 0..500 {
        let q = random_quiver(&mut rng, 6, 8, 0.2);
        for n in 3..=6usize {
            if !is_phin_injective(&q, n).unwrap().injective() {
                continue;
            }
            // Injectivity propagates structure around loops; the audit of
            // those closures must come back clean.
            let closures = quiverlab::check_lemma_closures(&q, n).unwrap();
            assert!(
                closures.is_empty(),
                "closure audit flagged an injective quiver: {closures:?}"
            );
            let classification = classify(&q, n).expect("no internal inconsistencies");
            assert!(classification.injective);
            let components = match &classification.detail {
                ClassificationDetail::Components(c) => c,
                other => panic!("expected components, got {other:?}"),
            };
            for class in components {
                let comp = &class.component;
                match &class.kind {
                    ComponentKind::Loaded => {
                        assert!(!comp.is_empty());
                        assert!(comp.is_loaded());
                    }
                    ComponentKind::CycleBlowup {
                        cycle_length,
                        witness,
                    } => {
                        assert_eq!(n % cycle_length, 0, "cycle length divides n");
                        verify_blowup_witness(witness).unwrap();
                        assert_eq!(witness.blown.as_ref(), comp.as_ref());
                    }
                    ComponentKind::Short { layers, vacuous } => {
                        assert!(!vacuous);
                        assert!(layers.len() < n);
                        let level = |v: VertexId| {
                            layers
                                .iter()
                                .position(|l| l.contains(&v))
                                .expect("layers cover the component")
                        };
                        let mut covered = 0;
                        for layer in layers {
                            covered += layer.len();
                        }
                        assert_eq!(covered, comp.vertex_count());
                        for e in comp.edges() {
                            assert!(level(comp.src(e)) < level(comp.tgt(e)));
                        }
                    }
                    ComponentKind::NotInjective { .. } => {
                        panic!("injective quiver classified with a failing component")
                    }
                }
                certified += 1;
            }
        }
    }
    assert!(certified > 0);
    println!("criterion 3 (structure round trip, {certified} certificates): PASS");
}

#[test]
fn criterion_4_theorem_converse_on_blowups() {
    let mut rng = rng(0x5eed_0004);
    for round in 0..100 {
        let base = random_quiver(&mut rng, 4, 5, 0.2);
        let sizes: Vec<usize> = (0..base.vertex_count())
            .map(|_| rng.random_range(1..=3))
            .collect();
        let mult = rng.random_range(1..=2);
        let witness = construct_blowup(&BlowupSpec {
            base: base.clone(),
            vertex_sizes: sizes,
            multiplicity: Multiplicity::Uniform(mult),
        })
        .unwrap();
        for n in [3usize, 4] {
            let base_verdict = is_phin_injective(&base, n).unwrap().injective();
            let blown_verdict = is_phin_injective(&witness.blown, n).unwrap().injective();
            assert_eq!(
                base_verdict, blown_verdict,
                "round {round}: blow-up changed the verdict at n={n}"
            );
        }
        let pair = blowup_retraction(&witness).unwrap();
        let section = find_section(&pair.retraction, &mut Budget::unlimited())
            .unwrap()
            .expect("blow-up retraction splits");
        verify_retraction_certificate(&pair.retraction, &section.certificate).unwrap();
    }
    println!("criterion 4 (blow-up equivalence, 100 pairs x n in {{3,4}}): PASS");
}

#[test]
fn criterion_5_section_retraction_duality() {
    let mut rng = rng(0x5eed_0005);
    let mut tested = 0usize;
    let mut sections_found = 0usize;
    let mut retractions_found = 0usize;
    while tested < 200 {
        // Mix arbitrary homomorphisms with maps around random blow-ups so
        // that positive instances occur.
        let use_blowup = rng.random_bool(0.4);
        let (candidates, towards): (Vec<QuiverMorphism>, Vec<QuiverMorphism>) = if use_blowup {
            let base = random_quiver(&mut rng, 3, 4, 0.3);
            let sizes: Vec<usize> = (0..base.vertex_count())
                .map(|_| rng.random_range(1..=2))
                .collect();
            let witness = construct_blowup(&BlowupSpec {
                base,
                vertex_sizes: sizes,
                multiplicity: Multiplicity::Uniform(1),
            })
            .unwrap();
            let pair = blowup_retraction(&witness).unwrap();
            (vec![pair.section], vec![pair.retraction])
        } else {
            let g = random_quiver(&mut rng, 4, 4, 0.3);
            let h = random_quiver(&mut rng, 5, 6, 0.3);
            let forward: Vec<_> = quiverlab::enumerate_homs(&g, &h).take(40).collect();
            let backward: Vec<_> = quiverlab::enumerate_homs(&h, &g).take(40).collect();
            let pick = |list: &[QuiverMorphism], rng: &mut rand_chacha::ChaCha8Rng| {
                if list.is_empty() {
                    None
                } else {
                    Some(list[rng.random_range(0..list.len())].clone())
                }
            };
            (
                pick(&forward, &mut rng).into_iter().collect(),
                pick(&backward, &mut rng).into_iter().collect(),
            )
        };

        for j in candidates {
            let found = find_retraction(&j, &mut Budget::unlimited()).unwrap();
            assert_eq!(
                found.is_some(),
                brute_has_left_inverse(&j),
                "left-inverse disagreement"
            );
            if let Some(r) = found {
                sections_found += 1;
                assert!(j.is_monic());
                verify_section_certificate(&j, &r.certificate).unwrap();
                assert_eq!(
                    j.then(&r.morphism).unwrap(),
                    QuiverMorphism::identity(j.domain_arc().clone())
                );
            }
            tested += 1;
        }
        for q in towards {
            let found = find_section(&q, &mut Budget::unlimited()).unwrap();
            assert_eq!(
                found.is_some(),
                brute_has_right_inverse(&q),
                "right-inverse disagreement"
            );
            if let Some(s) = found {
                retractions_found += 1;
                verify_retraction_certificate(&q, &s.certificate).unwrap();
                assert_eq!(
                    s.morphism.then(&q).unwrap(),
                    QuiverMorphism::identity(q.codomain_arc().clone())
                );
            }
            tested += 1;
        }
    }
    assert!(sections_found > 20, "positive section instances occurred");
    assert!(retractions_found > 20, "positive retraction instances occurred");
    println!(
        "criterion 5 (duality, {tested} morphisms, {sections_found} sections, {retractions_found} retractions): PASS"
    );
}

#[test]
fn criterion_6_coproduct_law() {
    let mut rng = rng(0x5eed_0006);
    for _ in 0..100 {
        let count = rng.random_range(2..=3);
        let parts: Vec<Arc<Quiver>> = (0..count)
            .map(|_| random_quiver(&mut rng, 4, 5, 0.25))
            .collect();
        let union = coproduct(&parts).quiver;
        for n in 2..=5usize {
            let whole = is_phin_injective(&union, n).unwrap().injective();
            let each = parts
                .iter()
                .all(|p| is_phin_injective(p, n).unwrap().injective());
            assert_eq!(whole, each, "coproduct law failed at n={n}");
        }
    }
    println!("criterion 6 (coproduct law, 100 unions x n in 2..=5): PASS");
}
