//! Exhaustive class fixtures and sampling checks for the Weyl machinery.

use std::collections::{BTreeMap, HashMap, HashSet};

use weylkit::cartan::LieType;
use weylkit::weyl::{
    compose, identity, invert, perm_order, Fingerprint, DEFAULT_ELEMENT_CAP,
};
use weylkit::{WeylGroup, DEFAULT_SEED};

#[test]
fn e6_has_25_classes_with_distinct_fingerprints() {
    let wg = WeylGroup::for_type(LieType::E6);
    assert_eq!(wg.order(), 51840);
    let classes = wg.conjugacy_classes(DEFAULT_ELEMENT_CAP).unwrap();
    assert_eq!(classes.len(), 25);
    let fps: HashSet<&Fingerprint> = classes.iter().map(|c| &c.fingerprint).collect();
    assert_eq!(fps.len(), 25, "fingerprints separate all 25 classes");
    let total: u64 = classes.iter().map(|c| c.size).sum();
    assert_eq!(total, 51840);
    // W(E6) has trivial center (no −1), so the identity is the only
    // singleton class.
    let singletons: Vec<_> = classes.iter().filter(|c| c.size == 1).collect();
    assert_eq!(singletons.len(), 1);
    assert_eq!(singletons[0].min_length, 0);
}

/// D4's diagram has a 3-fold symmetry permuting the three outer nodes, so
/// some distinct conjugacy classes are indistinguishable by any invariant
/// of the reflection representation. The 13 classes carry exactly 9
/// distinct fingerprints, and every collision group has matching size and
/// minimal length (the symmetry is length-preserving).
#[test]
fn d4_fingerprint_collisions_come_from_the_diagram_symmetry() {
    let wg = WeylGroup::for_type(LieType::D(4));
    assert_eq!(wg.order(), 192);
    let classes = wg.conjugacy_classes(DEFAULT_ELEMENT_CAP).unwrap();
    assert_eq!(classes.len(), 13);
    let mut by_fp: BTreeMap<&Fingerprint, Vec<usize>> = BTreeMap::new();
    for (i, c) in classes.iter().enumerate() {
        by_fp.entry(&c.fingerprint).or_default().push(i);
    }
    assert_eq!(by_fp.len(), 9);
    // Collision multiplicities: three fingerprints shared by 2 or 3
    // classes each, covering the 13 − 9 = 4 extra classes.
    let mut multiplicities: Vec<usize> =
        by_fp.values().map(|v| v.len()).filter(|&n| n > 1).collect();
    multiplicities.sort_unstable();
    assert_eq!(multiplicities.iter().sum::<usize>() - multiplicities.len(), 4);
    for ids in by_fp.values() {
        let sizes: HashSet<u64> = ids.iter().map(|&i| classes[i].size).collect();
        let lens: HashSet<usize> = ids.iter().map(|&i| classes[i].min_length).collect();
        assert_eq!(sizes.len(), 1, "colliding classes must share size");
        assert_eq!(lens.len(), 1, "colliding classes must share min length");
    }
}

#[test]
fn length_equals_length_of_inverse_exhaustively_on_small_types() {
    for t in [
        LieType::A(1),
        LieType::A(2),
        LieType::A(3),
        LieType::B2,
        LieType::D(4),
        LieType::E6,
    ] {
        let wg = WeylGroup::for_type(t);
        for w in wg.enumerate_elements(DEFAULT_ELEMENT_CAP).unwrap() {
            assert_eq!(wg.length(&w), wg.length(&invert(&w)), "{t}");
        }
    }
}

#[test]
fn length_equals_length_of_inverse_on_sampled_e8() {
    let wg = WeylGroup::for_type(LieType::E8);
    let chain = wg.bsgs();
    let mut rng = rand_seeded();
    for _ in 0..500 {
        let w = chain.sample(&mut rng);
        assert_eq!(wg.length(&w), wg.length(&invert(&w)));
    }
}

fn rand_seeded() -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(DEFAULT_SEED)
}

/// Uniformity of the BSGS sampler on a fully checkable group: 10⁵ draws
/// from W(B2) (order 8), each element within 5σ of the expected 12500.
#[test]
fn bsgs_sampler_is_uniform_on_b2_within_5_sigma() {
    let wg = WeylGroup::for_type(LieType::B2);
    let chain = wg.bsgs();
    assert_eq!(chain.order(), 8);
    let mut rng = rand_seeded();
    let mut counts: HashMap<Vec<u16>, u64> = HashMap::new();
    let draws = 100_000u64;
    for _ in 0..draws {
        *counts.entry(chain.sample(&mut rng).to_vec()).or_default() += 1;
    }
    assert_eq!(counts.len(), 8, "all 8 elements must appear");
    // σ = sqrt(n·p·(1−p)) with p = 1/8: σ ≈ 104.6, so 5σ ≈ 523.
    let expected = draws / 8;
    for (w, count) in counts {
        let dev = count.abs_diff(expected);
        assert!(dev <= 523, "element {w:?} drawn {count} times (|Δ| = {dev} > 5σ)");
    }
}

/// Order alone does not identify the Coxeter class of W(E8): the product
/// of commuting sub-Coxeter elements on an orthogonal A4 + A2 + A1
/// subsystem (reachable through the reflection in the highest root) also
/// has order 30, but it fixes a vector, so it is not elliptic and its
/// fingerprint differs from the Coxeter class fingerprint.
#[test]
fn e8_order_30_is_not_a_single_class() {
    let wg = WeylGroup::for_type(LieType::E8);
    let coxeter = wg.coxeter_element();
    assert_eq!(perm_order(&coxeter), 30);
    let cox_fp = wg.fingerprint(&coxeter);
    assert!(cox_fp.elliptic());

    // Highest root = last positive root in (height, lex) order.
    let theta = wg.roots().num_positive() as u16 - 1;
    let s_theta = wg.reflection_perm(theta);
    // A4 block {5, 6, 7, s_theta}: nodes 5-6-7 extended by the highest
    // root (adjacent to node 7 only); A2 block {1, 3}; A1 block {0}.
    // All three blocks are mutually orthogonal.
    let mut w = identity(wg.degree());
    for i in [5usize, 6, 7] {
        w = compose(&w, wg.simple_reflection(i));
    }
    w = compose(&w, &s_theta);
    for i in [1usize, 3, 0] {
        w = compose(&w, wg.simple_reflection(i));
    }
    assert_eq!(perm_order(&w), 30, "the mixed element has order 30");
    let fp = wg.fingerprint(&w);
    assert!(!fp.elliptic(), "the mixed element fixes a vector");
    assert_ne!(fp, cox_fp);
}

/// The Coxeter class itself is homogeneous: conjugates share the
/// fingerprint, and minimal-length descent lands on length 8 (the rank)
/// from every one of them.
#[test]
fn e8_coxeter_conjugates_share_fingerprint_and_descend_to_rank_length() {
    let wg = WeylGroup::for_type(LieType::E8);
    let coxeter = wg.coxeter_element();
    let cox_fp = wg.fingerprint(&coxeter);
    let conjugates = wg.random_conjugates(&coxeter, 20, DEFAULT_SEED);
    for g in &conjugates {
        assert_eq!(wg.fingerprint(g), cox_fp);
        let outcome = wg
            .min_length_descent(g, weylkit::weyl::DEFAULT_DESCENT_CAP)
            .unwrap();
        assert_eq!(outcome.min_length, 8);
    }
}
