//! Property-based invariants over randomly generated words and flags.

use proptest::prelude::*;

use weylkit::b2model::flags::{relpos_flags, Flag, FlagSet};
use weylkit::cartan::LieType;
use weylkit::weyl::{compose, invert, DEFAULT_DESCENT_CAP};
use weylkit::WeylGroup;

fn word_strategy(rank: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..rank, 0..30)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// l(uv) ≤ l(u) + l(v), with equal parity of defect, in D4.
    #[test]
    fn length_is_subadditive_with_parity(u in word_strategy(4), v in word_strategy(4)) {
        let wg = WeylGroup::for_type(LieType::D(4));
        let pu = wg.word(&u).unwrap();
        let pv = wg.word(&v).unwrap();
        let lu = wg.length(&pu);
        let lv = wg.length(&pv);
        let luv = wg.length(&compose(&pu, &pv));
        prop_assert!(luv <= lu + lv);
        prop_assert_eq!((lu + lv) % 2, luv % 2, "lengths change parity consistently");
    }

    /// l(w) = l(w⁻¹) and l(w) ≡ |word| (mod 2) in E6.
    #[test]
    fn length_symmetry_and_word_parity(word in word_strategy(6)) {
        let wg = WeylGroup::for_type(LieType::E6);
        let w = wg.word(&word).unwrap();
        prop_assert_eq!(wg.length(&w), wg.length(&invert(&w)));
        prop_assert_eq!(wg.length(&w) % 2, word.len() % 2);
    }

    /// Fingerprints are conjugation-invariant and power-compatible in D4.
    #[test]
    fn fingerprint_conjugation_invariance(w in word_strategy(4), h in word_strategy(4)) {
        let wg = WeylGroup::for_type(LieType::D(4));
        let pw = wg.word(&w).unwrap();
        let ph = wg.word(&h).unwrap();
        let fp = wg.fingerprint(&pw);
        prop_assert_eq!(wg.fingerprint(&wg.conjugate(&ph, &pw)), fp);
    }

    /// Descent reaches a length ≤ l(w) with a witness still conjugate
    /// to w (same fingerprint) in B2 and D4.
    #[test]
    fn descent_shrinks_within_the_class(word in word_strategy(4)) {
        let wg = WeylGroup::for_type(LieType::D(4));
        let w = wg.word(&word).unwrap();
        let out = wg.min_length_descent(&w, DEFAULT_DESCENT_CAP).unwrap();
        prop_assert!(out.min_length <= wg.length(&w));
        prop_assert_eq!(wg.fingerprint(&out.witness), wg.fingerprint(&w));
    }

    /// Relative position is antisymmetric on random flag pairs at q = 3:
    /// relpos(F, F′) is the inverse permutation of relpos(F′, F).
    #[test]
    fn relpos_antisymmetry_on_random_flag_pairs(a in 0usize..160, b in 0usize..160) {
        let q = 3u8;
        let fs = FlagSet::enumerate(q).unwrap();
        let fa: &Flag = &fs.flags()[a];
        let fb: &Flag = &fs.flags()[b];
        let p = relpos_flags(q, fa, fb);
        let r = relpos_flags(q, fb, fa);
        for x in 0..4 {
            prop_assert_eq!(r[p[x] as usize] as usize, x);
        }
    }
}
