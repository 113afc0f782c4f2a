use std::sync::Arc;

use proptest::prelude::*;

use profinite::lattice::{all_down_sets, canonical_decomposition, DownSet};
use profinite::limit::SymbolicPoint;
use profinite::quotient::{amalgamate, induce};
use profinite::random;
use profinite::ternary::{psi, psi_inverse, q_step};
use profinite::universal::{level_le, parse_word, partner, solve_extension, truncate, word_string};
use profinite::{classify, ComponentIndex, UniversalSequence};

fn seeded_poset() -> impl Strategy<Value = (u64, usize)> {
    (any::<u64>(), 1usize..=6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_posets_are_valid((seed, n) in seeded_poset()) {
        let p = random::poset(&mut random::rng(seed), n);
        prop_assert!(p.validate().is_ok());
        prop_assert_eq!(p.len(), n);
    }

    #[test]
    fn decomposition_reconstructs((seed, n) in seeded_poset()) {
        let p = Arc::new(random::poset(&mut random::rng(seed), n));
        for q in all_down_sets(p.clone()).unwrap().ideals() {
            let parts = canonical_decomposition(&p, q).unwrap();
            let union = parts.iter().fold(DownSet::empty(&p), |acc, a| acc.union(a));
            prop_assert_eq!(&union, q);
        }
    }

    #[test]
    fn amalgam_squares_commute(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let a = Arc::new(random::poset(&mut rng, 3));
        let f = random::quotient_onto(&mut rng, &a, 4);
        let g = random::quotient_onto(&mut rng, &a, 3);
        let am = amalgamate(&f, &g).unwrap();
        prop_assert!(am.commutes(&f, &g));
        prop_assert!(classify(&am.q).is_quotient && classify(&am.p).is_quotient);
    }

    #[test]
    fn induced_maps_preserve_joins(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let t = Arc::new(random::poset(&mut rng, 3));
        let f = random::quotient_onto(&mut rng, &t, 5);
        let hat = induce(&f).unwrap();
        let ideals = all_down_sets(f.domain().clone()).unwrap();
        for a in ideals.ideals() {
            for b in ideals.ideals() {
                prop_assert_eq!(hat.apply(&a.union(b)), hat.apply(a).union(&hat.apply(b)));
            }
        }
    }

    #[test]
    fn words_round_trip(x in 0usize..4096) {
        let s = word_string(x, 6);
        prop_assert_eq!(parse_word(&s).unwrap(), (x, 6));
        prop_assert_eq!(partner(6, partner(6, x)), x);
        prop_assert!(level_le(6, x, partner(6, x)) || level_le(6, partner(6, x), x));
    }

    #[test]
    fn truncation_is_monotone(x in 0usize..4096, y in 0usize..4096, k in 1usize..6) {
        if level_le(6, x, y) {
            prop_assert!(level_le(k, truncate(x, 6, k), truncate(y, 6, k)));
        }
    }

    #[test]
    fn extension_triangle_commutes(seed in any::<u64>(), size in 4usize..=6) {
        let seq = UniversalSequence::new(6).unwrap();
        let p1 = seq.level(1).unwrap();
        let p = random::quotient_onto(&mut random::rng(seed), &p1, size);
        let ext = solve_extension(&seq, &p, 1).unwrap();
        for x in 0..ext.g.domain().len() {
            prop_assert_eq!(p.apply(ext.g.apply(x)), truncate(x, ext.m, 1));
        }
    }

    #[test]
    fn psi_round_trips(seed in any::<u64>()) {
        let seq = UniversalSequence::new(3).unwrap();
        let idx = ComponentIndex::new(3).unwrap();
        let p3 = seq.level(3).unwrap();
        let a = profinite::ternary::random_down_set(&p3, &mut random::rng(seed));
        let f = psi(&idx, &a);
        prop_assert_eq!(psi_inverse(&idx, &f), a);
        q_step(&f).unwrap();
    }

    #[test]
    fn symbolic_syntax_round_trips(prefix in proptest::collection::vec(0u8..4, 0..6), tail in 0u8..4) {
        let x = SymbolicPoint::new(prefix, tail).unwrap();
        let parsed: SymbolicPoint = x.to_string().parse().unwrap();
        prop_assert_eq!(parsed, x);
    }
}
