//! Shared inputs for the benchmarks in `benches/`.

use std::sync::Arc;

use profinite::{random, FinitePoset, PosetMap, UniversalSequence};

/// A seeded quotient from a 6-element poset onto `P_1`.
pub fn quotient_onto_p1(seq: &UniversalSequence, seed: u64) -> PosetMap {
    let p1 = seq.level(1).expect("level 1");
    random::quotient_onto(&mut random::rng(seed), &p1, 6)
}

/// A seeded 5-element poset.
pub fn poset5(seed: u64) -> Arc<FinitePoset> {
    Arc::new(random::poset(&mut random::rng(seed), 5))
}
