//! Seeded generators for posets, quotient maps and systems.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::lattice::DownSet;
use crate::limit::{IdealSystem, IdealThread, InverseSystem, SetSystem};
use crate::poset::{FinitePoset, PosetMap};
use crate::quotient::classify;
use crate::ternary::random_down_set;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random poset on `n` elements: a random DAG over a shuffled order, closed
/// transitively.
pub fn poset(rng: &mut impl Rng, n: usize) -> FinitePoset {
    let density: f64 = rng.random_range(0.1..0.7);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut rel = vec![vec![false; n]; n];
    for i in 0..n {
        rel[order[i]][order[i]] = true;
        for j in i + 1..n {
            if rng.random_bool(density) {
                rel[order[i]][order[j]] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if rel[i][k] {
                for j in 0..n {
                    if rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    FinitePoset::from_fn(labels, |x, y| rel[x][y]).expect("closure of a DAG is a partial order")
}

/// Random quotient from a poset of `size >= |target|` elements onto
/// `target`, by rejection sampling with a deterministic fallback.
pub fn quotient_onto(rng: &mut impl Rng, target: &Arc<FinitePoset>, size: usize) -> PosetMap {
    let t = target.len();
    assert!(size >= t, "a quotient cannot have a smaller domain");
    for _ in 0..2000 {
        let h = Arc::new(poset(rng, size));
        let mut assignment: Vec<usize> = (0..t).collect();
        assignment.extend((t..size).map(|_| rng.random_range(0..t)));
        assignment.shuffle(rng);
        let f = PosetMap::new(h, target.clone(), assignment).expect("values in range");
        if classify(&f).is_quotient {
            return f;
        }
    }
    // a copy of the target plus isolated extras is always a quotient
    let extra = size - t;
    let mut h = (**target).clone();
    if extra > 0 {
        h = FinitePoset::disjoint_union(&h, &FinitePoset::antichain(extra).expect("positive"));
    }
    let mut assignment: Vec<usize> = (0..t).collect();
    assignment.extend((0..extra).map(|_| rng.random_range(0..t)));
    PosetMap::new(Arc::new(h), target.clone(), assignment).expect("values in range")
}

/// Random system of `levels` posets of at most `max_size` elements.
pub fn inverse_system(rng: &mut impl Rng, levels: usize, max_size: usize) -> InverseSystem {
    let size = rng.random_range(1..=max_size);
    let first = Arc::new(poset(rng, size));
    let mut posets = vec![first];
    let mut steps = Vec::new();
    for _ in 1..levels {
        let prev = posets.last().expect("nonempty").clone();
        let size = rng.random_range(prev.len()..=max_size);
        let step = quotient_onto(rng, &prev, size);
        posets.push(step.domain().clone());
        steps.push(step);
    }
    InverseSystem::new(posets, steps).expect("generated steps are quotients")
}

/// Random finite sets with random maps; no level is empty.
pub fn set_system(rng: &mut impl Rng, levels: usize, max_size: usize) -> SetSystem {
    let sizes: Vec<usize> = (0..levels).map(|_| rng.random_range(1..=max_size)).collect();
    let maps = (1..levels)
        .map(|k| (0..sizes[k]).map(|_| rng.random_range(0..sizes[k - 1])).collect())
        .collect();
    SetSystem { sizes, maps }
}

/// Thread determined by a random down-set of the deepest level.
pub fn ideal_thread(rng: &mut impl Rng, system: &IdealSystem, depth: usize) -> IdealThread {
    let last = system.base().level(depth - 1);
    let a: DownSet = random_down_set(last, rng);
    system.thread_from_last(depth - 1, a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_values_are_valid() {
        let mut r = rng(1);
        for n in 1..=6 {
            assert!(poset(&mut r, n).validate().is_ok());
        }
        let t = Arc::new(poset(&mut r, 3));
        for s in 3..=5 {
            assert!(classify(&quotient_onto(&mut r, &t, s)).is_quotient);
        }
        let sys = inverse_system(&mut r, 3, 4);
        assert_eq!(sys.depth(), 3);
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = poset(&mut rng(9), 5);
        let b = poset(&mut rng(9), 5);
        assert_eq!(a, b);
    }
}
