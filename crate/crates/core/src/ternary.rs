//! Down-sets of `P_n` as functions `T_n -> {0,1,2}`.
//!
//! `T_n` holds the words `c` of length `n` with `c(0) ∈ {0,1}`, one per pair
//! of `P_n`. `T_1 = {0, 1}` names the pairs `0 < 1` and `2 < 3`. If `c`
//! names `x < y`, then `c⌢0` names `x0 < y0`, `c⌢1` names `x1 < y1`, `c⌢2`
//! names `x2 < x3` and `c⌢3` names `y2 < y3`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{birkhoff_eta, all_down_sets, DownSet, FiniteLattice};
use crate::poset::{FinitePoset, PosetMap};
use crate::quotient::{classify, induce, induce_unchecked};
use crate::universal::UniversalSequence;

/// Pairs of `P_n` indexed by `T_n`.
#[derive(Debug, Clone)]
pub struct ComponentIndex {
    n: usize,
    /// `(lower, upper)` by rank of the naming word.
    pairs: Vec<(usize, usize)>,
    /// Rank naming each element's pair.
    rank_of: Vec<usize>,
}

impl ComponentIndex {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidLevel("levels start at 1".into()));
        }
        if n > crate::universal::MAX_DEPTH {
            return Err(Error::DepthBound {
                requested: n,
                bound: crate::universal::MAX_DEPTH,
            });
        }
        let mut pairs = vec![(0, 1), (2, 3)];
        for _ in 1..n {
            let mut next = Vec::with_capacity(pairs.len() * 4);
            for &(x, y) in &pairs {
                next.push((4 * x, 4 * y));
                next.push((4 * x + 1, 4 * y + 1));
                next.push((4 * x + 2, 4 * x + 3));
                next.push((4 * y + 2, 4 * y + 3));
            }
            pairs = next;
        }
        let mut rank_of = vec![0; 1 << (2 * n)];
        for (r, &(x, y)) in pairs.iter().enumerate() {
            rank_of[x] = r;
            rank_of[y] = r;
        }
        Ok(ComponentIndex { n, pairs, rank_of })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pair(&self, rank: usize) -> (usize, usize) {
        self.pairs[rank]
    }

    pub fn rank_of(&self, x: usize) -> usize {
        self.rank_of[x]
    }

    /// The word `c` of a rank.
    pub fn word(&self, rank: usize) -> String {
        crate::universal::word_string(rank, self.n)
    }

    pub fn rank(&self, word: &str) -> Result<usize> {
        let (r, len) = crate::universal::parse_word(word)?;
        if len != self.n || r >= self.len() {
            return Err(Error::InvalidWord(word.to_string()));
        }
        Ok(r)
    }
}

/// An element of `{0,1,2}^{T_n}`, stored by rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TernaryFunction {
    pub n: usize,
    pub values: Vec<u8>,
}

impl TernaryFunction {
    pub fn zero(n: usize) -> Self {
        TernaryFunction {
            n,
            values: vec![0; 2 << (2 * (n - 1))],
        }
    }

    pub fn new(n: usize, values: Vec<u8>) -> Result<Self> {
        if n == 0 || values.len() != 2 << (2 * (n - 1)) {
            return Err(Error::AssignmentLength {
                expected: if n == 0 { 0 } else { 2 << (2 * (n - 1)) },
                got: values.len(),
            });
        }
        if let Some(i) = values.iter().position(|&v| v > 2) {
            return Err(Error::InvalidWord(format!("value {} at rank {i}", values[i])));
        }
        Ok(TernaryFunction { n, values })
    }

    pub fn join(&self, other: &Self) -> Self {
        self.zip(other, u8::max)
    }

    pub fn meet(&self, other: &Self) -> Self {
        self.zip(other, u8::min)
    }

    fn zip(&self, other: &Self, op: impl Fn(u8, u8) -> u8) -> Self {
        TernaryFunction {
            n: self.n,
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| op(a, b)).collect(),
        }
    }

    pub fn le(&self, other: &Self) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    pub fn is_join_irreducible(&self) -> bool {
        self.values.iter().filter(|&&v| v != 0).count() == 1
    }
}

/// `ψ`: value 2 where the pair's upper end is in `a`, 1 where only the
/// lower end is.
pub fn psi(index: &ComponentIndex, a: &DownSet) -> TernaryFunction {
    let values = index
        .pairs
        .iter()
        .map(|&(x, y)| {
            if a.contains(y) {
                2
            } else if a.contains(x) {
                1
            } else {
                0
            }
        })
        .collect();
    TernaryFunction { n: index.n, values }
}

/// Inverse of [`psi`].
pub fn psi_inverse(index: &ComponentIndex, f: &TernaryFunction) -> DownSet {
    let mut bits = fixedbitset::FixedBitSet::with_capacity(index.rank_of.len());
    for (&(x, y), &v) in index.pairs.iter().zip(&f.values) {
        if v >= 1 {
            bits.insert(x);
        }
        if v == 2 {
            bits.insert(y);
        }
    }
    DownSet::from_bits_unchecked(bits)
}

/// `q(f)(c) = max{f(c⌢0), f(c⌢1), min{f(c⌢2), 1}, 2·min{f(c⌢3), 1}}`.
pub fn q_step(f: &TernaryFunction) -> Result<TernaryFunction> {
    if f.n < 2 {
        return Err(Error::InvalidLevel("q_step needs a function on T_{n+1} with n >= 1".into()));
    }
    let values = f
        .values
        .chunks(4)
        .map(|c| c[0].max(c[1]).max(c[2].min(1)).max(2 * c[3].min(1)))
        .collect();
    Ok(TernaryFunction { n: f.n - 1, values })
}

/// Outcome of [`verify_square`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareReport {
    pub checked: usize,
    pub exhaustive: bool,
    /// First down-set of `P_{n+1}` where the square fails.
    pub mismatch: Option<DownSet>,
}

/// Down-closure of a random subset with a per-sample density, so that both
/// sparse and dense down-sets show up.
pub fn random_down_set(p: &FinitePoset, rng: &mut impl Rng) -> DownSet {
    let density: f64 = rng.random::<f64>().powi(3);
    let mut s = p.empty_set();
    s.extend((0..p.len()).filter(|_| rng.random_bool(density)));
    DownSet::closure(p, &s)
}

/// Checks `q_step ∘ ψ_{n+1} = ψ_n ∘ p̂` on down-sets of `P_{n+1}`: all of
/// them when `n = 1`, otherwise `samples` seeded random ones.
pub fn verify_square(seq: &UniversalSequence, n: usize, samples: usize, seed: u64) -> Result<SquareReport> {
    let proj = seq.projection(n + 1, n)?;
    let hat = induce_unchecked(&proj);
    let upper = ComponentIndex::new(n + 1)?;
    let lower = ComponentIndex::new(n)?;
    let check = |a: &DownSet| q_step(&psi(&upper, a)).map(|f| f == psi(&lower, &hat.apply(a)));
    if n == 1 {
        let ideals = all_down_sets(proj.domain().clone())?;
        for a in ideals.ideals() {
            if !check(a)? {
                return Ok(SquareReport {
                    checked: ideals.len(),
                    exhaustive: true,
                    mismatch: Some(a.clone()),
                });
            }
        }
        return Ok(SquareReport {
            checked: ideals.len(),
            exhaustive: true,
            mismatch: None,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dom = proj.domain();
    let mut principal_first: Vec<DownSet> = vec![DownSet::empty(dom)];
    principal_first.extend((0..dom.len()).map(|x| DownSet::from_bits_unchecked(dom.down(x).clone())));
    let mut checked = 0;
    for a in principal_first.into_iter().chain((0..samples).map(|_| random_down_set(dom, &mut rng))) {
        checked += 1;
        if !check(&a)? {
            return Ok(SquareReport {
                checked,
                exhaustive: false,
                mismatch: Some(a),
            });
        }
    }
    Ok(SquareReport {
        checked,
        exhaustive: false,
        mismatch: None,
    })
}

/// Which hypotheses of the isomorphism criterion hold for a lattice map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    /// `p` restricted to `J(L)` is a quotient onto its image.
    pub restriction_quotient: bool,
    /// `p(J(L)) = J(T)`.
    pub irreducibles_onto: bool,
    /// `p` is a quotient preserving joins.
    pub join_quotient: bool,
    /// When all three hold: `p = η_T^{-1} ∘ p̂_0 ∘ η_L` pointwise.
    pub square_commutes: Option<bool>,
}

impl CriterionReport {
    pub fn holds(&self) -> bool {
        self.restriction_quotient && self.irreducibles_onto && self.join_quotient && self.square_commutes == Some(true)
    }
}

/// Tests whether a lattice map `p: L -> T` (given by its table) is
/// isomorphic to the map induced by `p|J(L): J(L) -> J(T)`.
pub fn quotient_isomorphism_criterion(l: &FiniteLattice, t: &FiniteLattice, table: &[usize]) -> Result<CriterionReport> {
    let p = PosetMap::new(l.carrier().clone(), t.carrier().clone(), table.to_vec())?;
    let bl = birkhoff_eta(l)?;
    let bt = birkhoff_eta(t)?;
    let jl = &bl.irreducibles;
    let jt = &bt.irreducibles;

    let mut image: Vec<usize> = jl.iter().map(|&x| p.apply(x)).collect();
    image.sort_unstable();
    image.dedup();
    let image_poset = Arc::new(t.carrier().restrict(&image)?);
    let jl_poset = Arc::new(l.carrier().restrict(jl)?);
    let restricted = PosetMap::new(
        jl_poset.clone(),
        image_poset,
        jl.iter()
            .map(|&x| image.binary_search(&p.apply(x)).expect("in image"))
            .collect(),
    )?;
    let restriction_quotient = classify(&restricted).is_quotient;
    let irreducibles_onto = image == *jt;
    let joins = (0..l.len()).all(|a| (0..l.len()).all(|b| p.apply(l.join(a, b)) == t.join(p.apply(a), p.apply(b))));
    let join_quotient = joins && classify(&p).is_quotient;

    let square_commutes = (restriction_quotient && irreducibles_onto && join_quotient)
        .then(|| {
            let jt_poset = Arc::new(t.carrier().restrict(jt)?);
            let p0 = PosetMap::new(
                jl_poset,
                jt_poset,
                jl.iter()
                    .map(|&x| jt.binary_search(&p.apply(x)).expect("irreducible image"))
                    .collect(),
            )?;
            let hat = induce(&p0)?;
            let mut eta_t_inv = vec![0; bt.ideals.len()];
            for (a, &e) in bt.eta.iter().enumerate() {
                eta_t_inv[e] = a;
            }
            Ok::<bool, Error>((0..l.len()).all(|a| {
                let pushed = hat.apply(bl.ideals.ideal(bl.eta[a]));
                let idx = bt.ideals.index_of(&pushed).expect("down-set of J(T)");
                eta_t_inv[idx] == p.apply(a)
            }))
        })
        .transpose()?;

    Ok(CriterionReport {
        restriction_quotient,
        irreducibles_onto,
        join_quotient,
        square_commutes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_sizes_and_children() {
        let t2 = ComponentIndex::new(2).unwrap();
        assert_eq!(t2.len(), 8);
        assert_eq!(t2.word(t2.rank("12").unwrap()), "12");
        // c = 1 names (2,3); c⌢2 names 22 < 23
        assert_eq!(t2.pair(t2.rank("12").unwrap()), (10, 11));
        assert_eq!(t2.pair(t2.rank("13").unwrap()), (14, 15));
        assert!(t2.rank("21").is_err());
    }

    #[test]
    fn index_names_the_pairs_of_the_level() {
        let seq = UniversalSequence::new(4).unwrap();
        for n in 1..=4 {
            let idx = ComponentIndex::new(n).unwrap();
            let p = seq.level(n).unwrap();
            let mut from_index: Vec<(usize, usize)> = idx.pairs.clone();
            from_index.sort_unstable();
            assert_eq!(from_index, p.strict_pairs().collect::<Vec<_>>());
        }
    }

    #[test]
    fn psi_examples() {
        let seq = UniversalSequence::new(3).unwrap();
        let idx = ComponentIndex::new(2).unwrap();
        let p2 = seq.level(2).unwrap();
        assert_eq!(psi(&idx, &DownSet::empty(&p2)), TernaryFunction::zero(2));
        let (_, y) = idx.pair(5);
        let f = psi(&idx, &DownSet::from_bits_unchecked(p2.down(y).clone()));
        assert!(f.is_join_irreducible());
        assert_eq!(f.values[5], 2);
    }

    #[test]
    fn q_step_examples() {
        assert_eq!(q_step(&TernaryFunction::zero(2)).unwrap(), TernaryFunction::zero(1));
        let idx = ComponentIndex::new(2).unwrap();
        let mut f = TernaryFunction::zero(2);
        f.values[idx.rank("02").unwrap()] = 2;
        assert_eq!(q_step(&f).unwrap().values, vec![1, 0]);
        let mut g = TernaryFunction::zero(2);
        g.values[idx.rank("10").unwrap()] = 1;
        g.values[idx.rank("13").unwrap()] = 2;
        assert_eq!(q_step(&g).unwrap().values, vec![0, 2]);
        assert!(q_step(&TernaryFunction::zero(1)).is_err());
    }

    #[test]
    fn square_on_small_levels() {
        let seq = UniversalSequence::new(3).unwrap();
        let r = verify_square(&seq, 1, 0, 0).unwrap();
        assert_eq!((r.checked, r.mismatch), (6561, None));
        let r = verify_square(&seq, 2, 200, 7).unwrap();
        assert_eq!(r.mismatch, None);
    }

    #[test]
    fn criterion_examples() {
        let c2 = Arc::new(FinitePoset::chain(2).unwrap());
        let l = FiniteLattice::of_ideals(c2).unwrap();
        let id: Vec<usize> = (0..l.len()).collect();
        assert!(quotient_isomorphism_criterion(&l, &l, &id).unwrap().holds());
        let a2 = FiniteLattice::powerset(2).unwrap();
        let collapse = vec![0, 3, 3, 3];
        let r = quotient_isomorphism_criterion(&a2, &a2, &collapse).unwrap();
        assert!(r.restriction_quotient);
        assert!(!r.irreducibles_onto);
        assert_eq!(r.square_commutes, None);
        assert!(quotient_isomorphism_criterion(&FiniteLattice::m3(), &a2, &[0, 1, 2, 3, 3]).is_err());
    }
}
