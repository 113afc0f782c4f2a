//! Down-set lattices, finite lattices and Birkhoff duality.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::poset::{FinitePoset, PosetMap};

/// Default bound on `|P|` for [`all_down_sets`].
pub const DOWN_SET_BOUND: usize = 16;
/// Bound on `|L|` for lattices carried with explicit join/meet tables.
pub const TABLE_BOUND: usize = 10_000;

/// A downward closed set of poset elements, as a bitset over indices.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct DownSet(FixedBitSet);

impl fmt::Debug for DownSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.ones()).finish()
    }
}

impl Deref for DownSet {
    type Target = FixedBitSet;
    fn deref(&self) -> &FixedBitSet {
        &self.0
    }
}

impl DownSet {
    /// Validates that `bits` is a down-set of `p`.
    pub fn new(p: &FinitePoset, bits: FixedBitSet) -> Result<Self> {
        p.check_down_set(&bits)?;
        let mut norm = p.empty_set();
        norm.extend(bits.ones());
        Ok(DownSet(norm))
    }

    pub(crate) fn from_bits_unchecked(bits: FixedBitSet) -> Self {
        DownSet(bits)
    }

    pub fn empty(p: &FinitePoset) -> Self {
        DownSet(p.empty_set())
    }

    pub fn full(p: &FinitePoset) -> Self {
        DownSet(p.full_set())
    }

    /// Down-closure of an arbitrary set.
    pub fn closure(p: &FinitePoset, set: &FixedBitSet) -> Self {
        DownSet(p.down_closure(set))
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.0
    }

    pub fn into_bits(self) -> FixedBitSet {
        self.0
    }

    pub fn union(&self, other: &DownSet) -> DownSet {
        let mut b = self.0.clone();
        b.union_with(&other.0);
        DownSet(b)
    }

    pub fn intersection(&self, other: &DownSet) -> DownSet {
        let mut b = self.0.clone();
        b.intersect_with(&other.0);
        DownSet(b)
    }

    pub fn is_subset_of(&self, other: &DownSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn size(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_clear()
    }
}

/// `↓x`
pub fn principal(p: &FinitePoset, x: usize) -> Result<DownSet> {
    p.check(x)?;
    Ok(DownSet(p.down(x).clone()))
}

/// Maximal elements `x_1..x_k` of `q`, so that `q = ↓x_1 ∪ ... ∪ ↓x_k`.
pub fn canonical_generators(p: &FinitePoset, q: &DownSet) -> Vec<usize> {
    q.ones()
        .filter(|&x| p.up(x).intersection(q).all(|y| y == x))
        .collect()
}

/// The principal down-sets of the maximal elements of `q`, in index order.
pub fn canonical_decomposition(p: &FinitePoset, q: &DownSet) -> Result<Vec<DownSet>> {
    p.check_down_set(q)?;
    Ok(canonical_generators(p, q)
        .into_iter()
        .map(|x| DownSet(p.down(x).clone()))
        .collect())
}

/// Order on bitsets used for lattice indices: by size, then by value read
/// as a binary number.
pub fn ideal_order(a: &FixedBitSet, b: &FixedBitSet) -> Ordering {
    a.count_ones(..)
        .cmp(&b.count_ones(..))
        .then_with(|| a.as_slice().iter().rev().cmp(b.as_slice().iter().rev()))
}

/// The lattice `O(P)` of all down-sets of `P`, ordered by inclusion.
#[derive(Clone)]
pub struct IdealLattice {
    parent: Arc<FinitePoset>,
    ideals: Vec<DownSet>,
    index: HashMap<DownSet, usize>,
}

impl fmt::Debug for IdealLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdealLattice")
            .field("parent_size", &self.parent.len())
            .field("ideals", &self.ideals.len())
            .finish()
    }
}

/// Enumerates `O(P)` with the default size bound.
pub fn all_down_sets(p: Arc<FinitePoset>) -> Result<IdealLattice> {
    all_down_sets_bounded(p, DOWN_SET_BOUND)
}

/// Breadth-first closure from the empty set, adding one minimal element of
/// the complement at a time.
pub fn all_down_sets_bounded(p: Arc<FinitePoset>, bound: usize) -> Result<IdealLattice> {
    if p.len() > bound {
        return Err(Error::SizeBound {
            what: "poset",
            size: p.len(),
            bound,
        });
    }
    let n = p.len();
    let mut strict_down: Vec<FixedBitSet> = (0..n).map(|x| p.down(x).clone()).collect();
    for (x, d) in strict_down.iter_mut().enumerate() {
        d.set(x, false);
    }
    let start = p.empty_set();
    let mut seen: HashMap<FixedBitSet, ()> = HashMap::new();
    seen.insert(start.clone(), ());
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        for x in 0..n {
            if !cur.contains(x) && strict_down[x].is_subset(&cur) {
                let mut next = cur.clone();
                next.insert(x);
                if seen.insert(next.clone(), ()).is_none() {
                    queue.push_back(next);
                }
            }
        }
    }
    let mut ideals: Vec<FixedBitSet> = seen.into_keys().collect();
    ideals.sort_by(ideal_order);
    let ideals: Vec<DownSet> = ideals.into_iter().map(DownSet).collect();
    let index = ideals.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
    Ok(IdealLattice { parent: p, ideals, index })
}

impl IdealLattice {
    pub fn parent(&self) -> &Arc<FinitePoset> {
        &self.parent
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn ideals(&self) -> &[DownSet] {
        &self.ideals
    }

    pub fn ideal(&self, i: usize) -> &DownSet {
        &self.ideals[i]
    }

    pub fn index_of(&self, d: &DownSet) -> Option<usize> {
        self.index.get(d).copied()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.ideals.len() - 1
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.index[&self.ideals[a].union(&self.ideals[b])]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.index[&self.ideals[a].intersection(&self.ideals[b])]
    }

    pub fn principal_index(&self, x: usize) -> usize {
        self.index[&DownSet(self.parent.down(x).clone())]
    }

    /// Inclusion order on ideal indices as a poset. Labels list members.
    pub fn to_poset(&self) -> FinitePoset {
        let n = self.ideals.len();
        let labels = self
            .ideals
            .iter()
            .map(|d| {
                let items: Vec<String> = d.ones().map(|x| self.parent.label(x).to_string()).collect();
                format!("{{{}}}", items.join(","))
            })
            .collect();
        let up = (0..n)
            .map(|i| {
                let mut row = FixedBitSet::with_capacity(n);
                row.extend((i..n).filter(|&j| self.ideals[i].is_subset_of(&self.ideals[j])));
                row
            })
            .collect();
        FinitePoset::from_up_rows(labels, up)
    }

    /// The same lattice with explicit join and meet tables.
    pub fn to_lattice(&self) -> Result<FiniteLattice> {
        let n = self.len();
        if n > TABLE_BOUND {
            return Err(Error::SizeBound {
                what: "lattice",
                size: n,
                bound: TABLE_BOUND,
            });
        }
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                join[a * n + b] = self.join(a, b);
                meet[a * n + b] = self.meet(a, b);
            }
        }
        Ok(FiniteLattice {
            carrier: Arc::new(self.to_poset()),
            join,
            meet,
        })
    }
}

/// `x ↦ ↓x` from `P` into the inclusion poset of `O(P)`.
pub fn principal_embedding(lattice: &IdealLattice) -> PosetMap {
    let target = Arc::new(lattice.to_poset());
    let assignment = (0..lattice.parent.len()).map(|x| lattice.principal_index(x)).collect();
    PosetMap::new(lattice.parent.clone(), target, assignment).expect("indices in range")
}

/// A finite lattice: an order plus join and meet tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    carrier: Arc<FinitePoset>,
    join: Vec<usize>,
    meet: Vec<usize>,
}

impl FiniteLattice {
    /// Computes joins and meets of a poset, failing on the first pair
    /// without a least upper or greatest lower bound.
    pub fn from_poset(p: Arc<FinitePoset>) -> Result<Self> {
        let n = p.len();
        if n == 0 {
            return Err(Error::ZeroSize);
        }
        if n > TABLE_BOUND {
            return Err(Error::SizeBound {
                what: "lattice",
                size: n,
                bound: TABLE_BOUND,
            });
        }
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let upper = p.up(a).intersection(p.up(b)).collect::<Vec<_>>();
                let lub = upper
                    .iter()
                    .copied()
                    .find(|&u| upper.iter().all(|&w| p.le(u, w)))
                    .ok_or(Error::NotALattice(a, b, "join"))?;
                let lower = p.down(a).intersection(p.down(b)).collect::<Vec<_>>();
                let glb = lower
                    .iter()
                    .copied()
                    .find(|&l| lower.iter().all(|&w| p.le(w, l)))
                    .ok_or(Error::NotALattice(a, b, "meet"))?;
                join[a * n + b] = lub;
                join[b * n + a] = lub;
                meet[a * n + b] = glb;
                meet[b * n + a] = glb;
            }
        }
        Ok(FiniteLattice { carrier: p, join, meet })
    }

    /// `O(P)` with tables.
    pub fn of_ideals(p: Arc<FinitePoset>) -> Result<Self> {
        all_down_sets(p)?.to_lattice()
    }

    /// Subsets of a `k`-element set.
    pub fn powerset(k: usize) -> Result<Self> {
        Self::of_ideals(Arc::new(FinitePoset::antichain(k)?))
    }

    /// The diamond: bottom, three atoms, top.
    pub fn m3() -> Self {
        let labels = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
        let p = FinitePoset::new(labels, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 4), (2, 4), (3, 4)])
            .expect("valid order");
        Self::from_poset(Arc::new(p)).expect("lattice")
    }

    /// The pentagon: `0 < a < c < 1`, `0 < b < 1`.
    pub fn n5() -> Self {
        let labels = ["0", "a", "c", "b", "1"].map(String::from).to_vec();
        let p = FinitePoset::new(
            labels,
            &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 4), (2, 4), (3, 4)],
        )
        .expect("valid order");
        Self::from_poset(Arc::new(p)).expect("lattice")
    }

    pub fn carrier(&self) -> &Arc<FinitePoset> {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.carrier.le(a, b)
    }

    pub fn bottom(&self) -> usize {
        (0..self.len())
            .find(|&x| self.carrier.up(x).count_ones(..) == self.len())
            .expect("finite lattices are bounded")
    }

    pub fn top(&self) -> usize {
        (0..self.len())
            .find(|&x| self.carrier.down(x).count_ones(..) == self.len())
            .expect("finite lattices are bounded")
    }

    /// First triple violating `x∧(y∨z) = (x∧y)∨(x∧z)`.
    pub fn check_distributive(&self) -> Result<()> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in y + 1..n {
                    if self.meet(x, self.join(y, z)) != self.join(self.meet(x, y), self.meet(x, z)) {
                        return Err(Error::NonDistributive(x, y, z));
                    }
                }
            }
        }
        Ok(())
    }

    /// Nonzero elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        let bottom = self.bottom();
        (0..self.len())
            .filter(|&x| x != bottom && self.lower_covers(x).len() == 1)
            .collect()
    }

    fn lower_covers(&self, x: usize) -> Vec<usize> {
        let p = &self.carrier;
        p.down(x)
            .ones()
            .filter(|&y| y != x && p.up(y).intersection(p.down(x)).all(|z| z == y || z == x))
            .collect()
    }

    /// Elements covering the bottom.
    pub fn atoms(&self) -> Vec<usize> {
        self.lower_covers_of_bottom()
    }

    fn lower_covers_of_bottom(&self) -> Vec<usize> {
        let bottom = self.bottom();
        (0..self.len())
            .filter(|&x| x != bottom && self.lower_covers(x) == [bottom])
            .collect()
    }

    /// Every nonzero element lies above some atom.
    pub fn is_atomic(&self) -> bool {
        let atoms = self.atoms();
        let bottom = self.bottom();
        (0..self.len()).all(|x| x == bottom || atoms.iter().any(|&a| self.le(a, x)))
    }
}

/// Result of [`birkhoff_eta`]: `J(L)`, the lattice `O(J(L))` and
/// `eta(a) = {x ∈ J(L) : x <= a}` as ideal indices.
#[derive(Clone, Debug)]
pub struct Birkhoff {
    pub irreducibles: Vec<usize>,
    pub ideals: IdealLattice,
    pub eta: Vec<usize>,
}

pub fn birkhoff_eta(l: &FiniteLattice) -> Result<Birkhoff> {
    l.check_distributive()?;
    let irreducibles = l.join_irreducibles();
    let j = Arc::new(l.carrier.restrict(&irreducibles)?);
    let ideals = all_down_sets_bounded(j.clone(), usize::MAX)?;
    let eta = (0..l.len())
        .map(|a| {
            let mut bits = j.empty_set();
            bits.extend((0..irreducibles.len()).filter(|&i| l.le(irreducibles[i], a)));
            ideals
                .index_of(&DownSet(bits))
                .expect("eta lands in down-sets")
        })
        .collect();
    Ok(Birkhoff {
        irreducibles,
        ideals,
        eta,
    })
}

impl Birkhoff {
    /// `eta` is a bijection with `a <= b ⇔ eta(a) ⊆ eta(b)`.
    pub fn is_isomorphism(&self, l: &FiniteLattice) -> bool {
        let n = l.len();
        if self.ideals.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &e in &self.eta {
            if std::mem::replace(&mut hit[e], true) {
                return false;
            }
        }
        (0..n).all(|a| {
            (0..n).all(|b| l.le(a, b) == self.ideals.ideal(self.eta[a]).is_subset_of(self.ideals.ideal(self.eta[b])))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{all_posets, bitset, is_isomorphic};

    fn v_poset() -> FinitePoset {
        let l = ["a", "b", "c"].map(String::from).to_vec();
        FinitePoset::new(l, &[(0, 2), (1, 2)]).unwrap()
    }

    /// Down-sets are in bijection with antichains (their maximal elements).
    fn antichain_count(p: &FinitePoset) -> usize {
        let n = p.len();
        (0u32..1 << n)
            .filter(|m| {
                let s: Vec<usize> = (0..n).filter(|i| m >> i & 1 == 1).collect();
                s.iter().all(|&a| s.iter().all(|&b| a == b || !p.comparable(a, b)))
            })
            .count()
    }

    #[test]
    fn down_set_counts() {
        assert_eq!(all_down_sets(Arc::new(FinitePoset::chain(3).unwrap())).unwrap().len(), 4);
        assert_eq!(all_down_sets(Arc::new(FinitePoset::antichain(2).unwrap())).unwrap().len(), 4);
        for n in 1..=5 {
            for p in all_posets(n).unwrap() {
                let expected = antichain_count(&p);
                assert_eq!(all_down_sets(Arc::new(p)).unwrap().len(), expected);
            }
        }
        let big = Arc::new(FinitePoset::antichain(17).unwrap());
        assert!(matches!(all_down_sets(big), Err(Error::SizeBound { .. })));
    }

    #[test]
    fn ordering_is_by_size_then_value() {
        let l = all_down_sets(Arc::new(FinitePoset::antichain(2).unwrap())).unwrap();
        let sets: Vec<Vec<usize>> = l.ideals().iter().map(|d| d.ones().collect()).collect();
        assert_eq!(sets, vec![vec![], vec![0], vec![1], vec![0, 1]]);
    }

    #[test]
    fn principal_examples() {
        let c3 = FinitePoset::chain(3).unwrap();
        assert_eq!(*principal(&c3, 2).unwrap(), c3.full_set());
        let a2 = FinitePoset::antichain(2).unwrap();
        assert_eq!(*principal(&a2, 0).unwrap(), bitset(2, [0]));
        let v = v_poset();
        assert_eq!(*principal(&v, 2).unwrap(), v.full_set());
        assert!(principal(&v, 3).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let v = v_poset();
        let ab = DownSet::new(&v, bitset(3, [0, 1])).unwrap();
        let parts = canonical_decomposition(&v, &ab).unwrap();
        assert_eq!(parts, vec![principal(&v, 0).unwrap(), principal(&v, 1).unwrap()]);
        let all = DownSet::full(&v);
        assert_eq!(canonical_decomposition(&v, &all).unwrap(), vec![principal(&v, 2).unwrap()]);
        assert!(canonical_decomposition(&v, &DownSet::empty(&v)).unwrap().is_empty());
    }

    #[test]
    fn irreducibles_and_atoms_of_powerset() {
        let l = FiniteLattice::powerset(2).unwrap();
        // carrier indices follow ideal order: {}, {0}, {1}, {0,1}
        assert_eq!(l.join_irreducibles(), vec![1, 2]);
        assert_eq!(l.atoms(), vec![1, 2]);
        let c = FiniteLattice::from_poset(Arc::new(FinitePoset::chain(4).unwrap())).unwrap();
        assert_eq!(c.join_irreducibles(), vec![1, 2, 3]);
        assert_eq!(c.atoms(), vec![1]);
    }

    #[test]
    fn irreducibles_match_definition() {
        for n in 1..=4 {
            for p in all_posets(n).unwrap() {
                let l = FiniteLattice::of_ideals(Arc::new(p)).unwrap();
                let bottom = l.bottom();
                let by_def: Vec<usize> = (0..l.len())
                    .filter(|&x| {
                        x != bottom
                            && (0..l.len()).all(|a| (0..l.len()).all(|b| l.join(a, b) != x || a == x || b == x))
                    })
                    .collect();
                assert_eq!(l.join_irreducibles(), by_def);
            }
        }
    }

    #[test]
    fn non_distributive_detected() {
        assert!(matches!(FiniteLattice::m3().check_distributive(), Err(Error::NonDistributive(..))));
        assert!(matches!(FiniteLattice::n5().check_distributive(), Err(Error::NonDistributive(..))));
        assert!(birkhoff_eta(&FiniteLattice::m3()).is_err());
    }

    #[test]
    fn not_a_lattice() {
        let a2 = Arc::new(FinitePoset::antichain(2).unwrap());
        assert!(matches!(FiniteLattice::from_poset(a2), Err(Error::NotALattice(0, 1, "join"))));
    }

    #[test]
    fn birkhoff_recovers_poset() {
        for n in 1..=4 {
            for p in all_posets(n).unwrap() {
                let l = FiniteLattice::of_ideals(Arc::new(p.clone())).unwrap();
                let b = birkhoff_eta(&l).unwrap();
                assert!(b.is_isomorphism(&l));
                let j = l.carrier().restrict(&b.irreducibles).unwrap();
                assert!(is_isomorphic(&j, &p).unwrap());
            }
        }
    }

    #[test]
    fn embedding_is_order_embedding() {
        let v = Arc::new(v_poset());
        let l = all_down_sets(v.clone()).unwrap();
        let e = principal_embedding(&l);
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(v.le(x, y), e.codomain().le(e.apply(x), e.apply(y)));
            }
        }
    }
}
