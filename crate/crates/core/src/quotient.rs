//! Quotient maps: classification, sticks covers, amalgamation and the maps
//! they induce on down-set lattices.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{all_down_sets, canonical_generators, DownSet, IdealLattice, DOWN_SET_BOUND};
use crate::poset::{FinitePoset, PosetMap};

/// Threshold on `|O(Q)|` below which [`induce`] tabulates its action.
pub const EAGER_TABLE_BOUND: usize = 10_000;

/// Why a map fails to be a quotient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `x <= y` in the domain but `f(x) <= f(y)` fails.
    NotMonotone { x: usize, y: usize },
    /// Codomain element with empty preimage.
    Missed { element: usize },
    /// `u <= v` in the codomain with no `x <= y` above it.
    NoLift { u: usize, v: usize },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::NotMonotone { x, y } => write!(f, "{x} <= {y} but their images are not related"),
            Witness::Missed { element } => write!(f, "codomain element {element} has no preimage"),
            Witness::NoLift { u, v } => write!(f, "{u} <= {v} has no related preimage pair"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapClassification {
    pub is_homomorphism: bool,
    pub is_onto: bool,
    pub is_quotient: bool,
    /// First failure in the order monotone, onto, lifting.
    pub witness: Option<Witness>,
}

pub fn classify(f: &PosetMap) -> MapClassification {
    let a = f.domain();
    let b = f.codomain();
    let nb = b.len();
    let mut not_monotone = None;
    let mut lifted = FixedBitSet::with_capacity(nb * nb);
    for (x, y) in a.relation_pairs() {
        let (u, v) = (f.apply(x), f.apply(y));
        if b.le(u, v) {
            lifted.insert(u * nb + v);
        } else if not_monotone.is_none() {
            not_monotone = Some(Witness::NotMonotone { x, y });
        }
    }
    let mut hit = FixedBitSet::with_capacity(nb);
    hit.extend(f.assignment().iter().copied());
    let missed = (0..nb).find(|&u| !hit.contains(u)).map(|element| Witness::Missed { element });
    let no_lift = b
        .strict_pairs()
        .find(|&(u, v)| !lifted.contains(u * nb + v))
        .map(|(u, v)| Witness::NoLift { u, v });
    let is_homomorphism = not_monotone.is_none();
    let is_onto = missed.is_none();
    let is_quotient = is_homomorphism && is_onto && no_lift.is_none();
    MapClassification {
        is_homomorphism,
        is_onto,
        is_quotient,
        witness: not_monotone.or(missed).or(no_lift),
    }
}

pub fn require_quotient(f: &PosetMap) -> Result<()> {
    let c = classify(f);
    match c.witness {
        None => Ok(()),
        Some(w) => Err(Error::NotQuotient(w)),
    }
}

/// Disjoint union of `k` two-element chains; component `i` is `2i < 2i+1`.
pub fn sticks(k: usize) -> Result<FinitePoset> {
    if k == 0 {
        return Err(Error::ZeroSize);
    }
    let labels = (0..2 * k).map(|i| i.to_string()).collect();
    FinitePoset::from_fn(labels, |x, y| x == y || (x % 2 == 0 && y == x + 1))
}

/// A quotient from a disjoint union of 2-chains onto a poset.
#[derive(Clone, Debug)]
pub struct SticksCover {
    pub count: usize,
    pub map: PosetMap,
}

/// One component per strict pair `a < b` in lexicographic order, then one
/// per isolated point.
pub fn sticks_cover(c: Arc<FinitePoset>) -> Result<SticksCover> {
    if c.is_empty() {
        return Err(Error::ZeroSize);
    }
    let mut assignment = Vec::new();
    for (a, b) in c.strict_pairs() {
        assignment.extend([a, b]);
    }
    for x in c.isolated_points() {
        assignment.extend([x, x]);
    }
    let count = assignment.len() / 2;
    let map = PosetMap::new(Arc::new(sticks(count)?), c, assignment)?;
    Ok(SticksCover { count, map })
}

/// Output of [`amalgamate`]: `f ∘ f' ∘ q = g ∘ g' ∘ p` on `D`.
#[derive(Clone, Debug)]
pub struct Amalgam {
    pub d: Arc<FinitePoset>,
    pub q: PosetMap,
    pub p: PosetMap,
    pub f_prime: PosetMap,
    pub g_prime: PosetMap,
}

impl Amalgam {
    pub fn commutes(&self, f: &PosetMap, g: &PosetMap) -> bool {
        let left = self.q.then(&self.f_prime).and_then(|m| m.then(f));
        let right = self.p.then(&self.g_prime).and_then(|m| m.then(g));
        matches!((left, right), (Ok(l), Ok(r)) if l.assignment() == r.assignment())
    }
}

/// Completes the span `B --f--> A <--g-- C` to a commuting square.
///
/// `D` is the disjoint union of the sticks covers `B'` and `C'`. `q` is the
/// identity on `B'` and sends each component of `C'` to the least element
/// (equal images) or least component (distinct images) of `B'` over the same
/// values in `A`; `p` is built the same way with the roles swapped.
pub fn amalgamate(f: &PosetMap, g: &PosetMap) -> Result<Amalgam> {
    require_quotient(f)?;
    require_quotient(g)?;
    if !f.codomain().same_order(g.codomain()) {
        return Err(Error::CodomainMismatch);
    }
    let bc = sticks_cover(f.domain().clone())?;
    let cc = sticks_cover(g.domain().clone())?;
    let b_prime = bc.map.domain().clone();
    let c_prime = cc.map.domain().clone();
    let ff: Vec<usize> = (0..b_prime.len()).map(|x| f.apply(bc.map.apply(x))).collect();
    let gg: Vec<usize> = (0..c_prime.len()).map(|x| g.apply(cc.map.apply(x))).collect();
    let d = Arc::new(FinitePoset::disjoint_union(&b_prime, &c_prime));
    let nb = b_prime.len();

    let q_tail = route(&gg, &ff)?;
    let p_head = route(&ff, &gg)?;
    let q_assign: Vec<usize> = (0..nb).chain(q_tail).collect();
    let p_assign: Vec<usize> = p_head.into_iter().chain(0..c_prime.len()).collect();
    Ok(Amalgam {
        q: PosetMap::new(d.clone(), b_prime, q_assign)?,
        p: PosetMap::new(d.clone(), c_prime, p_assign)?,
        d,
        f_prime: bc.map,
        g_prime: cc.map,
    })
}

/// For each component `(2i, 2i+1)` of the source sticks, pick where it goes
/// in the target sticks so that values in the common codomain agree.
fn route(source: &[usize], target: &[usize]) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(source.len());
    for comp in source.chunks(2) {
        let (alpha, beta) = (comp[0], comp[1]);
        if alpha == beta {
            let x = target
                .iter()
                .position(|&v| v == alpha)
                .ok_or(Error::NotQuotient(Witness::Missed { element: alpha }))?;
            out.extend([x, x]);
        } else {
            let i = target
                .chunks(2)
                .position(|t| t[0] == alpha && t[1] == beta)
                .ok_or(Error::NotQuotient(Witness::NoLift { u: alpha, v: beta }))?;
            out.extend([2 * i, 2 * i + 1]);
        }
    }
    Ok(out)
}

/// The map `O(Q) -> O(P)` induced by a quotient `p: Q -> P`.
#[derive(Clone, Debug)]
pub struct InducedMap {
    base: PosetMap,
    table: Option<Arc<IdealTable>>,
}

/// Tabulated action on enumerated lattices.
#[derive(Debug)]
pub struct IdealTable {
    pub source: IdealLattice,
    pub target: IdealLattice,
    pub values: Vec<usize>,
}

pub fn induce(p: &PosetMap) -> Result<InducedMap> {
    require_quotient(p)?;
    Ok(induce_unchecked(p))
}

/// Like [`induce`] but never tabulates.
pub fn induce_lazy(p: &PosetMap) -> Result<InducedMap> {
    require_quotient(p)?;
    Ok(InducedMap {
        base: p.clone(),
        table: None,
    })
}

/// Builds the induced map without re-checking that `p` is a quotient.
pub(crate) fn induce_unchecked(p: &PosetMap) -> InducedMap {
    let mut m = InducedMap {
        base: p.clone(),
        table: None,
    };
    if p.domain().len() <= DOWN_SET_BOUND && p.codomain().len() <= DOWN_SET_BOUND {
        if let (Ok(source), Ok(target)) = (all_down_sets(p.domain().clone()), all_down_sets(p.codomain().clone())) {
            if source.len() <= EAGER_TABLE_BOUND {
                let values = source
                    .ideals()
                    .iter()
                    .map(|a| target.index_of(&m.apply(a)).expect("image is a down-set"))
                    .collect();
                m.table = Some(Arc::new(IdealTable { source, target, values }));
            }
        }
    }
    m
}

impl InducedMap {
    pub fn base(&self) -> &PosetMap {
        &self.base
    }

    pub fn table(&self) -> Option<&IdealTable> {
        self.table.as_deref()
    }

    /// Union of `↓p(x)` over the maximal elements `x` of `a`.
    pub fn apply(&self, a: &DownSet) -> DownSet {
        let q = self.base.domain();
        let target = self.base.codomain();
        let mut out = target.empty_set();
        for x in canonical_generators(q, a) {
            out.union_with(target.down(self.base.apply(x)));
        }
        DownSet::from_bits_unchecked(out)
    }

    /// Action on ideal indices, when tabulated.
    pub fn apply_index(&self, i: usize) -> Option<usize> {
        self.table.as_ref().map(|t| t.values[i])
    }
}

/// Counterexample to the meet criterion: `t <= p(x)`, `t <= p(y)` and no
/// `z <= x, y` has `t <= p(z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeetWitness {
    pub t: usize,
    pub x: usize,
    pub y: usize,
}

/// Decides whether the induced map preserves binary meets by checking,
/// for all `x, y`, that `↓p(x) ∩ ↓p(y) ⊆ ⋃ {↓p(z) : z <= x, z <= y}`.
pub fn meet_preservation_criterion(p: &PosetMap) -> Result<Option<MeetWitness>> {
    require_quotient(p)?;
    let q = p.domain();
    let target = p.codomain();
    for x in 0..q.len() {
        for y in x + 1..q.len() {
            let mut common = target.down(p.apply(x)).clone();
            common.intersect_with(target.down(p.apply(y)));
            let mut covered = target.empty_set();
            for z in q.down(x).intersection(q.down(y)) {
                covered.union_with(target.down(p.apply(z)));
            }
            if let Some(t) = common.difference(&covered).next() {
                return Ok(Some(MeetWitness { t, x, y }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::principal;

    fn arc(p: FinitePoset) -> Arc<FinitePoset> {
        Arc::new(p)
    }

    #[test]
    fn classify_examples() {
        let a2 = arc(FinitePoset::antichain(2).unwrap());
        let pt = arc(FinitePoset::point());
        let c2 = arc(FinitePoset::chain(2).unwrap());
        assert!(classify(&PosetMap::constant(a2.clone(), pt, 0).unwrap()).is_quotient);
        assert!(classify(&PosetMap::identity(c2.clone())).is_quotient);
        let bij = classify(&PosetMap::new(a2, c2.clone(), vec![0, 1]).unwrap());
        assert!(bij.is_homomorphism && bij.is_onto && !bij.is_quotient);
        assert_eq!(bij.witness, Some(Witness::NoLift { u: 0, v: 1 }));
        let flip = classify(&PosetMap::new(c2.clone(), c2, vec![1, 0]).unwrap());
        assert_eq!(flip.witness, Some(Witness::NotMonotone { x: 0, y: 1 }));
    }

    #[test]
    fn sticks_examples() {
        let s = sticks_cover(arc(FinitePoset::point())).unwrap();
        assert_eq!((s.count, s.map.assignment()), (1, &[0, 0][..]));
        assert_eq!(sticks_cover(arc(FinitePoset::chain(2).unwrap())).unwrap().count, 1);
        let s3 = sticks_cover(arc(FinitePoset::chain(3).unwrap())).unwrap();
        assert_eq!(s3.count, 3);
        assert_eq!(s3.map.assignment(), &[0, 1, 0, 2, 1, 2]);
        assert!(classify(&s3.map).is_quotient);
    }

    #[test]
    fn amalgamate_points_and_chains() {
        let pt = arc(FinitePoset::point());
        let id = PosetMap::identity(pt.clone());
        let am = amalgamate(&id, &id).unwrap();
        assert_eq!(am.d.len(), 4);
        assert!(am.commutes(&id, &id));
        let c2 = arc(FinitePoset::chain(2).unwrap());
        let f = PosetMap::constant(c2.clone(), pt.clone(), 0).unwrap();
        let am = amalgamate(&f, &f).unwrap();
        assert!(am.commutes(&f, &f));
        for m in [&am.q, &am.p, &am.f_prime, &am.g_prime] {
            assert!(classify(m).is_quotient);
        }
        let bad = PosetMap::new(arc(FinitePoset::antichain(2).unwrap()), c2, vec![0, 1]).unwrap();
        assert!(amalgamate(&bad, &bad).is_err());
    }

    #[test]
    fn induced_example_without_meets() {
        let a2 = arc(FinitePoset::antichain(2).unwrap());
        let pt = arc(FinitePoset::point());
        let p = PosetMap::constant(a2.clone(), pt.clone(), 0).unwrap();
        let ph = induce(&p).unwrap();
        let d1 = principal(&a2, 0).unwrap();
        let d2 = principal(&a2, 1).unwrap();
        assert!(ph.apply(&d1.intersection(&d2)).is_zero());
        assert_eq!(ph.apply(&d1).intersection(&ph.apply(&d2)), principal(&pt, 0).unwrap());
        assert_eq!(
            meet_preservation_criterion(&p).unwrap(),
            Some(MeetWitness { t: 0, x: 0, y: 1 })
        );
        let c2 = arc(FinitePoset::chain(2).unwrap());
        let to_pt = PosetMap::constant(c2.clone(), pt, 0).unwrap();
        assert_eq!(meet_preservation_criterion(&to_pt).unwrap(), None);
        assert_eq!(meet_preservation_criterion(&PosetMap::identity(c2)).unwrap(), None);
    }

    #[test]
    fn identity_induces_identity() {
        let v = arc(FinitePoset::new(["a", "b", "c"].map(String::from).to_vec(), &[(0, 2), (1, 2)]).unwrap());
        let ph = induce(&PosetMap::identity(v)).unwrap();
        let t = ph.table().unwrap();
        assert_eq!(t.values, (0..t.source.len()).collect::<Vec<_>>());
    }
}
