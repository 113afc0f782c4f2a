//! Finite posets stored as dense relation matrices.
//!
//! Element `i` of a poset is identified with its index; labels are carried
//! only for I/O. `up[x]` holds every `y` with `x <= y`, `down[x]` every `y`
//! with `y <= x`.

mod catalog;
mod iso;
mod map;

use std::collections::HashSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use catalog::all_posets;
pub use iso::{find_isomorphism, is_isomorphic, ISO_BOUND};
pub use map::PosetMap;

/// First axiom violation found while validating a relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    OutOfRange { pair: (usize, usize) },
    DuplicateLabel { first: usize, second: usize },
    Reflexivity { element: usize },
    Antisymmetry { pair: (usize, usize) },
    Transitivity { missing: (usize, usize), via: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OutOfRange { pair } => write!(f, "pair {pair:?} is out of range"),
            Violation::DuplicateLabel { first, second } => {
                write!(f, "elements {first} and {second} share a label")
            }
            Violation::Reflexivity { element } => write!(f, "{element} is not related to itself"),
            Violation::Antisymmetry { pair } => {
                write!(f, "antisymmetry fails on ({}, {})", pair.0, pair.1)
            }
            Violation::Transitivity { missing, via } => write!(
                f,
                "transitivity fails: ({}, {}) is missing (via {via})",
                missing.0, missing.1
            ),
        }
    }
}

/// Outcome of [`validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ValidationReport {
    Ok,
    Violated(Violation),
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        matches!(self, ValidationReport::Ok)
    }
}

/// Checks the partial order axioms on a raw relation.
///
/// `relation` is taken literally: reflexive pairs are not added here. Checks
/// run in a fixed order (range, labels, reflexivity, antisymmetry,
/// transitivity) and the first failure wins.
pub fn validate(labels: &[String], relation: &[(usize, usize)]) -> ValidationReport {
    let n = labels.len();
    for &(a, b) in relation {
        if a >= n || b >= n {
            return ValidationReport::Violated(Violation::OutOfRange { pair: (a, b) });
        }
    }
    let mut rows = vec![FixedBitSet::with_capacity(n); n];
    for &(a, b) in relation {
        rows[a].insert(b);
    }
    match check_rows(labels, &rows) {
        Some(v) => ValidationReport::Violated(v),
        None => ValidationReport::Ok,
    }
}

fn check_rows(labels: &[String], up: &[FixedBitSet]) -> Option<Violation> {
    let n = labels.len();
    let mut seen = std::collections::HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        if let Some(&first) = seen.get(l) {
            return Some(Violation::DuplicateLabel { first, second: i });
        }
        seen.insert(l, i);
    }
    for (x, row) in up.iter().enumerate() {
        if !row.contains(x) {
            return Some(Violation::Reflexivity { element: x });
        }
    }
    for x in 0..n {
        for y in up[x].ones() {
            if y > x && up[y].contains(x) {
                return Some(Violation::Antisymmetry { pair: (x, y) });
            }
        }
    }
    for x in 0..n {
        for y in up[x].ones() {
            if let Some(z) = up[y].difference(&up[x]).next() {
                return Some(Violation::Transitivity {
                    missing: (x, z),
                    via: y,
                });
            }
        }
    }
    None
}

/// A finite partially ordered set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    labels: Vec<String>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinitePoset")
            .field("labels", &self.labels)
            .field("strict", &self.strict_pairs().collect::<Vec<_>>())
            .finish()
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

impl FinitePoset {
    /// Builds a poset from labels and order pairs. Reflexive pairs are
    /// added; nothing else is inferred.
    pub fn new(labels: Vec<String>, relation: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut full: Vec<(usize, usize)> = relation.to_vec();
        full.extend((0..n).map(|i| (i, i)));
        match validate(&labels, &full) {
            ValidationReport::Ok => {}
            ValidationReport::Violated(v) => return Err(Error::InvalidPoset(v)),
        }
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (a, b) in full {
            up[a].insert(b);
        }
        Ok(Self::from_up_rows(labels, up))
    }

    /// Builds from labels and a predicate `le(x, y)`; the predicate must
    /// already describe a partial order.
    pub fn from_fn(labels: Vec<String>, le: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = labels.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (x, row) in up.iter_mut().enumerate() {
            for y in 0..n {
                if le(x, y) {
                    row.insert(y);
                }
            }
        }
        if let Some(v) = check_rows(&labels, &up) {
            return Err(Error::InvalidPoset(v));
        }
        Ok(Self::from_up_rows(labels, up))
    }

    pub(crate) fn from_up_rows(labels: Vec<String>, up: Vec<FixedBitSet>) -> Self {
        let n = labels.len();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (x, row) in up.iter().enumerate() {
            for y in row.ones() {
                down[y].insert(x);
            }
        }
        FinitePoset { labels, up, down }
    }

    /// The one-element poset.
    pub fn point() -> Self {
        Self::chain(1).expect("positive size")
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroSize);
        }
        Self::from_fn(default_labels(n), |x, y| x <= y)
    }

    /// `n` pairwise incomparable elements.
    pub fn antichain(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroSize);
        }
        Self::from_fn(default_labels(n), |x, y| x == y)
    }

    /// Every element of `a` lies below every element of `b`.
    pub fn linear_sum(a: &FinitePoset, b: &FinitePoset) -> FinitePoset {
        let na = a.len();
        Self::combine(a, b, |x, y| match (x < na, y < na) {
            (true, true) => a.le(x, y),
            (false, false) => b.le(x - na, y - na),
            (true, false) => true,
            (false, true) => false,
        })
    }

    /// Side-by-side copies of `a` and `b` with no relations between them.
    pub fn disjoint_union(a: &FinitePoset, b: &FinitePoset) -> FinitePoset {
        let na = a.len();
        Self::combine(a, b, |x, y| match (x < na, y < na) {
            (true, true) => a.le(x, y),
            (false, false) => b.le(x - na, y - na),
            _ => false,
        })
    }

    fn combine(a: &FinitePoset, b: &FinitePoset, le: impl Fn(usize, usize) -> bool) -> FinitePoset {
        let left: HashSet<&String> = a.labels.iter().collect();
        let clash = b.labels.iter().any(|l| left.contains(l));
        let labels = if clash {
            a.labels
                .iter()
                .map(|l| format!("0.{l}"))
                .chain(b.labels.iter().map(|l| format!("1.{l}")))
                .collect()
        } else {
            a.labels.iter().chain(&b.labels).cloned().collect()
        };
        Self::from_fn(labels, le).expect("sum of posets is a poset")
    }

    /// Induced sub-poset on `elements`, in the given order.
    pub fn restrict(&self, elements: &[usize]) -> Result<FinitePoset> {
        for &e in elements {
            self.check(e)?;
        }
        let labels = elements.iter().map(|&e| self.labels[e].clone()).collect();
        Self::from_fn(labels, |x, y| self.le(elements[x], elements[y]))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub(crate) fn check(&self, x: usize) -> Result<()> {
        if x < self.len() {
            Ok(())
        } else {
            Err(Error::ForeignElement {
                index: x,
                size: self.len(),
            })
        }
    }

    pub(crate) fn check_set(&self, set: &FixedBitSet) -> Result<()> {
        match set.ones().find(|&x| x >= self.len()) {
            Some(x) => Err(Error::ForeignElement {
                index: x,
                size: self.len(),
            }),
            None => Ok(()),
        }
    }

    #[inline]
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.le(x, y)
    }

    #[inline]
    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.le(x, y) || self.le(y, x)
    }

    /// `{y : x <= y}`
    pub fn up(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    /// `{y : y <= x}`
    pub fn down(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    /// Number of pairs `(x, y)` with `x <= y`, reflexive pairs included.
    pub fn relation_size(&self) -> usize {
        self.up.iter().map(|r| r.count_ones(..)).sum()
    }

    /// All `(x, y)` with `x < y`, in lexicographic order.
    pub fn strict_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |x| self.up[x].ones().filter(move |&y| y != x).map(move |y| (x, y)))
    }

    /// All `(x, y)` with `x <= y`, in lexicographic order.
    pub fn relation_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |x| self.up[x].ones().map(move |y| (x, y)))
    }

    /// Elements comparable with nothing but themselves.
    pub fn isolated_points(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.up[x].count_ones(..) == 1 && self.down[x].count_ones(..) == 1)
            .collect()
    }

    pub fn full_set(&self) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        s.insert_range(..);
        s
    }

    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.len())
    }

    /// Maximal elements of `q`.
    pub fn maximal_elements(&self, q: &FixedBitSet) -> Result<FixedBitSet> {
        self.check_set(q)?;
        let mut out = self.empty_set();
        for x in q.ones() {
            if self.up[x].intersection(q).all(|y| y == x) {
                out.insert(x);
            }
        }
        Ok(out)
    }

    /// Minimal elements of `q`.
    pub fn minimal_elements(&self, q: &FixedBitSet) -> Result<FixedBitSet> {
        self.check_set(q)?;
        let mut out = self.empty_set();
        for x in q.ones() {
            if self.down[x].intersection(q).all(|y| y == x) {
                out.insert(x);
            }
        }
        Ok(out)
    }

    /// Literal 2-component predicate: `x < y`, nothing below `x`, nothing
    /// above `y`. In a chain of three this accepts the outer pair.
    pub fn is_two_component(&self, x: usize, y: usize) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.lt(x, y) && self.down[x].count_ones(..) == 1 && self.up[y].count_ones(..) == 1)
    }

    /// Pairs `x < y` that form a connected block on their own: each is
    /// comparable only with the other.
    pub fn two_components(&self) -> Vec<(usize, usize)> {
        self.strict_pairs()
            .filter(|&(x, y)| {
                self.down[x].count_ones(..) == 1
                    && self.up[y].count_ones(..) == 1
                    && self.up[x].count_ones(..) == 2
                    && self.down[y].count_ones(..) == 2
            })
            .collect()
    }

    /// Downward closure of a set.
    pub fn down_closure(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = self.empty_set();
        for x in set.ones() {
            out.union_with(&self.down[x]);
        }
        out
    }

    /// `Ok` if `set` is downward closed, otherwise the first offending pair.
    pub fn check_down_set(&self, set: &FixedBitSet) -> Result<()> {
        self.check_set(set)?;
        for x in set.ones() {
            if let Some(m) = self.down[x].difference(set).next() {
                return Err(Error::NotDownSet { member: x, missing: m });
            }
        }
        Ok(())
    }

    pub fn is_down_set(&self, set: &FixedBitSet) -> bool {
        self.check_down_set(set).is_ok()
    }

    /// Covering pairs of the Hasse diagram.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.strict_pairs()
            .filter(|&(x, y)| {
                !self.up[x]
                    .intersection(&self.down[y])
                    .any(|z| z != x && z != y)
            })
            .collect()
    }

    /// Graphviz rendering of the Hasse diagram, edges pointing upward.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph poset {\n  rankdir=BT;\n");
        for (i, l) in self.labels.iter().enumerate() {
            s.push_str(&format!("  n{i} [label={l:?}];\n"));
        }
        for (x, y) in self.covers() {
            s.push_str(&format!("  n{x} -> n{y};\n"));
        }
        s.push_str("}\n");
        s
    }

    /// Re-checks the axioms on this value.
    pub fn validate(&self) -> ValidationReport {
        match check_rows(&self.labels, &self.up) {
            Some(v) => ValidationReport::Violated(v),
            None => ValidationReport::Ok,
        }
    }

    /// Posets with the same size and relation, ignoring labels.
    pub fn same_order(&self, other: &FinitePoset) -> bool {
        self.up == other.up
    }
}

/// Builds a bitset of the given capacity from indices.
pub fn bitset(capacity: usize, items: impl IntoIterator<Item = usize>) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(capacity);
    s.extend(items);
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: &[&str]) -> Vec<String> {
        n.iter().map(|s| s.to_string()).collect()
    }

    fn v_poset() -> FinitePoset {
        FinitePoset::new(names(&["a", "b", "c"]), &[(0, 2), (1, 2)]).unwrap()
    }

    #[test]
    fn validate_reports_first_axiom() {
        let l = names(&["a", "b"]);
        let r = [(0, 0), (1, 1), (0, 1), (1, 0)];
        assert_eq!(
            validate(&l, &r),
            ValidationReport::Violated(Violation::Antisymmetry { pair: (0, 1) })
        );
        let l = names(&["a", "b", "c"]);
        let r = [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)];
        assert_eq!(
            validate(&l, &r),
            ValidationReport::Violated(Violation::Transitivity {
                missing: (0, 2),
                via: 1
            })
        );
        assert!(FinitePoset::chain(3).unwrap().validate().is_ok());
        let dup = names(&["a", "a"]);
        assert!(matches!(
            validate(&dup, &[(0, 0), (1, 1)]),
            ValidationReport::Violated(Violation::DuplicateLabel { .. })
        ));
        assert!(matches!(
            validate(&l, &[(0, 0)]),
            ValidationReport::Violated(Violation::Reflexivity { element: 1 })
        ));
    }

    #[test]
    fn chains_and_antichains() {
        assert_eq!(FinitePoset::chain(2).unwrap().relation_size(), 3);
        assert_eq!(FinitePoset::antichain(2).unwrap().relation_size(), 2);
        assert_eq!(FinitePoset::chain(1).unwrap(), FinitePoset::antichain(1).unwrap());
        assert_eq!(FinitePoset::chain(0), Err(Error::ZeroSize));
        assert_eq!(FinitePoset::antichain(0), Err(Error::ZeroSize));
    }

    #[test]
    fn sums() {
        let c2 = FinitePoset::chain(2).unwrap();
        let a2 = FinitePoset::antichain(2).unwrap();
        assert!(is_isomorphic(&FinitePoset::linear_sum(&c2, &c2), &FinitePoset::chain(4).unwrap()).unwrap());
        assert!(is_isomorphic(
            &FinitePoset::disjoint_union(&a2, &a2),
            &FinitePoset::antichain(4).unwrap()
        )
        .unwrap());
        let p = FinitePoset::point();
        assert!(is_isomorphic(&FinitePoset::linear_sum(&p, &p), &c2).unwrap());
        let s = FinitePoset::linear_sum(&c2, &c2);
        assert_eq!(s.labels(), &names(&["0.0", "0.1", "1.0", "1.1"])[..]);
    }

    #[test]
    fn maximal() {
        let c3 = FinitePoset::chain(3).unwrap();
        assert_eq!(c3.maximal_elements(&c3.full_set()).unwrap(), bitset(3, [2]));
        let a3 = FinitePoset::antichain(3).unwrap();
        assert_eq!(a3.maximal_elements(&a3.full_set()).unwrap(), a3.full_set());
        let v = v_poset();
        assert_eq!(v.maximal_elements(&bitset(3, [0, 1])).unwrap(), bitset(3, [0, 1]));
        assert!(matches!(
            v.maximal_elements(&bitset(5, [4])),
            Err(Error::ForeignElement { index: 4, .. })
        ));
    }

    #[test]
    fn two_component_readings() {
        let c2 = FinitePoset::chain(2).unwrap();
        assert!(c2.is_two_component(0, 1).unwrap());
        let u = FinitePoset::disjoint_union(&c2, &c2);
        assert_eq!(u.two_components(), vec![(0, 1), (2, 3)]);
        let c3 = FinitePoset::chain(3).unwrap();
        assert!(c3.is_two_component(0, 2).unwrap());
        assert!(!c3.is_two_component(0, 1).unwrap());
        assert!(c3.two_components().is_empty());
    }

    #[test]
    fn hasse_and_dot() {
        let c3 = FinitePoset::chain(3).unwrap();
        assert_eq!(c3.covers(), vec![(0, 1), (1, 2)]);
        let dot = c3.to_dot();
        assert!(dot.contains("n0 -> n1;"));
        assert!(!dot.contains("n0 -> n2;"));
    }

    #[test]
    fn down_sets() {
        let v = v_poset();
        assert!(v.is_down_set(&bitset(3, [0, 1])));
        assert_eq!(
            v.check_down_set(&bitset(3, [2])),
            Err(Error::NotDownSet { member: 2, missing: 0 })
        );
        assert_eq!(v.down_closure(&bitset(3, [2])), v.full_set());
        assert_eq!(v.isolated_points(), Vec::<usize>::new());
    }

    #[test]
    fn restrict_keeps_order() {
        let c3 = FinitePoset::chain(3).unwrap();
        let r = c3.restrict(&[2, 0]).unwrap();
        assert!(r.le(1, 0));
        assert!(!r.le(0, 1));
    }
}
