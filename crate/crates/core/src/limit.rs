//! Finite-depth views of inverse limits: threads through systems of posets,
//! eventually constant points of `{0,1,2,3}^ω`, and threads of down-sets.
//!
//! Levels are indexed from 0 here; in the P-system level 0 is `P_1`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{canonical_generators, DownSet};
use crate::poset::{FinitePoset, PosetMap};
use crate::quotient::{induce_unchecked, require_quotient, InducedMap};
use crate::universal::{LevelMapFamily, UniversalSequence};

/// Levels `L_0, L_1, ...` with quotient bonding maps `L_{k+1} -> L_k`.
#[derive(Debug, Clone)]
pub struct InverseSystem {
    levels: Vec<Arc<FinitePoset>>,
    steps: Vec<PosetMap>,
}

impl InverseSystem {
    pub fn new(levels: Vec<Arc<FinitePoset>>, steps: Vec<PosetMap>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::EmptyLevel { index: 0 });
        }
        if steps.len() + 1 != levels.len() {
            return Err(Error::InvalidSystem {
                index: steps.len(),
                reason: format!("{} levels need {} steps", levels.len(), levels.len() - 1),
            });
        }
        for (k, s) in steps.iter().enumerate() {
            if !s.domain().same_order(&levels[k + 1]) || !s.codomain().same_order(&levels[k]) {
                return Err(Error::InvalidSystem {
                    index: k,
                    reason: "step does not connect consecutive levels".into(),
                });
            }
            require_quotient(s)?;
        }
        Ok(InverseSystem { levels, steps })
    }

    /// `P_1 <- P_2 <- ... <- P_depth` with truncations.
    pub fn universal(seq: &UniversalSequence, depth: usize) -> Result<Self> {
        let levels = (1..=depth).map(|n| seq.level(n)).collect::<Result<Vec<_>>>()?;
        let steps = (1..depth).map(|n| seq.projection(n + 1, n)).collect::<Result<Vec<_>>>()?;
        Ok(InverseSystem { levels, steps })
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, k: usize) -> &FinitePoset {
        &self.levels[k]
    }

    pub fn level_arc(&self, k: usize) -> &Arc<FinitePoset> {
        &self.levels[k]
    }

    /// Bonding map `L_{k+1} -> L_k`.
    pub fn step(&self, k: usize) -> &PosetMap {
        &self.steps[k]
    }

    /// Image of `x ∈ L_n` in `L_k`, `k <= n`.
    pub fn project(&self, n: usize, k: usize, mut x: usize) -> usize {
        for j in (k..n).rev() {
            x = self.steps[j].apply(x);
        }
        x
    }

    /// First `depth` levels.
    pub fn truncated(&self, depth: usize) -> Result<Self> {
        if depth == 0 || depth > self.depth() {
            return Err(Error::DepthMismatch(depth, self.depth()));
        }
        Ok(InverseSystem {
            levels: self.levels[..depth].to_vec(),
            steps: self.steps[..depth - 1].to_vec(),
        })
    }
}

/// `x_0, x_1, ...` with each `x_{k+1}` mapped to `x_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Thread {
    pub entries: Vec<usize>,
}

impl Thread {
    pub fn new(system: &InverseSystem, entries: Vec<usize>) -> Result<Self> {
        if entries.len() > system.depth() {
            return Err(Error::DepthMismatch(entries.len(), system.depth()));
        }
        for (k, &x) in entries.iter().enumerate() {
            system.level(k).check(x)?;
            if k > 0 && system.step(k - 1).apply(x) != entries[k - 1] {
                return Err(Error::IncompatibleThread { index: k });
            }
        }
        Ok(Thread { entries })
    }

    pub fn depth(&self) -> usize {
        self.entries.len()
    }
}

/// Coordinatewise comparison; `None` means incomparable.
pub fn thread_order(system: &InverseSystem, x: &Thread, y: &Thread) -> Result<Option<Ordering>> {
    if x.depth() != y.depth() {
        return Err(Error::DepthMismatch(x.depth(), y.depth()));
    }
    if x.depth() > system.depth() {
        return Err(Error::DepthMismatch(x.depth(), system.depth()));
    }
    let mut le = true;
    let mut ge = true;
    for (k, (&a, &b)) in x.entries.iter().zip(&y.entries).enumerate() {
        le &= system.level(k).le(a, b);
        ge &= system.level(k).le(b, a);
    }
    Ok(match (le, ge) {
        (true, true) => Some(Ordering::Equal),
        (true, false) => Some(Ordering::Less),
        (false, true) => Some(Ordering::Greater),
        (false, false) => None,
    })
}

/// Finite sets `G_0, G_1, ...` with maps `G_{k+1} -> G_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetSystem {
    pub sizes: Vec<usize>,
    /// `maps[k][x]` is the image in `G_k` of `x ∈ G_{k+1}`.
    pub maps: Vec<Vec<usize>>,
}

impl SetSystem {
    fn check(&self) -> Result<()> {
        if let Some(index) = self.sizes.iter().position(|&s| s == 0) {
            return Err(Error::EmptyLevel { index });
        }
        if self.maps.len() + 1 != self.sizes.len() {
            return Err(Error::InvalidSystem {
                index: self.maps.len(),
                reason: "need one map per consecutive pair of levels".into(),
            });
        }
        for (k, m) in self.maps.iter().enumerate() {
            if m.len() != self.sizes[k + 1] || m.iter().any(|&v| v >= self.sizes[k]) {
                return Err(Error::InvalidSystem {
                    index: k,
                    reason: "map is not a total function between the levels".into(),
                });
            }
        }
        Ok(())
    }

    /// `V_k`: images in `G_k` of the deepest level.
    pub fn stable_sets(&self) -> Result<Vec<FixedBitSet>> {
        self.check()?;
        let last = self.sizes.len() - 1;
        let mut v = vec![FixedBitSet::new(); self.sizes.len()];
        v[last] = FixedBitSet::with_capacity(self.sizes[last]);
        v[last].insert_range(..);
        for k in (0..last).rev() {
            let mut s = FixedBitSet::with_capacity(self.sizes[k]);
            s.extend(v[k + 1].ones().map(|x| self.maps[k][x]));
            v[k] = s;
        }
        Ok(v)
    }
}

/// A compatible choice `x_k ∈ G_k` at every level, taken through the
/// stable sets so that no choice is a dead end.
pub fn solve_thread(system: &SetSystem) -> Result<Thread> {
    let v = system.stable_sets()?;
    let mut entries = vec![v[0].ones().next().expect("stable sets are nonempty")];
    for k in 1..v.len() {
        let prev = entries[k - 1];
        let x = v[k]
            .ones()
            .find(|&x| system.maps[k - 1][x] == prev)
            .expect("stable sets map onto each other");
        entries.push(x);
    }
    Ok(Thread { entries })
}

/// First-fit choice ignoring deeper levels; `None` on a dead end.
pub fn naive_thread(system: &SetSystem) -> Result<Option<Thread>> {
    system.check()?;
    let mut entries = vec![0];
    for k in 1..system.sizes.len() {
        let prev = entries[k - 1];
        match (0..system.sizes[k]).find(|&x| system.maps[k - 1][x] == prev) {
            Some(x) => entries.push(x),
            None => return Ok(None),
        }
    }
    Ok(Some(Thread { entries }))
}

/// `prefix · tail^ω`, normalized so the prefix never ends in `tail`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolicPoint {
    prefix: Vec<u8>,
    tail: u8,
}

impl SymbolicPoint {
    pub fn new(mut prefix: Vec<u8>, tail: u8) -> Result<Self> {
        if tail > 3 || prefix.iter().any(|&d| d > 3) {
            return Err(Error::InvalidWord(format!("{prefix:?}({tail})")));
        }
        while prefix.last() == Some(&tail) {
            prefix.pop();
        }
        Ok(SymbolicPoint { prefix, tail })
    }

    pub fn prefix(&self) -> &[u8] {
        &self.prefix
    }

    pub fn tail(&self) -> u8 {
        self.tail
    }

    #[inline]
    pub fn digit(&self, k: usize) -> u8 {
        self.prefix.get(k).copied().unwrap_or(self.tail)
    }

    /// First `n` digits as a word index of `P_n`.
    pub fn truncate(&self, n: usize) -> usize {
        (0..n).fold(0, |acc, k| acc * 4 + self.digit(k) as usize)
    }

    /// Isolated points dense in the cylinder over `prefix`.
    pub fn isolated_witness(prefix: &[u8]) -> Result<Self> {
        Self::new(prefix.to_vec(), 2)
    }
}

impl fmt::Display for SymbolicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.prefix {
            write!(f, "{d}")?;
        }
        write!(f, "({})", self.tail)
    }
}

impl std::str::FromStr for SymbolicPoint {
    type Err = Error;

    /// `012(2)` is `0 1 2 2 2 ...`; a bare word means tail 0.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidWord(s.to_string());
        let digits = |t: &str| {
            t.chars()
                .map(|c| c.to_digit(4).map(|d| d as u8).ok_or_else(bad))
                .collect::<Result<Vec<u8>>>()
        };
        match s.split_once('(') {
            Some((head, rest)) => {
                let tail = rest.strip_suffix(')').ok_or_else(bad)?;
                let t = digits(tail)?;
                if t.len() != 1 {
                    return Err(bad());
                }
                Self::new(digits(head)?, t[0])
            }
            None => Self::new(digits(s)?, 0),
        }
    }
}

fn symbolic_le(x: &SymbolicPoint, y: &SymbolicPoint) -> bool {
    if x == y {
        return true;
    }
    let w = x.prefix.len().max(y.prefix.len());
    let tails_binary_equal = x.tail == y.tail && x.tail <= 1;
    let agree_binary = |from: usize| tails_binary_equal && (from..w).all(|k| x.digit(k) == y.digit(k) && x.digit(k) <= 1);
    let clause_ii = x.digit(0) == 0 && y.digit(0) == 1 && agree_binary(1);
    // a split at n >= w would force digit 2 into the binary tail
    let clause_i = (0..w).any(|n| {
        (0..n).all(|k| x.digit(k) == y.digit(k)) && x.digit(n) == 2 && y.digit(n) == 3 && agree_binary(n + 1)
    });
    clause_i || clause_ii
}

/// Order of `{0,1,2,3}^ω` on eventually constant points.
pub fn symbolic_compare(x: &SymbolicPoint, y: &SymbolicPoint) -> Option<Ordering> {
    match (symbolic_le(x, y), symbolic_le(y, x)) {
        (true, true) => Some(Ordering::Equal),
        (true, false) => Some(Ordering::Less),
        (false, true) => Some(Ordering::Greater),
        (false, false) => None,
    }
}

/// Points that could be comparable with `x`: one digit changed, either
/// `2 <-> 3` anywhere up to the first tail position or `0 <-> 1` at the
/// front.
fn neighbour_candidates(x: &SymbolicPoint) -> Vec<SymbolicPoint> {
    let len = x.prefix.len();
    let mut out = Vec::new();
    for n in 0..=len {
        let d = x.digit(n);
        let flipped = match (n, d) {
            (_, 2) => 3,
            (_, 3) => 2,
            (0, 0) => 1,
            (0, 1) => 0,
            _ => continue,
        };
        let mut prefix: Vec<u8> = (0..=len.max(n)).map(|k| x.digit(k)).collect();
        prefix[n] = flipped;
        out.push(SymbolicPoint::new(prefix, x.tail).expect("digits in range"));
    }
    out
}

/// No other point is comparable with `x`.
pub fn is_isolated(x: &SymbolicPoint) -> bool {
    neighbour_candidates(x)
        .iter()
        .all(|y| y == x || symbolic_compare(x, y).is_none())
}

/// Down-set levels over an inverse system, with the induced bonding maps.
#[derive(Debug, Clone)]
pub struct IdealSystem {
    base: InverseSystem,
    steps: Vec<InducedMap>,
}

impl IdealSystem {
    pub fn new(base: InverseSystem) -> Self {
        let steps = base.steps.iter().map(induce_unchecked).collect();
        IdealSystem { base, steps }
    }

    pub fn base(&self) -> &InverseSystem {
        &self.base
    }

    pub fn depth(&self) -> usize {
        self.base.depth()
    }

    pub fn step(&self, k: usize) -> &InducedMap {
        &self.steps[k]
    }

    /// Image of a down-set of `L_n` in `L_k`.
    pub fn project(&self, n: usize, k: usize, a: &DownSet) -> DownSet {
        let mut cur = a.clone();
        for j in (k..n).rev() {
            cur = self.steps[j].apply(&cur);
        }
        cur
    }

    /// Thread determined by a down-set of the deepest level `n`.
    pub fn thread_from_last(&self, n: usize, last: DownSet) -> IdealThread {
        let mut entries = vec![last];
        for k in (0..n).rev() {
            let prev = self.steps[k].apply(entries.last().expect("nonempty"));
            entries.push(prev);
        }
        entries.reverse();
        IdealThread { entries }
    }
}

/// `a_0, a_1, ...` with `a_k` a down-set of `L_k` and each `a_{k+1}`
/// mapped onto `a_k` by the induced bonding map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IdealThread {
    pub entries: Vec<DownSet>,
}

impl IdealThread {
    pub fn new(system: &IdealSystem, entries: Vec<DownSet>) -> Result<Self> {
        if entries.is_empty() || entries.len() > system.depth() {
            return Err(Error::DepthMismatch(entries.len(), system.depth()));
        }
        for (k, a) in entries.iter().enumerate() {
            system.base.level(k).check_down_set(a)?;
            if a.len() != system.base.level(k).len() {
                return Err(Error::ForeignElement {
                    index: a.len(),
                    size: system.base.level(k).len(),
                });
            }
            if k > 0 && system.steps[k - 1].apply(a) != entries[k - 1] {
                return Err(Error::IncompatibleThread { index: k });
            }
        }
        Ok(IdealThread { entries })
    }

    pub fn depth(&self) -> usize {
        self.entries.len()
    }

    pub fn zero(system: &IdealSystem, depth: usize) -> Self {
        IdealThread {
            entries: (0..depth).map(|k| DownSet::empty(system.base.level(k))).collect(),
        }
    }

    pub fn top(system: &IdealSystem, depth: usize) -> Self {
        IdealThread {
            entries: (0..depth).map(|k| DownSet::full(system.base.level(k))).collect(),
        }
    }

    /// `(↓x_0, ↓x_1, ...)` for a point thread `x`.
    pub fn principal(system: &IdealSystem, x: &Thread) -> Self {
        IdealThread {
            entries: x
                .entries
                .iter()
                .enumerate()
                .map(|(k, &e)| DownSet::from_bits_unchecked(system.base.level(k).down(e).clone()))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|a| a.is_zero())
    }

    pub fn le(&self, other: &IdealThread) -> bool {
        self.depth() == other.depth() && self.entries.iter().zip(&other.entries).all(|(a, b)| a.is_subset_of(b))
    }

    /// Underlying point thread if every coordinate is principal.
    pub fn as_principal(&self, system: &IdealSystem) -> Option<Thread> {
        let mut pts = Vec::new();
        for (k, a) in self.entries.iter().enumerate() {
            match canonical_generators(system.base.level(k), a).as_slice() {
                [x] => pts.push(*x),
                _ => return None,
            }
        }
        Thread::new(&system.base, pts).ok()
    }

    pub fn truncated(&self, depth: usize) -> IdealThread {
        IdealThread {
            entries: self.entries[..depth].to_vec(),
        }
    }
}

fn same_depth(a: &IdealThread, b: &IdealThread) -> Result<()> {
    if a.depth() == b.depth() {
        Ok(())
    } else {
        Err(Error::DepthMismatch(a.depth(), b.depth()))
    }
}

/// Coordinatewise union.
pub fn ideal_sup(a: &IdealThread, b: &IdealThread) -> Result<IdealThread> {
    same_depth(a, b)?;
    Ok(IdealThread {
        entries: a.entries.iter().zip(&b.entries).map(|(x, y)| x.union(y)).collect(),
    })
}

/// Greatest lower bound among threads of the same depth.
///
/// The deepest coordinate is the set `G` of points of `a_N ∩ b_N` whose
/// every projection lands in the corresponding `a_n ∩ b_n`; earlier
/// coordinates are its images. This is what choosing the greatest feasible
/// coordinate level by level produces.
pub fn ideal_inf(system: &IdealSystem, a: &IdealThread, b: &IdealThread) -> Result<IdealThread> {
    same_depth(a, b)?;
    let n = a.depth();
    if n == 0 || n > system.depth() {
        return Err(Error::DepthMismatch(n, system.depth()));
    }
    let common: Vec<DownSet> = a.entries.iter().zip(&b.entries).map(|(x, y)| x.intersection(y)).collect();
    let last = n - 1;
    let mut g = system.base.level(last).empty_set();
    g.extend(
        common[last]
            .ones()
            .filter(|&x| (0..last).all(|k| common[k].contains(system.base.project(last, k, x)))),
    );
    Ok(system.thread_from_last(last, DownSet::from_bits_unchecked(g)))
}

/// Infima computed at each depth from `n` up to the inputs' depth and
/// truncated back to `n`.
#[derive(Debug, Clone)]
pub struct LookaheadReport {
    pub results: Vec<IdealThread>,
    pub stable: bool,
}

pub fn ideal_inf_lookahead(system: &IdealSystem, a: &IdealThread, b: &IdealThread, n: usize) -> Result<LookaheadReport> {
    same_depth(a, b)?;
    if n == 0 || n > a.depth() {
        return Err(Error::DepthMismatch(n, a.depth()));
    }
    let results = (n..=a.depth())
        .map(|m| ideal_inf(system, &a.truncated(m), &b.truncated(m)).map(|r| r.truncated(n)))
        .collect::<Result<Vec<_>>>()?;
    let stable = results.windows(2).all(|w| w[0] == w[1]);
    Ok(LookaheadReport { results, stable })
}

/// An atom below a nonzero thread.
///
/// Candidates are the minimal points of the deepest level inside `a`. Level
/// by level the least `↓p(x)` among survivors is kept, ties going to the
/// least index.
pub fn find_atom_below(system: &IdealSystem, a: &IdealThread) -> Result<IdealThread> {
    if a.is_zero() {
        return Err(Error::ZeroThread);
    }
    let last = a.depth() - 1;
    let top = system.base.level(last);
    let mut survivors: Vec<usize> = top
        .minimal_elements(a.entries[last].bits())
        .expect("members are in range")
        .ones()
        .collect();
    for k in 0..=last {
        let level = system.base.level(k);
        let images: Vec<usize> = survivors.iter().map(|&x| system.base.project(last, k, x)).collect();
        let pick = images
            .iter()
            .copied()
            .filter(|&y| images.iter().all(|&z| z == y || !level.lt(z, y)))
            .min()
            .expect("survivors are nonempty");
        survivors = survivors
            .into_iter()
            .zip(&images)
            .filter(|&(_, &y)| y == pick)
            .map(|(x, _)| x)
            .collect();
    }
    let x = survivors[0];
    let pts = (0..=last).map(|k| system.base.project(last, k, x)).collect();
    Ok(IdealThread::principal(system, &Thread { entries: pts }))
}

/// Principal threads whose union is `a`: one through every part of every
/// coordinate's canonical decomposition.
///
/// From a part `↓x` at level `n`, deeper points are the least maximal
/// element of the next coordinate mapping onto the current one; shallower
/// points are projections.
pub fn principal_decomposition(system: &IdealSystem, a: &IdealThread) -> Result<Vec<IdealThread>> {
    if a.is_zero() {
        return Err(Error::ZeroThread);
    }
    let depth = a.depth();
    let gens: Vec<Vec<usize>> = (0..depth)
        .map(|k| canonical_generators(system.base.level(k), &a.entries[k]))
        .collect();
    let mut out: Vec<IdealThread> = Vec::new();
    for n in 0..depth {
        for &x in &gens[n] {
            let mut pts: Vec<usize> = (0..n).map(|k| system.base.project(n, k, x)).collect();
            pts.push(x);
            for k in n + 1..depth {
                let prev = pts[k - 1];
                let next = gens[k]
                    .iter()
                    .copied()
                    .find(|&b| system.base.step(k - 1).apply(b) == prev)
                    .ok_or(Error::IncompatibleThread { index: k })?;
                pts.push(next);
            }
            let t = IdealThread::principal(system, &Thread { entries: pts });
            if !out.contains(&t) {
                out.push(t);
            }
        }
    }
    Ok(out)
}

/// `q(a)_l = f̂_l(a_{i_l})`: pushes a thread over the P-system along a
/// family of level maps.
pub fn induced_limit_quotient(
    family: &LevelMapFamily,
    target: &IdealSystem,
    a: &IdealThread,
) -> Result<IdealThread> {
    let need = family.indices.iter().copied().max().unwrap_or(0);
    if a.depth() < need {
        return Err(Error::DepthBound {
            requested: need,
            bound: a.depth(),
        });
    }
    let entries = family
        .maps
        .iter()
        .zip(&family.indices)
        .enumerate()
        .map(|(l, (f, &i))| {
            let src = f.domain();
            let mut out = target.base.level(l).empty_set();
            for x in canonical_generators(src, &a.entries[i - 1]) {
                out.union_with(target.base.level(l).down(f.apply(x)));
            }
            DownSet::from_bits_unchecked(out)
        })
        .collect();
    Ok(IdealThread { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::universal::{word_string, UniversalSequence};

    fn psys(depth: usize) -> (UniversalSequence, InverseSystem) {
        let seq = UniversalSequence::new(4).unwrap();
        let sys = InverseSystem::universal(&seq, depth).unwrap();
        (seq, sys)
    }

    #[test]
    fn thread_order_examples() {
        let (_, sys) = psys(2);
        let t = |a: usize, b: usize| Thread::new(&sys, vec![a, b]).unwrap();
        // (0,(0,0)) and (1,(1,0))
        assert_eq!(thread_order(&sys, &t(0, 0), &t(1, 4)).unwrap(), Some(Ordering::Less));
        assert_eq!(thread_order(&sys, &t(0, 0), &t(2, 8)).unwrap(), None);
        assert_eq!(thread_order(&sys, &t(0, 0), &t(0, 0)).unwrap(), Some(Ordering::Equal));
        assert_eq!(word_string(8, 2), "20");
        assert_eq!(Thread::new(&sys, vec![0, 4]), Err(Error::IncompatibleThread { index: 1 }));
    }

    #[test]
    fn solver_avoids_dead_end() {
        let sys = SetSystem {
            sizes: vec![1, 2, 1],
            maps: vec![vec![0, 0], vec![1]],
        };
        assert_eq!(naive_thread(&sys).unwrap(), None);
        assert_eq!(solve_thread(&sys).unwrap().entries, vec![0, 1, 0]);
        let empty = SetSystem {
            sizes: vec![1, 1, 0],
            maps: vec![vec![0], vec![]],
        };
        assert_eq!(solve_thread(&empty), Err(Error::EmptyLevel { index: 2 }));
        let single = SetSystem {
            sizes: vec![1, 1],
            maps: vec![vec![0]],
        };
        assert_eq!(solve_thread(&single).unwrap().entries, vec![0, 0]);
    }

    #[test]
    fn symbolic_examples() {
        let p = |s: &str| s.parse::<SymbolicPoint>().unwrap();
        assert_eq!(symbolic_compare(&p("(0)"), &p("1(0)")), Some(Ordering::Less));
        assert_eq!(symbolic_compare(&p("01(2)"), &p("01(3)")), None);
        assert_eq!(symbolic_compare(&p("012(2)"), &p("012(2)")), Some(Ordering::Equal));
        assert_eq!(symbolic_compare(&p("2(0)"), &p("3(0)")), Some(Ordering::Less));
        assert_eq!(symbolic_compare(&p("12(1)"), &p("13(1)")), Some(Ordering::Less));
        assert!(is_isolated(&p("012(2)")));
        assert!(!is_isolated(&p("(0)")));
        assert!(!is_isolated(&p("3(1)")));
        assert_eq!(p("0122(2)").to_string(), "01(2)");
        assert!("01(23)".parse::<SymbolicPoint>().is_err());
        assert!("4".parse::<SymbolicPoint>().is_err());
    }

    #[test]
    fn ideal_ops_on_small_threads() {
        let (_, sys) = psys(2);
        let isys = IdealSystem::new(sys.clone());
        let zero = IdealThread::zero(&isys, 2);
        let top = IdealThread::top(&isys, 2);
        let a = IdealThread::principal(&isys, &Thread::new(&sys, vec![1, 4]).unwrap());
        assert_eq!(ideal_sup(&a, &zero).unwrap(), a);
        assert_eq!(ideal_inf(&isys, &a, &a).unwrap(), a);
        assert_eq!(ideal_inf(&isys, &a, &zero).unwrap(), zero);
        let atom = find_atom_below(&isys, &top).unwrap();
        assert!(atom.as_principal(&isys).is_some());
        assert_eq!(find_atom_below(&isys, &zero), Err(Error::ZeroThread));
        assert_eq!(principal_decomposition(&isys, &a).unwrap(), vec![a.clone()]);
        let parts = principal_decomposition(&isys, &top).unwrap();
        let mut acc = zero.clone();
        for t in &parts {
            acc = ideal_sup(&acc, t).unwrap();
        }
        assert_eq!(acc, top);
    }

    #[test]
    fn lookahead_reports_stability() {
        let (_, sys) = psys(3);
        let isys = IdealSystem::new(sys);
        let top = IdealThread::top(&isys, 3);
        let r = ideal_inf_lookahead(&isys, &top, &top, 1).unwrap();
        assert!(r.stable);
        assert_eq!(r.results.len(), 3);
    }
}
