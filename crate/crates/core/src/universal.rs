//! The levels `P_n = {0,1,2,3}^n`, their projections, and solvers that
//! factor quotient maps through deeper levels.
//!
//! A word `x(0) x(1) ... x(n-1)` is stored as the integer with base-4
//! digits in that order, so `x(0)` is the most significant digit, integer
//! order is lexicographic order, and truncation to `k` digits is a shift.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::poset::{FinitePoset, PosetMap};
use crate::quotient::{classify, require_quotient, sticks_cover};

/// Default depth bound for materialized levels.
pub const DEFAULT_DEPTH: usize = 6;
/// Hard ceiling; `P_7` already has 16384 elements.
pub const MAX_DEPTH: usize = 7;

/// Digit `k` of a word of length `n`.
#[inline]
pub fn digit(x: usize, n: usize, k: usize) -> usize {
    (x >> (2 * (n - 1 - k))) & 3
}

/// First `k` digits of a word of length `n`.
#[inline]
pub fn truncate(x: usize, n: usize, k: usize) -> usize {
    x >> (2 * (n - k))
}

pub fn word_string(x: usize, n: usize) -> String {
    (0..n).map(|k| char::from(b'0' + digit(x, n, k) as u8)).collect()
}

/// Parses a word over `{0,1,2,3}` into `(index, length)`.
pub fn parse_word(s: &str) -> Result<(usize, usize)> {
    if s.is_empty() || s.len() > 31 {
        return Err(Error::InvalidWord(s.to_string()));
    }
    let mut x = 0;
    for c in s.chars() {
        let d = c.to_digit(4).ok_or_else(|| Error::InvalidWord(s.to_string()))?;
        x = x * 4 + d as usize;
    }
    Ok((x, s.len()))
}

/// `x <=_n y`, evaluated from the two defining clauses.
pub fn level_le(n: usize, x: usize, y: usize) -> bool {
    if x == y {
        return true;
    }
    let d = |w: usize, k: usize| digit(w, n, k);
    let tail_binary_equal = |from: usize| (from..n).all(|k| d(x, k) == d(y, k) && d(x, k) <= 1);
    let clause_i = (0..n).any(|l| {
        (0..l).all(|k| d(x, k) == d(y, k)) && d(x, l) == 2 && d(y, l) == 3 && tail_binary_equal(l + 1)
    });
    let clause_ii = d(x, 0) == 0 && d(y, 0) == 1 && tail_binary_equal(1);
    clause_i || clause_ii
}

/// The unique element of `P_n` comparable with `x` and different from it.
///
/// The flipped position is the last digit in `{2,3}`, or digit 0 when the
/// word is binary.
pub fn partner(n: usize, x: usize) -> usize {
    let pos = (0..n).rev().find(|&k| digit(x, n, k) >= 2).unwrap_or(0);
    x ^ (1 << (2 * (n - 1 - pos)))
}

/// Whether `x` is the lower end of its pair.
pub fn is_lower(n: usize, x: usize) -> bool {
    x < partner(n, x)
}

/// Lazily built levels `P_1 ..= P_max_depth`.
#[derive(Debug)]
pub struct UniversalSequence {
    max_depth: usize,
    levels: Vec<OnceLock<Arc<FinitePoset>>>,
}

impl Default for UniversalSequence {
    fn default() -> Self {
        Self::new(DEFAULT_DEPTH).expect("default depth is valid")
    }
}

impl UniversalSequence {
    pub fn new(max_depth: usize) -> Result<Self> {
        if max_depth == 0 || max_depth > MAX_DEPTH {
            return Err(Error::DepthBound {
                requested: max_depth,
                bound: MAX_DEPTH,
            });
        }
        Ok(UniversalSequence {
            max_depth,
            levels: (0..max_depth).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    fn check_depth(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidLevel("levels start at 1".into()));
        }
        if n > self.max_depth {
            return Err(Error::DepthBound {
                requested: n,
                bound: self.max_depth,
            });
        }
        Ok(())
    }

    /// `P_n` as a poset labelled by words.
    pub fn level(&self, n: usize) -> Result<Arc<FinitePoset>> {
        self.check_depth(n)?;
        Ok(self.levels[n - 1].get_or_init(|| Arc::new(build_level(n))).clone())
    }

    /// Truncation `P_n -> P_k`.
    pub fn projection(&self, n: usize, k: usize) -> Result<PosetMap> {
        if k == 0 || k > n {
            return Err(Error::InvalidLevel(format!("projection needs 1 <= k <= n, got n={n}, k={k}")));
        }
        let dom = self.level(n)?;
        let cod = self.level(k)?;
        let assignment = (0..dom.len()).map(|x| truncate(x, n, k)).collect();
        PosetMap::new(dom, cod, assignment)
    }

    /// Index of the level a poset is, if any.
    pub fn level_of(&self, p: &FinitePoset) -> Option<usize> {
        let n = (1..=self.max_depth).find(|&n| 1usize << (2 * n) == p.len())?;
        let l = self.level(n).ok()?;
        l.same_order(p).then_some(n)
    }
}

fn build_level(n: usize) -> FinitePoset {
    let size = 1usize << (2 * n);
    let labels = (0..size).map(|x| word_string(x, n)).collect();
    let mut up = vec![fixedbitset::FixedBitSet::with_capacity(size); size];
    for (x, row) in up.iter_mut().enumerate() {
        row.insert(x);
        // comparable words differ in exactly one digit
        for k in 0..n {
            for d in 0..4 {
                let shift = 2 * (n - 1 - k);
                let y = (x & !(3 << shift)) | (d << shift);
                if y != x && level_le(n, x, y) {
                    row.insert(y);
                }
            }
        }
    }
    FinitePoset::from_up_rows(labels, up)
}

/// Pairs `x < y` of `P_m` over the pair `L < U` of `P_k`, in lexicographic
/// order: both ends over `L`, both over `U`, and lower over `L` with upper
/// over `U`.
#[derive(Debug, Default, Clone)]
pub struct FiberPairs {
    pub lower: Vec<(usize, usize)>,
    pub upper: Vec<(usize, usize)>,
    pub cross: Vec<(usize, usize)>,
}

/// Fiber pairs for every pair of `P_k`, keyed by the lower end of that pair.
pub fn fiber_pairs(m: usize, k: usize) -> Vec<(usize, FiberPairs)> {
    let size_k = 1usize << (2 * k);
    let mut slots: Vec<Option<FiberPairs>> = (0..size_k).map(|_| None).collect();
    for l in (0..size_k).filter(|&l| is_lower(k, l)) {
        slots[l] = Some(FiberPairs::default());
    }
    for x in (0..1usize << (2 * m)).filter(|&x| is_lower(m, x)) {
        let y = partner(m, x);
        let (tx, ty) = (truncate(x, m, k), truncate(y, m, k));
        if tx == ty {
            if is_lower(k, tx) {
                slots[tx].as_mut().expect("lower end").lower.push((x, y));
            } else {
                slots[partner(k, tx)].as_mut().expect("lower end").upper.push((x, y));
            }
        } else {
            slots[tx].as_mut().expect("lower end").cross.push((x, y));
        }
    }
    slots
        .into_iter()
        .enumerate()
        .filter_map(|(l, s)| s.map(|s| (l, s)))
        .collect()
}

/// Size of each fiber class when `P_m` lies `d = m - k` levels below.
pub fn fiber_capacity(d: usize) -> (usize, usize, usize) {
    let full = 1usize << (2 * d);
    let binary = 1usize << d;
    ((full - binary) / 2, (full - binary) / 2, binary)
}

/// Classes of a fiber `E` over a target pair `a < b`, elements and pairs in
/// lexicographic order. Isolation is relative to `E`.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct FiberClasses {
    pub li: Vec<usize>,
    pub ui: Vec<usize>,
    pub lp: Vec<(usize, usize)>,
    pub up: Vec<(usize, usize)>,
    pub lup: Vec<(usize, usize)>,
}

impl FiberClasses {
    /// `side(e)` is `Some(false)` over the lower value, `Some(true)` over
    /// the upper one, `None` outside the fiber.
    pub fn of(h: &FinitePoset, side: impl Fn(usize) -> Option<bool>) -> Self {
        let mut c = FiberClasses::default();
        let members: Vec<usize> = (0..h.len()).filter(|&e| side(e).is_some()).collect();
        for &e in &members {
            let isolated = members.iter().all(|&o| o == e || !h.comparable(e, o));
            if isolated {
                if side(e) == Some(true) {
                    c.ui.push(e);
                } else {
                    c.li.push(e);
                }
            }
        }
        for &u in &members {
            for &v in &members {
                if h.lt(u, v) {
                    match (side(u), side(v)) {
                        (Some(false), Some(false)) => c.lp.push((u, v)),
                        (Some(true), Some(true)) => c.up.push((u, v)),
                        (Some(false), Some(true)) => c.lup.push((u, v)),
                        _ => {}
                    }
                }
            }
        }
        c
    }

    fn fits(&self, cap: (usize, usize, usize)) -> bool {
        !self.lup.is_empty()
            && self.li.len() + self.lp.len() <= cap.0
            && self.ui.len() + self.up.len() <= cap.1
            && self.lup.len() <= cap.2
    }
}

/// Routes each fiber pair of `P_m` onto `E`: pairs over the lower end go
/// first to isolated lower points, then to strict lower pairs, the rest to
/// `(r, r)`; likewise over the upper end with `(b, b)`; cross pairs cover
/// the strict pairs between the two ends and the rest go to `(r, b)`.
fn assign_by_rules(cls: &FiberClasses, pairs: &FiberPairs, g: &mut [usize]) {
    let (r, b) = cls.lup[0];
    let mut put = |(x, y): (usize, usize), (u, v): (usize, usize)| {
        g[x] = u;
        g[y] = v;
    };
    for (j, &pair) in pairs.lower.iter().enumerate() {
        let target = if j < cls.li.len() {
            (cls.li[j], cls.li[j])
        } else if j < cls.li.len() + cls.lp.len() {
            cls.lp[j - cls.li.len()]
        } else {
            (r, r)
        };
        put(pair, target);
    }
    for (j, &pair) in pairs.upper.iter().enumerate() {
        let target = if j < cls.ui.len() {
            (cls.ui[j], cls.ui[j])
        } else if j < cls.ui.len() + cls.up.len() {
            cls.up[j - cls.ui.len()]
        } else {
            (b, b)
        };
        put(pair, target);
    }
    for (j, &pair) in pairs.cross.iter().enumerate() {
        put(pair, cls.lup.get(j).copied().unwrap_or((r, b)));
    }
}

/// A fiber over a single target value: isolated points first, then strict
/// pairs, then the remainder collapsed to the least member.
#[derive(Debug, Clone)]
struct FlatFiber {
    isolated: Vec<usize>,
    strict: Vec<(usize, usize)>,
    first: usize,
}

impl FlatFiber {
    fn of(h: &FinitePoset, members: &[usize]) -> Self {
        let isolated = members
            .iter()
            .copied()
            .filter(|&e| members.iter().all(|&o| o == e || !h.comparable(e, o)))
            .collect();
        let strict = members
            .iter()
            .flat_map(|&u| members.iter().map(move |&v| (u, v)))
            .filter(|&(u, v)| h.lt(u, v))
            .collect();
        FlatFiber {
            isolated,
            strict,
            first: members[0],
        }
    }

    fn need(&self) -> usize {
        self.isolated.len() + self.strict.len()
    }

    fn assign(&self, pairs: &FiberPairs, g: &mut [usize]) {
        let mut all: Vec<(usize, usize)> = pairs
            .lower
            .iter()
            .chain(&pairs.upper)
            .chain(&pairs.cross)
            .copied()
            .collect();
        all.sort_unstable();
        let targets = self
            .isolated
            .iter()
            .map(|&e| (e, e))
            .chain(self.strict.iter().copied())
            .chain(std::iter::repeat((self.first, self.first)));
        for ((x, y), (u, v)) in all.into_iter().zip(targets) {
            g[x] = u;
            g[y] = v;
        }
    }
}

/// Result of a factorization through a deeper level.
#[derive(Debug, Clone)]
pub struct Extension {
    pub m: usize,
    pub g: PosetMap,
}

/// Least `m > k` with `2^(m-k-1) > |{(x,y) : x <= y}|` for a poset with the
/// given relation size.
pub fn extension_depth(k: usize, relation_size: usize) -> usize {
    let mut m = k + 1;
    while (1usize << (m - k - 1)) <= relation_size {
        m += 1;
    }
    m
}

/// Given a quotient `p: H -> P_k`, builds `g: P_m -> H` with
/// `p ∘ g = p_k^m`, `m` from [`extension_depth`].
pub fn solve_extension(seq: &UniversalSequence, p: &PosetMap, k: usize) -> Result<Extension> {
    require_quotient(p)?;
    let pk = seq.level(k)?;
    if !p.codomain().same_order(&pk) {
        return Err(Error::CodomainMismatch);
    }
    let h = p.domain();
    let m = extension_depth(k, h.relation_size());
    if m > seq.max_depth() {
        return Err(Error::DepthBound {
            requested: m,
            bound: seq.max_depth(),
        });
    }
    let pm = seq.level(m)?;
    let mut g = vec![usize::MAX; pm.len()];
    for (l, pairs) in fiber_pairs(m, k) {
        let u = partner(k, l);
        let cls = FiberClasses::of(h, |e| match p.apply(e) {
            v if v == l => Some(false),
            v if v == u => Some(true),
            _ => None,
        });
        debug_assert!(cls.fits(fiber_capacity(m - k)));
        assign_by_rules(&cls, &pairs, &mut g);
    }
    Ok(Extension {
        m,
        g: PosetMap::new(pm, h.clone(), g)?,
    })
}

enum Plan {
    Split(FiberClasses),
    Flat(FlatFiber),
}

/// Given quotients `f: P_i -> A` and `h: B -> A`, builds `l: P_m -> B` with
/// `h ∘ l = f ∘ p_i^m` for the least workable `m > i`.
///
/// Each pair `L < U` of `P_i` is handled on its own. If `f(L) < f(U)` the
/// fiber routing of [`solve_extension`] sends its pairs onto `h^{-1}{f(L), f(U)}`;
/// otherwise all its fiber pairs go onto `h^{-1}(f(L))`.
pub fn extend(seq: &UniversalSequence, f: &PosetMap, i: usize, h: &PosetMap) -> Result<Extension> {
    require_quotient(f)?;
    require_quotient(h)?;
    let pi = seq.level(i)?;
    if !f.domain().same_order(&pi) {
        return Err(Error::InvalidLevel(format!("map domain is not P_{i}")));
    }
    if !f.codomain().same_order(h.codomain()) {
        return Err(Error::CodomainMismatch);
    }
    let b = h.domain();
    let mut plans = Vec::new();
    for l in (0..pi.len()).filter(|&l| is_lower(i, l)) {
        let (a, c) = (f.apply(l), f.apply(partner(i, l)));
        if a == c {
            let members: Vec<usize> = (0..b.len()).filter(|&e| h.apply(e) == a).collect();
            plans.push((l, Plan::Flat(FlatFiber::of(b, &members))));
        } else {
            let cls = FiberClasses::of(b, |e| match h.apply(e) {
                v if v == a => Some(false),
                v if v == c => Some(true),
                _ => None,
            });
            plans.push((l, Plan::Split(cls)));
        }
    }
    let fits = |d: usize| {
        let cap = fiber_capacity(d);
        plans.iter().all(|(_, plan)| match plan {
            Plan::Split(cls) => cls.fits(cap),
            Plan::Flat(ff) => ff.need() <= 1 << (2 * d),
        })
    };
    let d = (1..).find(|&d| fits(d)).expect("capacities grow without bound");
    let m = i + d;
    if m > seq.max_depth() {
        return Err(Error::DepthBound {
            requested: m,
            bound: seq.max_depth(),
        });
    }
    let pm = seq.level(m)?;
    let fibers = fiber_pairs(m, i);
    let mut g = vec![usize::MAX; pm.len()];
    for ((l, plan), (l2, pairs)) in plans.iter().zip(&fibers) {
        debug_assert_eq!(l, l2);
        match plan {
            Plan::Split(cls) => assign_by_rules(cls, pairs, &mut g),
            Plan::Flat(ff) => ff.assign(pairs, &mut g),
        }
    }
    Ok(Extension {
        m,
        g: PosetMap::new(pm, b.clone(), g)?,
    })
}

/// A quotient from some level onto `x`: components of `P_n` in order follow
/// the sticks cover of `x`, and leftover components collapse to element 0.
pub fn witness_u(seq: &UniversalSequence, x: Arc<FinitePoset>) -> Result<Extension> {
    let cover = sticks_cover(x.clone())?;
    let s = cover.count;
    let n = (1..).find(|&n| 2 * (1usize << (2 * (n - 1))) >= s).expect("finite");
    let pn = seq.level(n)?;
    let mut g = vec![0; pn.len()];
    for (i, l) in (0..pn.len()).filter(|&l| is_lower(n, l)).take(s).enumerate() {
        g[l] = cover.map.apply(2 * i);
        g[partner(n, l)] = cover.map.apply(2 * i + 1);
    }
    Ok(Extension {
        m: n,
        g: PosetMap::new(pn, x, g)?,
    })
}

/// Recovers `h: P_i -> L` from a table on `P_j` that depends only on the
/// first `i` digits.
pub fn factor_through_level(
    seq: &UniversalSequence,
    table: &[usize],
    j: usize,
    i: usize,
    target: Arc<FinitePoset>,
) -> Result<PosetMap> {
    if i == 0 || i > j {
        return Err(Error::InvalidLevel(format!("need 1 <= i <= j, got i={i}, j={j}")));
    }
    let pj = seq.level(j)?;
    if table.len() != pj.len() {
        return Err(Error::AssignmentLength {
            expected: pj.len(),
            got: table.len(),
        });
    }
    for (x, &v) in table.iter().enumerate() {
        target.check(v)?;
        let rep = truncate(x, j, i) << (2 * (j - i));
        if table[rep] != v {
            return Err(Error::NotCylindrical {
                rank: i,
                first: rep,
                second: x,
            });
        }
    }
    let pi = seq.level(i)?;
    let values = (0..pi.len()).map(|w| table[w << (2 * (j - i))]).collect();
    let h = PosetMap::new(pi, target, values)?;
    let c = classify(&h);
    if !c.is_onto {
        let missed = (0..h.codomain().len())
            .find(|v| !h.assignment().contains(v))
            .expect("some value is missed");
        return Err(Error::NotOnto(missed));
    }
    require_quotient(&h)?;
    Ok(h)
}

/// `f_k: P_{i_k} -> H_k` for a target inverse system.
#[derive(Debug, Clone)]
pub struct LevelMapFamily {
    pub indices: Vec<usize>,
    pub maps: Vec<PosetMap>,
}

impl LevelMapFamily {
    pub fn depth(&self) -> usize {
        self.maps.len()
    }

    /// Every `f_k` is a quotient and `h_k^n ∘ f_n = f_k ∘ p_{i_k}^{i_n}`
    /// for all `k < n`.
    pub fn check(&self, seq: &UniversalSequence, system: &crate::limit::InverseSystem) -> Result<()> {
        if self.maps.len() > system.depth() {
            return Err(Error::DepthMismatch(self.maps.len(), system.depth()));
        }
        for (k, f) in self.maps.iter().enumerate() {
            require_quotient(f)?;
            if !f.codomain().same_order(system.level(k)) {
                return Err(Error::InvalidSystem {
                    index: k,
                    reason: "family map lands outside the level".into(),
                });
            }
        }
        for n in 0..self.maps.len() {
            for k in 0..n {
                let proj = seq.projection(self.indices[n], self.indices[k])?;
                for x in 0..self.maps[n].domain().len() {
                    let left = system.project(n, k, self.maps[n].apply(x));
                    let right = self.maps[k].apply(proj.apply(x));
                    if left != right {
                        return Err(Error::InvalidSystem {
                            index: n,
                            reason: format!("square with level {k} fails at element {x}"),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Builds `f_1, f_2, ...` level by level: `f_1` from [`witness_u`], then
/// each `f_{k+1}` by [`extend`] against the bonding map `H_{k+1} -> H_k`.
pub fn build_universal_quotient(
    seq: &UniversalSequence,
    system: &crate::limit::InverseSystem,
) -> Result<LevelMapFamily> {
    let first = witness_u(seq, system.level_arc(0).clone())?;
    let mut indices = vec![first.m];
    let mut maps = vec![first.g];
    for k in 0..system.depth() - 1 {
        let step = extend(seq, &maps[k], indices[k], system.step(k))?;
        indices.push(step.m);
        maps.push(step.g);
    }
    Ok(LevelMapFamily { indices, maps })
}

/// Lifts `t: P_i -> A` through a quotient `g: B -> A`, giving
/// `l: P_m -> B` with `g ∘ l = t ∘ p_i^m`.
pub fn lift_through_quotient(seq: &UniversalSequence, t: &PosetMap, i: usize, g: &PosetMap) -> Result<Extension> {
    extend(seq, t, i, g)
}

/// `outer ∘ l == inner ∘ p_i^m` pointwise.
pub fn triangle_commutes(seq: &UniversalSequence, l: &Extension, outer: &PosetMap, inner: &PosetMap, i: usize) -> bool {
    let Ok(proj) = seq.projection(l.m, i) else {
        return false;
    };
    (0..l.g.domain().len()).all(|x| outer.apply(l.g.apply(x)) == inner.apply(proj.apply(x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq() -> UniversalSequence {
        UniversalSequence::new(5).unwrap()
    }

    #[test]
    fn words_round_trip() {
        assert_eq!(parse_word("0123").unwrap(), (0b00_01_10_11, 4));
        assert_eq!(word_string(0b00_01_10_11, 4), "0123");
        assert!(parse_word("04").is_err());
        assert!(parse_word("").is_err());
        assert_eq!(truncate(parse_word("20").unwrap().0, 2, 1), 2);
    }

    #[test]
    fn level_one_pairs() {
        let s = seq();
        let p1 = s.level(1).unwrap();
        assert_eq!(p1.strict_pairs().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);
        assert!(!p1.comparable(0, 2));
        assert_eq!(s.level(2).unwrap().strict_pairs().count(), 8);
        assert!(matches!(s.level(6), Err(Error::DepthBound { requested: 6, bound: 5 })));
        assert!(UniversalSequence::new(MAX_DEPTH + 1).is_err());
    }

    #[test]
    fn literal_clauses_agree_with_construction() {
        let s = seq();
        for n in 1..=4 {
            let p = s.level(n).unwrap();
            for x in 0..p.len() {
                for y in 0..p.len() {
                    assert_eq!(p.le(x, y), level_le(n, x, y), "n={n} x={x} y={y}");
                }
                assert!(p.lt(x, partner(n, x)) || p.lt(partner(n, x), x));
            }
            assert!(p.validate().is_ok());
        }
    }

    #[test]
    fn projections_compose() {
        let s = seq();
        let p21 = s.projection(2, 1).unwrap();
        assert_eq!(p21.apply(parse_word("20").unwrap().0), 2);
        let via = s.projection(3, 2).unwrap().then(&p21).unwrap();
        assert_eq!(via.assignment(), s.projection(3, 1).unwrap().assignment());
        assert!(s.projection(1, 2).is_err());
    }

    #[test]
    fn extension_depth_formula() {
        assert_eq!(extension_depth(1, 6), 5);
        assert_eq!(extension_depth(1, 0), 2);
        assert_eq!(extension_depth(1, 1), 3);
    }

    #[test]
    fn identity_extension() {
        let s = seq();
        let p1 = s.level(1).unwrap();
        let ext = solve_extension(&s, &PosetMap::identity(p1.clone()), 1).unwrap();
        assert_eq!(ext.m, 5);
        assert!(classify(&ext.g).is_quotient);
        let proj = s.projection(5, 1).unwrap();
        assert_eq!(ext.g.assignment(), proj.assignment());
    }

    #[test]
    fn chain_over_pair() {
        // H = chain of two elements mapped onto the pair (0,1); (2,3) needs
        // its own preimages, so H gets two more elements.
        let s = seq();
        let p1 = s.level(1).unwrap();
        let h = Arc::new(FinitePoset::new((0..4).map(|i| i.to_string()).collect(), &[(0, 1), (2, 3)]).unwrap());
        let p = PosetMap::new(h, p1, vec![0, 1, 2, 3]).unwrap();
        let ext = solve_extension(&s, &p, 1).unwrap();
        assert!(classify(&ext.g).is_quotient);
        let proj = s.projection(ext.m, 1).unwrap();
        assert_eq!(ext.g.then(&p).unwrap().assignment(), proj.assignment());
    }

    #[test]
    fn witness_examples() {
        let s = seq();
        assert_eq!(witness_u(&s, Arc::new(FinitePoset::point())).unwrap().m, 1);
        let w = witness_u(&s, Arc::new(FinitePoset::chain(3).unwrap())).unwrap();
        assert_eq!(w.m, 2);
        assert!(classify(&w.g).is_quotient);
    }

    #[test]
    fn factor_examples() {
        let s = seq();
        let p1 = s.level(1).unwrap();
        let table: Vec<usize> = (0..16).map(|x| truncate(x, 2, 1)).collect();
        let h = factor_through_level(&s, &table, 2, 1, p1.clone()).unwrap();
        assert_eq!(h.assignment(), &[0, 1, 2, 3]);
        let mut bad = table.clone();
        bad[1] = 1;
        assert!(matches!(
            factor_through_level(&s, &bad, 2, 1, p1.clone()),
            Err(Error::NotCylindrical { rank: 1, first: 0, second: 1 })
        ));
        let partial: Vec<usize> = table.iter().map(|&v| v.min(2)).collect();
        assert_eq!(factor_through_level(&s, &partial, 2, 1, p1), Err(Error::NotOnto(3)));
    }

    #[test]
    fn extend_over_point() {
        let s = seq();
        let p1 = s.level(1).unwrap();
        let pt = Arc::new(FinitePoset::point());
        let c2 = Arc::new(FinitePoset::chain(2).unwrap());
        let t = PosetMap::constant(p1, pt.clone(), 0).unwrap();
        let g = PosetMap::constant(c2, pt, 0).unwrap();
        let l = lift_through_quotient(&s, &t, 1, &g).unwrap();
        assert_eq!(l.m, 2);
        assert!(classify(&l.g).is_quotient);
        assert!(triangle_commutes(&s, &l, &g, &t, 1));
    }
}
