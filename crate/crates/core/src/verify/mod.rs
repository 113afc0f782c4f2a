//! The acceptance suite: exhaustive or seeded checks of the main results,
//! each against a brute-force reference.

pub mod oracle;

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::error::Result;
use crate::lattice::{
    all_down_sets, birkhoff_eta, canonical_decomposition, DownSet, FiniteLattice,
};
use crate::limit::{
    find_atom_below, ideal_inf, ideal_sup, is_isolated, naive_thread, principal_decomposition, solve_thread,
    symbolic_compare, IdealSystem, IdealThread, InverseSystem, SetSystem, SymbolicPoint,
};
use crate::poset::{all_posets, is_isomorphic, FinitePoset, PosetMap};
use crate::quotient::{amalgamate, classify, induce, induce_lazy, meet_preservation_criterion};
use crate::random;
use crate::ternary::{psi, psi_inverse, q_step, verify_square, ComponentIndex, TernaryFunction};
use crate::universal::{
    build_universal_quotient, fiber_pairs, lift_through_quotient, solve_extension, UniversalSequence,
};

use oracle::{digits, mask_of, word_le};

/// Knobs shared by every check.
#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Sampled down-sets for the `P_2 -> P_3` square.
    pub samples: usize,
    pub depth: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 42,
            samples: 100_000,
            depth: crate::universal::DEFAULT_DEPTH,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{mark}] {:>2}. {}: {}", self.id, self.title, self.detail)
    }
}

pub const TITLES: [&str; 11] = [
    "canonical decomposition",
    "Birkhoff representation",
    "amalgamation",
    "level structure",
    "extension solver",
    "induced maps",
    "thread solver",
    "ideal-limit lattice",
    "isolated points",
    "ternary encoding",
    "universality",
];

pub fn run(id: u8, cfg: &VerifyConfig) -> Check {
    let title = TITLES[(id - 1) as usize];
    let outcome = match id {
        1 => canonical_decomposition_check(),
        2 => birkhoff_check(),
        3 => amalgamation_check(cfg),
        4 => level_structure_check(cfg),
        5 => extension_check(cfg),
        6 => induced_maps_check(cfg),
        7 => thread_solver_check(cfg),
        8 => ideal_limit_check(cfg),
        9 => isolated_points_check(),
        10 => ternary_check(cfg),
        11 => universality_check(cfg),
        _ => unreachable!("criteria are numbered 1 to 11"),
    };
    let (passed, detail) = match outcome {
        Ok(Ok(detail)) => (true, detail),
        Ok(Err(why)) => (false, why),
        Err(e) => (false, format!("error: {e}")),
    };
    Check { id, title, passed, detail }
}

pub fn run_all(cfg: &VerifyConfig) -> Vec<Check> {
    (1..=11).map(|id| run(id, cfg)).collect()
}

/// `Ok(Ok(summary))` on success, `Ok(Err(counterexample))` on failure.
type Outcome = Result<std::result::Result<String, String>>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Ok(Err(format!($($msg)+)));
        }
    };
}

fn sub_rng(cfg: &VerifyConfig, criterion: u64, i: u64) -> rand_chacha::ChaCha8Rng {
    random::rng(cfg.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (criterion << 40) ^ i)
}

fn catalog() -> Result<Vec<Arc<FinitePoset>>> {
    let mut out = Vec::new();
    for n in 1..=5 {
        out.extend(all_posets(n)?.into_iter().map(Arc::new));
    }
    Ok(out)
}

fn canonical_decomposition_check() -> Outcome {
    let mut checked = 0;
    for p in catalog()? {
        let d = oracle::down_masks(&p);
        let brute = oracle::down_sets(&p);
        let lattice = all_down_sets(p.clone())?;
        ensure!(lattice.len() == brute.len(), "down-set count {} vs {} on {:?}", lattice.len(), brute.len(), p);
        for &q in &brute {
            let ds = DownSet::new(&p, crate::poset::bitset(p.len(), (0..p.len()).filter(|x| q >> x & 1 == 1)))?;
            let parts = canonical_decomposition(&p, &ds)?;
            let masks: Vec<u32> = parts.iter().map(|a| mask_of(a.ones())).collect();
            let maxes = oracle::maximal(&p, q);
            let expected: Vec<u32> = (0..p.len()).filter(|x| maxes >> x & 1 == 1).map(|x| d[x]).collect();
            ensure!(masks == expected, "parts of {q:#b} are not the principal sets of its maximal elements");
            ensure!(masks.iter().fold(0, |a, m| a | m) == q, "parts of {q:#b} do not reconstruct it");
            for (i, a) in masks.iter().enumerate() {
                for b in &masks[i + 1..] {
                    ensure!(a & !b != 0 && b & !a != 0, "parts of {q:#b} are comparable");
                }
            }
            // every union-of-principals representation of q uses all maximal
            // elements; the only irredundant one is the canonical one
            for s in (0u32..1 << p.len()).filter(|s| s & !q == 0) {
                let union = (0..p.len()).filter(|x| s >> x & 1 == 1).fold(0, |a, x| a | d[x]);
                if union != q {
                    continue;
                }
                ensure!(s & maxes == maxes, "representation {s:#b} of {q:#b} misses a maximal element");
                let irredundant = (0..p.len())
                    .filter(|x| s >> x & 1 == 1)
                    .all(|x| (0..p.len()).all(|y| y == x || s >> y & 1 == 0 || d[x] & !d[y] != 0));
                ensure!(!irredundant || s == maxes, "second irredundant representation {s:#b} of {q:#b}");
            }
            checked += 1;
        }
    }
    Ok(Ok(format!("{checked} down-sets over all 87 posets with at most 5 elements")))
}

fn birkhoff_check() -> Outcome {
    let cat = catalog()?;
    for p in &cat {
        let l = FiniteLattice::of_ideals(p.clone())?;
        let n = l.len();
        let bottom = l.bottom();
        let by_definition: Vec<usize> = (0..n)
            .filter(|&x| x != bottom && (0..n).all(|a| (0..n).all(|b| l.join(a, b) != x || a == x || b == x)))
            .collect();
        ensure!(l.join_irreducibles() == by_definition, "join-irreducibles differ from the definition on {p:?}");
        let ideals = all_down_sets(p.clone())?;
        let principal: Vec<usize> = {
            let mut v: Vec<usize> = (0..p.len()).map(|x| ideals.principal_index(x)).collect();
            v.sort_unstable();
            v
        };
        ensure!(by_definition == principal, "J(O(P)) is not the set of principal down-sets for {p:?}");
        let b = birkhoff_eta(&l)?;
        let mut seen = HashSet::new();
        ensure!(b.eta.iter().all(|&e| seen.insert(e)) && b.ideals.len() == n, "eta is not a bijection");
        for x in 0..n {
            for y in 0..n {
                let (ex, ey) = (b.ideals.ideal(b.eta[x]), b.ideals.ideal(b.eta[y]));
                ensure!(l.le(x, y) == ex.is_subset_of(ey), "eta does not reflect order");
                ensure!(*b.ideals.ideal(b.eta[l.join(x, y)]) == ex.union(ey), "eta does not preserve joins");
                ensure!(*b.ideals.ideal(b.eta[l.meet(x, y)]) == ex.intersection(ey), "eta does not preserve meets");
            }
        }
        let j = l.carrier().restrict(&b.irreducibles)?;
        ensure!(is_isomorphic(&j, p)?, "J(O(P)) is not isomorphic to P for {p:?}");
    }
    let m3 = FiniteLattice::m3().check_distributive().is_err();
    let n5 = FiniteLattice::n5().check_distributive().is_err();
    ensure!(m3 && n5, "a non-distributive lattice was accepted");
    Ok(Ok(format!("{} posets, eta an isomorphism recovering P; M3 and N5 rejected", cat.len())))
}

fn amalgamation_check(cfg: &VerifyConfig) -> Outcome {
    for i in 0..500 {
        let mut rng = sub_rng(cfg, 3, i);
        let size = rng.random_range(1..=4);
        let a = Arc::new(random::poset(&mut rng, size));
        let bs = rng.random_range(a.len()..=4);
        let cs = rng.random_range(a.len()..=4);
        let f = random::quotient_onto(&mut rng, &a, bs);
        let g = random::quotient_onto(&mut rng, &a, cs);
        let am = amalgamate(&f, &g)?;
        for x in 0..am.d.len() {
            let left = f.apply(am.f_prime.apply(am.q.apply(x)));
            let right = g.apply(am.g_prime.apply(am.p.apply(x)));
            ensure!(left == right, "triple {i}: square fails at {x}");
        }
        for m in [&am.q, &am.p, &am.f_prime, &am.g_prime] {
            ensure!(oracle::is_quotient(m), "triple {i}: an amalgam arrow is not a quotient");
        }
    }
    Ok(Ok("500 random spans with |A|,|B|,|C| <= 4 complete to commuting squares of quotients".into()))
}

fn level_structure_check(cfg: &VerifyConfig) -> Outcome {
    let seq = UniversalSequence::new(cfg.depth.max(4))?;
    for n in 1..=4 {
        let p = seq.level(n)?;
        ensure!(p.len() == 1 << (2 * n), "|P_{n}| = {}", p.len());
        for x in 0..p.len() {
            for y in 0..p.len() {
                ensure!(p.le(x, y) == word_le(&digits(x, n), &digits(y, n)), "P_{n} order differs at ({x},{y})");
            }
        }
        let comps = p.two_components();
        ensure!(comps.len() == 2 << (2 * (n - 1)), "P_{n} has {} two-components", comps.len());
        ensure!(comps.len() == p.strict_pairs().count(), "P_{n} has pairs outside two-components");
        ensure!(p.isolated_points().is_empty(), "P_{n} has isolated points");
    }
    let mut lines = Vec::new();
    for m in 2..=4 {
        for k in 1..m {
            let pm = seq.level(m)?;
            let d = m - k;
            for (l, fp) in fiber_pairs(m, k) {
                let u = crate::universal::partner(k, l);
                let (xl, xu) = (digits(l, k), digits(u, k));
                let word = |head: &[u8], tail: &[u8]| {
                    head.iter().chain(tail).fold(0usize, |acc, &b| acc * 4 + b as usize)
                };
                let binary: Vec<Vec<u8>> = (0..1usize << d).map(|t| (0..d).map(|j| ((t >> (d - 1 - j)) & 1) as u8).collect()).collect();
                // the family x⌢2⌢t < x⌢3⌢t over each end, t binary of length d-1
                for (end, bucket) in [(&xl, &fp.lower), (&xu, &fp.upper)] {
                    let family: Vec<(usize, usize)> = (0..1usize << (d - 1))
                        .map(|t| {
                            let t: Vec<u8> = (0..d - 1).map(|j| ((t >> (d - 2 - j)) & 1) as u8).collect();
                            let mut lo = end.to_vec();
                            lo.push(2);
                            let mut hi = end.to_vec();
                            hi.push(3);
                            (word(&lo, &t), word(&hi, &t))
                        })
                        .collect();
                    ensure!(family.len() == 1 << (d - 1), "family size");
                    ensure!(family.iter().all(|pr| bucket.contains(pr)), "a listed pair over one end is missing");
                    ensure!(bucket.len() >= 1 << (d - 1), "fewer than 2^(m-k-1) pairs over one end");
                    let exact = ((1usize << (2 * d)) - (1 << d)) / 2;
                    ensure!(bucket.len() == exact, "pairs over one end: {} vs {exact}", bucket.len());
                }
                let cross: HashSet<(usize, usize)> = binary.iter().map(|t| (word(&xl, t), word(&xu, t))).collect();
                ensure!(fp.cross.len() == 1 << d, "cross pairs {} vs 2^(m-k)", fp.cross.len());
                ensure!(fp.cross.iter().all(|pr| cross.contains(pr)), "cross pair outside x⌢t < y⌢t");
                // no isolated points in the preimage of the pair
                let pre: Vec<usize> = (0..pm.len()).filter(|&x| {
                    let t = x >> (2 * d);
                    t == l || t == u
                }).collect();
                for &x in &pre {
                    ensure!(pre.iter().any(|&y| y != x && pm.comparable(x, y)), "isolated point {x} over ({l},{u})");
                }
            }
            let over = ((1usize << (2 * d)) - (1 << d)) / 2;
            lines.push(format!("(k={k},m={m}: {over}/{over}/{})", 1 << d));
        }
    }
    Ok(Ok(format!(
        "P_1..P_4 sizes, 2·4^(n-1) two-components, no isolated points; over each end at least 2^(m-k-1) pairs including the x⌢2⌢t family, exactly 2^(m-k) cross pairs {}",
        lines.join(" ")
    )))
}

fn extension_check(cfg: &VerifyConfig) -> Outcome {
    let seq = UniversalSequence::new(cfg.depth)?;
    let p1 = seq.level(1)?;
    let mut depths = HashMap::new();
    for i in 0..200 {
        let mut rng = sub_rng(cfg, 5, i);
        let size = rng.random_range(4..=6);
        let p = random::quotient_onto(&mut rng, &p1, size);
        let ext = solve_extension(&seq, &p, 1)?;
        let expected = oracle::least_extension_depth(1, p.domain());
        ensure!(ext.m == expected, "sample {i}: m = {} but the formula gives {expected}", ext.m);
        ensure!(oracle::is_quotient(&ext.g), "sample {i}: g is not a quotient");
        for x in 0..ext.g.domain().len() {
            let head = digits(x, ext.m)[0] as usize;
            ensure!(p.apply(ext.g.apply(x)) == head, "sample {i}: triangle fails at {x}");
        }
        *depths.entry(ext.m).or_insert(0) += 1;
    }
    let mut d: Vec<_> = depths.into_iter().collect();
    d.sort_unstable();
    let summary: Vec<String> = d.iter().map(|(m, c)| format!("m={m}:{c}")).collect();
    Ok(Ok(format!(
        "200 quotients H -> P_1 with |H| <= 6 ({}); P_2 has 16 elements so no such H maps onto it",
        summary.join(" ")
    )))
}

struct MaskLattice {
    n: usize,
    down: Vec<u32>,
    ideals: Vec<u32>,
    index: Vec<u16>,
}

impl MaskLattice {
    fn new(p: &FinitePoset) -> Self {
        let ideals = oracle::down_sets(p);
        let mut index = vec![u16::MAX; 1 << p.len()];
        for (i, &m) in ideals.iter().enumerate() {
            index[m as usize] = i as u16;
        }
        MaskLattice {
            n: p.len(),
            down: oracle::down_masks(p),
            ideals,
            index,
        }
    }

    fn closure(&self, s: u32) -> u32 {
        (0..self.n).filter(|x| s >> x & 1 == 1).fold(0, |a, x| a | self.down[x])
    }
}

fn homomorphisms(q: &FinitePoset, p: &FinitePoset) -> Vec<Vec<usize>> {
    fn go(q: &FinitePoset, p: &FinitePoset, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let x = cur.len();
        if x == q.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..p.len() {
            let ok = (0..x).all(|w| (!q.le(w, x) || p.le(cur[w], v)) && (!q.le(x, w) || p.le(v, cur[w])));
            if ok {
                cur.push(v);
                go(q, p, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(q, p, &mut Vec::new(), &mut out);
    out
}

fn induced_maps_check(cfg: &VerifyConfig) -> Outcome {
    let cat = catalog()?;
    let masks: Vec<MaskLattice> = cat.iter().map(|p| MaskLattice::new(p)).collect();
    let mut quotients: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    let mut homs = 0usize;
    let mut meet_preserving = 0usize;
    for (qi, q) in cat.iter().enumerate() {
        for (pi, p) in cat.iter().enumerate().filter(|(_, p)| p.len() <= q.len()) {
            for a in homomorphisms(q, p) {
                homs += 1;
                let f = PosetMap::new(q.clone(), p.clone(), a.clone())?;
                let brute = oracle::is_quotient(&f);
                ensure!(classify(&f).is_quotient == brute, "classification disagrees on {a:?}");
                if !brute {
                    continue;
                }
                let (mq, mp) = (&masks[qi], &masks[pi]);
                let hat = induce_lazy(&f)?;
                let to_set = |m: u32| DownSet::from_bits_unchecked(crate::poset::bitset(q.len(), (0..q.len()).filter(|x| m >> x & 1 == 1)));
                let values: Vec<u32> = mq.ideals.iter().map(|&m| mask_of(hat.apply(&to_set(m)).ones())).collect();
                // value through images, independent of any decomposition
                for (i, &m) in mq.ideals.iter().enumerate() {
                    let image = (0..q.len()).filter(|x| m >> x & 1 == 1).fold(0u32, |acc, x| acc | 1 << a[x]);
                    ensure!(values[i] == mp.closure(image), "induced value differs from ↓p[A] on {a:?}");
                }
                let idx = |m: u32| mq.index[m as usize] as usize;
                let mut all_meets = true;
                let mut lifted = HashSet::new();
                for (i, &x) in mq.ideals.iter().enumerate() {
                    for (j, &y) in mq.ideals.iter().enumerate() {
                        ensure!(values[idx(x | y)] == values[i] | values[j], "joins not preserved by {a:?}");
                        all_meets &= values[idx(x & y)] == values[i] & values[j];
                        if x & !y == 0 {
                            ensure!(values[i] & !values[j] == 0, "induced map of {a:?} is not monotone");
                            lifted.insert((values[i], values[j]));
                        }
                    }
                }
                for &u in &mp.ideals {
                    for &v in mp.ideals.iter().filter(|&&v| u & !v == 0) {
                        ensure!(lifted.contains(&(u, v)), "induced map of {a:?} is not a quotient");
                    }
                }
                for x in 0..q.len() {
                    ensure!(values[idx(mq.down[x])] == mp.down[a[x]], "↓x not sent to ↓p(x) by {a:?}");
                }
                let criterion = meet_preservation_criterion(&f)?.is_none();
                ensure!(criterion == all_meets, "meet criterion {criterion} but brute force {all_meets} on {a:?}");
                meet_preserving += all_meets as usize;
                quotients.push((qi, pi, a));
            }
        }
    }
    // composition on sampled pairs
    let mut by_domain: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, (qi, _, _)) in quotients.iter().enumerate() {
        by_domain.entry(*qi).or_default().push(i);
    }
    let mut rng = sub_rng(cfg, 6, 0);
    let mut composed = 0;
    while composed < 2000 {
        let (qi, pi, a) = &quotients[rng.random_range(0..quotients.len())];
        let Some(next) = by_domain.get(pi) else { continue };
        let (_, ri, b) = &quotients[next[rng.random_range(0..next.len())]];
        let f = PosetMap::new(cat[*qi].clone(), cat[*pi].clone(), a.clone())?;
        let g = PosetMap::new(cat[*pi].clone(), cat[*ri].clone(), b.clone())?;
        let (hf, hg, hgf) = (induce(&f)?, induce(&g)?, induce(&f.then(&g)?)?);
        for x in all_down_sets(cat[*qi].clone())?.ideals() {
            ensure!(hgf.apply(x) == hg.apply(&hf.apply(x)), "composition of induced maps fails");
        }
        composed += 1;
    }
    Ok(Ok(format!(
        "{homs} homomorphisms between posets of size <= 5, {} quotients ({meet_preserving} meet-preserving), {composed} composable pairs",
        quotients.len()
    )))
}

fn thread_solver_check(cfg: &VerifyConfig) -> Outcome {
    for i in 0..100 {
        let mut rng = sub_rng(cfg, 7, i);
        let levels = rng.random_range(1..=6);
        let sys = random::set_system(&mut rng, levels, 8);
        let t = solve_thread(&sys)?;
        ensure!(t.entries.len() == levels, "system {i}: thread too short");
        for k in 1..levels {
            ensure!(sys.maps[k - 1][t.entries[k]] == t.entries[k - 1], "system {i}: incompatible at {k}");
        }
        // every full-depth chain, projected
        let last = levels - 1;
        let mut v: Vec<HashSet<usize>> = vec![HashSet::new(); levels];
        for x in 0..sys.sizes[last] {
            let mut cur = x;
            v[last].insert(cur);
            for k in (0..last).rev() {
                cur = sys.maps[k][cur];
                v[k].insert(cur);
            }
        }
        for (k, &x) in t.entries.iter().enumerate() {
            ensure!(v[k].contains(&x), "system {i}: level {k} choice is not extendable");
        }
    }
    let dead_end = SetSystem {
        sizes: vec![1, 2, 1],
        maps: vec![vec![0, 0], vec![1]],
    };
    ensure!(naive_thread(&dead_end)?.is_none(), "naive greedy should hit the dead end");
    ensure!(solve_thread(&dead_end)?.entries == vec![0, 1, 0], "solver did not route around the dead end");
    Ok(Ok("100 random systems (<= 6 levels, <= 8 elements); dead end avoided where first-fit fails".into()))
}

fn ideal_limit_check(cfg: &VerifyConfig) -> Outcome {
    let seq = UniversalSequence::new(cfg.depth.max(2))?;
    let isys = IdealSystem::new(InverseSystem::universal(&seq, 2)?);
    let p1 = seq.level(1)?;
    let p2 = seq.level(2)?;
    let m1 = MaskLattice::new(&p1);
    // every depth-2 thread is fixed by its last coordinate
    let all: Vec<(u32, u32)> = oracle::down_sets(&p2)
        .into_iter()
        .map(|a2| {
            let image = (0..16).filter(|x| a2 >> x & 1 == 1).fold(0u32, |acc, x| acc | 1 << (x >> 2));
            (m1.closure(image), a2)
        })
        .collect();
    ensure!(all.len() == 6561, "expected 6561 threads, got {}", all.len());
    let key = |t: &IdealThread| (mask_of(t.entries[0].ones()), mask_of(t.entries[1].ones()));
    let le = |a: (u32, u32), b: (u32, u32)| a.0 & !b.0 == 0 && a.1 & !b.1 == 0;
    let valid: HashSet<(u32, u32)> = all.iter().copied().collect();
    for i in 0..200 {
        let mut rng = sub_rng(cfg, 8, i);
        let a = random::ideal_thread(&mut rng, &isys, 2);
        let b = random::ideal_thread(&mut rng, &isys, 2);
        let (ka, kb) = (key(&a), key(&b));
        let sup = key(&ideal_sup(&a, &b)?);
        let inf = key(&ideal_inf(&isys, &a, &b)?);
        ensure!(valid.contains(&sup) && valid.contains(&inf), "pair {i}: result is not a thread");
        ensure!(le(ka, sup) && le(kb, sup), "pair {i}: sup is not an upper bound");
        ensure!(le(inf, ka) && le(inf, kb), "pair {i}: inf is not a lower bound");
        for &t in &all {
            if le(ka, t) && le(kb, t) {
                ensure!(le(sup, t), "pair {i}: sup is not least");
            }
            if le(t, ka) && le(t, kb) {
                ensure!(le(t, inf), "pair {i}: inf is not greatest");
            }
        }
    }
    let nonzero = |rng: &mut rand_chacha::ChaCha8Rng| loop {
        let t = random::ideal_thread(rng, &isys, 2);
        if !t.is_zero() {
            break t;
        }
    };
    for i in 0..100 {
        let mut rng = sub_rng(cfg, 8, 1000 + i);
        let a = nonzero(&mut rng);
        let atom = find_atom_below(&isys, &a)?;
        let k = key(&atom);
        ensure!(k != (0, 0) && le(k, key(&a)) && valid.contains(&k), "thread {i}: bad atom");
        ensure!(
            all.iter().all(|&t| t == (0, 0) || t == k || !le(t, k)),
            "thread {i}: something nonzero lies strictly below the atom"
        );
        let parts = principal_decomposition(&isys, &a)?;
        let mut acc = IdealThread::zero(&isys, 2);
        for t in &parts {
            ensure!(t.as_principal(&isys).is_some(), "thread {i}: non-principal part");
            ensure!(t.le(&a), "thread {i}: part not below the thread");
            acc = ideal_sup(&acc, t)?;
        }
        ensure!(acc == a, "thread {i}: decomposition does not reconstruct");
    }
    Ok(Ok("200 sup/inf pairs and 100 atoms/decompositions at depth 2, against all 6561 threads".into()))
}

fn isolated_points_check() -> Outcome {
    for w in 0..64 {
        let prefix: Vec<u8> = digits(w, 3);
        let x = SymbolicPoint::isolated_witness(&prefix)?;
        ensure!((0..3).all(|k| x.digit(k) == prefix[k]), "witness leaves the cylinder {prefix:?}");
        ensure!(is_isolated(&x), "witness {x} is not isolated");
    }
    let points = |max_len: usize| {
        let mut out = HashSet::new();
        for len in 0..=max_len {
            for w in 0..1usize << (2 * len) {
                for tail in 0..4 {
                    out.insert(SymbolicPoint::new(digits(w, len), tail).expect("digits"));
                }
            }
        }
        let mut v: Vec<SymbolicPoint> = out.into_iter().collect();
        v.sort_by(|a, b| (a.prefix(), a.tail()).cmp(&(b.prefix(), b.tail())));
        v
    };
    let xs = points(4);
    let ys = points(5);
    let window = |a: &SymbolicPoint, b: &SymbolicPoint| a.prefix().len().max(b.prefix().len()) + 3;
    let trunc = |a: &SymbolicPoint, n: usize| (0..n).map(|k| a.digit(k)).collect::<Vec<u8>>();
    let mut isolated = 0;
    for x in &xs {
        let mut comparable = false;
        for y in &ys {
            let n = window(x, y);
            let (tx, ty) = (trunc(x, n), trunc(y, n));
            let expected = match (word_le(&tx, &ty), word_le(&ty, &tx)) {
                (true, true) => Some(std::cmp::Ordering::Equal),
                (true, false) => Some(std::cmp::Ordering::Less),
                (false, true) => Some(std::cmp::Ordering::Greater),
                (false, false) => None,
            };
            ensure!(symbolic_compare(x, y) == expected, "compare({x}, {y}) disagrees with truncations");
            comparable |= x != y && expected.is_some();
        }
        ensure!(is_isolated(x) == !comparable, "isolation of {x} disagrees with search");
        ensure!(is_isolated(x) == (x.tail() >= 2), "isolation of {x} does not follow its tail");
        isolated += !comparable as usize;
    }
    Ok(Ok(format!(
        "64 cylinders hold isolated witnesses; {} points against {} candidates, {isolated} isolated",
        xs.len(),
        ys.len()
    )))
}

fn ternary_check(cfg: &VerifyConfig) -> Outcome {
    let seq = UniversalSequence::new(cfg.depth.max(3))?;
    for n in 1..=2 {
        let index = ComponentIndex::new(n)?;
        let p = seq.level(n)?;
        let named = oracle::component_words(n);
        ensure!(named.len() == index.len(), "|T_{n}| = {}", index.len());
        for (r, (c, (x, y))) in named.iter().enumerate() {
            ensure!(index.word(r) == *c, "rank {r} names {}", index.word(r));
            ensure!(index.pair(r) == (oracle::word_index(x), oracle::word_index(y)), "pair named {c} differs");
        }
        let ideals = oracle::down_sets(&p);
        let to_set = |m: u32| DownSet::from_bits_unchecked(crate::poset::bitset(p.len(), (0..p.len()).filter(|x| m >> x & 1 == 1)));
        // psi of parts, joined pointwise
        let by_parts = |m: u32| {
            let mut f = vec![0u8; named.len()];
            for x in (0..p.len()).filter(|&x| oracle::maximal(&p, m) >> x & 1 == 1) {
                for (r, (_, (lo, hi))) in named.iter().enumerate() {
                    if oracle::word_index(lo) == x {
                        f[r] = f[r].max(1);
                    }
                    if oracle::word_index(hi) == x {
                        f[r] = f[r].max(2);
                    }
                }
            }
            f
        };
        let values: Vec<Vec<u8>> = ideals.iter().map(|&m| psi(&index, &to_set(m)).values).collect();
        for (i, &m) in ideals.iter().enumerate() {
            ensure!(values[i] == by_parts(m), "psi differs from its definition on {m:#b}");
            let back = psi_inverse(&index, &TernaryFunction::new(n, values[i].clone())?);
            ensure!(mask_of(back.ones()) == m, "psi_inverse fails on {m:#b}");
        }
        let distinct: HashSet<&Vec<u8>> = values.iter().collect();
        ensure!(distinct.len() == ideals.len() && ideals.len() == 3usize.pow(index.len() as u32), "psi is not bijective at n={n}");
        let psi_of = |m: u32| -> Vec<u8> {
            named
                .iter()
                .map(|(_, (x, y))| (oracle::word_index(x), oracle::word_index(y)))
                .map(|(x, y)| if m >> y & 1 == 1 { 2 } else if m >> x & 1 == 1 { 1 } else { 0 })
                .collect()
        };
        for (i, &a) in ideals.iter().enumerate() {
            for (j, &b) in ideals.iter().enumerate() {
                let le = values[i].iter().zip(&values[j]).all(|(u, v)| u <= v);
                ensure!(le == (a & !b == 0), "psi order fails on ({a:#b}, {b:#b})");
                let joined: Vec<u8> = values[i].iter().zip(&values[j]).map(|(u, v)| *u.max(v)).collect();
                ensure!(psi_of(a | b) == joined, "psi does not preserve the join of ({a:#b}, {b:#b})");
            }
        }
    }
    // join-irreducible case table at T_2 -> T_1
    let t2 = ComponentIndex::new(2)?;
    for r in 0..t2.len() {
        for v in 1..=2u8 {
            let mut f = TernaryFunction::zero(2);
            f.values[r] = v;
            let g = q_step(&f)?;
            let expected = match r % 4 {
                2 => 1,
                3 => 2,
                _ => v,
            };
            let mut want = vec![0; 2];
            want[r / 4] = expected;
            ensure!(g.values == want, "case table fails at {}", t2.word(r));
        }
    }
    let exhaustive = verify_square(&seq, 1, 0, cfg.seed)?;
    ensure!(exhaustive.mismatch.is_none(), "square fails at n=1 on {:?}", exhaustive.mismatch);
    let sampled = verify_square(&seq, 2, cfg.samples, cfg.seed)?;
    ensure!(sampled.mismatch.is_none(), "square fails at n=2 on {:?}", sampled.mismatch);
    Ok(Ok(format!(
        "psi bijective and order-isomorphic on all 9 and 6561 down-sets; square on {} down-sets of P_2 and {} of P_3",
        exhaustive.checked, sampled.checked
    )))
}

fn universality_check(cfg: &VerifyConfig) -> Outcome {
    let seq = UniversalSequence::new(cfg.depth)?;
    let mut deepest = 0;
    for i in 0..50 {
        let mut rng = sub_rng(cfg, 11, i);
        let sys = random::inverse_system(&mut rng, 3, 4);
        let fam = build_universal_quotient(&seq, &sys)?;
        for (k, f) in fam.maps.iter().enumerate() {
            ensure!(oracle::is_quotient(f), "system {i}: f_{k} is not a quotient");
        }
        for n in 0..3 {
            for k in 0..n {
                let shift = 2 * (fam.indices[n] - fam.indices[k]);
                for x in 0..fam.maps[n].domain().len() {
                    let mut down = fam.maps[n].apply(x);
                    for j in (k..n).rev() {
                        down = sys.step(j).apply(down);
                    }
                    ensure!(down == fam.maps[k].apply(x >> shift), "system {i}: square ({k},{n}) fails at {x}");
                }
            }
        }
        let a = sys.level_arc(0).clone();
        let size = rng.random_range(a.len()..=5);
        let g = random::quotient_onto(&mut rng, &a, size);
        let lift = lift_through_quotient(&seq, &fam.maps[0], fam.indices[0], &g)?;
        ensure!(oracle::is_quotient(&lift.g), "system {i}: lift is not a quotient");
        let shift = 2 * (lift.m - fam.indices[0]);
        for x in 0..lift.g.domain().len() {
            ensure!(g.apply(lift.g.apply(x)) == fam.maps[0].apply(x >> shift), "system {i}: lift triangle fails at {x}");
        }
        deepest = deepest.max(*fam.indices.last().expect("three levels")).max(lift.m);
    }
    Ok(Ok(format!("50 random 3-level systems with |H_k| <= 4 and their lifts; deepest level used P_{deepest}")))
}
