//! Brute-force reference computations, written without the library's
//! algorithms so that they can check them.

use crate::poset::{FinitePoset, PosetMap};

/// Bitmask of `↓x` for each element (`|P| <= 32`).
pub fn down_masks(p: &FinitePoset) -> Vec<u32> {
    (0..p.len())
        .map(|x| (0..p.len()).filter(|&y| p.le(y, x)).fold(0, |m, y| m | 1 << y))
        .collect()
}

/// All down-sets as masks, by testing every subset.
pub fn down_sets(p: &FinitePoset) -> Vec<u32> {
    let d = down_masks(p);
    (0u32..1 << p.len())
        .filter(|&s| (0..p.len()).all(|x| s >> x & 1 == 0 || d[x] & !s == 0))
        .collect()
}

/// Maximal members of a mask.
pub fn maximal(p: &FinitePoset, s: u32) -> u32 {
    let n = p.len();
    (0..n)
        .filter(|&x| s >> x & 1 == 1 && (0..n).all(|y| y == x || s >> y & 1 == 0 || !p.le(x, y)))
        .fold(0, |m, x| m | 1 << x)
}

pub fn mask_of(bits: impl Iterator<Item = usize>) -> u32 {
    bits.fold(0, |m, x| m | 1 << x)
}

pub fn mask_of64(bits: impl Iterator<Item = usize>) -> u64 {
    bits.fold(0, |m, x| m | 1 << x)
}

/// Onto, monotone, and every related pair of the codomain is the image of
/// a related pair, checked pair by pair.
pub fn is_quotient(f: &PosetMap) -> bool {
    let a = f.domain();
    let b = f.codomain();
    let mut hit = vec![false; b.len()];
    let mut images = std::collections::HashSet::new();
    for x in 0..a.len() {
        hit[f.apply(x)] = true;
        for y in a.up(x).ones() {
            let (u, v) = (f.apply(x), f.apply(y));
            if !b.le(u, v) {
                return false;
            }
            images.insert((u, v));
        }
    }
    hit.iter().all(|&h| h) && (0..b.len()).all(|u| b.up(u).ones().all(|v| images.contains(&(u, v))))
}

/// `P_n` order from the defining clauses on explicit digit vectors.
pub fn word_le(x: &[u8], y: &[u8]) -> bool {
    let n = x.len();
    if x == y {
        return true;
    }
    let binary_equal_after = |l: usize| ((l + 1)..n).all(|k| x[k] == y[k] && x[k] < 2);
    let first = x[0] == 0 && y[0] == 1 && binary_equal_after(0);
    let second = (0..n).any(|l| x[..l] == y[..l] && x[l] == 2 && y[l] == 3 && binary_equal_after(l));
    first || second
}

pub fn digits(mut x: usize, n: usize) -> Vec<u8> {
    let mut d = vec![0; n];
    for k in (0..n).rev() {
        d[k] = (x % 4) as u8;
        x /= 4;
    }
    d
}

/// Least `m > k` with `2^(m-k-1)` above the number of related pairs of `h`.
pub fn least_extension_depth(k: usize, h: &FinitePoset) -> usize {
    let related = (0..h.len()).flat_map(|x| (0..h.len()).map(move |y| (x, y))).filter(|&(x, y)| h.le(x, y)).count();
    (k + 1..).find(|&m| 2usize.pow((m - k - 1) as u32) > related).expect("unbounded")
}

/// `T_n` naming following the recursive description on words: returns for
/// each name (in lexicographic order) its pair of words of `P_n`.
pub fn component_words(n: usize) -> Vec<(String, (String, String))> {
    let mut named: Vec<(String, (String, String))> =
        vec![("0".into(), ("0".into(), "1".into())), ("1".into(), ("2".into(), "3".into()))];
    for _ in 1..n {
        let mut next = Vec::new();
        for (c, (x, y)) in &named {
            next.push((format!("{c}0"), (format!("{x}0"), format!("{y}0"))));
            next.push((format!("{c}1"), (format!("{x}1"), format!("{y}1"))));
            next.push((format!("{c}2"), (format!("{x}2"), format!("{x}3"))));
            next.push((format!("{c}3"), (format!("{y}2"), format!("{y}3"))));
        }
        named = next;
    }
    named.sort();
    named
}

pub fn word_index(w: &str) -> usize {
    w.bytes().fold(0, |acc, b| acc * 4 + (b - b'0') as usize)
}
