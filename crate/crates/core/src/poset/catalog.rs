use std::collections::BTreeMap;

use super::FinitePoset;
use crate::error::{Error, Result};

const CATALOG_BOUND: usize = 6;

/// One representative of every isomorphism type of `n`-element posets.
///
/// Every poset has a labeling where `x < y` implies `x < y` as integers, so
/// it suffices to enumerate transitive upper-triangular relations and keep
/// one per canonical form. Output order is by canonical code.
pub fn all_posets(n: usize) -> Result<Vec<FinitePoset>> {
    if n == 0 {
        return Err(Error::ZeroSize);
    }
    if n > CATALOG_BOUND {
        return Err(Error::SizeBound {
            what: "catalog size",
            size: n,
            bound: CATALOG_BOUND,
        });
    }
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
    let perms = permutations(n);
    let mut found: BTreeMap<u64, Vec<Vec<bool>>> = BTreeMap::new();
    for mask in 0u64..(1 << slots.len()) {
        let mut rel = vec![vec![false; n]; n];
        for (i, &(x, y)) in slots.iter().enumerate() {
            rel[x][y] = mask >> i & 1 == 1;
        }
        for (x, row) in rel.iter_mut().enumerate() {
            row[x] = true;
        }
        let transitive = (0..n).all(|x| (0..n).all(|y| !rel[x][y] || (0..n).all(|z| !rel[y][z] || rel[x][z])));
        if !transitive {
            continue;
        }
        let code = perms.iter().map(|p| encode(&rel, p)).min().expect("nonempty");
        found.entry(code).or_insert(rel);
    }
    Ok(found
        .into_values()
        .map(|rel| {
            let labels = (0..n).map(|i| i.to_string()).collect();
            FinitePoset::from_fn(labels, |x, y| rel[x][y]).expect("transitive relation")
        })
        .collect())
}

fn encode(rel: &[Vec<bool>], perm: &[usize]) -> u64 {
    let n = rel.len();
    let mut code = 0u64;
    for x in 0..n {
        for y in 0..n {
            if rel[x][y] {
                code |= 1 << (perm[x] * n + perm[y]);
            }
        }
    }
    code
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::is_isomorphic;

    #[test]
    fn known_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| all_posets(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 16, 63]);
    }

    #[test]
    fn representatives_pairwise_distinct() {
        let ps = all_posets(4).unwrap();
        for i in 0..ps.len() {
            for j in i + 1..ps.len() {
                assert!(!is_isomorphic(&ps[i], &ps[j]).unwrap());
            }
        }
    }
}
