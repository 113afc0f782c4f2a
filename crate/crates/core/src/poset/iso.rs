use super::FinitePoset;
use crate::error::{Error, Result};

/// Largest poset accepted by the isomorphism search.
pub const ISO_BOUND: usize = 10;

/// Finds `phi` with `a.le(x, y) <=> b.le(phi[x], phi[y])`, if one exists.
///
/// Backtracking over bijections, pruned by (up-degree, down-degree).
pub fn find_isomorphism(a: &FinitePoset, b: &FinitePoset) -> Result<Option<Vec<usize>>> {
    for p in [a, b] {
        if p.len() > ISO_BOUND {
            return Err(Error::SizeBound {
                what: "poset",
                size: p.len(),
                bound: ISO_BOUND,
            });
        }
    }
    if a.len() != b.len() || a.relation_size() != b.relation_size() {
        return Ok(None);
    }
    let deg = |p: &FinitePoset, x: usize| (p.up(x).count_ones(..), p.down(x).count_ones(..));
    let da: Vec<_> = (0..a.len()).map(|x| deg(a, x)).collect();
    let db: Vec<_> = (0..b.len()).map(|x| deg(b, x)).collect();
    let mut sa = da.clone();
    let mut sb = db.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Ok(None);
    }
    let mut phi = vec![usize::MAX; a.len()];
    let mut used = vec![false; b.len()];
    if search(a, b, &da, &db, 0, &mut phi, &mut used) {
        Ok(Some(phi))
    } else {
        Ok(None)
    }
}

fn search(
    a: &FinitePoset,
    b: &FinitePoset,
    da: &[(usize, usize)],
    db: &[(usize, usize)],
    x: usize,
    phi: &mut [usize],
    used: &mut [bool],
) -> bool {
    if x == a.len() {
        return true;
    }
    for y in 0..b.len() {
        if used[y] || da[x] != db[y] {
            continue;
        }
        let consistent = (0..x).all(|w| a.le(w, x) == b.le(phi[w], y) && a.le(x, w) == b.le(y, phi[w]));
        if !consistent {
            continue;
        }
        phi[x] = y;
        used[y] = true;
        if search(a, b, da, db, x + 1, phi, used) {
            return true;
        }
        used[y] = false;
    }
    phi[x] = usize::MAX;
    false
}

pub fn is_isomorphic(a: &FinitePoset, b: &FinitePoset) -> Result<bool> {
    Ok(find_isomorphism(a, b)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chains_vs_antichains() {
        let c3 = FinitePoset::chain(3).unwrap();
        let a3 = FinitePoset::antichain(3).unwrap();
        assert!(is_isomorphic(&c3, &c3).unwrap());
        assert!(!is_isomorphic(&c3, &a3).unwrap());
        let big = FinitePoset::chain(11).unwrap();
        assert!(matches!(is_isomorphic(&big, &big), Err(Error::SizeBound { .. })));
    }

    #[test]
    fn relabeled_v() {
        let l = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let v1 = FinitePoset::new(l(&["a", "b", "c"]), &[(0, 2), (1, 2)]).unwrap();
        let v2 = FinitePoset::new(l(&["x", "y", "z"]), &[(1, 0), (2, 0)]).unwrap();
        let phi = find_isomorphism(&v1, &v2).unwrap().unwrap();
        assert_eq!(phi[2], 0);
        let lam = FinitePoset::new(l(&["x", "y", "z"]), &[(0, 1), (0, 2)]).unwrap();
        assert!(!is_isomorphic(&v1, &lam).unwrap());
    }
}
