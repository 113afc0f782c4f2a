use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::FinitePoset;
use crate::error::{Error, Result};

/// A total function between two finite posets.
///
/// Posets are shared behind `Arc` so that long chains of maps over the same
/// level do not copy relation matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetMap {
    domain: Arc<FinitePoset>,
    codomain: Arc<FinitePoset>,
    assignment: Vec<usize>,
}

pub(crate) fn same_poset(a: &Arc<FinitePoset>, b: &Arc<FinitePoset>) -> bool {
    Arc::ptr_eq(a, b) || a.same_order(b)
}

impl PosetMap {
    pub fn new(
        domain: Arc<FinitePoset>,
        codomain: Arc<FinitePoset>,
        assignment: Vec<usize>,
    ) -> Result<Self> {
        if assignment.len() != domain.len() {
            return Err(Error::AssignmentLength {
                expected: domain.len(),
                got: assignment.len(),
            });
        }
        for &v in &assignment {
            codomain.check(v)?;
        }
        Ok(PosetMap {
            domain,
            codomain,
            assignment,
        })
    }

    pub fn identity(p: Arc<FinitePoset>) -> Self {
        let assignment = (0..p.len()).collect();
        PosetMap {
            domain: p.clone(),
            codomain: p,
            assignment,
        }
    }

    pub fn constant(domain: Arc<FinitePoset>, codomain: Arc<FinitePoset>, value: usize) -> Result<Self> {
        let n = domain.len();
        Self::new(domain, codomain, vec![value; n])
    }

    pub fn domain(&self) -> &Arc<FinitePoset> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FinitePoset> {
        &self.codomain
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &PosetMap) -> Result<PosetMap> {
        if !same_poset(&self.codomain, &next.domain) {
            return Err(Error::NotComposable);
        }
        Ok(PosetMap {
            domain: self.domain.clone(),
            codomain: next.codomain.clone(),
            assignment: self.assignment.iter().map(|&x| next.assignment[x]).collect(),
        })
    }

    /// Image of a set of domain elements.
    pub fn image(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.codomain.len());
        out.extend(set.ones().map(|x| self.assignment[x]));
        out
    }

    /// Preimage of a set of codomain elements.
    pub fn preimage(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.domain.len());
        out.extend((0..self.assignment.len()).filter(|&x| set.contains(self.assignment[x])));
        out
    }

    /// Same domain, codomain and values.
    pub fn agrees_with(&self, other: &PosetMap) -> bool {
        self.assignment == other.assignment
            && same_poset(&self.domain, &other.domain)
            && same_poset(&self.codomain, &other.codomain)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_and_errors() {
        let c2 = Arc::new(FinitePoset::chain(2).unwrap());
        let p = Arc::new(FinitePoset::point());
        let f = PosetMap::constant(c2.clone(), p.clone(), 0).unwrap();
        let g = PosetMap::identity(p.clone());
        assert_eq!(f.then(&g).unwrap().assignment(), &[0, 0]);
        assert_eq!(g.then(&f), Err(Error::NotComposable));
        assert!(matches!(
            PosetMap::new(c2.clone(), p.clone(), vec![0]),
            Err(Error::AssignmentLength { .. })
        ));
        assert!(matches!(
            PosetMap::new(c2, p, vec![0, 1]),
            Err(Error::ForeignElement { index: 1, .. })
        ));
    }
}
