//! JSON schemas for posets, maps, systems, threads and ternary functions.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::DownSet;
use crate::limit::{IdealSystem, IdealThread, InverseSystem};
use crate::poset::{FinitePoset, PosetMap};
use crate::ternary::{ComponentIndex, TernaryFunction};
use crate::universal::UniversalSequence;

/// `{"elements": [...], "le": [[i, j], ...]}`. Reflexive pairs may be left
/// out; no other pair is inferred.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub le: Vec<[usize; 2]>,
}

impl PosetJson {
    /// Strict pairs only.
    pub fn from_poset(p: &FinitePoset) -> Self {
        PosetJson {
            elements: p.labels().to_vec(),
            le: p.strict_pairs().map(|(a, b)| [a, b]).collect(),
        }
    }

    pub fn to_poset(&self) -> Result<FinitePoset> {
        let pairs: Vec<(usize, usize)> = self.le.iter().map(|&[a, b]| (a, b)).collect();
        FinitePoset::new(self.elements.clone(), &pairs)
    }
}

/// A poset given inline or as `{"level": n}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PosetSpec {
    Level { level: usize },
    Inline(PosetJson),
}

impl PosetSpec {
    pub fn resolve(&self, seq: &UniversalSequence) -> Result<Arc<FinitePoset>> {
        match self {
            PosetSpec::Level { level } => seq.level(*level),
            PosetSpec::Inline(p) => Ok(Arc::new(p.to_poset()?)),
        }
    }

    /// The level number, when given as one.
    pub fn level(&self) -> Option<usize> {
        match self {
            PosetSpec::Level { level } => Some(*level),
            PosetSpec::Inline(_) => None,
        }
    }
}

/// `{"domain": ..., "codomain": ..., "assignment": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub domain: PosetSpec,
    pub codomain: PosetSpec,
    pub assignment: Vec<usize>,
}

impl MapJson {
    pub fn from_map(f: &PosetMap) -> Self {
        MapJson {
            domain: PosetSpec::Inline(PosetJson::from_poset(f.domain())),
            codomain: PosetSpec::Inline(PosetJson::from_poset(f.codomain())),
            assignment: f.assignment().to_vec(),
        }
    }

    pub fn to_map(&self, seq: &UniversalSequence) -> Result<PosetMap> {
        PosetMap::new(self.domain.resolve(seq)?, self.codomain.resolve(seq)?, self.assignment.clone())
    }
}

/// Levels `L_0, L_1, ...` and steps `L_{k+1} -> L_k` as assignments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub levels: Vec<PosetSpec>,
    pub steps: Vec<Vec<usize>>,
}

impl SystemJson {
    pub fn from_system(s: &InverseSystem) -> Self {
        SystemJson {
            levels: (0..s.depth())
                .map(|k| PosetSpec::Inline(PosetJson::from_poset(s.level(k))))
                .collect(),
            steps: (0..s.depth() - 1).map(|k| s.step(k).assignment().to_vec()).collect(),
        }
    }

    pub fn to_system(&self, seq: &UniversalSequence) -> Result<InverseSystem> {
        let levels = self.levels.iter().map(|l| l.resolve(seq)).collect::<Result<Vec<_>>>()?;
        if self.steps.len() + 1 != levels.len() {
            return Err(Error::InvalidSystem {
                index: self.steps.len(),
                reason: "need one step per consecutive pair of levels".into(),
            });
        }
        let steps = self
            .steps
            .iter()
            .enumerate()
            .map(|(k, a)| PosetMap::new(levels[k + 1].clone(), levels[k].clone(), a.clone()))
            .collect::<Result<Vec<_>>>()?;
        InverseSystem::new(levels, steps)
    }
}

/// Down-set thread over the P-system: member indices per level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealThreadJson {
    pub levels: Vec<Vec<usize>>,
}

impl IdealThreadJson {
    pub fn from_thread(t: &IdealThread) -> Self {
        IdealThreadJson {
            levels: t.entries.iter().map(|a| a.ones().collect()).collect(),
        }
    }

    pub fn to_thread(&self, system: &IdealSystem) -> Result<IdealThread> {
        let entries = self
            .levels
            .iter()
            .enumerate()
            .map(|(k, members)| {
                if k >= system.depth() {
                    return Err(Error::DepthMismatch(self.levels.len(), system.depth()));
                }
                let p = system.base().level(k);
                let mut bits = p.empty_set();
                for &m in members {
                    p.check(m)?;
                    bits.insert(m);
                }
                DownSet::new(p, bits)
            })
            .collect::<Result<Vec<_>>>()?;
        IdealThread::new(system, entries)
    }
}

/// `{"n": n, "values": {"c-word": 0|1|2}}`, missing words meaning 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TernaryJson {
    pub n: usize,
    pub values: BTreeMap<String, u8>,
}

impl TernaryJson {
    pub fn from_function(index: &ComponentIndex, f: &TernaryFunction) -> Self {
        TernaryJson {
            n: f.n,
            values: f
                .values
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(r, &v)| (index.word(r), v))
                .collect(),
        }
    }

    pub fn to_function(&self, index: &ComponentIndex) -> Result<TernaryFunction> {
        if index.n() != self.n {
            return Err(Error::DepthMismatch(self.n, index.n()));
        }
        let mut values = vec![0; index.len()];
        for (w, &v) in &self.values {
            values[index.rank(w)?] = v;
        }
        TernaryFunction::new(self.n, values)
    }
}

/// A lattice map for the isomorphism criterion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeMapJson {
    pub source: PosetJson,
    pub target: PosetJson,
    pub table: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_round_trip() {
        let p = FinitePoset::chain(3).unwrap();
        let j = PosetJson::from_poset(&p);
        assert_eq!(j.le, vec![[0, 1], [0, 2], [1, 2]]);
        assert_eq!(j.to_poset().unwrap(), p);
    }

    #[test]
    fn transitivity_not_inferred() {
        let j: PosetJson = serde_json::from_str(r#"{"elements":["a","b","c"],"le":[[0,1],[1,2]]}"#).unwrap();
        assert!(matches!(j.to_poset(), Err(Error::InvalidPoset(_))));
    }

    #[test]
    fn level_shorthand() {
        let seq = UniversalSequence::new(3).unwrap();
        let m: MapJson = serde_json::from_str(r#"{"domain":{"level":2},"codomain":{"level":1},"assignment":[0,0,0,0,1,1,1,1,2,2,2,2,3,3,3,3]}"#).unwrap();
        let f = m.to_map(&seq).unwrap();
        assert_eq!(f.assignment(), seq.projection(2, 1).unwrap().assignment());
    }

    #[test]
    fn ternary_round_trip() {
        let idx = ComponentIndex::new(2).unwrap();
        let j: TernaryJson = serde_json::from_str(r#"{"n":2,"values":{"10":1,"13":2}}"#).unwrap();
        let f = j.to_function(&idx).unwrap();
        assert_eq!(TernaryJson::from_function(&idx, &f), j);
    }
}
