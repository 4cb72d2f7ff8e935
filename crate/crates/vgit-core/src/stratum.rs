//! Unions of coordinate subspaces V(J), stored irredundantly.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::{VgitError, WeightSystem};

/// An irredundant union of coordinate subspaces. Each stratum is the
/// vanishing-index set J of V(J) = {x : x_j = 0 for j in J}.
///
/// Invariants: no stratum's index set contains another's (V(J) absorbs into
/// V(J') when J is a superset of J'), and strata are kept in lexicographic
/// order of their sorted index lists, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumUnion {
    strata: Vec<BTreeSet<usize>>,
}

impl StratumUnion {
    /// The empty union (no strata at all, the empty set of points).
    pub fn empty() -> Self {
        StratumUnion { strata: Vec::new() }
    }

    /// The union consisting of the single stratum V(empty) = whole space.
    pub fn whole_space() -> Self {
        StratumUnion {
            strata: vec![BTreeSet::new()],
        }
    }

    /// Canonicalize: deduplicate, drop any index set containing another,
    /// sort lexicographically.
    pub fn from_index_sets<I>(sets: I) -> Self
    where
        I: IntoIterator<Item = BTreeSet<usize>>,
    {
        let mut sets: Vec<BTreeSet<usize>> = sets.into_iter().collect();
        sets.sort();
        sets.dedup();
        let minimal: Vec<BTreeSet<usize>> = sets
            .iter()
            .filter(|j| !sets.iter().any(|other| *j != other && other.is_subset(j)))
            .cloned()
            .collect();
        StratumUnion { strata: minimal }
    }

    pub fn strata(&self) -> &[BTreeSet<usize>] {
        &self.strata
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    pub fn is_whole_space(&self) -> bool {
        self.strata.len() == 1 && self.strata[0].is_empty()
    }

    /// Does the union contain the point whose nonzero coordinates are exactly
    /// `support`? True iff some stratum's indices all avoid the support.
    pub fn contains_support(&self, support: &crate::SupportPattern) -> bool {
        self.strata
            .iter()
            .any(|j| j.iter().all(|&idx| !support.contains(idx)))
    }

    /// Restriction to V(Z): delete the indices in `drop` from every stratum
    /// and renumber the survivors to the restricted system's coordinates.
    pub fn map_drop(&self, drop: &BTreeSet<usize>) -> StratumUnion {
        let renumber = |j: usize| j - drop.iter().filter(|&&d| d < j).count();
        StratumUnion::from_index_sets(self.strata.iter().map(|set| {
            set.iter()
                .filter(|idx| !drop.contains(idx))
                .map(|&idx| renumber(idx))
                .collect()
        }))
    }

    pub fn to_label_sets(&self, ws: &WeightSystem) -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> = self
            .strata
            .iter()
            .map(|j| {
                let mut labels: Vec<String> =
                    j.iter().map(|&idx| ws.label_of(idx).to_string()).collect();
                labels.sort();
                labels
            })
            .collect();
        out.sort();
        out
    }

    pub fn from_label_sets(
        ws: &WeightSystem,
        sets: &[Vec<String>],
    ) -> Result<StratumUnion, VgitError> {
        let mut index_sets = Vec::with_capacity(sets.len());
        for labels in sets {
            let mut j = BTreeSet::new();
            for l in labels {
                let idx = ws
                    .index_of_label(l)
                    .ok_or_else(|| VgitError::InvalidSystem(format!("unknown label {l:?}")))?;
                j.insert(idx);
            }
            index_sets.push(j);
        }
        Ok(StratumUnion::from_index_sets(index_sets))
    }

    /// JSON form: {"strata": [["label", ...], ...]} sorted lexicographically.
    pub fn to_json_value(&self, ws: &WeightSystem) -> serde_json::Value {
        #[derive(Serialize)]
        struct Doc {
            strata: Vec<Vec<String>>,
        }
        serde_json::to_value(Doc {
            strata: self.to_label_sets(ws),
        })
        .expect("stratum union serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn irredundancy_keeps_minimal_sets() {
        let u = StratumUnion::from_index_sets(vec![set(&[0, 1]), set(&[0]), set(&[0, 1, 2])]);
        assert_eq!(u.strata(), &[set(&[0])]);
    }

    #[test]
    fn incomparable_sets_survive() {
        let u = StratumUnion::from_index_sets(vec![set(&[0, 1]), set(&[1, 2]), set(&[0, 1])]);
        assert_eq!(u.strata(), &[set(&[0, 1]), set(&[1, 2])]);
    }

    #[test]
    fn whole_space_absorbs_everything() {
        let u = StratumUnion::from_index_sets(vec![set(&[2]), set(&[])]);
        assert!(u.is_whole_space());
    }

    #[test]
    fn map_drop_renumbers() {
        let u = StratumUnion::from_index_sets(vec![set(&[0, 2]), set(&[1, 3])]);
        let r = u.map_drop(&set(&[1]));
        assert_eq!(r.strata(), &[set(&[0, 1]), set(&[2])]);
    }

    #[test]
    fn contains_support_checks_vanishing() {
        let u = StratumUnion::from_index_sets(vec![set(&[0, 1])]);
        assert!(u.contains_support(&crate::SupportPattern::new([2, 3])));
        assert!(!u.contains_support(&crate::SupportPattern::new([0, 3])));
        assert!(!StratumUnion::empty().contains_support(&crate::SupportPattern::empty()));
    }
}
