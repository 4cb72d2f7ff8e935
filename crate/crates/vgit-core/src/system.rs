//! Weight systems: a rank-r torus acting diagonally on labeled coordinates,
//! together with a character.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::VgitError;

/// One coordinate of the affine space: a label and its weight vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coordinate {
    pub label: String,
    pub weights: Vec<i64>,
}

/// Diagonal action data: torus rank, character, ordered labeled coordinates.
///
/// Invariants (enforced at construction and deserialization): rank >= 1, the
/// character and every weight vector have length equal to the rank, labels
/// are unique.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawWeightSystem", into = "RawWeightSystem")]
pub struct WeightSystem {
    rank: usize,
    character: Vec<i64>,
    coords: Vec<Coordinate>,
}

#[derive(Serialize, Deserialize)]
struct RawWeightSystem {
    rank: usize,
    character: Vec<i64>,
    coords: Vec<Coordinate>,
}

impl TryFrom<RawWeightSystem> for WeightSystem {
    type Error = VgitError;

    fn try_from(raw: RawWeightSystem) -> Result<Self, VgitError> {
        WeightSystem::new(raw.rank, raw.character, raw.coords)
    }
}

impl From<WeightSystem> for RawWeightSystem {
    fn from(ws: WeightSystem) -> Self {
        RawWeightSystem {
            rank: ws.rank,
            character: ws.character,
            coords: ws.coords,
        }
    }
}

impl WeightSystem {
    pub fn new(
        rank: usize,
        character: Vec<i64>,
        coords: Vec<Coordinate>,
    ) -> Result<Self, VgitError> {
        if rank == 0 {
            return Err(VgitError::InvalidSystem("rank must be at least 1".into()));
        }
        if character.len() != rank {
            return Err(VgitError::DimensionMismatch {
                expected: rank,
                got: character.len(),
            });
        }
        let mut seen = BTreeSet::new();
        for c in &coords {
            if c.weights.len() != rank {
                return Err(VgitError::DimensionMismatch {
                    expected: rank,
                    got: c.weights.len(),
                });
            }
            if !seen.insert(c.label.as_str()) {
                return Err(VgitError::InvalidSystem(format!(
                    "duplicate coordinate label {:?}",
                    c.label
                )));
            }
        }
        drop(seen);
        Ok(WeightSystem {
            rank,
            character,
            coords,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn character(&self) -> &[i64] {
        &self.character
    }

    pub fn coords(&self) -> &[Coordinate] {
        &self.coords
    }

    /// Number of coordinates.
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn label_of(&self, index: usize) -> &str {
        &self.coords[index].label
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.coords.iter().position(|c| c.label == label)
    }

    pub fn has_zero_character(&self) -> bool {
        self.character.iter().all(|&x| x == 0)
    }

    /// Largest absolute value among the coordinate weight entries (0 if none).
    pub fn max_abs_weight(&self) -> i64 {
        self.coords
            .iter()
            .flat_map(|c| c.weights.iter())
            .map(|w| w.abs())
            .max()
            .unwrap_or(0)
    }

    /// Same system with the character negated. The plus chamber of a system
    /// is the minus chamber of its negation.
    pub fn negate_character(&self) -> WeightSystem {
        WeightSystem {
            rank: self.rank,
            character: self.character.iter().map(|&x| -x).collect(),
            coords: self.coords.clone(),
        }
    }

    /// Block-diagonal product: ranks add, characters concatenate, each factor's
    /// coordinates are padded with zero weights on the other factor.
    ///
    /// Labels are kept verbatim when the two label sets are disjoint; on any
    /// collision every label of the first factor gains the prefix "1." and
    /// every label of the second the prefix "2.".
    pub fn product(&self, other: &WeightSystem) -> WeightSystem {
        let rank = self.rank + other.rank;
        let mut character = self.character.clone();
        character.extend_from_slice(&other.character);

        let collision = self
            .coords
            .iter()
            .any(|c| other.index_of_label(&c.label).is_some());
        let mut coords = Vec::with_capacity(self.len() + other.len());
        for c in &self.coords {
            let mut weights = c.weights.clone();
            weights.extend(std::iter::repeat_n(0, other.rank));
            let label = if collision {
                format!("1.{}", c.label)
            } else {
                c.label.clone()
            };
            coords.push(Coordinate { label, weights });
        }
        for c in &other.coords {
            let mut weights = vec![0; self.rank];
            weights.extend_from_slice(&c.weights);
            let label = if collision {
                format!("2.{}", c.label)
            } else {
                c.label.clone()
            };
            coords.push(Coordinate { label, weights });
        }
        WeightSystem {
            rank,
            character,
            coords,
        }
    }

    /// Drop the coordinates in `vanishing`; rank and character are unchanged.
    /// Chambers of the restriction describe the original chambers inside V(Z).
    pub fn restrict(&self, vanishing: &BTreeSet<usize>) -> Result<WeightSystem, VgitError> {
        for &j in vanishing {
            if j >= self.len() {
                return Err(VgitError::SupportOutOfRange {
                    index: j,
                    coords: self.len(),
                });
            }
        }
        let coords = self
            .coords
            .iter()
            .enumerate()
            .filter(|(j, _)| !vanishing.contains(j))
            .map(|(_, c)| c.clone())
            .collect();
        Ok(WeightSystem {
            rank: self.rank,
            character: self.character.clone(),
            coords,
        })
    }

    /// For a rank-1 system: is the origin the unique closed orbit? True iff
    /// every weight is strictly positive or every weight is strictly negative.
    pub fn unique_closed_point(&self) -> Result<bool, VgitError> {
        if self.rank != 1 {
            return Err(VgitError::UnsupportedRank { rank: self.rank });
        }
        let ws: Vec<i64> = self.coords.iter().map(|c| c.weights[0]).collect();
        Ok(ws.iter().all(|&w| w > 0) || ws.iter().all(|&w| w < 0))
    }

    /// Exponent vectors a (0 < sum(a) <= degree_bound) of monomials x^a whose
    /// total weight W*a equals nu * character for an integer nu of the
    /// requested sign. With a zero character the condition degenerates to
    /// W*a = 0, and such monomials qualify for either sign.
    ///
    /// Results are in lexicographic order of the exponent vectors.
    pub fn semi_invariant_monomials(&self, sign: MonomialSign, degree_bound: u32) -> Vec<Vec<u32>> {
        let n = self.len();
        let mut out = Vec::new();
        let mut expo = vec![0u32; n];
        let mut acc = vec![0i64; self.rank];
        self.monomial_rec(sign, degree_bound, 0, &mut expo, &mut acc, &mut out);
        out
    }

    fn monomial_rec(
        &self,
        sign: MonomialSign,
        remaining: u32,
        pos: usize,
        expo: &mut Vec<u32>,
        acc: &mut Vec<i64>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if pos == self.len() {
            if expo.iter().any(|&e| e > 0) && self.monomial_qualifies(acc, sign) {
                out.push(expo.clone());
            }
            return;
        }
        for e in 0..=remaining {
            expo[pos] = e;
            if e > 0 {
                for (a, w) in acc.iter_mut().zip(&self.coords[pos].weights) {
                    *a += w;
                }
            }
            self.monomial_rec(sign, remaining - e, pos + 1, expo, acc, out);
        }
        for (a, w) in acc.iter_mut().zip(&self.coords[pos].weights) {
            *a -= i64::from(remaining) * w;
        }
        expo[pos] = 0;
    }

    fn monomial_qualifies(&self, total: &[i64], sign: MonomialSign) -> bool {
        if self.has_zero_character() {
            return total.iter().all(|&x| x == 0);
        }
        let pivot = self
            .character
            .iter()
            .position(|&x| x != 0)
            .expect("nonzero character");
        if total[pivot] % self.character[pivot] != 0 {
            return false;
        }
        let nu = total[pivot] / self.character[pivot];
        if nu == 0 || (nu < 0) != (sign == MonomialSign::Neg) {
            return false;
        }
        total
            .iter()
            .zip(&self.character)
            .all(|(&t, &c)| t == nu * c)
    }

    /// Coordinates grouped by primitive weight direction. Zero-weight
    /// coordinates belong to no class: they constrain nothing.
    pub(crate) fn ray_classes(&self) -> Vec<(Vec<i64>, Vec<usize>)> {
        let mut classes: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for (j, c) in self.coords.iter().enumerate() {
            if c.weights.iter().all(|&w| w == 0) {
                continue;
            }
            classes.entry(primitive(&c.weights)).or_default().push(j);
        }
        classes.into_iter().collect()
    }
}

/// Requested sign of the semi-invariant grading index nu.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialSign {
    Neg,
    Pos,
}

fn primitive(weights: &[i64]) -> Vec<i64> {
    let g = weights
        .iter()
        .fold(0i64, |g, &w| num_integer::gcd(g, w.abs()));
    debug_assert!(g > 0);
    weights.iter().map(|&w| w / g).collect()
}

/// Integer one-parameter subgroup of the torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneParamSubgroup(pub Vec<i64>);

impl OneParamSubgroup {
    pub fn pairing(&self, weights: &[i64]) -> i64 {
        self.0.iter().zip(weights).map(|(l, w)| l * w).sum()
    }
}

/// The set of coordinate indices that are nonzero at a point. Chamber
/// membership of a point depends only on this set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SupportPattern(BTreeSet<usize>);

impl SupportPattern {
    pub fn new<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        SupportPattern(indices.into_iter().collect())
    }

    pub fn empty() -> Self {
        SupportPattern(BTreeSet::new())
    }

    pub fn full(n: usize) -> Self {
        SupportPattern((0..n).collect())
    }

    /// Support from labels; unknown labels are an error.
    pub fn from_labels(ws: &WeightSystem, labels: &[&str]) -> Result<Self, VgitError> {
        let mut set = BTreeSet::new();
        for l in labels {
            let j = ws
                .index_of_label(l)
                .ok_or_else(|| VgitError::InvalidSystem(format!("unknown label {l:?}")))?;
            set.insert(j);
        }
        Ok(SupportPattern(set))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.0.contains(&j)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &SupportPattern) -> bool {
        self.0.is_subset(&other.0)
    }

    pub(crate) fn validate_against(&self, ws: &WeightSystem) -> Result<(), VgitError> {
        if let Some(&j) = self.0.iter().next_back() {
            if j >= ws.len() {
                return Err(VgitError::SupportOutOfRange {
                    index: j,
                    coords: ws.len(),
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coord(label: &str, weights: &[i64]) -> Coordinate {
        Coordinate {
            label: label.into(),
            weights: weights.to_vec(),
        }
    }

    #[test]
    fn rejects_bad_systems() {
        assert!(WeightSystem::new(0, vec![], vec![]).is_err());
        assert!(WeightSystem::new(1, vec![1, 2], vec![]).is_err());
        assert!(WeightSystem::new(1, vec![1], vec![coord("x", &[1, 2])]).is_err());
        assert!(
            WeightSystem::new(1, vec![1], vec![coord("x", &[1]), coord("x", &[2])]).is_err()
        );
    }

    #[test]
    fn json_round_trip() {
        let ws = WeightSystem::new(
            2,
            vec![1, 1],
            vec![coord("a", &[1, 0]), coord("b", &[-3, 2])],
        )
        .unwrap();
        let text = serde_json::to_string(&ws).unwrap();
        assert_eq!(
            text,
            r#"{"rank":2,"character":[1,1],"coords":[{"label":"a","weights":[1,0]},{"label":"b","weights":[-3,2]}]}"#
        );
        let back: WeightSystem = serde_json::from_str(&text).unwrap();
        assert_eq!(back, ws);
    }

    #[test]
    fn deserialization_validates() {
        let bad = r#"{"rank":1,"character":[1],"coords":[{"label":"a","weights":[1,2]}]}"#;
        assert!(serde_json::from_str::<WeightSystem>(bad).is_err());
    }

    #[test]
    fn product_label_prefixing_only_on_collision() {
        let a = WeightSystem::new(1, vec![1], vec![coord("x", &[2])]).unwrap();
        let b = WeightSystem::new(1, vec![-1], vec![coord("y", &[3])]).unwrap();
        let p = a.product(&b);
        assert_eq!(p.rank(), 2);
        assert_eq!(p.character(), &[1, -1]);
        assert_eq!(p.label_of(0), "x");
        assert_eq!(p.label_of(1), "y");
        assert_eq!(p.coords()[0].weights, vec![2, 0]);
        assert_eq!(p.coords()[1].weights, vec![0, 3]);

        let c = WeightSystem::new(1, vec![0], vec![coord("x", &[5])]).unwrap();
        let q = a.product(&c);
        assert_eq!(q.label_of(0), "1.x");
        assert_eq!(q.label_of(1), "2.x");
    }

    #[test]
    fn ray_classes_group_proportional_weights() {
        let ws = WeightSystem::new(
            2,
            vec![1, 1],
            vec![
                coord("a", &[-2, 0]),
                coord("b", &[-6, 0]),
                coord("c", &[0, 0]),
                coord("d", &[3, 3]),
            ],
        )
        .unwrap();
        let classes = ws.ray_classes();
        assert_eq!(classes.len(), 2);
        assert_eq!(classes[0], (vec![-1, 0], vec![0, 1]));
        assert_eq!(classes[1], (vec![1, 1], vec![3]));
    }

    #[test]
    fn unique_closed_point_rank_one_only() {
        let pos = WeightSystem::new(1, vec![1], vec![coord("a", &[1]), coord("b", &[3])]).unwrap();
        assert!(pos.unique_closed_point().unwrap());
        let mixed =
            WeightSystem::new(1, vec![1], vec![coord("a", &[1]), coord("b", &[-1])]).unwrap();
        assert!(!mixed.unique_closed_point().unwrap());
        let wide = WeightSystem::new(2, vec![1, 0], vec![]).unwrap();
        assert!(wide.unique_closed_point().is_err());
    }
}
