use std::collections::BTreeSet;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::LatticeError;
use crate::point::LatticePoint;

/// Size guards for the exhaustive enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest total number of points in enumerated partitions and chains.
    pub max_points: usize,
    /// Largest number of points for which all enumerations are listed.
    pub max_enumeration_points: usize,
}

impl Limits {
    /// Absolute ceiling for `max_points`, whatever the configuration says.
    pub const HARD_CAP: usize = 14;

    pub fn with_max_points(max_points: usize) -> Self {
        Limits {
            max_points: max_points.min(Limits::HARD_CAP),
            ..Limits::default()
        }
    }

    pub(crate) fn check_points(&self, requested: usize) -> Result<(), LatticeError> {
        if requested > self.max_points {
            return Err(LatticeError::SizeGuardExceeded {
                requested,
                limit: self.max_points,
            });
        }
        Ok(())
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_points: 12,
            max_enumeration_points: 8,
        }
    }
}

/// A finite order ideal of `Z_{≥0}^n`, stored as a sorted point list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    n: usize,
    points: Vec<LatticePoint>,
}

impl Partition {
    /// Validates dimensions and downward closure.
    pub fn new(n: usize, points: impl IntoIterator<Item = LatticePoint>) -> Result<Self, LatticeError> {
        let set: BTreeSet<LatticePoint> = points.into_iter().collect();
        for p in &set {
            if p.dim() != n {
                return Err(LatticeError::InvalidPartition(format!(
                    "point {p} does not have {n} coordinates"
                )));
            }
            if let Some(missing) = p.predecessors().find(|q| !set.contains(q)) {
                return Err(LatticeError::InvalidPartition(format!(
                    "{p} is present but {missing} is not"
                )));
            }
        }
        Ok(Partition {
            n,
            points: set.into_iter().collect(),
        })
    }

    pub(crate) fn from_sorted_unchecked(n: usize, points: Vec<LatticePoint>) -> Self {
        Partition { n, points }
    }

    pub fn empty(n: usize) -> Self {
        Partition { n, points: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn is_subset(&self, other: &Partition) -> bool {
        self.points.iter().all(|p| other.contains(p))
    }

    /// Points outside the partition whose predecessors all lie inside.
    pub fn addable(&self) -> BTreeSet<LatticePoint> {
        if self.points.is_empty() {
            return BTreeSet::from([LatticePoint::origin(self.n)]);
        }
        self.points
            .iter()
            .flat_map(|p| (1..=self.n).map(move |i| p.plus_unit(i)))
            .filter(|q| !self.contains(q) && q.predecessors().all(|r| self.contains(&r)))
            .collect()
    }

    pub fn with_point(&self, p: LatticePoint) -> Partition {
        let mut points = self.points.clone();
        let pos = points.binary_search(&p).unwrap_err();
        points.insert(pos, p);
        Partition { n: self.n, points }
    }

    /// All order ideals containing `self` with exactly `extra` more points.
    pub fn supersets(&self, extra: usize) -> Vec<Partition> {
        let mut level: BTreeSet<Partition> = BTreeSet::from([self.clone()]);
        for _ in 0..extra {
            level = level
                .iter()
                .flat_map(|p| p.addable().into_iter().map(move |q| p.with_point(q)))
                .collect();
        }
        level.into_iter().collect()
    }
}

/// Every order ideal of `Z_{≥0}^n` with `size` points, in a fixed order.
pub fn enumerate_partitions(n: usize, size: usize) -> Result<Vec<Partition>, LatticeError> {
    enumerate_partitions_with(n, size, &Limits::default())
}

pub fn enumerate_partitions_with(n: usize, size: usize, limits: &Limits) -> Result<Vec<Partition>, LatticeError> {
    if n == 0 {
        return Err(LatticeError::InvalidArgument("n must be positive".into()));
    }
    limits.check_points(size)?;
    Ok(Partition::empty(n).supersets(size))
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.points.serialize(serializer)
    }
}

/// Decodes a bare point list; the dimension is read off the first point.
impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let points = Vec::<LatticePoint>::deserialize(deserializer)?;
        let n = points.first().map_or(0, LatticePoint::dim);
        Partition::new(n, points).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_values() {
        // Integer partitions of 1..6 and plane partitions of 1..5.
        let planar: Vec<usize> = (1..=6).map(|k| enumerate_partitions(2, k).unwrap().len()).collect();
        assert_eq!(planar, [1, 2, 3, 5, 7, 11]);
        let solid: Vec<usize> = (1..=5).map(|k| enumerate_partitions(3, k).unwrap().len()).collect();
        assert_eq!(solid, [1, 3, 6, 13, 24]);
    }

    #[test]
    fn rejects_non_ideals() {
        let bad = Partition::new(2, [LatticePoint(vec![0, 0]), LatticePoint(vec![1, 1])]);
        assert!(bad.is_err());
    }

    #[test]
    fn guard_is_enforced() {
        assert_eq!(
            enumerate_partitions(1, 13),
            Err(LatticeError::SizeGuardExceeded { requested: 13, limit: 12 })
        );
        assert_eq!(Limits::with_max_points(40).max_points, 14);
    }
}
