use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::WeightsError;

/// A virtual torus representation: integer weight vectors with signed multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SignedWeightMultiset {
    entries: BTreeMap<Vec<i64>, i64>,
}

impl SignedWeightMultiset {
    pub fn new() -> Self {
        SignedWeightMultiset::default()
    }

    pub fn from_entries<I: IntoIterator<Item = (Vec<i64>, i64)>>(entries: I) -> Self {
        let mut m = SignedWeightMultiset::new();
        for (w, k) in entries {
            m.insert(w, k);
        }
        m
    }

    /// Adds `mult` copies of `weight`; entries that reach zero are dropped.
    pub fn insert(&mut self, weight: Vec<i64>, mult: i64) {
        if mult == 0 {
            return;
        }
        match self.entries.entry(weight) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += mult;
                if *slot.get() == 0 {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(mult);
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[i64], i64)> {
        self.entries.iter().map(|(w, m)| (w.as_slice(), *m))
    }

    pub fn multiplicity(&self, weight: &[i64]) -> i64 {
        self.entries.get(weight).copied().unwrap_or(0)
    }

    /// Sum of all multiplicities.
    pub fn net_rank(&self) -> i64 {
        self.entries.values().sum()
    }

    /// Multiplicity of the zero weight.
    pub fn fixed_rank(&self) -> i64 {
        self.entries
            .iter()
            .filter(|(w, _)| w.iter().all(|c| *c == 0))
            .map(|(_, m)| *m)
            .sum()
    }

    /// The multiset with the zero weight removed.
    pub fn moving(&self) -> SignedWeightMultiset {
        SignedWeightMultiset {
            entries: self
                .entries
                .iter()
                .filter(|(w, _)| w.iter().any(|c| *c != 0))
                .map(|(w, m)| (w.clone(), *m))
                .collect(),
        }
    }

    pub fn is_effective(&self) -> bool {
        self.entries.values().all(|m| *m > 0)
    }

    /// `{u - v : u ∈ self}` with the same multiplicities.
    pub fn shifted_down(&self, v: &[i64]) -> SignedWeightMultiset {
        SignedWeightMultiset {
            entries: self
                .entries
                .iter()
                .map(|(w, m)| (w.iter().zip(v).map(|(a, b)| a - b).collect(), *m))
                .collect(),
        }
    }

    /// Applies a linear map to every weight, merging collisions.
    pub fn map_weights(&self, f: impl Fn(&[i64]) -> Vec<i64>) -> SignedWeightMultiset {
        SignedWeightMultiset::from_entries(self.entries.iter().map(|(w, m)| (f(w), *m)))
    }
}

impl Add for &SignedWeightMultiset {
    type Output = SignedWeightMultiset;
    fn add(self, rhs: &SignedWeightMultiset) -> SignedWeightMultiset {
        let mut out = self.clone();
        for (w, m) in &rhs.entries {
            out.insert(w.clone(), *m);
        }
        out
    }
}

impl Sub for &SignedWeightMultiset {
    type Output = SignedWeightMultiset;
    fn sub(self, rhs: &SignedWeightMultiset) -> SignedWeightMultiset {
        self + &(-rhs)
    }
}

impl Neg for &SignedWeightMultiset {
    type Output = SignedWeightMultiset;
    fn neg(self) -> SignedWeightMultiset {
        SignedWeightMultiset {
            entries: self.entries.iter().map(|(w, m)| (w.clone(), -m)).collect(),
        }
    }
}

impl fmt::Display for SignedWeightMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self
            .entries
            .iter()
            .map(|(w, m)| format!("({}):{m}", w.iter().join(",")))
            .join(", ");
        write!(f, "{{{body}}}")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonEntry {
    weight: Vec<i64>,
    mult: i64,
}

impl Serialize for SignedWeightMultiset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let list: Vec<JsonEntry> = self
            .entries
            .iter()
            .map(|(w, m)| JsonEntry {
                weight: w.clone(),
                mult: *m,
            })
            .collect();
        list.serialize(serializer)
    }
}

/// Rejects zero multiplicities, repeated weights and ragged weight lengths so
/// that the encoding stays canonical.
impl<'de> Deserialize<'de> for SignedWeightMultiset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let list = Vec::<JsonEntry>::deserialize(deserializer)?;
        let check = || -> Result<SignedWeightMultiset, WeightsError> {
            let mut entries = BTreeMap::new();
            let n = list.first().map(|e| e.weight.len());
            for e in list {
                if Some(e.weight.len()) != n {
                    return Err(WeightsError::Malformed("weights of different lengths".into()));
                }
                if e.mult == 0 {
                    return Err(WeightsError::Malformed("zero multiplicity".into()));
                }
                if entries.insert(e.weight, e.mult).is_some() {
                    return Err(WeightsError::Malformed("repeated weight".into()));
                }
            }
            Ok(SignedWeightMultiset { entries })
        };
        check().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_and_ranks() {
        let mut m = SignedWeightMultiset::new();
        m.insert(vec![1, 0], 2);
        m.insert(vec![0, 0], 1);
        m.insert(vec![1, 0], -2);
        assert_eq!(m.net_rank(), 1);
        assert_eq!(m.fixed_rank(), 1);
        assert!(m.moving().is_empty());
        assert_eq!(m.to_string(), "{(0,0):1}");
    }

    #[test]
    fn json_shape() {
        let m = SignedWeightMultiset::from_entries([(vec![1, -1], 1), (vec![0, 2], -3)]);
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(text, r#"[{"weight":[0,2],"mult":-3},{"weight":[1,-1],"mult":1}]"#);
        assert_eq!(serde_json::from_str::<SignedWeightMultiset>(&text).unwrap(), m);
        assert!(serde_json::from_str::<SignedWeightMultiset>(r#"[{"weight":[0],"mult":0}]"#).is_err());
    }
}
