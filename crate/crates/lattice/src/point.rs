use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A point of `Z_{≥0}^n`, i.e. the exponent vector of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(pub Vec<u32>);

impl LatticePoint {
    pub fn origin(n: usize) -> Self {
        LatticePoint(vec![0; n])
    }

    /// The unit vector `e_i`, with `i` counted from 1.
    pub fn unit(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i), "unit vector index {i} out of range 1..={n}");
        let mut c = vec![0; n];
        c[i - 1] = 1;
        LatticePoint(c)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(|c| *c == 0)
    }

    /// `Some(i)` (1-based) when the point is `e_i`.
    pub fn unit_index(&self) -> Option<usize> {
        let mut found = None;
        for (k, c) in self.0.iter().enumerate() {
            match c {
                0 => {}
                1 if found.is_none() => found = Some(k + 1),
                _ => return None,
            }
        }
        found
    }

    pub fn support_size(&self) -> usize {
        self.0.iter().filter(|c| **c > 0).count()
    }

    /// `self + e_i`, 1-based.
    pub fn plus_unit(&self, i: usize) -> LatticePoint {
        let mut c = self.0.clone();
        c[i - 1] += 1;
        LatticePoint(c)
    }

    /// The points `self - e_i` that lie in the positive orthant.
    pub fn predecessors(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        self.0.iter().enumerate().filter(|(_, c)| **c > 0).map(|(k, _)| {
            let mut c = self.0.clone();
            c[k] -= 1;
            LatticePoint(c)
        })
    }

    pub fn as_i64(&self) -> Vec<i64> {
        self.0.iter().map(|c| i64::from(*c)).collect()
    }

    /// Reverse-lexicographic comparison: the last coordinate decides first.
    pub fn revlex_cmp(&self, other: &LatticePoint) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }

    /// Componentwise order, i.e. divisibility of the monomials.
    pub fn divides(&self, other: &LatticePoint) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
