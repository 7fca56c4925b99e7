use serde::{Deserialize, Deserializer, Serialize};

use crate::error::LatticeError;
use crate::partition::{Limits, Partition};
use crate::point::LatticePoint;

/// A chain `λ_1 ⊂ … ⊂ λ_{r+1}` of order ideals with `|λ_i| = d_0 + … + d_{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NestedPartition {
    dims: Vec<usize>,
    layers: Vec<Partition>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NestedRepr {
    dims: Vec<usize>,
    layers: Vec<Partition>,
}

impl<'de> Deserialize<'de> for NestedPartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = NestedRepr::deserialize(deserializer)?;
        NestedPartition::new(repr.dims, repr.layers).map_err(serde::de::Error::custom)
    }
}

/// Partial sums `D_0 = 0, D_1 = d_0, …, D_{r+1} = d`.
pub fn partial_sums(dims: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(dims.len() + 1);
    let mut acc = 0;
    out.push(0);
    for d in dims {
        acc += d;
        out.push(acc);
    }
    out
}

impl NestedPartition {
    pub fn new(dims: Vec<usize>, layers: Vec<Partition>) -> Result<Self, LatticeError> {
        if dims.is_empty() {
            return Err(LatticeError::InvalidPartition("empty dimension vector".into()));
        }
        if dims.len() != layers.len() {
            return Err(LatticeError::InvalidPartition(format!(
                "{} dimensions but {} layers",
                dims.len(),
                layers.len()
            )));
        }
        let n = layers.iter().map(Partition::n).max().unwrap_or(0);
        let sums = partial_sums(&dims);
        let mut layers = layers;
        for (i, layer) in layers.iter_mut().enumerate() {
            if layer.is_empty() && layer.n() != n {
                *layer = Partition::empty(n);
            }
            if layer.n() != n {
                return Err(LatticeError::InvalidPartition("layers live in different dimensions".into()));
            }
            if layer.len() != sums[i + 1] {
                return Err(LatticeError::InvalidPartition(format!(
                    "layer {} has {} points, expected {}",
                    i + 1,
                    layer.len(),
                    sums[i + 1]
                )));
            }
        }
        if let Some(i) = (1..layers.len()).find(|i| !layers[i - 1].is_subset(&layers[*i])) {
            return Err(LatticeError::InvalidPartition(format!("layer {i} is not contained in layer {}", i + 1)));
        }
        Ok(NestedPartition { dims, layers })
    }

    /// A single-layer chain.
    pub fn single(p: Partition) -> Self {
        NestedPartition {
            dims: vec![p.len()],
            layers: vec![p],
        }
    }

    pub fn n(&self) -> usize {
        self.top().n()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn layers(&self) -> &[Partition] {
        &self.layers
    }

    /// `λ_i` with `i` counted from 1.
    pub fn layer(&self, i: usize) -> &Partition {
        &self.layers[i - 1]
    }

    pub fn top(&self) -> &Partition {
        self.layers.last().expect("at least one layer")
    }

    pub fn total(&self) -> usize {
        self.top().len()
    }

    /// Points of `λ_{i}` not in `λ_{i-1}` (1-based, `λ_0 = ∅`).
    pub fn new_points(&self, i: usize) -> impl Iterator<Item = &LatticePoint> {
        let below = (i >= 2).then(|| &self.layers[i - 2]);
        self.layers[i - 1]
            .points()
            .iter()
            .filter(move |p| below.is_none_or(|b| !b.contains(p)))
    }

    /// No pure power above 4, no two-coordinate point of total degree above 3
    /// and no point with three or more nonzero coordinates in the top layer.
    pub fn is_admissible(&self) -> bool {
        self.top().points().iter().all(|p| match p.support_size() {
            0 => true,
            1 => p.degree() <= 4,
            2 => p.degree() <= 3,
            _ => false,
        })
    }

    /// For `k ≥ 1`, no `u ∈ λ_{k+1} \ λ_k` has `u + e_i ∈ λ_{k+1}`.
    pub fn is_nilfil(&self) -> Result<bool, LatticeError> {
        if self.dims[0] != 1 {
            return Err(LatticeError::RequiresPointedDims);
        }
        let n = self.n();
        for k in 2..=self.layers.len() {
            let layer = self.layer(k);
            for u in self.new_points(k) {
                if (1..=n).any(|i| layer.contains(&u.plus_unit(i))) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether the layers are the initial unit-vector segments `{0, e_1, …, e_{D_i - 1}}`.
    pub fn is_porteous(&self) -> bool {
        self.dims[0] == 1
            && self
                .top()
                .points()
                .iter()
                .all(|p| p.is_origin() || p.unit_index().is_some())
            && porteous(self.n(), &self.dims).is_ok_and(|p| &p == self)
    }
}

/// Every nested chain with the given layer sizes, in a fixed order.
pub fn enumerate_nested(n: usize, dims: &[usize]) -> Result<Vec<NestedPartition>, LatticeError> {
    enumerate_nested_with(n, dims, &Limits::default())
}

pub fn enumerate_nested_with(n: usize, dims: &[usize], limits: &Limits) -> Result<Vec<NestedPartition>, LatticeError> {
    if n == 0 {
        return Err(LatticeError::InvalidArgument("n must be positive".into()));
    }
    if dims.is_empty() {
        return Err(LatticeError::InvalidArgument("dims must be nonempty".into()));
    }
    limits.check_points(dims.iter().sum())?;
    let mut chains: Vec<Vec<Partition>> = Partition::empty(n)
        .supersets(dims[0])
        .into_iter()
        .map(|p| vec![p])
        .collect();
    for &d in &dims[1..] {
        chains = chains
            .into_iter()
            .flat_map(|chain| {
                let last = chain.last().unwrap().clone();
                last.supersets(d).into_iter().map(move |p| {
                    let mut next = chain.clone();
                    next.push(p);
                    next
                })
            })
            .collect();
    }
    Ok(chains
        .into_iter()
        .map(|layers| NestedPartition {
            dims: dims.to_vec(),
            layers,
        })
        .collect())
}

/// The chain `λ_i = {0, e_1, …, e_{D_i - 1}}`.
pub fn porteous(n: usize, dims: &[usize]) -> Result<NestedPartition, LatticeError> {
    if dims.first() != Some(&1) {
        return Err(LatticeError::RequiresPointedDims);
    }
    let d: usize = dims.iter().sum();
    if d - 1 > n {
        return Err(LatticeError::TooManyPoints { needed: d - 1, n });
    }
    let sums = partial_sums(dims);
    let layers = sums[1..]
        .iter()
        .map(|&size| {
            let mut pts = vec![LatticePoint::origin(n)];
            pts.extend((1..size).map(|i| LatticePoint::unit(n, i)));
            pts.sort();
            Partition::from_sorted_unchecked(n, pts)
        })
        .collect();
    Ok(NestedPartition {
        dims: dims.to_vec(),
        layers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_counts() {
        assert_eq!(enumerate_nested(1, &[1, 2]).unwrap().len(), 1);
        assert_eq!(enumerate_nested(2, &[1, 1]).unwrap().len(), 2);
        assert_eq!(enumerate_nested(2, &[3]).unwrap().len(), 3);
    }

    #[test]
    fn porteous_examples() {
        let p = porteous(3, &[1, 1, 1]).unwrap();
        assert_eq!(p.layer(2).points(), &[LatticePoint(vec![0, 0, 0]), LatticePoint(vec![1, 0, 0])]);
        assert!(p.is_porteous());
        assert_eq!(porteous(1, &[1, 1, 1]), Err(LatticeError::TooManyPoints { needed: 2, n: 1 }));
    }

    #[test]
    fn rejects_bad_chains() {
        let a = Partition::new(2, [LatticePoint(vec![0, 0]), LatticePoint(vec![1, 0])]).unwrap();
        let b = Partition::new(2, [LatticePoint(vec![0, 0]), LatticePoint(vec![0, 1])]).unwrap();
        assert!(NestedPartition::new(vec![2, 0], vec![a.clone(), b]).is_err());
        assert!(NestedPartition::new(vec![1, 1], vec![a.clone(), a]).is_err());
    }
}
