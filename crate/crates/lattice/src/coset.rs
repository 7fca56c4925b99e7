use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::LatticeError;
use crate::nested::NestedPartition;
use crate::point::LatticePoint;

/// A coset of `S_n / (S_{d̂_1} × … × S_{d̂_r} × S_{n-k})`, stored as the tuple
/// `(σ(1), …, σ(k))` (1-based) with entries increasing inside each flag block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coset(pub Vec<usize>);

/// The flag block of index `j` (1-based): `p` for `j` in the `p`-th block of
/// `dhat`, and `r + 1` for `j > k`.
pub fn flag_block(dhat: &[usize], j: usize) -> usize {
    let mut end = 0;
    for (p, d) in dhat.iter().enumerate() {
        end += d;
        if j <= end {
            return p + 1;
        }
    }
    dhat.len() + 1
}

impl Coset {
    pub fn identity(k: usize) -> Self {
        Coset((1..=k).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `σ(j)` for `1 ≤ j ≤ k`.
    pub fn apply(&self, j: usize) -> usize {
        self.0[j - 1]
    }

    pub fn validate(&self, n: usize, dhat: &[usize]) -> Result<(), LatticeError> {
        let k: usize = dhat.iter().sum();
        if k > n {
            return Err(LatticeError::TooManyPoints { needed: k, n });
        }
        if self.0.len() != k {
            return Err(LatticeError::InvalidCoset(format!("expected {k} entries, found {}", self.0.len())));
        }
        if let Some(v) = self.0.iter().find(|v| !(1..=n).contains(*v)) {
            return Err(LatticeError::InvalidCoset(format!("entry {v} outside 1..={n}")));
        }
        if !self.0.iter().all_unique() {
            return Err(LatticeError::InvalidCoset("entries must be distinct".into()));
        }
        let mut start = 0;
        for d in dhat {
            if self.0[start..start + d].windows(2).any(|w| w[0] > w[1]) {
                return Err(LatticeError::InvalidCoset("entries must increase within each block".into()));
            }
            start += d;
        }
        Ok(())
    }

    /// The permutation of `1..=n` obtained by listing the unused indices in increasing order.
    pub fn extended(&self, n: usize) -> Vec<usize> {
        let mut full = self.0.clone();
        full.extend((1..=n).filter(|i| !self.0.contains(i)));
        full
    }
}

impl fmt::Display for Coset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// Every coset representative for the block structure `dhat` inside `S_n`.
pub fn all_cosets(n: usize, dhat: &[usize]) -> Result<Vec<Coset>, LatticeError> {
    let k: usize = dhat.iter().sum();
    if k > n {
        return Err(LatticeError::TooManyPoints { needed: k, n });
    }
    let mut out = vec![Vec::new()];
    for &d in dhat {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                let free: Vec<usize> = (1..=n).filter(|i| !prefix.contains(i)).collect();
                free.into_iter().combinations(d).map(move |block| {
                    let mut next = prefix.clone();
                    next.extend(block);
                    next
                })
            })
            .collect();
    }
    Ok(out.into_iter().map(Coset).collect())
}

/// Whether the nil-fil chain is a fixed point of the fiber `H_σ`: with `σ`
/// extended to all of `1..=n`, `e_{σ(j)} ∉ λ_{w(j)}` for every `j`, where `w`
/// is the flag block function.
pub fn in_flag_fiber(nested: &NestedPartition, sigma: &Coset) -> Result<bool, LatticeError> {
    if !nested.is_nilfil()? {
        return Err(LatticeError::RequiresNilfil);
    }
    let n = nested.n();
    let dhat = &nested.dims()[1..];
    sigma.validate(n, dhat)?;
    let full = sigma.extended(n);
    Ok((1..=n).all(|j| {
        let layer = nested.layer(flag_block(dhat, j));
        !layer.contains(&LatticePoint::unit(n, full[j - 1]))
    }))
}
