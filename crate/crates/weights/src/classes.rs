//! Weight multisets of the K-theory classes at a monomial fixed point.
//!
//! Indices follow the enumeration `u_0 = 0, u_1, …, u_{d-1}` and its level
//! function `w`. Each class with a recursive description has two
//! constructions: the `*_direct` functions expand the index sets of the
//! closed formula, the plain functions build the level-by-level multisets
//! `S_m` and assemble `Σ_m Σ_{w(k) = m} {u - u_k : u ∈ S_m}`.

use nahilb_lattice::{in_flag_fiber, Coset, Enumeration, LatticeError};

use crate::error::WeightsError;
use crate::multiset::SignedWeightMultiset;

fn points(e: &Enumeration) -> Vec<Vec<i64>> {
    e.order().iter().map(|u| u.as_i64()).collect()
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn plus(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn minus(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn require_pointed(e: &Enumeration) -> Result<(), WeightsError> {
    if e.dims()[0] != 1 {
        return Err(LatticeError::RequiresPointedDims.into());
    }
    Ok(())
}

/// Assembles `Σ_m Σ_{w(k) = m} {u - u_k : u ∈ S_m}` from the level multisets.
fn assemble(e: &Enumeration, u: &[Vec<i64>], levels: &[SignedWeightMultiset], first: usize) -> SignedWeightMultiset {
    let mut out = SignedWeightMultiset::new();
    for k in first..e.len() {
        for (wt, m) in levels[e.w(k)].iter() {
            out.insert(minus(wt, &u[k]), m);
        }
    }
    out
}

pub fn tangent_class_direct(e: &Enumeration) -> SignedWeightMultiset {
    let (n, d, u) = (e.n(), e.len(), points(e));
    let mut out = SignedWeightMultiset::new();
    for k in 0..d {
        for i in 0..n {
            out.insert(minus(&unit(n, i), &u[k]), 1);
        }
        for j in 1..d {
            if e.w(j) > e.w(k) {
                continue;
            }
            for i in 1..=j {
                out.insert(minus(&plus(&u[i], &u[j]), &u[k]), 1);
            }
            out.insert(minus(&u[j], &u[k]), -1);
        }
    }
    out
}

/// Level multisets `S_m^T` for `m = 0..=r`.
pub fn tangent_levels(e: &Enumeration) -> Vec<SignedWeightMultiset> {
    let (n, d, u) = (e.n(), e.len(), points(e));
    let mut current = SignedWeightMultiset::from_entries((0..n).map(|i| (unit(n, i), 1)));
    let mut levels = Vec::with_capacity(e.top_level() + 1);
    for m in 0..=e.top_level() {
        for j in (1..d).filter(|j| e.w(*j) == m) {
            for i in 1..=j {
                current.insert(plus(&u[i], &u[j]), 1);
            }
            current.insert(u[j].clone(), -1);
        }
        levels.push(current.clone());
    }
    levels
}

/// Trace of the tangent space of the nested Hilbert scheme at the fixed point.
pub fn tangent_class(e: &Enumeration) -> SignedWeightMultiset {
    assemble(e, &points(e), &tangent_levels(e), 0)
}

/// Trace of the tangent space of the punctual nested Hilbert scheme.
pub fn tangent_class_punctual(e: &Enumeration) -> Result<SignedWeightMultiset, WeightsError> {
    require_pointed(e)?;
    let (n, d, u) = (e.n(), e.len(), points(e));
    let mut out = SignedWeightMultiset::new();
    for k in 1..d {
        for i in 0..n {
            out.insert(minus(&unit(n, i), &u[k]), 1);
        }
        for j in 1..d {
            if e.w(j) < e.w(k) {
                for i in 1..=j {
                    out.insert(minus(&plus(&u[i], &u[j]), &u[k]), 1);
                }
            }
            if e.w(j) <= e.w(k) {
                out.insert(minus(&u[j], &u[k]), -1);
            }
        }
    }
    Ok(out)
}

pub fn obstruction_class_direct(e: &Enumeration) -> SignedWeightMultiset {
    let (d, u) = (e.len(), points(e));
    let mut out = SignedWeightMultiset::new();
    for m in 0..d {
        for k in 1..d {
            if e.w(k) > e.w(m) {
                continue;
            }
            for j in (1..d).filter(|j| e.w(*j) <= e.w(m)) {
                let jk = plus(&u[j], &u[k]);
                for i in 1..k {
                    out.insert(minus(&plus(&u[i], &jk), &u[m]), 1);
                }
            }
        }
    }
    out
}

/// Level multisets `S_m^ass = {u_i + u_j + u_k : i < k, w(j) ≤ m, w(k) ≤ m}`.
pub fn obstruction_levels(e: &Enumeration) -> Vec<SignedWeightMultiset> {
    let (d, u) = (e.len(), points(e));
    let mut current = SignedWeightMultiset::new();
    let mut levels = Vec::with_capacity(e.top_level() + 1);
    for m in 0..=e.top_level() {
        // Triples whose larger level max(w(j), w(k)) equals m are new at this level.
        for k in 1..d {
            for j in 1..d {
                if e.w(j).max(e.w(k)) != m {
                    continue;
                }
                for i in 1..k {
                    current.insert(plus(&plus(&u[i], &u[j]), &u[k]), 1);
                }
            }
        }
        levels.push(current.clone());
    }
    levels
}

/// Trace of the associativity obstruction bundle at the fixed point.
pub fn obstruction_class(e: &Enumeration) -> SignedWeightMultiset {
    assemble(e, &points(e), &obstruction_levels(e), 0)
}

/// Trace of the punctual comparison bundle `E_punct`.
pub fn epunct_class(e: &Enumeration) -> Result<SignedWeightMultiset, WeightsError> {
    require_pointed(e)?;
    let (n, d, u) = (e.n(), e.len(), points(e));
    let mut out = SignedWeightMultiset::from_entries((0..n).map(|i| (unit(n, i), 1)));
    for k in 1..d {
        for j in (1..d).filter(|j| e.w(*j) == e.w(k)) {
            for i in 1..=j {
                out.insert(minus(&plus(&u[i], &u[j]), &u[k]), 1);
            }
        }
    }
    Ok(out)
}

fn check_fiber(e: &Enumeration, sigma: &Coset) -> Result<(), WeightsError> {
    require_pointed(e)?;
    let nested = e.nested();
    sigma.validate(e.n(), &nested.dims()[1..])?;
    if !in_flag_fiber(&nested, sigma)? {
        return Err(WeightsError::NotInFiber);
    }
    Ok(())
}

pub fn fiber_tangent_class_direct(e: &Enumeration, sigma: &Coset) -> Result<SignedWeightMultiset, WeightsError> {
    check_fiber(e, sigma)?;
    let (n, d, u) = (e.n(), e.len(), points(e));
    let mut out = SignedWeightMultiset::new();
    for k in 1..d {
        for i in (1..d).filter(|i| e.w(*i) <= e.w(k)) {
            out.insert(minus(&unit(n, sigma.apply(i) - 1), &u[k]), 1);
        }
        for j in 1..d {
            if e.w(j) < e.w(k) {
                for i in 1..=j {
                    out.insert(minus(&plus(&u[i], &u[j]), &u[k]), 1);
                }
            }
            if e.w(j) <= e.w(k) {
                out.insert(minus(&u[j], &u[k]), -1);
            }
        }
    }
    Ok(out)
}

/// Level multisets `S_m^{T,σ}` for `m = 0..=r`, with `S_0` empty.
pub fn fiber_tangent_levels(e: &Enumeration, sigma: &Coset) -> Result<Vec<SignedWeightMultiset>, WeightsError> {
    check_fiber(e, sigma)?;
    let (n, d, u) = (e.n(), e.len(), points(e));
    let mut current = SignedWeightMultiset::new();
    let mut levels = vec![current.clone()];
    for m in 1..=e.top_level() {
        for i in (1..d).filter(|i| e.w(*i) == m) {
            current.insert(unit(n, sigma.apply(i) - 1), 1);
        }
        for j in (1..d).filter(|j| e.w(*j) == m - 1) {
            for i in 1..=j {
                current.insert(plus(&u[i], &u[j]), 1);
            }
        }
        for j in (1..d).filter(|j| e.w(*j) == m) {
            current.insert(u[j].clone(), -1);
        }
        levels.push(current.clone());
    }
    Ok(levels)
}

/// Trace of the tangent space of the fiber `H_σ` at the fixed point.
pub fn fiber_tangent_class(e: &Enumeration, sigma: &Coset) -> Result<SignedWeightMultiset, WeightsError> {
    let levels = fiber_tangent_levels(e, sigma)?;
    Ok(assemble(e, &points(e), &levels, 1))
}

/// `(Σ_k W_T(u_k), Σ_m W_B(u_m))`, counted directly from the enumeration.
pub fn fixed_ranks(e: &Enumeration) -> (i64, i64) {
    let (d, u) = (e.len(), points(e));
    let mut w_t = 0;
    let mut w_b = 0;
    for target in &u[1..] {
        let is_unit = target.iter().filter(|c| **c != 0).count() == 1 && target.iter().sum::<i64>() == 1;
        let pairs = (1..d)
            .flat_map(|j| (1..=j).map(move |i| (i, j)))
            .filter(|(i, j)| &plus(&u[*i], &u[*j]) == target)
            .count() as i64;
        if !is_unit {
            w_t += pairs - 1;
        }
        for k in 1..d {
            for i in 1..k {
                let ik = plus(&u[i], &u[k]);
                w_b += (1..d).filter(|j| &plus(&ik, &u[*j]) == target).count() as i64;
            }
        }
    }
    (w_t, w_b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nahilb_lattice::{canonical_enumeration, NestedPartition, Partition, LatticePoint};

    fn enumeration(n: usize, dims: &[usize], layers: &[&[&[u32]]]) -> Enumeration {
        let layers = layers
            .iter()
            .map(|pts| Partition::new(n, pts.iter().map(|c| LatticePoint(c.to_vec()))).unwrap())
            .collect();
        canonical_enumeration(&NestedPartition::new(dims.to_vec(), layers).unwrap())
    }

    #[test]
    fn single_point_tangent() {
        let e = enumeration(3, &[1], &[&[&[0, 0, 0]]]);
        let t = tangent_class(&e);
        assert_eq!(t.net_rank(), 3);
        assert_eq!(t, SignedWeightMultiset::from_entries((0..3).map(|i| (unit(3, i), 1))));
    }

    #[test]
    fn two_point_flag() {
        let e = enumeration(2, &[1, 1], &[&[&[0, 0]], &[&[0, 0], &[1, 0]]]);
        let t = tangent_class(&e);
        assert_eq!((t.net_rank(), t.fixed_rank()), (4, 0));
        assert_eq!(tangent_class_punctual(&e).unwrap().net_rank(), 1);
        assert!(obstruction_class(&e).is_empty());
        assert_eq!(epunct_class(&e).unwrap().multiplicity(&[1, 0]), 2);
    }

    #[test]
    fn recursive_agrees_on_small_cases() {
        let e = enumeration(2, &[1, 2], &[&[&[0, 0]], &[&[0, 0], &[1, 0], &[0, 1]]]);
        assert_eq!(tangent_class(&e), tangent_class_direct(&e));
        assert_eq!(obstruction_class(&e), obstruction_class_direct(&e));
        let expected = SignedWeightMultiset::from_entries([(vec![1, 1], 2), (vec![2, 0], 1), (vec![0, 2], 1)]);
        assert_eq!(obstruction_class(&e), expected);
    }
}
