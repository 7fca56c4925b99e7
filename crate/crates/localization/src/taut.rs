use std::collections::BTreeMap;

use nahilb_algebra::{linear_form_of, Namespace, Poly, VariableId};
use nahilb_lattice::Enumeration;
use serde::{Deserialize, Serialize};

use crate::error::LocalizationError;

/// The variable carrying the tautological root `η_j`.
///
/// Variables live in the namespaces `s`, `theta` and `z`; classes are written
/// with `η_j` stored as `z_j`, which is also the name the residue integrand
/// gives it.
pub fn eta(j: usize) -> VariableId {
    VariableId::z(j as u32)
}

pub fn theta(i: usize) -> VariableId {
    VariableId::theta(i as u32)
}

/// A polynomial in `θ_1..θ_q` and `η_1..η_{d-1}` (with `η_0 = 0`), symmetric
/// in the `θ` block and within each layer block of the `η` variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TautClass {
    poly: Poly,
    q: usize,
    dims: Vec<usize>,
}

fn swap(p: &Poly, a: VariableId, b: VariableId) -> Poly {
    p.rename(|v| if v == a { b } else if v == b { a } else { v })
}

impl TautClass {
    /// A class required to be symmetric in all of `η_0 = 0, η_1, …, η_{d-1}`.
    pub fn new(poly: Poly, q: usize, d: usize) -> Result<Self, LocalizationError> {
        TautClass::with_blocks(poly, q, &[d])
    }

    /// A class on a nested Hilbert scheme of length `dims`, which only needs
    /// to be symmetric inside each layer block.
    pub fn with_blocks(poly: Poly, q: usize, dims: &[usize]) -> Result<Self, LocalizationError> {
        let d: usize = dims.iter().sum();
        for v in poly.variables() {
            let ok = match v.ns {
                Namespace::Theta => (v.index as usize) <= q,
                Namespace::Z => (v.index as usize) < d,
                Namespace::S => false,
            };
            if !ok {
                return Err(LocalizationError::ForeignVariable(v.to_string()));
            }
        }
        for i in 1..q {
            if swap(&poly, theta(i), theta(i + 1)) != poly {
                return Err(LocalizationError::NotBisymmetric(format!("theta{i} <-> theta{}", i + 1)));
            }
        }
        let mut start = 0;
        for &size in dims {
            // η_0 = 0 is not a variable, so block 0 only constrains η_1..η_{d_0-1}.
            for j in start.max(1)..(start + size).saturating_sub(1) {
                if swap(&poly, eta(j), eta(j + 1)) != poly {
                    return Err(LocalizationError::NotBisymmetric(format!("eta{j} <-> eta{}", j + 1)));
                }
            }
            start += size;
        }
        Ok(TautClass {
            poly,
            q,
            dims: dims.to_vec(),
        })
    }

    pub fn one() -> Self {
        TautClass {
            poly: Poly::one(),
            q: 0,
            dims: vec![1],
        }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn d(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Total degree, when homogeneous.
    pub fn degree(&self) -> Option<u32> {
        self.poly.homogeneous_degree().ok().flatten()
    }
}

/// `e_k` of the Chern roots `θ_i - η_j` (`η_j - θ_i` if `dual`) of `W ⊗ O^{[d]}`,
/// for `1 ≤ i ≤ q` and `0 ≤ j ≤ d-1`. With `q = 0` the roots are `-η_j`
/// (`η_j` if dual), i.e. `W` is the trivial line.
pub fn chern_taut(k: usize, q: usize, d: usize, dual: bool) -> Result<TautClass, LocalizationError> {
    let etas: Vec<Poly> = std::iter::once(Poly::zero()).chain((1..d).map(|j| Poly::var(eta(j)))).collect();
    let thetas: Vec<Poly> = if q == 0 {
        vec![Poly::zero()]
    } else {
        (1..=q).map(|i| Poly::var(theta(i))).collect()
    };
    let roots: Vec<Poly> = thetas
        .iter()
        .flat_map(|t| etas.iter().map(move |e| if dual { e - t } else { t - e }))
        .collect();
    if k > roots.len() {
        return Err(LocalizationError::IndexOutOfRange { k, max: roots.len() });
    }
    // elementary[i] = e_i of the roots seen so far.
    let mut elementary = vec![Poly::one()];
    for r in &roots {
        elementary.push(Poly::zero());
        for i in (1..elementary.len()).rev() {
            let term = &elementary[i - 1] * r;
            elementary[i] += term;
        }
    }
    TautClass::new(elementary.swap_remove(k), q, d)
}

/// `P` at the fixed point: `η_j ↦ u_j(s)` for `j = 1..d-1`, `θ` untouched.
pub fn restrict_class(class: &TautClass, e: &Enumeration) -> Poly {
    let images: BTreeMap<VariableId, Poly> = (1..e.len())
        .map(|j| (eta(j), linear_form_of(&e.point(j).as_i64(), Namespace::S).to_poly()))
        .collect();
    class.poly.substitute(&images)
}

impl TautClass {
    /// Product of classes; symmetry is preserved, so no re-validation is needed.
    pub fn mul(&self, other: &TautClass) -> TautClass {
        TautClass {
            poly: &self.poly * &other.poly,
            q: self.q.max(other.q),
            dims: if self.d() >= other.d() { self.dims.clone() } else { other.dims.clone() },
        }
    }

    pub fn pow(&self, e: u32) -> TautClass {
        TautClass {
            poly: self.poly.pow(e),
            q: self.q,
            dims: self.dims.clone(),
        }
    }
}
