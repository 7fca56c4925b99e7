use std::collections::BTreeMap;

use nahilb_algebra::{linear_form_of, FactoredRational, LinearForm, Namespace, Poly, VariableId};
use nahilb_lattice::{
    canonical_enumeration, enumerate_nested_with, in_flag_fiber, Coset, Enumeration, Limits, NestedPartition,
};
use nahilb_localization::{eta, IntegralResult, Method, Space, TautClass};
use nahilb_weights::{fiber_tangent_class, obstruction_class, SignedWeightMultiset, WeightsError};
use rayon::prelude::*;

use crate::error::ResidueError;
use crate::flag::{block_normalization, check_class, check_pointed, reduced_vandermonde, torus_factors, z};
use crate::form::{iterated_residue_with, ResidueForm, ResidueOptions};

fn level_function(dims: &[usize]) -> Vec<usize> {
    dims.iter()
        .enumerate()
        .flat_map(|(level, size)| std::iter::repeat_n(level, *size))
        .collect()
}

/// `z_j` for `j ≥ 1` and the zero form for `j = 0`.
fn zz(j: usize) -> LinearForm {
    if j == 0 {
        LinearForm::zero()
    } else {
        z(j)
    }
}

/// The residue integrand for the nil-fil integral with layer sizes `dims`,
/// with numerator `p` (a polynomial in `θ`, `s` and `z_1..z_{d-1}`).
///
/// Numerator: `p · V · Π (z_i + z_j + z_k - z_m)` over `1 ≤ i < k`, `j ≥ 1`,
/// `m ≥ 0` with `w(j), w(k) ≤ w(m)`. Denominator: `Π (s_i - z_l)` and
/// `Π (z_i + z_j - z_k)` over `1 ≤ i ≤ j`, `k ≥ 1` with `w(j) < w(k)`. Here
/// `z_0 = 0`, `V` is the Vandermonde product left after cancellation and
/// identically zero forms are skipped.
pub fn nilfil_residue_form(n: usize, dims: &[usize], p: &Poly) -> Result<ResidueForm, ResidueError> {
    let k = check_pointed(n, dims)?;
    let w = level_function(dims);
    let mut numerator = p * &reduced_vandermonde(&w[1..]);
    for i in 1..k + 1 {
        for j in 1..k + 1 {
            for kk in i + 1..k + 1 {
                for m in (0..=k).filter(|m| w[j] <= w[*m] && w[kk] <= w[*m]) {
                    let form = z(i).add(&z(j)).add(&z(kk)).sub(&zz(m));
                    if !form.is_zero() {
                        numerator *= &form.to_poly();
                    }
                }
            }
        }
    }
    let mut factors = torus_factors(n, k);
    for i in 1..k + 1 {
        for j in i..k + 1 {
            for kk in (1..k + 1).filter(|kk| w[j] < w[*kk]) {
                let form = z(i).add(&z(j)).sub(&z(kk));
                if !form.is_zero() {
                    factors.push((form, 1));
                }
            }
        }
    }
    ResidueForm::new(numerator, factors, k)
}

/// Virtual dimension of the nil-fil locus, from the shape of the integrand.
pub fn nilfil_virtual_dimension(n: usize, dims: &[usize]) -> Result<i64, ResidueError> {
    let k = check_pointed(n, dims)?;
    let w = level_function(dims);
    let (mut quadratic, mut linear, mut cubic) = (0i64, 0i64, 0i64);
    for i in 1..=k {
        for j in 1..=k {
            for l in 1..=k {
                if i <= j && w[j] < w[l] {
                    quadratic += 1;
                }
                if i < l {
                    cubic += (0..=k).filter(|m| w[j] <= w[*m] && w[l] <= w[*m]).count() as i64;
                }
            }
            if w[i] <= w[j] {
                linear += 1;
            }
        }
    }
    Ok((n * k) as i64 + quadratic - linear - cubic)
}

/// The nil-fil integral of `P` computed as a single iterated residue.
pub fn integrate_residue_nilfil(n: usize, dims: &[usize], class: &TautClass) -> Result<IntegralResult, ResidueError> {
    integrate_residue_nilfil_with(n, dims, class, ResidueOptions::default())
}

pub fn integrate_residue_nilfil_with(
    n: usize,
    dims: &[usize],
    class: &TautClass,
    options: ResidueOptions,
) -> Result<IntegralResult, ResidueError> {
    let k = check_pointed(n, dims)?;
    check_class(class, k + 1)?;
    let value = integrate_residue_poly_with(n, dims, class.poly(), options)?;
    Ok(IntegralResult {
        space: Space::Nilfil,
        method: Method::Residue,
        vdim: nilfil_virtual_dimension(n, dims)?,
        value: FactoredRational::from_poly(value),
        warnings: Vec::new(),
    })
}

/// Same integrand with an arbitrary polynomial numerator, which may also
/// involve the `s` variables (for instance an extra Euler factor).
pub fn integrate_residue_poly(n: usize, dims: &[usize], p: &Poly) -> Result<Poly, ResidueError> {
    integrate_residue_poly_with(n, dims, p, ResidueOptions::default())
}

pub fn integrate_residue_poly_with(
    n: usize,
    dims: &[usize],
    p: &Poly,
    options: ResidueOptions,
) -> Result<Poly, ResidueError> {
    let form = nilfil_residue_form(n, dims, p)?;
    Ok(iterated_residue_with(&form, options)?.scale(&block_normalization(&dims[1..])))
}

/// `e(m)` with weights read as forms in `z`: the positive part as a
/// polynomial and the negative part as denominator factors.
fn z_euler(m: &SignedWeightMultiset) -> (Poly, Vec<(LinearForm, u32)>) {
    let mut numerator = Poly::one();
    let mut factors = Vec::new();
    for (weight, mult) in m.iter().filter(|(w, _)| w.iter().any(|c| *c != 0)) {
        let form = linear_form_of(weight, Namespace::Z);
        if mult > 0 {
            numerator *= &form.to_poly().pow(mult as u32);
        } else {
            factors.push((form, (-mult) as u32));
        }
    }
    (numerator, factors)
}

fn z_restrict(class: &TautClass, e: &Enumeration) -> Poly {
    let images: BTreeMap<VariableId, Poly> = (1..e.len())
        .map(|j| (eta(j), linear_form_of(&e.point(j).as_i64(), Namespace::Z).to_poly()))
        .collect();
    class.poly().substitute(&images)
}

/// The contribution of one fixed point of `H_id` to the residue: its
/// localization term, with `s_j` renamed to `z_j`, pushed through the same
/// residue as the full integrand.
pub fn residue_term(chain: &NestedPartition, class: &TautClass) -> Result<Poly, ResidueError> {
    residue_term_with(chain, class, ResidueOptions::default())
}

pub fn residue_term_with(
    chain: &NestedPartition,
    class: &TautClass,
    options: ResidueOptions,
) -> Result<Poly, ResidueError> {
    let n = chain.n();
    let dims = chain.dims();
    let k = check_pointed(n, dims)?;
    check_class(class, k + 1)?;
    let id = Coset::identity(k);
    if !in_flag_fiber(chain, &id)? {
        return Err(WeightsError::NotInFiber.into());
    }
    let e = canonical_enumeration(chain);
    let tangent = fiber_tangent_class(&e, &id)?;
    let obstruction = obstruction_class(&e);
    if tangent.fixed_rank() != obstruction.fixed_rank() {
        return Ok(Poly::zero());
    }
    let (ob_num, ob_den) = z_euler(&obstruction);
    debug_assert!(ob_den.is_empty(), "obstruction weights have positive multiplicity");
    let (tan_inverse, tan_factors) = z_euler(&-&tangent);
    let w = level_function(dims);
    let numerator = &(&(&z_restrict(class, &e) * &reduced_vandermonde(&w[1..])) * &ob_num) * &tan_inverse;
    let mut factors = torus_factors(n, k);
    factors.extend(tan_factors);
    let form = ResidueForm::new(numerator, factors, k)?;
    Ok(iterated_residue_with(&form, options)?.scale(&block_normalization(&dims[1..])))
}

pub fn residue_term_vanishes(chain: &NestedPartition, class: &TautClass) -> Result<bool, ResidueError> {
    Ok(residue_term(chain, class)?.is_zero())
}

/// Every fixed point of `H_id` with its residue term, computed in parallel.
pub fn residue_terms(
    n: usize,
    dims: &[usize],
    class: &TautClass,
) -> Result<Vec<(NestedPartition, Poly)>, ResidueError> {
    residue_terms_with(n, dims, class, &Limits::default())
}

pub fn residue_terms_with(
    n: usize,
    dims: &[usize],
    class: &TautClass,
    limits: &Limits,
) -> Result<Vec<(NestedPartition, Poly)>, ResidueError> {
    let k = check_pointed(n, dims)?;
    let id = Coset::identity(k);
    let mut members = Vec::new();
    for chain in enumerate_nested_with(n, dims, limits)? {
        if chain.is_nilfil()? && k <= n && in_flag_fiber(&chain, &id)? {
            members.push(chain);
        }
    }
    members
        .into_par_iter()
        .map(|chain| {
            let term = residue_term(&chain, class)?;
            Ok((chain, term))
        })
        .collect()
}
