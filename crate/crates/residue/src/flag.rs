use nahilb_algebra::{sum_factored, BigInt, BigRational, FactoredRational, LinearForm, Namespace, Poly, VariableId};
use nahilb_lattice::{
    all_cosets, canonical_enumeration, enumerate_nested_with, flag_block, in_flag_fiber, Coset, LatticeError, Limits,
};
use nahilb_localization::{LocalizationError, TautClass};
use nahilb_weights::{euler_class, fiber_tangent_class, flag_tangent_euler, obstruction_class};
use std::collections::BTreeMap;

use crate::error::ResidueError;
use crate::form::{iterated_residue_with, ResidueForm, ResidueOptions};

pub(crate) fn z(l: usize) -> LinearForm {
    LinearForm::var(VariableId::z(l as u32))
}

pub(crate) fn s(i: usize) -> LinearForm {
    LinearForm::var(VariableId::s(i as u32))
}

/// `Π (z_a - z_b)` over ordered pairs `a ≠ b`, leaving out the pairs `b < a`
/// with `level[b] < level[a]`. These are exactly the factors that the
/// denominator `Π_{b<a, w(b)<w(a)} (z_a - z_b)` cancels. `levels[a-1]` is the
/// level of `z_a`.
pub(crate) fn reduced_vandermonde(levels: &[usize]) -> Poly {
    let k = levels.len();
    let mut out = Poly::one();
    for a in 1..=k {
        for b in (1..=k).filter(|b| *b != a) {
            if b < a && levels[b - 1] < levels[a - 1] {
                continue;
            }
            out *= &z(a).sub(&z(b)).to_poly();
        }
    }
    out
}

/// The factors `s_i - z_l` for `1 ≤ i ≤ n`, `1 ≤ l ≤ k`.
pub(crate) fn torus_factors(n: usize, k: usize) -> Vec<(LinearForm, u32)> {
    (1..=n)
        .flat_map(|i| (1..=k).map(move |l| (s(i).sub(&z(l)), 1)))
        .collect()
}

/// `1 / Π d_p!` over the given block sizes.
pub(crate) fn block_normalization(blocks: &[usize]) -> BigRational {
    let mut denom = BigInt::from(1);
    for &b in blocks {
        for f in 2..=b {
            denom *= f;
        }
    }
    BigRational::new(BigInt::from(1), denom)
}

fn check_blocks(n: usize, dhat: &[usize]) -> Result<usize, ResidueError> {
    let k: usize = dhat.iter().sum();
    if k > n {
        return Err(LatticeError::TooManyPoints { needed: k, n }.into());
    }
    Ok(k)
}

/// Residue side of the weighted residue identity for the partial flag variety
/// with blocks `dhat`: the iterated residue of
/// `Q(z) Π_{a≠b}(z_a - z_b) / (Π_{b<a, w(b)<w(a)}(z_a - z_b) Π_{i,l}(s_i - z_l))`,
/// divided by `Π d̂_p!`.
///
/// `Q` is a polynomial in `z_1..z_k`, `s` and `θ`. For `Q` symmetric inside
/// each block this equals [`coset_sum_lhs`].
pub fn weighted_residue_rhs(q: &Poly, n: usize, dhat: &[usize]) -> Result<Poly, ResidueError> {
    weighted_residue_rhs_with(q, n, dhat, ResidueOptions::default())
}

pub fn weighted_residue_rhs_with(
    q: &Poly,
    n: usize,
    dhat: &[usize],
    options: ResidueOptions,
) -> Result<Poly, ResidueError> {
    let k = check_blocks(n, dhat)?;
    let levels: Vec<usize> = (1..=k).map(|j| flag_block(dhat, j)).collect();
    let numerator = q * &reduced_vandermonde(&levels);
    let form = ResidueForm::new(numerator, torus_factors(n, k), k)?;
    Ok(iterated_residue_with(&form, options)?.scale(&block_normalization(dhat)))
}

/// `Q(s_{σ(1)}, …, s_{σ(k)})`: the simultaneous substitution `z_j ↦ s_{σ(j)}`.
pub fn at_coset(q: &Poly, sigma: &Coset) -> Poly {
    let images: BTreeMap<VariableId, Poly> = (1..=sigma.len())
        .map(|j| (VariableId::z(j as u32), s(sigma.apply(j)).to_poly()))
        .collect();
    q.substitute(&images)
}

/// `Σ_σ Q(s_σ) / e(T_{σ(f•)} Flag)` over all cosets `σ`.
pub fn coset_sum_lhs(q: &Poly, n: usize, dhat: &[usize]) -> Result<FactoredRational, ResidueError> {
    check_blocks(n, dhat)?;
    let dims: Vec<usize> = std::iter::once(1).chain(dhat.iter().copied()).collect();
    let terms = all_cosets(n, dhat)?
        .iter()
        .map(|sigma| {
            let tangent = flag_tangent_euler(sigma, n, &dims)?;
            let inverse = tangent.recip().expect("flag weights are nonzero");
            Ok(FactoredRational::from_poly(at_coset(q, sigma)).mul(&inverse))
        })
        .collect::<Result<Vec<_>, LatticeError>>()?;
    Ok(sum_factored(&terms))
}

/// Checks that the class only uses `η_1..η_{d-1}`.
pub(crate) fn check_class(class: &TautClass, d: usize) -> Result<(), ResidueError> {
    match class
        .poly()
        .variables()
        .into_iter()
        .find(|v| v.ns == Namespace::Z && v.index as usize >= d)
    {
        Some(v) => Err(LocalizationError::ForeignVariable(v.to_string()).into()),
        None => Ok(()),
    }
}

pub(crate) fn check_pointed(n: usize, dims: &[usize]) -> Result<usize, ResidueError> {
    if n == 0 {
        return Err(LatticeError::InvalidArgument("n must be positive".into()).into());
    }
    if dims.first() != Some(&1) {
        return Err(LatticeError::RequiresPointedDims.into());
    }
    Ok(dims.iter().sum::<usize>() - 1)
}

/// The integral of `P` over the fiber `H_id` above the coordinate flag,
/// computed by localization over its fixed points, as a polynomial in `θ` and
/// `s_1..s_{d-1}`.
pub fn flag_fiber_q(n: usize, dims: &[usize], class: &TautClass) -> Result<Poly, ResidueError> {
    flag_fiber_q_with(n, dims, class, &Limits::default())
}

pub fn flag_fiber_q_with(n: usize, dims: &[usize], class: &TautClass, limits: &Limits) -> Result<Poly, ResidueError> {
    let k = check_pointed(n, dims)?;
    if k > n {
        return Err(LatticeError::TooManyPoints { needed: k, n }.into());
    }
    check_class(class, k + 1)?;
    let id = Coset::identity(k);
    let mut terms = Vec::new();
    for chain in enumerate_nested_with(n, dims, limits)? {
        if !chain.is_nilfil()? || !in_flag_fiber(&chain, &id)? {
            continue;
        }
        let e = canonical_enumeration(&chain);
        let tangent = fiber_tangent_class(&e, &id)?;
        let obstruction = obstruction_class(&e);
        if tangent.fixed_rank() != obstruction.fixed_rank() {
            continue;
        }
        let restricted = nahilb_localization::restrict_class(class, &e);
        let inverse = euler_class(&tangent, Namespace::S).recip().expect("nonzero weights");
        terms.push(
            FactoredRational::from_poly(restricted)
                .mul(&euler_class(&obstruction, Namespace::S))
                .mul(&inverse),
        );
    }
    let total = sum_factored(&terms);
    total
        .expand()
        .ok_or_else(|| ResidueError::NotPolynomial(total.to_string()))
}
