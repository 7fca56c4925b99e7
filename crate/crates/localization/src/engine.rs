use nahilb_algebra::{sum_factored, FactoredRational, LinearForm, Namespace, VariableId};
use nahilb_lattice::{canonical_enumeration, enumerate_nested_with, Enumeration, Limits, NestedPartition};
use nahilb_weights::{
    epunct_class, euler_class, obstruction_class, tangent_class, tangent_class_punctual, SignedWeightMultiset,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::LocalizationError;
use crate::taut::{restrict_class, TautClass};

/// Which moduli space the fixed-point sum runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    /// The full nested Hilbert scheme, with its associativity obstruction theory.
    Nhilb,
    /// The nilpotently filtered punctual locus.
    Nilfil,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Localization,
    Residue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralResult {
    pub space: Space,
    pub method: Method,
    pub vdim: i64,
    pub value: FactoredRational,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// Tangent and obstruction weights of a fixed point in the given space.
pub fn fixed_point_classes(
    e: &Enumeration,
    space: Space,
) -> Result<(SignedWeightMultiset, SignedWeightMultiset), LocalizationError> {
    let tangent = match space {
        Space::Nhilb => tangent_class(e),
        Space::Nilfil => tangent_class_punctual(e)?,
    };
    Ok((tangent, obstruction_class(e)))
}

/// `P|_λ · e(Ob^mov) / e(T^mov)`, or zero when the fixed parts of tangent and
/// obstruction have different ranks.
pub fn contribution(e: &Enumeration, space: Space, class: &TautClass) -> Result<FactoredRational, LocalizationError> {
    if space == Space::Nilfil && !e.nested().is_nilfil()? {
        return Err(nahilb_lattice::LatticeError::RequiresNilfil.into());
    }
    let (tangent, obstruction) = fixed_point_classes(e, space)?;
    Ok(gated_quotient(e, class, &obstruction, &[&tangent]))
}

fn gated_quotient(
    e: &Enumeration,
    class: &TautClass,
    numerator: &SignedWeightMultiset,
    denominators: &[&SignedWeightMultiset],
) -> FactoredRational {
    let fixed: i64 = denominators.iter().map(|m| m.fixed_rank()).sum();
    if fixed != numerator.fixed_rank() {
        return FactoredRational::zero();
    }
    let mut value = FactoredRational::from_poly(restrict_class(class, e)).mul(&euler_class(numerator, Namespace::S));
    for m in denominators {
        let inverse = euler_class(m, Namespace::S).recip().expect("Euler classes of weights are nonzero");
        value = value.mul(&inverse);
    }
    value.simplify()
}

fn fixed_points(n: usize, dims: &[usize], space: Space, limits: &Limits) -> Result<Vec<NestedPartition>, LocalizationError> {
    if space == Space::Nilfil && dims.first() != Some(&1) {
        return Err(nahilb_lattice::LatticeError::RequiresPointedDims.into());
    }
    let mut chains = enumerate_nested_with(n, dims, limits)?;
    if space == Space::Nilfil {
        chains.retain(|c| c.is_nilfil().expect("pointed dims"));
    }
    Ok(chains)
}

fn common_vdim(vdims: impl IntoIterator<Item = i64>) -> Result<i64, LocalizationError> {
    let mut iter = vdims.into_iter();
    let first = iter.next().ok_or(LocalizationError::NoFixedPoints)?;
    match iter.find(|v| *v != first) {
        Some(other) => Err(LocalizationError::InconsistentVirtualDimension { first, other }),
        None => Ok(first),
    }
}

pub fn integrate_localization(
    n: usize,
    dims: &[usize],
    space: Space,
    class: &TautClass,
) -> Result<IntegralResult, LocalizationError> {
    integrate_localization_with(n, dims, space, class, &Limits::default())
}

/// Sums the contributions of all fixed points. The virtual dimension is
/// computed at every fixed point and must agree.
pub fn integrate_localization_with(
    n: usize,
    dims: &[usize],
    space: Space,
    class: &TautClass,
    limits: &Limits,
) -> Result<IntegralResult, LocalizationError> {
    let chains = fixed_points(n, dims, space, limits)?;
    let terms: Vec<(FactoredRational, i64)> = chains
        .par_iter()
        .map(|c| {
            let e = canonical_enumeration(c);
            let (tangent, obstruction) = fixed_point_classes(&e, space)?;
            let value = gated_quotient(&e, class, &obstruction, &[&tangent]);
            Ok((value, tangent.net_rank() - obstruction.net_rank()))
        })
        .collect::<Result<_, LocalizationError>>()?;
    let vdim = common_vdim(terms.iter().map(|t| t.1))?;
    let values: Vec<FactoredRational> = terms.into_iter().map(|t| t.0).collect();
    let mut warnings = Vec::new();
    if space == Space::Nilfil && dims.iter().any(|d| *d != 1) {
        warnings.push(
            "nil-fil integrals agree with integrals over the nested Hilbert scheme only for classes supported on the nil-fil locus"
                .to_string(),
        );
    }
    Ok(IntegralResult {
        space,
        method: Method::Localization,
        vdim,
        value: sum_factored(&values),
        warnings,
    })
}

/// Integral over the full-flag nested Hilbert scheme computed on the nil-fil
/// locus, with the extra denominator `e(E_punct)` at every fixed point.
pub fn reduce_full_flag(n: usize, dims: &[usize], class: &TautClass) -> Result<IntegralResult, LocalizationError> {
    reduce_full_flag_with(n, dims, class, &Limits::default())
}

pub fn reduce_full_flag_with(
    n: usize,
    dims: &[usize],
    class: &TautClass,
    limits: &Limits,
) -> Result<IntegralResult, LocalizationError> {
    if dims.is_empty() || dims.iter().any(|d| *d != 1) {
        return Err(LocalizationError::RequiresFullFlag);
    }
    let chains = fixed_points(n, dims, Space::Nilfil, limits)?;
    let terms: Vec<(FactoredRational, i64)> = chains
        .par_iter()
        .map(|c| {
            let e = canonical_enumeration(c);
            let punct = tangent_class_punctual(&e)?;
            let extra = epunct_class(&e)?;
            let obstruction = obstruction_class(&e);
            let value = gated_quotient(&e, class, &obstruction, &[&punct, &extra]);
            Ok((value, punct.net_rank() + extra.net_rank() - obstruction.net_rank()))
        })
        .collect::<Result<_, LocalizationError>>()?;
    let vdim = common_vdim(terms.iter().map(|t| t.1))?;
    let values: Vec<FactoredRational> = terms.into_iter().map(|t| t.0).collect();
    Ok(IntegralResult {
        space: Space::Nhilb,
        method: Method::Localization,
        vdim,
        value: sum_factored(&values),
        warnings: Vec::new(),
    })
}

/// Restriction to the Calabi-Yau torus, `s_n ↦ -(s_1 + … + s_{n-1})`.
pub fn cy_restrict(v: &FactoredRational, n: usize) -> Result<FactoredRational, LocalizationError> {
    let image = LinearForm::from_pairs((1..n).map(|i| (VariableId::s(i as u32), -1i64)));
    Ok(v.substitute_linear(VariableId::s(n as u32), &image)?)
}

/// Rank of tangent minus rank of obstruction, checked to agree at every fixed point.
pub fn virtual_dimension(n: usize, dims: &[usize], space: Space) -> Result<i64, LocalizationError> {
    let chains = fixed_points(n, dims, space, &Limits::default())?;
    let vdims: Vec<i64> = chains
        .par_iter()
        .map(|c| {
            let (t, o) = fixed_point_classes(&canonical_enumeration(c), space)?;
            Ok(t.net_rank() - o.net_rank())
        })
        .collect::<Result<_, LocalizationError>>()?;
    common_vdim(vdims)
}
