use std::collections::BTreeMap;

use nahilb_algebra::laurent::{inverse_power_series, truncated_product, unit_series};
use nahilb_algebra::{BigRational, LinearForm, Namespace, Poly, VariableId};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ResidueError;

/// `numerator / Π L^e` with every denominator form involving some `z_l`, `l ≤ z_count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueForm {
    numerator: Poly,
    factors: BTreeMap<LinearForm, u32>,
    z_count: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ResidueFormRepr {
    numerator: Poly,
    factors: Vec<(LinearForm, u32)>,
    z_count: usize,
}

impl Serialize for ResidueForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ResidueFormRepr {
            numerator: self.numerator.clone(),
            factors: self.factors.iter().map(|(l, e)| (l.clone(), *e)).collect(),
            z_count: self.z_count,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ResidueForm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let r = ResidueFormRepr::deserialize(deserializer)?;
        ResidueForm::new(r.numerator, r.factors, r.z_count).map_err(serde::de::Error::custom)
    }
}

fn check_z(v: VariableId, z_count: usize) -> Result<(), ResidueError> {
    if v.ns == Namespace::Z && v.index as usize > z_count {
        return Err(ResidueError::ZOutOfRange(v.to_string(), z_count));
    }
    Ok(())
}

impl ResidueForm {
    pub fn new(
        numerator: Poly,
        factors: impl IntoIterator<Item = (LinearForm, u32)>,
        z_count: usize,
    ) -> Result<Self, ResidueError> {
        for v in numerator.variables() {
            check_z(v, z_count)?;
        }
        let mut merged = BTreeMap::new();
        for (form, e) in factors {
            if e == 0 {
                continue;
            }
            if form.top_z().is_none() {
                return Err(ResidueError::ZFreeFactor(form.to_string()));
            }
            for v in form.variables() {
                check_z(v, z_count)?;
            }
            *merged.entry(form).or_insert(0) += e;
        }
        Ok(ResidueForm {
            numerator,
            factors: merged,
            z_count,
        })
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn factors(&self) -> impl Iterator<Item = (&LinearForm, u32)> {
        self.factors.iter().map(|(l, e)| (l, *e))
    }

    pub fn z_count(&self) -> usize {
        self.z_count
    }
}

/// How the `z^{-1}` coefficient is extracted at each step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Extraction {
    /// Divide the numerator by the factors one at a time; the last remainder
    /// over the last leading coefficient is the `z^{-1}` coefficient.
    #[default]
    Division,
    /// Multiply the truncated expansions of the inverse factors and pair them
    /// with the numerator coefficients.
    Series,
}

/// Knobs for [`iterated_residue_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidueOptions {
    pub extraction: Extraction,
    /// Expansion terms kept beyond the minimum needed at each step (series only).
    pub extra_terms: usize,
    /// Take `-coeff(z^{-1})` at each variable (the convention used throughout) or
    /// the plain coefficient.
    pub negate: bool,
}

impl Default for ResidueOptions {
    fn default() -> Self {
        ResidueOptions {
            extraction: Extraction::Division,
            extra_terms: 0,
            negate: true,
        }
    }
}

/// The iterated residue at infinity in the regime `z_1 ≪ … ≪ z_{z_count}`,
/// taken one variable at a time from `z_{z_count}` down to `z_1`.
pub fn iterated_residue(form: &ResidueForm) -> Result<Poly, ResidueError> {
    iterated_residue_with(form, ResidueOptions::default())
}

pub fn iterated_residue_with(form: &ResidueForm, options: ResidueOptions) -> Result<Poly, ResidueError> {
    let mut numerator = form.numerator.clone();
    let mut pending: Vec<(LinearForm, u32)> = form.factors.iter().map(|(l, e)| (l.clone(), *e)).collect();
    for m in (1..=form.z_count).rev() {
        if numerator.is_zero() {
            return Ok(Poly::zero());
        }
        let z = VariableId::z(m as u32);
        let (here, rest): (Vec<_>, Vec<_>) = pending.into_iter().partition(|(l, _)| l.top_z() == Some(m as u32));
        pending = rest;
        let coefficient = match options.extraction {
            Extraction::Division => coefficient_by_division(&numerator, &here, z),
            Extraction::Series => coefficient_by_series(&numerator, &here, z, options.extra_terms),
        };
        numerator = if options.negate { -coefficient } else { coefficient };
    }
    if numerator.mentions(Namespace::Z) {
        return Err(ResidueError::NonElimination(numerator.to_string()));
    }
    Ok(numerator)
}

/// Coefficient of `z^{-1}` at `z = ∞` of `numerator / Π here`, where every
/// form in `here` has `z` as its highest z-variable.
fn coefficient_by_series(numerator: &Poly, here: &[(LinearForm, u32)], z: VariableId, extra_terms: usize) -> Poly {
    let coeffs = numerator.coefficients_in(z);
    let top = coeffs.len() as i64 - 1;
    let total: i64 = here.iter().map(|(_, e)| i64::from(*e)).sum();
    // The expansion of 1/Π here starts at z^{-total}; z^{-1} needs the numerator's
    // z^{total+k-1} coefficient against the order-k term, so k ≤ top + 1 - total.
    let needed = top + 1 - total;
    if needed < 0 {
        return Poly::zero();
    }
    let order = needed as usize + extra_terms;
    let mut series = unit_series(order);
    for (form, e) in here {
        let (c, r) = form.split_off(z);
        let c = BigRational::from_integer(c);
        let expansion = inverse_power_series(&c, &r.to_poly(), *e, order);
        series = truncated_product(&series, &expansion, order);
    }
    let mut out = Poly::zero();
    for (k, term) in series.iter().enumerate() {
        let power = total + k as i64 - 1;
        if power < 0 || power > top || term.is_zero() {
            continue;
        }
        let c = &coeffs[power as usize];
        if !c.is_zero() {
            out += &(c * term);
        }
    }
    out
}

/// Same coefficient by long division. Writing `N / f_1 = q_1 + r_1 / f_1`, the
/// remainder term is `O(z^{-m})` against the other `m - 1` factors, so only
/// `q_1` matters until one factor is left, whose `r / (c z + R)` contributes
/// `r / c`.
fn coefficient_by_division(numerator: &Poly, here: &[(LinearForm, u32)], z: VariableId) -> Poly {
    let mut factors: Vec<(BigRational, Poly)> = Vec::new();
    for (form, e) in here {
        let (c, r) = form.split_off(z);
        let split = (BigRational::from_integer(c), r.to_poly());
        factors.extend(std::iter::repeat_n(split, *e as usize));
    }
    let Some((last, rest)) = factors.split_last() else {
        return Poly::zero();
    };
    let mut coeffs = numerator.coefficients_in(z);
    for (c, r) in rest {
        if coeffs.len() <= 1 {
            return Poly::zero();
        }
        coeffs = synthetic_division(&coeffs, c, r).0;
    }
    let (c, r) = last;
    let remainder = synthetic_division(&coeffs, c, r).1;
    remainder.scale(&c.recip())
}

/// Quotient and remainder of `Σ p_j z^j` by `c z + R` with `R` free of `z`.
fn synthetic_division(p: &[Poly], c: &BigRational, r: &Poly) -> (Vec<Poly>, Poly) {
    let Some(top) = p.len().checked_sub(1) else {
        return (Vec::new(), Poly::zero());
    };
    if top == 0 {
        return (Vec::new(), p[0].clone());
    }
    let inv = c.recip();
    let mut q = vec![Poly::zero(); top];
    q[top - 1] = p[top].scale(&inv);
    for j in (1..top).rev() {
        q[j - 1] = (&p[j] - &(r * &q[j])).scale(&inv);
    }
    let remainder = &p[0] - &(r * &q[0]);
    (q, remainder)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nahilb_algebra::rat;

    fn z() -> LinearForm {
        LinearForm::var(VariableId::z(1))
    }

    fn s(i: u32) -> LinearForm {
        LinearForm::var(VariableId::s(i))
    }

    #[test]
    fn one_variable_examples() {
        let den = [(s(1).sub(&z()), 1), (s(2).sub(&z()), 1)];
        let f = ResidueForm::new(z().to_poly(), den.clone(), 1).unwrap();
        assert_eq!(iterated_residue(&f).unwrap(), Poly::from_int(-1));
        let f = ResidueForm::new(Poly::one(), den, 1).unwrap();
        assert!(iterated_residue(&f).unwrap().is_zero());
    }

    #[test]
    fn rejects_z_free_factors() {
        assert!(matches!(
            ResidueForm::new(Poly::one(), [(s(1), 1)], 1),
            Err(ResidueError::ZFreeFactor(_))
        ));
        assert!(matches!(
            ResidueForm::new(Poly::var(VariableId::z(2)), [], 1),
            Err(ResidueError::ZOutOfRange(..))
        ));
    }

    #[test]
    fn strategies_and_extra_terms_agree() {
        let den = [(s(1).sub(&z()), 2), (s(2).sub(&z().scale(&2.into())), 1)];
        let num = &z().to_poly().pow(4) + &Poly::constant(rat(3));
        let f = ResidueForm::new(num, den, 1).unwrap();
        let base = iterated_residue(&f).unwrap();
        for extra in [0, 1, 5] {
            let opts = ResidueOptions {
                extraction: Extraction::Series,
                extra_terms: extra,
                ..Default::default()
            };
            assert_eq!(iterated_residue_with(&f, opts).unwrap(), base);
        }
    }
}
