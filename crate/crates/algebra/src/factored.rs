use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::AlgebraError;
use crate::linear::LinearForm;
use crate::poly::{fmt_rational, Assignment, Poly};
use crate::var::VariableId;

/// `scalar · numerator · ∏ L^e` with primitive, pairwise distinct linear forms `L`
/// and nonzero integer exponents `e`.
///
/// The numerator is kept monic (its largest term has coefficient 1) so that all
/// constants live in `scalar`. The zero value is `scalar = 0`, `numerator = 1`
/// and no factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredRational {
    scalar: BigRational,
    numerator: Poly,
    factors: BTreeMap<LinearForm, i64>,
}

impl Default for FactoredRational {
    fn default() -> Self {
        FactoredRational::zero()
    }
}

impl FactoredRational {
    pub fn zero() -> Self {
        FactoredRational {
            scalar: BigRational::zero(),
            numerator: Poly::one(),
            factors: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        FactoredRational::from_scalar(BigRational::one())
    }

    pub fn from_scalar(c: BigRational) -> Self {
        FactoredRational::new(c, Poly::one(), [])
    }

    pub fn from_int(c: i64) -> Self {
        FactoredRational::from_scalar(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn from_poly(p: Poly) -> Self {
        FactoredRational::new(BigRational::one(), p, [])
    }

    /// `form^exp`. A zero form raised to a positive power gives zero.
    ///
    /// # Panics
    /// If a zero form is raised to a negative power.
    pub fn linear_power(form: &LinearForm, exp: i64) -> Self {
        FactoredRational::new(BigRational::one(), Poly::one(), [(form.clone(), exp)])
    }

    /// Builds and canonicalizes. Factors may be non-primitive, repeated or have
    /// zero exponent; they are merged here.
    ///
    /// # Panics
    /// If a zero linear form carries a negative exponent.
    pub fn new(
        scalar: BigRational,
        numerator: Poly,
        factors: impl IntoIterator<Item = (LinearForm, i64)>,
    ) -> Self {
        let mut scalar = scalar;
        let mut merged: BTreeMap<LinearForm, i64> = BTreeMap::new();
        let mut vanishes = false;
        for (form, exp) in factors {
            if exp == 0 {
                continue;
            }
            let (content, prim) = form.primitive();
            if content.is_zero() {
                assert!(exp > 0, "zero linear form in a denominator");
                vanishes = true;
                continue;
            }
            if !content.is_one() {
                let c = BigRational::from_integer(content);
                scalar *= if exp > 0 {
                    num_traits::pow(c, exp as usize)
                } else {
                    num_traits::pow(c.recip(), (-exp) as usize)
                };
            }
            *merged.entry(prim).or_default() += exp;
        }
        if vanishes || scalar.is_zero() || numerator.is_zero() {
            return FactoredRational::zero();
        }
        merged.retain(|_, e| *e != 0);
        let (lead, numerator) = monic(numerator);
        FactoredRational {
            scalar: scalar * lead,
            numerator,
            factors: merged,
        }
    }

    pub fn scalar(&self) -> &BigRational {
        &self.scalar
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn factors(&self) -> impl Iterator<Item = (&LinearForm, i64)> {
        self.factors.iter().map(|(l, e)| (l, *e))
    }

    pub fn exponent_of(&self, form: &LinearForm) -> i64 {
        self.factors.get(form).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    /// The constant value, if the expression has no variables at all.
    pub fn as_constant(&self) -> Option<BigRational> {
        if !self.factors.is_empty() {
            return None;
        }
        self.numerator.as_constant().map(|c| c * &self.scalar)
    }

    pub fn has_denominator(&self) -> bool {
        self.factors.values().any(|e| *e < 0)
    }

    /// Product of the negative-exponent factors, as `(form, multiplicity)`.
    pub fn denominator(&self) -> impl Iterator<Item = (&LinearForm, u32)> {
        self.factors
            .iter()
            .filter(|(_, e)| **e < 0)
            .map(|(l, e)| (l, (-*e) as u32))
    }

    pub fn mul(&self, other: &FactoredRational) -> FactoredRational {
        if self.is_zero() || other.is_zero() {
            return FactoredRational::zero();
        }
        let numerator = if other.numerator.is_one() {
            self.numerator.clone()
        } else if self.numerator.is_one() {
            other.numerator.clone()
        } else {
            &self.numerator * &other.numerator
        };
        FactoredRational::new(
            &self.scalar * &other.scalar,
            numerator,
            self.factors().chain(other.factors()).map(|(l, e)| (l.clone(), e)),
        )
    }

    pub fn mul_poly(&self, p: &Poly) -> FactoredRational {
        self.mul(&FactoredRational::from_poly(p.clone()))
    }

    pub fn scale(&self, c: &BigRational) -> FactoredRational {
        let mut out = self.clone();
        out.scalar *= c;
        if out.scalar.is_zero() {
            return FactoredRational::zero();
        }
        out
    }

    /// Reciprocal; only available when the numerator is constant.
    pub fn recip(&self) -> Option<FactoredRational> {
        if self.is_zero() || !self.numerator.is_one() {
            return None;
        }
        Some(FactoredRational {
            scalar: self.scalar.recip(),
            numerator: Poly::one(),
            factors: self.factors.iter().map(|(l, e)| (l.clone(), -e)).collect(),
        })
    }

    /// Divides out denominator forms that divide the numerator exactly.
    pub fn simplify(&self) -> FactoredRational {
        if self.is_zero() || self.numerator.is_one() {
            return self.clone();
        }
        let mut numerator = self.numerator.clone();
        let mut factors = self.factors.clone();
        for (form, exp) in factors.iter_mut() {
            while *exp < 0 {
                match numerator.div_exact_linear(form) {
                    Some(q) => {
                        numerator = q;
                        *exp += 1;
                    }
                    None => break,
                }
            }
        }
        FactoredRational::new(self.scalar.clone(), numerator, factors)
    }

    /// Moves every positive-exponent factor into the numerator.
    ///
    /// Together with [`simplify`](Self::simplify) this yields a normal form that
    /// depends only on the rational function, not on how it was assembled.
    pub fn expand_numerator(&self) -> FactoredRational {
        if self.is_zero() {
            return FactoredRational::zero();
        }
        let mut numerator = self.numerator.clone();
        let mut rest = Vec::new();
        for (form, exp) in &self.factors {
            if *exp > 0 {
                numerator = &numerator * &form.to_poly().pow(*exp as u32);
            } else {
                rest.push((form.clone(), *exp));
            }
        }
        FactoredRational::new(self.scalar.clone(), numerator, rest)
    }

    /// Reduced normal form: expanded numerator over a coprime product of forms.
    pub fn normal_form(&self) -> FactoredRational {
        self.expand_numerator().simplify()
    }

    /// The polynomial this value equals, if it has no denominator left.
    pub fn expand(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let full = self.normal_form();
        if full.has_denominator() {
            return None;
        }
        Some(full.numerator.scale(&full.scalar))
    }

    /// Total degree, counting factors with their exponents. `Ok(None)` for zero.
    pub fn homogeneous_degree(&self) -> Result<Option<i64>, AlgebraError> {
        if self.is_zero() {
            return Ok(None);
        }
        let num = self.numerator.homogeneous_degree()?.unwrap_or(0) as i64;
        Ok(Some(num + self.factors.values().sum::<i64>()))
    }

    pub fn evaluate(&self, assignment: &Assignment) -> Result<BigRational, AlgebraError> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        let mut value = &self.scalar * self.numerator.evaluate(assignment)?;
        for (form, exp) in &self.factors {
            let x = form.evaluate(assignment)?;
            if x.is_zero() {
                if *exp < 0 {
                    return Err(AlgebraError::DivisionByZero);
                }
                value = BigRational::zero();
                continue;
            }
            value *= if *exp > 0 {
                num_traits::pow(x, *exp as usize)
            } else {
                num_traits::pow(x.recip(), (-exp) as usize)
            };
        }
        Ok(value)
    }

    /// Replaces `v` by a linear form everywhere and simplifies.
    pub fn substitute_linear(
        &self,
        v: VariableId,
        image: &LinearForm,
    ) -> Result<FactoredRational, AlgebraError> {
        if self.is_zero() {
            return Ok(FactoredRational::zero());
        }
        let mut factors = Vec::with_capacity(self.factors.len());
        for (form, exp) in &self.factors {
            let f = form.substitute(v, image);
            if f.is_zero() {
                if *exp < 0 {
                    return Err(AlgebraError::DegenerateRestriction);
                }
                return Ok(FactoredRational::zero());
            }
            factors.push((f, *exp));
        }
        let numerator = self.numerator.substitute_one(v, &image.to_poly());
        Ok(FactoredRational::new(self.scalar.clone(), numerator, factors).simplify())
    }

    /// Renames variables in the numerator and every factor.
    pub fn rename(&self, f: impl Fn(VariableId) -> VariableId + Copy) -> FactoredRational {
        if self.is_zero() {
            return FactoredRational::zero();
        }
        FactoredRational::new(
            self.scalar.clone(),
            self.numerator.rename(f),
            self.factors.iter().map(|(l, e)| (l.rename(f), *e)),
        )
    }

    pub fn variables(&self) -> std::collections::BTreeSet<VariableId> {
        let mut vars = self.numerator.variables();
        for form in self.factors.keys() {
            vars.extend(form.variables());
        }
        vars
    }
}

fn monic(p: Poly) -> (BigRational, Poly) {
    let lead = match p.leading_term() {
        Some((_, c)) => c.clone(),
        None => return (BigRational::zero(), Poly::one()),
    };
    if lead.is_one() {
        return (lead, p);
    }
    let inv = lead.recip();
    (lead, p.scale(&inv))
}

impl Neg for FactoredRational {
    type Output = FactoredRational;
    fn neg(mut self) -> FactoredRational {
        self.scalar = -self.scalar;
        self
    }
}

impl Neg for &FactoredRational {
    type Output = FactoredRational;
    fn neg(self) -> FactoredRational {
        -self.clone()
    }
}

impl Mul<&FactoredRational> for &FactoredRational {
    type Output = FactoredRational;
    fn mul(self, other: &FactoredRational) -> FactoredRational {
        FactoredRational::mul(self, other)
    }
}

impl From<Poly> for FactoredRational {
    fn from(p: Poly) -> Self {
        FactoredRational::from_poly(p)
    }
}

fn write_factor(f: &mut fmt::Formatter<'_>, form: &LinearForm, exp: u32) -> fmt::Result {
    let single = form.len() == 1 && form.leading().is_some_and(|(_, c)| c.is_one());
    if single {
        write!(f, "{form}")?;
    } else {
        write!(f, "({form})")?;
    }
    if exp != 1 {
        write!(f, "^{exp}")?;
    }
    Ok(())
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let numer_c = BigRational::from_integer(self.scalar.numer().clone());
        let denom_c = self.scalar.denom().clone();
        let positive: Vec<_> = self.factors.iter().filter(|(_, e)| **e > 0).collect();
        let negative: Vec<_> = self.factors.iter().filter(|(_, e)| **e < 0).collect();

        let mut pieces = 0;
        let mut top = String::new();
        if !numer_c.abs().is_one() || (self.numerator.is_one() && positive.is_empty()) {
            top.push_str(&fmt_rational(&numer_c));
            pieces += 1;
        } else if numer_c.is_negative() {
            top.push('-');
        }
        f.write_str(&top)?;
        if !self.numerator.is_one() {
            if pieces > 0 {
                write!(f, "*")?;
            }
            if self.numerator.len() > 1 {
                write!(f, "({})", self.numerator)?;
            } else {
                write!(f, "{}", self.numerator)?;
            }
            pieces += 1;
        }
        for (form, exp) in positive {
            if pieces > 0 {
                write!(f, "*")?;
            }
            write_factor(f, form, *exp as u32)?;
            pieces += 1;
        }
        if denom_c.is_one() && negative.is_empty() {
            return Ok(());
        }
        write!(f, "/")?;
        let parts = negative.len() + usize::from(!denom_c.is_one());
        if parts > 1 {
            write!(f, "(")?;
        }
        let mut first = true;
        if !denom_c.is_one() {
            write!(f, "{denom_c}")?;
            first = false;
        }
        for (form, exp) in negative {
            if !first {
                write!(f, "*")?;
            }
            write_factor(f, form, (-*exp) as u32)?;
            first = false;
        }
        if parts > 1 {
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(i: u32) -> VariableId {
        VariableId::s(i)
    }

    fn form(pairs: &[(u32, i64)]) -> LinearForm {
        LinearForm::from_pairs(pairs.iter().map(|(i, c)| (s(*i), *c)))
    }

    fn at(values: &[i64]) -> Assignment {
        values
            .iter()
            .enumerate()
            .map(|(i, x)| (s(i as u32 + 1), BigRational::from_integer((*x).into())))
            .collect()
    }

    #[test]
    fn proportional_forms_merge_into_scalar() {
        let r = FactoredRational::new(
            BigRational::one(),
            Poly::one(),
            [(form(&[(1, 2)]), 1), (form(&[(1, 4)]), -1)],
        );
        assert_eq!(r, FactoredRational::from_scalar(BigRational::new(1.into(), 2.into())));
    }

    #[test]
    fn difference_of_squares_simplifies() {
        let num = &(&Poly::var(s(1)) * &Poly::var(s(1))) - &(&Poly::var(s(2)) * &Poly::var(s(2)));
        let r = FactoredRational::new(BigRational::one(), num, [(form(&[(1, 1), (2, -1)]), -1)]);
        let simplified = r.simplify();
        assert!(!simplified.has_denominator());
        assert_eq!(simplified.expand().unwrap(), &Poly::var(s(1)) + &Poly::var(s(2)));
    }

    #[test]
    fn coprime_stays_unchanged() {
        let num = &Poly::var(s(1)) + &Poly::var(s(2));
        let r = FactoredRational::new(BigRational::one(), num, [(form(&[(1, 1), (2, -1)]), -1)]);
        assert_eq!(r.simplify(), r);
    }

    #[test]
    fn evaluation_examples() {
        let r = FactoredRational::new(
            BigRational::from_integer(2.into()),
            &Poly::var(s(1)) * &Poly::var(s(2)),
            [(form(&[(2, 1)]), -1)],
        );
        assert_eq!(r.evaluate(&at(&[4, 9])).unwrap(), BigRational::from_integer(8.into()));
        let pole = FactoredRational::linear_power(&form(&[(1, 1), (2, -1)]), -1);
        assert_eq!(pole.evaluate(&at(&[1, 1])), Err(AlgebraError::DivisionByZero));
        let lf = form(&[(1, 1), (3, 2)]);
        assert_eq!(
            FactoredRational::linear_power(&lf, 1).evaluate(&at(&[3, 5, 7])).unwrap(),
            BigRational::from_integer(17.into())
        );
    }

    #[test]
    fn degree_examples() {
        let sum = form(&[(1, 1), (2, 1)]);
        let r = FactoredRational::new(
            BigRational::one(),
            Poly::one(),
            [(sum, 3), (form(&[(1, 1)]), -1), (form(&[(2, 1)]), -1)],
        );
        assert_eq!(r.homogeneous_degree(), Ok(Some(1)));
        let inhom = &(&Poly::var(s(1)) * &Poly::var(s(1))) + &Poly::var(s(2));
        assert_eq!(
            FactoredRational::from_poly(inhom).homogeneous_degree(),
            Err(AlgebraError::NotHomogeneous)
        );
        assert_eq!(FactoredRational::from_int(11).homogeneous_degree(), Ok(Some(0)));
    }

    #[test]
    fn display_is_readable() {
        let r = FactoredRational::new(
            BigRational::from_integer(80.into()),
            Poly::var(s(1)).pow(6),
            [(form(&[(2, 1)]), -1), (form(&[(2, 1), (1, -1)]), -1)],
        );
        assert_eq!(r.to_string(), "-80*s1^6/((s1 - s2)*s2)");
        assert_eq!(FactoredRational::from_int(11).to_string(), "11");
        assert_eq!(FactoredRational::from_int(-1).to_string(), "-1");
    }

    #[test]
    fn degenerate_restriction_is_detected() {
        let r = FactoredRational::linear_power(&form(&[(1, 1), (2, 1), (3, 1)]), -1);
        let cy = form(&[(1, -1), (2, -1)]);
        assert_eq!(r.substitute_linear(s(3), &cy), Err(AlgebraError::DegenerateRestriction));
    }
}
