use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::AlgebraError;
use crate::poly::{Assignment, Monomial, Poly};
use crate::var::{Namespace, VariableId};

/// A linear form `Σ c_v·v` with integer coefficients and no constant term.
///
/// Zero coefficients are never stored, so structural equality is
/// coefficient-map equality. The empty map is the zero form.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm {
    coeffs: BTreeMap<VariableId, BigInt>,
}

impl LinearForm {
    pub fn zero() -> Self {
        LinearForm::default()
    }

    pub fn var(v: VariableId) -> Self {
        LinearForm::from_pairs([(v, BigInt::one())])
    }

    /// Builds a form from `(variable, coefficient)` pairs; repeated variables add up.
    pub fn from_pairs<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (VariableId, C)>,
        C: Into<BigInt>,
    {
        let mut coeffs: BTreeMap<VariableId, BigInt> = BTreeMap::new();
        for (v, c) in pairs {
            *coeffs.entry(v).or_default() += c.into();
        }
        coeffs.retain(|_, c| !c.is_zero());
        LinearForm { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, v: VariableId) -> BigInt {
        self.coeffs.get(&v).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VariableId, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn variables(&self) -> impl Iterator<Item = VariableId> + '_ {
        self.coeffs.keys().copied()
    }

    /// The term with the smallest variable, which fixes the sign convention.
    pub fn leading(&self) -> Option<(VariableId, &BigInt)> {
        self.coeffs.iter().next().map(|(v, c)| (*v, c))
    }

    /// Largest index of a `z` variable with a nonzero coefficient.
    pub fn top_z(&self) -> Option<u32> {
        self.coeffs
            .keys()
            .rev()
            .find(|v| v.ns == Namespace::Z)
            .map(|v| v.index)
    }

    pub fn mentions(&self, ns: Namespace) -> bool {
        self.coeffs.keys().any(|v| v.ns == ns)
    }

    /// Splits `self = c·L` with `L` primitive: coefficient gcd 1 and positive leading coefficient.
    /// The zero form returns `(0, zero)`.
    pub fn primitive(&self) -> (BigInt, LinearForm) {
        let Some((_, lead)) = self.leading() else {
            return (BigInt::zero(), LinearForm::zero());
        };
        let mut content = self
            .coeffs
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if lead.is_negative() {
            content = -content;
        }
        if content.is_one() {
            return (content, self.clone());
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(v, c)| (*v, c / &content))
            .collect();
        (content, LinearForm { coeffs })
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.primitive().0.is_one()
    }

    pub fn scale(&self, c: &BigInt) -> LinearForm {
        if c.is_zero() {
            return LinearForm::zero();
        }
        LinearForm {
            coeffs: self.coeffs.iter().map(|(v, x)| (*v, x * c)).collect(),
        }
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        LinearForm::from_pairs(self.coeffs.iter().chain(other.coeffs.iter()).map(|(v, c)| (*v, c.clone())))
    }

    pub fn sub(&self, other: &LinearForm) -> LinearForm {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    /// Removes `v` from the form, returning its coefficient and the remainder.
    pub fn split_off(&self, v: VariableId) -> (BigInt, LinearForm) {
        let mut rest = self.clone();
        let c = rest.coeffs.remove(&v).unwrap_or_default();
        (c, rest)
    }

    /// Replaces `v` by the linear form `value`.
    pub fn substitute(&self, v: VariableId, value: &LinearForm) -> LinearForm {
        let (c, rest) = self.split_off(v);
        if c.is_zero() {
            return rest;
        }
        rest.add(&value.scale(&c))
    }

    /// Applies a variable renaming; colliding images add up.
    pub fn rename(&self, f: impl Fn(VariableId) -> VariableId) -> LinearForm {
        LinearForm::from_pairs(self.coeffs.iter().map(|(v, c)| (f(*v), c.clone())))
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_terms(
            self.coeffs
                .iter()
                .map(|(v, c)| (Monomial::var(*v), BigRational::from_integer(c.clone()))),
        )
    }

    pub fn evaluate(&self, assignment: &Assignment) -> Result<BigRational, AlgebraError> {
        let mut total = BigRational::zero();
        for (v, c) in &self.coeffs {
            let x = assignment.get(v).ok_or(AlgebraError::MissingVariable(*v))?;
            total += x * BigRational::from_integer(c.clone());
        }
        Ok(total)
    }
}

/// `u ↦ Σ u_i·x_i` where `x` ranges over the given namespace.
pub fn linear_form_of(u: &[i64], ns: Namespace) -> LinearForm {
    LinearForm::from_pairs(
        u.iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| (VariableId { ns, index: i as u32 + 1 }, BigInt::from(*c))),
    )
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (pos, (v, c)) in self.coeffs.iter().enumerate() {
            let mag = c.abs();
            if pos == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mag.is_one() {
                write!(f, "{v}")?;
            } else {
                write!(f, "{mag}*{v}")?;
            }
        }
        Ok(())
    }
}
