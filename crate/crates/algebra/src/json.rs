//! JSON encodings.
//!
//! * `LinearForm`: `{"s":[c1,…], "theta":[…], "z":[…]}` dense arrays, empty namespaces omitted.
//! * `Poly`: `[{"coeff":"num/den", "exps":{"s1":2}}, …]`, largest monomial first.
//! * `FactoredRational`: `{"scalar":"…", "numerator":[…], "factors":[[form, exp], …]}`.
//!
//! Integers that fit in an `i64` are written as JSON numbers, larger ones as strings.
//! Decoding accepts both, merges repeated entries and drops zeros, so every
//! canonical value round-trips exactly.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::AlgebraError;
use crate::factored::FactoredRational;
use crate::linear::LinearForm;
use crate::poly::{fmt_rational, Monomial, Poly};
use crate::var::{Namespace, VariableId};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for JsonInt {
    fn from(x: &BigInt) -> Self {
        match x.to_i64() {
            Some(v) => JsonInt::Small(v),
            None => JsonInt::Big(x.to_string()),
        }
    }
}

impl TryFrom<&JsonInt> for BigInt {
    type Error = AlgebraError;
    fn try_from(x: &JsonInt) -> Result<Self, Self::Error> {
        match x {
            JsonInt::Small(v) => Ok(BigInt::from(*v)),
            JsonInt::Big(s) => BigInt::from_str(s)
                .map_err(|_| AlgebraError::Parse(format!("bad integer {s:?}"))),
        }
    }
}

/// Parses `"n"` or `"n/d"` with `d ≠ 0`.
pub fn parse_rational(text: &str) -> Result<BigRational, AlgebraError> {
    let bad = || AlgebraError::Parse(format!("bad rational {text:?}"));
    match text.split_once('/') {
        None => BigInt::from_str(text.trim()).map(BigRational::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct LinearFormRepr {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    s: Vec<JsonInt>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    theta: Vec<JsonInt>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    z: Vec<JsonInt>,
}

impl From<&LinearForm> for LinearFormRepr {
    fn from(form: &LinearForm) -> Self {
        let mut repr = LinearFormRepr::default();
        for (v, c) in form.iter() {
            let slot = match v.ns {
                Namespace::S => &mut repr.s,
                Namespace::Theta => &mut repr.theta,
                Namespace::Z => &mut repr.z,
            };
            let idx = v.index as usize - 1;
            while slot.len() <= idx {
                slot.push(JsonInt::Small(0));
            }
            slot[idx] = JsonInt::from(c);
        }
        repr
    }
}

impl TryFrom<LinearFormRepr> for LinearForm {
    type Error = AlgebraError;
    fn try_from(repr: LinearFormRepr) -> Result<Self, Self::Error> {
        let mut pairs = Vec::new();
        for (ns, list) in [(Namespace::S, &repr.s), (Namespace::Theta, &repr.theta), (Namespace::Z, &repr.z)] {
            for (i, c) in list.iter().enumerate() {
                let index = u32::try_from(i + 1).map_err(|_| AlgebraError::Parse("form too long".into()))?;
                pairs.push((VariableId { ns, index }, BigInt::try_from(c)?));
            }
        }
        Ok(LinearForm::from_pairs(pairs))
    }
}

impl Serialize for LinearForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        LinearFormRepr::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LinearForm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = LinearFormRepr::deserialize(deserializer)?;
        LinearForm::try_from(repr).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRepr {
    coeff: String,
    exps: BTreeMap<String, u32>,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .terms()
            .map(|(m, c)| TermRepr {
                coeff: fmt_rational(c),
                exps: m.iter().map(|(v, e)| (v.to_string(), *e)).collect(),
            })
            .collect();
        terms.serialize(serializer)
    }
}

fn poly_from_terms(terms: Vec<TermRepr>) -> Result<Poly, AlgebraError> {
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let c = parse_rational(&t.coeff)?;
        let mut pairs = Vec::with_capacity(t.exps.len());
        for (name, e) in t.exps {
            pairs.push((VariableId::from_str(&name)?, e));
        }
        out.push((Monomial::from_pairs(pairs), c));
    }
    Ok(Poly::from_terms(out))
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = Vec::<TermRepr>::deserialize(deserializer)?;
        poly_from_terms(terms).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FactoredRepr {
    scalar: String,
    numerator: Poly,
    factors: Vec<(LinearForm, i64)>,
}

impl Serialize for FactoredRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FactoredRepr {
            scalar: fmt_rational(self.scalar()),
            numerator: self.numerator().clone(),
            factors: self.factors().map(|(l, e)| (l.clone(), e)).collect(),
        }
        .serialize(serializer)
    }
}

impl TryFrom<FactoredRepr> for FactoredRational {
    type Error = AlgebraError;
    fn try_from(repr: FactoredRepr) -> Result<Self, Self::Error> {
        let scalar = parse_rational(&repr.scalar)?;
        for (form, exp) in &repr.factors {
            if *exp == 0 {
                continue;
            }
            if form.is_zero() {
                return Err(AlgebraError::Parse("zero linear form in factor list".into()));
            }
            if !form.is_primitive() {
                return Err(AlgebraError::Parse(format!("factor {form} is not primitive")));
            }
        }
        Ok(FactoredRational::new(scalar, repr.numerator, repr.factors))
    }
}

impl<'de> Deserialize<'de> for FactoredRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = FactoredRepr::deserialize(deserializer)?;
        FactoredRational::try_from(repr).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn linear_form_dense_arrays() {
        let l = LinearForm::from_pairs([(VariableId::s(1), 1), (VariableId::s(3), -2), (VariableId::z(2), 5)]);
        let text = serde_json::to_string(&l).unwrap();
        assert_eq!(text, r#"{"s":[1,0,-2],"z":[0,5]}"#);
        assert_eq!(serde_json::from_str::<LinearForm>(&text).unwrap(), l);
        assert_eq!(serde_json::to_string(&LinearForm::zero()).unwrap(), "{}");
    }

    #[test]
    fn poly_round_trip() {
        let p = &Poly::var(VariableId::s(1)).pow(2) - &Poly::constant(BigRational::new(1.into(), 2.into()));
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"[{"coeff":"1","exps":{"s1":2}},{"coeff":"-1/2","exps":{}}]"#);
        assert_eq!(serde_json::from_str::<Poly>(&text).unwrap(), p);
    }

    #[test]
    fn factored_rejects_zero_denominator_form() {
        let bad = r#"{"scalar":"1","numerator":[{"coeff":"1","exps":{}}],"factors":[[{},-1]]}"#;
        assert!(serde_json::from_str::<FactoredRational>(bad).is_err());
    }

    #[test]
    fn big_integers_become_strings() {
        let big = BigInt::from(10).pow(30);
        let l = LinearForm::from_pairs([(VariableId::s(1), big.clone())]);
        let text = serde_json::to_string(&l).unwrap();
        assert!(text.contains("\"1000000000000000000000000000000\""));
        assert_eq!(serde_json::from_str::<LinearForm>(&text).unwrap(), l);
        assert!(parse_rational("3/0").is_err());
        assert_eq!(parse_rational("-6/4").unwrap(), BigRational::new((-3).into(), 2.into()));
        assert!(BigRational::one() == parse_rational("1").unwrap());
    }
}
