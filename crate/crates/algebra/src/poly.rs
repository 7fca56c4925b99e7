use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::AlgebraError;
use crate::linear::LinearForm;
use crate::var::{Namespace, VariableId};

/// Values for variables, used by every `evaluate`.
pub type Assignment = BTreeMap<VariableId, BigRational>;

/// A monomial as a sorted list of `(variable, exponent)` with positive exponents.
///
/// Ordering is graded lexicographic: total degree first, then the exponent of the
/// smallest variable decides, so `s1 > s2 > … > theta1 > … > z1 > …`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(VariableId, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: VariableId) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (VariableId, u32)>) -> Self {
        let mut map: BTreeMap<VariableId, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_default() += e;
        }
        Monomial(map.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: VariableId) -> u32 {
        self.0
            .iter()
            .find(|(w, _)| *w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(VariableId, u32)> {
        self.0.iter()
    }

    /// Returns the exponent of `v` and the monomial with `v` removed.
    pub fn split_off(&self, v: VariableId) -> (u32, Monomial) {
        match self.0.iter().position(|(w, _)| *w == v) {
            Some(pos) => {
                let mut rest = self.0.clone();
                let (_, e) = rest.remove(pos);
                (e, Monomial(rest))
            }
            None => (0, self.clone()),
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if x.1 != y.1 {
                            return x.1.cmp(&y.1);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (pos, (v, e)) in self.0.iter().enumerate() {
            if pos > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by graded-lex monomial order; zero
/// coefficients are never stored, which makes the representation canonical.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::from_terms([(Monomial::one(), c)])
    }

    pub fn from_int(c: i64) -> Self {
        Poly::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(v: VariableId) -> Self {
        Poly::from_terms([(Monomial::var(v), BigRational::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut map: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in terms {
            *map.entry(m).or_insert_with(BigRational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Poly { terms: map }
    }

    fn from_hash(map: HashMap<Monomial, BigRational>) -> Self {
        Poly {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn variables(&self) -> BTreeSet<VariableId> {
        self.terms
            .keys()
            .flat_map(|m| m.iter().map(|(v, _)| *v))
            .collect()
    }

    pub fn mentions(&self, ns: Namespace) -> bool {
        self.terms
            .keys()
            .any(|m| m.iter().any(|(v, _)| v.ns == ns))
    }

    /// Total degree of the largest term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Common degree of all terms. `Ok(None)` for zero.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>, AlgebraError> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let Some(first) = degrees.next() else {
            return Ok(None);
        };
        if degrees.all(|d| d == first) {
            Ok(Some(first))
        } else {
            Err(AlgebraError::NotHomogeneous)
        }
    }

    pub fn degree_in(&self, v: VariableId) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Writes `self = Σ_k c_k·v^k` and returns `[c_0, c_1, …]`.
    pub fn coefficients_in(&self, v: VariableId) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            out[e as usize].terms.insert(rest, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn evaluate(&self, assignment: &Assignment) -> Result<BigRational, AlgebraError> {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for (v, e) in m.iter() {
                let x = assignment.get(v).ok_or(AlgebraError::MissingVariable(*v))?;
                value *= num_traits::pow(x.clone(), *e as usize);
            }
            total += value;
        }
        Ok(total)
    }

    /// Simultaneous substitution `v ↦ images[v]`; variables without an image stay.
    pub fn substitute(&self, images: &BTreeMap<VariableId, Poly>) -> Poly {
        let mut powers: HashMap<(VariableId, u32), Poly> = HashMap::new();
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = Poly::constant(c.clone());
            for &(v, e) in m.iter() {
                match images.get(&v) {
                    Some(image) => {
                        let p = powers
                            .entry((v, e))
                            .or_insert_with(|| image.pow(e));
                        factor = &factor * &*p;
                    }
                    None => kept.push((v, e)),
                }
            }
            let kept = Monomial(kept);
            for (fm, fc) in factor.terms {
                *acc.entry(fm.mul(&kept)).or_insert_with(BigRational::zero) += fc;
            }
        }
        Poly::from_hash(acc)
    }

    pub fn substitute_one(&self, v: VariableId, image: &Poly) -> Poly {
        self.substitute(&BTreeMap::from([(v, image.clone())]))
    }

    /// Renames variables; colliding images multiply together.
    pub fn rename(&self, f: impl Fn(VariableId) -> VariableId) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::from_pairs(m.iter().map(|(v, e)| (f(*v), *e))), c.clone())),
        )
    }

    /// Exact quotient by a nonzero linear form, or `None` if it does not divide.
    ///
    /// Picks a variable `x` of the form, writes the form as `c·x + R` and runs
    /// univariate long division in `x` with coefficients in the other variables.
    pub fn div_exact_linear(&self, form: &LinearForm) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let mut best: Option<(VariableId, u32)> = None;
        for v in form.variables() {
            let deg = self.degree_in(v);
            if deg == 0 {
                return None;
            }
            if best.is_none_or(|(_, d)| deg < d) {
                best = Some((v, deg));
            }
        }
        let (x, _) = best?;
        let (c, rest) = form.split_off(x);
        let inv_c = BigRational::from_integer(c).recip();
        let rest = rest.to_poly();
        let coeffs = self.coefficients_in(x);
        let top = coeffs.len() - 1;
        let mut quotient = vec![Poly::zero(); top];
        let mut current = coeffs[top].clone();
        for k in (1..=top).rev() {
            let q = current.scale(&inv_c);
            current = &coeffs[k - 1] - &(&rest * &q);
            quotient[k - 1] = q;
        }
        if !current.is_zero() {
            return None;
        }
        let mut out: HashMap<Monomial, BigRational> = HashMap::new();
        for (k, q) in quotient.into_iter().enumerate() {
            let xk = Monomial::from_pairs([(x, k as u32)]);
            for (m, c) in q.terms {
                out.insert(m.mul(&xk), c);
            }
        }
        Some(Poly::from_hash(out))
    }

    fn add_assign_ref(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            match self.terms.get_mut(m) {
                Some(x) => {
                    *x += c;
                    if x.is_zero() {
                        self.terms.remove(m);
                    }
                }
                None => {
                    self.terms.insert(m.clone(), c.clone());
                }
            }
        }
    }

    fn mul_ref(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut acc: HashMap<Monomial, BigRational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let c = c1 * c2;
                match acc.entry(m1.mul(m2)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += c,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        Poly::from_hash(acc)
    }
}

impl From<&LinearForm> for Poly {
    fn from(form: &LinearForm) -> Poly {
        form.to_poly()
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -self.clone()
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, other: &Poly) {
        self.add_assign_ref(other);
    }
}

impl AddAssign for Poly {
    fn add_assign(&mut self, other: Poly) {
        if self.terms.len() < other.terms.len() {
            let mut other = other;
            other.add_assign_ref(self);
            *self = other;
        } else {
            self.add_assign_ref(&other);
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, other: &Poly) {
        self.add_assign_ref(&-other);
    }
}

impl MulAssign<&Poly> for Poly {
    fn mul_assign(&mut self, other: &Poly) {
        *self = self.mul_ref(other);
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_ref(&-other);
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, other: &Poly) -> Poly {
        self.mul_ref(other)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, other: Poly) -> Poly {
        self += other;
        self
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, other: Poly) -> Poly {
        self -= &other;
        self
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, other: Poly) -> Poly {
        self.mul_ref(&other)
    }
}

pub(crate) fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (pos, (m, c)) in self.terms().enumerate() {
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
            if m.is_one() {
                write!(f, "{}", fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&mag))?;
            }
        }
        Ok(())
    }
}
