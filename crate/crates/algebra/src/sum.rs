use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;

use crate::factored::FactoredRational;
use crate::linear::LinearForm;
use crate::poly::Poly;

/// Below this many terms a sum is folded sequentially instead of split across threads.
const PARALLEL_CUTOFF: usize = 8;

/// Exact sum of factored rational functions.
///
/// Terms are combined along a fixed binary tree (so the output never depends on
/// thread scheduling), two at a time over their least common denominator, with
/// trial division after each step to keep denominators small. The result is in
/// [`FactoredRational::normal_form`].
pub fn sum_factored(terms: &[FactoredRational]) -> FactoredRational {
    let nonzero: Vec<&FactoredRational> = terms.iter().filter(|t| !t.is_zero()).collect();
    tree_sum(&nonzero).normal_form()
}

fn tree_sum(terms: &[&FactoredRational]) -> FactoredRational {
    match terms.len() {
        0 => FactoredRational::zero(),
        1 => terms[0].clone(),
        len => {
            let (left, right) = terms.split_at(len / 2);
            let (a, b) = if len >= PARALLEL_CUTOFF {
                rayon::join(|| tree_sum(left), || tree_sum(right))
            } else {
                (tree_sum(left), tree_sum(right))
            };
            add_pair(&a, &b)
        }
    }
}

/// `a + b` over the gcd-style common factor `∏ L^{min(e_a, e_b)}`.
pub fn add_pair(a: &FactoredRational, b: &FactoredRational) -> FactoredRational {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let mut exps: BTreeMap<&LinearForm, (i64, i64)> = BTreeMap::new();
    for (form, e) in a.factors() {
        exps.entry(form).or_default().0 = e;
    }
    for (form, e) in b.factors() {
        exps.entry(form).or_default().1 = e;
    }
    let common: Vec<(LinearForm, i64)> = exps
        .iter()
        .map(|(form, (ea, eb))| ((*form).clone(), *ea.min(eb)))
        .collect();

    let residual = |value: &FactoredRational, pick: fn(&(i64, i64)) -> i64| -> Poly {
        let mut p = value.numerator().scale(value.scalar());
        for ((form, pair), (_, low)) in exps.iter().zip(&common) {
            let extra = pick(pair) - low;
            if extra > 0 {
                p = &p * &form.to_poly().pow(extra as u32);
            }
        }
        p
    };
    let numerator = &residual(a, |p| p.0) + &residual(b, |p| p.1);
    FactoredRational::new(BigRational::one(), numerator, common).simplify()
}

/// `true` when `a` and `b` are the same rational function.
pub fn same_value(a: &FactoredRational, b: &FactoredRational) -> bool {
    add_pair(a, &-b).normal_form().is_zero()
}
