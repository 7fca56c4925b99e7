//! Truncated expansions of `(c·z + R)^(-e)` at `z = ∞`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::poly::Poly;

/// Coefficients `a_0, …, a_order` with
/// `(c·z + R)^(-e) = Σ_k a_k · z^(-e-k)` for `|z| ≫ |R|`.
///
/// `a_k = binom(-e, k) · c^(-e-k) · R^k`, where `R` is free of `z`.
pub fn inverse_power_series(c: &BigRational, rest: &Poly, e: u32, order: usize) -> Vec<Poly> {
    assert!(!c.is_zero(), "leading coefficient must be nonzero");
    let inv_c = c.recip();
    let mut out = Vec::with_capacity(order + 1);
    let mut coeff = num_traits::pow(inv_c.clone(), e as usize);
    let mut rest_pow = Poly::one();
    let e_big = BigInt::from(e);
    for k in 0..=order {
        if k > 0 {
            // binom(-e, k) = binom(-e, k-1) · (-e - k + 1) / k
            let step = BigRational::new(-(&e_big + BigInt::from(k - 1)), BigInt::from(k));
            coeff = coeff * step * &inv_c;
            rest_pow = &rest_pow * rest;
        }
        if rest_pow.is_zero() {
            out.push(Poly::zero());
        } else {
            out.push(rest_pow.scale(&coeff));
        }
    }
    out
}

/// Product of truncated series, keeping orders `0..=order`.
pub fn truncated_product(a: &[Poly], b: &[Poly], order: usize) -> Vec<Poly> {
    let mut out = vec![Poly::zero(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            if y.is_zero() {
                continue;
            }
            out[i + j] += &(x * y);
        }
    }
    out
}

/// The series of the constant 1.
pub fn unit_series(order: usize) -> Vec<Poly> {
    let mut out = vec![Poly::zero(); order + 1];
    out[0] = Poly::one();
    out
}
