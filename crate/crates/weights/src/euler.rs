use nahilb_algebra::{linear_form_of, FactoredRational, LinearForm, Namespace, Poly, VariableId};
use nahilb_lattice::{flag_block, Coset, LatticeError};

use crate::multiset::SignedWeightMultiset;

/// `∏ u(s)^{mult}` over the nonzero weights; zero weights are skipped.
pub fn euler_class(m: &SignedWeightMultiset, ns: Namespace) -> FactoredRational {
    let factors: Vec<(LinearForm, i64)> = m
        .iter()
        .filter(|(w, _)| w.iter().any(|c| *c != 0))
        .map(|(w, k)| (linear_form_of(w, ns), k))
        .collect();
    FactoredRational::new(nahilb_algebra::rat(1), Poly::one(), factors)
}

/// Euler class of the tangent space of the partial flag variety `Flag_{d̂}(C^n)`
/// at the coordinate flag `σ(f_•)`, where `d̂ = dims[1..]`.
pub fn flag_tangent_euler(sigma: &Coset, n: usize, dims: &[usize]) -> Result<FactoredRational, LatticeError> {
    let dhat = dims.get(1..).unwrap_or(&[]);
    sigma.validate(n, dhat)?;
    let k = sigma.len();
    let full = sigma.extended(n);
    let s = |i: usize| LinearForm::var(VariableId::s(full[i - 1] as u32));
    let mut factors = Vec::new();
    for j in 1..=k {
        for i in (1..=n).filter(|i| flag_block(dhat, *i) > flag_block(dhat, j)) {
            factors.push((s(i).sub(&s(j)), 1));
        }
    }
    Ok(FactoredRational::new(nahilb_algebra::rat(1), Poly::one(), factors))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(i: u32) -> LinearForm {
        LinearForm::var(VariableId::s(i))
    }

    #[test]
    fn zero_weights_are_skipped() {
        let m = SignedWeightMultiset::from_entries([(vec![1, 0], 1), (vec![0, 1], 1), (vec![0, 0], 3)]);
        let expected = FactoredRational::new(nahilb_algebra::rat(1), Poly::one(), [(s(1), 1), (s(2), 1)]);
        assert_eq!(euler_class(&m, Namespace::S), expected);
    }

    #[test]
    fn opposite_weights_merge() {
        let m = SignedWeightMultiset::from_entries([(vec![1, -1], 1), (vec![-1, 1], 1)]);
        let expected = FactoredRational::new(nahilb_algebra::rat(-1), Poly::one(), [(s(1).sub(&s(2)), 2)]);
        assert_eq!(euler_class(&m, Namespace::S), expected);
        let inverse = SignedWeightMultiset::from_entries([(vec![1], -1)]);
        assert_eq!(euler_class(&inverse, Namespace::S), FactoredRational::linear_power(&s(1), -1));
    }

    #[test]
    fn flag_examples() {
        let e = flag_tangent_euler(&Coset::identity(1), 2, &[1, 1]).unwrap();
        assert_eq!(e, FactoredRational::linear_power(&s(2).sub(&s(1)), 1));
        let full = flag_tangent_euler(&Coset::identity(2), 3, &[1, 1, 1]).unwrap();
        let expected = FactoredRational::new(
            nahilb_algebra::rat(1),
            Poly::one(),
            [(s(2).sub(&s(1)), 1), (s(3).sub(&s(1)), 1), (s(3).sub(&s(2)), 1)],
        );
        assert_eq!(full, expected);
        let grass = flag_tangent_euler(&Coset(vec![1, 2]), 3, &[1, 2]).unwrap();
        let expected = FactoredRational::new(
            nahilb_algebra::rat(1),
            Poly::one(),
            [(s(3).sub(&s(1)), 1), (s(3).sub(&s(2)), 1)],
        );
        assert_eq!(grass, expected);
        assert!(flag_tangent_euler(&Coset::identity(3), 2, &[1, 1, 2]).is_err());
    }
}
