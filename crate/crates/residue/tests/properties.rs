use std::collections::BTreeMap;

use itertools::Itertools;
use nahilb_algebra::*;
use nahilb_localization::*;
use nahilb_residue::*;
use proptest::prelude::*;

/// Ordered compositions of `k` into positive parts.
fn compositions(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (1..=k)
        .flat_map(|first| {
            compositions(k - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Sum of `q` over all relabellings of `z` that stay inside the blocks.
fn symmetrize(q: &Poly, dhat: &[usize]) -> Poly {
    let mut start = 1;
    let mut out = q.clone();
    for &size in dhat {
        let block: Vec<u32> = (start..start + size as u32).collect();
        let mut acc = Poly::zero();
        for perm in block.iter().permutations(size) {
            let images: BTreeMap<VariableId, Poly> = block
                .iter()
                .zip(perm)
                .map(|(a, b)| (VariableId::z(*a), Poly::var(VariableId::z(*b))))
                .collect();
            acc += out.substitute(&images);
        }
        out = acc;
        start += size as u32;
    }
    out
}

fn poly_strategy(n: u32, k: u32) -> impl Strategy<Value = Poly> {
    let vars: Vec<VariableId> = (1..=k).map(VariableId::z).chain((1..=n).map(VariableId::s)).collect();
    let monomial = (-5i64..=5, proptest::collection::vec(0..vars.len(), 0..=4));
    proptest::collection::vec(monomial, 1..5).prop_map(move |terms| {
        terms.into_iter().fold(Poly::zero(), |acc, (c, idx)| {
            let m = idx.iter().fold(Poly::constant(rat(c)), |m, i| &m * &Poly::var(vars[*i]));
            &acc + &m
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn weighted_residue_identity(q in poly_strategy(4, 3)) {
        for n in 1..=4usize {
            for k in 1..=3.min(n) {
                for dhat in compositions(k) {
                    let q = Poly::from_terms(q.terms().filter(|(m, _)| {
                        m.iter().all(|(v, _)| match v.ns {
                            Namespace::Z => v.index as usize <= k,
                            _ => v.index as usize <= n,
                        })
                    }).map(|(m, c)| (m.clone(), c.clone())));
                    let sym = symmetrize(&q, &dhat);
                    let rhs = weighted_residue_rhs(&sym, n, &dhat).unwrap();
                    let lhs = coset_sum_lhs(&sym, n, &dhat).unwrap();
                    prop_assert!(same_value(&FactoredRational::from_poly(rhs), &lhs), "n={} dhat={:?}", n, dhat);
                }
            }
        }
    }

    #[test]
    fn truncation_does_not_matter(q in poly_strategy(3, 2), extra in 0usize..6) {
        let wide = ResidueOptions { extraction: Extraction::Series, extra_terms: extra, ..Default::default() };
        for dhat in [vec![1, 1], vec![2]] {
            let sym = symmetrize(&q, &dhat);
            prop_assert_eq!(
                weighted_residue_rhs(&sym, 3, &dhat).unwrap(),
                weighted_residue_rhs_with(&sym, 3, &dhat, wide).unwrap()
            );
        }
    }
}

/// Dims `(1, d̂)` with total at most `d`.
fn pointed_dims(d: usize) -> Vec<Vec<usize>> {
    (1..d)
        .flat_map(compositions)
        .map(|c| std::iter::once(1).chain(c).collect())
        .collect()
}

#[test]
fn non_porteous_terms_vanish() {
    for n in 1..=4 {
        for dims in pointed_dims(4) {
            let k: usize = dims.iter().sum::<usize>() - 1;
            if k > n {
                continue;
            }
            let total = integrate_residue_nilfil(n, &dims, &TautClass::one()).unwrap();
            for (chain, term) in residue_terms(n, &dims, &TautClass::one()).unwrap() {
                if chain.is_porteous() {
                    assert_eq!(FactoredRational::from_poly(term), total.value, "n={n} dims={dims:?}");
                } else {
                    assert!(term.is_zero(), "n={n} dims={dims:?} chain={chain:?}");
                }
            }
        }
    }
}

#[test]
fn methods_agree_on_small_cases() {
    for n in 1..=3 {
        for dims in [vec![1, 1], vec![1, 1, 1], vec![1, 2]] {
            let d = dims.iter().sum();
            for class in [TautClass::one(), chern_taut(1, 0, d, false).unwrap()] {
                let res = integrate_residue_nilfil(n, &dims, &class).unwrap();
                match integrate_localization(n, &dims, Space::Nilfil, &class) {
                    Ok(loc) => {
                        assert!(same_value(&loc.value, &res.value), "n={n} dims={dims:?}");
                        assert_eq!(loc.vdim, res.vdim);
                    }
                    Err(LocalizationError::NoFixedPoints) => assert!(res.value.is_zero()),
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }
}

#[test]
fn residue_is_homogeneous_of_the_expected_degree() {
    let class = chern_taut(2, 0, 3, true).unwrap();
    for n in 2..=4 {
        for dims in [vec![1, 2], vec![1, 1, 1]] {
            let res = integrate_residue_nilfil(n, &dims, &class).unwrap();
            if let Some(deg) = res.value.homogeneous_degree().unwrap() {
                assert_eq!(deg, 2 - res.vdim);
            }
        }
    }
}
