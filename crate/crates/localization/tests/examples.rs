use nahilb_algebra::*;
use nahilb_lattice::*;
use nahilb_localization::*;

fn s(i: u32) -> Poly {
    Poly::var(VariableId::s(i))
}

fn sl(i: u32) -> LinearForm {
    LinearForm::var(VariableId::s(i))
}

fn c2_dual_cubed() -> TautClass {
    chern_taut(2, 0, 3, true).unwrap().pow(3)
}

fn single(n: usize, pts: &[Vec<u32>]) -> Enumeration {
    let part = Partition::new(n, pts.iter().map(|c| LatticePoint(c.clone()))).unwrap();
    canonical_enumeration(&NestedPartition::single(part))
}

fn unit3(i: usize, k: u32) -> Vec<u32> {
    let mut v = vec![0; 3];
    v[i] = k;
    v
}

/// `20 e1^3/e3 - 31 e1 e2/e3 + 11` in `s1, s2, s3`.
fn hilb3_closed_form() -> FactoredRational {
    let e1 = &(&s(1) + &s(2)) + &s(3);
    let e2 = &(&(&s(1) * &s(2)) + &(&s(1) * &s(3))) + &(&s(2) * &s(3));
    let e3 = &(&s(1) * &s(2)) * &s(3);
    let num = &(&e1.pow(3).scale(&rat(20)) - &(&e1 * &e2).scale(&rat(31))) + &e3.scale(&rat(11));
    FactoredRational::new(rat(1), num, [(sl(1), -1), (sl(2), -1), (sl(3), -1)])
}

#[test]
fn hilb3_of_a3() {
    let result = integrate_localization(3, &[3], Space::Nhilb, &c2_dual_cubed()).unwrap();
    assert_eq!(result.vdim, 6);
    assert_eq!(result.value, hilb3_closed_form().normal_form());
    assert_eq!(cy_restrict(&result.value, 3).unwrap(), FactoredRational::from_int(11));
}

#[test]
fn hilb3_point_contributions() {
    let class = c2_dual_cubed();
    for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)] {
        let (si, sj, sk) = (sl(i as u32 + 1), sl(j as u32 + 1), sl(k as u32 + 1));
        let e = single(3, &[vec![0; 3], unit3(i, 1), unit3(i, 2)]);
        let expected = FactoredRational::new(
            rat(80),
            si.to_poly().pow(6),
            [
                (sj.clone(), -1),
                (sj.sub(&si), -1),
                (sj.sub(&si.scale(&BigInt::from(2))), -1),
                (sk.clone(), -1),
                (sk.sub(&si), -1),
                (sk.sub(&si.scale(&BigInt::from(2))), -1),
            ],
        );
        assert!(same_value(&contribution(&e, Space::Nhilb, &class).unwrap(), &expected));

        let e = single(3, &[vec![0; 3], unit3(i, 1), unit3(j, 1)]);
        let two = BigInt::from(2);
        let expected = FactoredRational::new(
            rat(1),
            Poly::one(),
            [
                (si.scale(&two).add(&sj), 1),
                (si.add(&sj.scale(&two)), 1),
                (si.add(&sj), 1),
                (si.clone(), 1),
                (sj.clone(), 1),
                (si.scale(&two).sub(&sj), -1),
                (sj.scale(&two).sub(&si), -1),
                (sk.clone(), -1),
                (sk.sub(&si), -1),
                (sk.sub(&sj), -1),
            ],
        );
        assert!(same_value(&contribution(&e, Space::Nhilb, &class).unwrap(), &expected));
    }
}

#[test]
fn single_point_integrals() {
    for n in 1..=4u32 {
        let r = integrate_localization(n as usize, &[1], Space::Nhilb, &TautClass::one()).unwrap();
        let expected = FactoredRational::new(rat(1), Poly::one(), (1..=n).map(|i| (sl(i), -1)));
        assert_eq!(r.value, expected);
        assert_eq!(r.vdim, n as i64);
    }
}

#[test]
fn projective_space_sums() {
    for n in 1..=4usize {
        for k in 0..=4u32 {
            let class = TautClass::new(Poly::var(eta(1)).pow(k), 0, 2).unwrap();
            let r = integrate_localization(n, &[1, 1], Space::Nilfil, &class).unwrap();
            assert_eq!(r.vdim, n as i64 - 1);
            // Atiyah-Bott on P^{n-1}: Σ_i s_i^k / Π_{j≠i} (s_j - s_i).
            let terms: Vec<FactoredRational> = (1..=n as u32)
                .map(|i| {
                    FactoredRational::new(
                        rat(1),
                        s(i).pow(k),
                        (1..=n as u32).filter(|j| *j != i).map(|j| (sl(j).sub(&sl(i)), -1)),
                    )
                })
                .collect();
            assert!(same_value(&r.value, &sum_factored(&terms)), "n={n} k={k}");
        }
    }
}

#[test]
fn full_flag_reduction_examples() {
    for (n, dims, class) in [
        (2, vec![1, 1], TautClass::one()),
        (1, vec![1, 1], TautClass::one()),
        (2, vec![1, 1, 1], TautClass::with_blocks(Poly::var(eta(2)), 0, &[1, 1, 1]).unwrap()),
    ] {
        let reduced = reduce_full_flag(n, &dims, &class).unwrap();
        let direct = integrate_localization(n, &dims, Space::Nhilb, &class).unwrap();
        assert_eq!(reduced.value, direct.value);
        assert_eq!(reduced.vdim, direct.vdim);
    }
    assert_eq!(
        reduce_full_flag(2, &[1, 2], &TautClass::one()),
        Err(LocalizationError::RequiresFullFlag)
    );
}

#[test]
fn cy_restriction_examples() {
    assert_eq!(cy_restrict(&FactoredRational::from_int(7), 3).unwrap(), FactoredRational::from_int(7));
    let bad = FactoredRational::new(rat(1), Poly::one(), [(sl(1).add(&sl(2)).add(&sl(3)), -1)]);
    assert!(matches!(
        cy_restrict(&bad, 3),
        Err(LocalizationError::Algebra(AlgebraError::DegenerateRestriction))
    ));
}

#[test]
fn virtual_dimension_examples() {
    assert_eq!(virtual_dimension(3, &[3], Space::Nhilb).unwrap(), 6);
    for n in 1..=4 {
        assert_eq!(virtual_dimension(n, &[1, 1], Space::Nilfil).unwrap(), n as i64 - 1);
        assert_eq!(virtual_dimension(n, &[1], Space::Nhilb).unwrap(), n as i64);
    }
    assert_eq!(virtual_dimension(1, &[1, 2], Space::Nilfil), Err(LocalizationError::NoFixedPoints));
}

#[test]
fn restriction_examples() {
    let c2 = chern_taut(2, 0, 3, true).unwrap();
    for i in 0..3 {
        let e = single(3, &[vec![0; 3], unit3(i, 1), unit3(i, 2)]);
        assert_eq!(restrict_class(&c2, &e), s(i as u32 + 1).pow(2).scale(&rat(2)));
        for j in (0..3).filter(|j| *j != i) {
            let e = single(3, &[vec![0; 3], unit3(i, 1), unit3(j, 1)]);
            assert_eq!(restrict_class(&c2, &e), &s(i as u32 + 1) * &s(j as u32 + 1));
        }
    }
    assert_eq!(restrict_class(&TautClass::one(), &single(3, &[vec![0; 3]])), Poly::one());
}

#[test]
fn result_json_shape() {
    let r = integrate_localization(1, &[1], Space::Nhilb, &TautClass::one()).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    assert!(text.starts_with(r#"{"space":"nhilb","method":"localization","vdim":1,"value":"#));
    assert_eq!(serde_json::from_str::<IntegralResult>(&text).unwrap(), r);
}
