use nahilb_algebra::{FactoredRational, LinearForm, Namespace, VariableId};
use nahilb_lattice::*;
use nahilb_weights::*;

fn p(c: &[u32]) -> LatticePoint {
    LatticePoint(c.to_vec())
}

fn chain(n: usize, dims: &[usize], layers: &[&[&[u32]]]) -> NestedPartition {
    let layers = layers
        .iter()
        .map(|pts| Partition::new(n, pts.iter().map(|c| p(c))).unwrap())
        .collect();
    NestedPartition::new(dims.to_vec(), layers).unwrap()
}

fn canon(n: usize, dims: &[usize], layers: &[&[&[u32]]]) -> Enumeration {
    canonical_enumeration(&chain(n, dims, layers))
}

/// The tangent trace before any cancellation:
/// `(n+1) N_0 + Hom^fil(Sym^2 N, N) - 2 End^fil(N)`.
fn uncancelled_tangent(e: &Enumeration) -> SignedWeightMultiset {
    let n = e.n();
    let d = e.len();
    let u: Vec<Vec<i64>> = e.order().iter().map(|x| x.as_i64()).collect();
    let mut m = SignedWeightMultiset::new();
    for k in 0..d {
        m.insert(u[k].iter().map(|c| -c).collect(), 1);
        for i in 0..n {
            let mut w: Vec<i64> = u[k].iter().map(|c| -c).collect();
            w[i] += 1;
            m.insert(w, 1);
        }
        for j in (0..d).filter(|j| e.w(*j) <= e.w(k)) {
            for i in 0..=j {
                m.insert((0..n).map(|c| u[i][c] + u[j][c] - u[k][c]).collect(), 1);
            }
            m.insert((0..n).map(|c| u[j][c] - u[k][c]).collect(), -2);
        }
    }
    m
}

#[test]
fn tangent_examples() {
    let point = canon(3, &[1], &[&[&[0, 0, 0]]]);
    let t = tangent_class(&point);
    assert_eq!(t.net_rank(), 3);
    assert_eq!(t, SignedWeightMultiset::from_entries([(vec![1, 0, 0], 1), (vec![0, 1, 0], 1), (vec![0, 0, 1], 1)]));

    for n in 1..=4 {
        let mut e1 = vec![0; n];
        e1[0] = 1;
        let zero = vec![0; n];
        let two = canonical_enumeration(
            &NestedPartition::new(
                vec![1, 1],
                vec![
                    Partition::new(n, [LatticePoint(zero.clone())]).unwrap(),
                    Partition::new(n, [LatticePoint(zero), LatticePoint(e1)]).unwrap(),
                ],
            )
            .unwrap(),
        );
        let t = tangent_class(&two);
        assert_eq!((t.net_rank(), t.fixed_rank()), (2 * n as i64, 0));
        assert_eq!(t, uncancelled_tangent(&two));
    }

    let line = canon(1, &[1, 1, 1], &[&[&[0]], &[&[0], &[1]], &[&[0], &[1], &[2]]]);
    let t = tangent_class(&line);
    assert_eq!(t, uncancelled_tangent(&line));
    assert_eq!(t, SignedWeightMultiset::from_entries([(vec![1], 3), (vec![2], 1)]));
    assert_eq!(t.net_rank(), 4);
}

#[test]
fn punctual_examples() {
    for n in 1..=4 {
        let e = canonical_enumeration(&porteous(n, &[1, 1]).unwrap());
        let t = tangent_class_punctual(&e).unwrap();
        let mut expected = SignedWeightMultiset::new();
        for i in 0..n {
            let mut w = vec![0; n];
            w[i] += 1;
            w[0] -= 1;
            expected.insert(w, 1);
        }
        expected.insert(vec![0; n], -1);
        assert_eq!(t, expected);
        assert_eq!(t.net_rank(), n as i64 - 1);
    }
    let flag = canon(2, &[1, 1, 1], &[&[&[0, 0]], &[&[0, 0], &[1, 0]], &[&[0, 0], &[1, 0], &[0, 1]]]);
    assert_eq!(tangent_class_punctual(&flag).unwrap().net_rank(), 2);
    let plane = canon(2, &[1, 2], &[&[&[0, 0]], &[&[0, 0], &[1, 0], &[0, 1]]]);
    assert_eq!(tangent_class_punctual(&plane).unwrap().net_rank(), 0);
    let unpointed = canon(2, &[2], &[&[&[0, 0], &[1, 0]]]);
    assert!(matches!(
        tangent_class_punctual(&unpointed),
        Err(WeightsError::Lattice(LatticeError::RequiresPointedDims))
    ));
}

#[test]
fn obstruction_examples() {
    for n in 1..=3 {
        for c in enumerate_nested(n, &[1, 1]).unwrap().iter().chain(&enumerate_nested(n, &[2]).unwrap()) {
            assert!(obstruction_class(&canonical_enumeration(c)).is_empty());
        }
    }
    let plane = canon(2, &[1, 2], &[&[&[0, 0]], &[&[0, 0], &[1, 0], &[0, 1]]]);
    let expected = SignedWeightMultiset::from_entries([(vec![1, 1], 2), (vec![2, 0], 1), (vec![0, 2], 1)]);
    assert_eq!(obstruction_class(&plane), expected);

    // Single layer {0, 1, 2}: the only triple is (i, j, k) = (1, j, 2), with m free.
    let line = canon(1, &[3], &[&[&[0], &[1], &[2]]]);
    let expected = SignedWeightMultiset::from_entries([(vec![5], 1), (vec![4], 2), (vec![3], 2), (vec![2], 1)]);
    assert_eq!(obstruction_class(&line), expected);
    assert_eq!(obstruction_class(&line).fixed_rank(), fixed_ranks(&line).1);
}

#[test]
fn epunct_examples() {
    let point = canon(3, &[1], &[&[&[0, 0, 0]]]);
    assert_eq!(epunct_class(&point).unwrap().net_rank(), 3);
    let two = canonical_enumeration(&porteous(3, &[1, 1]).unwrap());
    let ep = epunct_class(&two).unwrap();
    assert_eq!(ep.multiplicity(&[1, 0, 0]), 2);
    assert_eq!(ep.net_rank(), 4);
}

#[test]
fn fiber_examples() {
    for n in 1..=3 {
        let e = canonical_enumeration(&porteous(n, &[1, 1]).unwrap());
        assert!(fiber_tangent_class(&e, &Coset::identity(1)).unwrap().is_empty());
    }
    let point = canonical_enumeration(&porteous(2, &[1]).unwrap());
    assert!(fiber_tangent_class(&point, &Coset::identity(0)).unwrap().is_empty());
    let other = canon(2, &[1, 1], &[&[&[0, 0]], &[&[0, 0], &[0, 1]]]);
    assert_eq!(fiber_tangent_class(&other, &Coset::identity(1)), Err(WeightsError::NotInFiber));
    // The Porteous flag point of (1,1,1) in n = 3 has a fiber of dimension
    // tower(3; 1,1,1) - dim Flag(1,1; 3) = 4 - 3 = 1.
    let e = canonical_enumeration(&porteous(3, &[1, 1, 1]).unwrap());
    assert_eq!(fiber_tangent_class(&e, &Coset::identity(2)).unwrap().net_rank(), 1);
}

#[test]
fn fixed_rank_examples() {
    let line5 = NestedPartition::single(Partition::new(1, (0..5).map(|i| p(&[i]))).unwrap());
    let e = canonical_enumeration(&line5);
    assert_eq!(fixed_ranks(&e), (1, 1));
    let line6 = NestedPartition::single(Partition::new(1, (0..6).map(|i| p(&[i]))).unwrap());
    let e = canonical_enumeration(&line6);
    let (wt, wb) = fixed_ranks(&e);
    // Adding 5e_1 contributes W_T = 1 and W_B = 2.
    assert_eq!((wt - 1, wb - 1), (1, 2));
    assert!(!line6.is_admissible());
    let corner = canon(2, &[3], &[&[&[0, 0], &[1, 0], &[0, 1]]]);
    assert_eq!(fixed_ranks(&corner), (0, 0));
}

#[test]
fn euler_examples() {
    let s = |i| LinearForm::var(VariableId::s(i));
    let m = SignedWeightMultiset::from_entries([(vec![1, 0], 1), (vec![0, 1], 1), (vec![0, 0], 3)]);
    assert_eq!(
        euler_class(&m, Namespace::S),
        FactoredRational::linear_power(&s(1), 1).mul(&FactoredRational::linear_power(&s(2), 1))
    );
    let m = SignedWeightMultiset::from_entries([(vec![1, -1], 1), (vec![-1, 1], 1)]);
    assert_eq!(
        euler_class(&m, Namespace::S),
        FactoredRational::linear_power(&s(1).sub(&s(2)), 2).scale(&nahilb_algebra::rat(-1))
    );
    let m = SignedWeightMultiset::from_entries([(vec![1], -1)]);
    assert_eq!(euler_class(&m, Namespace::S), FactoredRational::linear_power(&s(1), -1));
}
