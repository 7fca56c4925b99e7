use itertools::Itertools;
use nahilb_lattice::*;

fn p(c: &[u32]) -> LatticePoint {
    LatticePoint(c.to_vec())
}

fn part(n: usize, pts: &[&[u32]]) -> Partition {
    Partition::new(n, pts.iter().map(|c| p(c))).unwrap()
}

fn chain(dims: &[usize], layers: Vec<Partition>) -> NestedPartition {
    NestedPartition::new(dims.to_vec(), layers).unwrap()
}

/// Downward-closed subsets of the box `[0, size)^n` with `size` points.
fn brute_force_partitions(n: usize, size: usize) -> Vec<Vec<LatticePoint>> {
    let box_points: Vec<LatticePoint> = (0..n)
        .map(|_| 0..size as u32)
        .multi_cartesian_product()
        .map(LatticePoint)
        .collect();
    let mut out: Vec<Vec<LatticePoint>> = box_points
        .iter()
        .cloned()
        .combinations(size)
        .filter(|subset| {
            subset.iter().all(|u| {
                box_points
                    .iter()
                    .filter(|v| v.divides(u))
                    .all(|v| subset.contains(v))
            })
        })
        .map(|mut s| {
            s.sort();
            s
        })
        .collect();
    out.sort();
    out
}

#[test]
fn partitions_match_brute_force() {
    for (n, max) in [(1, 5), (2, 5), (3, 4)] {
        for size in 0..=max {
            let mut got: Vec<Vec<LatticePoint>> = enumerate_partitions(n, size)
                .unwrap()
                .into_iter()
                .map(|q| q.points().to_vec())
                .collect();
            got.sort();
            assert_eq!(got, brute_force_partitions(n, size), "n={n} size={size}");
        }
    }
}

#[test]
fn partition_examples() {
    let three = enumerate_partitions(2, 3).unwrap();
    assert_eq!(three.len(), 3);
    assert!(three.contains(&part(2, &[&[0, 0], &[1, 0], &[0, 1]])));
    assert_eq!(enumerate_partitions(1, 4).unwrap(), vec![part(1, &[&[0], &[1], &[2], &[3]])]);
    assert_eq!(enumerate_partitions(3, 1).unwrap(), vec![part(3, &[&[0, 0, 0]])]);
}

#[test]
fn nested_examples() {
    let one = enumerate_nested(1, &[1, 2]).unwrap();
    assert_eq!(one, vec![chain(&[1, 2], vec![part(1, &[&[0]]), part(1, &[&[0], &[1], &[2]])])]);
    let two = enumerate_nested(2, &[1, 1]).unwrap();
    assert_eq!(two.len(), 2);
    assert!(two.contains(&chain(&[1, 1], vec![part(2, &[&[0, 0]]), part(2, &[&[0, 0], &[0, 1]])])));
    let single: Vec<Partition> = enumerate_nested(2, &[3]).unwrap().into_iter().map(|c| c.top().clone()).collect();
    assert_eq!(single, enumerate_partitions(2, 3).unwrap());
}

#[test]
fn enumeration_examples() {
    let c = chain(
        &[1, 1, 1],
        vec![part(2, &[&[0, 0]]), part(2, &[&[0, 0], &[1, 0]]), part(2, &[&[0, 0], &[1, 0], &[0, 1]])],
    );
    let e = canonical_enumeration(&c);
    assert_eq!(e.order(), &[p(&[0, 0]), p(&[1, 0]), p(&[0, 1])]);
    assert_eq!(e.levels(), &[0, 1, 2]);

    let flat = NestedPartition::single(part(2, &[&[0, 0], &[1, 0], &[0, 1]]));
    assert_eq!(canonical_enumeration(&flat).order(), &[p(&[0, 0]), p(&[1, 0]), p(&[0, 1])]);
    assert_eq!(all_enumerations(&flat).unwrap().len(), 2);

    let square = NestedPartition::single(part(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]));
    assert_eq!(all_enumerations(&square).unwrap().len(), 2);

    let big = NestedPartition::single(Partition::new(1, (0..9).map(|i| p(&[i]))).unwrap());
    assert!(matches!(all_enumerations(&big), Err(LatticeError::SizeGuardExceeded { .. })));
}

/// Every permutation of the top layer that passes the enumeration invariants.
fn brute_force_enumerations(c: &NestedPartition) -> Vec<Vec<LatticePoint>> {
    let sums = partial_sums(c.dims());
    let d = c.total();
    c.top()
        .points()
        .iter()
        .cloned()
        .permutations(d)
        .filter(|order| {
            order[0].is_origin()
                && (1..=d).all(|k| Partition::new(c.n(), order[..k].iter().cloned()).is_ok())
                && (1..sums.len()).all(|i| {
                    let mut prefix = order[..sums[i]].to_vec();
                    prefix.sort();
                    prefix == c.layer(i).points()
                })
        })
        .collect()
}

#[test]
fn enumerations_match_brute_force() {
    for n in 1..=3 {
        for dims in [vec![4], vec![1, 3], vec![2, 2], vec![1, 1, 2], vec![5]] {
            for c in enumerate_nested(n, &dims).unwrap() {
                let mut got: Vec<Vec<LatticePoint>> =
                    all_enumerations(&c).unwrap().iter().map(|e| e.order().to_vec()).collect();
                let canonical = canonical_enumeration(&c);
                assert_eq!(got[0], canonical.order());
                got.sort();
                let mut expected = brute_force_enumerations(&c);
                expected.sort();
                assert_eq!(got, expected);
                assert_eq!(canonical.nested(), c);
            }
        }
    }
}

#[test]
fn admissibility_examples() {
    let pure = NestedPartition::single(Partition::new(1, (0..5).map(|i| p(&[i]))).unwrap());
    assert!(pure.is_admissible());
    let too_long = NestedPartition::single(Partition::new(1, (0..6).map(|i| p(&[i]))).unwrap());
    assert!(!too_long.is_admissible());
    let cube = NestedPartition::single(
        Partition::new(3, (0..8u32).map(|m| p(&[m & 1, (m >> 1) & 1, (m >> 2) & 1]))).unwrap(),
    );
    assert!(!cube.is_admissible());
    let hook = NestedPartition::single(part(2, &[&[0, 0], &[1, 0], &[2, 0], &[0, 1], &[1, 1], &[2, 1]]));
    assert!(hook.is_admissible());
}

#[test]
fn nilfil_examples() {
    let flag = chain(
        &[1, 1, 1],
        vec![part(2, &[&[0, 0]]), part(2, &[&[0, 0], &[1, 0]]), part(2, &[&[0, 0], &[1, 0], &[0, 1]])],
    );
    assert!(flag.is_nilfil().unwrap());
    let bad = chain(&[1, 2], vec![part(1, &[&[0]]), part(1, &[&[0], &[1], &[2]])]);
    assert!(!bad.is_nilfil().unwrap());
    let plane = chain(&[1, 2], vec![part(2, &[&[0, 0]]), part(2, &[&[0, 0], &[1, 0], &[0, 1]])]);
    assert!(plane.is_nilfil().unwrap());
    let unpointed = NestedPartition::single(part(2, &[&[0, 0], &[1, 0]]));
    assert_eq!(unpointed.is_nilfil(), Err(LatticeError::RequiresPointedDims));
}

#[test]
fn porteous_examples() {
    assert_eq!(
        porteous(3, &[1, 1, 1]).unwrap(),
        chain(
            &[1, 1, 1],
            vec![part(3, &[&[0, 0, 0]]), part(3, &[&[0, 0, 0], &[1, 0, 0]]), part(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]])]
        )
    );
    assert_eq!(
        porteous(2, &[1, 2]).unwrap(),
        chain(&[1, 2], vec![part(2, &[&[0, 0]]), part(2, &[&[0, 0], &[1, 0], &[0, 1]])])
    );
    assert_eq!(porteous(1, &[1, 1, 1]), Err(LatticeError::TooManyPoints { needed: 2, n: 1 }));
}

#[test]
fn flag_fiber_examples() {
    for (n, dims) in [(2, vec![1, 1]), (3, vec![1, 1, 1]), (4, vec![1, 2, 1]), (3, vec![1, 3])] {
        let k = dims.iter().sum::<usize>() - 1;
        let port = porteous(n, &dims).unwrap();
        assert!(in_flag_fiber(&port, &Coset::identity(k)).unwrap());
    }
    // With σ extended to all of 1..=n, e_2 sits in the top layer, so this
    // chain is not in H_id: for two points the fiber is a single point.
    let other = chain(&[1, 1], vec![part(2, &[&[0, 0]]), part(2, &[&[0, 0], &[0, 1]])]);
    assert!(!in_flag_fiber(&other, &Coset::identity(1)).unwrap());
    // e_1 lies in λ_2 but the block of index 1 only looks at λ_1.
    for n in 2..=3 {
        let zero = vec![0; n];
        let mut e1 = zero.clone();
        e1[0] = 1;
        let mut e11 = zero.clone();
        e11[0] = 2;
        let doubled = chain(
            &[1, 1, 1],
            vec![
                Partition::new(n, [LatticePoint(zero.clone())]).unwrap(),
                Partition::new(n, [LatticePoint(zero.clone()), LatticePoint(e1.clone())]).unwrap(),
                Partition::new(n, [LatticePoint(zero), LatticePoint(e1), LatticePoint(e11)]).unwrap(),
            ],
        );
        assert!(in_flag_fiber(&doubled, &Coset::identity(2)).unwrap());
    }
    let not_nilfil = chain(&[1, 2], vec![part(1, &[&[0]]), part(1, &[&[0], &[1], &[2]])]);
    assert_eq!(in_flag_fiber(&not_nilfil, &Coset::identity(2)), Err(LatticeError::RequiresNilfil));
}

#[test]
fn json_shapes() {
    let c = chain(&[1, 1], vec![part(2, &[&[0, 0]]), part(2, &[&[0, 0], &[1, 0]])]);
    let text = serde_json::to_string(&c).unwrap();
    assert_eq!(text, r#"{"dims":[1,1],"layers":[[[0,0]],[[0,0],[1,0]]]}"#);
    assert_eq!(serde_json::from_str::<NestedPartition>(&text).unwrap(), c);
    assert!(serde_json::from_str::<NestedPartition>(r#"{"dims":[1,1],"layers":[[[0,0]],[[0,0],[1,1]]]}"#).is_err());
    assert!(serde_json::from_str::<NestedPartition>(r#"{"dims":[2],"layers":[[[0,0]]]}"#).is_err());
}
