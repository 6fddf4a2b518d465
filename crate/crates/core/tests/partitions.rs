use hlv_core::partitions::{
    dimension_d_mu, dimvec_to_multipartition, enumerate_multipartitions, enumerate_partitions,
    multipartition_to_dimvec, CometDimensionVector, MultiPartition, Partition,
};
use proptest::prelude::*;

fn partition_strategy() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..6, 0..6).prop_map(Partition::from_unsorted)
}

fn factorial(n: u32) -> u128 {
    (1..=n as u128).product()
}

/// Number of standard Young tableaux by filling cells one at a time.
fn standard_tableaux(shape: &[u32]) -> u128 {
    if shape.iter().all(|&r| r == 0) {
        return 1;
    }
    let mut total = 0;
    for i in 0..shape.len() {
        let removable = shape[i] > 0 && (i + 1 == shape.len() || shape[i + 1] < shape[i]);
        if removable {
            let mut smaller = shape.to_vec();
            smaller[i] -= 1;
            total += standard_tableaux(&smaller);
        }
    }
    total
}

proptest! {
    #[test]
    fn conjugation_is_an_involution(l in partition_strategy()) {
        let c = l.conjugate();
        prop_assert_eq!(c.size(), l.size());
        prop_assert_eq!(c.conjugate(), l.clone());
        prop_assert_eq!(c.len() as u32, l.parts().first().copied().unwrap_or(0));
    }

    #[test]
    fn hook_sum_identity(l in partition_strategy()) {
        let hooks: u64 = l.hooks().iter().map(|&h| h as u64).sum();
        prop_assert_eq!(hooks, l.n() + l.conjugate().n() + l.size() as u64);
        let direct: u64 = l.parts().iter().enumerate().map(|(i, &p)| i as u64 * p as u64).sum();
        prop_assert_eq!(l.n(), direct);
    }

    #[test]
    fn hook_length_formula(l in prop::collection::vec(1u32..5, 0..4).prop_map(Partition::from_unsorted)) {
        let prod: u128 = l.hooks().iter().map(|&h| h as u128).product();
        prop_assert_eq!(factorial(l.size()) / prod, standard_tableaux(l.parts()));
    }

    #[test]
    fn text_round_trip(a in partition_strategy(), b in partition_strategy()) {
        prop_assert_eq!(a.to_string().parse::<Partition>().unwrap(), a.clone());
        if a.size() == b.size() && a.size() > 0 {
            let mu = MultiPartition::new(vec![a, b]).unwrap();
            prop_assert_eq!(mu.to_string().parse::<MultiPartition>().unwrap(), mu);
        }
    }
}

#[test]
fn partition_counts() {
    let expected = [1usize, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];
    for (n, &p) in expected.iter().enumerate() {
        let parts = enumerate_partitions(n as u32);
        assert_eq!(parts.len(), p, "n = {n}");
        assert!(parts.iter().all(|l| l.size() == n as u32));
        let mut sorted = parts.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), p);
    }
    assert_eq!(enumerate_multipartitions(3, 2).len(), 9);
}

#[test]
fn class_sizes_sum_to_group_order() {
    for n in 1..=8 {
        let total: u128 = enumerate_partitions(n)
            .iter()
            .map(|l| factorial(n) / l.z())
            .sum();
        assert_eq!(total, factorial(n));
    }
}

#[test]
fn dimvec_round_trip() {
    for n in 1..=4 {
        for k in 1..=3 {
            for mu in enumerate_multipartitions(n, k) {
                let v = multipartition_to_dimvec(&mu, 1);
                assert_eq!(dimvec_to_multipartition(&v).unwrap(), mu);
            }
        }
    }
    // the same multipartition from two dimension vectors
    let a = CometDimensionVector::parse("2; 1", 1).unwrap();
    let b = CometDimensionVector::parse("2; 2, 1", 1).unwrap();
    assert_eq!(
        dimvec_to_multipartition(&a).unwrap(),
        dimvec_to_multipartition(&b).unwrap()
    );
    assert!(CometDimensionVector::parse("2; 3", 1).is_err());
    assert!(CometDimensionVector::parse("2; 1, 2", 1).is_err());
}

#[test]
fn dimensions() {
    let mu: MultiPartition = "1".parse().unwrap();
    assert_eq!(dimension_d_mu(&mu, 1), 2);
    assert_eq!(dimension_d_mu(&mu, 2), 4);
    let mu: MultiPartition = "1,1|1,1|1,1|1,1".parse().unwrap();
    assert_eq!(dimension_d_mu(&mu, 0), 2);
}
