use easyq::category::{CategorySpec, CategoryId};
use easyq::linalg::integer;
use easyq::partition::{ColorWord, Partition};
use easyq::tensor_map::{mobius_expansion_check, t_map, t_map_twisted, verify_functoriality, SparseMap};
use easyq::weingarten::gram;
use proptest::prelude::*;

fn partition(upper: usize, labels: &[u8]) -> Partition {
    let lower = labels.len() - upper;
    Partition::from_labels(ColorWord::white(upper), ColorWord::white(lower), labels).unwrap()
}

/// Any partition with at most `max` legs.
fn any_partition(max: usize) -> impl Strategy<Value = Partition> {
    (0..=max)
        .prop_flat_map(|len| (0..=len, prop::collection::vec(0u8..4, len)))
        .prop_map(|(upper, labels)| partition(upper, &labels))
}

/// Partitions whose blocks all have even size: each label appears an even number of times.
fn even_partition(max_half: usize) -> impl Strategy<Value = Partition> {
    (0..=max_half)
        .prop_flat_map(|m| prop::collection::vec(0u8..3, m))
        .prop_flat_map(|half| {
            let mut labels = half.clone();
            labels.extend(half);
            let len = labels.len();
            (Just(labels).prop_shuffle(), 0..=len)
        })
        .prop_map(|(labels, upper)| partition(upper, &labels))
}

/// A partition whose lower row has exactly `lower` legs.
fn with_lower(lower: usize) -> impl Strategy<Value = Partition> {
    (0..=2usize, prop::collection::vec(0u8..4, lower + 2))
        .prop_map(move |(upper, labels)| partition(upper, &labels[..upper + lower]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn plain_maps_are_functorial(
        (p, q) in any_partition(4).prop_flat_map(|p| {
            let lower = p.upper_len();
            (Just(p), with_lower(lower))
        }),
        n in 1usize..=3,
    ) {
        let report = verify_functoriality(&p, &q, n, false).unwrap();
        prop_assert!(report.passed(), "{p} / {q}: {:?}", report.checks);
        prop_assert_eq!(report.checks.len(), 3);
    }

    #[test]
    fn twisted_maps_are_functorial_on_even_partitions(p in even_partition(3), q in even_partition(3), n in 1usize..=3) {
        let report = verify_functoriality(&p, &q, n, true).unwrap();
        prop_assert!(report.passed(), "{p} / {q}: {:?}", report.checks);
    }

    #[test]
    fn sparse_agrees_with_dense(p in any_partition(4), n in 1usize..=3) {
        prop_assert_eq!(SparseMap::new(&p, n, false).unwrap().to_exact(), t_map(&p, n).unwrap());
        if p.block_sizes().iter().all(|s| s % 2 == 0) {
            prop_assert_eq!(SparseMap::new(&p, n, true).unwrap().to_exact(), t_map_twisted(&p, n).unwrap());
        }
    }

    #[test]
    fn mobius_expansion_holds(p in even_partition(2), n in 2usize..=3) {
        prop_assert!(mobius_expansion_check(&p, n).unwrap().holds);
    }
}

#[test]
fn composition_with_loops() {
    let cap: Partition = "-|oo {d1,d2}".parse().unwrap();
    let cup = cap.adjoint();
    for n in 1..5 {
        // A cap followed by a cup closes one loop.
        let lhs = t_map(&cup, n).unwrap().checked_mul(&t_map(&cap, n).unwrap()).unwrap();
        assert_eq!(lhs.get(0, 0), &integer(n as i64));
        assert!(verify_functoriality(&cup, &cap, n, false).unwrap().passed());
    }
}

#[test]
fn crossing_is_the_flip() {
    let cross: Partition = "oo|oo {u1,d2}{u2,d1}".parse().unwrap();
    let t = t_map(&cross, 3).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            let row = i * 3 + j;
            let col = j * 3 + i;
            assert_eq!(t.get(row, col), &integer(1));
        }
    }
    assert_eq!(t.sum_entries(), integer(9));
    let twisted = t_map_twisted(&cross, 3).unwrap();
    assert_eq!(twisted.trace(), integer(3));
    assert_eq!(twisted.sum_entries(), integer(3 - 6));
}

#[test]
fn noncrossing_pairings_are_independent() {
    let spec = CategorySpec::Named(CategoryId::NC2);
    let catalan = [1, 1, 2, 5, 14];
    for (k, &c) in catalan.iter().enumerate() {
        let g = gram(&spec, &ColorWord::white(2 * k), 2).unwrap();
        assert_eq!(g.dim(), c);
        assert_eq!(g.rank, c, "NC2 on {} legs at N = 2", 2 * k);
    }
}
