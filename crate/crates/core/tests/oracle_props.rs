use mild2::linking::QuadraticRelator;
use mild2::mildness::{find_mild_partition, rank_criterion, Partition};
use mild2::oracle::{quotient_dims, strongly_free_oracle, Agreement, DEFAULT_MEMORY_CAP_MIB};
use mild2::quadlie::{Ring, WeightedAlphabet};
use mild2::series::{strongly_free_series, WeightSignature};
use mild2::Error;
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

mod common;

const CAP: u64 = DEFAULT_MEMORY_CAP_MIB;

fn dims(d: usize, rels: &[QuadraticRelator], depth: usize, ring: Ring) -> Vec<u64> {
    strongly_free_oracle(d, rels, depth, ring, CAP)
        .unwrap()
        .profile
        .degrees
        .iter()
        .map(|p| p.quotient)
        .collect()
}

#[test]
fn ambient_dimensions_without_relators() {
    let alphabet = WeightedAlphabet::uniform(3);
    let f2 = quotient_dims(&alphabet, &[], 5, Ring::F2, CAP).unwrap();
    let words: Vec<u64> = f2.degrees.iter().map(|p| p.ambient).collect();
    assert_eq!(words, [1, 3, 9, 27, 81, 243]);
    let pi = quotient_dims(&alphabet, &[], 5, Ring::F2Pi, CAP).unwrap();
    let graded: Vec<u64> = pi.degrees.iter().map(|p| p.ambient).collect();
    assert_eq!(graded, [1, 4, 13, 40, 121, 364]);
    let weighted = WeightedAlphabet::new(vec![1, 2]).unwrap();
    let w = quotient_dims(&weighted, &[], 5, Ring::F2, CAP).unwrap();
    let fib: Vec<u64> = w.degrees.iter().map(|p| p.ambient).collect();
    assert_eq!(fib, [1, 1, 2, 3, 5, 8]);
}

#[test]
fn non_mild_relators_disagree_before_first_nonpositive_coefficient() {
    let rels = vec![
        QuadraticRelator::parse("[x1,x2]", 2).unwrap(),
        QuadraticRelator::parse("x1^2", 2).unwrap(),
    ];
    let sig = WeightSignature::quadratic(2, 2).unwrap();
    let series = strongly_free_series(&sig, 6);
    let first_bad = series.iter().position(|c| !c.is_positive()).unwrap();
    let out = strongly_free_oracle(2, &rels, 6, Ring::F2, CAP).unwrap();
    match out.agreement {
        Agreement::Mismatch { degree, .. } => assert!(degree <= first_bad),
        Agreement::Match => panic!("negative control matched"),
    }
}

#[test]
fn memory_guard_trips_before_allocation() {
    let rels: Vec<QuadraticRelator> = common::circuit_instance(4, &[false]);
    match strongly_free_oracle(4, &rels, 6, Ring::F2, 0) {
        Err(Error::MemoryGuard { cap_mib: 0, .. }) => {}
        other => panic!("expected memory guard, got {other:?}"),
    }
    assert!(strongly_free_oracle(4, &rels, 1, Ring::F2, CAP).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn circuit_instances_match_both_series(rels in common::circuit_strategy(&[4])) {
        let f2 = strongly_free_oracle(4, &rels, 6, Ring::F2, CAP).unwrap();
        prop_assert!(f2.matches(), "{:?}", f2.agreement);
        let pi = strongly_free_oracle(4, &rels, 5, Ring::F2Pi, CAP).unwrap();
        prop_assert!(pi.matches(), "{:?}", pi.agreement);
    }

    #[test]
    fn rank_mild_sets_match_on_six_generators(rels in common::circuit_strategy(&[6])) {
        prop_assert!(rank_criterion(&rels, &Partition::parity(6)));
        let out = strongly_free_oracle(6, &rels, 4, Ring::F2, CAP).unwrap();
        prop_assert!(out.matches());
    }

    #[test]
    fn any_rank_witness_implies_match(rels in common::relators(4, 3)) {
        if find_mild_partition(&rels).is_some() {
            let out = strongly_free_oracle(4, &rels, 5, Ring::F2, CAP).unwrap();
            prop_assert!(out.matches(), "{:?}", out.agreement);
        }
    }

    #[test]
    fn dimensions_invariant_under_row_operations_and_relabeling(
        rels in common::relators(4, 3),
        ops in proptest::collection::vec((0usize..3, 0usize..3), 0..5),
        perm in common::permutation(4),
    ) {
        let base = dims(4, &rels, 4, Ring::F2);
        let mut moved = rels.clone();
        for (src, dst) in ops {
            if src != dst {
                let add = moved[src].clone();
                moved[dst].add_assign(&add);
            }
        }
        prop_assert_eq!(&dims(4, &moved, 4, Ring::F2), &base);
        let relabeled: Vec<QuadraticRelator> = rels.iter().map(|r| r.permuted(&perm)).collect();
        prop_assert_eq!(&dims(4, &relabeled, 4, Ring::F2), &base);
    }

    #[test]
    fn quotient_never_exceeds_formula_lower_bound(rels in common::relators(3, 2)) {
        // the strongly free series is a coefficientwise lower bound while positive
        let out = strongly_free_oracle(3, &rels, 5, Ring::F2, CAP).unwrap();
        for (p, e) in out.profile.degrees.iter().zip(&out.expected) {
            if !e.is_positive() {
                break;
            }
            prop_assert!(BigInt::from(p.quotient) >= *e);
        }
    }
}
