use mild2::arith::OddPrime;
use mild2::linking::{augment, augment_from, normalize_seed, validate_augmentation};
use mild2::mildness::Verdict;
use mild2::Error;
use proptest::prelude::*;

mod common;

fn primes(v: &[u64]) -> Vec<OddPrime> {
    v.iter().map(|&p| OddPrime::new(p).unwrap()).collect()
}

#[test]
fn greedy_result_for_small_seed() {
    let out = augment(&primes(&[13, 3]), 1_000_000).unwrap();
    assert_eq!(out.s.values(), vec![5, 13, 41, 3, 23]);
    assert_eq!(out.attempts, 1);
    assert_eq!(out.report.verdict, Verdict::Mild);
    let json = out.to_json_value();
    assert_eq!(json["S"], serde_json::json!([5, 13, 41, 3, 23]));
    assert_eq!(json["mildness"]["verdict"], "mild");
}

#[test]
fn first_auxiliary_prime_with_wrong_linking_is_abandoned() {
    // the smallest admissible q_1' for this seed leaves no mild completion
    let out = augment(&primes(&[29]), 1_000_000).unwrap();
    assert_eq!(out.s.values(), vec![17, 29, 89, 3, 11]);
    assert_eq!(out.report.verdict, Verdict::Mild);
}

#[test]
fn seed_normalization_fills_missing_classes() {
    assert_eq!(normalize_seed(&primes(&[7, 13, 3])).unwrap().values(), vec![13, 3, 7]);
    assert_eq!(normalize_seed(&primes(&[7])).unwrap().values(), vec![5, 7]);
    assert_eq!(normalize_seed(&primes(&[5])).unwrap().values(), vec![5, 3]);
    assert_eq!(normalize_seed(&primes(&[3])).unwrap().values(), vec![5, 3]);
    assert!(normalize_seed(&[]).is_err());
}

#[test]
fn start_tuple_must_have_the_right_length() {
    assert!(matches!(
        augment_from(&primes(&[13, 3]), 1_000, Some(&[41, 5])),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn small_bound_is_reported() {
    assert!(matches!(
        augment(&primes(&[13, 3]), 30),
        Err(Error::BoundExceeded { bound: 30 })
    ));
    assert!(matches!(
        augment(&primes(&[3]), 10),
        Err(Error::BoundExceeded { bound: 10 })
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn augmented_sets_validate_and_are_mild(seed in common::prime_subset(1, 3)) {
        let out = augment(&primes(&seed), 1_000_000).unwrap();
        prop_assert!(validate_augmentation(&out.seed, &out.q_aux, out.q_last).passed());
        prop_assert_eq!(out.report.verdict, Verdict::Mild);
        prop_assert_eq!(out.s.len(), 2 * out.seed.len() + 1);
        for p in out.seed.primes() {
            prop_assert!(out.s.primes().contains(p));
        }
        for q in &out.q_aux {
            prop_assert_eq!(q.class_mod_4(), 1);
        }
        prop_assert_eq!(out.q_last.class_mod_4(), 3);
    }
}
