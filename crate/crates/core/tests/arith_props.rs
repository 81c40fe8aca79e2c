use std::collections::BTreeSet;

use mild2::arith::{is_prime, is_square_mod, legendre, mobius, next_prime_in_class, OddPrime};
use mild2::Error;
use proptest::prelude::*;

mod common;

fn trial_division(n: u64) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| !n.is_multiple_of(k))
}

fn brute_square(a: u64, p: u64) -> bool {
    !a.is_multiple_of(p) && (1..p).any(|x| x * x % p == a % p)
}

#[test]
fn primality_agrees_with_trial_division_below_ten_thousand() {
    for n in 0..10_000 {
        assert_eq!(is_prime(n), trial_division(n), "n = {n}");
    }
}

#[test]
fn strong_pseudoprimes_are_rejected() {
    for n in [2047u64, 1_373_653, 25_326_001, 3_215_031_751, 3_825_123_056_546_413_051] {
        assert!(!is_prime(n), "{n}");
    }
    assert!(is_prime(18_446_744_073_709_551_557));
    assert!(!is_prime(u64::MAX));
}

#[test]
fn odd_prime_rejects_composites_and_two() {
    for bad in [0u64, 1, 2, 4, 9, 91] {
        assert!(matches!(OddPrime::new(bad), Err(Error::NotOddPrime(v)) if v == bad));
    }
    assert_eq!(OddPrime::new(97).unwrap().get(), 97);
}

#[test]
fn euler_criterion_matches_brute_force() {
    for &p in &common::SMALL_PRIMES[..20] {
        let q = OddPrime::new(p).unwrap();
        for a in 0..2 * p {
            assert_eq!(is_square_mod(a, q), brute_square(a, p), "a = {a}, p = {p}");
        }
    }
}

#[test]
fn mobius_first_values() {
    let expected = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0, -1, 1, 1, 0];
    for (n, &mu) in (1u64..).zip(&expected) {
        assert_eq!(mobius(n).unwrap(), mu, "n = {n}");
    }
    assert!(mobius(0).is_err());
}

#[test]
fn next_prime_in_class_respects_bound_and_avoid_list() {
    let avoid: BTreeSet<u64> = [13].into_iter().collect();
    assert_eq!(next_prime_in_class(2, 1, 4, &avoid, 100).unwrap().get(), 5);
    assert_eq!(next_prime_in_class(6, 1, 4, &avoid, 100).unwrap().get(), 17);
    assert!(matches!(
        next_prime_in_class(90, 1, 8, &avoid, 96),
        Err(Error::BoundExceeded { bound: 96 })
    ));
    assert!(next_prime_in_class(3, 2, 4, &avoid, 100).is_err());
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

proptest! {
    #[test]
    fn quadratic_reciprocity(i in 0usize..45, j in 0usize..45) {
        prop_assume!(i != j);
        let p = OddPrime::new(common::SMALL_PRIMES[i]).unwrap();
        let q = OddPrime::new(common::SMALL_PRIMES[j]).unwrap();
        let lhs = legendre(p.get() as i64, q) * legendre(q.get() as i64, p);
        let sign = if p.class_mod_4() == 3 && q.class_mod_4() == 3 { -1 } else { 1 };
        prop_assert_eq!(lhs, sign);
    }

    #[test]
    fn legendre_is_multiplicative(a in -500i64..500, b in -500i64..500, i in 0usize..45) {
        let p = OddPrime::new(common::SMALL_PRIMES[i]).unwrap();
        prop_assert_eq!(legendre(a * b, p), legendre(a, p) * legendre(b, p));
        prop_assert_eq!(legendre(a, p), legendre(a + p.get() as i64, p));
    }

    #[test]
    fn mobius_is_multiplicative(a in 1u64..5_000, b in 1u64..5_000) {
        prop_assume!(gcd(a, b) == 1);
        prop_assert_eq!(mobius(a * b).unwrap(), mobius(a).unwrap() * mobius(b).unwrap());
    }

    #[test]
    fn mobius_sums_to_zero_over_divisors(n in 2u64..3_000) {
        let total: i64 = (1..=n).filter(|k| n % k == 0).map(|k| mobius(k).unwrap() as i64).sum();
        prop_assert_eq!(total, 0);
    }

    #[test]
    fn next_prime_in_class_is_minimal(start in 3u64..2_000, modulus in prop::sample::select(vec![4u64, 8, 12, 13 * 4])) {
        let residue = (1..modulus).find(|&r| gcd(r, modulus) == 1 && r % 4 == 1).unwrap();
        let q = next_prime_in_class(start, residue, modulus, &BTreeSet::new(), 1_000_000).unwrap().get();
        prop_assert!(q >= start && q % modulus == residue && is_prime(q));
        prop_assert!((start..q).all(|k| k % modulus != residue || !is_prime(k)));
    }
}
