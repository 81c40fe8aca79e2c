#![allow(dead_code)]

use mild2::linking::QuadraticRelator;
use proptest::prelude::*;

/// Odd primes below 200, enough to draw varied linking patterns.
pub const SMALL_PRIMES: [u64; 45] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
    197, 199,
];

pub fn prime_subset(min: usize, max: usize) -> impl Strategy<Value = Vec<u64>> {
    proptest::sample::subsequence(SMALL_PRIMES.to_vec(), min..=max).prop_shuffle()
}

/// A relator on `d` generators built from a bit mask over squares and pairs.
pub fn relator_from_bits(d: usize, bits: &[bool]) -> QuadraticRelator {
    let mut r = QuadraticRelator::zero(d);
    let mut it = bits.iter().copied();
    for i in 0..d {
        if it.next().unwrap_or(false) {
            r.set_square(i, true);
        }
    }
    for i in 0..d {
        for j in i + 1..d {
            if it.next().unwrap_or(false) {
                r.set_comm(i, j, true);
            }
        }
    }
    r
}

pub fn relator(d: usize) -> impl Strategy<Value = QuadraticRelator> {
    proptest::collection::vec(any::<bool>(), d + d * (d - 1) / 2)
        .prop_map(move |bits| relator_from_bits(d, &bits))
}

pub fn relators(d: usize, m: usize) -> impl Strategy<Value = Vec<QuadraticRelator>> {
    proptest::collection::vec(relator(d), m)
}

/// Koch-shaped relators on `d` (even, at least 4) generators that satisfy
/// the circuit conditions, with the free bits drawn from `bits`.
pub fn circuit_instance(d: usize, bits: &[bool]) -> Vec<QuadraticRelator> {
    let mut it = bits.iter().copied().cycle();
    let mut ell = vec![vec![false; d]; d];
    for (i, row) in ell.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            if i != j && (i % 2 == 1 || j % 2 == 1) {
                *cell = it.next().unwrap_or(false);
            }
        }
    }
    for i in 0..d {
        ell[i][(i + 1) % d] = true;
    }
    if (0..d).all(|i| ell[(i + 1) % d][i]) {
        ell[1][0] = false;
    }
    (0..d)
        .map(|i| {
            let square = i % 2 == 1 && it.next().unwrap_or(false);
            QuadraticRelator::koch(d, i, square, &ell[i])
        })
        .collect()
}

pub fn circuit_strategy(sizes: &'static [usize]) -> impl Strategy<Value = Vec<QuadraticRelator>> {
    (proptest::sample::select(sizes), proptest::collection::vec(any::<bool>(), 80))
        .prop_map(|(d, bits)| circuit_instance(d, &bits))
}

/// A random permutation of `0..d`.
pub fn permutation(d: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..d).collect::<Vec<_>>()).prop_shuffle()
}
