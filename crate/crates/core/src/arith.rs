//! Elementary number theory on `u64`: deterministic primality, Legendre
//! symbols, the Möbius function and bounded prime search in residue classes.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An odd prime `p ≥ 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct OddPrime(u64);

impl OddPrime {
    pub fn new(value: u64) -> Result<Self> {
        if value >= 3 && is_prime(value) {
            Ok(OddPrime(value))
        } else {
            Err(Error::NotOddPrime(value))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// `p mod 4`, either 1 or 3.
    pub fn class_mod_4(self) -> u64 {
        self.0 % 4
    }
}

impl TryFrom<u64> for OddPrime {
    type Error = Error;

    fn try_from(value: u64) -> Result<Self> {
        OddPrime::new(value)
    }
}

impl From<OddPrime> for u64 {
    fn from(p: OddPrime) -> u64 {
        p.0
    }
}

impl fmt::Display for OddPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for OddPrime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let v: u64 = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("not a 64-bit unsigned integer: {s:?}")))?;
        OddPrime::new(v)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

// The first twelve primes are a complete witness set below 3.3 * 10^24.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller–Rabin over the whole `u64` range. `0` and `1` are
/// not prime.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Legendre symbol `(a / p)` by Euler's criterion.
pub fn legendre(a: i64, p: OddPrime) -> i8 {
    let p = p.get();
    let r = (a as i128).rem_euclid(p as i128) as u64;
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// `true` iff `a` is a nonzero square modulo `p`.
pub fn is_square_mod(a: u64, p: OddPrime) -> bool {
    legendre_u64(a, p) == 1
}

pub(crate) fn legendre_u64(a: u64, p: OddPrime) -> i8 {
    let r = a % p.get();
    if r == 0 {
        0
    } else if pow_mod(r, (p.get() - 1) / 2, p.get()) == 1 {
        1
    } else {
        -1
    }
}

/// Möbius function by trial-division factorization.
pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::OutOfRange("mobius is defined for n >= 1".into()));
    }
    let mut n = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return Ok(0);
            }
            sign = -sign;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        sign = -sign;
    }
    Ok(sign)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Smallest odd prime `q` with `start ≤ q ≤ bound`, `q ≡ residue (mod modulus)`
/// and `q ∉ avoid`.
pub fn next_prime_in_class(
    start: u64,
    residue: u64,
    modulus: u64,
    avoid: &BTreeSet<u64>,
    bound: u64,
) -> Result<OddPrime> {
    if residue == 0 || residue >= modulus || gcd(residue, modulus) != 1 {
        return Err(Error::InvalidArgument(format!(
            "residue {residue} must be a unit in (0, {modulus})"
        )));
    }
    let offset = (residue + modulus - start % modulus) % modulus;
    let Some(mut q) = start.checked_add(offset) else {
        return Err(Error::BoundExceeded { bound });
    };
    while q <= bound {
        if q >= 3 && !avoid.contains(&q) && is_prime(q) {
            return Ok(OddPrime(q));
        }
        q = match q.checked_add(modulus) {
            Some(next) => next,
            None => break,
        };
    }
    Err(Error::BoundExceeded { bound })
}
