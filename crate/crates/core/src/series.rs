//! Exact power series over ℤ for graded dimension counting.
//!
//! Everything is truncated at a caller-chosen order `N` and kept in
//! arbitrary-precision integers, since coefficients grow like `d^n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::arith::mobius;
use crate::error::{Error, Result};

/// Generator weights `e_i ≥ 1` and relator degrees `h_j ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSignature {
    e: Vec<u32>,
    h: Vec<u32>,
}

impl WeightSignature {
    pub fn new(e: Vec<u32>, h: Vec<u32>) -> Result<Self> {
        if e.is_empty() {
            return Err(Error::InvalidArgument("at least one generator weight is required".into()));
        }
        if e.contains(&0) {
            return Err(Error::InvalidArgument("generator weights must be >= 1".into()));
        }
        if h.iter().any(|&x| x < 2) {
            return Err(Error::InvalidArgument("relator degrees must be >= 2".into()));
        }
        Ok(WeightSignature { e, h })
    }

    /// `d` weight-1 generators and `m` quadratic relators.
    pub fn quadratic(d: usize, m: usize) -> Result<Self> {
        WeightSignature::new(vec![1; d], vec![2; m])
    }

    pub fn weights(&self) -> &[u32] {
        &self.e
    }

    pub fn relator_degrees(&self) -> &[u32] {
        &self.h
    }

    /// Number of weight-1 generators.
    pub fn r(&self) -> usize {
        self.e.iter().filter(|&&w| w == 1).count()
    }

    /// Coefficients of `1 - Σ t^{e_i} + Σ t^{h_j}`.
    pub fn denominator(&self) -> Vec<BigInt> {
        let top = self.e.iter().chain(&self.h).copied().max().unwrap_or(0) as usize;
        let mut den = vec![BigInt::zero(); top + 1];
        den[0] = BigInt::one();
        for &w in &self.e {
            den[w as usize] -= 1;
        }
        for &w in &self.h {
            den[w as usize] += 1;
        }
        while den.len() > 1 && den.last().is_some_and(Zero::is_zero) {
            den.pop();
        }
        den
    }
}

/// Coefficients `c_0..c_N` of `numerator / denominator`.
pub fn expand_rational(numerator: &[BigInt], denominator: &[BigInt], n: usize) -> Result<Vec<BigInt>> {
    if denominator.first().is_none_or(|c| !c.is_one()) {
        return Err(Error::ZeroConstantTerm);
    }
    let mut out: Vec<BigInt> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut c = numerator.get(k).cloned().unwrap_or_default();
        for (i, di) in denominator.iter().enumerate().skip(1).take(k) {
            if !di.is_zero() {
                c -= di * &out[k - i];
            }
        }
        out.push(c);
    }
    Ok(out)
}

/// Truncated product of two series.
pub fn mul_truncated(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n + 1];
    for (i, ai) in a.iter().enumerate().take(n + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n + 1 - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

/// `1 / (1 - Σ t^{e_i} + Σ t^{h_j})` through degree `n`.
pub fn strongly_free_series(sig: &WeightSignature, n: usize) -> Vec<BigInt> {
    expand_rational(&[BigInt::one()], &sig.denominator(), n).expect("denominator is monic")
}

/// The strongly free series divided by `1 - t`: its prefix sums.
pub fn gamma_series(sig: &WeightSignature, n: usize) -> Vec<BigInt> {
    let mut acc = BigInt::zero();
    strongly_free_series(sig, n)
        .into_iter()
        .map(|c| {
            acc += c;
            acc.clone()
        })
        .collect()
}

/// Power sums `p_1..p_L` of the inverse roots of the denominator, via
/// Newton's identities.
pub fn power_sums(sig: &WeightSignature, l: usize) -> Vec<BigInt> {
    let den = sig.denominator();
    let c = |i: usize| den.get(i).cloned().unwrap_or_default();
    let mut p: Vec<BigInt> = Vec::with_capacity(l);
    for k in 1..=l {
        let mut v = -(BigInt::from(k) * c(k));
        for i in 1..k {
            v -= c(i) * &p[k - i - 1];
        }
        p.push(v);
    }
    p
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimensionKind {
    ReducedB,
    LowerCentralA,
    ZassenhausA,
    QuotientDims,
}

impl DimensionKind {
    pub fn tag(self) -> &'static str {
        match self {
            DimensionKind::ReducedB => "reduced_b",
            DimensionKind::LowerCentralA => "lower_central_a",
            DimensionKind::ZassenhausA => "zassenhaus_a",
            DimensionKind::QuotientDims => "quotient_dims",
        }
    }
}

/// Values `v_start, v_{start+1}, …` of a graded dimension count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionSequence {
    pub kind: DimensionKind,
    pub start: usize,
    pub values: Vec<BigInt>,
}

impl DimensionSequence {
    pub fn get(&self, n: usize) -> Option<&BigInt> {
        n.checked_sub(self.start).and_then(|k| self.values.get(k))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.values.iter().enumerate().map(|(k, v)| (k + self.start, v))
    }

    /// Values as `i64`, for tests and small tables.
    pub fn to_i64(&self) -> Vec<i64> {
        self.values
            .iter()
            .map(|v| i64::try_from(v).expect("dimension fits in i64"))
            .collect()
    }

    pub fn to_json_value(&self) -> Value {
        let values: Vec<Value> = self
            .pairs()
            .map(|(n, v)| Value::Array(vec![Value::from(n), bigint_json(v)]))
            .collect();
        serde_json::json!({ "kind": self.kind.tag(), "values": values })
    }
}

/// A JSON number carrying the exact decimal digits of `v`.
pub fn bigint_json(v: &BigInt) -> Value {
    let n: serde_json::Number = v.to_string().parse().expect("integer literal is valid JSON");
    Value::Number(n)
}

/// Series as JSON `[[n, c_n], …]` pairs.
pub fn series_json(kind: &str, coeffs: &[BigInt]) -> Value {
    let values: Vec<Value> = coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| Value::Array(vec![Value::from(n), bigint_json(c)]))
        .collect();
    serde_json::json!({ "kind": kind, "values": values })
}

fn nonnegative(kind: &'static str, n: usize, v: BigInt) -> Result<BigInt> {
    if v.is_negative() {
        Err(Error::NotRealizable { kind, n, value: v.to_string() })
    } else {
        Ok(v)
    }
}

/// `b_n = (1/n) Σ_{ℓ | n} μ(n/ℓ) (p_ℓ + (-1)^ℓ r)` for `2 ≤ n ≤ N`.
pub fn reduced_dims_bn(sig: &WeightSignature, n_max: usize) -> Result<DimensionSequence> {
    if n_max < 2 {
        return Err(Error::InvalidArgument("reduced dimensions need N >= 2".into()));
    }
    let p = power_sums(sig, n_max);
    let r = BigInt::from(sig.r());
    let mut values = Vec::with_capacity(n_max - 1);
    for n in 2..=n_max {
        let mut sum = BigInt::zero();
        for l in (1..=n).filter(|l| n % l == 0) {
            let mu = mobius((n / l) as u64)?;
            if mu == 0 {
                continue;
            }
            let mut term = p[l - 1].clone();
            if l % 2 == 0 {
                term += &r;
            } else {
                term -= &r;
            }
            sum += term * mu;
        }
        let (q, rem) = sum.div_rem(&BigInt::from(n));
        if !rem.is_zero() {
            return Err(Error::NotRealizable {
                kind: "reduced_b",
                n,
                value: format!("{sum}/{n}"),
            });
        }
        values.push(nonnegative("reduced_b", n, q)?);
    }
    Ok(DimensionSequence { kind: DimensionKind::ReducedB, start: 2, values })
}

/// `a_1 = r` and `a_n = Σ_{k=2}^n b_k`.
pub fn lower_central_dims(sig: &WeightSignature, n_max: usize) -> Result<DimensionSequence> {
    let mut values = vec![BigInt::from(sig.r())];
    if n_max >= 2 {
        let b = reduced_dims_bn(sig, n_max)?;
        let mut acc = BigInt::zero();
        for v in &b.values {
            acc += v;
            values.push(acc.clone());
        }
    }
    Ok(DimensionSequence { kind: DimensionKind::LowerCentralA, start: 1, values })
}

/// Coefficients of `(1 + t^n)^a`, truncated.
fn one_plus_power(n: usize, a: &BigInt, n_max: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n_max + 1];
    let mut binom = BigInt::one();
    let mut k = 0usize;
    while k * n <= n_max && !binom.is_zero() {
        out[k * n] = binom.clone();
        binom = binom * (a - k) / (k + 1);
        k += 1;
    }
    out
}

/// Coefficients of `(1 - t^n)^{-b} = Σ_k C(b+k-1, k) t^{nk}`, truncated.
fn inverse_one_minus_power(n: usize, b: &BigInt, n_max: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n_max + 1];
    let mut binom = BigInt::one();
    let mut k = 0usize;
    while k * n <= n_max {
        out[k * n] = binom.clone();
        binom = binom * (b + k) / (k + 1);
        k += 1;
    }
    out
}

/// Exponents `a_n` with `Π_{n ≥ 1} (1 + t^n)^{a_n} = 1/(1 - d t + m t²)`.
pub fn zassenhaus_dims(d: usize, m: usize, n_max: usize) -> Result<DimensionSequence> {
    if d == 0 {
        return Err(Error::InvalidArgument("zassenhaus dimensions need d >= 1".into()));
    }
    let den = vec![BigInt::one(), -BigInt::from(d), BigInt::from(m)];
    let target = expand_rational(&[BigInt::one()], &den, n_max)?;
    let mut partial = vec![BigInt::zero(); n_max + 1];
    partial[0] = BigInt::one();
    let mut values = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let quotient = expand_rational(&target, &partial, n)?;
        let a = nonnegative("zassenhaus_a", n, quotient[n].clone())?;
        partial = mul_truncated(&partial, &one_plus_power(n, &a, n_max), n_max);
        values.push(a);
    }
    Ok(DimensionSequence { kind: DimensionKind::ZassenhausA, start: 1, values })
}

/// Checks `(1+t)^r Π_{n=2}^N (1-t^n)^{-b_n}` against the strongly free series
/// through degree `N`.
pub fn verify_cent_g(sig: &WeightSignature, n_max: usize) -> Result<bool> {
    let b = reduced_dims_bn(sig, n_max)?;
    let mut prod = one_plus_power(1, &BigInt::from(sig.r()), n_max);
    for (n, bn) in b.pairs() {
        prod = mul_truncated(&prod, &inverse_one_minus_power(n, bn, n_max), n_max);
    }
    Ok(prod == strongly_free_series(sig, n_max))
}
