use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Coefficient ring of the free algebra: `F₂`, or `F₂[π]` with `π` central
/// of degree 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    F2,
    F2Pi,
}

impl Ring {
    pub fn name(self) -> &'static str {
        match self {
            Ring::F2 => "F2",
            Ring::F2Pi => "F2[pi]",
        }
    }
}

/// Generators `ξ_1..ξ_d` with weights sorted nondecreasingly, so the
/// weight-1 generators come first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedAlphabet {
    weights: Vec<u32>,
}

impl WeightedAlphabet {
    pub fn new(weights: Vec<u32>) -> Result<Self> {
        if weights.contains(&0) {
            return Err(Error::InvalidArgument("generator weights must be >= 1".into()));
        }
        if weights.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidArgument("generator weights must be nondecreasing".into()));
        }
        if weights.len() > u16::MAX as usize {
            return Err(Error::InvalidArgument("too many generators".into()));
        }
        Ok(WeightedAlphabet { weights })
    }

    /// `d` generators of weight 1.
    pub fn uniform(d: usize) -> Self {
        WeightedAlphabet::new(vec![1; d]).expect("uniform weights are valid")
    }

    pub fn d(&self) -> usize {
        self.weights.len()
    }

    /// Number of weight-1 generators.
    pub fn m(&self) -> usize {
        self.weights.iter().take_while(|&&w| w == 1).count()
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// Number of words of each weighted degree `0..=n`.
    pub fn word_counts(&self, n: usize) -> Vec<u64> {
        let mut c = vec![0u64; n + 1];
        c[0] = 1;
        for k in 1..=n {
            c[k] = self
                .weights
                .iter()
                .filter(|&&w| w as usize <= k)
                .map(|&w| c[k - w as usize])
                .fold(0u64, u64::saturating_add);
        }
        c
    }
}

/// `π^pi · word`, ordered by total degree, then `π`-exponent, then word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub degree: u32,
    pub pi: u32,
    pub word: Vec<u16>,
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::with_capacity(self.word.len() + 1);
        match self.pi {
            0 => {}
            1 => parts.push("pi".into()),
            k => parts.push(format!("pi^{k}")),
        }
        parts.extend(self.word.iter().map(|&l| format!("x{}", l + 1)));
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("."))
        }
    }
}

/// Element of the free associative algebra truncated above degree `N`, with
/// coefficients in `F₂` stored as a set of monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NcPoly {
    ring: Ring,
    trunc: u32,
    terms: BTreeSet<Monomial>,
}

impl NcPoly {
    pub fn zero(ring: Ring, trunc: u32) -> Self {
        NcPoly { ring, trunc, terms: BTreeSet::new() }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn truncation(&self) -> u32 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    /// Adds a monomial, cancelling it if already present. Monomials above
    /// the truncation degree are dropped.
    pub fn toggle(&mut self, m: Monomial) -> Result<()> {
        if m.pi > 0 && self.ring == Ring::F2 {
            return Err(Error::PiOnF2);
        }
        if m.degree <= self.trunc && !self.terms.remove(&m) {
            self.terms.insert(m);
        }
        Ok(())
    }

    fn check(&self, other: &NcPoly) -> Result<()> {
        if self.ring != other.ring || self.trunc != other.trunc {
            Err(Error::RingMismatch)
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &NcPoly) -> Result<NcPoly> {
        self.check(other)?;
        Ok(NcPoly {
            ring: self.ring,
            trunc: self.trunc,
            terms: self.terms.symmetric_difference(&other.terms).cloned().collect(),
        })
    }

    pub fn mul(&self, other: &NcPoly) -> Result<NcPoly> {
        self.check(other)?;
        let mut out = NcPoly::zero(self.ring, self.trunc);
        for a in &self.terms {
            for b in &other.terms {
                if a.degree + b.degree > self.trunc {
                    continue;
                }
                let mut word = Vec::with_capacity(a.word.len() + b.word.len());
                word.extend_from_slice(&a.word);
                word.extend_from_slice(&b.word);
                out.toggle(Monomial { degree: a.degree + b.degree, pi: a.pi + b.pi, word })?;
            }
        }
        Ok(out)
    }

    pub fn pi_mul(&self) -> Result<NcPoly> {
        if self.ring == Ring::F2 {
            return Err(Error::PiOnF2);
        }
        let terms = self
            .terms
            .iter()
            .filter(|m| m.degree < self.trunc)
            .map(|m| Monomial { degree: m.degree + 1, pi: m.pi + 1, word: m.word.clone() })
            .collect();
        Ok(NcPoly { ring: self.ring, trunc: self.trunc, terms })
    }

    /// `uv + vu`.
    pub fn bracket(&self, other: &NcPoly) -> Result<NcPoly> {
        self.mul(other)?.add(&other.mul(self)?)
    }

    /// The common degree of all terms, `None` for the zero polynomial.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        let mut it = self.terms.iter().map(|m| m.degree);
        let Some(first) = it.next() else { return Ok(None) };
        if it.all(|d| d == first) {
            Ok(Some(first))
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    /// Canonical text: monomials in increasing order joined by ` + `, `0`
    /// for the zero polynomial.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms.iter().map(ToString::to_string).collect::<Vec<_>>().join(" + ")
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Factory for polynomials over a fixed alphabet, ring and truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAlgebra {
    alphabet: WeightedAlphabet,
    ring: Ring,
    trunc: u32,
}

impl FreeAlgebra {
    pub fn new(alphabet: WeightedAlphabet, ring: Ring, trunc: u32) -> Self {
        FreeAlgebra { alphabet, ring, trunc }
    }

    pub fn alphabet(&self) -> &WeightedAlphabet {
        &self.alphabet
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn truncation(&self) -> u32 {
        self.trunc
    }

    pub fn zero(&self) -> NcPoly {
        NcPoly::zero(self.ring, self.trunc)
    }

    pub fn one(&self) -> NcPoly {
        self.word(&[])
    }

    /// The monomial `π^pi · word`, or zero when its degree exceeds the
    /// truncation.
    pub fn monomial(&self, pi: u32, word: &[usize]) -> Result<NcPoly> {
        if word.iter().any(|&l| l >= self.alphabet.d()) {
            return Err(Error::InvalidArgument("letter outside the alphabet".into()));
        }
        let degree = pi + word.iter().map(|&l| self.alphabet.weight(l)).sum::<u32>();
        let mut p = self.zero();
        p.toggle(Monomial { degree, pi, word: word.iter().map(|&l| l as u16).collect() })?;
        Ok(p)
    }

    pub fn word(&self, word: &[usize]) -> NcPoly {
        self.monomial(0, word).expect("word over the alphabet")
    }

    pub fn generator(&self, i: usize) -> NcPoly {
        self.word(&[i])
    }

    pub fn pi(&self) -> Result<NcPoly> {
        self.monomial(1, &[])
    }
}
