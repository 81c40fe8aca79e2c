//! Brute-force dimensions of `A / (ρ_1, …, ρ_m)` degree by degree, where `A`
//! is the free associative algebra over `F₂` or `F₂[π]`.
//!
//! Each degree-`n` slice of the two-sided ideal is spanned directly by the
//! products `π^j · u · ρ · v` of the right total degree and its rank is
//! computed by dense elimination over `F₂`. Nothing clever happens here on
//! purpose: the numbers serve as an independent check on the series
//! formulas.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::gf2::{rank_of_rows, BitMatrix};
use crate::linking::QuadraticRelator;
use crate::quadlie::{relator_to_poly, FreeAlgebra, Monomial, NcPoly, Ring, WeightedAlphabet};
use crate::series::{bigint_json, gamma_series, strongly_free_series, DimensionKind, DimensionSequence, WeightSignature};

pub const DEFAULT_MEMORY_CAP_MIB: u64 = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degree: usize,
    pub ambient: u64,
    pub rank: u64,
    pub quotient: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankProfile {
    pub ring: Ring,
    pub degrees: Vec<DegreeProfile>,
}

impl RankProfile {
    pub fn quotient_dims(&self) -> DimensionSequence {
        DimensionSequence {
            kind: DimensionKind::QuotientDims,
            start: 0,
            values: self.degrees.iter().map(|p| BigInt::from(p.quotient)).collect(),
        }
    }

    pub fn to_json_value(&self) -> Value {
        let rows: Vec<Value> = self
            .degrees
            .iter()
            .map(|p| {
                serde_json::json!({
                    "degree": p.degree,
                    "ambient": p.ambient,
                    "rank": p.rank,
                    "quotient": p.quotient,
                })
            })
            .collect();
        serde_json::json!({ "ring": self.ring.name(), "degrees": rows })
    }

    pub fn to_table(&self) -> String {
        let mut out = format!("ring {}\n{:>6} {:>10} {:>10} {:>10}\n", self.ring.name(), "degree", "ambient", "rank", "quotient");
        for p in &self.degrees {
            out.push_str(&format!("{:>6} {:>10} {:>10} {:>10}\n", p.degree, p.ambient, p.rank, p.quotient));
        }
        out
    }
}

/// Lexicographic ranking of monomials of one total degree.
struct ColumnIndex {
    weights: Vec<usize>,
    counts: Vec<u64>,
    // before[r][c]: number of words of degree r starting with a letter < c
    before: Vec<Vec<u64>>,
    // pi_offset[j]: first column of monomials with π-exponent j
    pi_offset: Vec<u64>,
    ncols: u64,
}

impl ColumnIndex {
    fn new(alphabet: &WeightedAlphabet, n: usize, ring: Ring) -> Self {
        let weights: Vec<usize> = alphabet.weights().iter().map(|&w| w as usize).collect();
        let counts = alphabet.word_counts(n);
        let before = (0..=n)
            .map(|r| {
                let mut acc = 0u64;
                let mut row = Vec::with_capacity(weights.len());
                for &w in &weights {
                    row.push(acc);
                    if w <= r {
                        acc = acc.saturating_add(counts[r - w]);
                    }
                }
                row
            })
            .collect();
        let max_pi = if ring == Ring::F2Pi { n } else { 0 };
        let mut pi_offset = Vec::with_capacity(max_pi + 1);
        let mut acc = 0u64;
        for j in 0..=max_pi {
            pi_offset.push(acc);
            acc = acc.saturating_add(counts[n - j]);
        }
        ColumnIndex { weights, counts, before, pi_offset, ncols: acc }
    }

    fn word_rank(&self, word: &[u16], degree: usize) -> u64 {
        let mut r = degree;
        let mut idx = 0u64;
        for &c in word {
            idx += self.before[r][c as usize];
            r -= self.weights[c as usize];
        }
        idx
    }

    fn column(&self, pi: usize, word: &[u16], degree: usize) -> usize {
        (self.pi_offset[pi] + self.word_rank(word, degree - pi)) as usize
    }
}

/// All words of each degree `0..=n`, in lexicographic order.
fn words_by_degree(alphabet: &WeightedAlphabet, n: usize) -> Vec<Vec<Vec<u16>>> {
    let mut out: Vec<Vec<Vec<u16>>> = vec![Vec::new(); n + 1];
    out[0].push(Vec::new());
    for k in 1..=n {
        let mut layer = Vec::new();
        for (c, &w) in alphabet.weights().iter().enumerate() {
            let w = w as usize;
            if w > k {
                continue;
            }
            for tail in &out[k - w] {
                let mut word = Vec::with_capacity(tail.len() + 1);
                word.push(c as u16);
                word.extend_from_slice(tail);
                layer.push(word);
            }
        }
        out[k] = layer;
    }
    out
}

fn relator_terms(relators: &[NcPoly], ring: Ring) -> Result<Vec<(usize, Vec<Monomial>)>> {
    let mut out = Vec::with_capacity(relators.len());
    for r in relators {
        if r.ring() != ring {
            return Err(Error::RingMismatch);
        }
        match r.homogeneous_degree()? {
            None => {}
            Some(h) if h < 2 => {
                return Err(Error::InvalidArgument("relators must have degree at least 2".into()))
            }
            Some(h) => out.push((h as usize, r.terms().cloned().collect())),
        }
    }
    Ok(out)
}

/// Per-degree dimensions of the quotient of the free algebra on `alphabet`
/// by the two-sided ideal generated by `relators`, for degrees `0..=n`.
///
/// Fails with [`Error::MemoryGuard`] before allocating a matrix larger than
/// `cap_mib` MiB.
pub fn quotient_dims(
    alphabet: &WeightedAlphabet,
    relators: &[NcPoly],
    n: usize,
    ring: Ring,
    cap_mib: u64,
) -> Result<RankProfile> {
    let rels = relator_terms(relators, ring)?;
    let words = words_by_degree(alphabet, n);
    let mut degrees = Vec::with_capacity(n + 1);
    for deg in 0..=n {
        let index = ColumnIndex::new(alphabet, deg, ring);
        let max_pi = if ring == Ring::F2Pi { deg } else { 0 };
        let mut nrows: u64 = 0;
        for (h, _) in &rels {
            for j in 0..=max_pi {
                if h + j > deg {
                    break;
                }
                let rest = deg - h - j;
                nrows += (0..=rest).map(|a| index.counts[a] * index.counts[rest - a]).sum::<u64>();
            }
        }
        let bytes = BitMatrix::bytes_for(index.ncols as usize, nrows as usize);
        if bytes > cap_mib.saturating_mul(1 << 20) {
            return Err(Error::MemoryGuard {
                degree: deg,
                reached: deg.saturating_sub(1),
                required_mib: bytes.div_ceil(1 << 20),
                cap_mib,
            });
        }
        let mut m = BitMatrix::with_capacity(index.ncols as usize, nrows as usize);
        let mut cols = Vec::new();
        for (h, terms) in &rels {
            for j in 0..=max_pi {
                if h + j > deg {
                    break;
                }
                let rest = deg - h - j;
                for a in 0..=rest {
                    for u in &words[a] {
                        for v in &words[rest - a] {
                            cols.clear();
                            for t in terms {
                                let mut w = Vec::with_capacity(u.len() + t.word.len() + v.len());
                                w.extend_from_slice(u);
                                w.extend_from_slice(&t.word);
                                w.extend_from_slice(v);
                                cols.push(index.column(j + t.pi as usize, &w, deg));
                            }
                            m.push_toggled(cols.iter().copied());
                        }
                    }
                }
            }
        }
        let rank = m.rank() as u64;
        degrees.push(DegreeProfile {
            degree: deg,
            ambient: index.ncols,
            rank,
            quotient: index.ncols - rank,
        });
    }
    Ok(RankProfile { ring, degrees })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Agreement {
    Match,
    Mismatch { degree: usize, oracle: u64, formula: BigInt },
}

/// Brute-force dimensions compared against the strongly free series (over
/// `F₂`) or its prefix sums (over `F₂[π]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOutcome {
    pub depth: usize,
    pub agreement: Agreement,
    pub profile: RankProfile,
    pub expected: Vec<BigInt>,
}

impl OracleOutcome {
    pub fn matches(&self) -> bool {
        self.agreement == Agreement::Match
    }

    pub fn to_json_value(&self) -> Value {
        let mut v = match &self.agreement {
            Agreement::Match => serde_json::json!({ "status": "match" }),
            Agreement::Mismatch { degree, oracle, formula } => serde_json::json!({
                "status": "mismatch",
                "degree": degree,
                "oracle": oracle,
                "formula": bigint_json(formula),
            }),
        };
        v["ring"] = Value::from(self.profile.ring.name());
        v["depth"] = Value::from(self.depth);
        v["quotient_dims"] = Value::Array(self.profile.degrees.iter().map(|p| Value::from(p.quotient)).collect());
        v["expected"] = Value::Array(self.expected.iter().map(bigint_json).collect());
        v
    }
}

/// Runs [`quotient_dims`] on the polynomial images of `relators` over `d`
/// weight-1 generators and compares the result with the series a strongly
/// free sequence of the same shape must have.
pub fn strongly_free_oracle(
    d: usize,
    relators: &[QuadraticRelator],
    depth: usize,
    ring: Ring,
    cap_mib: u64,
) -> Result<OracleOutcome> {
    if depth < 2 {
        return Err(Error::InvalidArgument("oracle depth must be at least 2".into()));
    }
    let sig = WeightSignature::quadratic(d, relators.len())?;
    let alphabet = WeightedAlphabet::uniform(d);
    let algebra = FreeAlgebra::new(alphabet.clone(), ring, depth as u32);
    let polys = relators
        .iter()
        .map(|r| relator_to_poly(r, &algebra))
        .collect::<Result<Vec<_>>>()?;
    let profile = quotient_dims(&alphabet, &polys, depth, ring, cap_mib)?;
    let expected = match ring {
        Ring::F2 => strongly_free_series(&sig, depth),
        Ring::F2Pi => gamma_series(&sig, depth),
    };
    let agreement = profile
        .degrees
        .iter()
        .zip(&expected)
        .find(|(p, e)| BigInt::from(p.quotient) != **e)
        .map_or(Agreement::Match, |(p, e)| Agreement::Mismatch {
            degree: p.degree,
            oracle: p.quotient,
            formula: e.clone(),
        });
    Ok(OracleOutcome { depth, agreement, profile, expected })
}

/// Rank over `F₂` of homogeneous polynomials of one common degree.
pub fn independent_in_degree(polys: &[NcPoly]) -> Result<usize> {
    let mut degree: Option<u32> = None;
    let ring = polys.first().map(NcPoly::ring);
    for p in polys {
        if Some(p.ring()) != ring {
            return Err(Error::RingMismatch);
        }
        if let Some(h) = p.homogeneous_degree()? {
            match degree {
                None => degree = Some(h),
                Some(expected) if expected != h => {
                    return Err(Error::WrongDegree { expected, found: h })
                }
                _ => {}
            }
        }
    }
    let mut columns: BTreeMap<&Monomial, usize> = BTreeMap::new();
    for p in polys {
        for t in p.terms() {
            let next = columns.len();
            columns.entry(t).or_insert(next);
        }
    }
    let rows = polys.iter().map(|p| p.terms().map(|t| columns[t]).collect::<Vec<_>>());
    Ok(rank_of_rows(columns.len(), rows))
}
