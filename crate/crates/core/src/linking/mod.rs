//! Linking data of a set of odd primes, Koch presentations of `G_S(2)` modulo
//! the third term of the lower 2-central series, and elimination of a
//! generator through the product relation.

mod augment;
mod presentation;
mod relator;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{legendre_u64, OddPrime};
use crate::error::{Error, Result};

pub use augment::{
    augment, augment_from, normalize_seed, validate_augmentation, AugmentationResult,
    ValidationReport, Violation,
};
pub use presentation::{Presentation, Provenance};
pub use relator::{QuadraticRelator, TaggedRelator};

/// Distinct odd primes `p_1, …, p_n` in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<OddPrime>", into = "Vec<OddPrime>")]
pub struct OrderedPrimeSet(Vec<OddPrime>);

impl OrderedPrimeSet {
    pub fn new(primes: Vec<OddPrime>) -> Result<Self> {
        if primes.is_empty() {
            return Err(Error::InvalidArgument("prime set must be nonempty".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for p in &primes {
            if !seen.insert(*p) {
                return Err(Error::InvalidArgument(format!("prime {p} repeated")));
            }
        }
        Ok(OrderedPrimeSet(primes))
    }

    pub fn from_u64s(values: &[u64]) -> Result<Self> {
        let primes = values
            .iter()
            .map(|&v| OddPrime::new(v))
            .collect::<Result<Vec<_>>>()?;
        OrderedPrimeSet::new(primes)
    }

    pub fn primes(&self) -> &[OddPrime] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> Vec<u64> {
        self.0.iter().map(|p| p.get()).collect()
    }

    /// Reorders so that position `perm[i]` holds the current `p_i`.
    pub fn permuted(&self, perm: &[usize]) -> OrderedPrimeSet {
        let mut out = self.0.clone();
        for (i, &p) in self.0.iter().enumerate() {
            out[perm[i]] = p;
        }
        OrderedPrimeSet(out)
    }
}

impl TryFrom<Vec<OddPrime>> for OrderedPrimeSet {
    type Error = Error;

    fn try_from(v: Vec<OddPrime>) -> Result<Self> {
        OrderedPrimeSet::new(v)
    }
}

impl From<OrderedPrimeSet> for Vec<OddPrime> {
    fn from(s: OrderedPrimeSet) -> Self {
        s.0
    }
}

/// Comma-separated list, e.g. `41,13,5,3,19`.
impl FromStr for OrderedPrimeSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let primes = s
            .split(',')
            .map(str::parse::<OddPrime>)
            .collect::<Result<Vec<_>>>()?;
        OrderedPrimeSet::new(primes)
    }
}

impl fmt::Display for OrderedPrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// `a_i = 1` iff `p_i ≡ 3 (mod 4)`; `ℓ_ij = 1` iff `p_i` is a non-square
/// mod `p_j` (`i ≠ j`). The diagonal of `ell` is always 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinkingData {
    pub a: Vec<bool>,
    pub ell: Vec<Vec<bool>>,
}

impl LinkingData {
    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn to_json_value(&self, primes: &OrderedPrimeSet) -> serde_json::Value {
        let b = |v: &[bool]| v.iter().map(|&x| x as u8).collect::<Vec<_>>();
        serde_json::json!({
            "primes": primes.values(),
            "a": b(&self.a),
            "ell": self.ell.iter().map(|row| b(row)).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("a = ");
        s.extend(self.a.iter().map(|&b| if b { '1' } else { '0' }));
        s.push('\n');
        for (i, row) in self.ell.iter().enumerate() {
            s.push_str("ell ");
            for (j, &b) in row.iter().enumerate() {
                s.push(if i == j { '-' } else if b { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }
}

pub fn linking_data(s: &OrderedPrimeSet) -> LinkingData {
    let p = s.primes();
    let a = p.iter().map(|q| q.class_mod_4() == 3).collect();
    let ell = p
        .iter()
        .enumerate()
        .map(|(i, pi)| {
            p.iter()
                .enumerate()
                .map(|(j, &pj)| i != j && legendre_u64(pi.get(), pj) == -1)
                .collect()
        })
        .collect();
    LinkingData { a, ell }
}

/// One relator per prime, `r_i ≡ x_i^{2a_i} Π_j [x_i, x_j]^{ℓ_ij} mod F_3`,
/// and the product relation `r ≡ Π x_i^{a_i} mod F_2`.
pub fn koch_presentation(s: &OrderedPrimeSet) -> Presentation {
    let link = linking_data(s);
    let d = s.len();
    let relators = (0..d)
        .map(|i| TaggedRelator {
            owner: Some(i),
            relator: QuadraticRelator::koch(d, i, link.a[i], &link.ell[i]),
        })
        .collect();
    Presentation {
        d,
        relators,
        product_relation: Some(link.a.clone()),
        provenance: Provenance {
            primes: s.values(),
            linking: Some(link),
            eliminated: Vec::new(),
            labels: (1..=d).collect(),
        },
    }
}

/// Removes generator `t` (default: the last index with `a_t = 1`) and its
/// relator, substituting `x_t ≡ Π_{j≠t} x_j^{c_j} mod F_2` from the product
/// relation into the remaining relators.
///
/// Modulo `F_3` this is bilinear in commutators:
/// `[x_i, x_t] ↦ Σ_j c_j [x_i, x_j]` and, should some relator carry
/// `x_t²`, `x_t² ↦ Σ_j c_j x_j² + Σ_{j<k} c_j c_k [x_j, x_k]`.
pub fn eliminate_generator(p: &Presentation, t: Option<usize>) -> Result<Presentation> {
    p.validate()?;
    let c = p
        .product_relation
        .as_ref()
        .ok_or_else(|| Error::NoEliminableGenerator("no product relation".into()))?;
    let t = match t {
        Some(t) if t >= p.d => {
            return Err(Error::NoEliminableGenerator(format!(
                "generator {} does not exist",
                t + 1
            )))
        }
        Some(t) if !c[t] => {
            return Err(Error::NoEliminableGenerator(format!(
                "x{} does not occur in the product relation",
                t + 1
            )))
        }
        Some(t) => t,
        None => c
            .iter()
            .rposition(|&b| b)
            .ok_or_else(|| Error::NoEliminableGenerator("product relation is zero".into()))?,
    };
    let d = p.d;
    let support: Vec<usize> = (0..d).filter(|&j| j != t && c[j]).collect();
    let new_index = |i: usize| if i < t { i } else { i - 1 };

    let drop_pos = p
        .relators
        .iter()
        .position(|r| r.owner == Some(t))
        .or_else(|| {
            let untagged = p.relators.iter().all(|r| r.owner.is_none());
            (untagged && p.relators.len() == d).then_some(t)
        });

    let mut relators = Vec::with_capacity(p.relators.len());
    for (k, tagged) in p.relators.iter().enumerate() {
        if Some(k) == drop_pos {
            continue;
        }
        let old = &tagged.relator;
        let mut new = QuadraticRelator::zero(d - 1);
        for i in old.square_indices() {
            if i != t {
                new.toggle_square(new_index(i));
            } else {
                for (a, &j) in support.iter().enumerate() {
                    new.toggle_square(new_index(j));
                    for &k2 in &support[a + 1..] {
                        new.toggle_comm(new_index(j), new_index(k2));
                    }
                }
            }
        }
        for (i, j) in old.comm_pairs() {
            if i != t && j != t {
                new.toggle_comm(new_index(i), new_index(j));
            } else {
                let other = if i == t { j } else { i };
                for &s in &support {
                    new.toggle_comm(new_index(other), new_index(s));
                }
            }
        }
        relators.push(TaggedRelator {
            owner: tagged.owner.map(new_index),
            relator: new,
        });
    }

    let mut provenance = p.provenance.clone();
    provenance.eliminated.push(provenance.labels.remove(t));
    Ok(Presentation {
        d: d - 1,
        relators,
        product_relation: None,
        provenance,
    })
}
