use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::relator::{QuadraticRelator, TaggedRelator};
use super::LinkingData;
use crate::error::{Error, Result};

/// Where a presentation came from.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Provenance {
    pub primes: Vec<u64>,
    pub linking: Option<LinkingData>,
    /// Original 1-based labels of eliminated generators, in elimination order.
    pub eliminated: Vec<usize>,
    /// Original 1-based label of each current generator.
    pub labels: Vec<usize>,
}

/// Generators `x_1..x_d`, degree-2 relators, and optionally the product
/// relation `r ≡ Π x_i^{a_i} mod F_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub d: usize,
    pub relators: Vec<TaggedRelator>,
    pub product_relation: Option<Vec<bool>>,
    pub provenance: Provenance,
}

impl Presentation {
    /// Presentation on `d` generators with untagged relators and no product
    /// relation.
    pub fn from_relators(d: usize, relators: Vec<QuadraticRelator>) -> Result<Self> {
        let p = Presentation {
            d,
            relators: relators
                .into_iter()
                .map(|relator| TaggedRelator { owner: None, relator })
                .collect(),
            product_relation: None,
            provenance: Provenance {
                labels: (1..=d).collect(),
                ..Provenance::default()
            },
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let mut owners = std::collections::BTreeSet::new();
        for (k, r) in self.relators.iter().enumerate() {
            if r.relator.d() != self.d {
                return Err(Error::InvalidArgument(format!(
                    "relator {} has {} generators, presentation has {}",
                    k + 1,
                    r.relator.d(),
                    self.d
                )));
            }
            if let Some(o) = r.owner {
                if o >= self.d || !owners.insert(o) {
                    return Err(Error::InvalidArgument(format!(
                        "relator {} has invalid or repeated owner {}",
                        k + 1,
                        o + 1
                    )));
                }
            }
        }
        if let Some(pr) = &self.product_relation {
            if pr.len() != self.d {
                return Err(Error::InvalidArgument(format!(
                    "product relation has length {}, expected {}",
                    pr.len(),
                    self.d
                )));
            }
        }
        if self.provenance.labels.len() != self.d {
            return Err(Error::InvalidArgument("provenance labels do not match d".into()));
        }
        Ok(())
    }

    /// The bare relators, in presentation order.
    pub fn quadratic_relators(&self) -> Vec<QuadraticRelator> {
        self.relators.iter().map(|t| t.relator.clone()).collect()
    }

    /// Relators reordered so that the relator owned by generator `i` sits at
    /// position `i`, when every generator owns exactly one relator.
    pub fn relators_by_owner(&self) -> Option<Vec<QuadraticRelator>> {
        if self.relators.len() != self.d {
            return None;
        }
        let mut slots: Vec<Option<QuadraticRelator>> = vec![None; self.d];
        for t in &self.relators {
            let o = t.owner?;
            slots[o] = Some(t.relator.clone());
        }
        slots.into_iter().collect()
    }

    pub fn render_product_relation(&self) -> Option<String> {
        self.product_relation.as_ref().map(|a| {
            let s: String = a
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| format!("x{}", i + 1))
                .collect();
            if s.is_empty() {
                "1".to_string()
            } else {
                s
            }
        })
    }

    /// Canonical text, one relator per line. Relators are labelled by owner
    /// (or position) with one prime per elimination performed.
    pub fn to_text(&self) -> String {
        let primes = "'".repeat(self.provenance.eliminated.len());
        let mut out = String::new();
        for (k, r) in self.relators.iter().enumerate() {
            let label = r.owner.unwrap_or(k) + 1;
            let _ = writeln!(out, "r_{label}{primes} = {}", r.render());
        }
        if let Some(pr) = self.render_product_relation() {
            let _ = writeln!(out, "r = {pr}");
        }
        out
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let dto = PresentationJson {
            d: Some(self.d),
            primes: self.provenance.primes.clone(),
            a: self.provenance.linking.as_ref().map(|l| bits(&l.a)),
            ell: self
                .provenance
                .linking
                .as_ref()
                .map(|l| l.ell.iter().map(|row| bits(row)).collect()),
            relators: self.relators.iter().map(RelatorJson::from_tagged).collect(),
            product_relation: self.product_relation.as_ref().map(|p| bits(p)),
            eliminated: self.provenance.eliminated.clone(),
            labels: Some(self.provenance.labels.clone()),
        };
        serde_json::to_value(dto).expect("presentation serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("presentation serializes")
    }

    /// Parses the presentation JSON format. Unknown fields are ignored;
    /// `d` defaults to the product-relation length, then to the number of
    /// primes minus eliminations.
    pub fn from_json(text: &str) -> Result<Presentation> {
        let dto: PresentationJson = serde_json::from_str(text)?;
        dto.into_presentation()
    }
}

fn bits(v: &[bool]) -> Vec<u8> {
    v.iter().map(|&b| b as u8).collect()
}

fn unbits(v: &[u8], what: &str) -> Result<Vec<bool>> {
    v.iter()
        .map(|&b| match b {
            0 => Ok(false),
            1 => Ok(true),
            _ => Err(Error::Parse(format!("{what} entries must be 0 or 1, got {b}"))),
        })
        .collect()
}

#[derive(Debug, Serialize, Deserialize)]
struct RelatorJson {
    #[serde(default)]
    owner: Option<usize>,
    #[serde(default)]
    square: u8,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    squares: Vec<usize>,
    #[serde(default)]
    comms: Vec<[usize; 2]>,
}

impl RelatorJson {
    fn from_tagged(t: &TaggedRelator) -> RelatorJson {
        let r = &t.relator;
        let owner = t.owner;
        let square = owner.is_some_and(|o| r.square(o)) as u8;
        let squares = r
            .square_indices()
            .filter(|&i| Some(i) != owner)
            .map(|i| i + 1)
            .collect();
        let mut comms = Vec::new();
        if let Some(o) = owner {
            comms.extend((0..r.d()).filter(|&j| r.comm(o, j)).map(|j| [o + 1, j + 1]));
        }
        comms.extend(
            r.comm_pairs()
                .filter(|&(i, j)| Some(i) != owner && Some(j) != owner)
                .map(|(i, j)| [i + 1, j + 1]),
        );
        RelatorJson {
            owner: owner.map(|o| o + 1),
            square,
            squares,
            comms,
        }
    }

    fn into_tagged(self, d: usize) -> Result<TaggedRelator> {
        let check = |k: usize| -> Result<usize> {
            if k == 0 || k > d {
                Err(Error::Parse(format!("generator index {k} outside 1..={d}")))
            } else {
                Ok(k - 1)
            }
        };
        let owner = self.owner.map(check).transpose()?;
        let mut r = QuadraticRelator::zero(d);
        match (self.square, owner) {
            (0, _) => {}
            (1, Some(o)) => r.toggle_square(o),
            (1, None) => return Err(Error::Parse("\"square\": 1 requires an owner".into())),
            (s, _) => return Err(Error::Parse(format!("\"square\" must be 0 or 1, got {s}"))),
        }
        for k in self.squares {
            r.toggle_square(check(k)?);
        }
        for [i, j] in self.comms {
            r.toggle_comm(check(i)?, check(j)?);
        }
        Ok(TaggedRelator { owner, relator: r })
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct PresentationJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<usize>,
    #[serde(default)]
    primes: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ell: Option<Vec<Vec<u8>>>,
    relators: Vec<RelatorJson>,
    #[serde(default)]
    product_relation: Option<Vec<u8>>,
    #[serde(default)]
    eliminated: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<usize>>,
}

// Presentations beyond this size are far outside anything the criteria or
// the oracle can handle; rejecting them keeps hostile input from allocating.
const MAX_GENERATORS: usize = 4096;

impl PresentationJson {
    fn into_presentation(self) -> Result<Presentation> {
        let d = match (self.d, &self.product_relation) {
            (Some(d), _) => d,
            (None, Some(p)) => p.len(),
            (None, None) => self
                .primes
                .len()
                .checked_sub(self.eliminated.len())
                .ok_or_else(|| Error::Parse("cannot infer generator count".into()))?,
        };
        if d > MAX_GENERATORS {
            return Err(Error::Parse(format!("too many generators: {d}")));
        }
        let linking = match (self.a, self.ell) {
            (Some(a), Some(ell)) => {
                let n = a.len();
                if ell.len() != n || ell.iter().any(|row| row.len() != n) {
                    return Err(Error::Parse("\"ell\" must be square and match \"a\"".into()));
                }
                Some(LinkingData {
                    a: unbits(&a, "a")?,
                    ell: ell.iter().map(|row| unbits(row, "ell")).collect::<Result<_>>()?,
                })
            }
            (None, None) => None,
            _ => return Err(Error::Parse("\"a\" and \"ell\" must appear together".into())),
        };
        let relators = self
            .relators
            .into_iter()
            .map(|r| r.into_tagged(d))
            .collect::<Result<Vec<_>>>()?;
        let product_relation = self
            .product_relation
            .map(|p| unbits(&p, "product_relation"))
            .transpose()?;
        let labels = self.labels.unwrap_or_else(|| {
            let gone: std::collections::BTreeSet<usize> = self.eliminated.iter().copied().collect();
            (1..).filter(|k| !gone.contains(k)).take(d).collect()
        });
        let p = Presentation {
            d,
            relators,
            product_relation,
            provenance: Provenance {
                primes: self.primes,
                linking,
                eliminated: self.eliminated,
                labels,
            },
        };
        p.validate()?;
        Ok(p)
    }
}
