//! Sufficient criteria for a sequence of degree-2 relators to be strongly
//! free, and the end-to-end check on a presentation.
//!
//! For a partition of the generators into `S` and `S′`, the relators pass
//! the rank criterion when none of them involves `ξ_i²` or `[ξ_i, ξ_j]` with
//! `i, j ∈ S`, and their coefficients on `{[ξ_i, ξ_j] : i ∈ S, j ∈ S′}` are
//! linearly independent. The circuit criterion is a closed-form special case
//! for Koch-shaped relators on an even number of generators.

use rayon::prelude::*;
use serde_json::Value;

use crate::error::Result;
use crate::gf2::rank_of_rows;
use crate::linking::{eliminate_generator, Presentation, QuadraticRelator};
use crate::oracle::{strongly_free_oracle, OracleOutcome, DEFAULT_MEMORY_CAP_MIB};
use crate::quadlie::Ring;

/// Split of `0..d` into `s` and its complement `sp`, both sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub s: Vec<usize>,
    pub sp: Vec<usize>,
}

impl Partition {
    pub fn from_sp(d: usize, sp: &[usize]) -> Partition {
        let mut sp = sp.to_vec();
        sp.sort_unstable();
        sp.dedup();
        assert!(sp.iter().all(|&i| i < d), "partition index out of range");
        let s = (0..d).filter(|i| sp.binary_search(i).is_err()).collect();
        Partition { s, sp }
    }

    /// `S′` = generators with even 1-based label.
    pub fn parity(d: usize) -> Partition {
        let sp: Vec<usize> = (1..d).step_by(2).collect();
        Partition::from_sp(d, &sp)
    }

    pub fn d(&self) -> usize {
        self.s.len() + self.sp.len()
    }

    pub fn to_json_value(&self) -> Value {
        let one = |v: &[usize]| v.iter().map(|i| i + 1).collect::<Vec<_>>();
        serde_json::json!({ "S": one(&self.s), "Sp": one(&self.sp) })
    }
}

/// The rank criterion for one partition.
pub fn rank_criterion(relators: &[QuadraticRelator], part: &Partition) -> bool {
    let d = part.d();
    if relators.iter().any(|r| r.d() != d) {
        return false;
    }
    let mut side = vec![false; d];
    let mut pos = vec![0usize; d];
    for (k, &i) in part.s.iter().enumerate() {
        pos[i] = k;
    }
    for (k, &j) in part.sp.iter().enumerate() {
        side[j] = true;
        pos[j] = k;
    }
    let width = part.sp.len();
    let ncols = part.s.len() * width;
    if relators.len() > ncols {
        return false;
    }
    let mut rows = Vec::with_capacity(relators.len());
    for r in relators {
        if r.square_indices().any(|i| !side[i]) {
            return false;
        }
        let mut row = Vec::new();
        for (i, j) in r.comm_pairs() {
            match (side[i], side[j]) {
                (false, false) => return false,
                (false, true) => row.push(pos[i] * width + pos[j]),
                (true, false) => row.push(pos[j] * width + pos[i]),
                (true, true) => {}
            }
        }
        rows.push(row);
    }
    rank_of_rows(ncols, rows) == relators.len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircuitVerdict {
    True,
    False,
    Inapplicable,
}

/// The circuit criterion on relators listed so that relator `i` is owned by
/// generator `i`.
pub fn circuit_criterion(relators: &[QuadraticRelator]) -> CircuitVerdict {
    let d = relators.len();
    if d < 4 || !d.is_multiple_of(2) {
        return CircuitVerdict::Inapplicable;
    }
    if relators.iter().enumerate().any(|(i, r)| r.d() != d || !r.has_koch_shape(i)) {
        return CircuitVerdict::Inapplicable;
    }
    let a = |i: usize| relators[i].square(i);
    let ell = |i: usize, j: usize| relators[i].comm(i, j);
    // 0-based even indices are the odd 1-based labels
    let odd: Vec<usize> = (0..d).step_by(2).collect();
    let squares_ok = odd.iter().all(|&i| !a(i));
    let odd_block_ok = odd.iter().all(|&i| odd.iter().all(|&j| !ell(i, j)));
    let cycle_ok = (0..d).all(|i| ell(i, (i + 1) % d));
    let reverse_product = (0..d).all(|i| ell((i + 1) % d, i));
    if squares_ok && odd_block_ok && cycle_ok && !reverse_product {
        CircuitVerdict::True
    } else {
        CircuitVerdict::False
    }
}

/// Subsets of `0..d` of size `k` in lexicographic order.
fn combinations(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > d {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < d - k + i) else { break };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

/// Largest generator count for which all `2^d` partitions are searched.
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// First partition passing the rank criterion: the parity split, then every
/// `S′` by increasing size and lexicographically within a size. Beyond
/// [`EXHAUSTIVE_LIMIT`] generators only the parity split is tried.
pub fn find_mild_partition(relators: &[QuadraticRelator]) -> Option<Partition> {
    let d = relators.first().map_or(0, QuadraticRelator::d);
    let m = relators.len();
    let parity = Partition::parity(d);
    if rank_criterion(relators, &parity) {
        return Some(parity);
    }
    if d > EXHAUSTIVE_LIMIT {
        return None;
    }
    for k in 0..=d {
        if k * (d - k) < m {
            continue;
        }
        let found = combinations(d, k)
            .into_par_iter()
            .map(|sp| Partition::from_sp(d, &sp))
            .find_first(|p| rank_criterion(relators, p));
        if found.is_some() {
            return found;
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Mild,
    NotShown,
    Inapplicable,
}

impl Verdict {
    pub fn tag(self) -> &'static str {
        match self {
            Verdict::Mild => "mild",
            Verdict::NotShown => "not_shown",
            Verdict::Inapplicable => "inapplicable",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Criterion {
    Circuit,
    Rank,
    None,
}

impl Criterion {
    pub fn tag(self) -> &'static str {
        match self {
            Criterion::Circuit => "circuit",
            Criterion::Rank => "rank",
            Criterion::None => "none",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub oracle_depth: Option<usize>,
    pub oracle_ring: Ring,
    pub memory_cap_mib: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            oracle_depth: None,
            oracle_ring: Ring::F2,
            memory_cap_mib: DEFAULT_MEMORY_CAP_MIB,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MildnessReport {
    pub verdict: Verdict,
    pub criterion: Criterion,
    pub witness: Option<Partition>,
    pub oracle_depth: Option<usize>,
    pub oracle: Option<OracleOutcome>,
    pub notes: Vec<String>,
    /// The presentation the criteria were applied to.
    pub reduced: Presentation,
}

impl MildnessReport {
    pub fn to_json_value(&self) -> Value {
        serde_json::json!({
            "verdict": self.verdict.tag(),
            "criterion": self.criterion.tag(),
            "witness": self.witness.as_ref().map(Partition::to_json_value),
            "oracle_depth": self.oracle_depth,
            "oracle": self.oracle.as_ref().map(OracleOutcome::to_json_value),
            "notes": self.notes,
            "relators": self.reduced.relators.iter().map(|r| r.render()).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("verdict: {}\ncriterion: {}\n", self.verdict.tag(), self.criterion.tag());
        if let Some(w) = &self.witness {
            let one = |v: &[usize]| v.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
            out.push_str(&format!("witness: S={{{}}} Sp={{{}}}\n", one(&w.s), one(&w.sp)));
        }
        if let Some(o) = &self.oracle {
            let status = match &o.agreement {
                crate::oracle::Agreement::Match => "match".to_string(),
                crate::oracle::Agreement::Mismatch { degree, oracle, formula } => {
                    format!("mismatch at degree {degree} (oracle {oracle}, formula {formula})")
                }
            };
            out.push_str(&format!("oracle ({} through degree {}): {status}\n", o.profile.ring.name(), o.depth));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out.push_str(&self.reduced.to_text());
        out
    }
}

/// Reduces the presentation by its product relation when that relation is
/// nontrivial, then applies the circuit and rank criteria in turn.
pub fn check_mild(p: &Presentation, options: &CheckOptions) -> Result<MildnessReport> {
    let mut notes = Vec::new();
    let reduced = match &p.product_relation {
        Some(pr) if pr.iter().any(|&b| b) => {
            let q = eliminate_generator(p, None)?;
            let gone = q.provenance.eliminated.last().copied().unwrap_or(0);
            notes.push(format!("eliminated x{gone} using the product relation"));
            q
        }
        Some(_) => {
            notes.push("product relation is trivial mod squares and commutators; nothing eliminated".into());
            p.clone()
        }
        None => p.clone(),
    };
    let mut report = MildnessReport {
        verdict: Verdict::NotShown,
        criterion: Criterion::None,
        witness: None,
        oracle_depth: options.oracle_depth,
        oracle: None,
        notes,
        reduced,
    };
    let relators = report.reduced.quadratic_relators();
    let zero: Vec<String> = report
        .reduced
        .relators
        .iter()
        .enumerate()
        .filter(|(_, r)| r.relator.is_zero())
        .map(|(k, r)| format!("r_{}", r.owner.unwrap_or(k) + 1))
        .collect();
    if !zero.is_empty() {
        report.verdict = Verdict::Inapplicable;
        report.notes.push(format!(
            "{} {} in degree 2, so the initial forms are not quadratic",
            zero.join(", "),
            if zero.len() == 1 { "vanishes" } else { "vanish" }
        ));
        return Ok(report);
    }
    let by_owner = report.reduced.relators_by_owner();
    let circuit = by_owner.as_deref().map_or(CircuitVerdict::Inapplicable, circuit_criterion);
    let parity = Partition::parity(report.reduced.d);
    if circuit == CircuitVerdict::True && rank_criterion(&relators, &parity) {
        report.verdict = Verdict::Mild;
        report.criterion = Criterion::Circuit;
        report.witness = Some(parity);
    } else if let Some(part) = find_mild_partition(&relators) {
        report.verdict = Verdict::Mild;
        report.criterion = Criterion::Rank;
        report.witness = Some(part);
    } else {
        report.notes.push("no partition satisfies the rank criterion".into());
    }
    if let Some(depth) = options.oracle_depth {
        let outcome = strongly_free_oracle(
            report.reduced.d,
            &relators,
            depth,
            options.oracle_ring,
            options.memory_cap_mib,
        )?;
        if report.verdict == Verdict::Mild && !outcome.matches() {
            report.notes.push("oracle disagrees with a mild verdict".into());
        }
        report.oracle = Some(outcome);
    }
    Ok(report)
}
