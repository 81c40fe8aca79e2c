//! Enlarging a seed set of odd primes to a set `S` whose Koch presentation
//! passes the mildness criteria.
//!
//! With the seed normalized to `q_1, …, q_m` (classes 1 mod 4 first, then
//! 3 mod 4), auxiliary primes `q_1', …, q_m' ≡ 1 (mod 4)` and a final prime
//! `q_{m+1} ≡ 3 (mod 4)` are chosen so that
//!
//! * `q_i'` is a square mod `q_j'` for `i ≠ j`,
//! * `q_1'` is a non-square mod `q_m`, and for `i > 1`, `q_i'` is a
//!   non-square mod both `q_i` and `q_{i-1}`,
//! * `q_{m+1}` is a non-square mod `q_1'` and a square mod every other `q_i'`.
//!
//! `S` is then `(q_1', q_1, q_2', q_2, …, q_m', q_m, q_{m+1})`.

use std::collections::{BTreeSet, HashSet};

use crate::arith::{legendre_u64, next_prime_in_class, OddPrime};
use crate::error::{Error, Result};
use crate::mildness::{check_mild, CheckOptions, MildnessReport, Verdict};

use super::{koch_presentation, OrderedPrimeSet};

/// Orders a seed set as all primes `≡ 1 (mod 4)` ascending, then all primes
/// `≡ 3 (mod 4)` ascending. A missing class is filled with its smallest prime
/// not already present (5, respectively 3), so the result always has a
/// class-1 prime first and a class-3 prime last.
pub fn normalize_seed(seed: &[OddPrime]) -> Result<OrderedPrimeSet> {
    if seed.is_empty() {
        return Err(Error::InvalidArgument("seed set must be nonempty".into()));
    }
    let set: BTreeSet<OddPrime> = seed.iter().copied().collect();
    let mut ones: Vec<OddPrime> = set.iter().copied().filter(|p| p.class_mod_4() == 1).collect();
    let mut threes: Vec<OddPrime> = set.iter().copied().filter(|p| p.class_mod_4() == 3).collect();
    let taken: BTreeSet<u64> = set.iter().map(|p| p.get()).collect();
    if ones.is_empty() {
        ones.push(next_prime_in_class(5, 1, 4, &taken, u64::MAX)?);
    }
    if threes.is_empty() {
        threes.push(next_prime_in_class(3, 3, 4, &taken, u64::MAX)?);
    }
    ones.extend(threes);
    OrderedPrimeSet::new(ones)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation(pub String);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn sym(a: OddPrime, p: OddPrime) -> i8 {
    legendre_u64(a.get(), p)
}

fn fmt_sym(v: i8) -> &'static str {
    match v {
        1 => "+1",
        -1 => "-1",
        _ => "0",
    }
}

/// Violations of `q` as the auxiliary prime `q_{i+1}'` given the earlier
/// choices `chosen = (q_1', …, q_i')`.
fn aux_violations(seed: &[OddPrime], chosen: &[OddPrime], q: OddPrime) -> Vec<Violation> {
    let i = chosen.len();
    let m = seed.len();
    let name = format!("q_{}'={}", i + 1, q);
    let mut v = Vec::new();
    if q.class_mod_4() != 1 {
        v.push(Violation(format!("{name} is not 1 mod 4")));
    }
    if seed.contains(&q) {
        v.push(Violation(format!("{name} lies in the seed set")));
    }
    if chosen.contains(&q) {
        v.push(Violation(format!("{name} repeats an earlier auxiliary prime")));
    }
    for (j, &prev) in chosen.iter().enumerate() {
        for (a, b) in [(q, prev), (prev, q)] {
            let s = sym(a, b);
            if s != 1 && a != b {
                v.push(Violation(format!(
                    "legendre({a},{b})={} violates \"q_{}' and q_{}' are mutual squares\"",
                    fmt_sym(s),
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let targets: Vec<usize> = if i == 0 { vec![m - 1] } else { vec![i, i - 1] };
    for t in targets {
        let s = sym(q, seed[t]);
        if s != -1 {
            v.push(Violation(format!(
                "legendre({q},{})={} violates \"{name} is not a square mod q_{}\"",
                seed[t],
                fmt_sym(s),
                t + 1
            )));
        }
    }
    v
}

fn last_violations(seed: &[OddPrime], aux: &[OddPrime], q: OddPrime) -> Vec<Violation> {
    let name = format!("q_{}={}", seed.len() + 1, q);
    let mut v = Vec::new();
    if q.class_mod_4() != 3 {
        v.push(Violation(format!("{name} is not 3 mod 4")));
    }
    if seed.contains(&q) || aux.contains(&q) {
        v.push(Violation(format!("{name} is not distinct from the other primes")));
    }
    for (i, &a) in aux.iter().enumerate() {
        let s = sym(q, a);
        let want = if i == 0 { -1 } else { 1 };
        if s != want && q != a {
            let rule = if i == 0 {
                "not a square mod q_1'".to_string()
            } else {
                format!("square mod q_i' for i≠1 (i={})", i + 1)
            };
            v.push(Violation(format!("legendre({q},{a})={} violates \"{rule}\"", fmt_sym(s))));
        }
    }
    v
}

/// Checks every condition on `(q_1', …, q_m', q_{m+1})` for a normalized
/// seed and reports all violations.
pub fn validate_augmentation(
    seed: &OrderedPrimeSet,
    q_aux: &[OddPrime],
    q_last: OddPrime,
) -> ValidationReport {
    let seed = seed.primes();
    let mut violations = Vec::new();
    if seed.len() < 2 {
        violations.push(Violation("seed must contain at least two primes".into()));
    }
    if q_aux.len() != seed.len() {
        violations.push(Violation(format!(
            "expected {} auxiliary primes, got {}",
            seed.len(),
            q_aux.len()
        )));
    }
    if !violations.is_empty() {
        return ValidationReport { violations };
    }
    for i in 0..q_aux.len() {
        violations.extend(aux_violations(seed, &q_aux[..i], q_aux[i]));
    }
    violations.extend(last_violations(seed, q_aux, q_last));
    ValidationReport { violations }
}

fn interleave(seed: &[OddPrime], aux: &[OddPrime], last: OddPrime) -> Vec<OddPrime> {
    let mut s: Vec<OddPrime> = aux.iter().zip(seed).flat_map(|(&a, &q)| [a, q]).collect();
    s.push(last);
    s
}

#[derive(Clone, Debug)]
pub struct AugmentationResult {
    pub seed: OrderedPrimeSet,
    pub s: OrderedPrimeSet,
    pub q_aux: Vec<OddPrime>,
    pub q_last: OddPrime,
    /// Complete candidate tuples submitted to the mildness check.
    pub attempts: u64,
    pub report: MildnessReport,
}

impl AugmentationResult {
    pub fn to_json_value(&self) -> serde_json::Value {
        let v = |ps: &[OddPrime]| ps.iter().map(|p| p.get()).collect::<Vec<_>>();
        serde_json::json!({
            "seed": self.seed.values(),
            "S": self.s.values(),
            "q_aux": v(&self.q_aux),
            "q_last": self.q_last.get(),
            "attempts": self.attempts,
            "mildness": self.report.to_json_value(),
        })
    }
}

/// Greedy smallest-first search up to `bound`; see [`augment_from`].
pub fn augment(seed: &[OddPrime], bound: u64) -> Result<AugmentationResult> {
    augment_from(seed, bound, None)
}

/// Searches candidate tuples `(q_1', …, q_m', q_{m+1})` in lexicographic
/// order, each prime the least one passing its conditions against the
/// earlier choices, and accepts the first tuple whose set `S` is certified
/// mild. `start`, when given, is the tuple the enumeration begins at.
pub fn augment_from(
    seed: &[OddPrime],
    bound: u64,
    start: Option<&[u64]>,
) -> Result<AugmentationResult> {
    let seed = normalize_seed(seed)?;
    let m = seed.len();
    if let Some(st) = start {
        if st.len() != m + 1 {
            return Err(Error::InvalidArgument(format!(
                "start tuple needs {} entries, got {}",
                m + 1,
                st.len()
            )));
        }
    }
    let mut search = Search {
        seed: seed.primes(),
        bound,
        start,
        attempts: 0,
        chosen: Vec::with_capacity(m),
    };
    match search.level(true)? {
        Step::Found(q_last, report) => {
            let q_aux = search.chosen.clone();
            let s = OrderedPrimeSet::new(interleave(seed.primes(), &q_aux, q_last))?;
            Ok(AugmentationResult {
                seed: seed.clone(),
                s,
                q_aux,
                q_last,
                attempts: search.attempts,
                report: *report,
            })
        }
        Step::Exhausted => Err(Error::SearchExhausted),
        Step::Bounded => Err(Error::BoundExceeded { bound }),
    }
}

struct Search<'a> {
    seed: &'a [OddPrime],
    bound: u64,
    start: Option<&'a [u64]>,
    attempts: u64,
    chosen: Vec<OddPrime>,
}

/// Outcome of searching below one partial tuple.
enum Step {
    Found(OddPrime, Box<MildnessReport>),
    /// Every symbol class admissible at this level was tried and failed.
    Exhausted,
    /// The bound cut the enumeration short.
    Bounded,
}

impl Search<'_> {
    /// Legendre symbols of `q` modulo the seed and the auxiliary primes
    /// chosen so far. Together with the seed these determine the linking
    /// data of every completion, so two candidates with the same class have
    /// the same fate.
    fn class_of(&self, q: OddPrime) -> Vec<bool> {
        self.seed
            .iter()
            .chain(&self.chosen)
            .map(|&p| sym(q, p) == 1)
            .collect()
    }

    fn level(&mut self, on_start_path: bool) -> Result<Step> {
        let depth = self.chosen.len();
        let m = self.seed.len();
        let residue = if depth < m { 1 } else { 3 };
        // symbols modulo earlier auxiliary primes and the targeted seed
        // primes are forced, the remaining seed symbols are free
        let forced_seed = match depth {
            0 => 1,
            d if d < m => 2,
            _ => 0,
        };
        let classes = 1usize << (m - forced_seed);
        let mut failed: HashSet<Vec<bool>> = HashSet::new();
        let begin = match (on_start_path, self.start) {
            (true, Some(st)) => st[depth],
            _ => 3,
        };
        let mut avoid: BTreeSet<u64> = self.seed.iter().map(|p| p.get()).collect();
        avoid.extend(self.chosen.iter().map(|p| p.get()));
        let mut from = begin;
        loop {
            let q = match next_prime_in_class(from, residue, 4, &avoid, self.bound) {
                Ok(q) => q,
                Err(Error::BoundExceeded { .. }) => return Ok(Step::Bounded),
                Err(e) => return Err(e),
            };
            from = q.get() + 1;
            let still_on_path = on_start_path && self.start.is_some_and(|st| st[depth] == q.get());
            let admissible = if depth < m {
                aux_violations(self.seed, &self.chosen, q).is_empty()
            } else {
                last_violations(self.seed, &self.chosen, q).is_empty()
            };
            if !admissible {
                continue;
            }
            let class = self.class_of(q);
            if failed.contains(&class) {
                continue;
            }
            if depth < m {
                self.chosen.push(q);
                let step = self.level(still_on_path)?;
                if matches!(step, Step::Found(..)) {
                    return Ok(step);
                }
                self.chosen.pop();
                if matches!(step, Step::Exhausted) {
                    failed.insert(class);
                }
            } else {
                self.attempts += 1;
                let s = OrderedPrimeSet::new(interleave(self.seed, &self.chosen, q))?;
                let report = check_mild(&koch_presentation(&s), &CheckOptions::default())?;
                if report.verdict == Verdict::Mild {
                    return Ok(Step::Found(q, Box::new(report)));
                }
                failed.insert(class);
            }
            if failed.len() == classes {
                return Ok(Step::Exhausted);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn primes(v: &[u64]) -> Vec<OddPrime> {
        v.iter().map(|&x| OddPrime::new(x).unwrap()).collect()
    }

    fn p(v: u64) -> OddPrime {
        OddPrime::new(v).unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_seed(&primes(&[13, 3])).unwrap().values(), [13, 3]);
        assert_eq!(normalize_seed(&primes(&[3, 13])).unwrap().values(), [13, 3]);
        assert_eq!(normalize_seed(&primes(&[3, 7])).unwrap().values(), [5, 3, 7]);
        assert_eq!(normalize_seed(&primes(&[13, 17])).unwrap().values(), [13, 17, 3]);
        assert_eq!(normalize_seed(&primes(&[5])).unwrap().values(), [5, 3]);
        assert_eq!(normalize_seed(&primes(&[3])).unwrap().values(), [5, 3]);
        assert_eq!(normalize_seed(&primes(&[5, 3])).unwrap().values(), [5, 3]);
        assert!(normalize_seed(&[]).is_err());
    }

    #[test]
    fn known_witness_validates() {
        let seed = normalize_seed(&primes(&[13, 3])).unwrap();
        let r = validate_augmentation(&seed, &primes(&[41, 5]), p(19));
        assert!(r.passed(), "{:?}", r.violations);
    }

    #[test]
    fn swapped_auxiliaries_fail_on_last_prime() {
        let seed = normalize_seed(&primes(&[13, 3])).unwrap();
        let r = validate_augmentation(&seed, &primes(&[5, 41]), p(19));
        assert!(!r.passed());
        assert!(r
            .violations
            .iter()
            .any(|v| v.0 == "legendre(19,5)=+1 violates \"not a square mod q_1'\""));
    }

    #[test]
    fn nonsquare_last_prime_fails() {
        let seed = normalize_seed(&primes(&[13, 3])).unwrap();
        let r = validate_augmentation(&seed, &primes(&[41, 5]), p(7));
        assert!(r.violations.iter().any(|v| v.0.starts_with("legendre(7,5)=-1 violates")));
    }

    #[test]
    fn shape_errors_are_reported() {
        let seed = normalize_seed(&primes(&[13, 3])).unwrap();
        assert!(!validate_augmentation(&seed, &primes(&[41]), p(19)).passed());
    }

    #[test]
    fn small_bound_is_exhausted() {
        assert!(matches!(
            augment(&primes(&[3]), 10),
            Err(Error::BoundExceeded { bound: 10 })
        ));
    }

    #[test]
    fn seeded_search_accepts_known_tuple() {
        let r = augment_from(&primes(&[13, 3]), 100_000, Some(&[41, 5, 19])).unwrap();
        assert_eq!(r.s.values(), [41, 13, 5, 3, 19]);
        assert_eq!(r.attempts, 1);
    }

    #[test]
    fn start_tuple_length_is_checked() {
        assert!(augment_from(&primes(&[13, 3]), 1000, Some(&[41, 5])).is_err());
    }
}
