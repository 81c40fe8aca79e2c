//! Degree-2 relators `Σ a_i ξ_i² + Σ_{i<j} c_ij [ξ_i, ξ_j]` over F₂.
//!
//! Generator indices are 0-based in the API and 1-based in text and JSON.
//! The canonical text of a relator owned by generator `o` lists `xo^2`
//! first, then `[xo,xj]` for ascending `j`, then any remaining terms in
//! ascending order; the zero relator prints as `1`.

use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticRelator {
    d: usize,
    squares: Vec<bool>,
    // upper triangle, row-major over i < j
    comms: Vec<bool>,
}

fn tri_index(d: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < d);
    i * (2 * d - i - 1) / 2 + (j - i - 1)
}

impl QuadraticRelator {
    pub fn zero(d: usize) -> Self {
        QuadraticRelator {
            d,
            squares: vec![false; d],
            comms: vec![false; d * d.saturating_sub(1) / 2],
        }
    }

    /// Relator `a ξ_owner² + Σ_j ell[j] [ξ_owner, ξ_j]`; `ell[owner]` is ignored.
    pub fn koch(d: usize, owner: usize, square: bool, ell: &[bool]) -> Self {
        assert_eq!(ell.len(), d);
        let mut r = QuadraticRelator::zero(d);
        r.set_square(owner, square);
        for (j, &l) in ell.iter().enumerate() {
            if j != owner && l {
                r.set_comm(owner, j, true);
            }
        }
        r
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn square(&self, i: usize) -> bool {
        self.squares[i]
    }

    pub fn set_square(&mut self, i: usize, v: bool) {
        self.squares[i] = v;
    }

    pub fn toggle_square(&mut self, i: usize) {
        self.squares[i] ^= true;
    }

    /// Coefficient of `[ξ_i, ξ_j]`, symmetric in `i, j`; zero on the diagonal.
    pub fn comm(&self, i: usize, j: usize) -> bool {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.comms[tri_index(self.d, i, j)],
            std::cmp::Ordering::Greater => self.comms[tri_index(self.d, j, i)],
            std::cmp::Ordering::Equal => false,
        }
    }

    pub fn set_comm(&mut self, i: usize, j: usize, v: bool) {
        assert_ne!(i, j, "[x,x] has no coefficient");
        let k = tri_index(self.d, i.min(j), i.max(j));
        self.comms[k] = v;
    }

    /// Adds `[ξ_i, ξ_j]`; a no-op when `i == j` since `[ξ,ξ] = 0`.
    pub fn toggle_comm(&mut self, i: usize, j: usize) {
        if i != j {
            let k = tri_index(self.d, i.min(j), i.max(j));
            self.comms[k] ^= true;
        }
    }

    pub fn is_zero(&self) -> bool {
        !self.squares.iter().any(|&s| s) && !self.comms.iter().any(|&c| c)
    }

    pub fn square_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.d).filter(|&i| self.squares[i])
    }

    /// Pairs `(i, j)`, `i < j`, with nonzero commutator coefficient, in
    /// lexicographic order.
    pub fn comm_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let d = self.d;
        (0..d)
            .flat_map(move |i| (i + 1..d).map(move |j| (i, j)))
            .filter(move |&(i, j)| self.comms[tri_index(d, i, j)])
    }

    /// True when every term involves `owner`: only `ξ_owner²` and
    /// commutators `[ξ_owner, ξ_j]`.
    pub fn has_koch_shape(&self, owner: usize) -> bool {
        self.square_indices().all(|i| i == owner)
            && self.comm_pairs().all(|(i, j)| i == owner || j == owner)
    }

    /// Row `ℓ_owner,·` as read off the commutators involving `owner`.
    pub fn ell_row(&self, owner: usize) -> Vec<bool> {
        (0..self.d).map(|j| self.comm(owner, j)).collect()
    }

    pub fn add_assign(&mut self, other: &QuadraticRelator) {
        assert_eq!(self.d, other.d);
        for (a, b) in self.squares.iter_mut().zip(&other.squares) {
            *a ^= *b;
        }
        for (a, b) in self.comms.iter_mut().zip(&other.comms) {
            *a ^= *b;
        }
    }

    /// Relabels generators by `perm` (old index `i` becomes `perm[i]`).
    pub fn permuted(&self, perm: &[usize]) -> QuadraticRelator {
        assert_eq!(perm.len(), self.d);
        let mut out = QuadraticRelator::zero(self.d);
        for i in self.square_indices() {
            out.set_square(perm[i], true);
        }
        for (i, j) in self.comm_pairs() {
            out.set_comm(perm[i], perm[j], true);
        }
        out
    }

    pub fn render(&self, owner: Option<usize>) -> String {
        if self.is_zero() {
            return "1".to_string();
        }
        let mut s = String::new();
        if let Some(o) = owner {
            if self.square(o) {
                let _ = write!(s, "x{}^2", o + 1);
            }
        }
        for i in self.square_indices().filter(|&i| Some(i) != owner) {
            let _ = write!(s, "x{}^2", i + 1);
        }
        if let Some(o) = owner {
            for j in (0..self.d).filter(|&j| self.comm(o, j)) {
                let _ = write!(s, "[x{},x{}]", o + 1, j + 1);
            }
        }
        for (i, j) in self.comm_pairs() {
            if Some(i) != owner && Some(j) != owner {
                let _ = write!(s, "[x{},x{}]", i + 1, j + 1);
            }
        }
        s
    }

    /// Parses canonical text such as `x4^2[x4,x1][x4,x3]` (or `1`). Terms may
    /// appear in any order and repeated terms cancel. `²` is accepted for `^2`
    /// and whitespace is ignored.
    pub fn parse(text: &str, d: usize) -> Result<QuadraticRelator> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut r = QuadraticRelator::zero(d);
        if compact == "1" {
            return Ok(r);
        }
        if compact.is_empty() {
            return Err(Error::Parse("empty relator".into()));
        }
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            if let Some(body) = rest.strip_prefix('[') {
                let close = body
                    .find(']')
                    .ok_or_else(|| Error::Parse(format!("unclosed bracket in {text:?}")))?;
                let inner = &body[..close];
                let (a, b) = inner
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("commutator without comma in {text:?}")))?;
                let i = parse_generator(a, d)?;
                let j = parse_generator(b, d)?;
                r.toggle_comm(i, j);
                rest = &body[close + 1..];
            } else if rest.starts_with('x') {
                let end = rest[1..]
                    .find(|c: char| !c.is_ascii_digit())
                    .map_or(rest.len(), |k| k + 1);
                let i = parse_generator(&rest[..end], d)?;
                rest = &rest[end..];
                if let Some(r2) = rest.strip_prefix("^2") {
                    rest = r2;
                } else if let Some(r2) = rest.strip_prefix('²') {
                    rest = r2;
                } else {
                    return Err(Error::Parse(format!(
                        "bare generator x{} in {text:?}: only squares and commutators are quadratic",
                        i + 1
                    )));
                }
                r.toggle_square(i);
            } else {
                return Err(Error::Parse(format!("unexpected input at {rest:?}")));
            }
        }
        Ok(r)
    }
}

pub(crate) fn parse_generator(tok: &str, d: usize) -> Result<usize> {
    let digits = tok
        .strip_prefix('x')
        .ok_or_else(|| Error::Parse(format!("expected generator like x1, got {tok:?}")))?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("bad generator {tok:?}")));
    }
    let k: usize = digits
        .parse()
        .map_err(|_| Error::Parse(format!("bad generator {tok:?}")))?;
    if k == 0 || k > d {
        return Err(Error::Parse(format!("generator {tok} outside x1..x{d}")));
    }
    Ok(k - 1)
}

/// A relator together with the generator that owns it in a Koch
/// presentation, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaggedRelator {
    pub owner: Option<usize>,
    pub relator: QuadraticRelator,
}

impl TaggedRelator {
    pub fn render(&self) -> String {
        self.relator.render(self.owner)
    }
}
