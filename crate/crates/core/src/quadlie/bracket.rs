use std::fmt;

use super::ncpoly::{FreeAlgebra, NcPoly, Ring, WeightedAlphabet};
use super::{p_mixed, p_quad};
use crate::error::{Error, Result};

/// A Lie expression over the generators: leaves, brackets, and the
/// squaring operator `P` applied to a weight-1 generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BracketWord {
    Leaf(usize),
    Bracket(Box<BracketWord>, Box<BracketWord>),
    Square(usize),
}

impl BracketWord {
    pub fn bracket(a: BracketWord, b: BracketWord) -> BracketWord {
        BracketWord::Bracket(Box::new(a), Box::new(b))
    }

    /// `ad(s_1) ad(s_2) ⋯ ad(s_n)(target)` = `[s_1,[s_2,[…,[s_n,target]…]]]`.
    pub fn ad_word(ads: &[usize], target: BracketWord) -> BracketWord {
        ads.iter()
            .rev()
            .fold(target, |acc, &s| BracketWord::bracket(BracketWord::Leaf(s), acc))
    }

    pub fn weight(&self, alphabet: &WeightedAlphabet) -> u32 {
        match self {
            BracketWord::Leaf(i) => alphabet.weight(*i),
            BracketWord::Bracket(a, b) => a.weight(alphabet) + b.weight(alphabet),
            BracketWord::Square(i) => 2 * alphabet.weight(*i),
        }
    }

    fn validate(&self, alphabet: &WeightedAlphabet) -> Result<()> {
        match self {
            BracketWord::Leaf(i) if *i < alphabet.d() => Ok(()),
            BracketWord::Square(i) if *i < alphabet.d() && alphabet.weight(*i) == 1 => Ok(()),
            BracketWord::Bracket(a, b) => {
                a.validate(alphabet)?;
                b.validate(alphabet)
            }
            other => Err(Error::InvalidArgument(format!(
                "{other} is not a valid expression over {} generators",
                alphabet.d()
            ))),
        }
    }
}

impl fmt::Display for BracketWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketWord::Leaf(i) => write!(f, "x{}", i + 1),
            BracketWord::Bracket(a, b) => write!(f, "[{a},{b}]"),
            BracketWord::Square(i) => write!(f, "P(x{})", i + 1),
        }
    }
}

/// Result of evaluating a [`BracketWord`]; `truncated` is set when its weight
/// exceeds the truncation degree, in which case `poly` is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub poly: NcPoly,
    pub truncated: bool,
}

/// Expands brackets as `uv + vu` and squares with the ring's `P` operator.
pub fn evaluate(bw: &BracketWord, algebra: &FreeAlgebra) -> Result<Evaluation> {
    bw.validate(algebra.alphabet())?;
    let truncated = bw.weight(algebra.alphabet()) > algebra.truncation();
    Ok(Evaluation { poly: eval(bw, algebra)?, truncated })
}

/// Like [`evaluate`] but fails instead of returning a truncated result.
pub fn evaluate_strict(bw: &BracketWord, algebra: &FreeAlgebra) -> Result<NcPoly> {
    let e = evaluate(bw, algebra)?;
    if e.truncated {
        Err(Error::Truncated(algebra.truncation()))
    } else {
        Ok(e.poly)
    }
}

fn eval(bw: &BracketWord, algebra: &FreeAlgebra) -> Result<NcPoly> {
    match bw {
        BracketWord::Leaf(i) => Ok(algebra.generator(*i)),
        BracketWord::Bracket(a, b) => eval(a, algebra)?.bracket(&eval(b, algebra)?),
        BracketWord::Square(i) => {
            let x = algebra.generator(*i);
            match algebra.ring() {
                Ring::F2 => p_quad(&x),
                Ring::F2Pi => p_mixed(&x),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use BracketWord::*;

    fn alg(ring: Ring, n: u32) -> FreeAlgebra {
        FreeAlgebra::new(WeightedAlphabet::uniform(3), ring, n)
    }

    #[test]
    fn leaf_and_square() {
        let a = alg(Ring::F2Pi, 4);
        assert_eq!(evaluate(&Leaf(2), &a).unwrap().poly.render(), "x3");
        assert_eq!(evaluate(&Square(0), &a).unwrap().poly.render(), "x1.x1 + pi.x1");
        assert_eq!(evaluate(&Square(0), &alg(Ring::F2, 4)).unwrap().poly.render(), "x1.x1");
    }

    #[test]
    fn nested_bracket_matches_square_identity() {
        let a = alg(Ring::F2, 4);
        let w = BracketWord::ad_word(&[0, 0], Leaf(1));
        assert_eq!(w.to_string(), "[x1,[x1,x2]]");
        let e = evaluate(&w, &a).unwrap();
        assert!(!e.truncated);
        assert_eq!(e.poly.render(), "x1.x1.x2 + x2.x1.x1");
    }

    #[test]
    fn truncation_is_flagged() {
        let a = alg(Ring::F2, 2);
        let w = BracketWord::ad_word(&[0, 2], Leaf(1));
        let e = evaluate(&w, &a).unwrap();
        assert!(e.truncated && e.poly.is_zero());
        assert!(matches!(evaluate_strict(&w, &a), Err(Error::Truncated(2))));
    }

    #[test]
    fn invalid_expressions() {
        let a = FreeAlgebra::new(WeightedAlphabet::new(vec![1, 2]).unwrap(), Ring::F2, 4);
        assert!(evaluate(&Square(1), &a).is_err());
        assert!(evaluate(&Leaf(5), &a).is_err());
    }
}
