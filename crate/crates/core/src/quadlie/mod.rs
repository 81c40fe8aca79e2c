//! Truncated free associative algebras over `F₂` and `F₂[π]`, with the Lie
//! bracket `uv + vu`, the squaring operators, and generating sets of free
//! Lie subalgebras expressed as bracket words.

mod basis;
mod bracket;
mod ncpoly;

pub use basis::{elimination_basis, enumerate_y, y_count_series};
pub use bracket::{evaluate, evaluate_strict, BracketWord, Evaluation};
pub use ncpoly::{FreeAlgebra, Monomial, NcPoly, Ring, WeightedAlphabet};

use crate::error::{Error, Result};
use crate::linking::QuadraticRelator;

/// `u ↦ u²` on degree-1 elements over `F₂`.
pub fn p_quad(u: &NcPoly) -> Result<NcPoly> {
    if u.ring() != Ring::F2 {
        return Err(Error::RingMismatch);
    }
    match u.homogeneous_degree()? {
        None | Some(1) => u.mul(u),
        Some(found) => Err(Error::WrongDegree { expected: 1, found }),
    }
}

/// Over `F₂[π]`: `u ↦ u² + πu` in degree 1 and `u ↦ πu` in higher degree.
pub fn p_mixed(u: &NcPoly) -> Result<NcPoly> {
    if u.ring() != Ring::F2Pi {
        return Err(Error::RingMismatch);
    }
    match u.homogeneous_degree()? {
        None => Ok(u.clone()),
        Some(1) => u.mul(u)?.add(&u.pi_mul()?),
        Some(_) => u.pi_mul(),
    }
}

/// `Σ s_i ξ_i² + Σ c_ij (ξ_i ξ_j + ξ_j ξ_i)`.
pub fn relator_to_poly(r: &QuadraticRelator, algebra: &FreeAlgebra) -> Result<NcPoly> {
    if r.d() != algebra.alphabet().d() {
        return Err(Error::InvalidArgument(format!(
            "relator on {} generators, alphabet has {}",
            r.d(),
            algebra.alphabet().d()
        )));
    }
    let mut p = algebra.zero();
    for i in r.square_indices() {
        p = p.add(&algebra.word(&[i, i]))?;
    }
    for (i, j) in r.comm_pairs() {
        p = p.add(&algebra.generator(i).bracket(&algebra.generator(j))?)?;
    }
    Ok(p)
}
