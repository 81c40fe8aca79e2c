//! Koch presentations of maximal pro-2 quotients of Galois groups with
//! restricted ramification, criteria certifying that their relators are
//! strongly free ("mild" groups), exact series for the resulting graded
//! dimensions, and a brute-force algebra oracle to cross-check them.
//!
//! ```
//! use mild2::linking::{koch_presentation, OrderedPrimeSet};
//! use mild2::mildness::{check_mild, CheckOptions, Verdict};
//!
//! let s = OrderedPrimeSet::from_u64s(&[41, 13, 5, 3, 19]).unwrap();
//! let report = check_mild(&koch_presentation(&s), &CheckOptions::default()).unwrap();
//! assert_eq!(report.verdict, Verdict::Mild);
//! ```

pub mod acceptance;
pub mod arith;
pub mod error;
pub mod gf2;
pub mod linking;
pub mod mildness;
pub mod oracle;
pub mod quadlie;
pub mod series;

pub use error::{Error, Result};
