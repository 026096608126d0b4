//! Exact constructions around paperfolding sequences, Catalan numbers modulo
//! 2, and the Hankel matrices and continued fractions they produce.
//!
//! - [`binom2`]: binomial coefficients modulo 2 and carry counting.
//! - [`seq`]: the sign sequences `s`, `s~`, `t~`, `mu`, `d` and the folding
//!   words `W_k`.
//! - [`gf2sign`]: `{0,1}` binomial matrices with sign corrections and the
//!   exact matrix identities they satisfy.
//! - [`catalanz`]: the integer Catalan matrices they reduce from.
//! - [`cfseries`]: truncated power series, continued fractions, Hankel LU
//!   decomposition, Jacobi fractions and orthogonal polynomials.
//!
//! Every computation is exact; nothing in the crate uses floating point.

pub mod binom2;
pub mod catalanz;
pub mod cfseries;
pub mod gf2sign;
pub mod seq;

mod error;
mod report;

pub use error::{Error, Result};
pub use report::{Failure, VerifyReport};
