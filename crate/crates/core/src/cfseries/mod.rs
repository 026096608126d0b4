//! Formal power series and continued fractions.
//!
//! [`TruncSeries`] is exact rational arithmetic modulo `x^order`. The word
//! matrices of the folding words are built over multivariate polynomials,
//! continued fractions are evaluated through their convergents, and the
//! Hankel side covers LU decomposition, the Jacobi fraction read off from
//! it, the orthogonal polynomials and the determinant identities.

mod cf;
mod hankel;
mod poly;
mod series;
mod unique;

pub use cf::{
    cf_limit, convergent_cross, jacobi_terms, verify_jacobi_limit, verify_thm1, CfTerm,
    Convergents, Example, SparsePoly, MAX_CF_STEPS,
};
pub use hankel::{
    hankel_lu_rational, hankel_minors, int_det, orth_polys, stieltjes_extract,
    verify_det_identities, verify_orth_polys, verify_shifted_stieltjes, verify_thm4, JacobiCF,
    MomentFunctional, MAX_HANKEL_SIZE, MAX_ORTH_SIZE,
};
pub use poly::{
    verify_lemma5, word_matrix, word_matrix_series, x_polys, Exponents, Mat2, MultiPoly, Ring,
    MAX_LEMMA_LEVEL, MAX_VARS, MAX_WORD_LEN,
};
pub use series::{series_arith, SeriesOp, TruncSeries, MAX_SERIES_ORDER};
pub use unique::{
    eps_prefix, uniqueness_check, uniqueness_search, verify_uniqueness_search,
    UniquenessOutcome, Violation, MAX_CHECK_LEN, MAX_SEARCH_LEN,
};
