//! Binomial matrices modulo 2 lifted to the integers with sign corrections.
//!
//! The matrices `L`, `M`, `L~`, `M~` have entries in `{0, 1}` given by
//! binomial coefficients reduced modulo 2. Conjugated by the diagonal sign
//! matrices built from the sequences in [`crate::seq`], they factor the
//! Hankel matrices of `sum x^(2^k)` and of its shift exactly over the
//! integers. This module builds all of them and checks the identities.

mod babab;
mod eps;
mod matrix;
mod verify;

pub use babab::{babab_expand, BababRule, MAX_BABAB_STEPS};
pub use eps::{general_eps_diag, signed_hankel, verify_eps, EpsConjugation};
pub use matrix::{DiagSigns, SmallMatrix};
pub use verify::{
    verify_babab, verify_prop_mdl, verify_prop_ml_lm, verify_thm2, verify_thm3, verify_thm5,
    MAX_VERIFY_SIZE,
};

use crate::binom2::binom_mod2;
use crate::error::{guard, Error, Result};
use crate::seq;
use serde::{Deserialize, Serialize};

pub const MAX_TRI_SIZE: usize = 1 << 14;

/// The `{0, 1}` matrix families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TriKind {
    /// `l_{i,j} = C(2i+1, i-j) mod 2`
    L,
    /// `m_{i,j} = C(i+j, 2j) mod 2`
    M,
    /// `l~_{i,j} = C(2i+2, i-j) mod 2`
    LTilde,
    /// `m~_{i,j} = C(i+j+1, 2j+1) mod 2`
    MTilde,
    /// `L~` shifted down one row below a zero row.
    LTilde0,
    /// `M~` shifted down one row below a zero row.
    MTilde0,
    /// Strictly lower triangular all-ones matrix.
    AStrict,
}

fn tri_entry(kind: TriKind, i: u64, j: u64) -> i32 {
    let diff = i as i64 - j as i64;
    let bit = match kind {
        TriKind::L => binom_mod2(2 * i + 1, diff),
        TriKind::M => binom_mod2(i + j, 2 * j as i64),
        TriKind::LTilde => binom_mod2(2 * i + 2, diff),
        TriKind::MTilde => binom_mod2(i + j + 1, 2 * j as i64 + 1),
        TriKind::LTilde0 => {
            return if i == 0 {
                0
            } else {
                tri_entry(TriKind::LTilde, i - 1, j)
            }
        }
        TriKind::MTilde0 => {
            return if i == 0 {
                0
            } else {
                tri_entry(TriKind::MTilde, i - 1, j)
            }
        }
        TriKind::AStrict => return i32::from(i > j),
    };
    // M and M~ are lower triangular because C(i+j, 2j) vanishes for j > i.
    i32::from(bit.value())
}

fn check_size(n: usize, max: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput("matrix size must be at least 1".into()));
    }
    guard("matrix size", n as u64, max as u64)
}

/// Builds the `n x n` leading block of the given family from its binomial
/// definition.
pub fn build_tri(kind: TriKind, n: usize) -> Result<SmallMatrix> {
    check_size(n, MAX_TRI_SIZE)?;
    Ok(SmallMatrix::from_fn(n, |i, j| tri_entry(kind, i as u64, j as u64)))
}

/// Which sequence feeds a `{0,1}` Hankel matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HankelSource {
    /// `h_{i,j} = mu_{i+j}`
    MuShift0,
    /// `h_{i,j} = mu_{i+j+1}`
    MuShift1,
}

/// A Hankel matrix of the sequence `mu`, evaluated on demand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HankelBit {
    pub source: HankelSource,
    pub size: usize,
}

impl HankelBit {
    pub fn entry(&self, i: usize, j: usize) -> i32 {
        let shift = match self.source {
            HankelSource::MuShift0 => 0,
            HankelSource::MuShift1 => 1,
        };
        seq::mu((i + j + shift) as u64) as i32
    }

    pub fn to_matrix(&self) -> SmallMatrix {
        SmallMatrix::from_fn(self.size, |i, j| self.entry(i, j))
    }
}

pub fn hankel_bits(source: HankelSource, n: usize) -> Result<HankelBit> {
    check_size(n, MAX_TRI_SIZE)?;
    Ok(HankelBit { source, size: n })
}

/// Named diagonal sign matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagKind {
    /// `s_0, s_1, ...`
    S,
    /// `s_1, s_2, ...`
    SPlus1,
    STilde,
    TTilde,
    /// `D_a`
    Alt,
    /// `D_e`
    Even,
    /// `D_o`
    Odd,
}

pub fn diag(kind: DiagKind, n: usize) -> DiagSigns {
    match kind {
        DiagKind::S => DiagSigns::from_fn(n, |i| seq::s(i as i64)),
        DiagKind::SPlus1 => DiagSigns::from_fn(n, |i| seq::s(i as i64 + 1)),
        DiagKind::STilde => DiagSigns::from_fn(n, seq::s_tilde),
        DiagKind::TTilde => DiagSigns::from_fn(n, seq::t_tilde),
        DiagKind::Alt => DiagSigns::alternating(n),
        DiagKind::Even => DiagSigns::even_mask(n),
        DiagKind::Odd => DiagSigns::odd_mask(n),
    }
}
