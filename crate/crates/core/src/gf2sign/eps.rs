//! Sign-twisted variants of the Hankel factorisation.
//!
//! For `sum_k eps_k x^(2^k)` with `eps_k = +-1`, the Hankel matrix of
//! `x^-1 sum_k eps_k x^(2^k)` is a diagonal `+-1` conjugate of the untwisted
//! one. With `c_0 = eps_1` and `c_j = eps_j eps_(j+1)`, the conjugating
//! diagonal has `d_n = prod c_j` over the set bits `j` of `n`: when
//! `i + j = 2^k - 1` the bits of `i` and `j` partition `{0, .., k-1}`, and
//! the product telescopes to `eps_k`.

use super::matrix::{DiagSigns, SmallMatrix};
use super::{build_tri, check_size, diag, DiagKind, TriKind, MAX_TRI_SIZE};
use crate::error::{Error, Result};
use crate::report::VerifyReport;

/// Number of `eps` entries needed for matrices of size `n`.
fn eps_needed(n: usize) -> usize {
    let bits = usize::BITS - (n.saturating_sub(1)).leading_zeros();
    bits as usize + 1
}

fn check_eps(eps: &[i8], n: usize) -> Result<()> {
    if let Some(bad) = eps.iter().find(|e| **e != 1 && **e != -1) {
        return Err(Error::InvalidInput(format!("eps entries must be +-1, got {bad}")));
    }
    let need = eps_needed(n);
    if eps.len() < need {
        return Err(Error::InvalidInput(format!(
            "size {n} needs at least {need} eps values, got {}",
            eps.len()
        )));
    }
    Ok(())
}

/// The conjugating diagonal for a sign vector with `eps[0] = +1`.
pub fn general_eps_diag(eps: &[i8], n: usize) -> Result<DiagSigns> {
    check_size(n, MAX_TRI_SIZE)?;
    check_eps(eps, n)?;
    if eps[0] != 1 {
        return Err(Error::InvalidInput(
            "eps[0] must be +1; use EpsConjugation::new for a negative leading sign".into(),
        ));
    }
    let c: Vec<i8> = (0..eps.len() - 1)
        .map(|j| if j == 0 { eps[1] } else { eps[j] * eps[j + 1] })
        .collect();
    Ok(DiagSigns::from_fn(n, |idx| {
        let mut sign = 1i64;
        let mut bits = idx;
        let mut j = 0;
        while bits > 0 {
            if bits & 1 == 1 {
                sign *= i64::from(c[j]);
            }
            bits >>= 1;
            j += 1;
        }
        sign
    }))
}

/// Conjugating diagonal plus the sign applied to `D_a`; a leading
/// `eps[0] = -1` is absorbed by negating `D_a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsConjugation {
    pub diag: DiagSigns,
    pub alt_sign: i8,
}

impl EpsConjugation {
    pub fn new(eps: &[i8], n: usize) -> Result<Self> {
        check_size(n, MAX_TRI_SIZE)?;
        check_eps(eps, n)?;
        let lead = eps[0];
        let normalized: Vec<i8> = eps.iter().map(|e| e * lead).collect();
        Ok(Self {
            diag: general_eps_diag(&normalized, n)?,
            alt_sign: lead,
        })
    }
}

/// Hankel matrix of `c_m = eps_k` for `m = 2^k - 1`, zero elsewhere.
pub fn signed_hankel(eps: &[i8], n: usize) -> Result<SmallMatrix> {
    check_size(n, MAX_TRI_SIZE)?;
    check_eps(eps, n)?;
    Ok(SmallMatrix::from_fn(n, |i, j| {
        let m = i + j + 1;
        if m.is_power_of_two() {
            i32::from(eps[m.trailing_zeros() as usize])
        } else {
            0
        }
    }))
}

/// Checks `D (D_s L (+-D_a) L^t D_s) D` against the signed Hankel matrix.
pub fn verify_eps(eps: &[i8], n: usize) -> Result<VerifyReport> {
    let conj = EpsConjugation::new(eps, n)?;
    let mut report = VerifyReport::new("eps", n);
    let l = build_tri(TriKind::L, n)?;
    let ds = diag(DiagKind::S, n);
    let mut da = diag(DiagKind::Alt, n);
    if conj.alt_sign < 0 {
        da = da.neg();
    }
    let core = ds.conjugate(&l.mul(&da.left(&l.transpose()))?);
    let twisted = conj.diag.conjugate(&core);
    twisted.compare_into(&signed_hankel(eps, n)?, &mut report, "DHD=Hankel(eps)");
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2sign::{hankel_bits, HankelSource};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn all_plus_is_identity() {
        let eps = vec![1; 8];
        let d = general_eps_diag(&eps, 64).unwrap();
        assert_eq!(d, DiagSigns::identity(64));
        let h = hankel_bits(HankelSource::MuShift0, 64).unwrap().to_matrix();
        assert_eq!(signed_hankel(&eps, 64).unwrap(), h);
    }

    #[test]
    fn flipped_eps1_marks_first_antidiagonal() {
        let eps = [1, -1, 1];
        let d = general_eps_diag(&eps, 4).unwrap();
        let h = hankel_bits(HankelSource::MuShift0, 4).unwrap().to_matrix();
        let conj = d.conjugate(&h);
        for (i, j, v) in conj.entries() {
            if i + j == 1 {
                assert_eq!(v, -1);
            } else {
                assert!(v >= 0);
            }
        }
        assert!(verify_eps(&eps, 4).unwrap().pass);
    }

    #[test]
    fn random_sign_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let mut eps: Vec<i8> = (0..8).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect();
            eps[0] = 1;
            let r = verify_eps(&eps, 64).unwrap();
            assert!(r.pass, "{eps:?}");
        }
    }

    #[test]
    fn negative_leading_sign() {
        let eps = [-1, 1, -1, -1, 1, 1, -1, 1];
        assert!(general_eps_diag(&eps, 8).is_err());
        let r = verify_eps(&eps, 64).unwrap();
        assert!(r.pass, "{:?}", r.failures.first());
    }

    #[test]
    fn short_or_invalid_eps_rejected() {
        assert!(general_eps_diag(&[1, 1], 5).is_err());
        assert!(general_eps_diag(&[1, 1, 1, 1], 5).is_ok());
        assert!(general_eps_diag(&[1, 0, 1, 1], 5).is_err());
    }
}
