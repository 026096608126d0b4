//! Sequences over `{-1, 0, 1}` whose Hankel determinants `det H(n)` and
//! `det H~(n)` are all `+-1`: they vanish except at the positions `2^k - 1`,
//! where the signs are free.

use super::hankel::int_det;
use crate::error::{guard, Error, Result};
use crate::report::VerifyReport;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub const MAX_CHECK_LEN: usize = 256;
pub const MAX_SEARCH_LEN: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Violation {
    /// `det H(n) != +-1`, with `H(n) = (c_{i+j})`.
    DetH,
    /// `det H~(n) != +-1`, with `H~(n) = (c_{i+j+1})`.
    DetHTilde,
    /// A nonzero entry off the positions `2^k - 1`, or a zero on them.
    Pattern,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum UniquenessOutcome {
    Pass { eps: Vec<i8> },
    /// `n` is the matrix size for determinant failures and the index of the
    /// entry for pattern failures.
    Fail { n: usize, which: Violation },
}

impl UniquenessOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, Self::Pass { .. })
    }
}

/// The sequence with `c_{2^k - 1} = eps_k` and zeros elsewhere, cut at `len`.
pub fn eps_prefix(eps: &[i8], len: usize) -> Vec<i8> {
    let mut c = vec![0; len];
    for (k, e) in eps.iter().enumerate() {
        let Some(pos) = 1usize.checked_shl(k as u32).map(|p| p - 1) else { break };
        if pos >= len || k >= usize::BITS as usize {
            break;
        }
        c[pos] = *e;
    }
    c
}

/// Leading principal minors of the integer Hankel matrix `(c_{off+i+j})`
/// of size `n`, stopping after the first vanishing one.
fn hankel_minors_int(c: &[i8], off: usize, n: usize) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(c[off + i + j])).collect())
        .collect();
    let mut minors = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = a[k][k].clone();
        minors.push(pivot.clone());
        if pivot.is_zero() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&pivot * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = pivot;
    }
    minors
}

fn is_unit(v: &BigInt) -> bool {
    v.abs().is_one()
}

/// Checks every determinant computable from `c` in index order (`H(n)`
/// needs `c_0 .. c_{2n-2}`, `H~(n)` needs `c_1 .. c_{2n-1}`), then reads off
/// the signs `eps_k = c_{2^k - 1}` and checks that the other entries vanish.
pub fn uniqueness_check(c: &[i8]) -> Result<UniquenessOutcome> {
    if c.len() < 2 {
        return Err(Error::InvalidInput("at least two entries are needed".into()));
    }
    guard("sequence length", c.len() as u64, MAX_CHECK_LEN as u64)?;
    if let Some(bad) = c.iter().find(|v| !(-1..=1).contains(*v)) {
        return Err(Error::InvalidInput(format!("entry {bad} is not in {{-1, 0, 1}}")));
    }
    let h = hankel_minors_int(c, 0, c.len().div_ceil(2));
    let ht = hankel_minors_int(c, 1, c.len() / 2);
    for n in 1..=h.len().max(ht.len()) {
        if h.get(n - 1).is_some_and(|d| !is_unit(d)) {
            return Ok(UniquenessOutcome::Fail { n, which: Violation::DetH });
        }
        if ht.get(n - 1).is_some_and(|d| !is_unit(d)) {
            return Ok(UniquenessOutcome::Fail { n, which: Violation::DetHTilde });
        }
    }
    let mut eps = Vec::new();
    for (m, &v) in c.iter().enumerate() {
        let on = (m + 1).is_power_of_two();
        if on && v != 0 {
            eps.push(v);
        } else if on || v != 0 {
            return Ok(UniquenessOutcome::Fail { n: m, which: Violation::Pattern });
        }
    }
    Ok(UniquenessOutcome::Pass { eps })
}

/// The determinant fixed by assigning `c_m`: `det H(m/2 + 1)` for even `m`,
/// `det H~((m + 1)/2)` for odd `m`.
fn newest_det(c: &[i8]) -> BigInt {
    let m = c.len() - 1;
    let (off, n) = if m % 2 == 0 { (0, m / 2 + 1) } else { (1, m.div_ceil(2)) };
    int_det(
        (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(c[off + i + j])).collect())
            .collect(),
    )
}

/// All sequences of the given length over `{-1, 0, 1}` whose computable
/// determinants are `+-1`, in lexicographic order with `-1 < 0 < 1`.
pub fn uniqueness_search(length: usize) -> Result<Vec<Vec<i8>>> {
    if length == 0 {
        return Err(Error::InvalidInput("length must be at least 1".into()));
    }
    guard("search length", length as u64, MAX_SEARCH_LEN as u64)?;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(length);
    search(&mut cur, length, &mut out);
    Ok(out)
}

fn search(cur: &mut Vec<i8>, length: usize, out: &mut Vec<Vec<i8>>) {
    if cur.len() == length {
        out.push(cur.clone());
        return;
    }
    for v in [-1i8, 0, 1] {
        cur.push(v);
        if is_unit(&newest_det(cur)) {
            search(cur, length, out);
        }
        cur.pop();
    }
}

/// The survivors of the search are exactly the `2^K` sign choices on the
/// positions `2^k - 1 < length`, and each passes [`uniqueness_check`].
pub fn verify_uniqueness_search(length: usize) -> Result<VerifyReport> {
    let survivors = uniqueness_search(length)?;
    let mut report = VerifyReport::new("unique-search", length);
    let slots = (0..usize::BITS)
        .take_while(|&k| (1usize << k) <= length)
        .count();
    let mut expected: Vec<Vec<i8>> = (0..1usize << slots)
        .map(|mask| {
            let eps: Vec<i8> = (0..slots)
                .map(|k| if mask >> k & 1 == 1 { 1 } else { -1 })
                .collect();
            eps_prefix(&eps, length)
        })
        .collect();
    expected.sort();
    report.check_eq("count", expected.len(), survivors.len());
    for (i, s) in survivors.iter().enumerate() {
        if expected.binary_search(s).is_err() {
            report.fail("pattern", i, 0, "sign pattern", format!("{s:?}"));
        }
        if length >= 2 && !uniqueness_check(s)?.passed() {
            report.fail("check", i, 0, "pass", format!("{s:?}"));
        }
    }
    Ok(report)
}
