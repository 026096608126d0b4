//! Recursively defined sign sequences and the folding words `W_k`.
//!
//! Every evaluator recurses on the binary expansion of its index, so the
//! recursion depth is bounded by 64 for `u64` indices.

use crate::binom2::catalan_is_odd;
use crate::error::{guard, Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// `s_n` for `n >= -1`: `s_{-1} = 0`, `s_0 = 1`, `s_{2i} = (-1)^i s_i`,
/// `s_{2i+1} = s_i`.
pub fn s(n: i64) -> i64 {
    match n {
        -1 => 0,
        n if n < -1 => panic!("s is defined for n >= -1, got {n}"),
        n => s_nonneg(n as u64),
    }
}

fn s_nonneg(mut n: u64) -> i64 {
    let mut sign = 1;
    while n > 0 {
        if n & 1 == 0 && (n >> 1) & 1 == 1 {
            sign = -sign;
        }
        n >>= 1;
    }
    sign
}

/// Number of occurrences of the digit pattern `10` in the binary expansion
/// of `n` (bounded blocks of zeros).
pub fn b0(n: u64) -> u32 {
    ((n >> 1) & !n).count_ones()
}

/// `1` iff `n + 1` is a power of two; `x * sum mu_n x^n = sum x^(2^k)`.
pub fn mu(n: u64) -> i64 {
    i64::from(catalan_is_odd(n).value())
}

/// `s~_{2i} = (-1)^i`, `s~_{2i+1} = s~_i`.
pub fn s_tilde(mut n: u64) -> i64 {
    while n & 1 == 1 {
        n >>= 1;
    }
    if (n >> 1) & 1 == 1 {
        -1
    } else {
        1
    }
}

/// `t~_0 = 1`, `t~_{2i+1} = t~_i`, `t~_{4i} = (-1)^i t~_{2i}`,
/// `t~_{4i+2} = t~_{2i}`.
pub fn t_tilde(mut n: u64) -> i64 {
    let mut sign = 1;
    while n > 0 {
        if n & 1 == 1 {
            n >>= 1;
        } else if n & 3 == 0 {
            let i = n >> 2;
            if i & 1 == 1 {
                sign = -sign;
            }
            n >>= 1;
        } else {
            n = (n - 2) >> 1;
        }
    }
    sign
}

/// `d_n = (s_n - s_{n-2}) / s_{n-1}` for `n >= 1`.
pub fn d(n: i64) -> i64 {
    assert!(n >= 1, "d is defined for n >= 1, got {n}");
    let den = s(n - 1);
    let num = s(n) - s(n - 2);
    assert!(den != 0 && num % den == 0, "inexact quotient in d({n})");
    num / den
}

/// Numerator signs of the continued fraction of `sum x^(2^k)` when every
/// variable of `W_inf` is set to `x`.
pub fn example1_sign(n: u64) -> i64 {
    assert!(n >= 1, "example1 signs are indexed from 1");
    match n % 8 {
        1 | 2 | 5 | 6 => {
            let i = (n - 1) / 4;
            let w = if i % 2 == 0 { -1 } else { 1 };
            if n % 4 == 1 {
                w
            } else {
                -w
            }
        }
        3 | 4 => {
            let i = n / 8;
            let w = if i % 2 == 0 { 1 } else { -1 };
            if n % 8 == 3 {
                w
            } else {
                -w
            }
        }
        7 => example1_sign(4 * (n / 8) + 3),
        _ => -example1_sign(4 * (n / 8 - 1) + 3),
    }
}

/// Which of the sign sequences to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeqKind {
    S,
    STilde,
    TTilde,
    Mu,
    D,
    Alt,
    Example1,
    B0,
}

impl SeqKind {
    /// First valid index; `D` and `Example1` start at one.
    pub fn first_index(self) -> i64 {
        match self {
            SeqKind::D | SeqKind::Example1 => 1,
            _ => 0,
        }
    }

    pub fn eval(self, n: i64) -> i64 {
        match self {
            SeqKind::S => s(n),
            SeqKind::STilde => s_tilde(to_index(n)),
            SeqKind::TTilde => t_tilde(to_index(n)),
            SeqKind::Mu => mu(to_index(n)),
            SeqKind::D => d(n),
            SeqKind::Alt => {
                if n.rem_euclid(2) == 0 {
                    1
                } else {
                    -1
                }
            }
            SeqKind::Example1 => example1_sign(to_index(n)),
            SeqKind::B0 => i64::from(b0(to_index(n))),
        }
    }
}

fn to_index(n: i64) -> u64 {
    u64::try_from(n).unwrap_or_else(|_| panic!("negative index {n}"))
}

/// A sign sequence with a precomputed prefix.
///
/// Lookups inside the prefix read the table; lookups past it fall back to
/// the recursive evaluator. The table is immutable after construction and
/// can be shared between threads.
#[derive(Debug, Clone)]
pub struct SignSequence {
    kind: SeqKind,
    table: Vec<i64>,
}

impl SignSequence {
    pub const MAX_MEMO: u64 = 1 << 24;

    pub fn new(kind: SeqKind, bound: usize) -> Result<Self> {
        guard("memo bound", bound as u64, Self::MAX_MEMO)?;
        let start = kind.first_index();
        let table = (0..bound as i64).map(|i| kind.eval(start + i)).collect();
        Ok(Self { kind, table })
    }

    pub fn kind(&self) -> SeqKind {
        self.kind
    }

    pub fn get(&self, n: i64) -> i64 {
        let offset = n - self.kind.first_index();
        match usize::try_from(offset).ok().and_then(|o| self.table.get(o)) {
            Some(&v) => v,
            None => self.kind.eval(n),
        }
    }

    /// The first `count` terms, starting at the kind's first index.
    pub fn prefix(&self, count: usize) -> Vec<i64> {
        let start = self.kind.first_index();
        (0..count as i64).map(|i| self.get(start + i)).collect()
    }
}

/// A letter `sign * x_var` of a folding word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FoldLetter {
    pub var: u32,
    pub sign: i8,
}

impl FoldLetter {
    pub fn new(var: u32, sign: i8) -> Self {
        debug_assert!(var >= 1 && (sign == 1 || sign == -1));
        Self { var, sign }
    }
}

impl fmt::Display for FoldLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-x{}", self.var)
        } else {
            write!(f, "x{}", self.var)
        }
    }
}

/// A finite word over `{+-x_1, +-x_2, ...}`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FoldWord {
    pub letters: Vec<FoldLetter>,
}

impl FoldWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn reversed(&self) -> FoldWord {
        FoldWord {
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    pub fn max_var(&self) -> u32 {
        self.letters.iter().map(|l| l.var).max().unwrap_or(0)
    }
}

impl fmt::Display for FoldWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

pub const MAX_WORD_LEVEL: u32 = 20;

/// Length of `W_k`.
pub fn fold_word_len(k: u32) -> u64 {
    2 * ((1u64 << k) - 1)
}

/// `W_1 = (-x_1) x_1`, `W_k = W_{k-1} x_k (-x_k) reverse(W_{k-1})`.
pub fn fold_word(k: u32) -> Result<FoldWord> {
    if k == 0 {
        return Err(Error::InvalidInput("word level must be at least 1".into()));
    }
    guard("word level", u64::from(k), u64::from(MAX_WORD_LEVEL))?;
    let mut letters = vec![FoldLetter::new(1, -1), FoldLetter::new(1, 1)];
    for level in 2..=k {
        let prev = letters.clone();
        letters.push(FoldLetter::new(level, 1));
        letters.push(FoldLetter::new(level, -1));
        letters.extend(prev.into_iter().rev());
    }
    Ok(FoldWord { letters })
}

/// The letter `w_n` of `W_inf` (1-based), without building any word.
pub fn fold_stream(n: u64) -> FoldLetter {
    assert!(n >= 1, "letters of W_inf are indexed from 1");
    // Smallest k with n <= |W_k|.
    let mut k = 1u32;
    while fold_word_len(k) < n {
        k += 1;
    }
    let mut pos = n;
    loop {
        if k == 1 {
            return FoldLetter::new(1, if pos == 1 { -1 } else { 1 });
        }
        let prev = fold_word_len(k - 1);
        if pos <= prev {
            k -= 1;
        } else if pos == prev + 1 {
            return FoldLetter::new(k, 1);
        } else if pos == prev + 2 {
            return FoldLetter::new(k, -1);
        } else {
            pos = prev - (pos - prev - 2) + 1;
            k -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s_recursive(n: u64) -> i64 {
        if n == 0 {
            1
        } else if n % 2 == 1 {
            s_recursive(n / 2)
        } else {
            let i = n / 2;
            let sign = if i % 2 == 0 { 1 } else { -1 };
            sign * s_recursive(i)
        }
    }

    fn s_tilde_recursive(n: u64) -> i64 {
        if n % 2 == 0 {
            if (n / 2) % 2 == 0 {
                1
            } else {
                -1
            }
        } else {
            s_tilde_recursive(n / 2)
        }
    }

    fn t_tilde_recursive(n: u64) -> i64 {
        if n == 0 {
            1
        } else if n % 2 == 1 {
            t_tilde_recursive(n / 2)
        } else if n % 4 == 0 {
            let i = n / 4;
            let sign = if i % 2 == 0 { 1 } else { -1 };
            sign * t_tilde_recursive(n / 2)
        } else {
            t_tilde_recursive((n - 2) / 2)
        }
    }

    fn example1_recursive(n: u64) -> i64 {
        let pow = |i: u64| if i % 2 == 0 { 1 } else { -1 };
        match n % 4 {
            1 => pow((n - 1) / 4 + 1),
            2 => -pow((n - 2) / 4 + 1),
            _ => match n % 8 {
                3 => pow((n - 3) / 8),
                4 => -pow((n - 4) / 8),
                7 => example1_recursive(4 * ((n - 7) / 8) + 3),
                _ => -example1_recursive(4 * ((n - 8) / 8) + 3),
            },
        }
    }

    #[test]
    fn s_examples() {
        let got: Vec<i64> = (0..6).map(s).collect();
        assert_eq!(got, vec![1, 1, -1, 1, -1, -1]);
        assert_eq!(s(-1), 0);
        assert_eq!(s(720), -1);
        assert_eq!(b0(720), 3);
        assert_eq!(b0(0), 0);
        assert_eq!(b0(5), 1);
        assert_eq!(s(5), -1);
    }

    #[test]
    fn s_matches_recursion_and_closed_form() {
        for n in 0..(1u64 << 16) {
            let r = s_recursive(n);
            assert_eq!(s(n as i64), r, "n={n}");
            let closed = if b0(n) % 2 == 0 { 1 } else { -1 };
            assert_eq!(closed, r);
        }
    }

    #[test]
    fn mu_examples() {
        let got: Vec<i64> = (0..8).map(mu).collect();
        assert_eq!(got, vec![1, 1, 0, 1, 0, 0, 0, 1]);
        assert_eq!(mu((1 << 10) - 1), 1);
        assert_eq!(mu(1 << 10), 0);
    }

    #[test]
    fn s_tilde_examples() {
        let got: Vec<i64> = (0..8).map(s_tilde).collect();
        assert_eq!(got, vec![1, 1, -1, 1, 1, -1, -1, 1]);
        assert_eq!(s_tilde(2), -1);
        assert_eq!(s_tilde(15), 1);
        for n in 0..(1 << 14) {
            assert_eq!(s_tilde(n), s_tilde_recursive(n));
        }
    }

    #[test]
    fn t_tilde_examples() {
        assert_eq!(t_tilde(0), 1);
        assert_eq!(t_tilde(2), 1);
        assert_eq!(t_tilde(4), -1);
        for n in 0..(1 << 14) {
            assert_eq!(t_tilde(n), t_tilde_recursive(n), "n={n}");
        }
        for i in 0..(1u64 << 12) {
            assert_eq!(t_tilde(2 * i), s(i as i64));
        }
    }

    #[test]
    fn d_examples() {
        let got: Vec<i64> = (1..=5).map(d).collect();
        assert_eq!(got, vec![1, -2, 0, 0, 2]);
        for n in 2..=4096 {
            assert!(matches!(d(n), -2 | 0 | 2), "d({n}) = {}", d(n));
        }
    }

    #[test]
    fn example1_examples() {
        assert_eq!(example1_sign(1), -1);
        assert_eq!(example1_sign(2), 1);
        let got: Vec<i64> = (1..=6).map(example1_sign).collect();
        assert_eq!(got, vec![-1, 1, 1, -1, 1, -1]);
        for n in 1..(1 << 14) {
            assert_eq!(example1_sign(n), example1_recursive(n), "n={n}");
            assert_eq!(example1_sign(n), i64::from(fold_stream(n).sign), "n={n}");
        }
    }

    #[test]
    fn fold_word_examples() {
        let w1 = fold_word(1).unwrap();
        assert_eq!(w1.letters, vec![FoldLetter::new(1, -1), FoldLetter::new(1, 1)]);
        let w2 = fold_word(2).unwrap();
        let signs: Vec<i8> = w2.letters.iter().map(|l| l.sign).collect();
        let vars: Vec<u32> = w2.letters.iter().map(|l| l.var).collect();
        assert_eq!(signs, vec![-1, 1, 1, -1, 1, -1]);
        assert_eq!(vars, vec![1, 1, 2, 2, 1, 1]);
        let w3 = fold_word(3).unwrap();
        assert_eq!(
            w3.to_string(),
            "-x1 x1 x2 -x2 x1 -x1 x3 -x3 -x1 x1 -x2 x2 x1 -x1"
        );
        assert!(fold_word(0).is_err());
        assert!(fold_word(21).is_err());
    }

    #[test]
    fn fold_word_prefix_and_length() {
        let mut prev = fold_word(1).unwrap();
        for k in 2..=12 {
            let w = fold_word(k).unwrap();
            assert_eq!(w.len() as u64, fold_word_len(k));
            assert_eq!(&w.letters[..prev.len()], &prev.letters[..]);
            // W_k = W_{k-1} x_k (-x_k) reverse(W_{k-1})
            let tail = FoldWord {
                letters: w.letters[prev.len() + 2..].to_vec(),
            };
            assert_eq!(tail.reversed(), prev);
            prev = w;
        }
    }

    #[test]
    fn stream_matches_word() {
        assert_eq!(fold_stream(3), FoldLetter::new(2, 1));
        assert_eq!(fold_stream(7), FoldLetter::new(3, 1));
        let w = fold_word(10).unwrap();
        for (i, l) in w.letters.iter().enumerate() {
            assert_eq!(fold_stream(i as u64 + 1), *l);
        }
    }

    #[test]
    fn doubling_law() {
        for n in 1..12 {
            let half = 1usize << n;
            let prefix: Vec<i64> = (0..(2 * half) as i64).map(s).collect();
            let (alpha, omega) = prefix.split_at(half);
            let longer: Vec<i64> = (0..(4 * half) as i64).map(s).collect();
            let mut expected = alpha.to_vec();
            expected.extend_from_slice(omega);
            expected.extend(alpha.iter().map(|x| -x));
            expected.extend_from_slice(omega);
            assert_eq!(longer, expected, "n={n}");
        }
    }

    #[test]
    fn shift_law() {
        for n in 0i64..40 {
            if n < (1i64 << n.min(62)) && n + 1 < 62 {
                assert_eq!(s((1i64 << (n + 1)) + n), -s(n), "n={n}");
            }
        }
    }

    #[test]
    fn mu_is_catalan_parity() {
        for n in 0..(1u64 << 14) {
            assert_eq!(mu(n), i64::from(catalan_is_odd(n).value()));
        }
    }

    #[test]
    fn memo_agrees_with_evaluator() {
        for kind in [
            SeqKind::S,
            SeqKind::STilde,
            SeqKind::TTilde,
            SeqKind::Mu,
            SeqKind::D,
            SeqKind::Alt,
            SeqKind::Example1,
            SeqKind::B0,
        ] {
            let table = SignSequence::new(kind, 100).unwrap();
            let start = kind.first_index();
            for n in start..start + 300 {
                assert_eq!(table.get(n), kind.eval(n));
            }
        }
        let s_seq = SignSequence::new(SeqKind::S, 6).unwrap();
        assert_eq!(s_seq.prefix(6), vec![1, 1, -1, 1, -1, -1]);
        assert_eq!(s_seq.get(-1), 0);
    }
}
