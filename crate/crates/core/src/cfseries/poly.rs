use super::series::TruncSeries;
use crate::error::{guard, Error, Result};
use crate::report::VerifyReport;
use crate::seq::{fold_word, fold_word_len, FoldLetter, FoldWord};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Number of variables `x_1 .. x_6` a [`MultiPoly`] can carry.
pub const MAX_VARS: usize = 6;

/// Exponents of `x_1 .. x_6`.
pub type Exponents = [u16; MAX_VARS];

/// Sparse polynomial in `x_1 .. x_6` with integer coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Exponents, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(BigInt::from(c), [0; MAX_VARS])
    }

    pub fn monomial(c: BigInt, exps: Exponents) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { terms }
    }

    /// `sign * x_var` for `1 <= var <= 6`.
    pub fn var(var: u32, sign: i64) -> Self {
        assert!((1..=MAX_VARS as u32).contains(&var), "variable x{var} out of range");
        let mut e = [0; MAX_VARS];
        e[var as usize - 1] = 1;
        Self::monomial(BigInt::from(sign), e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate(&mut self, e: Exponents, c: BigInt) {
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = [0u16; MAX_VARS];
                for k in 0..MAX_VARS {
                    e[k] = ea[k].checked_add(eb[k]).expect("exponent overflow");
                }
                out.accumulate(e, ca * cb);
            }
        }
        out
    }

    /// Substitutes `x_v -> x^exp(v)` and truncates at `x^order`.
    pub fn to_series(&self, order: usize, exp: impl Fn(u32) -> u64) -> TruncSeries {
        let mut coeffs = vec![BigInt::zero(); order];
        for (e, c) in &self.terms {
            let total = e.iter().enumerate().fold(0u64, |acc, (k, &p)| {
                acc.saturating_add(exp(k as u32 + 1).saturating_mul(u64::from(p)))
            });
            if (total as u128) < order as u128 {
                coeffs[total as usize] += c;
            }
        }
        TruncSeries::from_ints(order, coeffs)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (idx == 0, neg) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            let abs = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(k, &p)| {
                    if p == 1 {
                        format!("x{}", k + 1)
                    } else {
                        format!("x{}^{p}", k + 1)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The operations a [`Mat2`] needs from its entries.
pub trait Ring: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl Ring for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero()
    }
    fn one_like(&self) -> Self {
        MultiPoly::one()
    }
    fn add(&self, other: &Self) -> Self {
        MultiPoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        MultiPoly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        MultiPoly::mul(self, other)
    }
}

impl Ring for TruncSeries {
    fn zero_like(&self) -> Self {
        TruncSeries::zero(self.order())
    }
    fn one_like(&self) -> Self {
        TruncSeries::one(self.order())
    }
    fn add(&self, other: &Self) -> Self {
        TruncSeries::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        TruncSeries::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        TruncSeries::mul(self, other)
    }
}

/// A 2 x 2 matrix `[[m00, m01], [m10, m11]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2<T> {
    pub m: [[T; 2]; 2],
}

impl<T: Ring> Mat2<T> {
    pub fn new(m00: T, m01: T, m10: T, m11: T) -> Self {
        Self {
            m: [[m00, m01], [m10, m11]],
        }
    }

    pub fn identity(like: &T) -> Self {
        Self::new(like.one_like(), like.zero_like(), like.zero_like(), like.one_like())
    }

    /// `[[0, u], [1, 1]]`
    pub fn letter(u: T) -> Self {
        Self::new(u.zero_like(), u.clone(), u.one_like(), u.one_like())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let e = |i: usize, j: usize| self.m[i][0].mul(&o.m[0][j]).add(&self.m[i][1].mul(&o.m[1][j]));
        Self::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    /// `self * [[0, u], [1, 1]]` without a full product.
    pub fn push_letter(&self, u: &T) -> Self {
        let [[a, b], [c, d]] = &self.m;
        Self::new(b.clone(), a.mul(u).add(b), d.clone(), c.mul(u).add(d))
    }

    pub fn det(&self) -> T {
        self.m[0][0].mul(&self.m[1][1]).sub(&self.m[0][1].mul(&self.m[1][0]))
    }
}

/// Longest word accepted by the word-matrix products.
pub const MAX_WORD_LEN: u64 = 2 * ((1 << 12) - 1);

fn check_word(u: &FoldWord) -> Result<()> {
    guard("word length", u.len() as u64, MAX_WORD_LEN)
}

fn letter_poly(l: &FoldLetter) -> MultiPoly {
    MultiPoly::var(l.var, i64::from(l.sign))
}

/// `M(U)`, the product of `[[0, u], [1, 1]]` over the letters of `U`, as
/// polynomials in `x_1 .. x_6`.
pub fn word_matrix(u: &FoldWord) -> Result<Mat2<MultiPoly>> {
    check_word(u)?;
    guard("variable index", u64::from(u.max_var()), MAX_VARS as u64)?;
    let mut acc = Mat2::identity(&MultiPoly::one());
    for l in &u.letters {
        acc = acc.push_letter(&letter_poly(l));
    }
    Ok(acc)
}

/// `M(U)` with `x_v` replaced by `x^exp(v)`, truncated at `x^order`.
pub fn word_matrix_series(
    u: &FoldWord,
    order: usize,
    exp: impl Fn(u32) -> u64,
) -> Result<Mat2<TruncSeries>> {
    check_word(u)?;
    guard("series order", order as u64, super::series::MAX_SERIES_ORDER as u64)?;
    let mut acc = Mat2::identity(&TruncSeries::one(order));
    for l in &u.letters {
        let sign = BigRational::from_integer(BigInt::from(l.sign));
        let letter = TruncSeries::monomial(order, exp(l.var), sign);
        acc = acc.push_letter(&letter);
    }
    Ok(acc)
}

/// `prod_{i=1}^{j} x_i^(2^(j-i))`
fn x_term(j: usize) -> MultiPoly {
    let mut e = [0u16; MAX_VARS];
    for i in 1..=j {
        e[i - 1] = 1 << (j - i);
    }
    MultiPoly::monomial(BigInt::one(), e)
}

/// `(X_k, X~_k)`: `X_k = 1 + sum_{j<=k} prod_{i<=j} x_i^(2^(j-i))`, and `X~_k`
/// is `X_k` with the sign of its last term flipped.
pub fn x_polys(k: usize) -> Result<(MultiPoly, MultiPoly)> {
    guard("X level", k as u64, MAX_VARS as u64)?;
    let mut base = MultiPoly::one();
    for j in 1..k {
        base = base.add(&x_term(j));
    }
    if k == 0 {
        return Ok((base.clone(), base));
    }
    let last = x_term(k);
    Ok((base.add(&last), base.sub(&last)))
}

pub const MAX_LEMMA_LEVEL: usize = 5;

fn compare(report: &mut VerifyReport, check: &str, i: usize, j: usize, want: &MultiPoly, got: &MultiPoly) {
    if want != got {
        report.fail(check, i, j, want, got);
    }
}

fn compare_mat(report: &mut VerifyReport, check: &str, want: &Mat2<MultiPoly>, got: &Mat2<MultiPoly>) {
    for i in 0..2 {
        for j in 0..2 {
            compare(report, check, i, j, &want.m[i][j], &got.m[i][j]);
        }
    }
}

/// The closed forms of `M(W_m)`, `M(reverse W_m)` and `M(1 W_m)` for
/// `1 <= m <= n`, the recursions linking `X_m`, `X~_m`, `X_{m+1}`,
/// `X~_{m+1}`, and the determinant of `M(W_m)`.
pub fn verify_lemma5(n: usize) -> Result<VerifyReport> {
    if n == 0 {
        return Err(Error::InvalidInput("level must be at least 1".into()));
    }
    guard("lemma level", n as u64, MAX_LEMMA_LEVEL as u64)?;
    let mut report = VerifyReport::new("lemma5", n);
    let one = MultiPoly::one();
    for m in 1..=n {
        let (xm, xtm) = x_polys(m)?;
        let (xp, _) = x_polys(m - 1)?;
        let xp2 = xp.mul(&xp);
        let w = fold_word(m as u32)?;

        let mw = word_matrix(&w)?;
        let want = Mat2::new(xtm.sub(&xp2), one.sub(&xm), xp2.clone(), xm.clone());
        compare_mat(&mut report, &format!("M(W{m})"), &want, &mw);

        let mwr = word_matrix(&w.reversed())?;
        let want = Mat2::new(xm.sub(&xp2), one.sub(&xtm), xp2.clone(), xtm.clone());
        compare_mat(&mut report, &format!("M(rev W{m})"), &want, &mwr);

        let lead = Mat2::letter(one.clone()).mul(&mw);
        let want = Mat2::new(xp2.clone(), xm.clone(), xtm.clone(), one.clone());
        compare_mat(&mut report, &format!("M(1 W{m})"), &want, &lead);
        // P_{2(2^m - 1)} / Q_{2(2^m - 1)} = X_m / 1
        compare(&mut report, &format!("P_{}", fold_word_len(m as u32)), 0, 1, &xm, &lead.m[0][1]);
        compare(&mut report, &format!("Q_{}", fold_word_len(m as u32)), 1, 1, &one, &lead.m[1][1]);

        let det = w
            .letters
            .iter()
            .fold(MultiPoly::one(), |acc, l| acc.mul(&letter_poly(l).neg()));
        compare(&mut report, &format!("det M(W{m})"), 0, 0, &det, &mw.det());

        if m < MAX_VARS {
            let (xn, xtn) = x_polys(m + 1)?;
            let inner = xp2.sub(&xm.mul(&xtm));
            let step = MultiPoly::var(m as u32 + 1, 1).mul(&inner);
            compare(&mut report, &format!("X{m}+..=X{}", m + 1), 0, 0, &xn, &xm.add(&step));
            compare(&mut report, &format!("X{m}-..=Xt{}", m + 1), 0, 0, &xtn, &xm.sub(&step));
        }
    }
    Ok(report)
}
