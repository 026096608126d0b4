//! Limits of continued fractions `b_0 + a_1/(b_1 + a_2/(b_2 + ...))` with
//! polynomial partial numerators and denominators.
//!
//! Convergents follow `P_k = b_k P_{k-1} + a_k P_{k-2}` (same for `Q`) on
//! integer polynomials truncated at `x^order`. Since
//! `P_k Q_{k-1} - P_{k-1} Q_k = +-a_1 ... a_k`, two consecutive convergents
//! with unit denominators agree up to the summed valuation of the
//! numerators, which is tracked while stepping.

use super::series::{TruncSeries, MAX_SERIES_ORDER};
use crate::error::{guard, Error, Result};
use crate::report::VerifyReport;
use crate::seq::{self, fold_stream};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Step budget of [`cf_limit`].
pub const MAX_CF_STEPS: usize = 10 * 2 * ((1 << 12) - 1);

/// Sparse polynomial with integer coefficients. Exponents may exceed any
/// truncation order; such terms vanish after truncation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparsePoly {
    terms: Vec<(u64, BigInt)>,
}

impl SparsePoly {
    pub fn new(terms: impl IntoIterator<Item = (u64, BigInt)>) -> Self {
        let mut terms: Vec<(u64, BigInt)> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by_key(|(e, _)| *e);
        Self { terms }
    }

    pub fn monomial(c: i64, exp: u64) -> Self {
        Self::new([(exp, BigInt::from(c))])
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    pub fn terms(&self) -> &[(u64, BigInt)] {
        &self.terms
    }

    /// Lowest exponent, `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<u64> {
        self.terms.first().map(|(e, _)| *e)
    }

    /// `self * p` truncated at `p.len()`.
    fn mul_dense(&self, p: &[BigInt]) -> Vec<BigInt> {
        let n = p.len();
        let mut out = vec![BigInt::zero(); n];
        for (e, c) in &self.terms {
            let Ok(e) = usize::try_from(*e) else { break };
            if e >= n {
                break;
            }
            for (slot, v) in out[e..].iter_mut().zip(p) {
                if !v.is_zero() {
                    *slot += c * v;
                }
            }
        }
        out
    }
}

/// One partial numerator `a_k` and denominator `b_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfTerm {
    pub num: SparsePoly,
    pub den: SparsePoly,
}

impl CfTerm {
    /// `a_k = sign x^exp`, `b_k = 1`.
    pub fn monomial(sign: i64, exp: u64) -> Self {
        Self {
            num: SparsePoly::monomial(sign, exp),
            den: SparsePoly::constant(1),
        }
    }
}

/// The convergents `P_k / Q_k` of a continued fraction, truncated at
/// `x^order`.
#[derive(Debug, Clone)]
pub struct Convergents {
    order: usize,
    prev: (Vec<BigInt>, Vec<BigInt>),
    cur: (Vec<BigInt>, Vec<BigInt>),
    steps: usize,
    /// Sum of the numerator valuations so far, saturating.
    agreement: u64,
    /// `(-1)^(k-1) a_1 ... a_k`, if tracked.
    numerator_product: Option<SparsePoly>,
}

fn dense_from_sparse(p: &SparsePoly, order: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); order];
    for (e, c) in p.terms() {
        if (*e as u128) < order as u128 {
            out[*e as usize] += c;
        }
    }
    out
}

impl Convergents {
    /// Starts from `P_{-1} = 1, Q_{-1} = 0, P_0 = b_0, Q_0 = 1`.
    pub fn new(b0: &SparsePoly, order: usize) -> Result<Self> {
        guard("series order", order as u64, MAX_SERIES_ORDER as u64)?;
        let mut one = vec![BigInt::zero(); order];
        if order > 0 {
            one[0] = BigInt::one();
        }
        Ok(Self {
            order,
            prev: (one.clone(), vec![BigInt::zero(); order]),
            cur: (dense_from_sparse(b0, order), one),
            steps: 0,
            agreement: 0,
            numerator_product: None,
        })
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn p(&self) -> &[BigInt] {
        &self.cur.0
    }

    pub fn q(&self) -> &[BigInt] {
        &self.cur.1
    }

    pub fn prev_p(&self) -> &[BigInt] {
        &self.prev.0
    }

    pub fn prev_q(&self) -> &[BigInt] {
        &self.prev.1
    }

    pub fn push(&mut self, term: &CfTerm) {
        let step = |cur: &[BigInt], prev: &[BigInt]| -> Vec<BigInt> {
            let mut next = term.den.mul_dense(cur);
            for (slot, v) in next.iter_mut().zip(term.num.mul_dense(prev)) {
                *slot += v;
            }
            next
        };
        let p = step(&self.cur.0, &self.prev.0);
        let q = step(&self.cur.1, &self.prev.1);
        self.prev = std::mem::replace(&mut self.cur, (p, q));
        self.steps += 1;
        self.agreement = self
            .agreement
            .saturating_add(term.num.valuation().unwrap_or(u64::MAX));
    }

    /// True once `P_k/Q_k` and `P_{k-1}/Q_{k-1}` provably agree to the full
    /// order: the tracked valuation bound is reached, both denominators are
    /// units, and `P_k Q_{k-1} - P_{k-1} Q_k` vanishes modulo `x^order`.
    pub fn stabilised(&self) -> bool {
        if self.steps == 0 || (self.agreement as u128) < self.order as u128 {
            return false;
        }
        if self.order == 0 {
            return true;
        }
        if self.cur.1[0].is_zero() || self.prev.1[0].is_zero() {
            return false;
        }
        let cross = sub(&mul(&self.cur.0, &self.prev.1), &mul(&self.prev.0, &self.cur.1));
        cross.iter().all(Zero::is_zero)
    }

    /// `P_k / Q_k` as a series.
    pub fn value(&self) -> Result<TruncSeries> {
        let (p, q) = &self.cur;
        if self.order == 0 {
            return Ok(TruncSeries::zero(0));
        }
        if q[0].is_one() || (-&q[0]).is_one() {
            let inv = inverse_unit(q);
            return Ok(TruncSeries::from_ints(self.order, mul(p, &inv)));
        }
        let ps = TruncSeries::from_ints(self.order, p.iter().cloned());
        let qs = TruncSeries::from_ints(self.order, q.iter().cloned());
        ps.div(&qs)
    }
}

/// The determinant of the convergent matrix: `P_k Q_{k-1} - P_{k-1} Q_k`.
pub fn convergent_cross(c: &Convergents) -> Vec<BigInt> {
    sub(&mul(c.p(), c.prev_q()), &mul(c.prev_p(), c.q()))
}

fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().min(b.len());
    let mut out = vec![BigInt::zero(); n];
    let rhs: Vec<(usize, &BigInt)> = b[..n].iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
    for (i, x) in a[..n].iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for &(j, y) in &rhs {
            if i + j >= n {
                break;
            }
            out[i + j] += x * y;
        }
    }
    out
}

fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Inverse of a series with constant term `+-1`, over the integers.
fn inverse_unit(q: &[BigInt]) -> Vec<BigInt> {
    let n = q.len();
    let c0 = q[0].clone();
    debug_assert!(c0.abs().is_one());
    let nz: Vec<(usize, &BigInt)> = q.iter().enumerate().skip(1).filter(|(_, v)| !v.is_zero()).collect();
    let mut out: Vec<BigInt> = Vec::with_capacity(n);
    out.push(c0.clone());
    for k in 1..n {
        let mut acc = BigInt::zero();
        for &(j, v) in &nz {
            if j > k {
                break;
            }
            acc += v * &out[k - j];
        }
        // c0 is its own inverse
        out.push(-acc * &c0);
    }
    out
}

/// The limit of `b_0 + a_1/(b_1 + a_2/(b_2 + ...))` modulo `x^order`.
///
/// Steps through `terms` until two consecutive convergents agree to the
/// full order, failing with [`Error::NoConvergence`] after
/// [`MAX_CF_STEPS`] terms or when `terms` runs out first.
pub fn cf_limit(
    b0: &SparsePoly,
    terms: impl IntoIterator<Item = CfTerm>,
    order: usize,
) -> Result<TruncSeries> {
    let mut c = Convergents::new(b0, order)?;
    for term in terms.into_iter().take(MAX_CF_STEPS) {
        c.push(&term);
        if c.stabilised() {
            return c.value();
        }
    }
    Err(Error::NoConvergence { steps: c.steps() })
}

/// The three substitutions of the folded continued fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Example {
    /// `x_i = x`, limit `sum x^(2^k)`.
    PowersOfTwo,
    /// `x_i = x^(1 + 3^(i-1))`, limit `sum x^(3^k)`.
    PowersOfThree,
    /// `x_i = x^(1 + (i-1) i!)`, limit `sum_{k>=1} x^(k!)`.
    Factorials,
}

impl Example {
    pub fn from_index(i: u32) -> Option<Self> {
        match i {
            1 => Some(Example::PowersOfTwo),
            2 => Some(Example::PowersOfThree),
            3 => Some(Example::Factorials),
            _ => None,
        }
    }

    pub fn index(self) -> u32 {
        match self {
            Example::PowersOfTwo => 1,
            Example::PowersOfThree => 2,
            Example::Factorials => 3,
        }
    }

    /// Exponent `e` with `x_var = x^e`, saturating.
    pub fn exponent(self, var: u32) -> u64 {
        match self {
            Example::PowersOfTwo => 1,
            Example::PowersOfThree => 3u64.saturating_pow(var - 1).saturating_add(1),
            Example::Factorials => {
                let fact = (1..=u64::from(var)).fold(1u64, |a, i| a.saturating_mul(i));
                fact.saturating_mul(u64::from(var - 1)).saturating_add(1)
            }
        }
    }

    /// Numerators `x, w_1, w_2, ...` of the fraction multiplied by `x`.
    pub fn terms(self) -> impl Iterator<Item = CfTerm> {
        std::iter::once(CfTerm::monomial(1, 1)).chain((1u64..).map(move |n| {
            let l = fold_stream(n);
            CfTerm::monomial(i64::from(l.sign), self.exponent(l.var))
        }))
    }

    /// The exponents of the closed-form limit below `order`.
    pub fn target_exponents(self, order: usize) -> Vec<u64> {
        let below = |e: u64| (e as u128) < order as u128;
        match self {
            Example::PowersOfTwo => (0..64).map(|k| 1u64 << k).take_while(|&e| below(e)).collect(),
            Example::PowersOfThree => (0..40).map(|k| 3u64.pow(k)).take_while(|&e| below(e)).collect(),
            Example::Factorials => (1..=20u64)
                .scan(1u64, |f, k| {
                    *f *= k;
                    Some(*f)
                })
                .take_while(|&e| below(e))
                .collect(),
        }
    }

    pub fn target(self, order: usize) -> TruncSeries {
        TruncSeries::sparse_ones(order, self.target_exponents(order))
    }

    pub fn limit(self, order: usize) -> Result<TruncSeries> {
        cf_limit(&SparsePoly::default(), self.terms(), order)
    }
}

/// The three example limits against their closed forms at `order`.
pub fn verify_thm1(order: usize) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("thm1", order);
    for ex in [Example::PowersOfTwo, Example::PowersOfThree, Example::Factorials] {
        let got = ex.limit(order)?;
        let want = ex.target(order);
        for k in 0..order {
            if got.coeff(k) != want.coeff(k) {
                report.fail(&format!("example {}", ex.index()), k, 0, want.coeff(k), got.coeff(k));
            }
        }
    }
    Ok(report)
}

/// Terms `x^2` over `1 - d_n x` following the leading `x / (1 - d_1 x)`.
pub fn jacobi_terms() -> impl Iterator<Item = CfTerm> {
    (1i64..).map(|n| {
        let num = if n == 1 {
            SparsePoly::monomial(1, 1)
        } else {
            SparsePoly::monomial(1, 2)
        };
        CfTerm {
            num,
            den: SparsePoly::new([(0, BigInt::one()), (1, BigInt::from(-seq::d(n)))]),
        }
    })
}

/// The Jacobi fraction with denominators `1 - d_n x` against `sum x^(2^k)`.
pub fn verify_jacobi_limit(order: usize) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("jacobi-cf", order);
    let got = cf_limit(&SparsePoly::default(), jacobi_terms(), order)?;
    let want = Example::PowersOfTwo.target(order);
    for k in 0..order {
        if got.coeff(k) != want.coeff(k) {
            report.fail("sum x^(2^k)", k, 0, want.coeff(k), got.coeff(k));
        }
    }
    Ok(report)
}

impl Convergents {
    /// Like [`Convergents::push`], also accumulating `(-1)^(k-1) a_1 ... a_k`.
    pub fn push_tracked(&mut self, term: &CfTerm) {
        let prod = match self.numerator_product.take() {
            None => term.num.clone(),
            Some(p) => sparse_mul(&p, &term.num, true),
        };
        self.numerator_product = Some(prod);
        self.push(term);
    }

    pub fn numerator_product(&self) -> Option<&SparsePoly> {
        self.numerator_product.as_ref()
    }
}

fn sparse_mul(a: &SparsePoly, b: &SparsePoly, negate: bool) -> SparsePoly {
    let mut out: Vec<(u64, BigInt)> = Vec::new();
    for (ea, ca) in a.terms() {
        for (eb, cb) in b.terms() {
            let c = ca * cb;
            out.push((ea.saturating_add(*eb), if negate { -c } else { c }));
        }
    }
    out.sort_by_key(|(e, _)| *e);
    let mut merged: Vec<(u64, BigInt)> = Vec::new();
    for (e, c) in out {
        match merged.last_mut() {
            Some((le, lc)) if *le == e => *lc += c,
            _ => merged.push((e, c)),
        }
    }
    SparsePoly::new(merged)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::example1_sign;

    #[test]
    fn example_numerators() {
        let ex1: Vec<CfTerm> = Example::PowersOfTwo.terms().take(7).collect();
        let signs: Vec<i64> = ex1
            .iter()
            .map(|t| i64::try_from(&t.num.terms()[0].1).unwrap())
            .collect();
        assert_eq!(signs, vec![1, -1, 1, 1, -1, 1, -1]);
        for (n, t) in ex1.iter().enumerate().skip(1) {
            assert_eq!(t.num.valuation(), Some(1));
            assert_eq!(signs[n], example1_sign(n as u64));
        }
        let ex2: Vec<u64> = Example::PowersOfThree
            .terms()
            .take(6)
            .map(|t| t.num.valuation().unwrap())
            .collect();
        assert_eq!(ex2, vec![1, 2, 2, 4, 4, 2]);
        let ex3: Vec<u64> = Example::Factorials
            .terms()
            .take(6)
            .map(|t| t.num.valuation().unwrap())
            .collect();
        assert_eq!(ex3, vec![1, 1, 1, 3, 3, 1]);
        assert_eq!(Example::Factorials.exponent(3), 13);
        assert_eq!(Example::Factorials.exponent(4), 73);
    }

    #[test]
    fn example_limits() {
        let s = Example::PowersOfTwo.limit(16).unwrap();
        assert_eq!(s.support(), vec![1, 2, 4, 8]);
        assert_eq!(Example::PowersOfThree.limit(250).unwrap().support(), vec![1, 3, 9, 27, 81, 243]);
        assert_eq!(
            Example::Factorials.limit(750).unwrap().support(),
            vec![1, 2, 6, 24, 120, 720]
        );
        assert_eq!(
            Example::PowersOfTwo.limit(600).unwrap(),
            Example::PowersOfTwo.target(600)
        );
    }

    #[test]
    fn convergent_division_order_16() {
        // P/Q after enough Example 1 steps, divided as series.
        let mut c = Convergents::new(&SparsePoly::default(), 16).unwrap();
        for t in Example::PowersOfTwo.terms().take(16) {
            c.push(&t);
        }
        let p = TruncSeries::from_ints(16, c.p().iter().cloned());
        let q = TruncSeries::from_ints(16, c.q().iter().cloned());
        let v = super::super::series::series_arith(&p, &q, super::super::series::SeriesOp::Div).unwrap();
        assert_eq!(v.support(), vec![1, 2, 4, 8]);
    }

    #[test]
    fn coherence_of_convergents() {
        let order = 128;
        let mut c = Convergents::new(&SparsePoly::default(), order).unwrap();
        for t in Example::PowersOfTwo.terms().take(100) {
            c.push_tracked(&t);
            let prod = c.numerator_product().unwrap();
            let want = dense_from_sparse(prod, order);
            // P_k Q_{k-1} - P_{k-1} Q_k = (-1)^(k-1) a_1 ... a_k
            assert_eq!(convergent_cross(&c), want, "k={}", c.steps());
        }
        assert_eq!(c.steps(), 100);
    }

    #[test]
    fn jacobi_form() {
        let r = verify_jacobi_limit(512).unwrap();
        assert!(r.pass, "{:?}", r.failures.first());
    }

    #[test]
    fn no_convergence_is_reported() {
        // Constant numerators never raise the agreement order.
        let terms = std::iter::repeat(CfTerm::monomial(1, 0));
        assert!(matches!(
            cf_limit(&SparsePoly::default(), terms, 8),
            Err(Error::NoConvergence { steps }) if steps == MAX_CF_STEPS
        ));
        let finite = Example::PowersOfTwo.terms().take(3);
        assert!(matches!(
            cf_limit(&SparsePoly::default(), finite, 8),
            Err(Error::NoConvergence { steps: 3 })
        ));
    }

    #[test]
    fn explicit_b0() {
        // 1 + x/1 with nothing after: the limit of the single term is 1 + x.
        let terms = vec![CfTerm::monomial(1, 1), CfTerm::monomial(1, 5)];
        let s = cf_limit(&SparsePoly::constant(1), terms, 4).unwrap();
        // 1 + x/(1 + x^5) = 1 + x mod x^4
        assert_eq!(s.support(), vec![0, 1]);
    }

    #[test]
    fn thm1_suite() {
        let r = verify_thm1(256).unwrap();
        assert!(r.pass, "{:?}", r.failures.first());
    }
}
