use crate::error::{guard, Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

pub const MAX_SERIES_ORDER: usize = 1 << 14;

/// A power series over the rationals known modulo `x^order`.
///
/// Binary operations on series of different orders return a result of the
/// smaller order, which is all that is determined.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<BigRational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeriesOp {
    Add,
    Mul,
    /// `1 / b`; the first operand is ignored.
    InvB,
    Div,
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); order],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, BigRational::one())
    }

    /// `c x^exp`, or zero when `exp >= order`.
    pub fn monomial(order: usize, exp: u64, c: BigRational) -> Self {
        let mut s = Self::zero(order);
        if (exp as u128) < order as u128 {
            s.coeffs[exp as usize] = c;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        Self { coeffs }
    }

    pub fn from_ints(order: usize, coeffs: impl IntoIterator<Item = BigInt>) -> Self {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = BigRational::from_integer(c);
        }
        s
    }

    /// `sum_k f(k) x^k` below `x^order`.
    pub fn from_fn(order: usize, f: impl Fn(usize) -> i64) -> Self {
        Self::from_ints(order, (0..order).map(|k| BigInt::from(f(k))))
    }

    /// `sum x^e` over the given exponents below `x^order`.
    pub fn sparse_ones(order: usize, exps: impl IntoIterator<Item = u64>) -> Self {
        let mut s = Self::zero(order);
        for e in exps {
            if (e as u128) < order as u128 {
                s.coeffs[e as usize] += BigRational::one();
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self {
            coeffs: self.coeffs[..order.min(self.order())].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Exponents of the nonzero coefficients.
    pub fn support(&self) -> Vec<usize> {
        (0..self.order()).filter(|&k| !self.coeffs[k].is_zero()).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self {
            coeffs: (0..n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self {
            coeffs: (0..n).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Truncated product; zero coefficients of either side are skipped.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![BigRational::zero(); n];
        let rhs: Vec<(usize, &BigRational)> = other.coeffs[..n]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for (i, a) in self.coeffs[..n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &(j, b) in &rhs {
                if i + j >= n {
                    break;
                }
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.order();
        if n == 0 {
            return Ok(Self::zero(0));
        }
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NonUnit);
        }
        let inv0 = c0.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc += a * &out[k - j];
                }
            }
            out.push(-acc * &inv0);
        }
        Ok(Self { coeffs: out })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Coefficients as `"p/q"` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rational_string).collect()
    }
}

pub(crate) fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Exact arithmetic on two series of the same order.
pub fn series_arith(a: &TruncSeries, b: &TruncSeries, op: SeriesOp) -> Result<TruncSeries> {
    guard("series order", a.order() as u64, MAX_SERIES_ORDER as u64)?;
    if a.order() != b.order() {
        return Err(Error::SizeMismatch {
            left: a.order(),
            right: b.order(),
        });
    }
    match op {
        SeriesOp::Add => Ok(a.add(b)),
        SeriesOp::Mul => Ok(a.mul(b)),
        SeriesOp::InvB => b.inv(),
        SeriesOp::Div => a.div(b),
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} + O(x^{})", self.order())
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigRational::zero();
            let abs = if neg { -c } else { c.clone() };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            first = false;
            let unit = abs.is_one();
            match k {
                0 => write!(f, "{abs}")?,
                1 if unit => f.write_str("x")?,
                1 => write!(f, "{abs}*x")?,
                _ if unit => write!(f, "x^{k}")?,
                _ => write!(f, "{abs}*x^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for TruncSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(rational_string))
    }
}

impl<'de> Deserialize<'de> for TruncSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        let coeffs = raw
            .iter()
            .map(|s| BigRational::from_str(s).map_err(D::Error::custom))
            .collect::<std::result::Result<_, _>>()?;
        Ok(Self { coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn geometric_series() {
        for order in [1, 2, 17, 100] {
            let one_minus_x = TruncSeries::from_fn(order, |k| match k {
                0 => 1,
                1 => -1,
                _ => 0,
            });
            let geo = TruncSeries::from_fn(order, |_| 1);
            let prod = series_arith(&one_minus_x, &geo, SeriesOp::Mul).unwrap();
            assert_eq!(prod, TruncSeries::one(order));
            assert_eq!(series_arith(&geo, &one_minus_x, SeriesOp::InvB).unwrap(), geo);
        }
    }

    #[test]
    fn shifted_mu_times_x() {
        let order = 300;
        let g = TruncSeries::from_fn(order, |k| crate::seq::mu(k as u64));
        let x = TruncSeries::monomial(order, 1, q(1, 1));
        let target = TruncSeries::sparse_ones(order, (0..10).map(|k| 1u64 << k));
        assert_eq!(g.mul(&x), target);
    }

    #[test]
    fn non_unit_and_mismatch() {
        let x = TruncSeries::monomial(4, 1, q(1, 1));
        assert_eq!(x.inv().unwrap_err(), Error::NonUnit);
        assert_eq!(
            series_arith(&x, &x, SeriesOp::Div).unwrap_err(),
            Error::NonUnit
        );
        assert!(matches!(
            series_arith(&x, &TruncSeries::one(5), SeriesOp::Add),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let s = TruncSeries::from_coeffs(vec![q(1, 1), q(-2, 3), q(0, 1)]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"["1/1","-2/3","0/1"]"#);
        let back: TruncSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert_eq!(s.to_string(), "1 - 2/3*x");
    }

    fn series(order: usize) -> impl Strategy<Value = TruncSeries> {
        proptest::collection::vec((-5i64..=5, 1i64..=4), order)
            .prop_map(|v| TruncSeries::from_coeffs(v.into_iter().map(|(p, d)| q(p, d)).collect()))
    }

    proptest! {
        #[test]
        fn inverse_is_two_sided(mut a in series(12), c in 1i64..4) {
            a.coeffs[0] = q(c, 1);
            let inv = a.inv().unwrap();
            prop_assert_eq!(a.mul(&inv), TruncSeries::one(12));
            prop_assert_eq!(inv.mul(&a), TruncSeries::one(12));
        }

        #[test]
        fn product_is_commutative_and_distributive(a in series(10), b in series(10), c in series(10)) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }
    }
}
