use crate::error::{Error, Result};
use crate::gf2sign::SmallMatrix;
use crate::report::VerifyReport;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense square matrix of exact rationals, row-major.
///
/// Products are computed on integer matrices after clearing denominators,
/// and skip zero entries of the left factor.
#[derive(Clone, PartialEq, Eq)]
pub struct BigMatrix {
    n: usize,
    data: Vec<BigRational>,
}

impl BigMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![BigRational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn from_int_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        Self::from_fn(n, |i, j| BigRational::from_integer(f(i, j)))
    }

    /// Builds a matrix from (possibly ragged) integer rows; missing entries
    /// are zero.
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert!(row.len() <= n, "row {i} longer than the matrix");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigRational::from_integer(v.into()));
            }
        }
        m
    }

    pub fn from_small(m: &SmallMatrix) -> Self {
        Self::from_int_fn(m.size(), |i, j| m.get(i, j).into())
    }

    /// Strictly lower triangular matrix with `f(i)` at `(i + 1, i)`.
    pub fn subdiagonal(n: usize, mut f: impl FnMut(usize) -> BigInt) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n.saturating_sub(1) {
            m.set(i + 1, i, BigRational::from_integer(f(i)));
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.n + j] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn leading(&self, k: usize) -> Self {
        assert!(k <= self.n);
        Self::from_fn(k, |i, j| self.get(i, j).clone())
    }

    fn same_size(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_size(other)?;
        Ok(Self {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_size(other)?;
        Ok(Self {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    /// Multiplies row `i` by `signs[i]` and column `j` by `signs[j]`.
    pub fn conjugate_signs(&self, signs: &[i8]) -> Self {
        assert_eq!(signs.len(), self.n);
        Self::from_fn(self.n, |i, j| {
            let v = self.get(i, j);
            if signs[i] * signs[j] < 0 {
                -v
            } else if signs[i] * signs[j] == 0 {
                BigRational::zero()
            } else {
                v.clone()
            }
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_size(other)?;
        let (a, da) = self.scaled();
        let (b, db) = other.scaled();
        let prod = IntMatrix::mul(&a, &b);
        Ok(prod.unscale(&(da * db)))
    }

    /// Integer matrix `A` and positive `d` with `self = A / d`.
    pub(crate) fn scaled(&self) -> (IntMatrix, BigInt) {
        let den = self
            .data
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let data = self
            .data
            .iter()
            .map(|v| v.numer() * (&den / v.denom()))
            .collect();
        (IntMatrix { n: self.n, data }, den)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|v| v.is_integer())
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_strictly_lower(&self) -> bool {
        self.is_lower_triangular() && (0..self.n).all(|i| self.get(i, i).is_zero())
    }

    pub fn is_unipotent_lower(&self) -> bool {
        self.is_lower_triangular() && (0..self.n).all(|i| self.get(i, i).is_one())
    }

    /// Entrywise reduction of an integer matrix to `{0, 1}`.
    pub fn mod2(&self) -> Result<SmallMatrix> {
        if !self.is_integral() {
            return Err(Error::InvalidInput(
                "only integer matrices reduce modulo 2".into(),
            ));
        }
        Ok(SmallMatrix::from_fn(self.n, |i, j| {
            i32::from(self.get(i, j).numer().is_odd())
        }))
    }

    /// Exact determinant by Gaussian elimination over the rationals.
    pub fn det(&self) -> BigRational {
        let n = self.n;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| self.data[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut det = BigRational::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return BigRational::zero();
            };
            if p != k {
                a.swap(p, k);
                det = -det;
            }
            let pivot = a[k][k].clone();
            det *= &pivot;
            for r in k + 1..n {
                if a[r][k].is_zero() {
                    continue;
                }
                let f = &a[r][k] / &pivot;
                for c in k..n {
                    let t = &f * &a[k][c];
                    a[r][c] -= t;
                }
            }
        }
        det
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> + '_ {
        self.data
            .iter()
            .enumerate()
            .map(move |(idx, v)| (idx / self.n, idx % self.n, v))
    }

    /// Records every entry where `self` differs from `expected`.
    pub fn compare_into(&self, expected: &Self, report: &mut VerifyReport, check: &str) {
        if self.n != expected.n {
            report.fail(check, 0, 0, format!("size {}", expected.n), format!("size {}", self.n));
            return;
        }
        for ((i, j, got), want) in self.entries().zip(&expected.data) {
            if got != want {
                report.fail(check, i, j, want, got);
            }
        }
    }

    /// Entries as exact decimal strings (`p` or `p/q`).
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }

    /// Row-per-line text, right aligned. Triangular matrices print only
    /// their lower part.
    pub fn render_plain(&self) -> String {
        let lower = self.is_lower_triangular();
        let rows = self.to_string_rows();
        let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
        let mut out = String::new();
        for (i, row) in rows.iter().enumerate() {
            let last = if lower { i + 1 } else { self.n };
            let line: Vec<String> = row[..last].iter().map(|v| format!("{v:>width$}")).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for BigMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BigMatrix({})", self.n)?;
        for row in self.to_string_rows() {
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Integer working matrix for products and power sums.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct IntMatrix {
    pub(crate) n: usize,
    pub(crate) data: Vec<BigInt>,
}

impl IntMatrix {
    pub(crate) fn mul(a: &Self, b: &Self) -> Self {
        let n = a.n;
        let mut data = vec![BigInt::zero(); n * n];
        for i in 0..n {
            let out = &mut data[i * n..(i + 1) * n];
            for k in 0..n {
                let x = &a.data[i * n + k];
                if x.is_zero() {
                    continue;
                }
                for (slot, y) in out.iter_mut().zip(&b.data[k * n..(k + 1) * n]) {
                    if !y.is_zero() {
                        *slot += x * y;
                    }
                }
            }
        }
        Self { n, data }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub(crate) fn unscale(&self, den: &BigInt) -> BigMatrix {
        debug_assert!(den.is_positive());
        BigMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .map(|v| BigRational::new(v.clone(), den.clone()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn product_with_fractions() {
        let a = BigMatrix::from_fn(2, |i, j| q((i + 1) as i64, (j + 2) as i64));
        let b = BigMatrix::from_fn(2, |i, j| q(1, (i + j + 1) as i64));
        let p = a.mul(&b).unwrap();
        // row 0: [1/2, 1/3] * [[1, 1/2], [1/2, 1/3]]
        assert_eq!(*p.get(0, 0), q(1, 2) + q(1, 6));
        assert_eq!(*p.get(0, 1), q(1, 4) + q(1, 9));
        assert_eq!(*p.get(1, 1), q(2, 4) + q(2, 9));
    }

    #[test]
    fn determinant() {
        let m = BigMatrix::from_rows(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 0]]);
        assert_eq!(m.det(), q(-1, 1));
        let swap = BigMatrix::from_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.det(), q(-1, 1));
        assert_eq!(BigMatrix::zeros(3).det(), q(0, 1));
        assert_eq!(BigMatrix::identity(0).det(), q(1, 1));
    }

    #[test]
    fn shape_predicates() {
        let s = BigMatrix::subdiagonal(4, |i| (i as i64 + 1).into());
        assert!(s.is_strictly_lower());
        assert!(!s.is_unipotent_lower());
        let u = BigMatrix::identity(4).add(&s).unwrap();
        assert!(u.is_unipotent_lower());
        assert!(!u.transpose().is_lower_triangular());
    }

    #[test]
    fn mod2_reduction() {
        let m = BigMatrix::from_rows(&[&[3], &[-2, 5]]);
        assert_eq!(
            m.mod2().unwrap(),
            SmallMatrix::from_rows(&[&[1], &[0, 1]])
        );
        let frac = BigMatrix::from_fn(1, |_, _| q(1, 2));
        assert!(frac.mod2().is_err());
    }

    #[test]
    fn rendering() {
        let m = BigMatrix::from_rows(&[&[1], &[42, 1]]);
        assert_eq!(m.render_plain(), " 1\n42  1\n");
    }
}
