use crate::error::{Error, Result};
use crate::report::VerifyReport;
use std::fmt;

/// Dense square matrix with small signed integer entries, row-major.
///
/// Products accumulate in `i64` and are narrowed back with an overflow
/// check; the matrix families built here stay far inside `i32`.
#[derive(Clone, PartialEq, Eq)]
pub struct SmallMatrix {
    n: usize,
    data: Vec<i32>,
}

impl SmallMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> i32) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    /// Builds a matrix from (possibly ragged) rows; missing entries are zero.
    pub fn from_rows(rows: &[&[i32]]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert!(row.len() <= n, "row {i} longer than the matrix");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i32 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i32) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i32] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i))
    }

    /// Top-left `k x k` block.
    pub fn leading(&self, k: usize) -> Self {
        assert!(k <= self.n);
        Self::from_fn(k, |i, j| self.get(i, j))
    }

    /// The `k x k` block whose top-left corner is `(r, c)`.
    pub fn block(&self, r: usize, c: usize, k: usize) -> Self {
        Self::from_fn(k, |i, j| self.get(r + i, c + j))
    }

    pub fn scale(&self, factor: i32) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&v| v * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_size(other)?;
        Ok(Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1))
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

    /// Exact product. Zero entries of `self` are skipped, which makes the
    /// sparse binomial matrices cheap to multiply.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_size(other)?;
        let n = self.n;
        let mut acc = vec![0i64; n];
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            acc.iter_mut().for_each(|a| *a = 0);
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let a = i64::from(a);
                for (slot, &b) in acc.iter_mut().zip(other.row(k)) {
                    *slot += a * i64::from(b);
                }
            }
            for &v in &acc {
                out.push(i32::try_from(v).map_err(|_| Error::Overflow)?);
            }
        }
        Ok(Self { n, data: out })
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == 0))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i32)> + '_ {
        self.data
            .iter()
            .enumerate()
            .map(move |(idx, &v)| (idx / self.n, idx % self.n, v))
    }

    /// Records every entry where `self` differs from `expected`.
    pub fn compare_into(&self, expected: &Self, report: &mut VerifyReport, check: &str) {
        if self.n != expected.n {
            report.fail(check, 0, 0, format!("size {}", expected.n), format!("size {}", self.n));
            return;
        }
        for ((i, j, got), want) in self.entries().zip(&expected.data) {
            if got != *want {
                report.fail(check, i, j, want, got);
            }
        }
    }

    /// Row-per-line text, right aligned. Triangular matrices print only
    /// their lower part.
    pub fn render_plain(&self) -> String {
        let lower = self.is_lower_triangular();
        let width = self
            .data
            .iter()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for i in 0..self.n {
            let last = if lower { i + 1 } else { self.n };
            let line: Vec<String> = (0..last)
                .map(|j| format!("{:>width$}", self.get(i, j)))
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_rows(&self) -> Vec<Vec<i32>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }
}

impl fmt::Debug for SmallMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SmallMatrix({})", self.n)?;
        for i in 0..self.n {
            writeln!(f, "{:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Diagonal matrix with entries in `{-1, 0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagSigns {
    signs: Vec<i8>,
}

impl DiagSigns {
    pub fn new(signs: Vec<i8>) -> Self {
        debug_assert!(signs.iter().all(|s| (-1..=1).contains(s)));
        Self { signs }
    }

    pub fn from_fn(n: usize, f: impl Fn(u64) -> i64) -> Self {
        Self::new((0..n as u64).map(|i| f(i) as i8).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self::new(vec![1; n])
    }

    /// `D_a`: `1, -1, 1, -1, ...`
    pub fn alternating(n: usize) -> Self {
        Self::from_fn(n, |i| if i % 2 == 0 { 1 } else { -1 })
    }

    /// `D_e`: `1, 0, 1, 0, ...`
    pub fn even_mask(n: usize) -> Self {
        Self::from_fn(n, |i| if i % 2 == 0 { 1 } else { 0 })
    }

    /// `D_o`: `0, 1, 0, 1, ...`
    pub fn odd_mask(n: usize) -> Self {
        Self::from_fn(n, |i| i64::from(i % 2 == 1))
    }

    pub fn size(&self) -> usize {
        self.signs.len()
    }

    pub fn get(&self, i: usize) -> i8 {
        self.signs[i]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn neg(&self) -> Self {
        Self::new(self.signs.iter().map(|s| -s).collect())
    }

    pub fn to_matrix(&self) -> SmallMatrix {
        let n = self.size();
        SmallMatrix::from_fn(n, |i, j| if i == j { i32::from(self.signs[i]) } else { 0 })
    }

    /// `D * m`
    pub fn left(&self, m: &SmallMatrix) -> SmallMatrix {
        assert_eq!(self.size(), m.size());
        SmallMatrix::from_fn(m.size(), |i, j| i32::from(self.signs[i]) * m.get(i, j))
    }

    /// `m * D`
    pub fn right(&self, m: &SmallMatrix) -> SmallMatrix {
        assert_eq!(self.size(), m.size());
        SmallMatrix::from_fn(m.size(), |i, j| m.get(i, j) * i32::from(self.signs[j]))
    }

    /// `D * m * D`
    pub fn conjugate(&self, m: &SmallMatrix) -> SmallMatrix {
        self.right(&self.left(m))
    }
}
