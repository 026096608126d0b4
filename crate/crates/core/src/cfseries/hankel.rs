//! Hankel matrices of a moment sequence, their LU decomposition, the
//! Stieltjes matrix of the associated Jacobi fraction, and the formal
//! orthogonal polynomials.

use super::series::rational_string;
use crate::catalanz::{catalan, BigMatrix};
use crate::error::{guard, Error, Result};
use crate::gf2sign::{build_tri, diag, DiagKind, SmallMatrix, TriKind};
use crate::report::VerifyReport;
use crate::seq::{self, fold_stream};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

pub const MAX_HANKEL_SIZE: usize = 64;
pub const MAX_ORTH_SIZE: usize = 256;

/// The linear form `x^k -> mu_k` on polynomials, given by a finite prefix
/// of moments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentFunctional {
    moments: Vec<BigRational>,
}

impl MomentFunctional {
    pub fn new(moments: Vec<BigRational>) -> Self {
        Self { moments }
    }

    pub fn from_ints(moments: impl IntoIterator<Item = i64>) -> Self {
        Self::new(
            moments
                .into_iter()
                .map(|m| BigRational::from_integer(m.into()))
                .collect(),
        )
    }

    /// `mu_0 .. mu_{len-1}`, with `x sum mu_k x^k = sum x^(2^k)`.
    pub fn mu(len: usize) -> Self {
        Self::from_ints((0..len as u64).map(seq::mu))
    }

    /// `mu_1 .. mu_len`: the moments of the shifted Hankel matrix.
    pub fn mu_shift(len: usize) -> Self {
        Self::from_ints((1..=len as u64).map(seq::mu))
    }

    /// The Catalan numbers `C_0 .. C_{len-1}`.
    pub fn catalan(len: usize) -> Result<Self> {
        let ms = (0..len as u64)
            .map(|k| catalan(k).map(|c| BigRational::from_integer(c.into())))
            .collect::<Result<_>>()?;
        Ok(Self::new(ms))
    }

    /// `C_1 .. C_len`.
    pub fn catalan_shift(len: usize) -> Result<Self> {
        let ms = (1..=len as u64)
            .map(|k| catalan(k).map(|c| BigRational::from_integer(c.into())))
            .collect::<Result<_>>()?;
        Ok(Self::new(ms))
    }

    pub fn len(&self) -> usize {
        self.moments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moments.is_empty()
    }

    pub fn moment(&self, k: usize) -> Option<&BigRational> {
        self.moments.get(k)
    }

    fn need(&self, count: usize) -> Result<()> {
        if self.moments.len() < count {
            Err(Error::InvalidInput(format!(
                "{count} moments needed, {} given",
                self.moments.len()
            )))
        } else {
            Ok(())
        }
    }

    /// `<p, q> = l(p q)` for coefficient vectors `p`, `q` (constant first).
    pub fn pair(&self, p: &[BigRational], q: &[BigRational]) -> Result<BigRational> {
        if p.is_empty() || q.is_empty() {
            return Ok(BigRational::zero());
        }
        self.need(p.len() + q.len() - 1)?;
        let mut acc = BigRational::zero();
        for (i, a) in p.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in q.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                acc += a * b * &self.moments[i + j];
            }
        }
        Ok(acc)
    }

    /// The `n x n` Hankel matrix `(mu_{i+j})`.
    pub fn hankel(&self, n: usize) -> Result<BigMatrix> {
        self.need((2 * n).saturating_sub(1))?;
        Ok(BigMatrix::from_fn(n, |i, j| self.moments[i + j].clone()))
    }
}

/// Fraction-free elimination of `H(n)` without pivoting.
///
/// Returns the leading principal minors `det H(1) .. det H(n)` of the
/// integer matrix `c H(n)` (with `c` clearing the moment denominators), the
/// columns of the elimination before each pivot, and `c`.
struct Bareiss {
    minors: Vec<BigInt>,
    /// `cols[k][i]` for `i >= k`: entry `(i, k)` just before pivot `k`.
    cols: Vec<Vec<BigInt>>,
    scale: BigInt,
}

fn bareiss(moments: &MomentFunctional, n: usize) -> Result<Bareiss> {
    moments.need((2 * n).saturating_sub(1))?;
    let used = &moments.moments[..(2 * n).saturating_sub(1)];
    let scale = used.iter().fold(BigInt::one(), |acc, m| acc.lcm(m.denom()));
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let m = &used[i + j];
                    m.numer() * (&scale / m.denom())
                })
                .collect()
        })
        .collect();
    let mut minors = Vec::with_capacity(n);
    let mut cols = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = a[k][k].clone();
        cols.push((k..n).map(|i| a[i][k].clone()).collect::<Vec<_>>());
        if pivot.is_zero() {
            return Err(Error::SingularMinor(k + 1));
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&pivot * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        minors.push(pivot.clone());
        prev = pivot;
    }
    Ok(Bareiss {
        minors,
        cols,
        scale,
    })
}

/// `H(n) = L diag(D) L^t` with `L` unipotent lower triangular.
///
/// Fails with [`Error::SingularMinor`] when a leading principal minor of
/// `H(n)` vanishes.
pub fn hankel_lu_rational(
    moments: &MomentFunctional,
    n: usize,
) -> Result<(BigMatrix, Vec<BigRational>)> {
    guard("Hankel size", n as u64, MAX_HANKEL_SIZE as u64)?;
    let b = bareiss(moments, n)?;
    let mut l = BigMatrix::identity(n);
    for (k, col) in b.cols.iter().enumerate() {
        let pivot = &col[0];
        for (off, v) in col.iter().enumerate().skip(1) {
            l.set(k + off, k, BigRational::new(v.clone(), pivot.clone()));
        }
    }
    let mut d = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for m in &b.minors {
        d.push(BigRational::new(m.clone(), prev.clone() * &b.scale));
        prev = m.clone();
    }
    Ok((l, d))
}

/// `det H(1) .. det H(n)`.
pub fn hankel_minors(moments: &MomentFunctional, n: usize) -> Result<Vec<BigRational>> {
    guard("Hankel size", n as u64, MAX_HANKEL_SIZE as u64)?;
    let b = bareiss(moments, n)?;
    Ok(b
        .minors
        .iter()
        .enumerate()
        .map(|(k, m)| BigRational::new(m.clone(), num_traits::Pow::pow(&b.scale, (k + 1) as u32)))
        .collect())
}

/// Coefficients of `g = 1/(1 - a_0 x - b_1 x^2/(1 - a_1 x - b_2 x^2/(...)))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiCF {
    /// `a_0, a_1, ...`
    pub a: Vec<BigRational>,
    /// `b_1, b_2, ...`
    pub b: Vec<BigRational>,
}

impl JacobiCF {
    pub fn depth(&self) -> usize {
        self.a.len()
    }

    /// The tridiagonal matrix with `a` on the diagonal, `b` below and ones
    /// above.
    pub fn stieltjes_matrix(&self) -> BigMatrix {
        let n = self.a.len();
        BigMatrix::from_fn(n, |i, j| {
            if i == j {
                self.a[i].clone()
            } else if j == i + 1 {
                BigRational::one()
            } else if i == j + 1 {
                self.b[j].clone()
            } else {
                BigRational::zero()
            }
        })
    }

    /// `det S(0) .. det S(n)` via `det S(k) = a_{k-1} det S(k-1) - b_{k-1} det S(k-2)`.
    pub fn leading_dets(&self) -> Vec<BigRational> {
        let mut out = vec![BigRational::one()];
        for k in 1..=self.a.len() {
            let mut v = &self.a[k - 1] * &out[k - 1];
            if k >= 2 {
                v -= &self.b[k - 2] * &out[k - 2];
            }
            out.push(v);
        }
        out
    }
}

impl Serialize for JacobiCF {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw {
            a: Vec<String>,
            b: Vec<String>,
        }
        Raw {
            a: self.a.iter().map(rational_string).collect(),
            b: self.b.iter().map(rational_string).collect(),
        }
        .serialize(s)
    }
}

/// Solves `L S = L_-` for the `n x n` Stieltjes matrix, where `L_-` is `L`
/// without its first row, and reads off `a_0 .. a_{n-1}` and
/// `b_1 .. b_{n-1}`.
pub fn stieltjes_extract(moments: &MomentFunctional, n: usize) -> Result<JacobiCF> {
    if n == 0 {
        return Err(Error::InvalidInput("depth must be at least 1".into()));
    }
    guard("Stieltjes depth", n as u64, MAX_HANKEL_SIZE as u64)?;
    let (l, _) = hankel_lu_rational(moments, n + 1)?;
    let s = stieltjes_from_lu(&l, n)?;
    let a = (0..n).map(|i| s.get(i, i).clone()).collect();
    let b = (1..n).map(|i| s.get(i, i - 1).clone()).collect();
    Ok(JacobiCF { a, b })
}

/// `L(n)^{-1} L_-(n)` by forward substitution; checks that the result is
/// tridiagonal with unit superdiagonal.
fn stieltjes_from_lu(l: &BigMatrix, n: usize) -> Result<BigMatrix> {
    let mut s = BigMatrix::zeros(n);
    for j in 0..n {
        for i in 0..n {
            let mut v = l.get(i + 1, j).clone();
            for k in 0..i {
                let lik = l.get(i, k);
                if lik.is_zero() || s.get(k, j).is_zero() {
                    continue;
                }
                v -= lik * s.get(k, j);
            }
            s.set(i, j, v);
        }
    }
    for (i, j, v) in s.entries() {
        let ok = match (i as i64) - (j as i64) {
            -1 => v.is_one(),
            0 | 1 => true,
            _ => v.is_zero(),
        };
        if !ok {
            return Err(Error::InvalidInput(format!(
                "Stieltjes matrix is not tridiagonal at ({i}, {j})"
            )));
        }
    }
    Ok(s)
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// The Jacobi fraction of `mu`: `a_{k-1} = d_k`, `b_k = -1`, and
/// `det S(k) = s_k`. Also checks that the rational LU factor equals the
/// signed binomial matrix `D_s L D_s`.
pub fn verify_thm4(n: usize) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("thm4", n);
    let moments = MomentFunctional::mu(2 * n + 1);
    let cf = stieltjes_extract(&moments, n)?;
    for k in 1..=n {
        let want = int(seq::d(k as i64));
        if cf.a[k - 1] != want {
            report.fail("a_{k-1}=d_k", k - 1, 0, &want, &cf.a[k - 1]);
        }
    }
    for (k, b) in cf.b.iter().enumerate() {
        if *b != int(-1) {
            report.fail("b_k=-1", k + 1, 0, -1, b);
        }
    }
    let dets = cf.leading_dets();
    for k in 1..=n {
        let want = int(seq::s(k as i64));
        if dets[k] != want {
            report.fail("det S(k)=s_k", k, 0, &want, &dets[k]);
        }
    }

    let (l, d) = hankel_lu_rational(&moments, n)?;
    let signed = diag(DiagKind::S, n).conjugate(&build_tri(TriKind::L, n)?);
    l.compare_into(&BigMatrix::from_small(&signed), &mut report, "L=DsLDs");
    let alt = diag(DiagKind::Alt, n);
    for (k, dk) in d.iter().enumerate() {
        let want = int(i64::from(alt.get(k)));
        if *dk != want {
            report.fail("D=Da", k, k, &want, dk);
        }
    }
    Ok(report)
}

/// `det H(n) = (-1)^C(n,2)` for `n <= n_max`, `det H(2) = -1`, and
/// `det H(2^k + a) = (-1)^a det H(2^k - a)` for `0 <= a < 2^k`.
pub fn verify_det_identities(n_max: usize) -> Result<VerifyReport> {
    if n_max == 0 {
        return Err(Error::InvalidInput("n_max must be at least 1".into()));
    }
    let mut report = VerifyReport::new("dets", n_max);
    let minors = hankel_minors(&MomentFunctional::mu(2 * n_max), n_max)?;
    let det = |n: usize| -> BigRational {
        if n == 0 {
            BigRational::one()
        } else {
            minors[n - 1].clone()
        }
    };
    if n_max >= 2 {
        report.check_eq("det H(2)=-1", int(-1), det(2));
    }
    for n in 1..=n_max {
        let want = int(if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 });
        if det(n) != want {
            report.fail("det H(n)=(-1)^C(n,2)", n, 0, &want, det(n));
        }
    }
    let mut p = 1;
    while p <= n_max {
        for a in 0..p {
            if p + a > n_max {
                break;
            }
            let sign = int(if a % 2 == 0 { 1 } else { -1 });
            let want = sign * det(p - a);
            if det(p + a) != want {
                report.fail("det H(2^k+a)=(-1)^a det H(2^k-a)", p, a, &want, det(p + a));
            }
        }
        p *= 2;
    }
    Ok(report)
}

/// Coefficients (constant first) of the orthogonal polynomials
/// `Q_0 .. Q_{n-1}` of `mu`: the rows of `D_s D_a M D_a D_s`.
pub fn orth_polys(n: usize) -> Result<Vec<Vec<i32>>> {
    guard("polynomial count", n as u64, MAX_ORTH_SIZE as u64)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let p = orth_matrix(n)?;
    Ok((0..n).map(|i| p.row(i)[..=i].to_vec()).collect())
}

fn orth_matrix(n: usize) -> Result<SmallMatrix> {
    let m = build_tri(TriKind::M, n)?;
    let signs: Vec<i8> = diag(DiagKind::S, n)
        .signs()
        .iter()
        .zip(diag(DiagKind::Alt, n).signs())
        .map(|(s, a)| s * a)
        .collect();
    Ok(crate::gf2sign::DiagSigns::new(signs).conjugate(&m))
}

fn pair_int(mu: &[i64], p: &[i32], q: &[i32]) -> i64 {
    let mut acc = 0i64;
    for (i, &a) in p.iter().enumerate().filter(|(_, &a)| a != 0) {
        for (j, &b) in q.iter().enumerate().filter(|(_, &b)| b != 0) {
            acc += i64::from(a) * i64::from(b) * mu[i + j];
        }
    }
    acc
}

/// Coefficient range, orthogonality under `mu`, and the recursion
/// `Q_{k+1} = (x - d_{k+1}) Q_k + Q_{k-1}` from `Q_0 = 1`, `Q_1 = x - 1`.
pub fn verify_orth_polys(n: usize) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("orth", n);
    let qs = orth_polys(n)?;
    let mu: Vec<i64> = (0..2 * n as u64).map(seq::mu).collect();
    for (i, q) in qs.iter().enumerate() {
        for (k, &c) in q.iter().enumerate() {
            if c.abs() > 1 {
                report.fail("coefficients in {0,+-1}", i, k, "|c| <= 1", c);
            }
        }
        if q[i] != 1 {
            report.fail("monic", i, i, 1, q[i]);
        }
    }
    for i in 0..qs.len() {
        for j in 0..=i {
            let v = pair_int(&mu, &qs[i], &qs[j]);
            if i != j && v != 0 {
                report.fail("<Qi,Qj>=0", i, j, 0, v);
            }
            if i == j && v == 0 {
                report.fail("<Qi,Qi>!=0", i, i, "nonzero", 0);
            }
        }
    }
    // Q_{k+1} = (x - d_{k+1}) Q_k + Q_{k-1}
    let mut prev: Vec<i64> = Vec::new();
    let mut cur: Vec<i64> = vec![1];
    for (k, q) in qs.iter().enumerate() {
        let got: Vec<i64> = q.iter().map(|&c| i64::from(c)).collect();
        if got != cur {
            report.fail("three-term recursion", k, 0, format!("{cur:?}"), format!("{got:?}"));
        }
        let dk = seq::d(k as i64 + 1);
        let mut next = vec![0i64; cur.len() + 1];
        for (e, &c) in cur.iter().enumerate() {
            next[e + 1] += c;
            next[e] -= dk * c;
        }
        for (e, &c) in prev.iter().enumerate() {
            next[e] += c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(report)
}

/// The Stieltjes matrix of the shifted moments `mu_1, mu_2, ...` against
/// the folded fraction with every variable set to `x^2`: `a = 0` and
/// `b_i = -sign(w_i)`.
pub fn verify_shifted_stieltjes(depth: usize) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("shifted-jacobi", depth);
    let cf = stieltjes_extract(&MomentFunctional::mu_shift(2 * depth + 1), depth)?;
    for (i, a) in cf.a.iter().enumerate() {
        if !a.is_zero() {
            report.fail("a_i=0", i, 0, 0, a);
        }
    }
    for (k, b) in cf.b.iter().enumerate() {
        let i = k as u64 + 1;
        let want = int(-i64::from(fold_stream(i).sign));
        if *b != want {
            report.fail("b_i=-w_i", k + 1, 0, &want, b);
        }
    }
    Ok(report)
}

/// Exact determinant of an integer matrix by fraction-free elimination with
/// row pivoting.
pub fn int_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    let last = a[n - 1][n - 1].clone();
    if sign.is_negative() {
        -last
    } else {
        last
    }
}
