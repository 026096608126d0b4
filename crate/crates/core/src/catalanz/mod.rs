//! Catalan numbers and the integer matrices whose reductions modulo 2 are
//! the `{0, 1}` matrices of [`crate::gf2sign`].
//!
//! `L` and `L~` are the even and odd rows of the Catalan triangle. They
//! decompose the Hankel matrices of the Catalan numbers and of their shift,
//! and are inverted by `D_a M D_a` and `D_a M~ D_a`. The products `LM` and
//! `L~M~` are exponentials of subdiagonal matrices; the products `ML` and
//! `M~L~` have striped logarithms, which is checked as a conjecture.

mod bigmatrix;
mod explog;

pub use bigmatrix::BigMatrix;
pub use explog::{nilpotent_exp, nilpotent_log};

use crate::binom2::Bit;
use crate::error::{guard, Error, Result};
use crate::gf2sign::{build_tri, DiagSigns, TriKind};
use crate::report::VerifyReport;
use crate::seq;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub const MAX_CATALAN_INDEX: u64 = 10_000;
pub const MAX_CATALAN_SIZE: usize = 128;
pub const MAX_GF_ORDER: usize = 1 << 16;

/// `C_n = C(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> Result<BigUint> {
    guard("Catalan index", n, MAX_CATALAN_INDEX)?;
    // C_{k+1} = C_k * 2(2k + 1) / (k + 2), exact at every step.
    let mut c = BigUint::one();
    for k in 0..n {
        c = c * (2 * (2 * k + 1)) / (k + 2);
    }
    Ok(c)
}

/// Rows `0..rows` of Pascal's triangle.
fn pascal(rows: usize) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = Vec::with_capacity(rows);
    for r in 0..rows {
        let mut row = vec![BigInt::one(); r + 1];
        for k in 1..r {
            row[k] = &out[r - 1][k - 1] + &out[r - 1][k];
        }
        out.push(row);
    }
    out
}

fn binom(table: &[Vec<BigInt>], n: usize, k: i64) -> BigInt {
    if k < 0 || k as usize > n {
        BigInt::zero()
    } else {
        table[n][k as usize].clone()
    }
}

/// The staggered ballot table: row `r` holds the numbers of lattice paths
/// of length `r` with steps `+-1` staying at height `>= 0` and ending at
/// heights `r % 2, r % 2 + 2, ..., r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalanTriangle {
    rows: Vec<Vec<BigUint>>,
}

impl CatalanTriangle {
    pub fn new(rows: usize) -> Result<Self> {
        guard("triangle rows", rows as u64, 2 * MAX_CATALAN_SIZE as u64)?;
        let mut out: Vec<Vec<BigUint>> = Vec::with_capacity(rows);
        for r in 0..rows {
            if r == 0 {
                out.push(vec![BigUint::one()]);
                continue;
            }
            let prev = &out[r - 1];
            let base = r % 2;
            // Entry j sits at height base + 2j; its upper neighbours are at
            // heights base + 2j - 1 and base + 2j + 1 of the previous row,
            // whose entries are indexed by (height - (1 - base)) / 2.
            let at = |h: i64| -> BigUint {
                let pbase = (1 - base) as i64;
                if h < pbase {
                    return BigUint::zero();
                }
                prev.get(((h - pbase) / 2) as usize).cloned().unwrap_or_default()
            };
            let row = (0..=r / 2)
                .map(|j| {
                    let h = (base + 2 * j) as i64;
                    at(h - 1) + at(h + 1)
                })
                .collect();
            out.push(row);
        }
        Ok(Self { rows: out })
    }

    pub fn rows(&self) -> &[Vec<BigUint>] {
        &self.rows
    }

    /// Entry `j` of row `r` (height `r % 2 + 2j`), zero outside the table.
    pub fn get(&self, r: usize, j: usize) -> BigUint {
        self.rows
            .get(r)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_default()
    }

    /// Rows `parity, parity + 2, ...` as an `n x n` lower triangular matrix.
    pub fn stacked(&self, parity: usize, n: usize) -> BigMatrix {
        BigMatrix::from_int_fn(n, |i, j| self.get(2 * i + parity, j).into())
    }
}

/// The integer matrices of the Catalan family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CatalanKind {
    /// `C(2i, i-j) - C(2i, i-j-1)`
    LZ,
    /// `C(2i+1, i-j) - C(2i+1, i-j-1)`
    LTildeZ,
    /// `C(i+j, 2j)`
    MZ,
    /// `C(i+j+1, 2j+1)`
    MTildeZ,
    /// `C_{i+j}`
    HCat,
    /// `C_{i+j+1}`
    HCatShift,
}

pub fn build_catalan_matrix(kind: CatalanKind, n: usize) -> Result<BigMatrix> {
    if n == 0 {
        return Err(Error::InvalidInput("matrix size must be at least 1".into()));
    }
    guard("Catalan matrix size", n as u64, MAX_CATALAN_SIZE as u64)?;
    let t = pascal(2 * n + 2);
    let m = match kind {
        CatalanKind::LZ => BigMatrix::from_int_fn(n, |i, j| {
            let k = i as i64 - j as i64;
            binom(&t, 2 * i, k) - binom(&t, 2 * i, k - 1)
        }),
        CatalanKind::LTildeZ => BigMatrix::from_int_fn(n, |i, j| {
            let k = i as i64 - j as i64;
            binom(&t, 2 * i + 1, k) - binom(&t, 2 * i + 1, k - 1)
        }),
        CatalanKind::MZ => BigMatrix::from_int_fn(n, |i, j| binom(&t, i + j, 2 * j as i64)),
        CatalanKind::MTildeZ => {
            BigMatrix::from_int_fn(n, |i, j| binom(&t, i + j + 1, 2 * j as i64 + 1))
        }
        CatalanKind::HCat | CatalanKind::HCatShift => {
            let shift = usize::from(kind == CatalanKind::HCatShift);
            let cat: Vec<BigInt> = (0..2 * n)
                .map(|k| catalan(k as u64).map(BigInt::from))
                .collect::<Result<_>>()?;
            BigMatrix::from_int_fn(n, |i, j| cat[i + j + shift].clone())
        }
    };
    Ok(m)
}

fn alt_signs(n: usize) -> Vec<i8> {
    DiagSigns::alternating(n).signs().to_vec()
}

/// `H = L L^t`, `H~ = L~ L~^t`, `L^{-1} = D_a M D_a`, `L~^{-1} = D_a M~ D_a`.
pub fn verify_catalan_lu(n: usize) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("catalan-lu", n);
    let l = build_catalan_matrix(CatalanKind::LZ, n)?;
    let lt = build_catalan_matrix(CatalanKind::LTildeZ, n)?;
    let m = build_catalan_matrix(CatalanKind::MZ, n)?;
    let mt = build_catalan_matrix(CatalanKind::MTildeZ, n)?;
    let h = build_catalan_matrix(CatalanKind::HCat, n)?;
    let hs = build_catalan_matrix(CatalanKind::HCatShift, n)?;
    let id = BigMatrix::identity(n);
    let da = alt_signs(n);

    l.mul(&l.transpose())?.compare_into(&h, &mut report, "H=LLt");
    lt.mul(&lt.transpose())?
        .compare_into(&hs, &mut report, "Ht=LtLtt");
    l.mul(&m.conjugate_signs(&da))?
        .compare_into(&id, &mut report, "L(DaMDa)=I");
    lt.mul(&mt.conjugate_signs(&da))?
        .compare_into(&id, &mut report, "Lt(DaMtDa)=I");
    Ok(report)
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |a, i| a * i)
}

/// `(2i)! j! / (i! (2j)! (i-j)!)` below the diagonal, `1` on it.
pub fn lm_closed_form(n: usize) -> BigMatrix {
    BigMatrix::from_fn(n, |i, j| {
        if j > i {
            BigRational::zero()
        } else {
            BigRational::new(
                factorial(2 * i) * factorial(j),
                factorial(i) * factorial(2 * j) * factorial(i - j),
            )
        }
    })
}

/// `4^(i-j) C(i, j)`.
pub fn lm_tilde_closed_form(n: usize) -> BigMatrix {
    let t = pascal(n);
    BigMatrix::from_int_fn(n, |i, j| {
        if j > i {
            BigInt::zero()
        } else {
            (BigInt::one() << (2 * (i - j))) * &t[i][j]
        }
    })
}

/// `LM = exp(subdiag(2, 6, 10, ...))` and `L~M~ = exp(subdiag(4, 8, 12, ...))`
/// together with the closed forms of both products.
pub fn verify_exp_products(n: usize) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("exp-products", n);
    let l = build_catalan_matrix(CatalanKind::LZ, n)?;
    let lt = build_catalan_matrix(CatalanKind::LTildeZ, n)?;
    let m = build_catalan_matrix(CatalanKind::MZ, n)?;
    let mt = build_catalan_matrix(CatalanKind::MTildeZ, n)?;

    let p = l.mul(&m)?;
    p.compare_into(&lm_closed_form(n), &mut report, "LM closed form");
    let g = BigMatrix::subdiagonal(n, |i| BigInt::from(4 * i + 2));
    p.compare_into(&nilpotent_exp(&g)?, &mut report, "LM=exp(2,6,10,..)");

    let pt = lt.mul(&mt)?;
    pt.compare_into(&lm_tilde_closed_form(n), &mut report, "LtMt closed form");
    let gt = BigMatrix::subdiagonal(n, |i| BigInt::from(4 * i + 4));
    pt.compare_into(&nilpotent_exp(&gt)?, &mut report, "LtMt=exp(4,8,12,..)");
    Ok(report)
}

/// `(i, j)` is `base + 4j` when `i - j` is odd and zero otherwise.
pub fn striped_log_pattern(n: usize, base: i64) -> BigMatrix {
    BigMatrix::from_int_fn(n, |i, j| {
        if i > j && (i - j) % 2 == 1 {
            BigInt::from(base + 4 * j as i64)
        } else {
            BigInt::zero()
        }
    })
}

/// Tests whether `log(ML)` and `log(M~L~)` follow the striped patterns with
/// `4j + 2` and `4j + 4`. The report is marked as a conjecture.
pub fn check_log_conjecture(n: usize) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("log-conjecture", n).conjecture();
    let l = build_catalan_matrix(CatalanKind::LZ, n)?;
    let lt = build_catalan_matrix(CatalanKind::LTildeZ, n)?;
    let m = build_catalan_matrix(CatalanKind::MZ, n)?;
    let mt = build_catalan_matrix(CatalanKind::MTildeZ, n)?;
    nilpotent_log(&m.mul(&l)?)?.compare_into(&striped_log_pattern(n, 2), &mut report, "log(ML)");
    nilpotent_log(&mt.mul(&lt)?)?.compare_into(
        &striped_log_pattern(n, 4),
        &mut report,
        "log(MtLt)",
    );
    Ok(report)
}

/// Coefficients of `c(x)` modulo 2 below `x^order`.
///
/// Over GF(2) squaring is `c(x)^2 = c(x^2)`, so `c = 1 + x c^2` gives
/// `c_0 = 1`, `c_{2i+1} = c_i` and `c_{2i} = 0` for `i >= 1`.
pub fn catalan_gf_mod2(order: usize) -> Result<Vec<Bit>> {
    guard("series order", order as u64, MAX_GF_ORDER as u64)?;
    let mut c: Vec<Bit> = Vec::with_capacity(order);
    for k in 0..order {
        let bit = match k {
            0 => Bit::ONE,
            k if k % 2 == 1 => c[(k - 1) / 2],
            _ => Bit::ZERO,
        };
        c.push(bit);
    }
    Ok(c)
}

/// `c(x) == sum x^(2^j - 1) (mod 2)` below `x^order`.
pub fn verify_catalan_gf_mod2(order: usize) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("catalan-gf-mod2", order);
    let c = catalan_gf_mod2(order)?;
    for (k, bit) in c.iter().enumerate() {
        let g = seq::mu(k as u64);
        if i64::from(bit.value()) != g {
            report.fail("c=g mod 2", k, 0, g, bit.value());
        }
    }
    Ok(report)
}

/// Integer Catalan matrices reduced modulo 2 against the binomial `{0,1}`
/// matrices.
pub fn verify_mod2_bridge(n: usize) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("mod2-bridge", n);
    for (ck, tk, name) in [
        (CatalanKind::LZ, TriKind::L, "L"),
        (CatalanKind::MZ, TriKind::M, "M"),
        (CatalanKind::LTildeZ, TriKind::LTilde, "Lt"),
        (CatalanKind::MTildeZ, TriKind::MTilde, "Mt"),
    ] {
        let reduced = build_catalan_matrix(ck, n)?.mod2()?;
        reduced.compare_into(&build_tri(tk, n)?, &mut report, name);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binom2::catalan_is_odd;

    fn rows(m: &BigMatrix) -> Vec<Vec<String>> {
        m.to_string_rows()
    }

    #[test]
    fn catalan_values() {
        let got: Vec<u64> = (0..6)
            .map(|n| catalan(n).unwrap().try_into().unwrap())
            .collect();
        assert_eq!(got, vec![1, 1, 2, 5, 14, 42]);
        assert!(catalan(MAX_CATALAN_INDEX + 1).is_err());
        // Against the binomial definition.
        let t = pascal(80);
        for n in 0..39usize {
            let c = BigInt::from(catalan(n as u64).unwrap());
            assert_eq!(c * (n + 1), t[2 * n][n]);
        }
    }

    #[test]
    fn catalan_parity() {
        let mut c = BigUint::one();
        for n in 0..2048u64 {
            assert_eq!(c.bit(0), catalan_is_odd(n).is_one(), "n={n}");
            c = c * (2 * (2 * n + 1)) / (n + 2);
        }
        assert_eq!(catalan(2047).unwrap().bit(0), true);
    }

    #[test]
    fn printed_l6() {
        let l = build_catalan_matrix(CatalanKind::LZ, 6).unwrap();
        let expected = BigMatrix::from_rows(&[
            &[1],
            &[1, 1],
            &[2, 3, 1],
            &[5, 9, 5, 1],
            &[14, 28, 20, 7, 1],
            &[42, 90, 75, 35, 9, 1],
        ]);
        assert_eq!(l, expected);
    }

    #[test]
    fn l_tilde_row_five_uses_formula() {
        let lt = build_catalan_matrix(CatalanKind::LTildeZ, 6).unwrap();
        assert_eq!(rows(&lt)[5], vec!["132", "165", "110", "44", "10", "1"]);
        assert_eq!(rows(&lt)[3][..4], ["14", "14", "6", "1"]);
    }

    #[test]
    fn hankel_cat3() {
        let h = build_catalan_matrix(CatalanKind::HCat, 3).unwrap();
        assert_eq!(h, BigMatrix::from_rows(&[&[1, 1, 2], &[1, 2, 5], &[2, 5, 14]]));
        let l = build_catalan_matrix(CatalanKind::LZ, 3).unwrap();
        assert_eq!(l.mul(&l.transpose()).unwrap(), h);
    }

    #[test]
    fn size_guards() {
        assert!(build_catalan_matrix(CatalanKind::LZ, 0).is_err());
        assert!(matches!(
            build_catalan_matrix(CatalanKind::MZ, MAX_CATALAN_SIZE + 1),
            Err(Error::SizeGuard { .. })
        ));
        assert!(catalan_gf_mod2(MAX_GF_ORDER + 1).is_err());
    }

    #[test]
    fn triangle_rows() {
        let t = CatalanTriangle::new(9).unwrap();
        let printed: Vec<Vec<u64>> = vec![
            vec![1],
            vec![1],
            vec![1, 1],
            vec![2, 1],
            vec![2, 3, 1],
            vec![5, 4, 1],
            vec![5, 9, 5, 1],
            vec![14, 14, 6, 1],
            vec![14, 28, 20, 7, 1],
        ];
        for (r, want) in printed.iter().enumerate() {
            let got: Vec<u64> = t.rows()[r].iter().map(|v| v.try_into().unwrap()).collect();
            assert_eq!(&got, want, "row {r}");
        }
    }

    #[test]
    fn triangle_even_and_odd_rows() {
        let t = CatalanTriangle::new(2 * 40 + 2).unwrap();
        assert_eq!(t.stacked(0, 40), build_catalan_matrix(CatalanKind::LZ, 40).unwrap());
        assert_eq!(t.stacked(1, 40), build_catalan_matrix(CatalanKind::LTildeZ, 40).unwrap());
    }

    #[test]
    fn lu_and_inverses() {
        assert!(verify_catalan_lu(1).unwrap().pass);
        let r = verify_catalan_lu(64).unwrap();
        assert!(r.pass, "{:?}", r.failures.first());
    }

    #[test]
    fn hankel_dets_are_one() {
        for n in 1..=32 {
            for kind in [CatalanKind::HCat, CatalanKind::HCatShift] {
                let d = build_catalan_matrix(kind, n).unwrap().det();
                assert!(d.is_one(), "{kind:?} n={n}: {d}");
            }
        }
    }

    #[test]
    fn exp_products() {
        let l = build_catalan_matrix(CatalanKind::LZ, 2).unwrap();
        let m = build_catalan_matrix(CatalanKind::MZ, 2).unwrap();
        assert_eq!(l.mul(&m).unwrap(), BigMatrix::from_rows(&[&[1], &[2, 1]]));
        for n in [1, 2, 4, 20] {
            let r = verify_exp_products(n).unwrap();
            assert!(r.pass, "n={n}: {:?}", r.failures.first());
        }
        let g = BigMatrix::subdiagonal(4, |i| BigInt::from(4 * i + 4));
        assert_eq!(nilpotent_exp(&g).unwrap(), lm_tilde_closed_form(4));
    }

    #[test]
    fn printed_logs() {
        let m = build_catalan_matrix(CatalanKind::MZ, 7).unwrap();
        let l = build_catalan_matrix(CatalanKind::LZ, 7).unwrap();
        let log = nilpotent_log(&m.mul(&l).unwrap()).unwrap();
        let printed = BigMatrix::from_rows(&[
            &[0],
            &[2, 0],
            &[0, 6, 0],
            &[2, 0, 10, 0],
            &[0, 6, 0, 14, 0],
            &[2, 0, 10, 0, 18, 0],
            &[0, 6, 0, 14, 0, 22, 0],
        ]);
        assert_eq!(log, printed);
        let r = check_log_conjecture(2).unwrap();
        assert!(r.pass && r.conjecture);
        assert!(check_log_conjecture(20).unwrap().pass);
    }

    #[test]
    fn gf_mod2() {
        let bits: Vec<u8> = catalan_gf_mod2(8).unwrap().iter().map(|b| b.value()).collect();
        assert_eq!(bits, vec![1, 1, 0, 1, 0, 0, 0, 1]);
        assert_eq!(catalan_gf_mod2(1).unwrap(), vec![Bit::ONE]);
        assert!(catalan_gf_mod2(0).unwrap().is_empty());
    }

    #[test]
    fn gf_mod2_against_convolution() {
        // c_{n+1} = sum_k c_k c_{n-k}, carried out modulo 2.
        let order = 4096;
        let mut c = vec![0u8; order];
        c[0] = 1;
        for n in 0..order - 1 {
            c[n + 1] = (0..=n).fold(0, |acc, k| acc ^ (c[k] & c[n - k]));
        }
        let fast: Vec<u8> = catalan_gf_mod2(order).unwrap().iter().map(|b| b.value()).collect();
        assert_eq!(fast, c);
        assert!(verify_catalan_gf_mod2(order).unwrap().pass);
    }

    #[test]
    fn bridge_to_binomial_matrices() {
        let r = verify_mod2_bridge(64).unwrap();
        assert!(r.pass, "{:?}", r.failures.first());
    }
}
