use super::babab::{babab_expand, BababRule};
use super::matrix::SmallMatrix;
use super::{build_tri, check_size, diag, hankel_bits, DiagKind, HankelSource, TriKind};
use crate::error::Result;
use crate::report::VerifyReport;

pub const MAX_VERIFY_SIZE: usize = 4096;

fn tri(kind: TriKind, n: usize) -> SmallMatrix {
    build_tri(kind, n).expect("size checked by caller")
}

/// `D_s L D_a L^t D_s = H`, the Hankel matrix of `mu`.
pub fn verify_thm2(n: usize) -> Result<VerifyReport> {
    check_size(n, MAX_VERIFY_SIZE)?;
    let mut report = VerifyReport::new("thm2", n);
    let l = tri(TriKind::L, n);
    let da = diag(DiagKind::Alt, n);
    let ds = diag(DiagKind::S, n);
    let product = ds.conjugate(&l.mul(&da.left(&l.transpose()))?);
    let h = hankel_bits(HankelSource::MuShift0, n)?.to_matrix();
    product.compare_into(&h, &mut report, "DsLDaLtDs=H");
    Ok(report)
}

/// `L D_a M = D_a`, and `P = D_s D_a M D_a D_s` inverts `D_s L D_s` with
/// entries in `{0, +-1}`.
pub fn verify_thm3(n: usize) -> Result<VerifyReport> {
    check_size(n, MAX_VERIFY_SIZE)?;
    let mut report = VerifyReport::new("thm3", n);
    let l = tri(TriKind::L, n);
    let m = tri(TriKind::M, n);
    let da = diag(DiagKind::Alt, n);
    let ds = diag(DiagKind::S, n);

    let lhs = l.mul(&da.left(&m))?;
    lhs.compare_into(&da.to_matrix(), &mut report, "LDaM=Da");

    let p = ds.conjugate(&da.conjugate(&m));
    for (i, j, v) in p.entries() {
        if v.abs() > 1 {
            report.fail("P entries in {0,+-1}", i, j, "|p| <= 1", v);
        }
    }
    let inv = p.mul(&ds.conjugate(&l))?;
    inv.compare_into(&SmallMatrix::identity(n), &mut report, "P(DsLDs)=I");
    Ok(report)
}

/// `M D_e L = A + D_e` and `M D_o L = A + D_o`.
pub fn verify_prop_mdl(n: usize) -> Result<VerifyReport> {
    check_size(n, MAX_VERIFY_SIZE)?;
    let mut report = VerifyReport::new("mdl", n);
    let l = tri(TriKind::L, n);
    let m = tri(TriKind::M, n);
    let a = tri(TriKind::AStrict, n);
    for (kind, check) in [(DiagKind::Even, "MDeL=A+De"), (DiagKind::Odd, "MDoL=A+Do")] {
        let mask = diag(kind, n);
        let lhs = m.mul(&mask.left(&l))?;
        let rhs = a.add(&mask.to_matrix())?;
        lhs.compare_into(&rhs, &mut report, check);
    }
    Ok(report)
}

/// `ML` has entries `0 / 1 / 2` below, on and above the diagonal; `LM`
/// follows its block doubling rule; both are inverted by `D_a (.) D_a`.
pub fn verify_prop_ml_lm(n: usize) -> Result<VerifyReport> {
    check_size(n, MAX_VERIFY_SIZE)?;
    let mut report = VerifyReport::new("ml-lm", n);
    let l = tri(TriKind::L, n);
    let m = tri(TriKind::M, n);
    let da = diag(DiagKind::Alt, n);
    let id = SmallMatrix::identity(n);

    let ml = m.mul(&l)?;
    let pattern = SmallMatrix::from_fn(n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => 0,
        std::cmp::Ordering::Equal => 1,
        std::cmp::Ordering::Greater => 2,
    });
    ml.compare_into(&pattern, &mut report, "ML entries 0/1/2");

    let lm = l.mul(&m)?;
    let steps = steps_for(n);
    let blocks = babab_expand(BababRule::LM, steps)?.leading(n);
    lm.compare_into(&blocks, &mut report, "LM=BA0BAB(LM)");

    for (prod, check) in [(&ml, "(ML)Da(ML)Da=I"), (&lm, "(LM)Da(LM)Da=I")] {
        let twisted = da.right(prod);
        twisted.mul(&twisted)?.compare_into(&id, &mut report, check);
    }
    Ok(report)
}

/// Smallest number of doubling steps whose result has size at least `n`.
fn steps_for(n: usize) -> u32 {
    let mut steps = 0;
    while (2usize << steps) < n {
        steps += 1;
    }
    steps
}

/// The factorisation of the shifted Hankel matrix, the inverse relation for
/// `L~`, `M~`, and the parity/interleaving structure of both matrices.
pub fn verify_thm5(n: usize) -> Result<VerifyReport> {
    check_size(n, MAX_VERIFY_SIZE)?;
    let mut report = VerifyReport::new("thm5", n);
    let lt = tri(TriKind::LTilde, n);
    let mt = tri(TriKind::MTilde, n);
    let l = tri(TriKind::L, n);
    let m = tri(TriKind::M, n);
    let dst = diag(DiagKind::STilde, n);
    let dtt = diag(DiagKind::TTilde, n);

    let product = dtt.conjugate(&lt.mul(&dst.left(&lt.transpose()))?);
    let ht = hankel_bits(HankelSource::MuShift1, n)?.to_matrix();
    product.compare_into(&ht, &mut report, "DtLtDsLttDt=Ht");

    let dst_m = dst.to_matrix();
    lt.mul(&dst.left(&mt))?
        .compare_into(&dst_m, &mut report, "LtDsMt=Ds");
    mt.mul(&dst.left(&lt))?
        .compare_into(&dst_m, &mut report, "MtDsLt=Ds");

    for (mat, check) in [(&lt, "Lt parity"), (&mt, "Mt parity")] {
        for (i, j, v) in mat.entries() {
            if (i + j) % 2 == 1 && v != 0 {
                report.fail(check, i, j, 0, v);
            }
        }
    }

    interleave(&lt, &l, &mut report, "Lt interleave");
    interleave(&mt, &m, &mut report, "Mt interleave");
    Ok(report)
}

/// `t_{2i,2j} = base_{i,j}` and `t_{2i+1,2j+1} = t_{i,j}`.
fn interleave(t: &SmallMatrix, base: &SmallMatrix, report: &mut VerifyReport, check: &str) {
    let n = t.size();
    for i in 0..n.div_ceil(2) {
        for j in 0..n.div_ceil(2) {
            if 2 * i < n && 2 * j < n && t.get(2 * i, 2 * j) != base.get(i, j) {
                report.fail(check, 2 * i, 2 * j, base.get(i, j), t.get(2 * i, 2 * j));
            }
            if 2 * i + 1 < n && 2 * j + 1 < n && t.get(2 * i + 1, 2 * j + 1) != t.get(i, j) {
                report.fail(check, 2 * i + 1, 2 * j + 1, t.get(i, j), t.get(2 * i + 1, 2 * j + 1));
            }
        }
    }
}

/// Every block-doubling chain against its closed-form matrix at sizes
/// `2, 4, ..., max_size`.
pub fn verify_babab(max_size: usize) -> Result<VerifyReport> {
    check_size(max_size, MAX_VERIFY_SIZE)?;
    let mut report = VerifyReport::new("babab", max_size);
    let mut steps = 0;
    while (2usize << steps) <= max_size {
        let size = 2usize << steps;
        let pairs = [
            (BababRule::L, tri(TriKind::L, size), "L"),
            (BababRule::M, tri(TriKind::M, size), "M"),
            (BababRule::LTilde0, tri(TriKind::LTilde0, size), "Lt0"),
            (BababRule::MTilde0, tri(TriKind::MTilde0, size), "Mt0"),
            (
                BababRule::LM,
                tri(TriKind::L, size).mul(&tri(TriKind::M, size))?,
                "LM",
            ),
        ];
        for (rule, formula, name) in pairs {
            let built = babab_expand(rule, steps)?;
            built.compare_into(&formula, &mut report, &format!("{name}@{size}"));
        }
        steps += 1;
    }
    Ok(report)
}
