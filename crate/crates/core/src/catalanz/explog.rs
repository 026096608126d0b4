//! Exponential and logarithm of nilpotent / unipotent matrices.
//!
//! Both series terminate after `n` terms. The powers are taken on an
//! integer matrix with the denominators cleared, and the terms are summed
//! over one common denominator, so no intermediate rational is normalised.

use super::bigmatrix::{BigMatrix, IntMatrix};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

/// `G^0 = I, G^1, ..., G^k` up to the last nonzero power.
fn powers(g: &IntMatrix) -> Vec<IntMatrix> {
    let n = g.n;
    let mut id = IntMatrix {
        n,
        data: vec![BigInt::default(); n * n],
    };
    for i in 0..n {
        id.data[i * n + i] = BigInt::one();
    }
    let mut out = vec![id];
    let mut cur = g.clone();
    while !cur.is_zero() {
        let next = IntMatrix::mul(&cur, g);
        out.push(cur);
        cur = next;
    }
    out
}

/// Sums `coeff[k] * P_k` and divides by `den`.
fn combine(pows: &[IntMatrix], coeffs: &[BigInt], den: &BigInt) -> BigMatrix {
    let n = pows[0].n;
    let mut acc = IntMatrix {
        n,
        data: vec![BigInt::default(); n * n],
    };
    for (p, c) in pows.iter().zip(coeffs) {
        for (slot, v) in acc.data.iter_mut().zip(&p.data) {
            if !v.is_zero() {
                *slot += c * v;
            }
        }
    }
    acc.unscale(den)
}

/// `exp(g)` for strictly lower triangular `g`.
pub fn nilpotent_exp(g: &BigMatrix) -> Result<BigMatrix> {
    if !g.is_strictly_lower() {
        return Err(Error::InvalidInput(
            "exp needs a strictly lower triangular matrix".into(),
        ));
    }
    let (int_g, d) = g.scaled();
    let pows = powers(&int_g);
    let top = pows.len() - 1;
    // sum_k G^k / (d^k k!) over the common denominator d^top top!
    let fact = |k: usize| -> BigInt { (1..=k).fold(BigInt::one(), |a, i| a * i) };
    let top_fact = fact(top);
    let coeffs: Vec<BigInt> = (0..=top)
        .map(|k| Pow::pow(&d, (top - k) as u32) * (&top_fact / fact(k)))
        .collect();
    let den = Pow::pow(&d, top as u32) * top_fact;
    Ok(combine(&pows, &coeffs, &den))
}

/// `log(u)` for unipotent lower triangular `u`.
pub fn nilpotent_log(u: &BigMatrix) -> Result<BigMatrix> {
    if !u.is_unipotent_lower() {
        return Err(Error::InvalidInput(
            "log needs a unipotent lower triangular matrix".into(),
        ));
    }
    let x = u.sub(&BigMatrix::identity(u.size()))?;
    let (int_x, d) = x.scaled();
    let pows = powers(&int_x);
    let top = pows.len() - 1;
    if top == 0 {
        return Ok(BigMatrix::zeros(u.size()));
    }
    // sum_{k>=1} (-1)^(k+1) X^k / (d^k k) over d^top lcm(1..top)
    let lcm = (1..=top).fold(BigInt::one(), |a, k| a.lcm(&BigInt::from(k)));
    let mut coeffs = vec![BigInt::default()];
    for k in 1..=top {
        let c = Pow::pow(&d, (top - k) as u32) * (&lcm / BigInt::from(k));
        coeffs.push(if k % 2 == 1 { c } else { -c });
    }
    let den = Pow::pow(&d, top as u32) * lcm;
    Ok(combine(&pows, &coeffs, &den))
}
