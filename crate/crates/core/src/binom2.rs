//! Binomial coefficients modulo 2.
//!
//! `C(n, k)` is odd exactly when the binary digits of `k` form a submask of
//! those of `n` (Lucas), and the 2-adic valuation of `C(a + b, a)` is the
//! number of carries produced when adding `a` and `b` in base 2 (Kummer).

use std::fmt;

/// An element of GF(2) represented as 0 or 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Bit(bool);

impl Bit {
    pub const ZERO: Bit = Bit(false);
    pub const ONE: Bit = Bit(true);

    pub fn value(self) -> u8 {
        self.0 as u8
    }

    pub fn is_one(self) -> bool {
        self.0
    }
}

impl From<bool> for Bit {
    fn from(b: bool) -> Self {
        Bit(b)
    }
}

impl std::ops::BitXor for Bit {
    type Output = Bit;
    fn bitxor(self, rhs: Bit) -> Bit {
        Bit(self.0 ^ rhs.0)
    }
}

impl std::ops::BitAnd for Bit {
    type Output = Bit;
    fn bitand(self, rhs: Bit) -> Bit {
        Bit(self.0 & rhs.0)
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Base-2 digits of a natural number, least significant first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryDigits {
    digits: Vec<u8>,
}

impl BinaryDigits {
    pub fn of(mut n: u64) -> Self {
        let mut digits = Vec::new();
        while n > 0 {
            digits.push((n & 1) as u8);
            n >>= 1;
        }
        Self { digits }
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// Digit `i`, zero past the most significant one.
    pub fn digit(&self, i: usize) -> u8 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    pub fn value(&self) -> u64 {
        self.digits
            .iter()
            .rev()
            .fold(0, |acc, &d| (acc << 1) | u64::from(d))
    }
}

/// `C(n, k) mod 2`; zero whenever `k < 0` or `k > n`.
#[inline]
pub fn binom_mod2(n: u64, k: i64) -> Bit {
    if k < 0 {
        return Bit::ZERO;
    }
    let k = k as u64;
    Bit(k <= n && k & !n == 0)
}

/// Number of carries when adding `a` and `b` in base 2.
pub fn carry_count(a: u64, b: u64) -> u32 {
    let sum = u128::from(a) + u128::from(b);
    a.count_ones() + b.count_ones() - sum.count_ones()
}

/// Parity of the Catalan number `C_n`: odd iff `n + 1` is a power of two.
pub fn catalan_is_odd(n: u64) -> Bit {
    Bit(n.checked_add(1).is_some_and(u64::is_power_of_two))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use num_traits::{One, Zero};

    fn big_binom(n: u64, k: u64) -> BigUint {
        let mut acc = BigUint::one();
        for i in 0..k {
            acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
        }
        acc
    }

    fn legendre_v2_factorial(mut n: u64) -> u32 {
        let mut v = 0;
        while n > 0 {
            n >>= 1;
            v += n as u32;
        }
        v
    }

    #[test]
    fn examples() {
        assert_eq!(binom_mod2(7, 3), Bit::ONE);
        assert_eq!(binom_mod2(2, 1), Bit::ZERO);
        assert_eq!(binom_mod2(15, 7), Bit::ONE);
        assert_eq!(binom_mod2(5, -1), Bit::ZERO);
        assert_eq!(binom_mod2(5, 6), Bit::ZERO);
        assert_eq!(binom_mod2(0, 0), Bit::ONE);
    }

    #[test]
    fn carry_examples() {
        assert_eq!(carry_count(2, 2), 1);
        for n in [0, 1, 17, 1 << 40] {
            assert_eq!(carry_count(0, n), 0);
        }
        for k in 0..20 {
            let n = (1u64 << k) - 1;
            assert_eq!(carry_count(n, n + 1), 0);
        }
        assert_eq!(carry_count(u64::MAX, 1), 64);
    }

    #[test]
    fn catalan_parity_examples() {
        assert_eq!(catalan_is_odd(0), Bit::ONE);
        assert_eq!(catalan_is_odd(4), Bit::ZERO);
        assert_eq!(catalan_is_odd(7), Bit::ONE);
        assert_eq!(catalan_is_odd(u64::MAX), Bit::ZERO);
    }

    #[test]
    fn lucas_matches_big_integers_small_range() {
        for n in 0..80u64 {
            for k in 0..=n {
                let parity = (big_binom(n, k) % 2u32) == BigUint::one();
                assert_eq!(binom_mod2(n, k as i64).is_one(), parity, "C({n},{k})");
            }
        }
    }

    #[test]
    fn kummer_matches_legendre_small_range() {
        for a in 0..200u64 {
            for b in 0..200u64 {
                let v = legendre_v2_factorial(a + b)
                    - legendre_v2_factorial(a)
                    - legendre_v2_factorial(b);
                assert_eq!(carry_count(a, b), v);
            }
        }
    }

    #[test]
    fn catalan_parity_via_reduction() {
        for n in 0..4096u64 {
            assert_eq!(catalan_is_odd(n), binom_mod2(2 * n + 1, n as i64));
        }
        // C_7 = 429
        let c7 = big_binom(14, 7) / BigUint::from(8u32);
        assert_eq!(c7, BigUint::from(429u32));
        assert!(!(c7 % 2u32).is_zero());
    }

    #[test]
    fn digits_roundtrip() {
        let d = BinaryDigits::of(720);
        assert_eq!(d.digits(), &[0, 0, 0, 0, 1, 0, 1, 1, 0, 1]);
        assert_eq!(d.value(), 720);
        assert_eq!(d.digit(40), 0);
        assert!(BinaryDigits::of(0).digits().is_empty());
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn pascal_recurrence(n in 1u64..(1 << 16), k in -2i64..(1 << 16)) {
                prop_assert_eq!(
                    binom_mod2(n, k),
                    binom_mod2(n - 1, k - 1) ^ binom_mod2(n - 1, k)
                );
            }

            #[test]
            fn halving_identity(n in 0u64..(1 << 15), k in 0i64..(1 << 16)) {
                prop_assert_eq!(binom_mod2(2 * n + 1, k), binom_mod2(n, k / 2));
            }

            #[test]
            fn digits_reconstruct(n in any::<u64>()) {
                let d = BinaryDigits::of(n);
                prop_assert!(d.digits().iter().all(|&x| x <= 1));
                prop_assert_eq!(d.value(), n);
            }
        }
    }
}
