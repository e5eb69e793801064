//! 2-adic valuation primitives.
//!
//! `nu2` works on exact integers. The factorial, binomial and multinomial
//! variants use the closed forms `nu2(n!) = n - d(n)` (Legendre) and
//! `nu2(C(n,k)) = d(k) + d(n-k) - d(n)` (Kummer), where `d` is the binary
//! digit sum, so they never materialize the underlying numbers.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::error::{Error, Result};

/// Largest `p` with `2^p | n`. Zero has no valuation and is rejected.
pub fn nu2(n: &BigInt) -> Result<u64> {
    n.trailing_zeros().ok_or(Error::ValuationOfZero)
}

pub fn nu2_u64(n: u64) -> Result<u64> {
    if n == 0 {
        Err(Error::ValuationOfZero)
    } else {
        Ok(u64::from(n.trailing_zeros()))
    }
}

pub fn nu2_biguint(n: &BigUint) -> Result<u64> {
    n.trailing_zeros().ok_or(Error::ValuationOfZero)
}

/// Binary digit sum `d(n)` of an arbitrary-precision natural.
pub fn digit_sum(n: &BigUint) -> u64 {
    if n.is_zero() {
        return 0;
    }
    n.iter_u64_digits().map(|w| u64::from(w.count_ones())).sum()
}

pub fn digit_sum_u64(n: u64) -> u64 {
    u64::from(n.count_ones())
}

/// `nu2(n!) = n - d(n)`.
pub fn nu2_factorial(n: u64) -> u64 {
    n - digit_sum_u64(n)
}

/// `nu2(C(n, k)) = d(k) + d(n - k) - d(n)`, the number of carries when adding
/// `k` and `n - k` in base 2.
pub fn nu2_binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Err(Error::Domain(format!("binomial C({n},{k}) needs k <= n")));
    }
    Ok(digit_sum_u64(k) + digit_sum_u64(n - k) - digit_sum_u64(n))
}

/// Valuation of the multinomial `n! / (n_1! ... n_p!)`.
pub fn nu2_multinomial(n: u64, parts: &[u64]) -> Result<u64> {
    let total: u64 = parts.iter().sum();
    if total != n {
        return Err(Error::Domain(format!(
            "multinomial parts sum to {total}, expected {n}"
        )));
    }
    let below: u64 = parts.iter().map(|&p| nu2_factorial(p)).sum();
    Ok(nu2_factorial(n) - below)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn exact_binomial(n: u64, k: u64) -> BigUint {
        let mut c = BigUint::one();
        for i in 0..k {
            c = c * BigUint::from(n - i) / BigUint::from(i + 1);
        }
        c
    }

    #[test]
    fn nu2_examples() {
        assert_eq!(nu2(&BigInt::from(12)).unwrap(), 2);
        assert_eq!(nu2(&BigInt::from(1)).unwrap(), 0);
        assert_eq!(nu2(&BigInt::from(-40)).unwrap(), 3);
        assert_eq!(nu2(&BigInt::zero()), Err(Error::ValuationOfZero));
        assert_eq!(nu2_u64(0), Err(Error::ValuationOfZero));
    }

    #[test]
    fn digit_sum_examples() {
        assert_eq!(digit_sum_u64(0), 0);
        assert_eq!(digit_sum_u64(11), 3);
        for t in 0..200u32 {
            assert_eq!(digit_sum(&(BigUint::one() << t)), 1);
        }
        let big = (BigUint::one() << 130u32) + BigUint::from(7u32);
        assert_eq!(digit_sum(&big), 4);
        assert_eq!(digit_sum(&BigUint::zero()), 0);
    }

    #[test]
    fn factorial_matches_running_product() {
        assert_eq!(nu2_factorial(0), 0);
        // 10! = 3628800 = 2^8 * 14175
        assert_eq!(nu2_biguint(&BigUint::from(3_628_800u32)).unwrap(), 8);
        assert_eq!(nu2_factorial(10), 8);
        let mut running = 0u64;
        for n in 1..=(1u64 << 14) {
            running += nu2_u64(n).unwrap();
            assert_eq!(nu2_factorial(n), running, "n = {n}");
        }
        for k in 1..500u64 {
            assert_eq!(nu2_factorial(2 * k - 1), nu2_factorial(2 * k - 2));
        }
    }

    #[test]
    fn binomial_matches_exact() {
        assert_eq!(nu2_binomial(10, 3).unwrap(), 3);
        assert_eq!(nu2_binomial(4, 2).unwrap(), 1);
        assert_eq!(nu2_binomial(9, 0).unwrap(), 0);
        assert!(nu2_binomial(3, 4).is_err());
        for n in 0..=300u64 {
            for k in 0..=n {
                let c = exact_binomial(n, k);
                assert_eq!(nu2_binomial(n, k).unwrap(), nu2_biguint(&c).unwrap());
            }
        }
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(nu2_multinomial(4, &[2, 2]).unwrap(), 1);
        assert_eq!(nu2_multinomial(7, &[7]).unwrap(), 0);
        assert_eq!(nu2_multinomial(3, &[1, 1, 1]).unwrap(), 1);
        assert!(nu2_multinomial(5, &[1, 1]).is_err());
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(10_000))]
        #[test]
        fn valuation_is_multiplicative_and_ultrametric(a in -1_000_000_000i64..1_000_000_000, b in -1_000_000_000i64..1_000_000_000) {
            proptest::prop_assume!(a != 0 && b != 0);
            let (ba, bb) = (BigInt::from(a), BigInt::from(b));
            let (va, vb) = (nu2(&ba).unwrap(), nu2(&bb).unwrap());
            proptest::prop_assert_eq!(nu2(&(&ba * &bb)).unwrap(), va + vb);
            let sum = &ba + &bb;
            if !sum.is_zero() {
                let vs = nu2(&sum).unwrap();
                proptest::prop_assert!(vs >= va.min(vb));
                if va != vb {
                    proptest::prop_assert_eq!(vs, va.min(vb));
                }
            }
        }
    }
}
