//! Stirling numbers of the second kind.
//!
//! The memoized recurrence `S(n,k) = S(n-1,k-1) + k S(n-1,k)` is the
//! workhorse. The alternating-sum and composition-sum formulas are kept as
//! independent routes and divide by `k!` with an exactness check.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polynomial::IntPolynomial;
use crate::valuation::{digit_sum_u64, nu2_biguint};

/// Largest `n` accepted by [`stirling2_compositions`].
pub const COMPOSITION_CAP: u64 = 25;

/// Triangle `S(n,k)` for `0 <= k <= n <= max_n`.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    rows: Vec<Vec<BigUint>>,
}

impl StirlingTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigUint::one()]);
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = vec![BigUint::zero(); n + 1];
            for k in 1..=n {
                let mut v = prev.get(k - 1).cloned().unwrap_or_default();
                if let Some(s) = prev.get(k) {
                    v += s * BigUint::from(k);
                }
                row[k] = v;
            }
            rows.push(row);
        }
        Self { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `S(n,k)`; zero outside the triangle. Panics if `n > max_n`.
    pub fn get(&self, n: usize, k: usize) -> &BigUint {
        static ZERO: std::sync::OnceLock<BigUint> = std::sync::OnceLock::new();
        self.rows[n]
            .get(k)
            .unwrap_or_else(|| ZERO.get_or_init(BigUint::zero))
    }

    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.rows[n]
    }

    /// Bell number `B(n)`, the row sum.
    pub fn bell(&self, n: usize) -> BigUint {
        self.rows[n].iter().sum()
    }
}

pub fn stirling2(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    StirlingTable::new(n as usize).get(n as usize, k as usize).clone()
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

fn binomial(n: u64, k: u64) -> BigUint {
    let mut c = BigUint::one();
    for i in 0..k {
        c = c * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    c
}

fn exact_div(num: BigInt, k: u64) -> Result<BigUint> {
    let (q, r) = num.div_rem(&BigInt::from(factorial(k)));
    if !r.is_zero() {
        return Err(Error::InexactDivision(format!("sum not divisible by {k}!")));
    }
    q.to_biguint()
        .ok_or_else(|| Error::Internal("negative Stirling value".into()))
}

/// `S(n,k) = (1/k!) sum_{i=0}^{k} (-1)^i C(k, k-i) (k-i)^n`.
pub fn stirling2_alt_sum(n: u64, k: u64) -> Result<BigUint> {
    let mut sum = BigInt::zero();
    for i in 0..=k {
        let term = BigInt::from(binomial(k, k - i) * BigUint::from(k - i).pow(n as u32));
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    exact_div(sum, k)
}

/// `S(n,k) = (1/k!) sum n!/(n_1! ... n_k!)` over compositions of `n` into `k`
/// positive parts. Exponential in `n`; capped at [`COMPOSITION_CAP`].
pub fn stirling2_compositions(n: u64, k: u64) -> Result<BigUint> {
    if n > COMPOSITION_CAP {
        return Err(Error::SizeCap {
            what: "n",
            value: n,
            max: COMPOSITION_CAP,
        });
    }
    if k == 0 || k > n {
        return Ok(if n == k { BigUint::one() } else { BigUint::zero() });
    }
    let facts: Vec<BigUint> = (0..=n).map(factorial).collect();
    let mut sum = BigUint::zero();
    let mut parts = vec![1u64; k as usize];
    // parts[0..k-1] free, last part determined
    fn walk(
        idx: usize,
        remaining: u64,
        parts: &mut [u64],
        facts: &[BigUint],
        n: u64,
        sum: &mut BigUint,
    ) {
        let k = parts.len();
        if idx == k - 1 {
            parts[idx] = remaining;
            let denom: BigUint = parts.iter().map(|&p| &facts[p as usize]).product();
            *sum += &facts[n as usize] / denom;
            return;
        }
        let slots_after = (k - idx - 1) as u64;
        for p in 1..=(remaining - slots_after) {
            parts[idx] = p;
            walk(idx + 1, remaining - p, parts, facts, n, sum);
        }
    }
    walk(0, n, &mut parts, &facts, n, &mut sum);
    exact_div(BigInt::from(sum), k)
}

/// Checks `x^n = sum_k S(n,k) (x)_k` as an identity in `Z[x]`.
pub fn falling_factorial_identity_check(n: u64) -> bool {
    let table = StirlingTable::new(n as usize);
    let mut total = IntPolynomial::zero();
    let mut falling = IntPolynomial::one();
    for k in 0..=n as usize {
        if k > 0 {
            falling = &falling * &IntPolynomial::linear_root((k - 1) as i64);
        }
        let s = BigInt::from(table.get(n as usize, k).clone());
        total = &total + &falling.scale(&s);
    }
    total == IntPolynomial::monomial(1, n as usize)
}

/// One `(n, k)` cell of a bound scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub n: u64,
    pub k: u64,
    pub nu2: u64,
    pub lower: i64,
    pub margin: i64,
}

fn margin_from(n: u64, k: u64, s: &BigUint) -> Result<BoundRow> {
    let nu = nu2_biguint(s)?;
    let lower = digit_sum_u64(k) as i64 - digit_sum_u64(n) as i64;
    Ok(BoundRow {
        n,
        k,
        nu2: nu,
        lower,
        margin: nu as i64 - lower,
    })
}

/// `nu2(S(n,k)) - (d(k) - d(n))`, which is never negative.
pub fn bound_margin(n: u64, k: u64) -> Result<i64> {
    if k == 0 || k > n {
        return Err(Error::Domain(format!(
            "bound_margin needs 0 < k <= n, got ({n},{k})"
        )));
    }
    Ok(margin_from(n, k, &stirling2(n, k))?.margin)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub max_n: u64,
    pub rows: Vec<BoundRow>,
    pub tight_rows: usize,
    pub violations: usize,
}

impl BoundReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn first_violation(&self) -> Option<&BoundRow> {
        self.rows.iter().find(|r| r.margin < 0)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,k,nu2,lower,margin\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{},{}\n", r.n, r.k, r.nu2, r.lower, r.margin));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.rows).expect("rows serialize")
    }
}

/// Margins for every `0 < k <= n <= max_n`, rows in `(n, k)` order.
pub fn scan_bound(max_n: u64) -> Result<BoundReport> {
    if max_n == 0 {
        return Err(Error::Domain("scan_bound needs max_n >= 1".into()));
    }
    let table = StirlingTable::new(max_n as usize);
    let mut rows = Vec::new();
    for n in 1..=max_n {
        for k in 1..=n {
            rows.push(margin_from(n, k, table.get(n as usize, k as usize))?);
        }
    }
    let tight_rows = rows.iter().filter(|r| r.margin == 0).count();
    let violations = rows.iter().filter(|r| r.margin < 0).count();
    Ok(BoundReport {
        max_n,
        rows,
        tight_rows,
        violations,
    })
}
