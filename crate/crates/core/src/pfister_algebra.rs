//! The algebra `B = Z[X_1..X_n] / (X_i^2 - 2 X_i)`.
//!
//! `B` is free over `Z` on the square-free monomials `Y_J`, `J ⊆ {1..n}`.
//! A subset is encoded as a bitmask (bit `i-1` names generator `i`), and
//! `Y_J * Y_K = 2^|J ∩ K| Y_{J ∪ K}`. The generator `Y_i` plays the role of
//! the one-fold Pfister form `<<a_i>>`, so `sum_i Y_i - n` models a diagonal
//! form `<a_1, ..., a_n>`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polynomial::IntPolynomial;
use crate::stirling::StirlingTable;

pub const MAX_RANK: u32 = 16;

fn check_rank(n: u32) -> Result<()> {
    if n > MAX_RANK {
        return Err(Error::SizeCap {
            what: "rank",
            value: u64::from(n),
            max: u64::from(MAX_RANK),
        });
    }
    Ok(())
}

/// Sparse element of `B`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    rank: u32,
    coeffs: BTreeMap<u32, BigInt>,
}

impl AlgebraElement {
    pub fn zero(rank: u32) -> Result<Self> {
        check_rank(rank)?;
        Ok(Self {
            rank,
            coeffs: BTreeMap::new(),
        })
    }

    pub fn scalar(rank: u32, c: impl Into<BigInt>) -> Result<Self> {
        Self::basis(rank, 0, c)
    }

    /// `c * Y_J` with `J` given as a bitmask.
    pub fn basis(rank: u32, subset: u32, c: impl Into<BigInt>) -> Result<Self> {
        let mut e = Self::zero(rank)?;
        if u64::from(subset) >= 1u64 << rank {
            return Err(Error::Domain(format!(
                "subset {subset:#b} outside rank {rank}"
            )));
        }
        e.add_term(subset, c.into());
        Ok(e)
    }

    /// `Y_1 + ... + Y_n`.
    pub fn generator_sum(rank: u32) -> Result<Self> {
        let mut e = Self::zero(rank)?;
        for i in 0..rank {
            e.add_term(1 << i, BigInt::one());
        }
        Ok(e)
    }

    /// `sum_{|J| = p} A_p Y_J`.
    pub fn from_symmetric(coeffs: &ExpansionCoefficients) -> Result<Self> {
        let rank = coeffs.n;
        let mut e = Self::zero(rank)?;
        for subset in 0..(1u32 << rank) {
            let p = subset.count_ones() as usize;
            if let Some(a) = coeffs.a.get(p) {
                e.add_term(subset, a.clone());
            }
        }
        Ok(e)
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn coeff(&self, subset: u32) -> BigInt {
        self.coeffs.get(&subset).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending subset order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().map(|(&s, c)| (s, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, subset: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(subset).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&subset);
        }
    }

    fn same_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_rank(other)?;
        let mut out = self.clone();
        for (s, c) in other.terms() {
            out.add_term(s, c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_rank(other)?;
        let mut out = Self::zero(self.rank)?;
        for (j, a) in self.terms() {
            for (k, b) in other.terms() {
                let shared = (j & k).count_ones();
                out.add_term(j | k, (a * b) << shared);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self {
            rank: self.rank,
            coeffs: BTreeMap::new(),
        };
        for (s, x) in self.terms() {
            out.add_term(s, x * c);
        }
        out
    }

    /// Reduces every coefficient into `[0, 2^r)`.
    pub fn reduce_mod_2r(&self, r: u32) -> Self {
        let modulus = BigInt::one() << r;
        let mut out = Self {
            rank: self.rank,
            coeffs: BTreeMap::new(),
        };
        for (s, c) in self.terms() {
            let mut m = c % &modulus;
            if m.is_negative() {
                m += &modulus;
            }
            out.add_term(s, m);
        }
        out
    }

    /// The `A_p` if the coefficient of `Y_J` depends only on `|J|`.
    pub fn symmetric_coefficients(&self) -> Option<ExpansionCoefficients> {
        let mut a: Vec<Option<BigInt>> = vec![None; self.rank as usize + 1];
        for subset in 0..(1u32 << self.rank) {
            let p = subset.count_ones() as usize;
            let c = self.coeff(subset);
            match &a[p] {
                None => a[p] = Some(c),
                Some(prev) if *prev != c => return None,
                Some(_) => {}
            }
        }
        Some(ExpansionCoefficients {
            n: self.rank,
            a: a.into_iter().map(Option::unwrap_or_default).collect(),
        })
    }

    /// Horner evaluation of `f` at `self`.
    pub fn eval_poly(&self, f: &IntPolynomial) -> Result<Self> {
        let mut acc = Self::zero(self.rank)?;
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(self)?;
            acc.add_term(0, c.clone());
        }
        Ok(acc)
    }
}

impl fmt::Display for AlgebraElement {
    /// e.g. `4*Y{} + 2*Y{1} + 12*Y{1,2}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (s, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let members: Vec<String> = (0..self.rank)
                .filter(|i| s & (1 << i) != 0)
                .map(|i| (i + 1).to_string())
                .collect();
            write!(f, "{c}*Y{{{}}}", members.join(","))?;
        }
        Ok(())
    }
}

/// `f(sum_i Y_i)` by direct multiplication in `B`.
pub fn eval_at_generator_sum(f: &IntPolynomial, n: u32) -> Result<AlgebraElement> {
    AlgebraElement::generator_sum(n)?.eval_poly(f)
}

/// `f(sum_i Y_i - n)` by direct multiplication in `B`.
pub fn eval_at_shifted_generator_sum(f: &IntPolynomial, n: u32) -> Result<AlgebraElement> {
    let point = AlgebraElement::generator_sum(n)?
        .add(&AlgebraElement::scalar(n, -BigInt::from(n))?)?;
    point.eval_poly(f)
}

/// Coefficients `A_0..A_n` of a symmetric element
/// `sum_p A_p (sum_{|J|=p} Y_J)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionCoefficients {
    pub n: u32,
    #[serde(rename = "A", with = "decimal_strings")]
    pub a: Vec<BigInt>,
}

impl ExpansionCoefficients {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("coefficients serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

mod decimal_strings {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .into_iter()
            .map(|t| t.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `gamma_{p,q} = 2^(q-p) p! S(q,p)` for `p <= q`.
fn gamma(table: &StirlingTable, p: usize, q: usize) -> BigInt {
    if p > q {
        return BigInt::zero();
    }
    (factorial(p) * BigInt::from(table.get(q, p).clone())) << (q - p)
}

/// Closed-form `A_p` of `f(sum_i Y_i)`:
/// `A_0 = c_0`, `A_p = sum_{q >= p} 2^(q-p) p! S(q,p) c_q`.
pub fn expansion_coefficients(f: &IntPolynomial, n: u32) -> Result<ExpansionCoefficients> {
    check_rank(n)?;
    let d = f.degree().unwrap_or(0);
    let table = StirlingTable::new(d);
    let mut a = vec![BigInt::zero(); n as usize + 1];
    a[0] = f.coeff(0);
    for (p, slot) in a.iter_mut().enumerate().skip(1) {
        for q in p..=d {
            *slot += gamma(&table, p, q) * f.coeff(q);
        }
    }
    Ok(ExpansionCoefficients { n, a })
}

/// `A_p` of `f(sum_i Y_i - n)` via the double sum
/// `A_p = sum_{q >= p} sum_{t >= q} 2^(q-p) p! S(q,p) C(t,q) (-n)^(t-q) c_t`.
pub fn shifted_expansion_coefficients(
    f: &IntPolynomial,
    n: u32,
) -> Result<ExpansionCoefficients> {
    check_rank(n)?;
    let d = f.degree().unwrap_or(0);
    let table = StirlingTable::new(d);
    let minus_n = -BigInt::from(n);
    let powers: Vec<BigInt> = (0..=d).map(|e| minus_n.pow(e as u32)).collect();
    let mut binom = vec![vec![BigInt::zero(); d + 1]; d + 1];
    for t in 0..=d {
        binom[t][0] = BigInt::one();
        for q in 1..=t {
            binom[t][q] = &binom[t - 1][q - 1] + if q < t { binom[t - 1][q].clone() } else { BigInt::zero() };
        }
    }
    let mut a = vec![BigInt::zero(); n as usize + 1];
    for (p, slot) in a.iter_mut().enumerate() {
        for q in p..=d {
            let g = if p == 0 {
                // 2^q 0! S(q,0) vanishes except at q = 0
                if q == 0 { BigInt::one() } else { continue }
            } else {
                gamma(&table, p, q)
            };
            for t in q..=d {
                let c = f.coeff(t);
                if c.is_zero() {
                    continue;
                }
                *slot += &g * &binom[t][q] * &powers[t - q] * c;
            }
        }
    }
    Ok(ExpansionCoefficients { n, a })
}
