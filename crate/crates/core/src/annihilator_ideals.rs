//! Scaled-monomial ideals of `Z[X]` that annihilate Witt rings, and symbolic
//! checks of their annihilation properties inside `B / 2^r B`.
//!
//! With `k = k(r)` the unique integer with `nu2((2k-2)!) < r <= nu2((2k)!)`:
//!
//! * `J'_{e,r} = (2^r X, 2^{r - nu2((2i)!)} X^{2i} for 1 <= i < k, X^{2k})`
//! * `J_{e,r}` replaces `2^r X` by `2^r`
//! * `J_{o,r}` is `J_{e,r}` with `X` replaced by `X - 1`
//! * `J_r = (2^{r - nu2((2i)!)} X^{2i} (X-1)^{2i} for 0 <= i < k, X^{2k} (X-1)^{2k})`
//!
//! Membership in an ideal generated by terms `2^a X^e` is decided
//! coefficient-wise: the coefficient of `X^j` must be divisible by
//! `2^{min a}` over the generators with `e <= j`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pfister_algebra::{
    eval_at_generator_sum, eval_at_shifted_generator_sum, shifted_expansion_coefficients,
    MAX_RANK,
};
use crate::polynomial::IntPolynomial;
use crate::stirling::StirlingTable;
use crate::valuation::{nu2, nu2_binomial, nu2_biguint, nu2_factorial, nu2_u64};

/// The unique `k >= 1` with `nu2((2k-2)!) < r <= nu2((2k)!)`.
pub fn k_of_r(r: u32) -> u32 {
    let r = u64::from(r);
    let mut k = 1u32;
    while nu2_factorial(2 * u64::from(k)) < r {
        k += 1;
    }
    k
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IdealKind {
    /// `J'_{e,r}`
    JprimeE,
    /// `J_{e,r}`
    JE,
    /// `J_{o,r}`
    JO,
    /// `J_r`
    Jfull,
}

impl IdealKind {
    pub const ALL: [IdealKind; 4] = [Self::JprimeE, Self::JE, Self::JO, Self::Jfull];

    pub fn name(self) -> &'static str {
        match self {
            Self::JprimeE => "jprime-e",
            Self::JE => "j-e",
            Self::JO => "j-o",
            Self::Jfull => "j",
        }
    }
}

impl std::str::FromStr for IdealKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown ideal `{s}` (jprime-e, j-e, j-o, j)")))
    }
}

/// `2^two_exp * X^x_power * (X - 1)^shifted_power`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScaledMonomial {
    pub two_exp: u32,
    pub x_power: u32,
    pub shifted_power: u32,
}

impl ScaledMonomial {
    pub fn new(two_exp: u32, x_power: u32, shifted_power: u32) -> Self {
        Self {
            two_exp,
            x_power,
            shifted_power,
        }
    }

    pub fn to_polynomial(&self) -> IntPolynomial {
        let x = IntPolynomial::x().pow(self.x_power);
        let shifted = IntPolynomial::linear_root(1).pow(self.shifted_power);
        (&x * &shifted).scale(&(BigInt::one() << self.two_exp))
    }

    pub fn degree(&self) -> u32 {
        self.x_power + self.shifted_power
    }
}

fn power_text(base: &str, e: u32, wrap: bool) -> String {
    match (e, wrap) {
        (0, _) => String::new(),
        (1, _) => base.to_string(),
        (_, true) => format!("({base})^{e}"),
        (_, false) => format!("{base}^{e}"),
    }
}

impl fmt::Display for ScaledMonomial {
    /// Factored form, e.g. `8X`, `X^4`, `2(X-1)^2`, `2X^2(X-1)^2`, `16`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = power_text("X", self.x_power, false);
        let shifted = match self.shifted_power {
            0 => String::new(),
            1 => "(X-1)".to_string(),
            e => power_text("X-1", e, true),
        };
        let body = format!("{x}{shifted}");
        let c = BigInt::one() << self.two_exp;
        if body.is_empty() {
            write!(f, "{c}")
        } else if c.is_one() {
            f.write_str(&body)
        } else {
            write!(f, "{c}{body}")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealSpec {
    pub kind: IdealKind,
    pub r: u32,
    pub k: u32,
    pub generators: Vec<ScaledMonomial>,
}

impl IdealSpec {
    pub fn polynomials(&self) -> Vec<IntPolynomial> {
        self.generators.iter().map(ScaledMonomial::to_polynomial).collect()
    }

    /// Comma-separated generator list, e.g. `8X, 4X^2, X^4`.
    pub fn generator_text(&self) -> String {
        self.generators
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn check_r(r: u32) -> Result<()> {
    if r == 0 {
        return Err(Error::Domain("r must be >= 1".into()));
    }
    Ok(())
}

/// Two-exponents `r - nu2((2i)!)` for `i = 0..k-1`, then `0` for `i = k`.
fn exponent_ladder(r: u32) -> Vec<u32> {
    let k = k_of_r(r);
    let mut out: Vec<u32> = (0..k)
        .map(|i| r - nu2_factorial(2 * u64::from(i)) as u32)
        .collect();
    out.push(0);
    out
}

/// Generator list in ascending degree.
pub fn generators(kind: IdealKind, r: u32) -> Result<IdealSpec> {
    check_r(r)?;
    let k = k_of_r(r);
    let ladder = exponent_ladder(r);
    let generators = ladder
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let e = 2 * i as u32;
            match kind {
                IdealKind::JprimeE if i == 0 => ScaledMonomial::new(r, 1, 0),
                IdealKind::JprimeE | IdealKind::JE => ScaledMonomial::new(a, e, 0),
                IdealKind::JO => ScaledMonomial::new(a, 0, e),
                IdealKind::Jfull => ScaledMonomial::new(a, e, e),
            }
        })
        .collect();
    Ok(IdealSpec {
        kind,
        r,
        k,
        generators,
    })
}

/// Divisibility condition on one coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Requirement {
    /// The coefficient must be divisible by `2^a`.
    DivisibleBy(u32),
    /// No generator reaches this degree; the coefficient must be zero.
    MustVanish,
}

impl Requirement {
    pub fn admits(self, c: &BigInt) -> bool {
        match self {
            Self::MustVanish => c.is_zero(),
            Self::DivisibleBy(a) => c.is_zero() || nu2(c).is_ok_and(|v| v >= u64::from(a)),
        }
    }
}

fn requirement_from(gens: &[ScaledMonomial], j: u32) -> Requirement {
    gens.iter()
        .filter(|g| g.x_power <= j)
        .map(|g| g.two_exp)
        .min()
        .map_or(Requirement::MustVanish, Requirement::DivisibleBy)
}

/// Minimal 2-exponent allowed for the coefficient of `X^j`.
pub fn required_exponent(j: u32, kind: IdealKind, r: u32) -> Result<Requirement> {
    if !matches!(kind, IdealKind::JprimeE | IdealKind::JE) {
        return Err(Error::Domain(format!(
            "required_exponent is defined for monomial ideals only, not {}",
            kind.name()
        )));
    }
    Ok(requirement_from(&generators(kind, r)?.generators, j))
}

fn first_bad_coefficient(f: &IntPolynomial, gens: &[ScaledMonomial]) -> Option<usize> {
    f.coeffs()
        .iter()
        .enumerate()
        .find(|(j, c)| !requirement_from(gens, *j as u32).admits(c))
        .map(|(j, _)| j)
}

pub fn is_member(f: &IntPolynomial, kind: IdealKind, r: u32) -> Result<bool> {
    check_r(r)?;
    Ok(match kind {
        IdealKind::JprimeE | IdealKind::JE => {
            first_bad_coefficient(f, &generators(kind, r)?.generators).is_none()
        }
        IdealKind::JO => is_member(&f.taylor_shift(&BigInt::one()), IdealKind::JE, r)?,
        IdealKind::Jfull => {
            is_member(f, IdealKind::JE, r)? && is_member(f, IdealKind::JO, r)?
        }
    })
}

/// Explicit witness that `f` lies in `J_{e,r} * J_{o,r}`:
/// `f = (f u) X^{2k} + (f v) (X-1)^{2k}` where `u X^{2k} + v (X-1)^{2k} = 1`.
/// The first summand is `J_{o,r}`-element times `X^{2k}`, the second is
/// `J_{e,r}`-element times `(X-1)^{2k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductCertificate {
    pub odd_factor: IntPolynomial,
    pub even_factor: IntPolynomial,
}

pub fn product_certificate(f: &IntPolynomial, r: u32) -> Result<Option<ProductCertificate>> {
    if !is_member(f, IdealKind::Jfull, r)? {
        return Ok(None);
    }
    let k = k_of_r(r);
    let (u, v) = comaximality_witness(k)?;
    Ok(Some(ProductCertificate {
        odd_factor: f * &u,
        even_factor: f * &v,
    }))
}

// Dense polynomials over Q, only for the Bezout construction.
type QPoly = Vec<BigRational>;

fn q_trim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn q_from(p: &IntPolynomial) -> QPoly {
    p.coeffs()
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

fn q_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    q_trim(
        (0..n)
            .map(|i| {
                a.get(i).cloned().unwrap_or_else(BigRational::zero)
                    - b.get(i).cloned().unwrap_or_else(BigRational::zero)
            })
            .collect(),
    )
}

fn q_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    q_trim(out)
}

fn q_divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let mut rem = a.clone();
    let lead = b.last().expect("nonzero divisor").clone();
    let mut quot = vec![BigRational::zero(); a.len().saturating_sub(b.len()) + 1];
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / &lead;
        for (i, y) in b.iter().enumerate() {
            rem[shift + i] -= &c * y;
        }
        quot[shift] = c;
        rem = q_trim(rem);
    }
    (q_trim(quot), rem)
}

/// Integer `u, v` with `u X^{2k} + v (X-1)^{2k} = 1`, by the extended
/// Euclidean algorithm over `Q` followed by clearing denominators.
pub fn comaximality_witness(k: u32) -> Result<(IntPolynomial, IntPolynomial)> {
    if k == 0 {
        return Err(Error::Domain("comaximality witness needs k >= 1".into()));
    }
    let a = IntPolynomial::x().pow(2 * k);
    let b = IntPolynomial::linear_root(1).pow(2 * k);
    let one = vec![BigRational::one()];
    let (mut r0, mut r1) = (q_from(&a), q_from(&b));
    let (mut s0, mut s1): (QPoly, QPoly) = (one.clone(), Vec::new());
    let (mut t0, mut t1): (QPoly, QPoly) = (Vec::new(), one);
    while !r1.is_empty() {
        let (q, rem) = q_divrem(&r0, &r1);
        let s2 = q_sub(&s0, &q_mul(&q, &s1));
        let t2 = q_sub(&t0, &q_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.len() != 1 {
        return Err(Error::Internal("X^2k and (X-1)^2k share a factor".into()));
    }
    let g = r0[0].clone();
    let u: QPoly = s0.iter().map(|c| c / &g).collect();
    let v: QPoly = t0.iter().map(|c| c / &g).collect();
    let denom = u
        .iter()
        .chain(v.iter())
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let clear = |p: &QPoly| {
        IntPolynomial::new(
            p.iter()
                .map(|c| (c * BigRational::from_integer(denom.clone())).to_integer())
                .collect(),
        )
    };
    let (u, v) = (clear(&u), clear(&v));
    let identity = &(&u * &a) + &(&v * &b);
    if identity != IntPolynomial::one() {
        return Err(Error::Internal(format!(
            "Bezout identity expands to {identity}, not 1"
        )));
    }
    Ok((u, v))
}

/// A failing instance found by one of the symbolic checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub polynomial: String,
    pub n: u32,
    pub r: u32,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub params: serde_json::Map<String, serde_json::Value>,
    pub passed: bool,
    pub cases: u64,
    pub counterexample: Option<Counterexample>,
}

impl CheckReport {
    fn new(name: &str, params: serde_json::Value) -> Self {
        let params = match params {
            serde_json::Value::Object(m) => m,
            _ => serde_json::Map::new(),
        };
        Self {
            name: name.to_string(),
            params,
            passed: true,
            cases: 0,
            counterexample: None,
        }
    }

    fn fail(&mut self, cx: Counterexample) {
        if self.counterexample.is_none() {
            self.counterexample = Some(cx);
        }
        self.passed = false;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// First `n` in `1..=n_max` for which `f(Y_1 + ... + Y_n)` is nonzero in
/// `B / 2^r B`, or `None` if `f` vanishes for all of them.
pub fn generic_annihilation_failure(
    f: &IntPolynomial,
    r: u32,
    n_max: u32,
) -> Result<Option<u32>> {
    check_r(r)?;
    if !f.coeff(0).is_zero() {
        return Err(Error::Domain("generic annihilation test needs c_0 = 0".into()));
    }
    if n_max > MAX_RANK {
        return Err(Error::SizeCap {
            what: "n_max",
            value: u64::from(n_max),
            max: u64::from(MAX_RANK),
        });
    }
    for n in 1..=n_max {
        if !eval_at_generator_sum(f, n)?.reduce_mod_2r(r).is_zero() {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

pub fn generic_annihilation_test(f: &IntPolynomial, r: u32, n_max: u32) -> Result<bool> {
    Ok(generic_annihilation_failure(f, r, n_max)?.is_none())
}

/// `nu2(2^(q-j) j! S(q,j) C(e,q) n^(e-q) 2^a)`, or `None` when the term is 0.
fn term_valuation(table: &StirlingTable, a: u32, e: u32, q: u32, j: u32, n: u32) -> Option<u64> {
    let s = table.get(q as usize, j as usize);
    if s.is_zero() || (n == 0 && e > q) {
        return None;
    }
    let n_part = if e > q {
        u64::from(e - q) * nu2_u64(u64::from(n)).ok()?
    } else {
        0
    };
    Some(
        u64::from(a)
            + u64::from(q - j)
            + nu2_factorial(u64::from(j))
            + nu2_biguint(s).ok()?
            + nu2_binomial(u64::from(e), u64::from(q)).ok()?
            + n_part,
    )
}

/// Shifted evaluation check of an arbitrary list of `2^a X^e` generators:
/// every `g(Y_1 + ... + Y_n - n)` with even `n <= n_max` must vanish mod
/// `2^r`, and every term of the expansion must have valuation `>= r`.
pub fn lemma_32_check_generators(
    r: u32,
    gens: &[ScaledMonomial],
    n_max: u32,
) -> Result<CheckReport> {
    check_r(r)?;
    if n_max > MAX_RANK {
        return Err(Error::SizeCap {
            what: "n_max",
            value: u64::from(n_max),
            max: u64::from(MAX_RANK),
        });
    }
    let mut report = CheckReport::new(
        "lemma32",
        serde_json::json!({
            "r": r,
            "n_max": n_max,
            "generators": gens.iter().map(ToString::to_string).collect::<Vec<_>>(),
        }),
    );
    let max_deg = gens.iter().map(|g| g.x_power).max().unwrap_or(0);
    let table = StirlingTable::new(max_deg as usize);
    for g in gens {
        if g.shifted_power != 0 {
            return Err(Error::Domain("lemma 3.2 check takes X-monomials only".into()));
        }
        let poly = g.to_polynomial();
        for n in (0..=n_max).step_by(2) {
            report.cases += 1;
            let value = eval_at_shifted_generator_sum(&poly, n)?.reduce_mod_2r(r);
            if !value.is_zero() {
                report.fail(Counterexample {
                    polynomial: poly.to_string(),
                    n,
                    r,
                    detail: format!("shifted evaluation mod 2^{r} is {value}"),
                });
            }
            let e = g.x_power;
            for q in 0..=e {
                for j in 0..=q.min(n) {
                    if let Some(v) = term_valuation(&table, g.two_exp, e, q, j, n) {
                        if v < u64::from(r) {
                            report.fail(Counterexample {
                                polynomial: poly.to_string(),
                                n,
                                r,
                                detail: format!("term (q={q}, j={j}) has valuation {v} < {r}"),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

pub fn lemma_32_check(r: u32, n_max: u32) -> Result<CheckReport> {
    lemma_32_check_generators(r, &generators(IdealKind::JprimeE, r)?.generators, n_max)
}

/// `f` below degree `2k` written as
/// `sum_j 2^{r - nu2((2j)!)} X^{2j} (b_{2j+1} X + b_{2j})`, if possible.
pub fn paired_normal_form(f: &IntPolynomial, r: u32) -> Option<Vec<(BigInt, BigInt)>> {
    if !f.coeff(0).is_zero() {
        return None;
    }
    let k = k_of_r(r);
    if f.degree().is_some_and(|d| d >= 2 * k as usize) {
        return None;
    }
    let mut pairs = Vec::new();
    for j in 0..k as usize {
        let a = r - nu2_factorial(2 * j as u64) as u32;
        let unit = BigInt::one() << a;
        let split = |c: BigInt| {
            let (q, rem) = c.div_rem(&unit);
            rem.is_zero().then_some(q)
        };
        // the X^0 slot belongs to the 2^r X generator, so b_0 is forced to 0
        let low = if j == 0 { Some(BigInt::zero()) } else { split(f.coeff(2 * j)) }?;
        let high = split(f.coeff(2 * j + 1))?;
        pairs.push((high, low));
    }
    let rebuilt = pairs
        .iter()
        .enumerate()
        .fold(IntPolynomial::zero(), |acc, (j, (high, low))| {
            let a = r - nu2_factorial(2 * j as u64) as u32;
            let lin = IntPolynomial::new(vec![low.clone(), high.clone()]);
            &acc + &(&IntPolynomial::monomial(BigInt::one() << a, 2 * j) * &lin)
        });
    (rebuilt == *f).then_some(pairs)
}

/// Coefficient criterion `nu2(c_n) >= r - nu2(n!)` for `1 <= n < 2k`.
fn coefficient_criterion(f: &IntPolynomial, r: u32) -> bool {
    f.coeffs().iter().enumerate().skip(1).all(|(n, c)| {
        let need = i64::from(r) - nu2_factorial(n as u64) as i64;
        c.is_zero() || need <= 0 || nu2(c).is_ok_and(|v| v as i64 >= need)
    })
}

fn random_polynomial(rng: &mut ChaCha8Rng, degree: u32, r: u32) -> IntPolynomial {
    let bound = 1i64 << (r + 2);
    let mut coeffs = vec![BigInt::zero()];
    for _ in 1..=degree {
        // pick a random 2-power stride so divisible coefficients are common
        let stride = 1i64 << rng.gen_range(0..=r + 2);
        let m = bound / stride;
        coeffs.push(BigInt::from(rng.gen_range(-m..=m) * stride));
    }
    IntPolynomial::new(coeffs)
}

/// Biconditional between symbolic annihilation of even torsion forms and
/// the coefficient criterion, on seeded random polynomials of degree
/// `< 2k(r)` with zero constant term, plus the generators themselves.
pub fn theorem_equivalence_check(r: u32, trials: u32, seed: u64) -> Result<CheckReport> {
    check_r(r)?;
    let k = k_of_r(r);
    let top = 2 * k - 1;
    if top > MAX_RANK {
        return Err(Error::SizeCap {
            what: "2k(r)-1",
            value: u64::from(top),
            max: u64::from(MAX_RANK),
        });
    }
    let mut report = CheckReport::new(
        "theorem",
        serde_json::json!({ "r": r, "trials": trials, "seed": seed }),
    );
    let mut members = 0u64;
    let mut cases: Vec<IntPolynomial> = generators(IdealKind::JprimeE, r)?
        .polynomials()
        .into_iter()
        .filter(|g| g.degree().is_some_and(|d| d < 2 * k as usize))
        .collect();
    let directed = cases.len();
    for i in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(u64::from(i)));
        cases.push(random_polynomial(&mut rng, top, r));
    }
    for (idx, f) in cases.iter().enumerate() {
        report.cases += 1;
        let failure = generic_annihilation_failure(f, r, top)?;
        let annihilates = failure.is_none();
        let criterion = coefficient_criterion(f, r);
        let member = is_member(f, IdealKind::JprimeE, r)?;
        let paired = paired_normal_form(f, r).is_some();
        members += u64::from(member);
        let detail = if idx < directed && !annihilates {
            Some("generator does not annihilate".to_string())
        } else if annihilates != criterion || criterion != member || member != paired {
            Some(format!(
                "annihilates={annihilates} criterion={criterion} member={member} paired={paired}"
            ))
        } else {
            None
        };
        if let Some(detail) = detail {
            report.fail(Counterexample {
                polynomial: f.to_string(),
                n: failure.unwrap_or(0),
                r,
                detail,
            });
        }
    }
    report
        .params
        .insert("members".into(), serde_json::Value::from(members));
    Ok(report)
}

/// Sufficient criterion for `q_l(phi) in 2^{nu2(l!)} I^l`: the shifted
/// expansion coefficients of `q_l` satisfy
/// `nu2(A_p) >= nu2(l!) + max(0, l - p)` for every even `n <= n_max`.
pub fn ql_sufficient_check(l: u32, n_max: u32) -> Result<CheckReport> {
    if !(1..=6).contains(&l) {
        return Err(Error::Domain(format!("ql check supports 1 <= l <= 6, got {l}")));
    }
    if n_max > MAX_RANK {
        return Err(Error::SizeCap {
            what: "n_max",
            value: u64::from(n_max),
            max: u64::from(MAX_RANK),
        });
    }
    let q = IntPolynomial::q_family(u64::from(l))?;
    let base = nu2_factorial(u64::from(l));
    let mut report = CheckReport::new("ql", serde_json::json!({ "l": l, "n_max": n_max }));
    for n in (0..=n_max).step_by(2) {
        let coeffs = shifted_expansion_coefficients(&q, n)?;
        for (p, a) in coeffs.a.iter().enumerate() {
            report.cases += 1;
            let need = base + u64::from(l.saturating_sub(p as u32));
            if !a.is_zero() && nu2(a)? < need {
                report.fail(Counterexample {
                    polynomial: q.to_string(),
                    n,
                    r: 0,
                    detail: format!("A_{p} = {a} has valuation {} < {need}", nu2(a)?),
                });
            }
        }
    }
    Ok(report)
}
