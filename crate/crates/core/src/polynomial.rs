//! Dense univariate polynomials over `Z` with arbitrary-precision coefficients.
//!
//! Text grammar: terms `c`, `cX`, `cX^e` (coefficient optional before `X`,
//! `X` case-insensitive, whitespace ignored), joined by `+` / `-`, e.g.
//! `2X^4 - 3X^2 + 8X`. The JSON form is the coefficient array
//! `["c0", "c1", ...]` with decimal strings; plain JSON integers are also
//! accepted on input.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// `coeffs[q]` holds the coefficient of `X^q`. No trailing zeros are stored,
/// so the zero polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    pub fn monomial(c: impl Into<BigInt>, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c.into();
        Self::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `X - root`.
    pub fn linear_root(root: impl Into<BigInt>) -> Self {
        Self::new(vec![-root.into(), BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `X^q`; zero above the degree.
    pub fn coeff(&self, q: usize) -> BigInt {
        self.coeffs.get(q).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `g(X) = f(X + a)`, with `g_q = sum_{t >= q} C(t, q) a^(t-q) c_t`.
    pub fn taylor_shift(&self, a: &BigInt) -> Self {
        let d = match self.degree() {
            Some(d) => d,
            None => return Self::zero(),
        };
        let mut powers = Vec::with_capacity(d + 1);
        powers.push(BigInt::one());
        for i in 1..=d {
            powers.push(&powers[i - 1] * a);
        }
        let mut out = vec![BigInt::zero(); d + 1];
        // binomial row C(t, .) built incrementally
        let mut row: Vec<BigInt> = vec![BigInt::one()];
        for (t, c_t) in self.coeffs.iter().enumerate() {
            if t > 0 {
                let mut next = vec![BigInt::one(); t + 1];
                for q in 1..t {
                    next[q] = &row[q - 1] + &row[q];
                }
                row = next;
            }
            if c_t.is_zero() {
                continue;
            }
            for q in 0..=t {
                out[q] += &row[q] * &powers[t - q] * c_t;
            }
        }
        Self::new(out)
    }

    /// Lewis's polynomial `(X - n)(X - (n-2)) ... (X + (n-2))(X + n)`.
    pub fn lewis(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("lewis polynomial needs n >= 1".into()));
        }
        let n = i64::try_from(n).map_err(|_| Error::Domain("n too large".into()))?;
        Ok((0..=n)
            .map(|i| Self::linear_root(n - 2 * i))
            .fold(Self::one(), |acc, f| &acc * &f))
    }

    /// `q_l(X) = X (X - 2) (X - 4) ... (X - 2(l-1))`.
    pub fn q_family(l: u64) -> Result<Self> {
        if l == 0 {
            return Err(Error::Domain("q_l needs l >= 1".into()));
        }
        let l = i64::try_from(l).map_err(|_| Error::Domain("l too large".into()))?;
        Ok((0..l)
            .map(|i| Self::linear_root(2 * i))
            .fold(Self::one(), |acc, f| &acc * &f))
    }

    /// Falling factorial `(X)_k = X (X - 1) ... (X - k + 1)`.
    pub fn falling_factorial(k: usize) -> Self {
        (0..k)
            .map(|i| Self::linear_root(i as i64))
            .fold(Self::one(), |acc, f| &acc * &f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("string array serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn add_coeffs(a: &[BigInt], b: &[BigInt], sign: i8) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            match b.get(i) {
                Some(y) if sign < 0 => x - y,
                Some(y) => x + y,
                None => x,
            }
        })
        .collect()
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        IntPolynomial::new(add_coeffs(&self.coeffs, &rhs.coeffs, 1))
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        IntPolynomial::new(add_coeffs(&self.coeffs, &rhs.coeffs, -1))
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for IntPolynomial {
    /// Descending degree, e.g. `2X^4 - 3X^2 + 8X`; the zero polynomial is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (q, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            if q == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match q {
                0 => {}
                1 => f.write_str("X")?,
                _ => write!(f, "X^{q}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bytes = text.as_bytes();
        let mut terms: Vec<(bool, &str)> = Vec::new();
        let mut start = 0;
        let mut negative = false;
        if bytes[0] == b'+' || bytes[0] == b'-' {
            negative = bytes[0] == b'-';
            start = 1;
        }
        for i in start..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                terms.push((negative, &text[start..i]));
                negative = bytes[i] == b'-';
                start = i + 1;
            }
        }
        terms.push((negative, &text[start..]));

        let mut coeffs: Vec<Option<BigInt>> = Vec::new();
        for (neg, term) in terms {
            let (c, e) = parse_term(term)?;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, None);
            }
            if coeffs[e].is_some() {
                return Err(Error::Parse(format!("duplicate exponent {e}")));
            }
            coeffs[e] = Some(if neg { -c } else { c });
        }
        Ok(Self::new(
            coeffs.into_iter().map(Option::unwrap_or_default).collect(),
        ))
    }
}

fn parse_term(term: &str) -> Result<(BigInt, usize)> {
    if term.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let bad = || Error::Parse(format!("malformed term `{term}`"));
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    match term.find(['X', 'x']) {
        None => {
            if !digits(term) {
                return Err(bad());
            }
            Ok((term.parse().map_err(|_| bad())?, 0))
        }
        Some(pos) => {
            let (head, tail) = (&term[..pos], &term[pos + 1..]);
            let c = if head.is_empty() {
                BigInt::one()
            } else if digits(head) {
                head.parse().map_err(|_| bad())?
            } else {
                return Err(bad());
            };
            let e = if tail.is_empty() {
                1
            } else {
                let exp = tail.strip_prefix('^').ok_or_else(bad)?;
                if !digits(exp) {
                    return Err(bad());
                }
                exp.parse().map_err(|_| bad())?
            };
            Ok((c, e))
        }
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        strings.serialize(s)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonCoeff {
    Int(i64),
    Text(String),
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<JsonCoeff>::deserialize(d)?;
        let coeffs = raw
            .into_iter()
            .map(|c| match c {
                JsonCoeff::Int(i) => Ok(BigInt::from(i)),
                JsonCoeff::Text(t) => t
                    .parse::<BigInt>()
                    .map_err(|_| serde::de::Error::custom(format!("bad integer `{t}`"))),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(IntPolynomial::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(p("X+1") * p("X-1"), p("X^2 - 1"));
        let f = p("3X^3 - X + 7");
        assert_eq!(&f + &IntPolynomial::zero(), f);
        assert_eq!(p("X^2") * p("X^3"), p("X^5"));
        assert_eq!(&f - &f, IntPolynomial::zero());
        assert_eq!(IntPolynomial::zero().degree(), None);
        assert_eq!(p("X^3 + 0X^7").degree(), Some(3));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(p("X^2").taylor_shift(&BigInt::one()), p("X^2 + 2X + 1"));
        let f = p("5X^4 - 2X + 9");
        assert_eq!(f.taylor_shift(&BigInt::zero()), f);
        assert_eq!(IntPolynomial::zero().taylor_shift(&BigInt::from(3)), IntPolynomial::zero());
    }

    #[test]
    fn named_families() {
        assert_eq!(IntPolynomial::lewis(1).unwrap(), p("X^2 - 1"));
        assert_eq!(IntPolynomial::lewis(2).unwrap(), p("X^3 - 4X"));
        assert_eq!(IntPolynomial::lewis(3).unwrap(), p("X^4 - 10X^2 + 9"));
        assert!(IntPolynomial::lewis(0).is_err());
        assert_eq!(IntPolynomial::q_family(1).unwrap(), p("X"));
        assert_eq!(IntPolynomial::q_family(2).unwrap(), p("X^2 - 2X"));
        assert_eq!(IntPolynomial::q_family(3).unwrap(), p("X^3 - 6X^2 + 8X"));
        assert!(IntPolynomial::q_family(0).is_err());
        for n in 1..12u64 {
            let f = IntPolynomial::lewis(n).unwrap();
            assert_eq!(f.degree(), Some(n as usize + 1));
            let reflected = IntPolynomial::new(
                f.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                    .collect(),
            );
            let sign = if (n + 1) % 2 == 0 { f.clone() } else { -&f };
            assert_eq!(reflected, sign);
        }
        for l in 1..12 {
            assert!(IntPolynomial::q_family(l).unwrap().coeff(0).is_zero());
        }
    }

    #[test]
    fn text_format() {
        assert_eq!(p("2X^4 - 3X^2 + 8X").to_string(), "2X^4 - 3X^2 + 8X");
        assert_eq!(p("-x^2+1").to_string(), "-X^2 + 1");
        assert_eq!(p(" 7 ").to_string(), "7");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("-X").to_string(), "-X");
        assert_eq!(p("12345678901234567890123X^2").coeff(2).to_string(), "12345678901234567890123");
        assert!("X^2 + 3X^2".parse::<IntPolynomial>().is_err());
        assert!("".parse::<IntPolynomial>().is_err());
        assert!("2X^".parse::<IntPolynomial>().is_err());
        assert!("2Y".parse::<IntPolynomial>().is_err());
        assert!("X +".parse::<IntPolynomial>().is_err());
        assert!("3 4X".parse::<IntPolynomial>().is_ok_and(|f| f == p("34X")));
    }

    #[test]
    fn json_format() {
        let f = p("-3X^2 + 5");
        assert_eq!(f.to_json(), r#"["5","0","-3"]"#);
        assert_eq!(IntPolynomial::from_json("[5, 0, \"-3\"]").unwrap(), f);
        assert_eq!(IntPolynomial::from_json("[]").unwrap(), IntPolynomial::zero());
        assert!(IntPolynomial::from_json("[\"x\"]").is_err());
    }

    fn arb_poly() -> impl Strategy<Value = IntPolynomial> {
        proptest::collection::vec(-1000i64..1000, 0..9).prop_map(|c| IntPolynomial::from_i64s(&c))
    }

    proptest! {
        #[test]
        fn shift_round_trip(f in arb_poly(), a in -10i64..=10) {
            let a = BigInt::from(a);
            prop_assert_eq!(f.taylor_shift(&a).taylor_shift(&-&a), f);
        }

        #[test]
        fn shift_is_ring_homomorphism(f in arb_poly(), g in arb_poly(), a in -10i64..=10) {
            let a = BigInt::from(a);
            prop_assert_eq!((&f * &g).taylor_shift(&a), &f.taylor_shift(&a) * &g.taylor_shift(&a));
            prop_assert_eq!((&f + &g).taylor_shift(&a), &f.taylor_shift(&a) + &g.taylor_shift(&a));
        }

        #[test]
        fn shift_agrees_with_evaluation(f in arb_poly(), a in -10i64..=10, x in -20i64..=20) {
            let (a, x) = (BigInt::from(a), BigInt::from(x));
            prop_assert_eq!(f.taylor_shift(&a).eval(&x), f.eval(&(&x + &a)));
        }

        #[test]
        fn text_and_json_round_trip(f in arb_poly()) {
            prop_assert_eq!(f.to_string().parse::<IntPolynomial>().unwrap(), f.clone());
            prop_assert_eq!(IntPolynomial::from_json(&f.to_json()).unwrap(), f);
        }
    }
}
