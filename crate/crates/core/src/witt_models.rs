//! Small concrete Witt rings.
//!
//! `W(F_q)` for `q` in {3, 5, 7, 9} is computed from first principles: a
//! diagonal form is reduced by exhaustively searching for isotropic vectors,
//! splitting off hyperbolic planes with explicit linear algebra and
//! re-diagonalizing the complement. The two infinite shortcut models are
//! `ComplexLike` (`W = Z/2`, by dimension parity) and `RealLike`
//! (`W = Z`, by signature).
//!
//! Field elements are small integer codes. For prime `q` the code is the
//! residue; for `F_9 = F_3[t]/(t^2 + 1)` the code `a + 3b` stands for
//! `a + bt`. `RealLike` reuses the codes `1` and `2` for `+1` and `-1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polynomial::IntPolynomial;

pub type Elem = u32;

pub const MAX_REDUCE_DIM: usize = 8;
pub const MAX_ENUM_DIM: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldModel {
    FiniteField(u32),
    ComplexLike,
    RealLike,
}

impl FieldModel {
    pub fn finite(q: u32) -> Result<Self> {
        match q {
            3 | 5 | 7 | 9 => Ok(Self::FiniteField(q)),
            _ => Err(Error::Domain(format!(
                "finite field models exist for q in {{3, 5, 7, 9}}, not {q}"
            ))),
        }
    }

    pub fn name(self) -> String {
        match self {
            Self::FiniteField(q) => format!("f{q}"),
            Self::ComplexLike => "c".into(),
            Self::RealLike => "r".into(),
        }
    }

    fn char_p(self) -> u32 {
        match self {
            Self::FiniteField(9) => 3,
            Self::FiniteField(q) => q,
            Self::ComplexLike | Self::RealLike => 3,
        }
    }

    /// All field elements (finite fields only).
    fn elements(self) -> Vec<Elem> {
        match self {
            Self::FiniteField(q) => (0..q).collect(),
            Self::ComplexLike => vec![1],
            Self::RealLike => vec![1, 2],
        }
    }

    fn add(self, a: Elem, b: Elem) -> Elem {
        match self {
            Self::FiniteField(9) => {
                ((a % 3 + b % 3) % 3) + 3 * ((a / 3 + b / 3) % 3)
            }
            _ => (a + b) % self.char_p(),
        }
    }

    pub fn neg(self, a: Elem) -> Elem {
        match self {
            Self::FiniteField(9) => ((3 - a % 3) % 3) + 3 * ((3 - a / 3) % 3),
            Self::ComplexLike => 1,
            _ => (self.char_p() - a % self.char_p()) % self.char_p(),
        }
    }

    fn sub(self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(self, a: Elem, b: Elem) -> Elem {
        match self {
            Self::FiniteField(9) => {
                // (a0 + a1 t)(b0 + b1 t) with t^2 = -1
                let (a0, a1, b0, b1) = (a % 3, a / 3, b % 3, b / 3);
                let re = (a0 * b0 + 2 * a1 * b1) % 3;
                let im = (a0 * b1 + a1 * b0) % 3;
                re + 3 * im
            }
            Self::ComplexLike => 1,
            _ => (a * b) % self.char_p(),
        }
    }

    fn inv(self, a: Elem) -> Elem {
        self.elements()
            .into_iter()
            .find(|&b| self.mul(a, b) == 1)
            .expect("nonzero element is invertible")
    }

    fn is_square(self, a: Elem) -> bool {
        match self {
            Self::ComplexLike => true,
            Self::RealLike => a == 1,
            Self::FiniteField(_) => self.elements().into_iter().any(|x| self.mul(x, x) == a),
        }
    }

    /// Square-class representatives `{1, s}` with `s` the least non-square.
    pub fn square_class_reps(self) -> Vec<Elem> {
        match self {
            Self::ComplexLike => vec![1],
            Self::RealLike => vec![1, 2],
            Self::FiniteField(_) => {
                let s = self
                    .elements()
                    .into_iter()
                    .find(|&a| a != 0 && !self.is_square(a))
                    .expect("odd finite field has a non-square");
                vec![1, s]
            }
        }
    }

    /// Representative of the square class of a nonzero element.
    pub fn normalize(self, a: Elem) -> Elem {
        if self.is_square(a) {
            1
        } else {
            self.square_class_reps()[1]
        }
    }

    pub fn label(self, a: Elem) -> String {
        match self {
            Self::FiniteField(9) => match (a % 3, a / 3) {
                (x, 0) => x.to_string(),
                (0, 1) => "t".into(),
                (0, y) => format!("{y}t"),
                (x, 1) => format!("{x}+t"),
                (x, y) => format!("{x}+{y}t"),
            },
            Self::RealLike => if a == 1 { "1" } else { "-1" }.into(),
            _ => a.to_string(),
        }
    }

    /// Least `n` with `-1` a sum of `n` squares; `None` for `RealLike`.
    pub fn level(self) -> Option<u32> {
        match self {
            Self::RealLike => None,
            Self::ComplexLike => Some(1),
            Self::FiniteField(_) => {
                let minus_one = self.neg(1);
                let squares: Vec<Elem> =
                    self.elements().into_iter().map(|x| self.mul(x, x)).collect();
                let mut reachable = vec![0u32];
                for n in 1..=8u32 {
                    let mut next: Vec<Elem> = reachable
                        .iter()
                        .flat_map(|&s| squares.iter().map(move |&x| (s, x)))
                        .map(|(s, x)| self.add(s, x))
                        .collect();
                    next.sort_unstable();
                    next.dedup();
                    if next.contains(&minus_one) {
                        return Some(n);
                    }
                    reachable = next;
                }
                None
            }
        }
    }

    /// Least `d` with `2^d` killing every torsion class, found by checking
    /// the additive order of all enumerated torsion classes.
    pub fn torsion_exponent(self) -> Result<u32> {
        let classes = enumerate_classes(4, self, Family::Torsion)?;
        let mut d = 0;
        loop {
            let factor = BigInt::from(1u64 << d);
            if classes
                .iter()
                .map(|c| c.scalar_mul(&factor))
                .collect::<Result<Vec<_>>>()?
                .iter()
                .all(WittClass::is_zero)
            {
                return Ok(d);
            }
            d += 1;
        }
    }
}

impl std::str::FromStr for FieldModel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "c" => Ok(Self::ComplexLike),
            "r" => Ok(Self::RealLike),
            _ => s
                .strip_prefix('f')
                .and_then(|q| q.parse().ok())
                .ok_or_else(|| Error::Parse(format!("unknown field `{s}` (f3|f5|f7|f9|c|r)")))
                .and_then(Self::finite),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiagonalForm {
    pub model: FieldModel,
    pub entries: Vec<Elem>,
}

impl DiagonalForm {
    pub fn new(model: FieldModel, entries: Vec<Elem>) -> Result<Self> {
        let valid = model.elements();
        if let Some(&bad) = entries.iter().find(|&&a| a == 0 || !valid.contains(&a)) {
            return Err(Error::Domain(format!(
                "entry {bad} is not a nonzero element of {}",
                model.name()
            )));
        }
        Ok(Self { model, entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }
}

fn form_text(model: FieldModel, entries: &[Elem]) -> String {
    if entries.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = entries.iter().map(|&a| model.label(a)).collect();
    format!("<{}>", parts.join(","))
}

impl fmt::Display for DiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&form_text(self.model, &self.entries))
    }
}

/// A Witt class held by its canonical anisotropic diagonal representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WittClass {
    model: FieldModel,
    entries: Vec<Elem>,
}

impl fmt::Display for WittClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&form_text(self.model, &self.entries))
    }
}

fn quad_value(model: FieldModel, diag: &[Elem], v: &[Elem]) -> Elem {
    diag.iter()
        .zip(v)
        .fold(0, |acc, (&a, &x)| model.add(acc, model.mul(a, model.mul(x, x))))
}

/// First nonzero `v` (odometer order) with `sum a_i v_i^2 = 0`.
fn find_isotropic(model: FieldModel, diag: &[Elem]) -> Option<Vec<Elem>> {
    let q = match model {
        FieldModel::FiniteField(q) => q,
        _ => return None,
    };
    let n = diag.len();
    let mut v = vec![0; n];
    loop {
        let mut i = 0;
        while i < n {
            v[i] += 1;
            if v[i] < q {
                break;
            }
            v[i] = 0;
            i += 1;
        }
        if i == n {
            return None;
        }
        if quad_value(model, diag, &v) == 0 {
            return Some(v);
        }
    }
}

type Vector = Vec<Elem>;

fn bilinear(model: FieldModel, diag: &[Elem], x: &[Elem], y: &[Elem]) -> Elem {
    diag.iter()
        .zip(x.iter().zip(y))
        .fold(0, |acc, (&a, (&s, &t))| model.add(acc, model.mul(a, model.mul(s, t))))
}

fn axpy(model: FieldModel, c: Elem, x: &[Elem], y: &[Elem]) -> Vector {
    // y - c x
    y.iter()
        .zip(x)
        .map(|(&b, &a)| model.sub(b, model.mul(c, a)))
        .collect()
}

/// Row-reduced basis of the span of `vectors`.
fn basis_of(model: FieldModel, vectors: Vec<Vector>) -> Vec<Vector> {
    let mut rows = vectors;
    let mut basis = Vec::new();
    let n = rows.first().map_or(0, Vec::len);
    for col in 0..n {
        if let Some(pos) = rows.iter().position(|r| r[col] != 0) {
            let pivot = rows.swap_remove(pos);
            let inv = model.inv(pivot[col]);
            let pivot: Vector = pivot.iter().map(|&a| model.mul(a, inv)).collect();
            rows = rows
                .into_iter()
                .map(|r| axpy(model, r[col], &pivot, &r))
                .collect();
            basis.push(pivot);
        }
    }
    basis
}

/// Diagonalizes the symmetric Gram matrix by simultaneous row/column
/// operations; returns the diagonal.
fn diagonalize(model: FieldModel, mut g: Vec<Vec<Elem>>) -> Vec<Elem> {
    let n = g.len();
    let add_into = |g: &mut Vec<Vec<Elem>>, dst: usize, src: usize, c: Elem| {
        // basis_dst += c * basis_src
        for k in 0..n {
            let v = model.add(g[dst][k], model.mul(c, g[src][k]));
            g[dst][k] = v;
        }
        for k in 0..n {
            let v = model.add(g[k][dst], model.mul(c, g[k][src]));
            g[k][dst] = v;
        }
    };
    for i in 0..n {
        if g[i][i] == 0 {
            if let Some(j) = (i + 1..n).find(|&j| g[j][j] != 0) {
                g.swap(i, j);
                for row in g.iter_mut() {
                    row.swap(i, j);
                }
            } else if let Some(j) = (i + 1..n).find(|&j| g[i][j] != 0) {
                add_into(&mut g, i, j, 1);
            } else {
                continue;
            }
        }
        let inv = model.inv(g[i][i]);
        for j in i + 1..n {
            if g[j][i] != 0 {
                let c = model.neg(model.mul(g[j][i], inv));
                add_into(&mut g, j, i, c);
            }
        }
    }
    (0..n).map(|i| g[i][i]).collect()
}

/// Splits hyperbolic planes until none is left. The result is anisotropic
/// but not yet in canonical form.
fn anisotropic_kernel(model: FieldModel, diag: &[Elem]) -> Vec<Elem> {
    let mut diag: Vec<Elem> = diag.iter().map(|&a| model.normalize(a)).collect();
    while let Some(v) = find_isotropic(model, &diag) {
        let n = diag.len();
        let i = (0..n)
            .find(|&i| v[i] != 0)
            .expect("isotropic vector is nonzero");
        // w with B(v, w) = 1
        let mut w = vec![0; n];
        w[i] = model.inv(model.mul(diag[i], v[i]));
        let half = model.inv(2 % model.char_p());
        let c = model.mul(bilinear(model, &diag, &w, &w), half);
        let w = axpy(model, c, &v, &w);
        let projected: Vec<Vector> = (0..n)
            .map(|j| {
                let mut e = vec![0; n];
                e[j] = 1;
                let bw = bilinear(model, &diag, &e, &w);
                let bv = bilinear(model, &diag, &e, &v);
                let e = axpy(model, bw, &v, &e);
                axpy(model, bv, &w, &e)
            })
            .collect();
        let basis = basis_of(model, projected);
        debug_assert_eq!(basis.len(), n - 2);
        let gram: Vec<Vec<Elem>> = basis
            .iter()
            .map(|x| basis.iter().map(|y| bilinear(model, &diag, x, y)).collect())
            .collect();
        diag = diagonalize(model, gram)
            .into_iter()
            .map(|a| model.normalize(a))
            .collect();
    }
    diag
}

fn is_hyperbolic(model: FieldModel, diag: &[Elem]) -> bool {
    anisotropic_kernel(model, diag).is_empty()
}

/// Sorted tuples of square-class representatives of length `m`.
fn sorted_rep_tuples(model: FieldModel, m: usize) -> Vec<Vec<Elem>> {
    let reps = model.square_class_reps();
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|t: Vec<Elem>| {
                let last = t.last().copied().unwrap_or(0);
                reps.iter()
                    .filter(move |&&r| r >= last)
                    .map(move |&r| {
                        let mut t = t.clone();
                        t.push(r);
                        t
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

fn canonical_finite(model: FieldModel, kernel: Vec<Elem>) -> Vec<Elem> {
    // smallest sorted representative tuple isometric to the kernel
    for t in sorted_rep_tuples(model, kernel.len()) {
        let mut probe = kernel.clone();
        probe.extend(t.iter().map(|&a| model.neg(a)));
        if is_hyperbolic(model, &probe) {
            return t;
        }
    }
    unreachable!("the sorted kernel itself is a candidate")
}

/// Reduces a diagonal form to its Witt class.
pub fn witt_reduce(form: &DiagonalForm) -> Result<WittClass> {
    if form.dim() > MAX_REDUCE_DIM {
        return Err(Error::SizeCap {
            what: "form dimension",
            value: form.dim() as u64,
            max: MAX_REDUCE_DIM as u64,
        });
    }
    Ok(reduce_entries(form.model, &form.entries))
}

fn reduce_entries(model: FieldModel, entries: &[Elem]) -> WittClass {
    let entries = match model {
        FieldModel::FiniteField(_) => {
            canonical_finite(model, anisotropic_kernel(model, entries))
        }
        FieldModel::ComplexLike => vec![1; entries.len() % 2],
        FieldModel::RealLike => {
            let sig: i64 = entries.iter().map(|&a| if a == 1 { 1 } else { -1 }).sum();
            vec![if sig >= 0 { 1 } else { 2 }; sig.unsigned_abs() as usize]
        }
    };
    WittClass { model, entries }
}

impl WittClass {
    pub fn zero(model: FieldModel) -> Self {
        Self {
            model,
            entries: Vec::new(),
        }
    }

    /// Class of `<a>`.
    pub fn unit(model: FieldModel, a: Elem) -> Result<Self> {
        witt_reduce(&DiagonalForm::new(model, vec![a])?)
    }

    pub fn one(model: FieldModel) -> Self {
        reduce_entries(model, &[1])
    }

    /// Class of the Pfister form `<<a>> = <1, a>`.
    pub fn pfister(model: FieldModel, a: Elem) -> Result<Self> {
        witt_reduce(&DiagonalForm::new(model, vec![1, a])?)
    }

    pub fn model(&self) -> FieldModel {
        self.model
    }

    pub fn representative(&self) -> DiagonalForm {
        DiagonalForm {
            model: self.model,
            entries: self.entries.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Dimension parity, which is well defined on classes.
    pub fn is_even(&self) -> bool {
        self.entries.len() % 2 == 0
    }

    fn same_model(&self, other: &Self) -> Result<()> {
        if self.model != other.model {
            return Err(Error::ModelMismatch(self.model.name(), other.model.name()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_model(other)?;
        let mut e = self.entries.clone();
        e.extend_from_slice(&other.entries);
        Ok(reduce_entries(self.model, &e))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_model(other)?;
        let e: Vec<Elem> = self
            .entries
            .iter()
            .flat_map(|&a| other.entries.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.model.mul(a, b))
            .collect();
        Ok(reduce_entries(self.model, &e))
    }

    pub fn neg(&self) -> Self {
        let e: Vec<Elem> = self.entries.iter().map(|&a| self.model.neg(a)).collect();
        reduce_entries(self.model, &e)
    }

    /// `c * self` by doubling, reducing after every step.
    pub fn scalar_mul(&self, c: &BigInt) -> Result<Self> {
        let base = if c.is_negative() { self.neg() } else { self.clone() };
        let mag = c.abs();
        let mut acc = Self::zero(self.model);
        for i in (0..mag.bits()).rev() {
            acc = acc.add(&acc)?;
            if mag.bit(i) {
                acc = acc.add(&base)?;
            }
        }
        Ok(acc)
    }
}

pub fn class_add(x: &WittClass, y: &WittClass) -> Result<WittClass> {
    x.add(y)
}

pub fn class_mul(x: &WittClass, y: &WittClass) -> Result<WittClass> {
    x.mul(y)
}

/// `f(x) = c_d x^d + ... + c_1 x + c_0 <1>` by Horner's rule.
pub fn eval_poly_on_class(f: &IntPolynomial, x: &WittClass) -> Result<WittClass> {
    let one = WittClass::one(x.model);
    let mut acc = WittClass::zero(x.model);
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(x)?;
        if !c.is_zero() {
            acc = acc.add(&one.scalar_mul(c)?)?;
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    All,
    Even,
    Odd,
    Torsion,
    /// Every diagonal form of exactly this dimension (not deduplicated).
    Dim(usize),
}

impl Family {
    pub fn name(self) -> String {
        match self {
            Self::All => "all".into(),
            Self::Even => "even".into(),
            Self::Odd => "odd".into(),
            Self::Torsion => "torsion".into(),
            Self::Dim(n) => format!("dim={n}"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Self::All),
            "even" => Ok(Self::Even),
            "odd" => Ok(Self::Odd),
            "torsion" => Ok(Self::Torsion),
            _ => s
                .strip_prefix("dim=")
                .and_then(|n| n.parse().ok())
                .map(Self::Dim)
                .ok_or_else(|| {
                    Error::Parse(format!("unknown family `{s}` (all|even|odd|torsion|dim=N)"))
                }),
        }
    }
}

/// Every tuple of square-class representatives of length `dim`.
pub fn enumerate_forms(model: FieldModel, dim: usize) -> Result<Vec<DiagonalForm>> {
    if dim > MAX_ENUM_DIM {
        return Err(Error::SizeCap {
            what: "dim",
            value: dim as u64,
            max: MAX_ENUM_DIM as u64,
        });
    }
    let reps = model.square_class_reps();
    let mut tuples: Vec<Vec<Elem>> = vec![Vec::new()];
    for _ in 0..dim {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                reps.iter().map(move |&r| {
                    let mut t = t.clone();
                    t.push(r);
                    t
                })
            })
            .collect();
    }
    Ok(tuples
        .into_iter()
        .map(|entries| DiagonalForm { model, entries })
        .collect())
}

/// Distinct classes of forms of dimension `<= dim`, in first-seen order.
pub fn enumerate_classes(dim: usize, model: FieldModel, family: Family) -> Result<Vec<WittClass>> {
    let mut out: Vec<WittClass> = Vec::new();
    let dims: Vec<usize> = match family {
        Family::Dim(n) => vec![n],
        _ => (0..=dim).collect(),
    };
    for d in dims {
        for form in enumerate_forms(model, d)? {
            let class = witt_reduce(&form)?;
            let keep = match family {
                Family::All | Family::Dim(_) => true,
                Family::Even => class.is_even(),
                Family::Odd => !class.is_even(),
                Family::Torsion => model != FieldModel::RealLike || class.is_zero(),
            };
            if keep && !out.contains(&class) {
                out.push(class);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnihilationReport {
    pub model: String,
    pub family: String,
    pub polynomial: String,
    pub classes_checked: usize,
    pub pass: bool,
    pub counterexample: Option<String>,
}

impl AnnihilationReport {
    pub const CSV_HEADER: &'static str = "model,family,polynomial,classes_checked,pass,counterexample";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},\"{}\",{},{},\"{}\"",
            self.model,
            self.family,
            self.polynomial,
            self.classes_checked,
            self.pass,
            self.counterexample.as_deref().unwrap_or("")
        )
    }
}

/// Evaluates `f` on every member of the family; passes iff every value is
/// the zero class. `Dim(n)` walks every form tuple, the other families walk
/// distinct classes of dimension `<= dim_cap`.
pub fn verify_annihilation(
    f: &IntPolynomial,
    model: FieldModel,
    family: Family,
    dim_cap: usize,
) -> Result<AnnihilationReport> {
    let inputs: Vec<(String, WittClass)> = match family {
        Family::Dim(n) => enumerate_forms(model, n)?
            .into_iter()
            .map(|form| Ok((form.to_string(), witt_reduce(&form)?)))
            .collect::<Result<_>>()?,
        _ => enumerate_classes(dim_cap, model, family)?
            .into_iter()
            .map(|c| (c.to_string(), c))
            .collect(),
    };
    let mut counterexample = None;
    for (label, class) in &inputs {
        let value = eval_poly_on_class(f, class)?;
        if !value.is_zero() {
            counterexample = Some(format!("f({label}) = {value}"));
            break;
        }
    }
    Ok(AnnihilationReport {
        model: model.name(),
        family: family.name(),
        polynomial: f.to_string(),
        classes_checked: inputs.len(),
        pass: counterexample.is_none(),
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const FINITE: [u32; 4] = [3, 5, 7, 9];

    fn form(q: u32, e: &[Elem]) -> DiagonalForm {
        DiagonalForm::new(FieldModel::FiniteField(q), e.to_vec()).unwrap()
    }

    fn class(q: u32, e: &[Elem]) -> WittClass {
        witt_reduce(&form(q, e)).unwrap()
    }

    fn det_class(model: FieldModel, e: &[Elem]) -> Elem {
        model.normalize(e.iter().fold(1, |acc, &a| model.mul(acc, a)))
    }

    #[test]
    fn field_arithmetic() {
        for q in FINITE {
            let m = FieldModel::FiniteField(q);
            let nonzero: Vec<Elem> = (1..q).collect();
            for &a in &nonzero {
                assert_eq!(m.mul(a, m.inv(a)), 1);
                assert_eq!(m.add(a, m.neg(a)), 0);
            }
            let squares = nonzero.iter().filter(|&&a| m.is_square(a)).count();
            assert_eq!(squares as u32, (q - 1) / 2);
        }
        // t^2 = -1 in F_9
        let f9 = FieldModel::FiniteField(9);
        assert_eq!(f9.mul(3, 3), 2);
        assert_eq!(f9.label(7), "1+2t");
        assert_eq!(FieldModel::FiniteField(5).square_class_reps(), [1, 2]);
        assert_eq!(FieldModel::FiniteField(7).square_class_reps(), [1, 3]);
        assert!(FieldModel::finite(11).is_err());
        assert!(DiagonalForm::new(FieldModel::FiniteField(5), vec![0]).is_err());
    }

    #[test]
    fn reduction_examples() {
        assert!(class(5, &[1, 4]).is_zero());
        assert_eq!(class(3, &[1, 1]).to_string(), "<1,1>");
        assert!(class(3, &[1, 1, 1, 1]).is_zero());
        assert!(class(5, &[1, 2, 2, 4]).is_zero());
        // <2,2> over F_3 is isometric to <1,1>
        assert_eq!(class(3, &[2, 2]), class(3, &[1, 1]));
        let big = DiagonalForm::new(FieldModel::FiniteField(3), vec![1; 9]).unwrap();
        assert!(matches!(witt_reduce(&big), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn class_enumeration() {
        let f3 = enumerate_classes(4, FieldModel::FiniteField(3), Family::All).unwrap();
        assert_eq!(f3.len(), 4);
        let f5 = enumerate_classes(4, FieldModel::FiniteField(5), Family::All).unwrap();
        assert_eq!(f5.len(), 4);
        let names: Vec<String> = f5.iter().map(ToString::to_string).collect();
        assert_eq!(names, ["0", "<1>", "<2>", "<1,2>"]);
        let t = enumerate_classes(4, FieldModel::RealLike, Family::Torsion).unwrap();
        assert_eq!(t, vec![WittClass::zero(FieldModel::RealLike)]);
        let even = enumerate_classes(4, FieldModel::FiniteField(3), Family::Even).unwrap();
        assert_eq!(even.len(), 2);
        assert_eq!(enumerate_classes(3, FieldModel::ComplexLike, Family::All).unwrap().len(), 2);
        assert_eq!(enumerate_classes(3, FieldModel::RealLike, Family::All).unwrap().len(), 7);
        assert!(enumerate_forms(FieldModel::FiniteField(3), 7).is_err());
    }

    #[test]
    fn classification_matches_reduction() {
        for q in FINITE {
            let m = FieldModel::FiniteField(q);
            let forms: Vec<DiagonalForm> =
                (0..=4).flat_map(|d| enumerate_forms(m, d).unwrap()).collect();
            for a in &forms {
                for b in &forms {
                    let same_class = witt_reduce(a).unwrap() == witt_reduce(b).unwrap();
                    let same_invariants =
                        a.dim() % 2 == b.dim() % 2 && signed_det_matches(m, a, b);
                    assert_eq!(same_class, same_invariants, "{a} vs {b} over F_{q}");
                }
            }
        }
    }

    // signed discriminant (-1)^(n(n-1)/2) det; the bare determinant is not a
    // Witt invariant (<1,1,1> ~ <2> over F_3)
    fn signed_det_matches(m: FieldModel, a: &DiagonalForm, b: &DiagonalForm) -> bool {
        let disc = |f: &DiagonalForm| {
            let n = f.dim();
            let sign = if (n * n.saturating_sub(1) / 2) % 2 == 1 { m.neg(1) } else { 1 };
            det_class(m, &[sign, f.entries.iter().fold(1, |acc, &x| m.mul(acc, x))])
        };
        disc(a) == disc(b)
    }

    #[test]
    fn ring_axioms() {
        for q in FINITE {
            let m = FieldModel::FiniteField(q);
            let cs = enumerate_classes(4, m, Family::All).unwrap();
            assert!(cs.len() <= 8);
            let zero = WittClass::zero(m);
            let one = WittClass::one(m);
            for a in &cs {
                assert_eq!(a.add(&zero).unwrap(), *a);
                assert_eq!(a.mul(&one).unwrap(), *a);
                assert!(a.add(&a.neg()).unwrap().is_zero());
                for b in &cs {
                    assert_eq!(a.add(b).unwrap(), b.add(a).unwrap());
                    assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
                    for c in &cs {
                        assert_eq!(
                            a.add(b).unwrap().add(c).unwrap(),
                            a.add(&b.add(c).unwrap()).unwrap()
                        );
                        assert_eq!(
                            a.mul(b).unwrap().mul(c).unwrap(),
                            a.mul(&b.mul(c).unwrap()).unwrap()
                        );
                        assert_eq!(
                            a.mul(&b.add(c).unwrap()).unwrap(),
                            a.mul(b).unwrap().add(&a.mul(c).unwrap()).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn levels_and_heights() {
        for q in FINITE {
            let m = FieldModel::FiniteField(q);
            let s = if q % 4 == 1 { 1 } else { 2 };
            assert_eq!(m.level(), Some(s), "F_{q}");
            assert_eq!(m.torsion_exponent().unwrap(), if s == 1 { 1 } else { 2 });
            let factor = BigInt::from(2 * s);
            for c in enumerate_classes(4, m, Family::All).unwrap() {
                assert!(c.scalar_mul(&factor).unwrap().is_zero());
            }
        }
        assert_eq!(FieldModel::ComplexLike.level(), Some(1));
        assert_eq!(FieldModel::RealLike.level(), None);
        assert_eq!(FieldModel::ComplexLike.torsion_exponent().unwrap(), 1);
        assert_eq!(FieldModel::RealLike.torsion_exponent().unwrap(), 0);
    }

    #[test]
    fn pfister_power_relation() {
        for model in [3, 5, 7, 9]
            .map(FieldModel::FiniteField)
            .into_iter()
            .chain([FieldModel::ComplexLike, FieldModel::RealLike])
        {
            for a in model.square_class_reps() {
                let pf = WittClass::pfister(model, a).unwrap();
                let mut power = pf.clone();
                for p in 2..=4u32 {
                    power = power.mul(&pf).unwrap();
                    let expected = pf.scalar_mul(&BigInt::from(1u32 << (p - 1))).unwrap();
                    assert_eq!(power, expected, "{} a={a} p={p}", model.name());
                }
            }
        }
    }

    #[test]
    fn evaluation_examples() {
        let f = IntPolynomial::from_i64s(&[-1, 0, 1]);
        for q in FINITE {
            let m = FieldModel::FiniteField(q);
            for a in m.square_class_reps() {
                assert!(eval_poly_on_class(&f, &WittClass::unit(m, a).unwrap()).unwrap().is_zero());
            }
        }
        let x4 = IntPolynomial::monomial(1, 4);
        for c in enumerate_classes(4, FieldModel::FiniteField(3), Family::Even).unwrap() {
            assert!(eval_poly_on_class(&x4, &c).unwrap().is_zero());
        }
        let two = IntPolynomial::constant(2);
        for c in enumerate_classes(3, FieldModel::ComplexLike, Family::All).unwrap() {
            assert!(eval_poly_on_class(&two, &c).unwrap().is_zero());
        }
        let three = WittClass::one(FieldModel::RealLike).scalar_mul(&BigInt::from(-3)).unwrap();
        assert_eq!(three.to_string(), "<-1,-1,-1>");
    }

    #[test]
    fn lewis_small() {
        for q in [3, 5, 7] {
            for n in 1..=3 {
                let f = IntPolynomial::lewis(n as u64).unwrap();
                let r = verify_annihilation(&f, FieldModel::FiniteField(q), Family::Dim(n), 0).unwrap();
                assert!(r.pass, "{r:?}");
                assert_eq!(r.classes_checked, 1 << n);
            }
        }
        let r = verify_annihilation(&IntPolynomial::x(), FieldModel::FiniteField(5), Family::All, 2).unwrap();
        assert!(!r.pass);
        assert_eq!(r.counterexample.as_deref(), Some("f(<1>) = <1>"));
    }

    #[test]
    fn parsing() {
        assert_eq!("f9".parse::<FieldModel>().unwrap(), FieldModel::FiniteField(9));
        assert_eq!("r".parse::<FieldModel>().unwrap(), FieldModel::RealLike);
        assert!("f4".parse::<FieldModel>().is_err());
        assert_eq!("dim=3".parse::<Family>().unwrap(), Family::Dim(3));
        assert!("dim=x".parse::<Family>().is_err());
    }
}
