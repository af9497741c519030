//! Sparse multivariate Laurent polynomials with exact coefficients.
//!
//! A [`LaurentPoly`] is a finite map from exponent vectors (negative entries
//! allowed) to nonzero coefficients, over a fixed ordered [`VarSet`]. The
//! coefficient ring is generic; the crate root exposes [`crate::Poly`] over
//! arbitrary-precision integers, which is what every invariant uses.
//!
//! Canonical order is graded-lexicographic, highest total degree first, ties
//! broken lexicographically by variable order. Formatting, iteration and
//! JSON output all follow it.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Num, Signed};
use thiserror::Error;

/// Coefficient ring for [`LaurentPoly`].
///
/// Arithmetic goes through the `Checked*` traits so that fixed-width rings
/// report overflow instead of wrapping.
pub trait Coeff:
    Clone
    + Eq
    + fmt::Debug
    + fmt::Display
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + FromStr
    + Send
    + Sync
{
}

impl<T> Coeff for T where
    T: Clone
        + Eq
        + fmt::Debug
        + fmt::Display
        + Signed
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + FromStr
        + Send
        + Sync
{
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable sets differ: [{0}] vs [{1}]")]
    VarSetMismatch(String, String),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("exponent vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("no substituent given for variable `{0}`")]
    MissingAssignment(String),
    #[error("variable `{0}` occurs with a negative exponent but its substituent is not an invertible monomial")]
    NonInvertibleSubstituentForNegativeExponent(String),
    #[error("variable `{0}` is zero at the evaluation point but occurs with a negative exponent")]
    ZeroAtNegativeExponent(String),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("coefficient overflow")]
    CoefficientOverflow,
    #[error("division by ({var}-1) leaves a nonzero remainder")]
    InexactDivision { var: String },
    #[error("syntax error at byte {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
}

/// Ordered list of distinct variable names.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarSet(Arc<[String]>);

impl VarSet {
    pub fn new<I, S>(names: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        Ok(VarSet(names.into()))
    }

    fn fixed(names: &[&str]) -> Self {
        VarSet(
            names
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .into(),
        )
    }

    /// `(X, Y, A, B)`
    pub fn krushkal() -> Self {
        Self::fixed(&["X", "Y", "A", "B"])
    }

    /// `(x, y, z)`
    pub fn las_vergnas() -> Self {
        Self::fixed(&["x", "y", "z"])
    }

    /// `(X, Y, Z)`
    pub fn bollobas_riordan() -> Self {
        Self::fixed(&["X", "Y", "Z"])
    }

    /// `(x, y)`
    pub fn tutte() -> Self {
        Self::fixed(&["x", "y"])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    fn describe(&self) -> String {
        self.0.join(",")
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VarSet({})", self.describe())
    }
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<i32>);

impl Monomial {
    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    fn checked_add(&self, other: &Monomial) -> Result<Monomial, PolyError> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| i32::checked_add(*a, *b).ok_or(PolyError::ExponentOverflow))
            .collect::<Result<Vec<_>, _>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly<C> {
    vars: VarSet,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero(vars: &VarSet) -> Self {
        LaurentPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &VarSet, c: C) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; vars.len()]), c);
        }
        p
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::constant(vars, C::one())
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var(vars: &VarSet, name: &str) -> Result<Self, PolyError> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        let mut exps = vec![0; vars.len()];
        exps[i] = 1;
        Self::monomial(vars, &exps, C::one())
    }

    pub fn monomial(vars: &VarSet, exps: &[i32], coeff: C) -> Result<Self, PolyError> {
        if exps.len() != vars.len() {
            return Err(PolyError::LengthMismatch {
                expected: vars.len(),
                got: exps.len(),
            });
        }
        let mut p = Self::zero(vars);
        if !coeff.is_zero() {
            p.terms.insert(Monomial(exps.to_vec()), coeff);
        }
        Ok(p)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(vars: &VarSet, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<i32>, C)>,
    {
        let mut p = Self::zero(vars);
        for (exps, c) in terms {
            if exps.len() != vars.len() {
                return Err(PolyError::LengthMismatch {
                    expected: vars.len(),
                    got: exps.len(),
                });
            }
            p.add_term(Monomial(exps), c)?;
        }
        Ok(p)
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &C)> + '_ {
        self.terms.iter().rev().map(|(m, c)| (m.exponents(), c))
    }

    /// Coefficient of the given exponent vector (zero if absent).
    pub fn coeff(&self, exps: &[i32]) -> C {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    /// True if some term carries a negative exponent.
    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|m| m.0.iter().any(|&e| e < 0))
    }

    /// Smallest and largest exponent of a variable over all terms.
    pub fn exponent_range(&self, name: &str) -> Option<(i32, i32)> {
        let i = self.vars.index_of(name)?;
        let mut it = self.terms.keys().map(|m| m.0[i]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    fn add_term(&mut self, m: Monomial, c: C) -> Result<(), PolyError> {
        if c.is_zero() {
            return Ok(());
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o
                    .get()
                    .checked_add(&c)
                    .ok_or(PolyError::CoefficientOverflow)?;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    fn check_vars(&self, other: &Self) -> Result<(), PolyError> {
        if self.vars != other.vars {
            return Err(PolyError::VarSetMismatch(
                self.vars.describe(),
                other.vars.describe(),
            ));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone())?;
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = Self::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let c = c1.checked_mul(c2).ok_or(PolyError::CoefficientOverflow)?;
                out.add_term(m1.checked_add(m2)?, c)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &C) -> Result<Self, PolyError> {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let c = c.checked_mul(k).ok_or(PolyError::CoefficientOverflow)?;
            out.add_term(m.clone(), c)?;
        }
        Ok(out)
    }

    /// Nonnegative power.
    pub fn pow(&self, mut e: u32) -> Result<Self, PolyError> {
        let mut base = self.clone();
        let mut acc = Self::one(&self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Inverse of a single-term polynomial with unit coefficient.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        if !(c.is_one() || (-c.clone()).is_one()) {
            return None;
        }
        let inv = Monomial(m.0.iter().map(|e| -e).collect());
        let mut p = Self::zero(&self.vars);
        p.terms.insert(inv, c.clone());
        Some(p)
    }

    /// Integer power; negative exponents require an invertible monomial.
    pub fn powi(&self, e: i32) -> Option<Result<Self, PolyError>> {
        if e >= 0 {
            Some(self.pow(e as u32))
        } else {
            self.unit_inverse().map(|inv| inv.pow(e.unsigned_abs()))
        }
    }

    /// Simultaneous substitution of every variable by a polynomial over `target`.
    pub fn substitute(
        &self,
        target: &VarSet,
        assignment: &[(&str, LaurentPoly<C>)],
    ) -> Result<Self, PolyError> {
        let mut subs: Vec<&LaurentPoly<C>> = Vec::with_capacity(self.vars.len());
        for name in self.vars.names() {
            let (_, s) = assignment
                .iter()
                .find(|(n, _)| n == name)
                .ok_or_else(|| PolyError::MissingAssignment(name.clone()))?;
            if s.vars != *target {
                return Err(PolyError::VarSetMismatch(
                    s.vars.describe(),
                    target.describe(),
                ));
            }
            subs.push(s);
        }
        for (name, _) in assignment {
            if self.vars.index_of(name).is_none() {
                return Err(PolyError::UnknownVariable(name.to_string()));
            }
        }

        let mut powers: HashMap<(usize, i32), LaurentPoly<C>> = HashMap::new();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = match powers.entry((i, e)) {
                    std::collections::hash_map::Entry::Occupied(o) => o.into_mut(),
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(subs[i].powi(e).ok_or_else(|| {
                            PolyError::NonInvertibleSubstituentForNegativeExponent(
                                self.vars.names()[i].clone(),
                            )
                        })??)
                    }
                };
                term = term.checked_mul(p)?;
            }
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }

    /// Exact evaluation at a point given in variable order.
    pub fn evaluate<F>(&self, point: &[F]) -> Result<F, PolyError>
    where
        F: Num + Clone + From<C>,
    {
        if point.len() != self.vars.len() {
            return Err(PolyError::LengthMismatch {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        let mut total = F::zero();
        for (m, c) in &self.terms {
            let mut t: F = F::from(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                let v = &point[i];
                if e < 0 && v.is_zero() {
                    return Err(PolyError::ZeroAtNegativeExponent(
                        self.vars.names()[i].clone(),
                    ));
                }
                let p = num_traits::pow(v.clone(), e.unsigned_abs() as usize);
                t = if e < 0 { t / p } else { t * p };
            }
            total = total + t;
        }
        Ok(total)
    }

    /// Evaluation with values given by variable name.
    pub fn evaluate_named<F>(&self, point: &[(&str, F)]) -> Result<F, PolyError>
    where
        F: Num + Clone + From<C>,
    {
        let values = self
            .vars
            .names()
            .iter()
            .map(|n| {
                point
                    .iter()
                    .find(|(k, _)| k == n)
                    .map(|(_, v)| v.clone())
                    .ok_or_else(|| PolyError::MissingAssignment(n.clone()))
            })
            .collect::<Result<Vec<F>, _>>()?;
        self.evaluate(&values)
    }

    /// Sum of all coefficients, i.e. the value at the all-ones point.
    pub fn coefficient_sum(&self) -> Result<C, PolyError> {
        self.terms.values().try_fold(C::zero(), |acc, c| {
            acc.checked_add(c).ok_or(PolyError::CoefficientOverflow)
        })
    }

    /// Exact quotient by `(var - 1)^times`; fails if any remainder is nonzero.
    pub fn div_exact_var_minus_one(&self, var: &str, times: u32) -> Result<Self, PolyError> {
        let i = self
            .vars
            .index_of(var)
            .ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        let mut cur = self.clone();
        for _ in 0..times {
            cur = cur.div_once(i)?;
        }
        Ok(cur)
    }

    fn div_once(&self, i: usize) -> Result<Self, PolyError> {
        // Group by the exponents of every other variable; each group is a
        // Laurent polynomial in variable i, divided by synthetic division.
        let mut groups: BTreeMap<Vec<i32>, BTreeMap<i32, C>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut rest = m.0.clone();
            let e = rest[i];
            rest[i] = 0;
            groups.entry(rest).or_default().insert(e, c.clone());
        }
        let mut out = Self::zero(&self.vars);
        for (rest, column) in groups {
            let lo = *column.keys().next().expect("nonempty group");
            let hi = *column.keys().next_back().expect("nonempty group");
            // p_j = q_{j-1} - q_j, so q_{j-1} = p_j + q_j, walking down from the top.
            let mut q = C::zero();
            for j in (lo + 1..=hi).rev() {
                let p = column.get(&j).cloned().unwrap_or_else(C::zero);
                q = p.checked_add(&q).ok_or(PolyError::CoefficientOverflow)?;
                let mut exps = rest.clone();
                exps[i] = j - 1;
                out.add_term(Monomial(exps), q.clone())?;
            }
            let rem = column[&lo]
                .checked_add(&q)
                .ok_or(PolyError::CoefficientOverflow)?;
            if !rem.is_zero() {
                return Err(PolyError::InexactDivision {
                    var: self.vars.names()[i].clone(),
                });
            }
        }
        Ok(out)
    }

    /// Parses the canonical text grammar over the given variables.
    pub fn parse(text: &str, vars: &VarSet) -> Result<Self, PolyError> {
        Parser::new(text, vars).poly()
    }
}

impl<C: Coeff> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (exps, c)) in self.terms().enumerate() {
            if c.is_negative() {
                write!(f, "-")?;
            } else if k > 0 {
                write!(f, "+")?;
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            for (name, &e) in self.vars.names().iter().zip(exps) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over ({})", self, self.vars.describe())
    }
}

impl<C: Coeff> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: Self) -> LaurentPoly<C> {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl<C: Coeff> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: Self) -> LaurentPoly<C> {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl<C: Coeff> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl<C: Coeff> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a VarSet,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, vars: &'a VarSet) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            vars,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::SyntaxError {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn poly<C: Coeff>(&mut self) -> Result<LaurentPoly<C>, PolyError> {
        let out = self.sum::<C>()?;
        match self.peek() {
            None => Ok(out),
            Some(ch) => self.err(format!("unexpected `{}`", ch as char)),
        }
    }

    fn sum<C: Coeff>(&mut self) -> Result<LaurentPoly<C>, PolyError> {
        let mut out = LaurentPoly::zero(self.vars);
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                negate = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            None => return self.err("empty polynomial"),
            _ => {}
        }
        loop {
            let t = self.product::<C>()?;
            out = if negate {
                out.checked_sub(&t)?
            } else {
                out.checked_add(&t)?
            };
            match self.peek() {
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                _ => return Ok(out),
            }
            self.pos += 1;
        }
    }

    fn product<C: Coeff>(&mut self) -> Result<LaurentPoly<C>, PolyError> {
        let mut out = self.power::<C>()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            out = out.checked_mul(&self.power::<C>()?)?;
        }
        Ok(out)
    }

    fn power<C: Coeff>(&mut self) -> Result<LaurentPoly<C>, PolyError> {
        let (base, var) = self.atom::<C>()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let digits = self.digits();
        if digits.is_empty() {
            return self.err("expected exponent");
        }
        let mut e = digits
            .parse::<i32>()
            .or_else(|_| self.err("bad exponent"))?;
        if neg {
            e = -e;
        }
        match var {
            Some(i) => {
                let mut exps = vec![0; self.vars.len()];
                exps[i] = e;
                LaurentPoly::monomial(self.vars, &exps, C::one())
            }
            None => base
                .powi(e)
                .unwrap_or_else(|| self.err("negative power of a non-unit")),
        }
    }

    /// A number, a variable (with its index), or a parenthesised sum.
    fn atom<C: Coeff>(&mut self) -> Result<(LaurentPoly<C>, Option<usize>), PolyError> {
        match self.peek() {
            Some(ch) if ch.is_ascii_digit() => {
                let digits = self.digits();
                let n = C::from_str(digits).or_else(|_| self.err("bad coefficient"))?;
                Ok((LaurentPoly::constant(self.vars, n), None))
            }
            Some(ch) if ch.is_ascii_alphabetic() || ch == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let i = self
                    .vars
                    .index_of(name)
                    .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
                Ok((LaurentPoly::var(self.vars, name)?, Some(i)))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum::<C>()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok((inner, None))
            }
            Some(ch) => self.err(format!("unexpected `{}`", ch as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii")
    }
}
