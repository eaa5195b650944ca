//! Sparse Laurent polynomials in `y, t, q, p` with big-integer coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// One of the four formal variables. The discriminant is the slot in a
/// [`Monomial`]'s exponent tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Y = 0,
    T = 1,
    Q = 2,
    P = 3,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::Y, Var::T, Var::Q, Var::P];

    pub fn name(self) -> char {
        match self {
            Var::Y => 'y',
            Var::T => 't',
            Var::Q => 'q',
            Var::P => 'p',
        }
    }

    pub fn from_name(c: char) -> Option<Var> {
        match c {
            'y' => Some(Var::Y),
            't' => Some(Var::T),
            'q' => Some(Var::Q),
            'p' => Some(Var::P),
            _ => None,
        }
    }

    fn idx(self) -> usize {
        self as usize
    }
}

/// A power product `y^a t^b q^c p^d`; exponents may be negative.
///
/// The derived ordering is lexicographic on `(a, b, c, d)`, which is the
/// canonical term order used for printing and serialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub [i32; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn new(y: i32, t: i32, q: i32, p: i32) -> Self {
        Monomial([y, t, q, p])
    }

    /// `y^y t^t q^q`, the shape every path weight has.
    pub fn ytq(y: i32, t: i32, q: i32) -> Self {
        Monomial([y, t, q, 0])
    }

    pub fn var(v: Var) -> Self {
        Self::power(v, 1)
    }

    pub fn power(v: Var, e: i32) -> Self {
        let mut m = [0; 4];
        m[v.idx()] = e;
        Monomial(m)
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0[v.idx()]
    }

    pub fn with_exp(mut self, v: Var, e: i32) -> Self {
        self.0[v.idx()] = e;
        self
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(m)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0) {
            *a -= b;
        }
        Monomial(m)
    }

    pub fn pow(&self, k: i32) -> Monomial {
        Monomial(self.0.map(|e| e * k))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v.name())?;
            } else {
                write!(f, "{}^{}", v.name(), e)?;
            }
        }
        Ok(())
    }
}

/// Exact Laurent polynomial with integer coefficients.
///
/// Terms live in a `BTreeMap` keyed by [`Monomial`], so two polynomials are
/// equal exactly when their term maps are; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

/// A value to plug in for a variable, see [`Poly::substitute`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubstValue {
    Integer(BigInt),
    Monomial(Monomial),
}

impl From<i64> for SubstValue {
    fn from(v: i64) -> Self {
        SubstValue::Integer(BigInt::from(v))
    }
}

impl From<Monomial> for SubstValue {
    fn from(m: Monomial) -> Self {
        SubstValue::Monomial(m)
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Poly::term(c, Monomial::ONE)
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c.into());
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        Poly::term(1, m)
    }

    pub fn var(v: Var) -> Self {
        Poly::monomial(Monomial::var(v))
    }

    pub fn y() -> Self {
        Poly::var(Var::Y)
    }

    pub fn t() -> Self {
        Poly::var(Var::T)
    }

    pub fn q() -> Self {
        Poly::var(Var::Q)
    }

    pub fn p() -> Self {
        Poly::var(Var::P)
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
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> Poly {
        let c = c.into();
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (*m, k * &c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Largest exponent of `v`, or `None` for the zero polynomial.
    pub fn max_exp(&self, v: Var) -> Option<i32> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    pub fn min_exp(&self, v: Var) -> Option<i32> {
        self.terms.keys().map(|m| m.exp(v)).min()
    }

    /// The coefficient of `v^e`, as a polynomial in the other variables.
    pub fn coeff_of(&self, v: Var, e: i32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exp(v) == e)
                .map(|(m, c)| (m.with_exp(v, 0), c.clone()))
                .collect(),
        }
    }

    /// Keep only the terms accepted by `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Replace every `v` by `value`.
    ///
    /// Plugging in an integer `c` with `|c| > 1` for a variable that occurs
    /// with a negative power would leave the integers and is rejected, as is
    /// plugging in zero.
    pub fn substitute(&self, v: Var, value: impl Into<SubstValue>) -> Result<Poly> {
        let value = value.into();
        let mut out = Poly::zero();
        match value {
            SubstValue::Integer(c) => {
                for (m, k) in &self.terms {
                    let e = m.exp(v);
                    let factor = if e >= 0 {
                        num_traits::pow(c.clone(), e as usize)
                    } else if c.is_zero() {
                        return Err(Error::ZeroSubstitutionIntoLaurent { var: v.name() });
                    } else if c.abs().is_one() {
                        num_traits::pow(c.clone(), (-e) as usize)
                    } else {
                        return Err(Error::NonIntegralSubstitution {
                            var: v.name(),
                            value: c.to_string(),
                            exponent: e,
                        });
                    };
                    out.add_term(m.with_exp(v, 0), k * factor);
                }
            }
            SubstValue::Monomial(r) => {
                for (m, k) in &self.terms {
                    let e = m.exp(v);
                    out.add_term(m.with_exp(v, 0).mul(&r.pow(e)), k.clone());
                }
            }
        }
        Ok(out)
    }

    /// Substitute 1 for every variable in `vars`. Cannot fail.
    pub fn erase(&self, vars: &[Var]) -> Poly {
        let mut out = Poly::zero();
        for (m, k) in &self.terms {
            let mut m = *m;
            for v in vars {
                m = m.with_exp(*v, 0);
            }
            out.add_term(m, k.clone());
        }
        out
    }

    /// Value at `y = t = q = p = 1`.
    pub fn eval_at_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// The constant polynomial's value, if this is one.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_constant()?.to_i64()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Parses sums of terms like `2*y^3*t - q^-2 + 1`.
impl FromStr for Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Poly> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bytes: Vec<char> = s.chars().collect();
        let mut out = Poly::zero();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = BigInt::one();
            if bytes[pos] == '+' || bytes[pos] == '-' {
                if bytes[pos] == '-' {
                    sign = -sign;
                }
                pos += 1;
            } else if pos != 0 {
                return Err(Error::Parse(format!("expected + or - at offset {pos}")));
            }
            let start = pos;
            // A term ends at the next + or - that is not an exponent sign.
            while pos < bytes.len() {
                let c = bytes[pos];
                if (c == '+' || c == '-') && pos > start && bytes[pos - 1] != '^' {
                    break;
                }
                pos += 1;
            }
            let term: String = bytes[start..pos].iter().collect();
            let (c, m) = parse_term(&term)?;
            out.add_term(m, c * &sign);
        }
        Ok(out)
    }
}

fn parse_term(term: &str) -> Result<(BigInt, Monomial)> {
    if term.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let mut coeff = BigInt::one();
    let mut mono = Monomial::ONE;
    for factor in term.split('*') {
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in `{term}`")));
        }
        let first = factor.chars().next().unwrap_or('?');
        if first.is_ascii_digit() {
            let c: BigInt = factor
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer `{factor}`")))?;
            coeff *= c;
            continue;
        }
        let v = Var::from_name(first)
            .ok_or_else(|| Error::Parse(format!("unknown variable `{first}`")))?;
        let rest = &factor[first.len_utf8()..];
        let e = if rest.is_empty() {
            1
        } else {
            let digits = rest
                .strip_prefix('^')
                .ok_or_else(|| Error::Parse(format!("bad factor `{factor}`")))?;
            digits
                .parse::<i32>()
                .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?
        };
        mono = mono.mul(&Monomial::power(v, e));
    }
    Ok((coeff, mono))
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -self.clone()
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl AddAssign for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl SubAssign for Poly {
    fn sub_assign(&mut self, rhs: Poly) {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl MulAssign<&Poly> for Poly {
    fn mul_assign(&mut self, rhs: &Poly) {
        *self = &*self * rhs;
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $assign:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                let mut out = self.clone();
                out.$assign(rhs);
                out
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(mut self, rhs: Poly) -> Poly {
                self.$assign(rhs);
                self
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(mut self, rhs: &Poly) -> Poly {
                self.$assign(rhs);
                self
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                let mut out = self.clone();
                out.$assign(rhs);
                out
            }
        }
    };
}

forward_binop!(Add, add, add_assign);
forward_binop!(Sub, sub, sub_assign);

impl Mul<Poly> for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Mul<&Poly> for Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        &self * rhs
    }
}

impl Mul<Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        self * &rhs
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |acc, p| acc + p)
    }
}

impl<'a> std::iter::Sum<&'a Poly> for Poly {
    fn sum<I: Iterator<Item = &'a Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |acc, p| acc + p)
    }
}

impl std::iter::Product for Poly {
    fn product<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::one(), |acc, p| acc * p)
    }
}

impl From<i64> for Poly {
    fn from(c: i64) -> Poly {
        Poly::constant(c)
    }
}

impl From<Monomial> for Poly {
    fn from(m: Monomial) -> Poly {
        Poly::monomial(m)
    }
}

/// Fast counter for enumeration folds; converts to a [`Poly`] at the end.
///
/// Counts are bounded by the size of the enumerated class, which stays far
/// below `i128::MAX` at every size this crate is willing to enumerate.
#[derive(Debug, Clone, Default)]
pub struct PolyAccumulator {
    counts: HashMap<Monomial, i128>,
}

impl PolyAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, m: Monomial, c: i128) {
        *self.counts.entry(m).or_insert(0) += c;
    }

    pub fn merge(&mut self, other: PolyAccumulator) {
        for (m, c) in other.counts {
            self.add(m, c);
        }
    }

    pub fn into_poly(self) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in self.counts {
            p.add_term(m, BigInt::from(c));
        }
        p
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<String>,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    c: String,
    e: [i32; 4],
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            vars: Var::ALL.iter().map(|v| v.name().to_string()).collect(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    c: c.to_string(),
                    e: m.0,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Poly, D::Error> {
        use serde::de::Error as _;
        let raw = PolyJson::deserialize(d)?;
        if raw.vars != ["y", "t", "q", "p"] {
            return Err(D::Error::custom("vars must be [\"y\",\"t\",\"q\",\"p\"]"));
        }
        let mut p = Poly::zero();
        for t in raw.terms {
            let c: BigInt = t
                .c
                .parse()
                .map_err(|_| D::Error::custom(format!("bad coefficient `{}`", t.c)))?;
            p.add_term(Monomial(t.e), c);
        }
        Ok(p)
    }
}
