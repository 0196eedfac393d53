//! Sparse multivariate polynomials over the rationals.

use super::{Monomial, MonomialOrder, Rational, VarId};
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// A polynomial: a finite map from monomials to nonzero rational
/// coefficients. The map's key order is structural storage order only;
/// printing and division use an explicit [`MonomialOrder`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Poly::default()
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    /// A constant polynomial.
    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    /// An integer constant.
    pub fn int(n: i64) -> Self {
        Poly::constant(super::rat(n))
    }

    /// The polynomial consisting of a single variable.
    pub fn var(v: VarId) -> Self {
        Poly::from_monomial(Monomial::var(v), Rational::one())
    }

    /// A single term `c * m`.
    pub fn from_monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// Build from `(monomial, coefficient)` pairs, accumulating repeats.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    /// True if this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree (`None` for the zero polynomial).
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant coefficient.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    /// Iterate over `(monomial, coefficient)` pairs in storage order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms sorted descending under the given order.
    pub fn terms_sorted(&self, order: &MonomialOrder) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    /// Add `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
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

    /// Leading term under `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Rational)> {
        let m = order.max_of(self.terms.keys())?;
        Some((m, &self.terms[m]))
    }

    /// Multiply by a scalar.
    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    /// Multiply by a single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a * c))
                .collect(),
        }
    }

    /// `self^k` by repeated multiplication.
    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute each variable `v` by `subst(v)` (`None` keeps the
    /// variable). The map must be a ring homomorphism target, i.e. plain
    /// per-variable replacement.
    pub fn substitute(&self, subst: &impl Fn(VarId) -> Option<Poly>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            let mut kept = Monomial::one();
            for (v, e) in m.iter() {
                match subst(v) {
                    Some(p) => term = &term * &p.pow(e),
                    None => kept = kept.mul(&Monomial::var(v).pow(e)),
                }
            }
            out += term.mul_term(&kept, &Rational::one());
        }
        out
    }

    /// Substitute variables by rational constants (`None` keeps the
    /// variable).
    pub fn eval_partial(&self, values: &impl Fn(VarId) -> Option<Rational>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut kept = Monomial::one();
            let mut dead = false;
            for (v, e) in m.iter() {
                match values(v) {
                    Some(val) => {
                        if val.is_zero() {
                            dead = true;
                            break;
                        }
                        let mut pw = Rational::one();
                        for _ in 0..e {
                            pw *= &val;
                        }
                        coeff *= pw;
                    }
                    None => kept = kept.mul(&Monomial::var(v).pow(e)),
                }
            }
            if !dead {
                out.add_term(kept, coeff);
            }
        }
        out
    }

    /// The set of variables that occur.
    pub fn variables(&self) -> std::collections::BTreeSet<VarId> {
        self.terms
            .keys()
            .flat_map(|m| m.iter().map(|(v, _)| v))
            .collect()
    }

    /// Extract the part of each term built from variables selected by
    /// `keep`, grouping the rest: returns a map `kept-part -> coefficient
    /// polynomial in the other variables`.
    pub fn group_by(&self, keep: impl Fn(VarId) -> bool) -> BTreeMap<Monomial, Poly> {
        let mut groups: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key = m.restrict(&keep);
            let rest = m.restrict(|v| !keep(v));
            groups
                .entry(key)
                .or_default()
                .add_term(rest, c.clone());
        }
        groups
    }

    /// Divide by a single term; returns `None` if any term is not divisible.
    pub fn div_term(&self, m: &Monomial, c: &Rational) -> Option<Poly> {
        let mut out = Poly::zero();
        for (k, a) in &self.terms {
            out.add_term(k.divide(m)?, a / c);
        }
        Some(out)
    }

    /// Formal partial derivative with respect to `v`.
    pub fn partial(&self, v: VarId) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            let reduced = m.divide(&Monomial::var(v)).expect("exponent checked");
            out.add_term(reduced, c * Rational::from_integer((e as i64).into()));
        }
        out
    }

    /// Greatest monomial dividing every term (the monomial content);
    /// `1` for the zero polynomial.
    pub fn monomial_content(&self) -> Monomial {
        let mut iter = self.terms.keys();
        let first = match iter.next() {
            Some(m) => m.clone(),
            None => return Monomial::one(),
        };
        iter.fold(first, |acc, m| acc.gcd(m))
    }

    /// Divide out the monomial content and normalize the sign so the
    /// grevlex-leading coefficient is positive; returns the primitive part.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let content = self.monomial_content();
        let mut p = self
            .div_term(&content, &Rational::one())
            .expect("content divides");
        let (_, lc) = p
            .leading_term(&MonomialOrder::GrevLex)
            .expect("nonzero");
        if lc.is_negative() {
            p = -&p;
        }
        p
    }

    /// True if the two polynomials agree up to a nonzero rational scalar.
    pub fn eq_up_to_scalar(&self, other: &Poly) -> Option<Rational> {
        if self.is_zero() && other.is_zero() {
            return Some(Rational::one());
        }
        if self.is_zero() || other.is_zero() || self.terms.len() != other.terms.len() {
            return None;
        }
        let (m0, c0) = self.terms.iter().next().expect("nonzero");
        let d0 = other.terms.get(m0)?;
        // scalar q with self = q * other
        let q = c0 / d0;
        for (m, c) in &self.terms {
            if other.terms.get(m).map(|d| d * &q) != Some(c.clone()) {
                return None;
            }
        }
        Some(q)
    }

    /// Render as text in descending lexicographic term order (`X0` most
    /// significant).
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Parse the textual format produced by [`Poly::to_text`].
    pub fn parse(input: &str) -> Result<Poly> {
        parse_poly(input)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign<Poly> for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let (small, large) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = Poly::zero();
        for (m, c) in &small.terms {
            for (k, a) in &large.terms {
                out.add_term(m.mul(k), c * a);
            }
        }
        out
    }
}

impl MulAssign<&Poly> for Poly {
    fn mul_assign(&mut self, rhs: &Poly) {
        let prod = &*self * rhs;
        *self = prod;
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let sorted = self.terms_sorted(&MonomialOrder::Lex);
        for (k, (m, c)) in sorted.iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let mag = c.abs();
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                m.fmt_with_coeff(f)?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Num(Rational),
    Var(VarId),
}

fn tokenize(input: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                toks.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                toks.push(Tok::Star);
                i += 1;
            }
            '^' => {
                toks.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                toks.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                toks.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let mut text = &input[start..i];
                let num: num_bigint::BigInt = text
                    .parse()
                    .map_err(|_| Error::ParseError(format!("bad number `{text}`")))?;
                let mut val = Rational::from_integer(num);
                if i < bytes.len() && bytes[i] == b'/' {
                    i += 1;
                    let dstart = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    text = &input[dstart..i];
                    let den: num_bigint::BigInt = text
                        .parse()
                        .map_err(|_| Error::ParseError(format!("bad denominator `{text}`")))?;
                    if den.is_zero() {
                        return Err(Error::ParseError("zero denominator".into()));
                    }
                    val /= Rational::from_integer(den);
                }
                toks.push(Tok::Num(val));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let name = &input[start..i];
                toks.push(Tok::Var(name.parse()?));
            }
            _ => {
                return Err(Error::ParseError(format!(
                    "unexpected character `{c}` at byte {i}"
                )))
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    // expr := ['-'|'+'] product (('+'|'-') product)*
    fn expr(&mut self) -> Result<Poly> {
        let mut sign = Rational::one();
        while let Some(t) = self.peek() {
            match t {
                Tok::Minus => {
                    sign = -sign;
                    self.pos += 1;
                }
                Tok::Plus => {
                    self.pos += 1;
                }
                _ => break,
            }
        }
        let mut acc = self.product()?.scale(&sign);
        while let Some(t) = self.peek() {
            let neg = match t {
                Tok::Plus => false,
                Tok::Minus => true,
                Tok::RParen => break,
                other => {
                    return Err(Error::ParseError(format!(
                        "expected + or - between terms, got {other:?}"
                    )))
                }
            };
            self.pos += 1;
            let p = self.product()?;
            if neg {
                acc -= &p;
            } else {
                acc += &p;
            }
        }
        Ok(acc)
    }

    // product := factor ('*' factor)*  with implicit adjacency not allowed
    fn product(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    // factor := (number | var | '(' expr ')') ['^' number]
    fn factor(&mut self) -> Result<Poly> {
        let base = match self.next() {
            Some(Tok::Num(v)) => Poly::constant(v),
            Some(Tok::Var(v)) => Poly::var(v),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => inner,
                    _ => return Err(Error::ParseError("unbalanced parenthesis".into())),
                }
            }
            Some(Tok::Minus) => {
                let f = self.factor()?;
                -&f
            }
            other => {
                return Err(Error::ParseError(format!(
                    "expected a factor, got {other:?}"
                )))
            }
        };
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.next() {
                Some(Tok::Num(e)) => {
                    if !e.is_integer() || e.is_negative() {
                        return Err(Error::ParseError(format!(
                            "exponent must be a nonnegative integer, got {e}"
                        )));
                    }
                    let e: u32 = e.to_integer().try_into().map_err(|_| {
                        Error::ParseError("exponent too large".into())
                    })?;
                    return Ok(base.pow(e));
                }
                other => {
                    return Err(Error::ParseError(format!(
                        "expected an exponent after ^, got {other:?}"
                    )))
                }
            }
        }
        Ok(base)
    }
}

fn parse_poly(input: &str) -> Result<Poly> {
    let toks = tokenize(input)?;
    if toks.is_empty() {
        return Err(Error::ParseError("empty polynomial".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::ParseError(format!(
            "trailing tokens starting at {:?}",
            p.toks[p.pos]
        )));
    }
    Ok(poly)
}

impl std::str::FromStr for Poly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Poly> {
        parse_poly(s)
    }
}

// ---------------------------------------------------------------------------
// JSON serialization: a polynomial is a list of terms, each with a `coeff`
// string ("p/q" or "p") and an exponent map keyed by variable name.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    coeff: String,
    exps: BTreeMap<String, u32>,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<JsonTerm> = self
            .terms_sorted(&MonomialOrder::GrevLex)
            .into_iter()
            .map(|(m, c)| JsonTerm {
                coeff: c.to_string(),
                exps: m.iter().map(|(v, e)| (v.to_string(), e)).collect(),
            })
            .collect();
        terms.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Poly, D::Error> {
        let terms = Vec::<JsonTerm>::deserialize(de)?;
        let mut p = Poly::zero();
        for t in terms {
            let c: Rational = t
                .coeff
                .parse()
                .map_err(|e| D::Error::custom(format!("bad coefficient `{}`: {e}", t.coeff)))?;
            let mut m = Monomial::one();
            for (name, e) in t.exps {
                let v: VarId = name
                    .parse()
                    .map_err(|_| D::Error::custom(format!("bad variable `{name}`")))?;
                m = m.mul(&Monomial::var(v).pow(e));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }
}
