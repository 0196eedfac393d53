//! Exact arithmetic foundations: rational numbers, variable identifiers,
//! sparse monomials with pluggable monomial orders, polynomials, truncated
//! power series, and real quadratic surds.

pub(crate) mod linalg;
pub mod poly;
pub mod series;
pub mod surd;

pub use poly::Poly;
pub use series::{series_root, PowerSeries, DEFAULT_SERIES_ORDER};
pub use surd::{surd_periodic_cf, QuadSurd};

use crate::{Error, Result};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Arbitrary-precision rational number, always stored reduced with a
/// positive denominator (guaranteed by `num_rational`).
pub type Rational = num_rational::BigRational;

/// Convenience constructor for an integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Convenience constructor for a fraction `n/d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Identifier of a single variable.
///
/// The declaration order of the variants (and of indices within a variant)
/// defines the derived total order used by the monomial orders:
/// `X0 < X1 < ... < t0 < t1 < ... < s1 < s2 < ... < T < tau0 < ... < v.. < eps < Y0 < ...`.
///
/// Families: `X` are the ambient coordinates, `t` the deformation
/// parameters of the n-gon, `s` the coefficient parameters of the quadrics,
/// `T` the single parameter the `s`-relations are written in, `tau` the
/// roots of the `t` used by the coordinate change, `v` the cusp
/// deformation parameters (`v{i}_{j}`), `eps` the smoothing parameter, and
/// `Y` a reserve family for auxiliary constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarId {
    /// Ambient coordinate `X{i}`.
    X(u32),
    /// Deformation parameter `t{i}` of the i-th vertex.
    Tv(u32),
    /// Coefficient parameter `s{m}`.
    S(u32),
    /// The single relation parameter `T`.
    BigT,
    /// Root-of-unity scaling parameter `tau{i}`.
    Tau(u32),
    /// Cusp deformation parameter `v{i}_{j}`.
    V(u32, u32),
    /// Smoothing parameter `eps`.
    Eps,
    /// Auxiliary variable `Y{i}`.
    Y(u32),
}

impl VarId {
    /// Key used to sort factors inside a printed term: family first
    /// (`s, t, T, tau, v, eps, X, Y`), then indices ascending.
    fn display_key(&self) -> (u8, u32, u32) {
        match *self {
            VarId::S(m) => (0, m, 0),
            VarId::Tv(i) => (1, i, 0),
            VarId::BigT => (2, 0, 0),
            VarId::Tau(i) => (3, i, 0),
            VarId::V(i, j) => (4, i, j),
            VarId::Eps => (5, 0, 0),
            VarId::X(i) => (6, i, 0),
            VarId::Y(i) => (7, i, 0),
        }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VarId::X(i) => write!(f, "X{i}"),
            VarId::Tv(i) => write!(f, "t{i}"),
            VarId::S(m) => write!(f, "s{m}"),
            VarId::BigT => write!(f, "T"),
            VarId::Tau(i) => write!(f, "tau{i}"),
            VarId::V(i, j) => write!(f, "v{i}_{j}"),
            VarId::Eps => write!(f, "eps"),
            VarId::Y(i) => write!(f, "Y{i}"),
        }
    }
}

impl std::str::FromStr for VarId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseError(format!("unknown variable `{s}`"));
        if s == "T" {
            return Ok(VarId::BigT);
        }
        if s == "eps" {
            return Ok(VarId::Eps);
        }
        if let Some(rest) = s.strip_prefix("tau") {
            return rest.parse().map(VarId::Tau).map_err(|_| bad());
        }
        if let Some(rest) = s.strip_prefix('v') {
            let (i, j) = rest.split_once('_').ok_or_else(bad)?;
            let i = i.parse().map_err(|_| bad())?;
            let j = j.parse().map_err(|_| bad())?;
            return Ok(VarId::V(i, j));
        }
        let (head, rest) = s.split_at(1);
        let idx: u32 = rest.parse().map_err(|_| bad())?;
        match head {
            "X" => Ok(VarId::X(idx)),
            "t" => Ok(VarId::Tv(idx)),
            "s" => {
                if idx == 0 {
                    Err(bad())
                } else {
                    Ok(VarId::S(idx))
                }
            }
            "Y" => Ok(VarId::Y(idx)),
            _ => Err(bad()),
        }
    }
}

/// A monomial: a finite map from variables to positive exponents.
///
/// The `BTreeMap` ordering of the keys is purely structural (it makes the
/// representation canonical); ranking of monomials is always done through a
/// [`MonomialOrder`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    exps: BTreeMap<VarId, u32>,
}

impl Monomial {
    /// The empty monomial `1`.
    pub fn one() -> Self {
        Monomial::default()
    }

    /// The monomial consisting of a single variable.
    pub fn var(v: VarId) -> Self {
        Monomial::from_pairs([(v, 1)])
    }

    /// Build from `(variable, exponent)` pairs; zero exponents are dropped,
    /// repeated variables accumulate.
    pub fn from_pairs<I: IntoIterator<Item = (VarId, u32)>>(pairs: I) -> Self {
        let mut exps = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *exps.entry(v).or_insert(0) += e;
            }
        }
        Monomial { exps }
    }

    /// True for the empty monomial.
    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Exponent of `v` (0 if absent).
    pub fn exp(&self, v: VarId) -> u32 {
        self.exps.get(&v).copied().unwrap_or(0)
    }

    /// Total degree.
    pub fn degree(&self) -> u64 {
        self.exps.values().map(|&e| e as u64).sum()
    }

    /// Iterator over `(variable, exponent)` pairs in structural order.
    pub fn iter(&self) -> impl Iterator<Item = (VarId, u32)> + '_ {
        self.exps.iter().map(|(&v, &e)| (v, e))
    }

    /// Number of distinct variables.
    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    /// Product of two monomials.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (&v, &e) in &other.exps {
            *exps.entry(v).or_insert(0) += e;
        }
        Monomial { exps }
    }

    /// `self^k`.
    pub fn pow(&self, k: u32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            exps: self.exps.iter().map(|(&v, &e)| (v, e * k)).collect(),
        }
    }

    /// Exact quotient `self / other` if `other` divides `self`.
    pub fn divide(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = self.exps.clone();
        for (&v, &e) in &other.exps {
            let slot = exps.get_mut(&v)?;
            if *slot < e {
                return None;
            }
            *slot -= e;
            if *slot == 0 {
                exps.remove(&v);
            }
        }
        Some(Monomial { exps })
    }

    /// True if `other` divides `self`.
    pub fn divisible_by(&self, other: &Monomial) -> bool {
        other
            .exps
            .iter()
            .all(|(&v, &e)| self.exp(v) >= e)
    }

    /// Least common multiple.
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (&v, &e) in &other.exps {
            let slot = exps.entry(v).or_insert(0);
            *slot = (*slot).max(e);
        }
        Monomial { exps }
    }

    /// Greatest common divisor.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: BTreeMap<VarId, u32> = self
            .exps
            .iter()
            .filter_map(|(&v, &e)| {
                let f = other.exp(v);
                if f == 0 {
                    None
                } else {
                    Some((v, e.min(f)))
                }
            })
            .collect();
        Monomial { exps }
    }

    /// True if the two monomials share no variable.
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.keys().all(|v| other.exp(*v) == 0)
    }

    /// Keep only the variables satisfying `keep`.
    pub fn restrict(&self, keep: impl Fn(VarId) -> bool) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .filter(|(&v, _)| keep(v))
                .map(|(&v, &e)| (v, e))
                .collect(),
        }
    }

    /// Total degree of the variables satisfying `keep`.
    pub fn degree_where(&self, keep: impl Fn(VarId) -> bool) -> u64 {
        self.exps
            .iter()
            .filter(|(&v, _)| keep(v))
            .map(|(_, &e)| e as u64)
            .sum()
    }

    fn fmt_with_coeff(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors: Vec<(VarId, u32)> = self.iter().collect();
        factors.sort_by_key(|(v, _)| v.display_key());
        for (k, (v, e)) in factors.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        self.fmt_with_coeff(f)
    }
}

/// A monomial order on [`Monomial`]s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic: higher total degree first; on a tie the
    /// monomial with the *smaller* exponent at the *largest* variable where
    /// they differ is the greater one.
    GrevLex,
    /// Lexicographic with `X0` most significant: at the first variable (in
    /// ascending [`VarId`] order) where the exponents differ, the larger
    /// exponent wins.
    Lex,
    /// Block elimination order: monomials are compared grevlex on the
    /// eliminated block first, then grevlex on the rest. Any monomial
    /// containing an eliminated variable ranks above any that does not.
    Elim(BTreeSet<VarId>),
}

impl MonomialOrder {
    /// Compare two monomials; `Greater` means `a` ranks above `b`.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GrevLex => grevlex_cmp(a, b),
            MonomialOrder::Lex => lex_cmp(a, b),
            MonomialOrder::Elim(block) => {
                let ra = a.restrict(|v| block.contains(&v));
                let rb = b.restrict(|v| block.contains(&v));
                grevlex_cmp(&ra, &rb).then_with(|| {
                    let sa = a.restrict(|v| !block.contains(&v));
                    let sb = b.restrict(|v| !block.contains(&v));
                    grevlex_cmp(&sa, &sb)
                })
            }
        }
    }

    /// Maximum of an iterator of monomials under this order.
    pub fn max_of<'a, I: IntoIterator<Item = &'a Monomial>>(
        &self,
        monos: I,
    ) -> Option<&'a Monomial> {
        let mut best: Option<&Monomial> = None;
        for m in monos {
            best = Some(match best {
                None => m,
                Some(b) => {
                    if self.cmp(m, b) == Ordering::Greater {
                        m
                    } else {
                        b
                    }
                }
            });
        }
        best
    }
}

fn grevlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        ord => return ord,
    }
    // Walk the union of variables from the largest VarId downwards; at the
    // first exponent difference the smaller exponent wins.
    let mut ia = a.exps.iter().rev().peekable();
    let mut ib = b.exps.iter().rev().peekable();
    loop {
        match (ia.peek(), ib.peek()) {
            (None, None) => return Ordering::Equal,
            (Some((&va, &ea)), Some((&vb, &eb))) => match va.cmp(&vb) {
                Ordering::Equal => {
                    if ea != eb {
                        return eb.cmp(&ea);
                    }
                    ia.next();
                    ib.next();
                }
                // `a` has a variable above anything left in `b`: exponents
                // differ there (a has >0, b has 0) and smaller exponent wins.
                Ordering::Greater => return Ordering::Less,
                Ordering::Less => return Ordering::Greater,
            },
            (Some(_), None) => return Ordering::Less,
            (None, Some(_)) => return Ordering::Greater,
        }
    }
}

fn lex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    let mut ia = a.exps.iter().peekable();
    let mut ib = b.exps.iter().peekable();
    loop {
        match (ia.peek(), ib.peek()) {
            (None, None) => return Ordering::Equal,
            (Some((&va, &ea)), Some((&vb, &eb))) => match va.cmp(&vb) {
                Ordering::Equal => {
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                    ia.next();
                    ib.next();
                }
                // `a` has the smaller (more significant) variable with a
                // positive exponent where `b` has zero: `a` is greater.
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            },
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(VarId, u32)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn varid_order_chain() {
        let chain = [
            VarId::X(0),
            VarId::X(1),
            VarId::X(7),
            VarId::Tv(0),
            VarId::Tv(3),
            VarId::S(1),
            VarId::S(2),
            VarId::BigT,
            VarId::Tau(0),
            VarId::V(0, 1),
            VarId::V(1, 0),
            VarId::Eps,
            VarId::Y(0),
        ];
        for w in chain.windows(2) {
            assert!(w[0] < w[1], "{} should sort below {}", w[0], w[1]);
        }
    }

    #[test]
    fn varid_display_roundtrip() {
        let vars = [
            VarId::X(0),
            VarId::X(12),
            VarId::Tv(5),
            VarId::S(3),
            VarId::BigT,
            VarId::Tau(2),
            VarId::V(4, 2),
            VarId::Eps,
            VarId::Y(9),
        ];
        for v in vars {
            let s = v.to_string();
            let back: VarId = s.parse().unwrap();
            assert_eq!(v, back, "round-trip of `{s}`");
        }
        assert_eq!(VarId::V(0, 1).to_string(), "v0_1");
        assert_eq!(VarId::Tau(0).to_string(), "tau0");
        assert!("s0".parse::<VarId>().is_err());
        assert!("q3".parse::<VarId>().is_err());
    }

    #[test]
    fn monomial_arithmetic() {
        let x0 = VarId::X(0);
        let x1 = VarId::X(1);
        let a = m(&[(x0, 2), (x1, 1)]);
        let b = m(&[(x0, 1), (x1, 3)]);
        assert_eq!(a.degree(), 3);
        assert_eq!(a.mul(&b), m(&[(x0, 3), (x1, 4)]));
        assert_eq!(a.lcm(&b), m(&[(x0, 2), (x1, 3)]));
        assert_eq!(a.gcd(&b), m(&[(x0, 1), (x1, 1)]));
        assert_eq!(a.divide(&m(&[(x0, 2)])), Some(m(&[(x1, 1)])));
        assert_eq!(a.divide(&b), None);
        assert!(m(&[(x0, 1)]).coprime(&m(&[(x1, 5)])));
        assert!(!a.coprime(&b));
        assert_eq!(a.pow(0), Monomial::one());
        assert_eq!(a.pow(2), m(&[(x0, 4), (x1, 2)]));
        // zero exponents are never stored
        assert_eq!(m(&[(x0, 0)]), Monomial::one());
    }

    #[test]
    fn grevlex_degree_then_reverse_tie() {
        let ord = MonomialOrder::GrevLex;
        let x = |i| VarId::X(i);
        // degree dominates
        assert_eq!(
            ord.cmp(&m(&[(x(0), 3)]), &m(&[(x(5), 2)])),
            Ordering::Greater
        );
        // tie at equal degree: smaller exponent at the largest differing
        // variable wins: X0*X2 vs X1^2 differ at X2 (1 vs 0) -> X1^2 greater
        assert_eq!(
            ord.cmp(&m(&[(x(0), 1), (x(2), 1)]), &m(&[(x(1), 2)])),
            Ordering::Less
        );
        // classic: x^2 y > x z^2 > y z^2 in grevlex with x<y<z? Using X0,X1,X2
        // as x,y,z: X0^2 X1 vs X0 X2^2 differ at X2 -> first greater.
        assert_eq!(
            ord.cmp(&m(&[(x(0), 2), (x(1), 1)]), &m(&[(x(0), 1), (x(2), 2)])),
            Ordering::Greater
        );
        assert_eq!(
            ord.cmp(&m(&[(x(0), 1), (x(1), 1)]), &m(&[(x(0), 1), (x(1), 1)])),
            Ordering::Equal
        );
    }

    #[test]
    fn lex_first_variable_wins() {
        let ord = MonomialOrder::Lex;
        let x = |i| VarId::X(i);
        // X0 beats any power of later variables
        assert_eq!(
            ord.cmp(&m(&[(x(0), 1)]), &m(&[(x(1), 7)])),
            Ordering::Greater
        );
        assert_eq!(
            ord.cmp(&m(&[(x(0), 2)]), &m(&[(x(0), 1), (x(1), 9)])),
            Ordering::Greater
        );
        assert_eq!(
            ord.cmp(&m(&[(x(1), 1)]), &m(&[(x(0), 1)])),
            Ordering::Less
        );
    }

    #[test]
    fn elim_block_ranks_first() {
        let block: BTreeSet<VarId> = [VarId::X(3)].into_iter().collect();
        let ord = MonomialOrder::Elim(block);
        let x = |i| VarId::X(i);
        // any monomial containing X3 ranks above any without it
        assert_eq!(
            ord.cmp(&m(&[(x(3), 1)]), &m(&[(x(0), 9), (x(1), 9)])),
            Ordering::Greater
        );
        // without X3 both fall back to grevlex on the rest
        assert_eq!(
            ord.cmp(&m(&[(x(0), 2)]), &m(&[(x(1), 1)])),
            Ordering::Greater
        );
    }
}
