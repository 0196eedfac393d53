//! Quadric equation families of elliptic normal curves of degree `n`.
//!
//! The quadrics are indexed by a level `h` and a triple `i < j < k`, all
//! integers or all half-integers depending on the parity class (only even
//! `n` has a genuine half-integer class). Half-integers are represented
//! throughout by their doubles (`h2 = 2h`, etc.).
//!
//! Coefficients live in the parameters `s_m`, `1 <= m <= n/2`; an `s`
//! reference with an out-of-range index is normalized into range with an
//! explicit sign, which is absorbed into the rational coefficient.

use crate::exactalg::{Monomial, MonomialOrder, Poly, Rational, VarId};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A normalized reference to an `s` parameter: either the zero value
/// (`s_0 = s_n = 0` identically) or `sign * s_m` with `1 <= m <= n/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SRef {
    /// The reference collapsed to zero.
    Zero,
    /// `sign * s_m` with `m` in range.
    S {
        /// Normalized index, `1 <= m <= floor(n/2)`.
        m: u32,
        /// `+1` or `-1`.
        sign: i8,
    },
}

/// Normalize `s_alpha` for the symmetry pattern of degree `n`.
///
/// Odd `n`: `s` has period `n` and `s_{n-a} = -s_a`; indices reduce into
/// `1 ..= (n-1)/2`. Even `n`: `s` has antiperiod `n` (`s_{a+n} = -s_a`) and
/// `s_{n-a} = s_a`; indices reduce into `1 ..= n/2`.
pub fn s_normalize(alpha: i64, n: u32) -> SRef {
    let ni = n as i64;
    if n % 2 == 1 {
        let r = alpha.rem_euclid(ni);
        if r == 0 {
            SRef::Zero
        } else if r <= (ni - 1) / 2 {
            SRef::S { m: r as u32, sign: 1 }
        } else {
            SRef::S { m: (ni - r) as u32, sign: -1 }
        }
    } else {
        let mut r = alpha.rem_euclid(2 * ni);
        let mut sign = 1i8;
        if r >= ni {
            r -= ni;
            sign = -1;
        }
        if r == 0 {
            return SRef::Zero;
        }
        if r > ni / 2 {
            r = ni - r;
        }
        SRef::S { m: r as u32, sign }
    }
}

impl SRef {
    /// The reference as a polynomial (`0` or `sign * s_m`).
    pub fn poly(self) -> Poly {
        match self {
            SRef::Zero => Poly::zero(),
            SRef::S { m, sign } => Poly::from_monomial(
                Monomial::var(VarId::S(m)),
                Rational::from_integer((sign as i64).into()),
            ),
        }
    }
}

/// The polynomial `s_a * s_b` with both factors normalized for degree `n`.
pub fn s_pair_poly(a: i64, b: i64, n: u32) -> Poly {
    &s_normalize(a, n).poly() * &s_normalize(b, n).poly()
}

/// The coordinate variable `X_{alpha mod n}`.
pub fn x_var(alpha: i64, n: u32) -> VarId {
    VarId::X(alpha.rem_euclid(n as i64) as u32)
}

/// The monomial `X_a X_b` with indices mod `n` (as a polynomial).
pub fn x_pair_poly(a: i64, b: i64, n: u32) -> Poly {
    let m = Monomial::var(x_var(a, n)).mul(&Monomial::var(x_var(b, n)));
    Poly::from_monomial(m, Rational::from_integer(1.into()))
}

/// Substitute `X_alpha -> X_{alpha + by mod n}` throughout.
pub fn shift_x(p: &Poly, by: i64, n: u32) -> Poly {
    p.substitute(&|v| match v {
        VarId::X(a) => Some(Poly::var(x_var(a as i64 + by, n))),
        _ => None,
    })
}

/// Format a doubled half-integer: `4 -> "2"`, `3 -> "3/2"`.
pub fn fmt_half(v2: i64) -> String {
    if v2 % 2 == 0 {
        format!("{}", v2 / 2)
    } else {
        format!("{v2}/2")
    }
}

/// Canonical index of a quadric: level `h` and triple `i < j < k`, stored
/// doubled. Canonical form has `h2` in `[0, 2n)` with `h` integral for odd
/// `n` (`h2` even) and `h2` in `[0, n)` for even `n`; the triple lies in
/// `[0, n]` sorted ascending, with the same parity as `h2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadIndex {
    /// Curve degree.
    pub n: u32,
    /// Doubled level.
    pub h2: i64,
    /// Doubled triple, strictly increasing.
    pub i2: i64,
    /// Doubled middle index.
    pub j2: i64,
    /// Doubled top index.
    pub k2: i64,
}

impl QuadIndex {
    /// Bring `(h, {i, j, k})` (doubled) to canonical form.
    ///
    /// The triple entries reduce mod `2n` into `[0, n]` (using the symmetry
    /// `i ~ -i`), are sorted, and when the level is out of its fundamental
    /// range (`h2` odd for odd `n`; `h2 >= n` for even `n`) the class is
    /// flipped: `h2 += n` and the triple maps to `(n-k, n-j, n-i)`.
    pub fn canonicalize(n: u32, h2: i64, i2: i64, j2: i64, k2: i64) -> Result<QuadIndex> {
        if n < 3 {
            return Err(Error::UnsupportedN(n, "need n >= 3".into()));
        }
        let parity = h2.rem_euclid(2);
        if [i2, j2, k2].iter().any(|v| v.rem_euclid(2) != parity) {
            return Err(Error::NonHalfIntegral(format!(
                "level {} and triple ({}, {}, {}) have mixed parity",
                fmt_half(h2),
                fmt_half(i2),
                fmt_half(j2),
                fmt_half(k2)
            )));
        }
        let ni = n as i64;
        let reduce = |x: i64| -> i64 {
            let r = x.rem_euclid(2 * ni);
            if r > ni {
                2 * ni - r
            } else {
                r
            }
        };
        let mut tri = [reduce(i2), reduce(j2), reduce(k2)];
        tri.sort_unstable();
        let mut h2 = h2.rem_euclid(2 * ni);
        let flip = if n % 2 == 1 { h2 % 2 == 1 } else { h2 >= ni };
        if flip {
            h2 = (h2 + ni).rem_euclid(2 * ni);
            tri = [ni - tri[2], ni - tri[1], ni - tri[0]];
        }
        Ok(QuadIndex {
            n,
            h2,
            i2: tri[0],
            j2: tri[1],
            k2: tri[2],
        })
    }

    /// True if the triple is strictly increasing (a nondegenerate quadric).
    pub fn is_strict(&self) -> bool {
        self.i2 < self.j2 && self.j2 < self.k2
    }

    /// The level as a doubled value in `[0, 2n)`.
    pub fn level2(&self) -> i64 {
        self.h2
    }
}

impl fmt::Display for QuadIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F[{};{},{},{}]",
            fmt_half(self.h2),
            fmt_half(self.i2),
            fmt_half(self.j2),
            fmt_half(self.k2)
        )
    }
}

/// Convert a quadruple of indices `(a0, a1, a2, a3)` (doubled) to the
/// canonical `(h; i, j, k)` class via `2h = a0+a1+a2+a3`,
/// `2i = a0+a1-a2-a3`, `2j = a0-a1+a2-a3`, `2k = a0-a1-a2+a3`.
pub fn quad_to_hijk(quad2: [i64; 4], n: u32) -> Result<QuadIndex> {
    let parity = quad2[0].rem_euclid(2);
    if quad2.iter().any(|v| v.rem_euclid(2) != parity) {
        return Err(Error::NonHalfIntegral(format!(
            "quadruple ({}, {}, {}, {}) mixes integers and half-integers",
            fmt_half(quad2[0]),
            fmt_half(quad2[1]),
            fmt_half(quad2[2]),
            fmt_half(quad2[3])
        )));
    }
    let [a0, a1, a2, a3] = quad2;
    let h2 = (a0 + a1 + a2 + a3) / 2;
    let i2 = (a0 + a1 - a2 - a3) / 2;
    let j2 = (a0 - a1 + a2 - a3) / 2;
    let k2 = (a0 - a1 - a2 + a3) / 2;
    QuadIndex::canonicalize(n, h2, i2, j2, k2)
}

/// The quadric of the canonical class `idx`:
/// `F = s_{k+j} s_{k-j} X_{h+i} X_{h-i} - s_{k+i} s_{k-i} X_{h+j} X_{h-j}
///    + s_{j+i} s_{j-i} X_{h+k} X_{h-k}`,
/// with all `s` references normalized (signs absorbed into coefficients)
/// and all `X` indices taken mod `n`.
pub fn gen_f(idx: &QuadIndex) -> Result<Poly> {
    if !idx.is_strict() {
        return Err(Error::RangeError(format!(
            "degenerate triple in {idx}: need i < j < k after canonicalization"
        )));
    }
    let n = idx.n;
    let (h2, i2, j2, k2) = (idx.h2, idx.i2, idx.j2, idx.k2);
    let s_term = |p2: i64, q2: i64| s_pair_poly((p2 + q2) / 2, (p2 - q2) / 2, n);
    let x_term = |r2: i64| x_pair_poly((h2 + r2) / 2, (h2 - r2) / 2, n);
    let mut f = &s_term(k2, j2) * &x_term(i2);
    f -= &(&s_term(k2, i2) * &x_term(j2));
    f += &(&s_term(j2, i2) * &x_term(k2));
    Ok(f)
}

/// All canonical quadrics for degree `n` in deterministic order: integer
/// levels ascending with triples lexicographic, then (even `n`) the
/// half-integer levels.
pub fn gen_all_curve_equations(n: u32) -> Result<Vec<(QuadIndex, Poly)>> {
    if n < 4 {
        return Err(Error::UnsupportedN(n, "equation families need n >= 4".into()));
    }
    let mut out = Vec::new();
    let ni = n as i64;
    if n % 2 == 1 {
        let top = (ni - 1) / 2;
        for h in 0..ni {
            for i in 0..=top {
                for j in (i + 1)..=top {
                    for k in (j + 1)..=top {
                        let idx =
                            QuadIndex::canonicalize(n, 2 * h, 2 * i, 2 * j, 2 * k)?;
                        out.push((idx, gen_f(&idx)?));
                    }
                }
            }
        }
    } else {
        let top = ni / 2;
        for h in 0..ni / 2 {
            for i in 0..=top {
                for j in (i + 1)..=top {
                    for k in (j + 1)..=top {
                        let idx =
                            QuadIndex::canonicalize(n, 2 * h, 2 * i, 2 * j, 2 * k)?;
                        out.push((idx, gen_f(&idx)?));
                    }
                }
            }
        }
        for h2 in (1..ni).step_by(2) {
            for i2 in (1..ni).step_by(2) {
                for j2 in (i2 + 2..ni).step_by(2) {
                    for k2 in (j2 + 2..ni).step_by(2) {
                        let idx = QuadIndex::canonicalize(n, h2, i2, j2, k2)?;
                        out.push((idx, gen_f(&idx)?));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The coefficient relation attached to a quadruple `i < j < k < l`
/// (doubled, all one parity class, within `[0, n]`):
/// `R = -(ik)(jl) + (il)(jk) + (ij)(kl) T^{k-j}` where
/// `(ab) = s_{b+a} s_{b-a}` normalized. With `deformed = false` the factor
/// `T^{k-j}` is specialized to 1.
pub fn gen_s_relation(n: u32, quad2: [i64; 4], deformed: bool) -> Result<Poly> {
    let [i2, j2, k2, l2] = quad2;
    let parity = i2.rem_euclid(2);
    if quad2.iter().any(|v| v.rem_euclid(2) != parity) {
        return Err(Error::NonHalfIntegral(format!(
            "quadruple ({}, {}, {}, {}) mixes parities",
            fmt_half(i2),
            fmt_half(j2),
            fmt_half(k2),
            fmt_half(l2)
        )));
    }
    if n % 2 == 1 && parity == 1 {
        return Err(Error::RangeError(
            "odd degree has no half-integer class".into(),
        ));
    }
    if !(0 <= i2 && i2 < j2 && j2 < k2 && k2 < l2 && l2 <= n as i64) {
        return Err(Error::RangeError(format!(
            "need 0 <= i < j < k < l <= n/2 doubled; got ({}, {}, {}, {}) for n = {n}",
            fmt_half(i2),
            fmt_half(j2),
            fmt_half(k2),
            fmt_half(l2)
        )));
    }
    let pair = |a2: i64, b2: i64| s_pair_poly((b2 + a2) / 2, (b2 - a2) / 2, n);
    let mut r = -&(&pair(i2, k2) * &pair(j2, l2));
    r += &(&pair(i2, l2) * &pair(j2, k2));
    let mut third = &pair(i2, j2) * &pair(k2, l2);
    if deformed {
        let tpow = Monomial::var(VarId::BigT).pow(((k2 - j2) / 2) as u32);
        third = third.mul_term(&tpow, &Rational::from_integer(1.into()));
    }
    r += &third;
    Ok(r)
}

/// All distinct coefficient relations for degree `n` (both parity classes
/// for even `n`), deduplicated up to sign.
pub fn s_relation_ideal(n: u32, deformed: bool) -> Result<Vec<Poly>> {
    let ni = n as i64;
    let mut quads: Vec<[i64; 4]> = Vec::new();
    let mut push_range = |start: i64| {
        let vals: Vec<i64> = (0..).map(|t| start + 2 * t).take_while(|v| *v <= ni).collect();
        for a in 0..vals.len() {
            for b in a + 1..vals.len() {
                for c in b + 1..vals.len() {
                    for d in c + 1..vals.len() {
                        quads.push([vals[a], vals[b], vals[c], vals[d]]);
                    }
                }
            }
        }
    };
    push_range(0);
    if n % 2 == 0 {
        push_range(1);
    }
    let mut out: Vec<Poly> = Vec::new();
    for q in quads {
        let r = gen_s_relation(n, q, deformed)?;
        if r.is_zero() {
            continue;
        }
        let dup = out
            .iter()
            .any(|p| matches!(p.eq_up_to_scalar(&r), Some(c) if c == Rational::from_integer(1.into()) || c == Rational::from_integer((-1).into())));
        if !dup {
            out.push(r);
        }
    }
    Ok(out)
}

/// The antisymmetric matrix entry `P_{ab} = s_{b-a} X_{b+a}` (shifted:
/// `X_{b+a+1}`), normalized.
fn pfaffian_entry(a: i64, b: i64, n: u32, shifted: bool) -> Poly {
    let shift = if shifted { 1 } else { 0 };
    &s_normalize(b - a, n).poly() * &Poly::var(x_var(b + a + shift, n))
}

/// All 4x4 sub-Pfaffians of the matrix `P_{ab} = s_{b-a} X_{a+b(+1)}`,
/// labelled by their canonical quadric class. Every Pfaffian equals the
/// canonical quadric of its label up to sign.
pub fn pfaffian_system(n: u32, shifted: bool) -> Result<Vec<(QuadIndex, Poly)>> {
    if n < 5 {
        return Err(Error::UnsupportedN(n, "pfaffian systems need n >= 5".into()));
    }
    let ni = n as i64;
    let delta = if shifted { 1 } else { 0 };
    let mut out = Vec::new();
    for a0 in 0..ni {
        for a1 in a0 + 1..ni {
            for a2 in a1 + 1..ni {
                for a3 in a2 + 1..ni {
                    let p = |x: i64, y: i64| pfaffian_entry(x, y, n, shifted);
                    let mut pf = &p(a0, a1) * &p(a2, a3);
                    pf -= &(&p(a0, a2) * &p(a1, a3));
                    pf += &(&p(a0, a3) * &p(a1, a2));
                    let label = quad_to_hijk(
                        [2 * a0 + delta, 2 * a1 + delta, 2 * a2 + delta, 2 * a3 + delta],
                        n,
                    )?;
                    out.push((label, pf));
                }
            }
        }
    }
    Ok(out)
}

/// Specialize a system of degree-`n` equations to the `m`-gon point:
/// substitute `s_mu = 1` (normalized, so possibly `s_{m0} = -1`) and all
/// other `s` to 0, where `mu = (n - m)/2 mod n`. Returns the surviving
/// equations, deduplicated and scaled monic.
pub fn specialize_to_mgon(n: u32, system: &[Poly], m: u32) -> Result<Vec<Poly>> {
    if m < 1 || m >= n {
        return Err(Error::RangeError(format!(
            "m-gon specialization needs 1 <= m < n; got m = {m}, n = {n}"
        )));
    }
    let ni = n as i64;
    let mu = if n % 2 == 1 {
        // (n - m) * inverse of 2 mod n; the inverse is (n+1)/2
        ((ni - m as i64) * ((ni + 1) / 2)).rem_euclid(ni)
    } else {
        if (n - m) % 2 != 0 {
            return Err(Error::RangeError(format!(
                "for even n = {n} the m-gon parity must match; got m = {m}"
            )));
        }
        ((ni - m as i64) / 2).rem_euclid(ni)
    };
    let (m0, sign) = match s_normalize(mu, n) {
        SRef::Zero => {
            return Err(Error::RangeError(format!(
                "mu = {mu} is congruent to 0 mod {n}"
            )))
        }
        SRef::S { m, sign } => (m, sign),
    };
    let value = Rational::from_integer((sign as i64).into());
    let mut out: Vec<Poly> = Vec::new();
    for p in system {
        let q = p.eval_partial(&|v| match v {
            VarId::S(mm) => Some(if mm == m0 {
                value.clone()
            } else {
                Rational::from_integer(0.into())
            }),
            _ => None,
        });
        if q.is_zero() {
            continue;
        }
        let lead = q
            .leading_term(&MonomialOrder::GrevLex)
            .map(|(_, c)| c.clone())
            .expect("nonzero survivor");
        let q = q.scale(&lead.recip());
        if !out.contains(&q) {
            out.push(q);
        }
    }
    Ok(out)
}

/// A labelled polynomial inside an exported equation system.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LabeledPoly {
    /// Display label, e.g. `F[0;0,1,2]` (absent for unlabelled systems).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub label: Option<String>,
    /// The equation.
    pub poly: Poly,
}

/// A system of equations with its metadata, the common exchange type of
/// the command-line interface.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EquationSystem {
    /// Degree of the family (number of `X` variables).
    pub n: u32,
    /// Whether deformation parameters are present.
    pub deformed: bool,
    /// Jet truncation degree, for jet ideals.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub jet_degree: Option<u64>,
    /// The equations.
    pub equations: Vec<LabeledPoly>,
}

impl EquationSystem {
    /// Wrap labelled quadrics.
    pub fn from_labelled(n: u32, deformed: bool, eqs: Vec<(QuadIndex, Poly)>) -> Self {
        EquationSystem {
            n,
            deformed,
            jet_degree: None,
            equations: eqs
                .into_iter()
                .map(|(idx, poly)| LabeledPoly {
                    label: Some(idx.to_string()),
                    poly,
                })
                .collect(),
        }
    }

    /// Wrap unlabelled polynomials.
    pub fn from_polys(n: u32, deformed: bool, polys: Vec<Poly>) -> Self {
        EquationSystem {
            n,
            deformed,
            jet_degree: None,
            equations: polys
                .into_iter()
                .map(|poly| LabeledPoly { label: None, poly })
                .collect(),
        }
    }

    /// The bare polynomials.
    pub fn polys(&self) -> Vec<Poly> {
        self.equations.iter().map(|e| e.poly.clone()).collect()
    }
}

/// The set of `X_a X_b` monomial polynomials with `b - a` avoiding
/// `{0, +-d} mod n` — the coordinate ideal generators of a union of lines.
pub fn nonadjacent_pairs(n: u32, d: i64) -> Vec<Poly> {
    let ni = n as i64;
    let mut out = Vec::new();
    for a in 0..ni {
        for b in a..ni {
            let diff = (b - a).rem_euclid(ni);
            if diff == 0 || diff == d.rem_euclid(ni) || diff == (-d).rem_euclid(ni) {
                continue;
            }
            out.push(x_pair_poly(a, b, n));
        }
    }
    out
}
