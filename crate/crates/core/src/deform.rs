//! The deformation of the quadric families: equations with multiplication
//! parameters `t_0, ..., t_{n-1}`, their syzygies, the power-series solution
//! of the coefficient relations, and the torus coordinate change that
//! trivializes the deformation fibrewise.

use crate::curve_eqs::{
    fmt_half, gen_f, quad_to_hijk, s_normalize, s_pair_poly, s_relation_ideal, x_pair_poly,
    x_var, QuadIndex,
};
use crate::exactalg::{rat, Monomial, Poly, PowerSeries, Rational, VarId};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// The parameter variable `t_{i mod n}`.
pub fn t_var(i: i64, n: u32) -> VarId {
    VarId::Tv(i.rem_euclid(n as i64) as u32)
}

/// The cyclic product `t_lo t_{lo+1} ... t_hi` (indices mod `n`, walking
/// upward from `lo` to `hi`). Never empty: `lo == hi` gives one factor and
/// wrapping around gives up to `n` factors.
pub fn t_product(lo: i64, hi: i64, n: u32) -> Monomial {
    let ni = n as i64;
    let count = (hi - lo).rem_euclid(ni) + 1;
    let mut mon = Monomial::one();
    for step in 0..count {
        mon = mon.mul(&Monomial::var(t_var(lo + step, n)));
    }
    mon
}

fn s_term(a2: i64, b2: i64, n: u32) -> Poly {
    s_pair_poly((a2 + b2) / 2, (a2 - b2) / 2, n)
}

/// The t-product attached to the first slot of a quadric: the factor of
/// `X_{h+i} X_{h-i}`, running over `m = i, i+1, ..., j-1`.
fn slot_first_t(h2: i64, from2: i64, upto2: i64, n: u32) -> Monomial {
    let mut mon = Monomial::one();
    let mut m2 = from2;
    while m2 <= upto2 - 2 {
        mon = mon.mul(&t_product((h2 - m2) / 2, (h2 + m2) / 2, n));
        m2 += 2;
    }
    mon
}

/// The t-product attached to the last slot: the factor of
/// `X_{h+k} X_{h-k}`, running over `m = j+1, ..., k`.
fn slot_last_t(h2: i64, from2: i64, upto2: i64, n: u32) -> Monomial {
    let mut mon = Monomial::one();
    let mut m2 = from2 + 2;
    while m2 <= upto2 {
        mon = mon.mul(&t_product((h2 + m2) / 2, (h2 - m2) / 2, n));
        m2 += 2;
    }
    mon
}

/// The deformed quadric of the canonical class `idx`:
/// `F = s_{k+j} s_{k-j} (prod_{m=i}^{j-1} T_{h-m}^{h+m}) X_{h+i} X_{h-i}
///    - s_{k+i} s_{k-i} X_{h+j} X_{h-j}
///    + s_{j+i} s_{j-i} (prod_{m=j+1}^{k} T_{h+m}^{h-m}) X_{h+k} X_{h-k}`
/// where `T_a^b` is the cyclic product `t_a ... t_b`. Setting every `t` to 1
/// recovers the undeformed quadric.
pub fn gen_deformed_f(idx: &QuadIndex) -> Result<Poly> {
    if !idx.is_strict() {
        return Err(Error::RangeError(format!(
            "degenerate triple in {idx}: need i < j < k after canonicalization"
        )));
    }
    let n = idx.n;
    let (h2, i2, j2, k2) = (idx.h2, idx.i2, idx.j2, idx.k2);
    let x_pair = |r2: i64| x_pair_poly((h2 + r2) / 2, (h2 - r2) / 2, n);
    let one = rat(1);
    let mut f = &s_term(k2, j2, n).mul_term(&slot_first_t(h2, i2, j2, n), &one) * &x_pair(i2);
    f -= &(&s_term(k2, i2, n) * &x_pair(j2));
    f += &(&s_term(j2, i2, n).mul_term(&slot_last_t(h2, j2, k2, n), &one) * &x_pair(k2));
    Ok(f)
}

/// The expected t-degrees of the first and last slots of the deformed
/// quadric: `j^2 - i^2` and `sum_{m=j+1}^{k} (n - 2m + 1)`.
pub fn expected_t_degrees(idx: &QuadIndex) -> (u64, u64) {
    let n = idx.n as i64;
    let mut first = 0i64;
    let mut m2 = idx.i2;
    while m2 <= idx.j2 - 2 {
        first += m2 + 1;
        m2 += 2;
    }
    let mut last = 0i64;
    let mut m2 = idx.j2 + 2;
    while m2 <= idx.k2 {
        last += n - m2 + 1;
        m2 += 2;
    }
    (first as u64, last as u64)
}

/// All deformed quadrics for degree `n`, in the order of
/// [`crate::curve_eqs::gen_all_curve_equations`].
pub fn gen_all_deformed_equations(n: u32) -> Result<Vec<(QuadIndex, Poly)>> {
    crate::curve_eqs::gen_all_curve_equations(n)?
        .into_iter()
        .map(|(idx, _)| Ok((idx, gen_deformed_f(&idx)?)))
        .collect()
}

/// Base value of `s_m` at the origin of the parameter space:
/// `(-1)^{n(m+1)}` — alternating for odd `n`, identically 1 for even `n`.
pub fn s_base(n: u32, m: u32) -> Rational {
    if n % 2 == 1 && m % 2 == 0 {
        rat(-1)
    } else {
        rat(1)
    }
}

/// The minimal generators of the deformed ideal: the quadrics
/// `F^h_{j-1, j, j+1}` over all levels. There are `n(n-3)/2` of them, and
/// at `t = 0`, `s = s(0)` they specialize bijectively (up to sign) onto the
/// non-adjacent coordinate products `X_a X_b`.
pub fn minimal_generators(n: u32) -> Result<Vec<(QuadIndex, Poly)>> {
    if n < 5 {
        return Err(Error::UnsupportedN(n, "minimal generators need n >= 5".into()));
    }
    let ni = n as i64;
    let mut out = Vec::new();
    if n % 2 == 1 {
        for h in 0..ni {
            for j in 1..=(ni - 3) / 2 {
                let idx =
                    QuadIndex::canonicalize(n, 2 * h, 2 * (j - 1), 2 * j, 2 * (j + 1))?;
                out.push((idx, gen_deformed_f(&idx)?));
            }
        }
    } else {
        for h in 0..ni / 2 {
            for j in 1..=ni / 2 - 1 {
                let idx =
                    QuadIndex::canonicalize(n, 2 * h, 2 * (j - 1), 2 * j, 2 * (j + 1))?;
                out.push((idx, gen_deformed_f(&idx)?));
            }
        }
        for h2 in (1..ni).step_by(2) {
            for j2 in (3..=ni - 3).step_by(2) {
                let idx = QuadIndex::canonicalize(n, h2, j2 - 2, j2, j2 + 2)?;
                out.push((idx, gen_deformed_f(&idx)?));
            }
        }
    }
    Ok(out)
}

/// The deformed quadric of an *ordered* quadruple `(q0, q1, q2, q3)`
/// (doubled), sign-normalized so that the term on the coordinate pair
/// `X_{q0+q1} X_{q2+q3}` has s-part exactly `+ s_{q0-q1} s_{q2-q3}`
/// (normalized). Returns the canonical label and the signed quadric.
pub fn deformed_sigma_f(n: u32, quad2: [i64; 4]) -> Result<(QuadIndex, Poly)> {
    let idx = quad_to_hijk(quad2, n)?;
    let f = gen_deformed_f(&idx)?;
    let [q0, q1, q2, q3] = quad2;
    let pair = Monomial::var(x_var((q0 + q1) / 2, n)).mul(&Monomial::var(x_var((q2 + q3) / 2, n)));
    let groups = f.group_by(|v| matches!(v, VarId::X(_)));
    let coeff = groups.get(&pair).ok_or_else(|| {
        Error::MismatchReport(format!(
            "quadric {idx} has no term on the pair {}",
            Poly::from_monomial(pair.clone(), rat(1))
        ))
    })?;
    let target = s_pair_poly((q0 - q1) / 2, (q2 - q3) / 2, n);
    // both are single terms: +-(s-monomial) and +-(s-monomial * t-monomial)
    let (got_mon, got_c) = coeff.terms().next().ok_or_else(|| {
        Error::MismatchReport(format!("zero coefficient on a slot of {idx}"))
    })?;
    let (want_mon, want_c) = target.terms().next().ok_or_else(|| {
        Error::MismatchReport("slot coefficient collapsed to zero".into())
    })?;
    if coeff.num_terms() != 1 || got_mon.restrict(|v| matches!(v, VarId::S(_))) != *want_mon {
        return Err(Error::MismatchReport(format!(
            "slot coefficient {coeff} of {idx} does not match +-{target}"
        )));
    }
    let sigma = want_c / got_c;
    Ok((idx, f.scale(&sigma)))
}

/// Which of the four indices of a quadruple a syzygy pivots on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pivot {
    /// The lowest index.
    I,
    /// The second index.
    J,
    /// The third index.
    K,
    /// The highest index.
    L,
}

/// The three-term syzygy of the deformed quadrics attached to a level `h`
/// (doubled, in canonical range), a quadruple `i < j < k < l` (doubled) and
/// a pivot: three coefficient polynomials paired with quadric labels, whose
/// combination collapses onto the pivot coordinate pair with coefficient a
/// t-monomial times the deformed coefficient relation of the quadruple.
pub fn syzygy_lemma1(
    n: u32,
    h2: i64,
    pivot: Pivot,
    quad2: [i64; 4],
) -> Result<Vec<(Poly, QuadIndex)>> {
    let [i2, j2, k2, l2] = quad2;
    let parity = i2.rem_euclid(2);
    if quad2.iter().any(|v| v.rem_euclid(2) != parity) || h2.rem_euclid(2) != parity {
        return Err(Error::NonHalfIntegral(format!(
            "level {} and quadruple ({}, {}, {}, {}) must share one parity class",
            fmt_half(h2),
            fmt_half(i2),
            fmt_half(j2),
            fmt_half(k2),
            fmt_half(l2)
        )));
    }
    if !(0 <= i2 && i2 < j2 && j2 < k2 && k2 < l2 && l2 <= n as i64) {
        return Err(Error::RangeError(format!(
            "need 0 <= i < j < k < l <= n/2; got ({}, {}, {}, {})",
            fmt_half(i2),
            fmt_half(j2),
            fmt_half(k2),
            fmt_half(l2)
        )));
    }
    let h2 = h2.rem_euclid(2 * n as i64);
    let canonical_level = if n % 2 == 1 { h2 % 2 == 0 } else { h2 < n as i64 };
    if !canonical_level {
        return Err(Error::RangeError(format!(
            "level {} is outside the canonical range for n = {n}",
            fmt_half(h2)
        )));
    }
    let label = |a2: i64, b2: i64, c2: i64| QuadIndex::canonicalize(n, h2, a2, b2, c2);
    let sp = |a2: i64, b2: i64| s_term(a2, b2, n);
    let one = rat(1);
    // the continuation products shared by the shapes
    let up = Poly::from_monomial(slot_last_t(h2, j2, k2, n), one.clone());
    let down = Poly::from_monomial(slot_first_t(h2, j2, k2, n), one.clone());
    let parts = match pivot {
        Pivot::I => vec![
            (sp(l2, i2), label(i2, j2, k2)?),
            (-&sp(k2, i2), label(i2, j2, l2)?),
            (&sp(j2, i2) * &up, label(i2, k2, l2)?),
        ],
        Pivot::J => vec![
            (sp(l2, j2), label(i2, j2, k2)?),
            (-&sp(k2, j2), label(i2, j2, l2)?),
            (&sp(j2, i2) * &up, label(j2, k2, l2)?),
        ],
        Pivot::K => vec![
            (&sp(l2, k2) * &down, label(i2, j2, k2)?),
            (-&sp(k2, j2), label(i2, k2, l2)?),
            (sp(k2, i2), label(j2, k2, l2)?),
        ],
        Pivot::L => vec![
            (&sp(l2, k2) * &down, label(i2, j2, l2)?),
            (-&sp(l2, j2), label(i2, k2, l2)?),
            (sp(l2, i2), label(j2, k2, l2)?),
        ],
    };
    Ok(parts)
}

/// Sum a syzygy given as (coefficient, canonical label) pairs.
pub fn combine_labelled(parts: &[(Poly, QuadIndex)]) -> Result<Poly> {
    let mut acc = Poly::zero();
    for (c, idx) in parts {
        acc += &(c * &gen_deformed_f(idx)?);
    }
    Ok(acc)
}

/// Sum a syzygy given as (coefficient, ordered quadruple) pairs, using the
/// sign-normalized quadrics.
pub fn combine_ordered(n: u32, parts: &[(Poly, [i64; 4])]) -> Result<Poly> {
    let mut acc = Poly::zero();
    for (c, quad) in parts {
        let (_, f) = deformed_sigma_f(n, *quad)?;
        acc += &(c * &f);
    }
    Ok(acc)
}

/// Replace the modulus variable `T` by the full product `t_0 ... t_{n-1}`.
pub fn expand_big_t(p: &Poly, n: u32) -> Poly {
    let prod: Monomial = (0..n as i64)
        .map(|i| Monomial::var(t_var(i, n)))
        .fold(Monomial::one(), |a, b| a.mul(&b));
    p.substitute(&|v| match v {
        VarId::BigT => Some(Poly::from_monomial(prod.clone(), rat(1))),
        _ => None,
    })
}

fn t_part_of_pair(f: &Poly, a: i64, b: i64, n: u32, what: &str) -> Result<Monomial> {
    let pair = Monomial::var(x_var(a, n)).mul(&Monomial::var(x_var(b, n)));
    let groups = f.group_by(|v| matches!(v, VarId::X(_)));
    let coeff = groups.get(&pair).ok_or_else(|| {
        Error::MismatchReport(format!("{what}: no term on X_{} X_{}", a.rem_euclid(n as i64), b.rem_euclid(n as i64)))
    })?;
    if coeff.num_terms() != 1 {
        return Err(Error::MismatchReport(format!(
            "{what}: expected a single term, found {coeff}"
        )));
    }
    let (mon, _) = coeff.terms().next().expect("nonempty");
    Ok(mon.restrict(|v| matches!(v, VarId::Tv(_))))
}

/// The four-term syzygy attached to five indices `a0, ..., a4` (doubled,
/// one parity class, distinct mod `n`): coefficients paired with ordered
/// quadruples whose sign-normalized combination vanishes identically. The
/// two outer coefficients carry the t-monomials `D` and `C` read off from
/// the middle slots of the third and second quadrics.
pub fn syzygy_lemma2(n: u32, quint2: [i64; 5]) -> Result<Vec<(Poly, [i64; 4])>> {
    let parity = quint2[0].rem_euclid(2);
    if quint2.iter().any(|v| v.rem_euclid(2) != parity) {
        return Err(Error::NonHalfIntegral(
            "five indices must share one parity class".into(),
        ));
    }
    let n2 = 2 * n as i64;
    for a in 0..5 {
        for b in a + 1..5 {
            if (quint2[a] - quint2[b]).rem_euclid(n2) == 0 {
                return Err(Error::RangeError(format!(
                    "indices {} and {} coincide mod n",
                    fmt_half(quint2[a]),
                    fmt_half(quint2[b])
                )));
            }
        }
    }
    let [a0, a1, a2, a3, a4] = quint2;
    let q1 = [a0, a2, a3, a4];
    let q2 = [a1, a0, a3, a4];
    let q3 = [a1, a2, a0, a4];
    let q4 = [a1, a2, a3, a0];
    let (_, f3) = deformed_sigma_f(n, q3)?;
    let d_mon = t_part_of_pair(&f3, (a1 + a0) / 2, (a2 + a4) / 2, n, "D slot")?;
    let (_, f2) = deformed_sigma_f(n, q2)?;
    let c_mon = t_part_of_pair(&f2, (a0 + a4) / 2, (a1 + a3) / 2, n, "C slot")?;
    let lin = |b2: i64| -> Poly {
        &s_normalize((a0 - b2) / 2, n).poly() * &Poly::var(x_var((a0 + b2) / 2, n))
    };
    Ok(vec![
        (lin(a1).mul_term(&d_mon, &rat(1)), q1),
        (lin(a2), q2),
        (lin(a3), q3),
        (lin(a4).mul_term(&c_mon, &rat(1)), q4),
    ])
}

/// The lifted four-term syzygy attached to integers `alpha < beta <= gamma - 2`
/// whose five indices `alpha, beta, gamma-1, gamma, gamma+1` are distinct
/// mod `n`. Its sign-normalized combination vanishes modulo the deformed
/// coefficient relations (identically when the relation ideal is empty).
pub fn syzygy_lemma3_lift(
    n: u32,
    alpha: i64,
    beta: i64,
    gamma: i64,
) -> Result<Vec<(Poly, [i64; 4])>> {
    if !(alpha < beta && beta <= gamma - 2) {
        return Err(Error::RangeError(format!(
            "need alpha < beta <= gamma - 2; got ({alpha}, {beta}, {gamma})"
        )));
    }
    let ni = n as i64;
    let idx5 = [alpha, beta, gamma - 1, gamma, gamma + 1];
    for a in 0..5 {
        for b in a + 1..5 {
            if (idx5[a] - idx5[b]).rem_euclid(ni) == 0 {
                return Err(Error::RangeError(format!(
                    "indices {} and {} coincide mod n",
                    idx5[a], idx5[b]
                )));
            }
        }
    }
    let s1 = s_normalize(1, n).poly();
    let lin = |s: Poly, x: i64| -> Poly { &s * &Poly::var(x_var(x, n)) };
    let t_up = |lo: i64, hi: i64| Poly::from_monomial(t_product(lo, hi, n), rat(1));
    Ok(vec![
        (
            lin(s_normalize(gamma - alpha, n).poly(), gamma + alpha),
            [2 * gamma, 2 * beta, 2 * (gamma - 1), 2 * (gamma + 1)],
        ),
        (
            lin(s_normalize(gamma - beta, n).poly(), gamma + beta),
            [2 * alpha, 2 * gamma, 2 * (gamma - 1), 2 * (gamma + 1)],
        ),
        (
            &lin(s1.clone(), 2 * gamma - 1) * &t_up(beta + gamma + 1, 2 * gamma - 1),
            [2 * alpha, 2 * beta, 2 * gamma, 2 * (gamma + 1)],
        ),
        (
            -&(&lin(s1, 2 * gamma + 1) * &t_up(2 * gamma + 1, alpha + gamma - 1)),
            [2 * alpha, 2 * beta, 2 * (gamma - 1), 2 * gamma],
        ),
    ])
}

/// Evaluate a polynomial in the `s_m` and `T` at power series `s_m(T)`.
pub fn poly_to_series(
    p: &Poly,
    series: &BTreeMap<u32, PowerSeries>,
    order: usize,
) -> Result<PowerSeries> {
    let mut acc = PowerSeries::zero(order);
    for (mon, coeff) in p.terms() {
        let mut term = PowerSeries::constant(coeff.clone(), order);
        for (v, e) in mon.iter() {
            match v {
                VarId::S(m) => {
                    let s = series.get(&m).ok_or_else(|| {
                        Error::RangeError(format!("no series assigned to s{m}"))
                    })?;
                    term = term.mul(&s.truncate(order).pow(e));
                }
                VarId::BigT => term = term.mul(&PowerSeries::t(order).pow(e)),
                other => {
                    return Err(Error::RangeError(format!(
                        "series evaluation saw unexpected variable {other}"
                    )))
                }
            }
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// An exact order-by-order solution of the deformed coefficient relations:
/// series `s_m(T)` with `s_m(0) = (-1)^{n(m+1)}`, normalized by pinning a
/// deterministic subset of the `s_m` to their constant values.
#[derive(Debug, Clone)]
pub struct SSolution {
    /// Degree of the family.
    pub n: u32,
    /// Truncation order of every series.
    pub order: usize,
    /// The series, keyed by the parameter index `m`.
    pub series: BTreeMap<u32, PowerSeries>,
    /// The indices pinned to constants by the normalization.
    pub pinned: Vec<u32>,
}

impl SSolution {
    /// The series for `s_m`.
    pub fn s(&self, m: u32) -> Result<&PowerSeries> {
        self.series
            .get(&m)
            .ok_or_else(|| Error::RangeError(format!("no parameter s{m} for n = {}", self.n)))
    }
}

fn combinations(pool: &[u32], k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut stack = vec![(Vec::new(), 0usize)];
    while let Some((prefix, start)) = stack.pop() {
        if prefix.len() == k {
            out.push(prefix);
            continue;
        }
        // push in reverse so lexicographic order pops first
        for i in (start..pool.len()).rev() {
            let mut next = prefix.clone();
            next.push(pool[i]);
            stack.push((next, i + 1));
        }
    }
    out
}

/// Solve the deformed coefficient relations as exact power series in `T` to
/// the given order, pinning a normalization subset of the parameters to
/// their constant values.
pub fn solve_s_series(n: u32, order: usize) -> Result<SSolution> {
    if n < 5 {
        return Err(Error::UnsupportedN(n, "series solving needs n >= 5".into()));
    }
    if order < 1 {
        return Err(Error::RangeError("series order must be at least 1".into()));
    }
    let m_max = n / 2;
    let relations = s_relation_ideal(n, true)?;
    let base: BTreeMap<u32, Rational> = (1..=m_max).map(|m| (m, s_base(n, m))).collect();
    // relations must vanish at the base point
    for r in &relations {
        let v = r.eval_partial(&|v| match v {
            VarId::S(m) => Some(base[&m].clone()),
            VarId::BigT => Some(rat(0)),
            _ => None,
        });
        if !v.is_zero() {
            return Err(Error::SingularJacobian(format!(
                "relation {r} does not vanish at the base point"
            )));
        }
    }
    // Jacobian at the base point
    let jac: Vec<Vec<Rational>> = relations
        .iter()
        .map(|r| {
            (1..=m_max)
                .map(|m| {
                    r.partial(VarId::S(m))
                        .eval_partial(&|v| match v {
                            VarId::S(mm) => Some(base[&mm].clone()),
                            VarId::BigT => Some(rat(0)),
                            _ => None,
                        })
                        .constant_term()
                })
                .collect()
        })
        .collect();
    let rank = crate::exactalg::linalg::rank(jac.clone());
    let pins = m_max as usize - rank;
    let all: Vec<u32> = (1..=m_max).collect();
    let unpinned_ok = |pinned: &[u32]| -> bool {
        let free: Vec<u32> = all.iter().copied().filter(|m| !pinned.contains(m)).collect();
        if free.is_empty() {
            return true;
        }
        let sub: Vec<Vec<Rational>> = jac
            .iter()
            .map(|row| free.iter().map(|&m| row[m as usize - 1].clone()).collect())
            .collect();
        crate::exactalg::linalg::rank(sub) == free.len()
    };
    // preferred normalization: s_1 (and s_{n/2} for even n), then ascending
    let mut preferred: Vec<u32> = vec![1];
    if n % 2 == 0 && m_max >= 2 {
        preferred.push(m_max);
    }
    for m in 2..=m_max {
        if !preferred.contains(&m) {
            preferred.push(m);
        }
    }
    let candidate: Vec<u32> = {
        let mut c: Vec<u32> = preferred.into_iter().take(pins).collect();
        c.sort_unstable();
        c
    };
    let pinned = if unpinned_ok(&candidate) {
        candidate
    } else {
        combinations(&all, pins)
            .into_iter()
            .find(|c| unpinned_ok(c))
            .ok_or_else(|| {
                Error::SingularJacobian(format!(
                    "no normalization of size {pins} leaves an invertible Jacobian for n = {n}"
                ))
            })?
    };
    let free: Vec<u32> = all.iter().copied().filter(|m| !pinned.contains(m)).collect();
    let jac_free: Vec<Vec<Rational>> = jac
        .iter()
        .map(|row| free.iter().map(|&m| row[m as usize - 1].clone()).collect())
        .collect();
    // coefficients, built order by order
    let mut coeffs: BTreeMap<u32, Vec<Rational>> = (1..=m_max)
        .map(|m| {
            let mut v = vec![rat(0); order + 1];
            v[0] = base[&m].clone();
            (m, v)
        })
        .collect();
    for d in 1..=order {
        let current: BTreeMap<u32, PowerSeries> = coeffs
            .iter()
            .map(|(m, c)| (*m, PowerSeries::from_coeffs(c[..=d].to_vec())))
            .collect();
        let rhs: Vec<Rational> = relations
            .iter()
            .map(|r| Ok(-poly_to_series(r, &current, d)?.coeff(d)))
            .collect::<Result<_>>()?;
        let delta = crate::exactalg::linalg::solve_unique(&jac_free, &rhs).ok_or_else(|| {
            Error::SingularJacobian(format!(
                "order-{d} linear system for n = {n} is not uniquely solvable"
            ))
        })?;
        for (pos, &m) in free.iter().enumerate() {
            coeffs.get_mut(&m).expect("known key")[d] = delta[pos].clone();
        }
        // every relation must now vanish through order d
        let check: BTreeMap<u32, PowerSeries> = coeffs
            .iter()
            .map(|(m, c)| (*m, PowerSeries::from_coeffs(c[..=d].to_vec())))
            .collect();
        for r in &relations {
            let res = poly_to_series(r, &check, d)?;
            if !res.is_zero() {
                return Err(Error::SingularJacobian(format!(
                    "relation {r} fails at order {d} for n = {n}"
                )));
            }
        }
    }
    let series = coeffs
        .into_iter()
        .map(|(m, c)| (m, PowerSeries::from_coeffs(c)))
        .collect();
    Ok(SSolution {
        n,
        order,
        series,
        pinned,
    })
}

/// Verify the fibrewise torus coordinate change on one deformed quadric:
/// substituting `t_i -> tau_i^n`, `X_a -> (prod_j tau_j^{d(n-d)/2}) X_a`
/// (`d = (j - a) mod n`) and `s_m -> (prod_j tau_j)^{(m-1)(n-m-1)/2} s_m`
/// (exponents doubled for even `n`, with `t_i -> tau_i^{2n}`) turns the
/// deformed quadric into a single tau-monomial times the undeformed one.
/// Returns that tau-monomial.
pub fn verify_coordinate_change(idx: &QuadIndex) -> Result<Monomial> {
    let n = idx.n;
    let ni = n as i64;
    let doubled = n % 2 == 0;
    let t_exp = if doubled { 2 * n } else { n };
    let a_exp = |alpha: u32, j: i64| -> u32 {
        let d = (j - alpha as i64).rem_euclid(ni);
        let raw = d * (ni - d);
        (if doubled { raw } else { raw / 2 }) as u32
    };
    let b_exp = |m: u32| -> u32 {
        let raw = (m as i64 - 1) * (ni - m as i64 - 1);
        (if doubled { raw } else { raw / 2 }) as u32
    };
    let f = gen_deformed_f(idx)?;
    let sub = f.substitute(&|v| match v {
        VarId::Tv(i) => Some(Poly::from_monomial(
            Monomial::var(VarId::Tau(i)).pow(t_exp),
            rat(1),
        )),
        VarId::X(alpha) => {
            let mut mon = Monomial::var(VarId::X(alpha));
            for j in 0..ni {
                mon = mon.mul(&Monomial::var(VarId::Tau(j as u32)).pow(a_exp(alpha, j)));
            }
            Some(Poly::from_monomial(mon, rat(1)))
        }
        VarId::S(m) => {
            let mut mon = Monomial::var(VarId::S(m));
            for j in 0..ni {
                mon = mon.mul(&Monomial::var(VarId::Tau(j as u32)).pow(b_exp(m)));
            }
            Some(Poly::from_monomial(mon, rat(1)))
        }
        _ => None,
    });
    let tau_part = sub
        .monomial_content()
        .restrict(|v| matches!(v, VarId::Tau(_)));
    let g = gen_f(idx)?;
    match sub.div_term(&tau_part, &rat(1)) {
        Some(q) if q == g => Ok(tau_part),
        _ => Err(Error::MismatchReport(format!(
            "coordinate change on {idx}: substituted quadric {sub} is not a tau-monomial times {g}"
        ))),
    }
}
