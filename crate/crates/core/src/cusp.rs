//! Equations of cusp and degenerate-cusp singularities obtained from the
//! deformed polygon family: jets under the specialization `t_i = X_i^{a_i-2}`,
//! the exact pair equations of degenerate cusps, blow-down of cycles
//! containing a 1, the deformation over the v-parameters, and the
//! one-parameter epsilon-smoothing together with the syzygies that make it
//! flat.

use crate::curve_eqs::{EquationSystem, LabeledPoly, QuadIndex};
use crate::cycles::{blowdown_step, Cycle, CycleClass, Entry};
use crate::deform::{minimal_generators, t_product, SSolution};
use crate::exactalg::{rat, Monomial, MonomialOrder, Poly, VarId};
use crate::groebner::buchberger;
use crate::{Error, Result};
use num_traits::Zero;
use std::collections::BTreeMap;

/// A truncated (or exact) system of equations attached to a cycle.
#[derive(Debug, Clone)]
pub struct JetIdeal {
    /// Length of the cycle.
    pub n: u32,
    /// The cycle the equations belong to.
    pub cycle: Cycle,
    /// Truncation degree, or `None` when no truncation was applied.
    pub degree: Option<u64>,
    /// The equations, labelled like the generators they specialize.
    pub equations: Vec<LabeledPoly>,
    /// True when the listed polynomials are the complete equations rather
    /// than jets of an infinite series expansion.
    pub exact: bool,
}

impl JetIdeal {
    /// Repackage as a serializable equation system.
    pub fn to_system(&self) -> EquationSystem {
        EquationSystem {
            n: self.n,
            deformed: false,
            jet_degree: self.degree,
            equations: self.equations.clone(),
        }
    }
}

/// Default truncation degree for a cycle: `2·max(a_i) + 2`.
pub fn default_jet_degree(c: &Cycle) -> u64 {
    let max_a = c
        .entries()
        .iter()
        .filter_map(|e| e.finite())
        .max()
        .unwrap_or(2);
    (2 * max_a + 2) as u64
}

fn check_pair(n: u32, i: i64, j: i64) -> Result<()> {
    let nn = n as i64;
    if i < 0 || j > nn - 1 || i >= j {
        return Err(Error::RangeError(format!(
            "pair ({i},{j}) out of range for cycle length {n}"
        )));
    }
    let d = j - i;
    if d < 2 || d > nn - 2 {
        return Err(Error::RangeError(format!(
            "pair ({i},{j}) is cyclically adjacent for cycle length {n}"
        )));
    }
    Ok(())
}

fn valid_pairs(n: u32) -> Vec<(i64, i64)> {
    let nn = n as i64;
    let mut out = Vec::new();
    for i in 0..nn {
        for j in (i + 2)..=(i + nn - 2).min(nn - 1) {
            out.push((i, j));
        }
    }
    out
}

/// The pair equation `F[i,j]` with symbolic deformation parameters:
/// `X_iX_j − X_{i+1}(∏_{k=i+1}^{j−1} t_k)X_{j−1} − X_{j+1}(∏_{k=j+1}^{i−1} t_k)X_{i−1}`,
/// with both products read cyclically.
pub fn pair_equation(n: u32, i: i64, j: i64) -> Result<Poly> {
    check_pair(n, i, j)?;
    let xm = |a: i64| Monomial::var(crate::curve_eqs::x_var(a, n));
    let mut f = Poly::from_monomial(xm(i).mul(&xm(j)), rat(1));
    let first = xm(i + 1).mul(&t_product(i + 1, j - 1, n)).mul(&xm(j - 1));
    f.add_term(first, rat(-1));
    let second = xm(j + 1).mul(&t_product(j + 1, i - 1, n)).mul(&xm(i - 1));
    f.add_term(second, rat(-1));
    Ok(f)
}

/// The quadratic-family label whose canonical generator matches `F[i,j]`.
pub fn pair_label(n: u32, i: i64, j: i64) -> Result<QuadIndex> {
    check_pair(n, i, j)?;
    let d = j - i;
    QuadIndex::canonicalize(n, i + j, d - 2, d, d + 2)
}

/// The parameter value of one cycle position: `X_k^{a_k−2}` for a finite
/// entry (so 1 when `a_k = 2`) and 0 for an infinite one.
fn plain_t(c: &Cycle, k: usize) -> Poly {
    match c.entry(k) {
        Entry::Infinity => Poly::zero(),
        Entry::Finite(a) => Poly::from_monomial(
            Monomial::from_pairs([(VarId::X(k as u32), (a - 2) as u32)]),
            rat(1),
        ),
    }
}

/// The exact equations of a degenerate cusp: every pair equation with
/// `t_k = X_k^{a_k−2}` and `t_k = 0` at infinite entries.
pub fn degenerate_cusp_equations(c: &Cycle) -> Result<JetIdeal> {
    if c.classify() != CycleClass::Degenerate {
        return Err(Error::NotDegenerate(format!(
            "cycle {c} does not describe a degenerate cusp"
        )));
    }
    let n = c.len() as u32;
    if n <= 3 {
        return Err(Error::UnsupportedN(
            n,
            "pair equations need cycle length greater than 3".into(),
        ));
    }
    let mut equations = Vec::new();
    for (i, j) in valid_pairs(n) {
        let f = pair_equation(n, i, j)?.substitute(&|v| match v {
            VarId::Tv(k) => Some(plain_t(c, k as usize)),
            _ => None,
        });
        equations.push(LabeledPoly {
            label: Some(format!("F[{i},{j}]")),
            poly: f,
        });
    }
    Ok(JetIdeal {
        n,
        cycle: c.clone(),
        degree: None,
        equations,
        exact: true,
    })
}

fn weighted_degree(m: &Monomial) -> u64 {
    m.iter()
        .map(|(v, e)| match v {
            VarId::V(_, j) => (e as u64) * (j as u64),
            _ => e as u64,
        })
        .sum()
}

fn truncate_weighted(p: &Poly, limit: u64) -> (Poly, bool) {
    let mut cut = false;
    let kept = Poly::from_terms(p.terms().filter_map(|(m, c)| {
        if weighted_degree(m) <= limit {
            Some((m.clone(), c.clone()))
        } else {
            cut = true;
            None
        }
    }));
    (kept, cut)
}

/// The parameter polynomial of one position in the v-deformation:
/// `X_i^{a_i−2} + v_i^(1) X_i^{a_i−3} + … + v_i^(a_i−2)`.
fn deformed_t(c: &Cycle, i: usize) -> Poly {
    let a = c.entry(i).finite().expect("cusp entries are finite") as u32;
    let x = VarId::X(i as u32);
    let mut p = Poly::from_monomial(Monomial::from_pairs([(x, a - 2)]), rat(1));
    for j in 1..=(a.saturating_sub(2)) {
        p.add_term(
            Monomial::from_pairs([(VarId::V(i as u32, j), 1), (x, a - 2 - j)]),
            rat(1),
        );
    }
    p
}

fn substituted_jets(
    c: &Cycle,
    degree: u64,
    s: &SSolution,
    with_params: bool,
) -> Result<(Vec<LabeledPoly>, bool)> {
    let n = c.len() as u32;
    if s.n != n {
        return Err(Error::RangeError(format!(
            "series solution is for n = {}, cycle has length {n}",
            s.n
        )));
    }
    let w = c.excess() as u64;
    let needed = degree.div_ceil(w) as usize;
    if s.order < needed {
        return Err(Error::InsufficientSeriesOrder(format!(
            "degree-{degree} jet over a weight-{w} cycle needs series order {needed}, have {}",
            s.order
        )));
    }
    let t_poly: Vec<Poly> = (0..n as usize)
        .map(|i| {
            if with_params {
                deformed_t(c, i)
            } else {
                plain_t(c, i)
            }
        })
        .collect();
    // every term of t_poly[i] has weighted degree a_i − 2, so the product is
    // weighted-homogeneous of degree w and powers beyond degree/w can be
    // dropped wholesale
    let t_total = t_poly.iter().fold(Poly::one(), |acc, p| &acc * p);
    let series_constant = s
        .series
        .values()
        .all(|ps| (1..=s.order).all(|k| ps.coeff(k).is_zero()));
    let mut s_poly: BTreeMap<u32, Poly> = BTreeMap::new();
    for (m, ps) in &s.series {
        let mut acc = Poly::zero();
        let mut t_pow = Poly::one();
        for k in 0..=s.order {
            if (k as u64) * w > degree {
                break;
            }
            if k > 0 {
                t_pow = &t_pow * &t_total;
            }
            let ck = ps.coeff(k);
            if !ck.is_zero() {
                acc += &t_pow.scale(ck);
            }
        }
        s_poly.insert(*m, acc);
    }
    let mut cut_any = false;
    let mut equations = Vec::new();
    for (idx, f) in minimal_generators(n)? {
        let g = f.substitute(&|v| match v {
            VarId::Tv(i) => Some(t_poly[i as usize].clone()),
            VarId::S(m) => s_poly.get(&m).cloned(),
            _ => None,
        });
        let (jet, cut) = truncate_weighted(&g, degree);
        cut_any |= cut;
        equations.push(LabeledPoly {
            label: Some(idx.to_string()),
            poly: jet,
        });
    }
    Ok((equations, series_constant && !cut_any))
}

fn check_cusp(c: &Cycle) -> Result<u32> {
    if c.classify() != CycleClass::Cusp {
        return Err(Error::NotACusp(format!(
            "cycle {c} does not describe a cusp"
        )));
    }
    let n = c.len() as u32;
    if n < 5 {
        return Err(Error::UnsupportedN(
            n,
            "cusp equations cover cycle length at least 5; shorter cycles are reached by blow-down".into(),
        ));
    }
    Ok(n)
}

/// The degree-`degree` jet of the cusp equations of `c`: the minimal
/// generators with `t_i = X_i^{a_i−2}` and each coefficient series evaluated
/// at `T = ∏X_i^{a_i−2}`.
pub fn cusp_equations(c: &Cycle, degree: u64, s: &SSolution) -> Result<JetIdeal> {
    let n = check_cusp(c)?;
    let (equations, exact) = substituted_jets(c, degree, s, false)?;
    Ok(JetIdeal {
        n,
        cycle: c.clone(),
        degree: Some(degree),
        equations,
        exact,
    })
}

/// The multi-parameter deformation of the cusp equations: each `t_i` becomes
/// `X_i^{a_i−2} + v_i^(1) X_i^{a_i−3} + … + v_i^(a_i−2)`, truncated at
/// weighted degree `degree` (`X` counts 1, `v_i^(j)` counts `j`). At `v = 0`
/// this is exactly the cusp jet.
pub fn deformation_family(c: &Cycle, degree: u64, s: &SSolution) -> Result<EquationSystem> {
    let n = check_cusp(c)?;
    let (equations, _) = substituted_jets(c, degree, s, true)?;
    Ok(EquationSystem {
        n,
        deformed: true,
        jet_degree: Some(degree),
        equations,
    })
}

/// Kill `t_0`, rewrite every paired `t_{n−1}^d X_{n−1}^d` into
/// `(X_{n−1}^{a_{n−1}−1} + ε)^d`, and replace each interior `t_k` by
/// `X_k^{a_k−2} + ε` (just `ε` at infinite entries).
fn apply_smoothing(p: &Poly, c: &Cycle) -> Result<Poly> {
    let n = c.len();
    let last = (n - 1) as u32;
    let interior = |k: u32| -> Poly {
        let mut q = match c.entry(k as usize) {
            Entry::Infinity => Poly::zero(),
            Entry::Finite(a) => Poly::from_monomial(
                Monomial::from_pairs([(VarId::X(k), (a - 2) as u32)]),
                rat(1),
            ),
        };
        q += &Poly::var(VarId::Eps);
        q
    };
    let mut out = Poly::zero();
    for (m, coef) in p.terms() {
        if m.exp(VarId::Tv(0)) > 0 {
            continue;
        }
        let d = m.exp(VarId::Tv(last));
        let e = m.exp(VarId::X(last));
        if d > e {
            return Err(Error::RangeError(format!(
                "t{last} appears without a matching X{last} factor"
            )));
        }
        let mut base = m.restrict(|v| !matches!(v, VarId::Tv(_)));
        if d > 0 {
            base = base
                .divide(&Monomial::from_pairs([(VarId::X(last), d)]))
                .expect("paired occurrence");
        }
        let mut term = Poly::from_monomial(base, coef.clone());
        if d > 0 {
            let mut paired = match c.entry(n - 1) {
                Entry::Infinity => Poly::zero(),
                Entry::Finite(a) => Poly::from_monomial(
                    Monomial::from_pairs([(VarId::X(last), (a - 1) as u32)]),
                    rat(1),
                ),
            };
            paired += &Poly::var(VarId::Eps);
            term = &term * &paired.pow(d);
        }
        for (v, ev) in m.iter() {
            if let VarId::Tv(k) = v {
                if k == 0 || k == last {
                    continue;
                }
                term = &term * &interior(k).pow(ev);
            }
        }
        out += &term;
    }
    Ok(out)
}

fn check_smoothable(c: &Cycle) -> Result<u32> {
    if c.classify() != CycleClass::Degenerate {
        return Err(Error::NotDegenerate(format!(
            "cycle {c} does not describe a degenerate cusp"
        )));
    }
    let n = c.len() as u32;
    if n <= 3 {
        return Err(Error::UnsupportedN(
            n,
            "pair equations need cycle length greater than 3".into(),
        ));
    }
    if c.entry(0).finite().is_some() {
        return Err(Error::PositionConvention(
            "entry 0 must be infinite; rotate the cycle so an infinite entry comes first".into(),
        ));
    }
    Ok(n)
}

/// One-parameter smoothing of a degenerate cusp whose position-0 entry is
/// infinite: the pair equations under the substitution of
/// [`apply_smoothing`]; at `ε = 0` they are exactly the degenerate-cusp
/// equations.
pub fn smoothing_family(c: &Cycle) -> Result<EquationSystem> {
    let n = check_smoothable(c)?;
    let mut equations = Vec::new();
    for (i, j) in valid_pairs(n) {
        let f = apply_smoothing(&pair_equation(n, i, j)?, c)?;
        equations.push(LabeledPoly {
            label: Some(format!("F[{i},{j}]")),
            poly: f,
        });
    }
    Ok(EquationSystem {
        n,
        deformed: false,
        jet_degree: None,
        equations,
    })
}

/// One relation among the pair equations: `Σ multiplier·F[label]` vanishes
/// identically once `t_0 = 0`.
#[derive(Debug, Clone)]
pub struct SyzygyWitness {
    /// Family tag and the indices instantiating it.
    pub name: String,
    /// Pairs of (multiplier with symbolic `t`, pair-equation label).
    pub terms: Vec<(Poly, (i64, i64))>,
}

fn xp(v: i64, n: u32) -> Poly {
    Poly::var(crate::curve_eqs::x_var(v, n))
}

fn xt(v: i64, lo: i64, hi: i64, n: u32) -> Poly {
    Poly::from_monomial(
        Monomial::var(crate::curve_eqs::x_var(v, n)).mul(&t_product(lo, hi, n)),
        rat(1),
    )
}

/// Enumerate the four relation families on all index tuples whose labels are
/// pairwise non-adjacent. Families A and B are three-term relations among
/// interior labels; C and D involve the `F[0,·]` equations, and D carries
/// the correction term `−X_{j−1}T_{i+1}^{j−1}F[0,i+1]` required for the
/// combination to vanish.
pub fn degenerate_syzygies(n: u32) -> Result<Vec<SyzygyWitness>> {
    if n <= 3 {
        return Err(Error::UnsupportedN(
            n,
            "pair equations need cycle length greater than 3".into(),
        ));
    }
    let nn = n as i64;
    let mut out = Vec::new();
    // A: X_k F[i,j] − X_j F[i,k] + X_{i+1} T_{i+1}^{j−1} F[j−1,k]
    for i in 1..nn {
        for j in (i + 2)..nn {
            for k in (j + 1)..nn {
                out.push(SyzygyWitness {
                    name: format!("A({i},{j},{k})"),
                    terms: vec![
                        (xp(k, n), (i, j)),
                        (-&xp(j, n), (i, k)),
                        (xt(i + 1, i + 1, j - 1, n), (j - 1, k)),
                    ],
                });
            }
        }
    }
    // B: X_i F[j,k] − X_j F[i,k] + X_{k−1} T_{j+1}^{k−1} F[i,j+1]
    for i in 1..nn {
        for j in (i + 1)..nn {
            for k in (j + 2)..nn {
                out.push(SyzygyWitness {
                    name: format!("B({i},{j},{k})"),
                    terms: vec![
                        (xp(i, n), (j, k)),
                        (-&xp(j, n), (i, k)),
                        (xt(k - 1, j + 1, k - 1, n), (i, j + 1)),
                    ],
                });
            }
        }
    }
    // C: X_i F[0,j] − X_j F[0,i] − X_1 T_1^{i−1} F[i−1,j] + X_{n−1} T_{j+1}^{n−1} F[i,j+1]
    for i in 2..nn {
        for j in (i + 1)..=(nn - 2) {
            out.push(SyzygyWitness {
                name: format!("C({i},{j})"),
                terms: vec![
                    (xp(i, n), (0, j)),
                    (-&xp(j, n), (0, i)),
                    (-&xt(1, 1, i - 1, n), (i - 1, j)),
                    (xt(nn - 1, j + 1, nn - 1, n), (i, j + 1)),
                ],
            });
        }
    }
    // D: X_i F[0,j] − X_0 F[i,j] − X_{j−1} T_{i+1}^{j−1} F[0,i+1]
    //    + X_{n−1} T_{j+1}^{n−1} F[i,j+1] + X_{n−1} T_{i+1}^{n−1} F[i+1,j]
    for i in 1..nn {
        for j in (i + 3)..=(nn - 2) {
            out.push(SyzygyWitness {
                name: format!("D({i},{j})"),
                terms: vec![
                    (xp(i, n), (0, j)),
                    (-&xp(0, n), (i, j)),
                    (-&xt(j - 1, i + 1, j - 1, n), (0, i + 1)),
                    (xt(nn - 1, j + 1, nn - 1, n), (i, j + 1)),
                    (xt(nn - 1, i + 1, nn - 1, n), (i + 1, j)),
                ],
            });
        }
    }
    Ok(out)
}

/// The witness combination with symbolic parameters after `t_0 = 0`;
/// identically zero for every witness from [`degenerate_syzygies`].
pub fn syzygy_residual(n: u32, w: &SyzygyWitness) -> Result<Poly> {
    let mut acc = Poly::zero();
    for (mult, (i, j)) in &w.terms {
        acc += &(mult * &pair_equation(n, *i, *j)?);
    }
    Ok(acc.eval_partial(&|v| {
        if v == VarId::Tv(0) {
            Some(rat(0))
        } else {
            None
        }
    }))
}

/// The witness combination instantiated on a degenerate cycle through the
/// ε-smoothing substitution; zero again, because the substitution is a ring
/// map on the terms that survive `t_0 = 0`.
pub fn syzygy_residual_perturbed(c: &Cycle, w: &SyzygyWitness) -> Result<Poly> {
    let n = check_smoothable(c)?;
    let mut acc = Poly::zero();
    for (mult, (i, j)) in &w.terms {
        let pm = apply_smoothing(mult, c)?;
        let pf = apply_smoothing(&pair_equation(n, *i, *j)?, c)?;
        acc += &(&pm * &pf);
    }
    Ok(acc)
}

fn eliminant_for(a0: i64, a1: i64, a2: i64) -> Result<Poly> {
    let x = |k: u32, e: i64| Monomial::from_pairs([(VarId::X(k), e as u32)]);
    let mut f1 = Poly::from_monomial(x(1, 1).mul(&x(3, 1)), rat(1));
    f1.add_term(x(0, a0), rat(-1));
    f1.add_term(x(2, a2), rat(-1));
    let mut f2 = Poly::from_monomial(x(0, 1).mul(&x(2, 1)), rat(1));
    f2.add_term(x(1, a1), rat(-1));
    f2.add_term(x(3, 1), rat(-1));
    let elim: std::collections::BTreeSet<VarId> = [VarId::X(3)].into_iter().collect();
    let gb = buchberger(&[f1, f2], MonomialOrder::Elim(elim))?;
    let mut projected: Vec<&Poly> = gb
        .generators
        .iter()
        .filter(|g| !g.variables().contains(&VarId::X(3)))
        .collect();
    if projected.len() != 1 {
        return Err(Error::MismatchReport(format!(
            "elimination produced {} generators without X3",
            projected.len()
        )));
    }
    let g = projected.pop().expect("one generator");
    let xyz = x(0, 1).mul(&x(1, 1)).mul(&x(2, 1));
    let lead = g.coeff(&xyz);
    if lead.is_zero() {
        return Err(Error::MismatchReport(
            "eliminant lacks the X0*X1*X2 term".into(),
        ));
    }
    Ok(g.scale(&lead.recip()))
}

/// Blow down the first 1-entry of a reducible cycle. When the cycle has
/// length 4 with three finite entries at least 2 beside the 1, the
/// hypersurface equation of the blown-down cusp is also returned: the
/// eliminant of `X_3` from the two pair equations, normalized so the
/// `X_0X_1X_2` coefficient is +1.
pub fn blowdown_equations(c: &Cycle) -> Result<(Cycle, Option<Poly>)> {
    if c.classify() != CycleClass::Reducible {
        return Err(Error::NotBlowDownable(format!(
            "cycle {c} has no 1-entry to blow down"
        )));
    }
    let pos = c
        .entries()
        .iter()
        .position(|e| e.finite() == Some(1))
        .expect("reducible cycle contains a 1");
    let smaller = blowdown_step(c, pos)?;
    let mut eliminant = None;
    if c.len() == 4 {
        let rotated = c.rotate((pos + 1) % 4);
        let firsts: Vec<Option<i64>> = rotated.entries()[0..3].iter().map(|e| e.finite()).collect();
        if firsts.iter().all(|v| matches!(v, Some(a) if *a >= 2)) {
            let a: Vec<i64> = firsts.into_iter().map(|v| v.expect("finite")).collect();
            eliminant = Some(eliminant_for(a[0], a[1], a[2])?);
        }
    }
    Ok((smaller, eliminant))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::cycles_equal;
    use crate::deform::solve_s_series;
    use crate::groebner::ideal_equal;

    fn cyc(s: &str) -> Cycle {
        Cycle::parse(s).unwrap()
    }

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn pair_equation_shape() {
        assert_eq!(
            pair_equation(5, 0, 2).unwrap(),
            p("X0*X2-t1*X1^2-t3*t4*X3*X4")
        );
        assert_eq!(
            pair_equation(6, 0, 4).unwrap(),
            p("X0*X4-t1*t2*t3*X1*X3-t5*X5^2")
        );
        assert_eq!(
            pair_equation(4, 1, 3).unwrap(),
            p("X1*X3-t2*X2^2-t0*X0^2")
        );
        assert!(matches!(pair_equation(5, 0, 1), Err(Error::RangeError(_))));
        assert!(matches!(pair_equation(5, 0, 4), Err(Error::RangeError(_))));
        assert!(matches!(pair_equation(5, 3, 3), Err(Error::RangeError(_))));
    }

    #[test]
    fn degenerate_equations_and_counts() {
        let ideal = degenerate_cusp_equations(&cyc("2,3,inf,4,5")).unwrap();
        assert!(ideal.exact);
        assert_eq!(ideal.degree, None);
        assert_eq!(ideal.equations.len(), 5);
        let f02 = ideal
            .equations
            .iter()
            .find(|e| e.label.as_deref() == Some("F[0,2]"))
            .unwrap();
        assert_eq!(f02.poly, p("X0*X2-X1^3-X3^3*X4^4"));
        // the infinite entry at position 2 kills the product through it, but
        // the wrapping product through positions 4, 0 survives (t0 = X0^0 = 1)
        let f13 = ideal
            .equations
            .iter()
            .find(|e| e.label.as_deref() == Some("F[1,3]"))
            .unwrap();
        assert_eq!(f13.poly, p("X1*X3-X0*X4^4"));
        // a pair whose first product passes through position 2 keeps only
        // the wrapping side
        let f03 = ideal
            .equations
            .iter()
            .find(|e| e.label.as_deref() == Some("F[0,3]"))
            .unwrap();
        assert_eq!(f03.poly, p("X0*X3-X4^5"));
        for n in 4..=7u32 {
            let mut es = vec![Entry::Finite(3); n as usize];
            es[0] = Entry::Infinity;
            let ideal = degenerate_cusp_equations(&Cycle::new(es)).unwrap();
            assert_eq!(ideal.equations.len(), (n * (n - 3) / 2) as usize);
        }
        assert!(matches!(
            degenerate_cusp_equations(&cyc("3,3,3,3,3")),
            Err(Error::NotDegenerate(_))
        ));
        assert!(matches!(
            degenerate_cusp_equations(&cyc("inf")),
            Err(Error::UnsupportedN(1, _))
        ));
    }

    #[test]
    fn pair_labels_match_generators_up_to_sign() {
        // the free-parameter pair equation is the canonical generator at its
        // label, specialized to the base coefficient values, with a uniform
        // sign flip
        for n in 4..=7u32 {
            for (i, j) in valid_pairs(n) {
                let label = pair_label(n, i, j).unwrap();
                let gen = crate::deform::gen_deformed_f(&label)
                    .unwrap()
                    .eval_partial(&|v| match v {
                        VarId::S(m) => Some(crate::deform::s_base(n, m)),
                        _ => None,
                    });
                let f = pair_equation(n, i, j).unwrap();
                let ratio = gen.eq_up_to_scalar(&f).unwrap_or_else(|| {
                    panic!("n={n} pair ({i},{j}) label {label} differs from the pair equation")
                });
                assert_eq!(ratio, rat(-1), "n={n} pair ({i},{j}) label {label}");
            }
        }
    }

    #[test]
    fn cusp_jets_for_constant_series_are_exact() {
        let c = cyc("3,2,2,2,2");
        // excess 1, so a degree-8 jet formally needs series order 8 even
        // though the degree-5 coefficients are constants
        let s = solve_s_series(5, 8).unwrap();
        let ideal = cusp_equations(&c, default_jet_degree(&c), &s).unwrap();
        assert!(ideal.exact);
        assert_eq!(ideal.degree, Some(8));
        let want = [
            ("F[0;0,1,2]", "X0^3-X1*X4+X2*X3"),
            ("F[1;0,1,2]", "X1^2-X0*X2+X3*X4"),
            ("F[2;0,1,2]", "X2^2-X1*X3+X0^2*X4"),
            ("F[3;0,1,2]", "X3^2-X2*X4+X0^2*X1"),
            ("F[4;0,1,2]", "X4^2-X0*X3+X1*X2"),
        ];
        assert_eq!(ideal.equations.len(), want.len());
        for (label, text) in want {
            let eq = ideal
                .equations
                .iter()
                .find(|e| e.label.as_deref() == Some(label))
                .unwrap();
            assert_eq!(eq.poly, p(text), "{label}");
        }
    }

    #[test]
    fn cusp_jet_with_series_tail() {
        let c = cyc("3,3,3,3,3,3");
        let s = solve_s_series(6, 2).unwrap();
        let ideal = cusp_equations(&c, 8, &s).unwrap();
        assert!(!ideal.exact);
        let f0 = ideal
            .equations
            .iter()
            .find(|e| e.label.as_deref() == Some("F[0;0,1,2]"))
            .unwrap();
        assert_eq!(
            f0.poly,
            p("X0^3-X1*X5-1/2*X0*X1^2*X2*X3*X4*X5^2+X2^2*X3*X4^2")
        );
        // the quadratic part is the polygon fibre at the base coefficients
        for eq in &ideal.equations {
            let quad = Poly::from_terms(
                eq.poly
                    .terms()
                    .filter(|(m, _)| m.degree() == 2)
                    .map(|(m, c)| (m.clone(), c.clone())),
            );
            assert_eq!(quad.num_terms(), 1);
        }
        assert!(matches!(
            cusp_equations(&c, 8, &solve_s_series(6, 1).unwrap()),
            Err(Error::InsufficientSeriesOrder(_))
        ));
        assert!(matches!(
            cusp_equations(&cyc("2,2,2,2,2"), 8, &s),
            Err(Error::NotACusp(_))
        ));
        assert!(matches!(
            cusp_equations(&cyc("3,3,3,3"), 8, &solve_s_series(5, 2).unwrap()),
            Err(Error::UnsupportedN(4, _))
        ));
    }

    #[test]
    fn deformation_family_specializes_to_the_jet() {
        let c = cyc("3,3,2,2,2");
        let s = solve_s_series(5, 4).unwrap();
        let degree = default_jet_degree(&c);
        let family = deformation_family(&c, degree, &s).unwrap();
        let jet = cusp_equations(&c, degree, &s).unwrap();
        assert_eq!(family.equations.len(), jet.equations.len());
        let mut params = std::collections::BTreeSet::new();
        for (fam, cusp) in family.equations.iter().zip(&jet.equations) {
            assert_eq!(fam.label, cusp.label);
            let at_zero = fam.poly.eval_partial(&|v| match v {
                VarId::V(_, _) => Some(rat(0)),
                _ => None,
            });
            assert_eq!(at_zero, cusp.poly);
            for v in fam.poly.variables() {
                if matches!(v, VarId::V(_, _)) {
                    params.insert(v);
                }
            }
        }
        assert_eq!(params.len() as i64, c.excess());
    }

    #[test]
    fn smoothing_specializes_and_respects_position() {
        let c = cyc("inf,3,2,4,2");
        let family = smoothing_family(&c).unwrap();
        let exact = degenerate_cusp_equations(&c).unwrap();
        assert_eq!(family.equations.len(), exact.equations.len());
        for (fam, deg) in family.equations.iter().zip(&exact.equations) {
            assert_eq!(fam.label, deg.label);
            let at_zero = fam.poly.eval_partial(&|v| {
                if v == VarId::Eps {
                    Some(rat(0))
                } else {
                    None
                }
            });
            assert_eq!(at_zero, deg.poly, "{:?}", fam.label);
        }
        assert!(matches!(
            smoothing_family(&cyc("3,inf,2,2,2")),
            Err(Error::PositionConvention(_))
        ));
    }

    #[test]
    fn smoothing_substitution_example() {
        let c = cyc("inf,3,2,5");
        let family = smoothing_family(&c).unwrap();
        let f02 = &family.equations[0];
        assert_eq!(f02.label.as_deref(), Some("F[0,2]"));
        assert_eq!(f02.poly, p("X0*X2-X1^3-eps*X1^2-X3^5-eps*X3"));
        let f13 = &family.equations[1];
        assert_eq!(f13.label.as_deref(), Some("F[1,3]"));
        assert_eq!(f13.poly, p("X1*X3-X2^2-eps*X2^2"));
    }

    #[test]
    fn syzygies_vanish_symbolically() {
        let expected = [(4u32, 0usize), (5, 3), (6, 12), (7, 29)];
        for (n, count) in expected {
            let witnesses = degenerate_syzygies(n).unwrap();
            assert_eq!(witnesses.len(), count, "n={n}");
            for w in &witnesses {
                let r = syzygy_residual(n, w).unwrap();
                assert!(r.is_zero(), "n={n} witness {} leaves {r}", w.name);
            }
        }
    }

    #[test]
    fn displayed_four_term_variant_fails_without_correction() {
        // dropping the correction term from family D leaves a genuine residual
        let n = 6;
        let full = degenerate_syzygies(n)
            .unwrap()
            .into_iter()
            .find(|w| w.name == "D(1,4)")
            .unwrap();
        let truncated = SyzygyWitness {
            name: full.name.clone(),
            terms: full
                .terms
                .iter()
                .filter(|(_, label)| *label != (0, 2))
                .cloned()
                .collect(),
        };
        assert_eq!(truncated.terms.len(), 4);
        let r = syzygy_residual(n, &truncated).unwrap();
        assert!(!r.is_zero());
        assert!(syzygy_residual(n, &full).unwrap().is_zero());
    }

    #[test]
    fn syzygies_vanish_after_perturbation() {
        let entries = [2i64, 3, -1]; // -1 stands for an infinite entry
        for n in [4u32, 5] {
            let witnesses = degenerate_syzygies(n).unwrap();
            let m = (n - 1) as usize;
            let mut counters = vec![0usize; m];
            loop {
                let mut es = vec![Entry::Infinity];
                for &c in &counters {
                    es.push(match entries[c] {
                        -1 => Entry::Infinity,
                        v => Entry::Finite(v),
                    });
                }
                let c = Cycle::new(es);
                if c.classify() == CycleClass::Degenerate {
                    for w in &witnesses {
                        let r = syzygy_residual_perturbed(&c, w).unwrap();
                        assert!(r.is_zero(), "cycle {c} witness {}", w.name);
                    }
                }
                let mut pos = 0;
                loop {
                    if pos == m {
                        break;
                    }
                    counters[pos] += 1;
                    if counters[pos] < entries.len() {
                        break;
                    }
                    counters[pos] = 0;
                    pos += 1;
                }
                if pos == m {
                    break;
                }
            }
        }
    }

    #[test]
    fn blowdown_cubic_and_chain() {
        let (smaller, elim) = blowdown_equations(&cyc("4,3,5,1")).unwrap();
        assert!(cycles_equal(&smaller, &cyc("3,3,4"), false).is_some());
        assert_eq!(elim.unwrap(), p("X0*X1*X2-X1^4-X0^4-X2^5"));
        let (_, elim) = blowdown_equations(&cyc("2,2,2,1")).unwrap();
        assert_eq!(elim.unwrap(), p("X0*X1*X2-X1^3-X0^2-X2^2"));
        // rotated input: the 1 is moved to the last slot before eliminating
        let (smaller, elim) = blowdown_equations(&cyc("1,3,4,2")).unwrap();
        assert!(cycles_equal(&smaller, &cyc("2,4,1"), false).is_some());
        assert_eq!(elim.unwrap(), p("X0*X1*X2-X1^5-X0^3-X2^2"));
        // no eliminant once an entry is infinite or a second 1 appears
        let (smaller, elim) = blowdown_equations(&cyc("2,2,1,inf")).unwrap();
        assert!(elim.is_none());
        assert!(cycles_equal(&smaller, &cyc("2,1,inf"), false).is_some());
        let mut c = cyc("2,2,2,1,inf");
        let mut steps = 0;
        while c.classify() == CycleClass::Reducible {
            let (next, _) = blowdown_equations(&c).unwrap();
            c = next;
            steps += 1;
            assert!(steps <= 8);
        }
        assert!(cycles_equal(&c, &cyc("inf"), false).is_some());
        assert!(matches!(
            blowdown_equations(&cyc("3,3,3")),
            Err(Error::NotBlowDownable(_))
        ));
    }

    #[test]
    fn interior_elimination_matches_blown_down_cycle() {
        // a 1 at an interior position of a reducible cycle with an infinite
        // entry: eliminating its variable from the pair equations yields the
        // pair equations of the blown-down cycle
        let n = 5u32;
        let a = [0i64, 3, 1, 4, 3]; // position 0 infinite, the 1 at position 2
        let subst = |f: &Poly| -> Poly {
            let mut out = Poly::zero();
            for (m, coef) in f.terms() {
                if m.exp(VarId::Tv(0)) > 0 {
                    continue;
                }
                let d = m.exp(VarId::Tv(2));
                let e = m.exp(VarId::X(2));
                assert!(d <= e, "unpaired t2 in {m}");
                let mut base = m.restrict(|v| !matches!(v, VarId::Tv(_)));
                if d > 0 {
                    base = base
                        .divide(&Monomial::from_pairs([(VarId::X(2), d)]))
                        .unwrap();
                }
                let mut extra = Monomial::one();
                for (v, ev) in m.iter() {
                    if let VarId::Tv(k) = v {
                        if k == 2 || k == 0 {
                            continue;
                        }
                        extra = extra.mul(&Monomial::from_pairs([(
                            VarId::X(k),
                            ev * (a[k as usize] - 2) as u32,
                        )]));
                    }
                }
                out.add_term(base.mul(&extra), coef.clone());
            }
            out
        };
        let old: Vec<Poly> = valid_pairs(n)
            .into_iter()
            .map(|(i, j)| subst(&pair_equation(n, i, j).unwrap()))
            .collect();
        let elim: std::collections::BTreeSet<VarId> = [VarId::X(2)].into_iter().collect();
        let gb = buchberger(&old, MonomialOrder::Elim(elim)).unwrap();
        let projected: Vec<Poly> = gb
            .generators
            .iter()
            .filter(|g| !g.variables().contains(&VarId::X(2)))
            .cloned()
            .collect();
        let blown = degenerate_cusp_equations(&cyc("inf,2,3,3")).unwrap();
        let renamed: Vec<Poly> = blown
            .equations
            .iter()
            .map(|e| {
                e.poly.substitute(&|v| match v {
                    VarId::X(k) if k >= 2 => Some(Poly::var(VarId::X(k + 1))),
                    _ => None,
                })
            })
            .collect();
        assert_eq!(blown.equations.len(), 2);
        assert!(ideal_equal(&projected, &renamed, MonomialOrder::GrevLex).unwrap());
    }

    #[test]
    fn default_degree_formula() {
        assert_eq!(default_jet_degree(&cyc("3,4,2")), 10);
        assert_eq!(default_jet_degree(&cyc("2,2,2")), 6);
    }
}
