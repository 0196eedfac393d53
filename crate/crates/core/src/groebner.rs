//! Groebner bases over the rationals (Buchberger with the normal selection
//! strategy), ideal equality, and the two ideal-theoretic verifications:
//! the polygon fibre of the deformed family and the node/smooth dichotomy
//! at its coordinate vertices.

use crate::curve_eqs::{nonadjacent_pairs, s_relation_ideal};
use crate::deform::{expand_big_t, minimal_generators, s_base, solve_s_series};
use crate::exactalg::{linalg, rat, Monomial, MonomialOrder, Poly, Rational, VarId};
use crate::{Error, Result};
use num_traits::Zero;
use std::collections::BTreeSet;

/// Default bound on the number of critical pairs one basis computation may
/// process before giving up.
pub const DEFAULT_PAIR_LIMIT: usize = 50_000;

/// A computed Groebner basis.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    /// The reduced, monic generators, sorted by leading monomial.
    pub generators: Vec<Poly>,
    /// The monomial order the basis was computed under.
    pub ordering: MonomialOrder,
    /// Whether the basis has been autoreduced (always true for the output
    /// of the Buchberger routine here).
    pub reduced: bool,
}

impl GroebnerBasis {
    /// Fully reduce `p` modulo the basis.
    pub fn normal_form(&self, p: &Poly) -> Poly {
        normal_form(p, &self.generators, &self.ordering)
    }

    /// True if `p` reduces to zero.
    pub fn contains(&self, p: &Poly) -> bool {
        self.normal_form(p).is_zero()
    }
}

fn make_monic(p: &Poly, ordering: &MonomialOrder) -> Poly {
    match p.leading_term(ordering) {
        Some((_, lc)) => {
            let inv = lc.recip();
            p.scale(&inv)
        }
        None => Poly::zero(),
    }
}

/// The remainder of `p` under full multivariate division by `basis`: every
/// term of the result is divisible by no leading monomial of the basis.
/// Divisors are scanned in slice order, so the result is deterministic.
pub fn normal_form(p: &Poly, basis: &[Poly], ordering: &MonomialOrder) -> Poly {
    let leads: Vec<Option<(Monomial, Rational)>> = basis
        .iter()
        .map(|g| g.leading_term(ordering).map(|(m, c)| (m.clone(), c.clone())))
        .collect();
    let mut rem = p.clone();
    let mut out = Poly::zero();
    while !rem.is_zero() {
        let (lm, lc) = {
            let (m, c) = rem.leading_term(ordering).expect("nonzero");
            (m.clone(), c.clone())
        };
        let mut reduced = false;
        for (g, lead) in basis.iter().zip(&leads) {
            let Some((glm, glc)) = lead else { continue };
            if let Some(q) = lm.divide(glm) {
                rem -= &g.mul_term(&q, &(&lc / glc));
                reduced = true;
                break;
            }
        }
        if !reduced {
            rem.add_term(lm.clone(), -lc.clone());
            out.add_term(lm, lc);
        }
    }
    out
}

/// Buchberger's algorithm with the normal selection strategy (pairs by
/// ascending lcm degree, then by age) and the coprime-lead criterion, with
/// the default pair budget.
pub fn buchberger(gens: &[Poly], ordering: MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with_limit(gens, ordering, DEFAULT_PAIR_LIMIT)
}

/// Buchberger's algorithm with an explicit bound on processed pairs.
pub fn buchberger_with_limit(
    gens: &[Poly],
    ordering: MonomialOrder,
    limit: usize,
) -> Result<GroebnerBasis> {
    let mut basis: Vec<Poly> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let m = make_monic(g, &ordering);
        if !basis.contains(&m) {
            basis.push(m);
        }
    }
    let mut pairs: BTreeSet<(u64, usize, usize)> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pairs.insert((pair_degree(&basis[i], &basis[j], &ordering), i, j));
        }
    }
    let mut processed = 0usize;
    while let Some(&key) = pairs.iter().next() {
        pairs.remove(&key);
        processed += 1;
        if processed > limit {
            return Err(Error::ResourceLimit(format!(
                "basis computation exceeded {limit} critical pairs"
            )));
        }
        let (_, i, j) = key;
        let (lmi, _) = basis[i].leading_term(&ordering).expect("nonzero");
        let (lmj, _) = basis[j].leading_term(&ordering).expect("nonzero");
        if lmi.coprime(lmj) {
            continue;
        }
        let lcm = lmi.lcm(lmj);
        let qi = lcm.divide(lmi).expect("lcm divisible");
        let qj = lcm.divide(lmj).expect("lcm divisible");
        let spoly = &basis[i].mul_term(&qi, &rat(1)) - &basis[j].mul_term(&qj, &rat(1));
        let nf = normal_form(&spoly, &basis, &ordering);
        if nf.is_zero() {
            continue;
        }
        let nf = make_monic(&nf, &ordering);
        let k = basis.len();
        basis.push(nf);
        for i in 0..k {
            pairs.insert((pair_degree(&basis[i], &basis[k], &ordering), i, k));
        }
    }
    // minimalize: drop every generator whose leading monomial is divisible
    // by the leading monomial of another kept generator (on ties the first
    // one stays), so no generator can vanish during tail reduction
    let mut kept: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        let (lmi, _) = basis[i].leading_term(&ordering).expect("nonzero");
        if (0..basis.len()).any(|j| {
            j != i && kept[j] && {
                let (lmj, _) = basis[j].leading_term(&ordering).expect("nonzero");
                lmi.divisible_by(lmj)
            }
        }) {
            kept[i] = false;
        }
    }
    let mut basis: Vec<Poly> = basis
        .into_iter()
        .zip(kept)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();
    // tail-reduce each survivor against the rest; leading terms are stable,
    // so one sequential pass with replacement yields the reduced basis
    for i in 0..basis.len() {
        let others: Vec<Poly> = basis
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        basis[i] = normal_form(&basis[i], &others, &ordering);
    }
    basis.sort_by(|a, b| {
        let (ma, _) = a.leading_term(&ordering).expect("nonzero");
        let (mb, _) = b.leading_term(&ordering).expect("nonzero");
        ordering.cmp(ma, mb)
    });
    Ok(GroebnerBasis {
        generators: basis,
        ordering,
        reduced: true,
    })
}

fn pair_degree(a: &Poly, b: &Poly, ordering: &MonomialOrder) -> u64 {
    let (la, _) = a.leading_term(ordering).expect("nonzero");
    let (lb, _) = b.leading_term(ordering).expect("nonzero");
    la.lcm(lb).degree()
}

/// True if the two generating sets span the same ideal: each generator of
/// one reduces to zero modulo a basis of the other.
pub fn ideal_equal(a: &[Poly], b: &[Poly], ordering: MonomialOrder) -> Result<bool> {
    let ga = buchberger(a, ordering.clone())?;
    if !b.iter().all(|p| ga.contains(p)) {
        return Ok(false);
    }
    let gb = buchberger(b, ordering)?;
    Ok(a.iter().all(|p| gb.contains(p)))
}

/// Check that the minimal generators of the deformed family, specialized to
/// `t = 0` and the base parameter values, generate exactly the polygon
/// ideal of non-adjacent coordinate products.
pub fn check_ngon_ideal(n: u32) -> Result<bool> {
    if !(5..=8).contains(&n) {
        return Err(Error::UnsupportedN(n, "polygon fibre check covers 5..=8".into()));
    }
    let specialized: Vec<Poly> = minimal_generators(n)?
        .into_iter()
        .map(|(_, f)| {
            f.eval_partial(&|v| match v {
                VarId::Tv(_) => Some(rat(0)),
                VarId::S(m) => Some(s_base(n, m)),
                _ => None,
            })
        })
        .collect();
    ideal_equal(&specialized, &nonadjacent_pairs(n, 1), MonomialOrder::GrevLex)
}

/// What the fibre looks like at one coordinate vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexKind {
    /// The vertex does not lie on the fibre.
    OffFibre,
    /// The vertex is a smooth point of the fibre.
    Smooth,
    /// The vertex is an ordinary node.
    Node,
    /// Something worse than a node (should not occur in this family).
    Singular(String),
}

/// Per-vertex result of the dichotomy check.
#[derive(Debug, Clone)]
pub struct VertexReport {
    /// The coordinate vertex index.
    pub vertex: u32,
    /// Its classification on the fibre.
    pub kind: VertexKind,
}

/// Result of the node/smooth dichotomy check on one fibre.
#[derive(Debug, Clone)]
pub struct LemmaFourReport {
    /// Degree of the family.
    pub n: u32,
    /// The parameter values of the fibre.
    pub t_values: Vec<Rational>,
    /// One report per coordinate vertex.
    pub vertices: Vec<VertexReport>,
    /// True if every vertex is a node exactly when its parameter vanishes
    /// (and nothing worse than a node occurs).
    pub dichotomy_holds: bool,
}

fn classify_vertex(chart: &[Poly], vars: &[VarId]) -> VertexKind {
    if chart.iter().any(|f| !f.constant_term().is_zero()) {
        return VertexKind::OffFibre;
    }
    let dim = vars.len();
    let lin: Vec<Vec<Rational>> = chart
        .iter()
        .map(|f| {
            vars.iter()
                .map(|&v| f.coeff(&Monomial::var(v)))
                .collect()
        })
        .collect();
    let rank = linalg::rank(lin.clone());
    if rank == dim - 1 {
        return VertexKind::Smooth;
    }
    if rank != dim - 2 {
        return VertexKind::Singular(format!(
            "tangent space has dimension {}",
            dim - rank
        ));
    }
    // rank = dim - 2: eliminate the linear parts exactly, then restrict the
    // surviving quadratic parts to the two-dimensional kernel
    let kernel = linalg::nullspace(&lin);
    debug_assert_eq!(kernel.len(), 2);
    let mut rows: Vec<(Vec<Rational>, Poly)> =
        lin.into_iter().zip(chart.iter().cloned()).collect();
    let mut pivot_rows: Vec<usize> = Vec::new();
    for col in 0..dim {
        let Some(p) = (0..rows.len())
            .find(|r| !pivot_rows.contains(r) && !rows[*r].0[col].is_zero())
        else {
            continue;
        };
        let inv = rows[p].0[col].recip();
        rows[p].0 = rows[p].0.iter().map(|v| v * &inv).collect();
        rows[p].1 = rows[p].1.scale(&inv);
        for r in 0..rows.len() {
            if r != p && !rows[r].0[col].is_zero() {
                let factor = rows[r].0[col].clone();
                rows[r].0 = rows[r]
                    .0
                    .iter()
                    .zip(&rows[p].0)
                    .map(|(a, b)| a - &(&factor * b))
                    .collect();
                let scaled = rows[p].1.scale(&factor);
                rows[r].1 -= &scaled;
            }
        }
        pivot_rows.push(p);
    }
    // binary quadratic forms of the linear-free rows on the kernel
    let eval_at = |f: &Poly, dir: &[Rational]| -> Rational {
        let quad = Poly::from_terms(
            f.terms()
                .filter(|(m, _)| m.degree() == 2)
                .map(|(m, c)| (m.clone(), c.clone())),
        );
        quad.eval_partial(&|v| {
            vars.iter()
                .position(|&w| w == v)
                .map(|i| dir[i].clone())
        })
        .constant_term()
    };
    let k1 = &kernel[0];
    let k2 = &kernel[1];
    let k12: Vec<Rational> = k1.iter().zip(k2).map(|(a, b)| a + b).collect();
    let mut forms: Vec<(Rational, Rational, Rational)> = Vec::new();
    for (idx, (l, f)) in rows.iter().enumerate() {
        if pivot_rows.contains(&idx) || l.iter().any(|v| !v.is_zero()) {
            continue;
        }
        let a = eval_at(f, k1);
        let c = eval_at(f, k2);
        let b = &(&eval_at(f, &k12) - &a) - &c;
        if !a.is_zero() || !b.is_zero() || !c.is_zero() {
            forms.push((a, b, c));
        }
    }
    let Some(first) = forms.first().cloned() else {
        return VertexKind::Singular("no quadratic part survives on the tangent space".into());
    };
    for other in &forms[1..] {
        // proportionality: all 2x2 minors of the coefficient rows vanish
        let (a1, b1, c1) = &first;
        let (a2, b2, c2) = other;
        if !(a1 * b2 - a2 * b1).is_zero()
            || !(a1 * c2 - a2 * c1).is_zero()
            || !(b1 * c2 - b2 * c1).is_zero()
        {
            return VertexKind::Singular("independent quadratic cones".into());
        }
    }
    let (a, b, c) = first;
    let disc = &(&b * &b) - &(&rat(4) * &(&a * &c));
    if disc.is_zero() {
        VertexKind::Singular("degenerate quadratic cone".into())
    } else {
        VertexKind::Node
    }
}

/// Classify every coordinate vertex of the fibre at the given parameter
/// values and check the dichotomy: a vertex is a node exactly when its
/// parameter vanishes. The coefficient series are evaluated at the product
/// of the parameters, which is exact only when the relation ideal is empty
/// or the product is zero; otherwise the truncation is inconclusive.
pub fn check_lemma4(n: u32, t_values: &[Rational]) -> Result<LemmaFourReport> {
    if !(5..=7).contains(&n) {
        return Err(Error::UnsupportedN(n, "dichotomy check covers 5..=7".into()));
    }
    if t_values.len() != n as usize {
        return Err(Error::RangeError(format!(
            "expected {n} parameter values, got {}",
            t_values.len()
        )));
    }
    let relations_empty = s_relation_ideal(n, true)?.is_empty();
    let big_t: Rational = t_values.iter().fold(rat(1), |acc, v| &acc * v);
    if !relations_empty && !big_t.is_zero() {
        return Err(Error::InconclusiveAtTruncation(format!(
            "series for n = {n} cannot be evaluated exactly at parameter product {big_t}"
        )));
    }
    let sol = solve_s_series(n, 2)?;
    let s_vals: Vec<(u32, Rational)> = sol
        .series
        .iter()
        .map(|(m, ps)| (*m, ps.eval(&big_t)))
        .collect();
    let fibre: Vec<Poly> = minimal_generators(n)?
        .into_iter()
        .map(|(_, f)| {
            f.eval_partial(&|v| match v {
                VarId::Tv(i) => Some(t_values[i as usize].clone()),
                VarId::S(m) => s_vals.iter().find(|(mm, _)| *mm == m).map(|(_, v)| v.clone()),
                _ => None,
            })
        })
        .collect();
    let mut vertices = Vec::new();
    for alpha in 0..n {
        let chart: Vec<Poly> = fibre
            .iter()
            .map(|f| {
                f.eval_partial(&|v| match v {
                    VarId::X(a) if a == alpha => Some(rat(1)),
                    _ => None,
                })
            })
            .collect();
        let vars: Vec<VarId> = (0..n).filter(|&b| b != alpha).map(VarId::X).collect();
        let kind = classify_vertex(&chart, &vars);
        vertices.push(VertexReport {
            vertex: alpha,
            kind,
        });
    }
    let dichotomy_holds = vertices.iter().all(|r| {
        let t_zero = t_values[r.vertex as usize].is_zero();
        match &r.kind {
            VertexKind::Node => t_zero,
            VertexKind::Smooth | VertexKind::OffFibre => !t_zero,
            VertexKind::Singular(_) => false,
        }
    });
    Ok(LemmaFourReport {
        n,
        t_values: t_values.to_vec(),
        vertices,
        dichotomy_holds,
    })
}

/// Fully reduce `p` modulo the coefficient relation ideal of degree `n`
/// (deformed relations have the modulus expanded to the product of all
/// `t_i`), under grevlex.
pub fn reduce_mod_srelations(p: &Poly, n: u32, deformed: bool) -> Result<Poly> {
    let mut relations = s_relation_ideal(n, deformed)?;
    if deformed {
        relations = relations.iter().map(|r| expand_big_t(r, n)).collect();
    }
    let basis = buchberger(&relations, MonomialOrder::GrevLex)?;
    Ok(basis.normal_form(p))
}
