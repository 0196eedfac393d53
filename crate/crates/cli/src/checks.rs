//! Verification suites behind `ellnc verify`.
//!
//! Each function returns the buffered report text plus an overall pass
//! flag; the caller maps the flag onto the process exit code. The reports
//! are deterministic: all enumeration is over sorted ranges.

use std::path::Path;

use ellnc_core::curve_eqs::{gen_all_curve_equations, s_relation_ideal};
use ellnc_core::deform::{
    combine_labelled, combine_ordered, expand_big_t, syzygy_lemma1, syzygy_lemma2,
    syzygy_lemma3_lift, verify_coordinate_change, Pivot,
};
use ellnc_core::exactalg::{MonomialOrder, Poly, Rational};
use ellnc_core::groebner::{buchberger_with_limit, check_lemma4, check_ngon_ideal};
use ellnc_core::{Error, Result};

/// Compare every bundled fixture against the generated systems.
pub fn verify_fixtures(dir: Option<&Path>, exact: bool) -> Result<(String, bool)> {
    let reports = crate::fixtures::check_all(dir, exact)?;
    let mut out = String::new();
    let mut passed = 0usize;
    for r in &reports {
        out.push_str(&format!(
            "fixture {}: {}\n",
            r.name,
            if r.passed { "PASS" } else { "FAIL" }
        ));
        for d in &r.detail {
            out.push_str(&format!("  {d}\n"));
        }
        if r.passed {
            passed += 1;
        }
    }
    let all = passed == reports.len();
    out.push_str(&format!(
        "verify fixtures: {passed}/{} PASS\n",
        reports.len()
    ));
    Ok((out, all))
}

/// Check that specializing the curve family at the distinguished parameter
/// point yields exactly the n-gon ideal.
pub fn verify_ngon(n: u32) -> Result<(String, bool)> {
    let ok = check_ngon_ideal(n)?;
    let out = format!(
        "specialized curve ideal equals the {n}-gon ideal: {}\n",
        if ok { "PASS" } else { "FAIL" }
    );
    Ok((out, ok))
}

/// All `k`-element ascending tuples from `pool`.
fn combos(pool: &[i64], k: usize) -> Vec<Vec<i64>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if pool.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for i in 0..=pool.len() - k {
        for mut rest in combos(&pool[i + 1..], k - 1) {
            let mut t = Vec::with_capacity(k);
            t.push(pool[i]);
            t.append(&mut rest);
            out.push(t);
        }
    }
    out
}

/// Doubled-index values of one parity: `parity, parity+2, ..., <= hi`.
fn doubled_pool(parity: i64, hi: i64) -> Vec<i64> {
    (parity..=hi).step_by(2).collect()
}

/// The relation family a combination instance belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SyzygyFamily {
    /// Pivot elimination over an index quadruple; zero modulo the
    /// parameter relations.
    PivotElimination,
    /// Ordered quintuple combination; identically zero in the ring.
    OrderedQuintuple,
    /// Index-triple lift; zero modulo the parameter relations.
    TripleLift,
}

/// One instantiated combination from the three relation families, with the
/// product `T = t_0 ... t_{n-1}` already expanded.
pub struct SyzygyCombination {
    /// Family of the instance.
    pub family: SyzygyFamily,
    /// Instance label used in reports.
    pub label: String,
    /// The combined polynomial.
    pub comb: Poly,
}

/// Enumerate every combination instance checked by [`verify_syzygies`]:
/// all pivot eliminations (four pivots per level and quadruple), all
/// ordered quintuples, and all index-triple lifts for the given degree.
pub fn syzygy_combinations(n: u32) -> Result<Vec<SyzygyCombination>> {
    if n < 5 {
        return Err(Error::UnsupportedN(
            n,
            "syzygy verification needs n >= 5".to_string(),
        ));
    }
    let ni = n as i64;
    let parities: &[i64] = if n % 2 == 0 { &[0, 1] } else { &[0] };
    let mut out = Vec::new();

    // Pivot eliminations over quadruples: the combination collapses onto a
    // single coordinate pair whose coefficient lies in the relation ideal.
    for &par in parities {
        let quads = combos(&doubled_pool(par, ni), 4);
        let levels: Vec<i64> = if n % 2 == 0 {
            doubled_pool(par, ni - 1)
        } else {
            doubled_pool(0, 2 * ni - 2)
        };
        for quad in &quads {
            let q = [quad[0], quad[1], quad[2], quad[3]];
            for &h2 in &levels {
                for pivot in [Pivot::I, Pivot::J, Pivot::K, Pivot::L] {
                    let parts = syzygy_lemma1(n, h2, pivot, q)?;
                    let comb = combine_labelled(&parts)?;
                    out.push(SyzygyCombination {
                        family: SyzygyFamily::PivotElimination,
                        label: format!(
                            "pivot elimination h2={h2} quad={q:?} pivot={pivot:?}"
                        ),
                        comb: expand_big_t(&comb, n),
                    });
                }
            }
        }
    }

    // Ordered quintuples: the alternating combination is zero in the ring.
    for &par in parities {
        for quint in combos(&doubled_pool(par, 2 * ni - 1), 5) {
            let q = [quint[0], quint[1], quint[2], quint[3], quint[4]];
            let parts = syzygy_lemma2(n, q)?;
            let comb = combine_ordered(n, &parts)?;
            out.push(SyzygyCombination {
                family: SyzygyFamily::OrderedQuintuple,
                label: format!("quintuple {q:?}"),
                comb: expand_big_t(&comb, n),
            });
        }
    }

    // Index-triple lifts: zero modulo the relation ideal.
    for alpha in 0..ni {
        for beta in alpha + 1..ni {
            for gamma in beta + 2..=ni {
                let idx5 = [alpha, beta, gamma - 1, gamma, gamma + 1];
                let distinct: std::collections::BTreeSet<i64> =
                    idx5.iter().map(|v| v.rem_euclid(ni)).collect();
                if distinct.len() != 5 {
                    continue;
                }
                let parts = syzygy_lemma3_lift(n, alpha, beta, gamma)?;
                let comb = combine_ordered(n, &parts)?;
                out.push(SyzygyCombination {
                    family: SyzygyFamily::TripleLift,
                    label: format!("triple lift ({alpha},{beta},{gamma})"),
                    comb: expand_big_t(&comb, n),
                });
            }
        }
    }
    Ok(out)
}

/// Check the three syzygy families of the deformed family: pivot
/// eliminations over index quadruples reduce to zero modulo the parameter
/// relations, ordered quintuple combinations vanish identically, and
/// index-triple lifts reduce to zero as well.
pub fn verify_syzygies(n: u32, limit: usize) -> Result<(String, bool)> {
    let instances = syzygy_combinations(n)?;
    let relations = s_relation_ideal(n, true)?;
    let expanded: Vec<Poly> = relations.iter().map(|p| expand_big_t(p, n)).collect();
    let gb = buchberger_with_limit(&expanded, MonomialOrder::GrevLex, limit)?;

    let mut out = String::new();
    let mut all = true;
    let mut failures: Vec<String> = Vec::new();

    for (family, what, fail_suffix) in [
        (
            SyzygyFamily::PivotElimination,
            "pivot eliminations (quadruples)",
            "nonzero residue",
        ),
        (
            SyzygyFamily::OrderedQuintuple,
            "ordered quintuples",
            "combination is nonzero",
        ),
        (SyzygyFamily::TripleLift, "index-triple lifts", "nonzero residue"),
    ] {
        let mut total = 0usize;
        let mut ok = 0usize;
        for c in instances.iter().filter(|c| c.family == family) {
            total += 1;
            let zero = match family {
                SyzygyFamily::OrderedQuintuple => c.comb.is_zero(),
                _ => gb.normal_form(&c.comb).is_zero(),
            };
            if zero {
                ok += 1;
            } else {
                all = false;
                failures.push(format!("{}: {fail_suffix}", c.label));
            }
        }
        out.push_str(&summary_line(what, ok, total));
    }

    for f in &failures {
        out.push_str(&format!("  {f}\n"));
    }
    out.push_str(&format!(
        "verify syzygies n={n}: {}\n",
        if all { "PASS" } else { "FAIL" }
    ));
    Ok((out, all))
}

fn summary_line(what: &str, ok: usize, total: usize) -> String {
    if total == 0 {
        format!("{what}: none in range (vacuous)\n")
    } else {
        format!("{what}: {ok}/{total} reduce to zero\n")
    }
}

/// Check the node/smooth vertex dichotomy on the fibre at the given
/// parameter values.
pub fn verify_lemma4(n: u32, t_values: &[Rational]) -> Result<(String, bool)> {
    let report = check_lemma4(n, t_values)?;
    let mut out = String::new();
    for v in &report.vertices {
        out.push_str(&format!("vertex {}: {:?}\n", v.vertex, v.kind));
    }
    out.push_str(&format!(
        "node exactly where the parameter vanishes, smooth elsewhere: {}\n",
        if report.dichotomy_holds { "PASS" } else { "FAIL" }
    ));
    Ok((out, report.dichotomy_holds))
}

/// Check that every curve equation maps to a monomial multiple of itself
/// under the cusp coordinate change, and report the monomial.
pub fn verify_coordchange(n: u32) -> Result<(String, bool)> {
    let eqs = gen_all_curve_equations(n)?;
    let mut out = String::new();
    let mut all = true;
    let mut ok = 0usize;
    for (idx, _) in &eqs {
        match verify_coordinate_change(idx) {
            Ok(m) => {
                ok += 1;
                out.push_str(&format!("{idx}: multiplier {m}\n"));
            }
            Err(Error::MismatchReport(msg)) => {
                all = false;
                out.push_str(&format!("{idx}: FAIL {msg}\n"));
            }
            Err(e) => return Err(e),
        }
    }
    out.push_str(&format!(
        "coordinate change n={n}: {ok}/{} labels are monomial multiples: {}\n",
        eqs.len(),
        if all { "PASS" } else { "FAIL" }
    ));
    Ok((out, all))
}
