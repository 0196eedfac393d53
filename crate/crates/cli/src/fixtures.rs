//! Recorded equation fixtures and the comparison harness.
//!
//! Each fixture is a text file, one equation per line, with `#` comment
//! lines naming the content. The bundled copies are compiled in; a
//! directory passed via `--fixtures` overrides them file by file. Every
//! fixture line must match a generated equation up to a unit scalar (and,
//! where an equation was printed after dividing out a common monomial
//! factor, up to monomial content); the scalar and contents are reported.

use std::path::Path;

use ellnc_core::curve_eqs::{gen_all_curve_equations, s_normalize, s_relation_ideal};
use ellnc_core::deform::gen_all_deformed_equations;
use ellnc_core::exactalg::{rat, Monomial, MonomialOrder, Poly, Rational, VarId};
use ellnc_core::groebner::ideal_equal;
use ellnc_core::{Error, Result};

/// A bundled fixture: name, the degree `n` it belongs to, and its text.
pub struct Fixture {
    /// Base name; the file is `<name>.txt`.
    pub name: &'static str,
    /// Degree of the family, used to normalize out-of-range `s` indices.
    pub n: u32,
    text: &'static str,
}

/// The bundled fixtures, in canonical report order.
pub const FIXTURES: &[Fixture] = &[
    Fixture { name: "curve_n4", n: 4, text: include_str!("../fixtures/curve_n4.txt") },
    Fixture { name: "curve_n6", n: 6, text: include_str!("../fixtures/curve_n6.txt") },
    Fixture { name: "curve_n7", n: 7, text: include_str!("../fixtures/curve_n7.txt") },
    Fixture { name: "curve_n8", n: 8, text: include_str!("../fixtures/curve_n8.txt") },
    Fixture { name: "curve_n9", n: 9, text: include_str!("../fixtures/curve_n9.txt") },
    Fixture { name: "srel_n6", n: 6, text: include_str!("../fixtures/srel_n6.txt") },
    Fixture { name: "srel_n7", n: 7, text: include_str!("../fixtures/srel_n7.txt") },
    Fixture { name: "srel_n8_minors", n: 8, text: include_str!("../fixtures/srel_n8_minors.txt") },
    Fixture { name: "srel_n9", n: 9, text: include_str!("../fixtures/srel_n9.txt") },
    Fixture { name: "srel_n11", n: 11, text: include_str!("../fixtures/srel_n11.txt") },
    Fixture { name: "gon_deform_n6", n: 6, text: include_str!("../fixtures/gon_deform_n6.txt") },
    Fixture { name: "srel_n9_deformed", n: 9, text: include_str!("../fixtures/srel_n9_deformed.txt") },
];

/// Read a fixture's text, preferring `dir/<name>.txt` when a directory is
/// given.
pub fn fixture_text(f: &Fixture, dir: Option<&Path>) -> Result<String> {
    match dir {
        Some(d) => {
            let path = d.join(format!("{}.txt", f.name));
            std::fs::read_to_string(&path)
                .map_err(|e| Error::ParseError(format!("cannot read {}: {e}", path.display())))
        }
        None => Ok(f.text.to_string()),
    }
}

/// Parse a fixture body: one polynomial per non-comment line.
pub fn parse_fixture(text: &str) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let p = Poly::parse(line)
            .map_err(|e| Error::ParseError(format!("fixture line {}: {e}", k + 1)))?;
        out.push(p);
    }
    Ok(out)
}

/// Rewrite `s_m` with `m > n/2` into its canonical representative
/// (`s_{m-n}` carries a sign), so fixture text written with high indices
/// compares against the generated normal form.
fn normalize_s(p: &Poly, n: u32) -> Poly {
    p.substitute(&|v| match v {
        VarId::S(m) if m > n / 2 => Some(s_normalize(m as i64, n).poly()),
        _ => None,
    })
}

/// The generated system a fixture is checked against, as labelled
/// polynomials.
fn generated_system(name: &str) -> Result<Vec<(String, Poly)>> {
    let labelled = |eqs: Vec<(ellnc_core::curve_eqs::QuadIndex, Poly)>| {
        eqs.into_iter()
            .map(|(idx, p)| (idx.to_string(), p))
            .collect::<Vec<_>>()
    };
    let numbered = |polys: Vec<Poly>| {
        polys
            .into_iter()
            .enumerate()
            .map(|(k, p)| (format!("relation {}", k + 1), p))
            .collect::<Vec<_>>()
    };
    match name {
        "curve_n4" => Ok(labelled(gen_all_curve_equations(4)?)),
        "curve_n6" => Ok(labelled(gen_all_curve_equations(6)?)),
        "curve_n7" => Ok(labelled(gen_all_curve_equations(7)?)),
        "curve_n8" => Ok(labelled(gen_all_curve_equations(8)?)),
        "curve_n9" => Ok(labelled(gen_all_curve_equations(9)?)),
        "srel_n6" => Ok(numbered(s_relation_ideal(6, false)?)),
        "srel_n7" => Ok(numbered(s_relation_ideal(7, false)?)),
        "srel_n8_minors" => Ok(numbered(s_relation_ideal(8, false)?)),
        "srel_n9" => Ok(numbered(s_relation_ideal(9, false)?)),
        "srel_n11" => Ok(numbered(s_relation_ideal(11, false)?)),
        "gon_deform_n6" => {
            let mut out = labelled(gen_all_deformed_equations(6)?);
            out.extend(numbered(s_relation_ideal(6, true)?));
            Ok(out)
        }
        "srel_n9_deformed" => Ok(numbered(s_relation_ideal(9, true)?)),
        other => Err(Error::ParseError(format!("unknown fixture `{other}`"))),
    }
}

/// Match `f` against `g` up to a scalar, allowing both sides to differ by
/// their monomial content (an equation printed after dividing out a common
/// factor still identifies the same generator). Returns the scalar `q` with
/// `primitive(f) = q * primitive(g)` and the two contents.
pub fn match_up_to_content(f: &Poly, g: &Poly) -> Option<(Rational, Monomial, Monomial)> {
    if f.num_terms() <= 1 || g.num_terms() <= 1 {
        return f
            .eq_up_to_scalar(g)
            .map(|q| (q, Monomial::one(), Monomial::one()));
    }
    let (cf, cg) = (f.monomial_content(), g.monomial_content());
    let one = rat(1);
    let pf = f.div_term(&cf, &one).expect("content divides");
    let pg = g.div_term(&cg, &one).expect("content divides");
    pf.eq_up_to_scalar(&pg).map(|q| (q, cf, cg))
}

/// Outcome of checking one fixture.
pub struct FixtureReport {
    /// Fixture name.
    pub name: String,
    /// One detail line per compared equation.
    pub detail: Vec<String>,
    /// The scalar of each successful match, in comparison order.
    pub scalars: Vec<Rational>,
    /// Whether every comparison succeeded.
    pub passed: bool,
}

fn describe_match(label: &str, q: &Rational, cf: &Monomial, cg: &Monomial) -> String {
    let mut s = format!("matches {label} with scalar {q}");
    if !cf.is_one() || !cg.is_one() {
        s.push_str(&format!(" (content {cf} vs {cg})"));
    }
    s
}

/// Compare the polynomials of one fixture against the generated system.
///
/// In exact mode a fixture line must equal a generated equation literally
/// (after `s`-index normalization); otherwise matching is up to a unit
/// scalar and monomial content, both reported.
pub fn check_fixture(f: &Fixture, dir: Option<&Path>, exact: bool) -> Result<FixtureReport> {
    let text = fixture_text(f, dir)?;
    let raw = parse_fixture(&text)?;
    let fixture_polys: Vec<Poly> = raw.iter().map(|p| normalize_s(p, f.n)).collect();
    let gens = generated_system(f.name)?;

    let mut detail = Vec::new();
    let mut scalars = Vec::new();
    let mut passed = true;

    // The determinantal fixture records matrix rows; the claims under test
    // are its three 2x2 minors.
    let (targets, target_names): (Vec<Poly>, Vec<String>) = if f.name == "srel_n8_minors" {
        if fixture_polys.len() != 6 {
            return Err(Error::ParseError(format!(
                "srel_n8_minors must have 6 entries (two rows of 3), found {}",
                fixture_polys.len()
            )));
        }
        let (a, b) = fixture_polys.split_at(3);
        let mut minors = Vec::new();
        let mut names = Vec::new();
        for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
            minors.push(&(&a[i] * &b[j]) - &(&a[j] * &b[i]));
            names.push(format!("minor ({},{})", i + 1, j + 1));
        }
        (minors, names)
    } else {
        let names = (1..=fixture_polys.len())
            .map(|k| format!("line {k}"))
            .collect();
        (fixture_polys, names)
    };

    for (t, tname) in targets.iter().zip(&target_names) {
        let hit = gens.iter().find_map(|(label, g)| {
            if exact {
                if t == g {
                    Some((format!("equals {label} exactly"), rat(1)))
                } else {
                    None
                }
            } else {
                match_up_to_content(t, g)
                    .map(|(q, cf, cg)| (describe_match(label, &q, &cf, &cg), q))
            }
        });
        match hit {
            Some((msg, q)) => {
                detail.push(format!("{tname}: PASS {msg}"));
                scalars.push(q);
            }
            None => {
                passed = false;
                detail.push(format!("{tname}: FAIL no generated equation matches {t}"));
            }
        }
    }

    // The minors cut out the same curve as the generated relations; record
    // the ideal-level comparison alongside the per-minor matches.
    if f.name == "srel_n8_minors" {
        let gen_polys: Vec<Poly> = gens.iter().map(|(_, g)| g.clone()).collect();
        match ideal_equal(&targets, &gen_polys, MonomialOrder::GrevLex) {
            Ok(true) => detail.push("ideal of minors equals the relation ideal: PASS".to_string()),
            Ok(false) => {
                passed = false;
                detail.push("ideal of minors equals the relation ideal: FAIL".to_string());
            }
            Err(e) => return Err(e),
        }
    }

    Ok(FixtureReport {
        name: f.name.to_string(),
        detail,
        scalars,
        passed,
    })
}

/// Check every fixture; reports come back in registry order. Independent
/// fixtures are checked on separate threads and the output is buffered so
/// the report is deterministic.
pub fn check_all(dir: Option<&Path>, exact: bool) -> Result<Vec<FixtureReport>> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = FIXTURES
            .iter()
            .map(|f| scope.spawn(move || check_fixture(f, dir, exact)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("fixture check panicked"))
            .collect()
    })
}
