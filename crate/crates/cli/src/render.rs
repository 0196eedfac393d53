//! Output formats for equation systems.
//!
//! Four formats are supported: canonical `text` (one equation per line,
//! re-parseable), `json` (the serde form of [`EquationSystem`], lossless),
//! and ring-plus-ideal scripts for Singular and Macaulay2. The algebra
//! scripts declare exactly the variables that occur in the system.

use std::collections::BTreeSet;

use ellnc_core::curve_eqs::EquationSystem;
use ellnc_core::exactalg::{rat, MonomialOrder, Poly, PowerSeries, VarId};

/// Output format selector shared by all printing subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Canonical text, one equation per line.
    Text,
    /// JSON with metadata and exact coefficient strings.
    Json,
    /// A Singular script declaring a ring and an ideal.
    Singular,
    /// A Macaulay2 script declaring a ring and an ideal.
    Macaulay2,
}

/// Variable name for computer-algebra exports. `v{i}j{j}` replaces the
/// canonical `v{i}_{j}`: both Singular and Macaulay2 reserve the underscore
/// for indexing, so the plain form would not load.
fn algebra_name(v: VarId) -> String {
    match v {
        VarId::V(i, j) => format!("v{i}j{j}"),
        other => other.to_string(),
    }
}

/// Sort key for factors inside a printed term, mirroring the canonical text
/// form: family first (`s, t, T, tau, v, eps, X, Y`), then indices.
fn factor_key(v: &VarId) -> (u8, u32, u32) {
    match *v {
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

/// Render a polynomial in descending lexicographic term order with
/// export-safe variable names.
fn poly_algebra_text(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let zero = rat(0);
    let one = rat(1);
    let mut out = String::new();
    for (k, (m, c)) in p.terms_sorted(&MonomialOrder::Lex).into_iter().enumerate() {
        let neg = *c < zero;
        if neg {
            out.push('-');
        } else if k > 0 {
            out.push('+');
        }
        let mut mag = c.clone();
        if neg {
            mag = -mag;
        }
        let mut factors: Vec<(VarId, u32)> = m.iter().collect();
        factors.sort_by_key(|(v, _)| factor_key(v));
        if factors.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            if mag != one {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            for (j, (v, e)) in factors.iter().enumerate() {
                if j > 0 {
                    out.push('*');
                }
                out.push_str(&algebra_name(*v));
                if *e > 1 {
                    out.push('^');
                    out.push_str(&e.to_string());
                }
            }
        }
    }
    out
}

/// Variables occurring anywhere in the system, in canonical order.
fn occurring_vars(sys: &EquationSystem) -> Vec<VarId> {
    let mut set: BTreeSet<VarId> = BTreeSet::new();
    for eq in &sys.equations {
        set.extend(eq.poly.variables());
    }
    set.into_iter().collect()
}

/// Render `sys` in `format`. Comment lines, and the jet degree when the
/// system carries one, are emitted in the format's comment syntax; JSON
/// carries the same metadata as structured fields instead.
pub fn export_with_comments(sys: &EquationSystem, format: Format, comments: &[String]) -> String {
    let mut notes: Vec<String> = Vec::new();
    if let Some(d) = sys.jet_degree {
        notes.push(format!("jet degree {d}"));
    }
    notes.extend(comments.iter().cloned());
    match format {
        Format::Text => {
            let mut out = String::new();
            for note in &notes {
                out.push_str(&format!("# {note}\n"));
            }
            for eq in &sys.equations {
                out.push_str(&eq.poly.to_text());
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let mut out = serde_json::to_string_pretty(sys).expect("serializable system");
            out.push('\n');
            out
        }
        Format::Singular => {
            let mut out = String::new();
            for note in &notes {
                out.push_str(&format!("// {note}\n"));
            }
            let vars = occurring_vars(sys);
            let names: Vec<String> = if vars.is_empty() {
                vec!["x".to_string()]
            } else {
                vars.into_iter().map(algebra_name).collect()
            };
            out.push_str(&format!("ring r = 0, ({}), dp;\n", names.join(",")));
            if sys.equations.is_empty() {
                out.push_str("ideal I = 0;\n");
            } else {
                out.push_str("ideal I =\n");
                let last = sys.equations.len() - 1;
                for (k, eq) in sys.equations.iter().enumerate() {
                    let sep = if k == last { ";" } else { "," };
                    out.push_str(&format!("  {}{sep}\n", poly_algebra_text(&eq.poly)));
                }
            }
            out
        }
        Format::Macaulay2 => {
            let mut out = String::new();
            for note in &notes {
                out.push_str(&format!("-- {note}\n"));
            }
            let vars = occurring_vars(sys);
            let names: Vec<String> = vars.into_iter().map(algebra_name).collect();
            out.push_str(&format!("R = QQ[{}];\n", names.join(",")));
            if sys.equations.is_empty() {
                out.push_str("I = ideal(0_R);\n");
            } else {
                out.push_str("I = ideal(\n");
                let last = sys.equations.len() - 1;
                for (k, eq) in sys.equations.iter().enumerate() {
                    let sep = if k == last { ");" } else { "," };
                    out.push_str(&format!("  {}{sep}\n", poly_algebra_text(&eq.poly)));
                }
            }
            out
        }
    }
}

/// Render `sys` in `format` with no extra comments.
pub fn export(sys: &EquationSystem, format: Format) -> String {
    export_with_comments(sys, format, &[])
}

/// Render a power series in `T` with ascending powers and an explicit
/// order-of-truncation tail.
pub fn series_text(s: &PowerSeries) -> String {
    let zero = rat(0);
    let one = rat(1);
    let mut out = String::new();
    let mut first = true;
    for k in 0..=s.order() {
        let c = s.coeff(k);
        if *c == zero {
            continue;
        }
        let neg = *c < zero;
        if neg {
            out.push('-');
        } else if !first {
            out.push('+');
        }
        let mut mag = c.clone();
        if neg {
            mag = -mag;
        }
        if k == 0 {
            out.push_str(&mag.to_string());
        } else {
            if mag != one {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            if k == 1 {
                out.push('T');
            } else {
                out.push_str(&format!("T^{k}"));
            }
        }
        first = false;
    }
    if first {
        out.push('0');
    }
    out.push_str(&format!("+O(T^{})", s.order() + 1));
    out
}
