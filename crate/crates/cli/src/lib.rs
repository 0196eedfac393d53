//! `ellnc`: exact equation families for elliptic normal curves, n-gon
//! deformations, and cusp singularities.
//!
//! The binary front end prints generated systems in several formats and
//! runs the verification suites. All computation is exact (arbitrary-
//! precision rationals); identical invocations produce byte-identical
//! output. Exit codes: 0 success, 1 a verification reported a mismatch,
//! 2 invalid input, 3 resource limit exceeded.

pub mod checks;
pub mod fixtures;
pub mod render;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use ellnc_core::curve_eqs::{
    gen_all_curve_equations, s_relation_ideal, EquationSystem, LabeledPoly,
};
use ellnc_core::cusp::{
    blowdown_equations, cusp_equations, default_jet_degree, degenerate_cusp_equations,
    smoothing_family,
};
use ellnc_core::cycles::{Cycle, CycleClass};
use ellnc_core::deform::{minimal_generators, solve_s_series};
use ellnc_core::exactalg::{Rational, VarId};
use ellnc_core::groebner::DEFAULT_PAIR_LIMIT;
use ellnc_core::{Error, Result};

use render::{export, export_with_comments, series_text, Format};

/// Command-line interface definition.
#[derive(Parser)]
#[command(
    name = "ellnc",
    version,
    about = "Exact equation families for elliptic normal curves, n-gon deformations, and cusp singularities"
)]
pub struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the quadratic equations of the degree-n curve family
    #[command(name = "gen")]
    Gen {
        /// Degree of the family (number of coordinates), n >= 4
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the relations among the coefficients s_m
    #[command(name = "srel")]
    Srel {
        /// Degree of the family
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Solve the coefficient series s_m(T) of the deformed family
    #[command(name = "solve-s")]
    SolveS {
        /// Degree of the family, n >= 5
        #[arg(long)]
        n: u32,
        /// Truncation order of the series
        #[arg(long, default_value_t = 12)]
        order: usize,
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Print the deformed n-gon family: minimal generators and coefficient relations
    #[command(name = "gon-deform")]
    GonDeform {
        /// Degree of the family, n >= 5
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print a truncated jet of the cusp-singularity equations of a cycle
    #[command(name = "cusp")]
    Cusp {
        /// Cycle entries, comma-separated, `inf` for an infinite entry
        #[arg(long)]
        cycle: String,
        /// Jet truncation degree (default: 2*max(a_i) + 2)
        #[arg(long)]
        degree: Option<u64>,
        /// Series order for the coefficients (default: ceil(degree / sum(a_i - 2)))
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the exact equations of a degenerate cusp
    #[command(name = "degenerate")]
    Degenerate {
        /// Cycle entries, comma-separated, `inf` for an infinite entry
        #[arg(long)]
        cycle: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Blow down the first (-1)-entry of a cycle; prints the new cycle and,
    /// for length-4 cycles with finite entries, the resulting hypersurface
    #[command(name = "blowdown")]
    Blowdown {
        /// Cycle entries, comma-separated, `inf` for an infinite entry
        #[arg(long)]
        cycle: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the one-parameter smoothing family of a degenerate cusp
    #[command(name = "smooth")]
    Smooth {
        /// Cycle entries, comma-separated, `inf` for an infinite entry
        /// (the infinite entry must sit at position 0)
        #[arg(long)]
        cycle: String,
        /// Keep the smoothing parameter symbolic (bare flag) or substitute
        /// the given rational value
        #[arg(long, num_args = 0..=1)]
        eps: Option<Option<String>>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the dual of a cusp cycle
    #[command(name = "dual")]
    Dual {
        /// Cycle entries, comma-separated
        #[arg(long)]
        cycle: String,
    },
    /// Classify a cycle
    #[command(name = "classify")]
    Classify {
        /// Cycle entries, comma-separated, `inf` for an infinite entry
        #[arg(long)]
        cycle: String,
    },
    /// Run a verification suite
    #[command(name = "verify")]
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// List the bundled fixture systems
    #[command(name = "fixtures")]
    Fixtures {
        /// Directory overriding the bundled fixture files
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Compare generated systems against the recorded fixtures
    #[command(name = "fixtures")]
    Fixtures {
        /// Directory overriding the bundled fixture files
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Require literal equality instead of up-to-unit matching
        #[arg(long)]
        exact_match: bool,
    },
    /// Check that the curve family specializes to the n-gon ideal
    #[command(name = "ngon")]
    Ngon {
        /// Degree of the family, 5 <= n <= 8
        #[arg(long)]
        n: u32,
    },
    /// Check the syzygy families of the deformed equations
    #[command(name = "syzygies")]
    Syzygies {
        /// Degree of the family, n >= 5
        #[arg(long)]
        n: u32,
        /// Pair budget for the basis computation
        #[arg(long)]
        limit_pairs: Option<usize>,
    },
    /// Check the node/smooth vertex dichotomy on one fibre
    #[command(name = "lemma4")]
    Lemma4 {
        /// Degree of the family
        #[arg(long)]
        n: u32,
        /// Comma-separated rational parameter values, one per t_i
        #[arg(long)]
        t: String,
    },
    /// Check that every curve equation is a monomial multiple of itself
    /// under the cusp coordinate change
    #[command(name = "coordchange")]
    Coordchange {
        /// Degree of the family
        #[arg(long)]
        n: u32,
    },
}

/// Parse and dispatch `argv`, returning the process exit code.
///
/// All output of a successful computation is assembled before anything is
/// printed; failures print a diagnostic to the error stream only.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.cmd) {
        Ok((out, code)) => {
            print!("{out}");
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::ResourceLimit(_) => 3,
                Error::MismatchReport(_) => 1,
                _ => 2,
            }
        }
    }
}

fn parse_rational(text: &str) -> Result<Rational> {
    text.trim()
        .parse::<Rational>()
        .map_err(|e| Error::ParseError(format!("bad rational `{text}`: {e}")))
}

fn dispatch(cmd: Cmd) -> Result<(String, i32)> {
    match cmd {
        Cmd::Gen { n, format } => {
            let eqs = gen_all_curve_equations(n)?;
            let sys = EquationSystem::from_labelled(n, false, eqs);
            Ok((export(&sys, format), 0))
        }
        Cmd::Srel { n, format } => {
            let polys = s_relation_ideal(n, false)?;
            let sys = EquationSystem::from_polys(n, false, polys);
            Ok((export(&sys, format), 0))
        }
        Cmd::SolveS { n, order, json } => {
            let sol = solve_s_series(n, order)?;
            if json {
                let mut series = serde_json::Map::new();
                for (m, ps) in &sol.series {
                    let coeffs: Vec<String> =
                        ps.coeffs().iter().map(|c| c.to_string()).collect();
                    series.insert(format!("s{m}"), serde_json::json!(coeffs));
                }
                let pinned: Vec<String> =
                    sol.pinned.iter().map(|m| format!("s{m}")).collect();
                let doc = serde_json::json!({
                    "n": sol.n,
                    "order": sol.order,
                    "pinned": pinned,
                    "series": series,
                });
                let mut out = serde_json::to_string_pretty(&doc).expect("serializable");
                out.push('\n');
                Ok((out, 0))
            } else {
                let mut out = String::new();
                let pinned: Vec<String> =
                    sol.pinned.iter().map(|m| format!("s{m}")).collect();
                out.push_str(&format!("# pinned: {}\n", pinned.join(", ")));
                for (m, ps) in &sol.series {
                    out.push_str(&format!("s{m} = {}\n", series_text(ps)));
                }
                Ok((out, 0))
            }
        }
        Cmd::GonDeform { n, format } => {
            let gens = minimal_generators(n)?;
            let relations = s_relation_ideal(n, true)?;
            let mut sys = EquationSystem::from_labelled(n, true, gens);
            sys.equations.extend(
                relations
                    .into_iter()
                    .map(|poly| LabeledPoly { label: None, poly }),
            );
            Ok((export(&sys, format), 0))
        }
        Cmd::Cusp {
            cycle,
            degree,
            order,
            format,
        } => {
            let c = Cycle::parse(&cycle)?;
            if c.classify() != CycleClass::Cusp {
                return Err(Error::NotACusp(format!(
                    "cycle {c} does not describe a cusp"
                )));
            }
            let n = c.len() as u32;
            if n < 5 {
                return Err(Error::UnsupportedN(
                    n,
                    "cusp equations cover cycle length at least 5; shorter cycles are reached by blow-down".to_string(),
                ));
            }
            let d = degree.unwrap_or_else(|| default_jet_degree(&c));
            let w = c.excess() as u64;
            let ord = order.unwrap_or_else(|| d.div_ceil(w) as usize);
            let sol = solve_s_series(n, ord)?;
            let jet = cusp_equations(&c, d, &sol)?;
            let note = if jet.exact {
                "exact: all series tails vanish within this degree".to_string()
            } else {
                "truncated: series terms above the jet degree omitted".to_string()
            };
            Ok((
                export_with_comments(&jet.to_system(), format, &[note]),
                0,
            ))
        }
        Cmd::Degenerate { cycle, format } => {
            let c = Cycle::parse(&cycle)?;
            let jet = degenerate_cusp_equations(&c)?;
            let note = "exact ideal (no truncation)".to_string();
            Ok((
                export_with_comments(&jet.to_system(), format, &[note]),
                0,
            ))
        }
        Cmd::Blowdown { cycle, format } => {
            let c = Cycle::parse(&cycle)?;
            let (next, eliminant) = blowdown_equations(&c)?;
            match format {
                Format::Text => {
                    let mut out = format!("{next}\n");
                    if let Some(p) = &eliminant {
                        out.push_str(&p.to_text());
                        out.push('\n');
                    }
                    Ok((out, 0))
                }
                Format::Json => {
                    let value = match &eliminant {
                        Some(p) => serde_json::to_value(p).expect("serializable"),
                        None => serde_json::Value::Null,
                    };
                    let doc = serde_json::json!({
                        "cycle": next.to_string(),
                        "eliminant": value,
                    });
                    let mut out = serde_json::to_string_pretty(&doc).expect("serializable");
                    out.push('\n');
                    Ok((out, 0))
                }
                other => {
                    let sys = EquationSystem::from_polys(
                        next.len() as u32,
                        false,
                        eliminant.into_iter().collect(),
                    );
                    let note = format!("blown-down cycle: {next}");
                    Ok((export_with_comments(&sys, other, &[note]), 0))
                }
            }
        }
        Cmd::Smooth {
            cycle,
            eps,
            format,
        } => {
            let c = Cycle::parse(&cycle)?;
            let mut sys = smoothing_family(&c)?;
            if let Some(Some(text)) = eps {
                let value = parse_rational(&text)?;
                for eq in &mut sys.equations {
                    eq.poly = eq.poly.eval_partial(&|v| {
                        if v == VarId::Eps {
                            Some(value.clone())
                        } else {
                            None
                        }
                    });
                }
            }
            Ok((export(&sys, format), 0))
        }
        Cmd::Dual { cycle } => {
            let c = Cycle::parse(&cycle)?;
            let d = ellnc_core::cycles::dual_cycle(&c)?;
            Ok((format!("{d}\n"), 0))
        }
        Cmd::Classify { cycle } => {
            let c = Cycle::parse(&cycle)?;
            Ok((format!("{:?}\n", c.classify()), 0))
        }
        Cmd::Verify { what } => {
            let (out, passed) = match what {
                VerifyCmd::Fixtures {
                    fixtures,
                    exact_match,
                } => checks::verify_fixtures(fixtures.as_deref(), exact_match)?,
                VerifyCmd::Ngon { n } => checks::verify_ngon(n)?,
                VerifyCmd::Syzygies { n, limit_pairs } => {
                    checks::verify_syzygies(n, limit_pairs.unwrap_or(DEFAULT_PAIR_LIMIT))?
                }
                VerifyCmd::Lemma4 { n, t } => {
                    let values: Vec<Rational> = t
                        .split(',')
                        .map(parse_rational)
                        .collect::<Result<Vec<_>>>()?;
                    checks::verify_lemma4(n, &values)?
                }
                VerifyCmd::Coordchange { n } => checks::verify_coordchange(n)?,
            };
            Ok((out, if passed { 0 } else { 1 }))
        }
        Cmd::Fixtures { fixtures } => {
            let mut out = String::new();
            for f in fixtures::FIXTURES {
                let text = fixtures::fixture_text(f, fixtures.as_deref())?;
                let count = fixtures::parse_fixture(&text)?.len();
                out.push_str(&format!("{}: {count} equations (n = {})\n", f.name, f.n));
            }
            Ok((out, 0))
        }
    }
}
