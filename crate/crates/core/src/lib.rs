//! Exact symbolic computation for elliptic normal curves of degree `n`,
//! the versal deformation of the cycle of `n` lines ("n-gon"), and the
//! equations of cusp and degenerate-cusp singularities.
//!
//! Everything is computed over the rationals with no floating point on any
//! mathematical path: polynomials are sparse maps from monomials to
//! `BigRational` coefficients, power series are truncated with explicit
//! order tracking, and real quadratic irrationals are compared exactly.
//!
//! Module map:
//! * [`exactalg`] — rationals, multivariate polynomials, monomial orders,
//!   truncated power series, quadratic surds and periodic continued fractions.
//! * [`cycles`] — cycles of integers-or-infinity, their classification,
//!   duality and blow-downs.
//! * [`curve_eqs`] — quadrics through elliptic normal curves, index
//!   bookkeeping, sigma-coefficient relations, Pfaffian systems, m-gon
//!   specializations.
//! * [`deform`] — the deformed quadrics with `t`-parameters, minimal
//!   generator systems, syzygies, the coefficient power-series solver, and
//!   the toric coordinate-change verifier.
//! * [`groebner`] — Buchberger's algorithm, ideal membership/equality, and
//!   the higher-level fibre checks built on them.
//! * [`cusp`] — jet ideals of cusp singularities, degenerate-cusp equations,
//!   blow-downs of the equations, and smoothing families.

pub mod cusp;
pub mod curve_eqs;
pub mod cycles;
pub mod deform;
pub mod exactalg;
pub mod groebner;

use thiserror::Error;

/// Unified error type for every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A curve-family operation was asked for an `n` outside its domain.
    #[error("unsupported n = {0}: {1}")]
    UnsupportedN(u32, String),
    /// An index tuple violated the documented range constraints.
    #[error("index out of range: {0}")]
    RangeError(String),
    /// Quadruple entries of mixed integer/half-integer parity.
    #[error("indices are not all integral or all half-integral: {0}")]
    NonHalfIntegral(String),
    /// The coefficient solver could not isolate a solvable subsystem.
    #[error("singular Jacobian: {0}")]
    SingularJacobian(String),
    /// A cusp-only operation was applied to a cycle of another class.
    #[error("cycle is not a cusp cycle: {0}")]
    NotACusp(String),
    /// A degenerate-cusp-only operation was applied to another class.
    #[error("cycle is not a degenerate-cusp cycle: {0}")]
    NotDegenerate(String),
    /// Blow-down requested at an entry that is not 1, or on a cycle with none.
    #[error("cycle cannot be blown down: {0}")]
    NotBlowDownable(String),
    /// A blow-down would push a finite neighbouring entry below 1.
    #[error("blow-down underflow: {0}")]
    Underflow(String),
    /// The infinite entry is required at position 0 and is elsewhere.
    #[error("position convention violated: {0}")]
    PositionConvention(String),
    /// The supplied power-series solution is truncated below what is needed.
    #[error("series order too small: {0}")]
    InsufficientSeriesOrder(String),
    /// An exact answer cannot be produced at this truncation order.
    #[error("inconclusive at this truncation: {0}")]
    InconclusiveAtTruncation(String),
    /// A Groebner computation exceeded its pair budget.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    /// `series_root`: the constant term has no rational k-th root.
    #[error("no rational root: {0}")]
    NoRationalRoot(String),
    /// `series_root`: the constant term vanishes.
    #[error("zero constant term: {0}")]
    ZeroConstantTerm(String),
    /// A periodic continued fraction with all entries 2 has no finite value.
    #[error("divergent cycle: {0}")]
    DivergentCycle(String),
    /// A verification produced a mismatch; the report explains where.
    #[error("mismatch: {0}")]
    MismatchReport(String),
    /// Input could not be parsed.
    #[error("parse error: {0}")]
    ParseError(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
