//! Real quadratic surds `a + b*sqrt(d)` with exact comparison, and values
//! of periodic minus-sign (Hirzebruch-Jung) continued fractions.

use super::{Rational, rat};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Decompose `n = root^2 * free` with `free` square-free.
fn square_free_decompose(n: u64) -> (u64, u64) {
    let mut free = n;
    let mut root = 1u64;
    let mut p = 2u64;
    while p * p <= free {
        while free % (p * p) == 0 {
            free /= p * p;
            root *= p;
        }
        p += 1;
    }
    (root, free)
}

/// A real number `a + b * sqrt(d)` with `a, b` rational and `d` a positive
/// square-free integer. Rational values are normalized to `b = 0, d = 1`,
/// so structural equality is numeric equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadSurd {
    a: Rational,
    b: Rational,
    d: u64,
}

impl QuadSurd {
    /// Build `a + b*sqrt(d)`, normalizing the radicand square-free.
    pub fn new(a: Rational, b: Rational, d: u64) -> QuadSurd {
        assert!(d > 0, "radicand must be positive");
        if b.is_zero() {
            return QuadSurd { a, b: Rational::zero(), d: 1 };
        }
        let (root, free) = square_free_decompose(d);
        let b = b * rat(root as i64);
        if free == 1 {
            QuadSurd { a: a + b, b: Rational::zero(), d: 1 }
        } else {
            QuadSurd { a, b, d: free }
        }
    }

    /// A rational number as a surd.
    pub fn from_rational(a: Rational) -> QuadSurd {
        QuadSurd { a, b: Rational::zero(), d: 1 }
    }

    /// Rational part.
    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of `sqrt(d)`.
    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// Square-free radicand (1 when the value is rational).
    pub fn d(&self) -> u64 {
        self.d
    }

    /// True if the value is rational.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a - b*sqrt(d)`.
    pub fn conj(&self) -> QuadSurd {
        QuadSurd {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// Trace `2a`.
    pub fn trace(&self) -> Rational {
        &self.a + &self.a
    }

    /// Norm `a^2 - b^2 d`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * rat(self.d as i64)
    }

    fn unify(&self, other: &QuadSurd) -> u64 {
        if self.b.is_zero() {
            other.d
        } else if other.b.is_zero() || self.d == other.d {
            self.d
        } else {
            panic!(
                "incompatible quadratic fields: sqrt({}) vs sqrt({})",
                self.d, other.d
            )
        }
    }

    /// Sum (both values must lie in one quadratic field).
    pub fn add(&self, other: &QuadSurd) -> QuadSurd {
        let d = self.unify(other);
        QuadSurd::new(&self.a + &other.a, &self.b + &other.b, d)
    }

    /// Difference.
    pub fn sub(&self, other: &QuadSurd) -> QuadSurd {
        self.add(&other.neg())
    }

    /// Negation.
    pub fn neg(&self) -> QuadSurd {
        QuadSurd {
            a: -self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// Product.
    pub fn mul(&self, other: &QuadSurd) -> QuadSurd {
        let d = self.unify(other);
        let dr = rat(d as i64);
        QuadSurd::new(
            &self.a * &other.a + &self.b * &other.b * dr,
            &self.a * &other.b + &self.b * &other.a,
            d,
        )
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inverse(&self) -> QuadSurd {
        let n = self.norm();
        assert!(!n.is_zero(), "inverse of zero surd");
        QuadSurd::new(&self.a / &n, -&self.b / &n, self.d)
    }

    /// Quotient.
    pub fn div(&self, other: &QuadSurd) -> QuadSurd {
        self.mul(&other.inverse())
    }

    /// Exact sign of the value.
    pub fn sign(&self) -> Ordering {
        if self.b.is_zero() {
            return self.a.cmp(&Rational::zero());
        }
        if self.a.is_zero() {
            return self.b.cmp(&Rational::zero());
        }
        let sa = self.a.is_positive();
        let sb = self.b.is_positive();
        if sa == sb {
            return if sa { Ordering::Greater } else { Ordering::Less };
        }
        // a and b*sqrt(d) pull in opposite directions: compare a^2 vs b^2 d
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * rat(self.d as i64);
        match a2.cmp(&b2d) {
            Ordering::Greater => self.a.cmp(&Rational::zero()),
            Ordering::Less => self.b.cmp(&Rational::zero()),
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// Exact comparison in the real numbers.
    pub fn cmp_surd(&self, other: &QuadSurd) -> Ordering {
        self.sub(other).sign()
    }

    /// Exact comparison against a rational.
    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        self.cmp_surd(&QuadSurd::from_rational(r.clone()))
    }

    /// Approximate value, used only to seed exact floor computations.
    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN)
            + self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }

    /// Exact floor: the float value only seeds the search; the result is
    /// verified (and corrected) with exact comparisons.
    pub fn floor(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.floor().to_integer();
        }
        let mut n = BigInt::from(self.to_f64().floor() as i64);
        // correct downwards while x < n
        while self.cmp_rational(&Rational::from_integer(n.clone())) == Ordering::Less {
            n -= 1;
        }
        // correct upwards while x >= n + 1
        while self.cmp_rational(&Rational::from_integer(&n + 1)) != Ordering::Less {
            n += 1;
        }
        n
    }

    /// Exact ceiling.
    pub fn ceil(&self) -> BigInt {
        -self.neg().floor()
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if !self.a.is_zero() {
            write!(f, "{}", self.a)?;
            if self.b.is_positive() {
                write!(f, "+")?;
            }
        }
        if self.b == -Rational::one() {
            write!(f, "-")?;
        } else if self.b != Rational::one() {
            write!(f, "{}*", self.b)?;
        }
        write!(f, "sqrt({})", self.d)
    }
}

/// Value of the purely periodic minus-sign continued fraction
/// `[[b_1, ..., b_r]] = b_1 - 1/(b_2 - 1/(... - 1/(b_1 - ...)))`.
///
/// Preconditions: every entry is at least 2 and some entry exceeds 2;
/// the all-2 cycle has no finite value ([`Error::DivergentCycle`]).
pub fn surd_periodic_cf(entries: &[u64]) -> Result<QuadSurd> {
    if entries.is_empty() {
        return Err(Error::RangeError("empty continued fraction cycle".into()));
    }
    if let Some(&bad) = entries.iter().find(|&&b| b < 2) {
        return Err(Error::RangeError(format!(
            "continued fraction entries must be >= 2, got {bad}"
        )));
    }
    if entries.iter().all(|&b| b == 2) {
        return Err(Error::DivergentCycle(
            "the all-2 cycle does not converge".into(),
        ));
    }
    // Composition matrix: x -> b - 1/x is [[b, -1], [1, 0]]; the leftmost
    // factor is the first entry.
    let (mut p, mut q, mut r, mut s) = (
        BigInt::one(),
        BigInt::zero(),
        BigInt::zero(),
        BigInt::one(),
    );
    for &b in entries {
        let bb = BigInt::from(b);
        // matrix multiply (p q; r s) * (b -1; 1 0)
        let np = &p * &bb + &q;
        let nq = -&p;
        let nr = &r * &bb + &s;
        let ns = -&r;
        p = np;
        q = nq;
        r = nr;
        s = ns;
    }
    // Fixed point of x -> (p x + q)/(r x + s): r x^2 + (s - p) x - q = 0.
    let disc = (&s - &p) * (&s - &p) + BigInt::from(4) * &r * &q;
    if disc <= BigInt::zero() {
        return Err(Error::DivergentCycle(
            "no real quadratic fixed point".into(),
        ));
    }
    let disc_u: u64 = disc.to_u64().ok_or_else(|| {
        Error::RangeError("cycle too large for exact surd arithmetic".into())
    })?;
    let (root, free) = square_free_decompose(disc_u);
    if free == 1 {
        return Err(Error::DivergentCycle(
            "fixed point is rational, not a quadratic surd".into(),
        ));
    }
    let two_r = Rational::from_integer(2 * r.clone());
    if two_r.is_zero() {
        return Err(Error::DivergentCycle("degenerate fixed point".into()));
    }
    let a = Rational::from_integer(&p - &s) / &two_r;
    let b = Rational::from_integer(BigInt::from(root)) / &two_r;
    let w = QuadSurd::new(a.clone(), b.clone(), free);
    // choose the root exceeding 1
    if w.cmp_rational(&Rational::one()) == Ordering::Greater {
        Ok(w)
    } else {
        let w = QuadSurd::new(a, -b, free);
        if w.cmp_rational(&Rational::one()) == Ordering::Greater {
            Ok(w)
        } else {
            Err(Error::DivergentCycle(
                "no fixed point exceeds 1".into(),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ratio;

    #[test]
    fn golden_ratio_like_cycle() {
        // [[3]] = (3 + sqrt(5))/2
        let w = surd_periodic_cf(&[3]).unwrap();
        assert_eq!(w, QuadSurd::new(ratio(3, 2), ratio(1, 2), 5));
    }

    #[test]
    fn cycle_four() {
        // [[4]] = 2 + sqrt(3)
        let w = surd_periodic_cf(&[4]).unwrap();
        assert_eq!(w, QuadSurd::new(rat(2), rat(1), 3));
    }

    #[test]
    fn all_twos_diverges() {
        assert!(matches!(
            surd_periodic_cf(&[2, 2, 2]),
            Err(Error::DivergentCycle(_))
        ));
        assert!(matches!(
            surd_periodic_cf(&[1, 3]),
            Err(Error::RangeError(_))
        ));
        assert!(surd_periodic_cf(&[]).is_err());
    }

    #[test]
    fn mixed_cycle_satisfies_fixed_point() {
        // w = [[2,3,4]] satisfies w = 2 - 1/(3 - 1/(4 - 1/w))
        let w = surd_periodic_cf(&[2, 3, 4]).unwrap();
        let one = QuadSurd::from_rational(rat(1));
        let step = |b: i64, x: &QuadSurd| {
            QuadSurd::from_rational(rat(b)).sub(&one.div(x))
        };
        let w2 = step(2, &step(3, &step(4, &w)));
        assert_eq!(w, w2);
        assert_eq!(w.cmp_rational(&rat(1)), Ordering::Greater);
        assert_eq!(w.cmp_rational(&rat(2)), Ordering::Less);
        // 11 w^2 - 21 w + 5 = 0
        let lhs = w
            .mul(&w)
            .mul(&QuadSurd::from_rational(rat(11)))
            .sub(&w.mul(&QuadSurd::from_rational(rat(21))))
            .add(&QuadSurd::from_rational(rat(5)));
        assert!(lhs.sign() == Ordering::Equal);
    }

    #[test]
    fn surd_normalization() {
        // sqrt(12) = 2 sqrt(3)
        let x = QuadSurd::new(rat(0), rat(1), 12);
        assert_eq!(x, QuadSurd::new(rat(0), rat(2), 3));
        // sqrt(9) = 3 is rational
        let y = QuadSurd::new(rat(1), rat(1), 9);
        assert!(y.is_rational());
        assert_eq!(y.a(), &rat(4));
    }

    #[test]
    fn exact_sign_and_floor() {
        // 2 - sqrt(3) is positive, 1 - sqrt(3) is negative
        let x = QuadSurd::new(rat(2), rat(-1), 3);
        assert_eq!(x.sign(), Ordering::Greater);
        let y = QuadSurd::new(rat(1), rat(-1), 3);
        assert_eq!(y.sign(), Ordering::Less);
        // floor((3+sqrt(5))/2) = 2, floor of its negation is -3
        let w = QuadSurd::new(ratio(3, 2), ratio(1, 2), 5);
        assert_eq!(w.floor(), BigInt::from(2));
        assert_eq!(w.neg().floor(), BigInt::from(-3));
        assert_eq!(w.ceil(), BigInt::from(3));
        // rational floor
        assert_eq!(QuadSurd::from_rational(ratio(-7, 2)).floor(), BigInt::from(-4));
        // floors near an integer boundary: sqrt(2) + (1 - sqrt(2)) = 1 exactly
        let z = QuadSurd::new(rat(1), rat(0), 2);
        assert_eq!(z.floor(), BigInt::from(1));
    }

    #[test]
    fn field_arithmetic() {
        let w = QuadSurd::new(rat(2), rat(1), 3); // 2 + sqrt(3)
        let inv = w.inverse(); // 2 - sqrt(3), since norm = 1
        assert_eq!(inv, QuadSurd::new(rat(2), rat(-1), 3));
        assert_eq!(w.mul(&inv), QuadSurd::from_rational(rat(1)));
        assert_eq!(w.trace(), rat(4));
        assert_eq!(w.norm(), rat(1));
        assert_eq!(w.conj().add(&w), QuadSurd::from_rational(rat(4)));
        let r = QuadSurd::from_rational(ratio(1, 2));
        assert_eq!(
            w.add(&r),
            QuadSurd::new(ratio(5, 2), rat(1), 3)
        );
    }
}
