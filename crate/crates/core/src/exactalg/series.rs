//! Truncated univariate power series over the rationals.
//!
//! A series of order `N` stores the `N + 1` coefficients of `T^0 ..= T^N`.
//! Arithmetic between series of different orders truncates to the smaller
//! order, so a result is always reliable through its stated order.

use super::Rational;
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Default truncation order used by the coefficient solver.
pub const DEFAULT_SERIES_ORDER: usize = 12;

/// A truncated power series in one variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    /// Build from explicit coefficients `c0, c1, ..., cN`.
    ///
    /// Panics if `coeffs` is empty (a series always has an order >= 0).
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a power series needs at least c0");
        PowerSeries { coeffs }
    }

    /// The zero series of the given order.
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    /// The constant series `c` of the given order.
    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = PowerSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The constant series 1.
    pub fn one(order: usize) -> Self {
        PowerSeries::constant(Rational::one(), order)
    }

    /// The identity series `T`.
    pub fn t(order: usize) -> Self {
        let mut s = PowerSeries::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    /// Truncation order `N`; coefficients `0 ..= N` are stored.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `T^d`.
    ///
    /// Panics if `d` exceeds the order: coefficients beyond the truncation
    /// are unknown, not zero.
    pub fn coeff(&self, d: usize) -> &Rational {
        &self.coeffs[d]
    }

    /// All stored coefficients.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// True if every stored coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// Lower the order to `new_order` (must not exceed the current order).
    pub fn truncate(&self, new_order: usize) -> PowerSeries {
        assert!(
            new_order <= self.order(),
            "cannot extend a series by truncation"
        );
        PowerSeries {
            coeffs: self.coeffs[..=new_order].to_vec(),
        }
    }

    /// Pointwise sum, truncated to the smaller order.
    pub fn add(&self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=n).map(|d| &self.coeffs[d] + &rhs.coeffs[d]).collect(),
        }
    }

    /// Pointwise difference, truncated to the smaller order.
    pub fn sub(&self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=n).map(|d| &self.coeffs[d] - &rhs.coeffs[d]).collect(),
        }
    }

    /// Negation.
    pub fn neg(&self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Rational) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Cauchy product, truncated to the smaller order.
    pub fn mul(&self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        PowerSeries { coeffs }
    }

    /// `self^k`.
    pub fn pow(&self, k: u32) -> PowerSeries {
        let mut acc = PowerSeries::one(self.order());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<PowerSeries> {
        if self.coeffs[0].is_zero() {
            return Err(Error::ZeroConstantTerm(
                "cannot invert a series with zero constant term".into(),
            ));
        }
        let n = self.order();
        let mut inv = vec![Rational::zero(); n + 1];
        inv[0] = self.coeffs[0].recip();
        for d in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=d {
                acc += &self.coeffs[k] * &inv[d - k];
            }
            inv[d] = -acc / &self.coeffs[0];
        }
        Ok(PowerSeries { coeffs: inv })
    }

    /// Substitute `inner` (which must have zero constant term) for the
    /// variable. The result carries `inner`'s order; for full accuracy the
    /// caller should give `self` order at least `inner.order()` divided by
    /// the valuation of `inner`.
    pub fn compose(&self, inner: &PowerSeries) -> Result<PowerSeries> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::RangeError(
                "composition requires the inner series to vanish at 0".into(),
            ));
        }
        let n = inner.order();
        let mut acc = PowerSeries::constant(self.coeffs[0].clone(), n);
        let mut power = PowerSeries::one(n);
        for d in 1..=self.order() {
            power = power.mul(inner);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power.scale(&self.coeffs[d]));
        }
        Ok(acc)
    }

    /// Evaluate the truncated polynomial at a rational point. This is exact
    /// only where the series itself is exact (e.g. at 0, or when the series
    /// is known to be a polynomial of degree <= the order).
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            if d == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if d == 1 {
                    write!(f, "T")?;
                } else {
                    write!(f, "T^{d}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, "+O(T^{})", self.order() + 1)
    }
}

/// Solve `g^k = f` for a series `g` with `g(0) = branch`.
///
/// Preconditions: `f(0)` must be nonzero ([`Error::ZeroConstantTerm`])
/// and `branch^k = f(0)` must hold exactly ([`Error::NoRationalRoot`]).
pub fn series_root(f: &PowerSeries, k: u32, branch: &Rational) -> Result<PowerSeries> {
    if k == 0 {
        return Err(Error::RangeError("root exponent must be positive".into()));
    }
    if f.coeffs[0].is_zero() {
        return Err(Error::ZeroConstantTerm(
            "k-th root requires a nonzero constant term".into(),
        ));
    }
    let mut branch_pow = Rational::one();
    for _ in 0..k {
        branch_pow *= branch;
    }
    if branch_pow != f.coeffs[0] {
        return Err(Error::NoRationalRoot(format!(
            "branch^{k} = {branch_pow} does not equal the constant term {}",
            f.coeffs[0]
        )));
    }
    let n = f.order();
    let mut g = PowerSeries::zero(n);
    g.coeffs[0] = branch.clone();
    // k * branch^(k-1), the derivative of x^k at the branch point
    let mut deriv = Rational::from_integer(k.into());
    for _ in 0..k - 1 {
        deriv *= branch;
    }
    for d in 1..=n {
        // coefficient of T^d in (current g)^k, using only coefficients < d
        let gk = g.pow(k);
        let defect = &f.coeffs[d] - &gk.coeffs[d];
        g.coeffs[d] = defect / &deriv;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, ratio};

    #[test]
    fn order_and_length() {
        let s = PowerSeries::zero(12);
        assert_eq!(s.order(), 12);
        assert_eq!(s.coeffs().len(), 13);
        let t = PowerSeries::t(5);
        assert_eq!(t.coeff(1), &rat(1));
        assert!(PowerSeries::one(0).order() == 0);
    }

    #[test]
    fn arithmetic_truncates_to_min_order() {
        let a = PowerSeries::one(10);
        let b = PowerSeries::t(4);
        assert_eq!(a.add(&b).order(), 4);
        assert_eq!(a.mul(&b).order(), 4);
        let prod = a.mul(&b);
        assert_eq!(prod.coeff(1), &rat(1));
        assert_eq!(prod.coeff(0), &rat(0));
    }

    #[test]
    fn geometric_series_inverse() {
        // 1/(1-T) = 1 + T + T^2 + ...
        let one_minus_t = PowerSeries::one(8).sub(&PowerSeries::t(8));
        let inv = one_minus_t.inverse().unwrap();
        for d in 0..=8 {
            assert_eq!(inv.coeff(d), &rat(1), "coefficient of T^{d}");
        }
        assert_eq!(one_minus_t.mul(&inv), PowerSeries::one(8));
        assert!(PowerSeries::t(3).inverse().is_err());
    }

    #[test]
    fn sqrt_one_plus_t() {
        // (1+T)^(1/2) = 1 + T/2 - T^2/8 + T^3/16 - 5T^4/128 + ...
        let f = PowerSeries::one(6).add(&PowerSeries::t(6));
        let g = series_root(&f, 2, &rat(1)).unwrap();
        assert_eq!(g.coeff(0), &rat(1));
        assert_eq!(g.coeff(1), &ratio(1, 2));
        assert_eq!(g.coeff(2), &ratio(-1, 8));
        assert_eq!(g.coeff(3), &ratio(1, 16));
        assert_eq!(g.coeff(4), &ratio(-5, 128));
        assert_eq!(g.pow(2), f);
    }

    #[test]
    fn sqrt_one_minus_four_t_is_catalan() {
        // sqrt(1-4T) = 1 - 2T - 2T^2 - 4T^3 - 10T^4 - 28T^5 - ...
        // (coefficient of T^{d+1} is -2 * Catalan(d))
        let f = PowerSeries::one(8).sub(&PowerSeries::t(8).scale(&rat(4)));
        let g = series_root(&f, 2, &rat(1)).unwrap();
        let expect = [1i64, -2, -2, -4, -10, -28, -84, -264, -858];
        for (d, e) in expect.iter().enumerate() {
            assert_eq!(g.coeff(d), &rat(*e), "coefficient of T^{d}");
        }
        assert_eq!(g.pow(2), f);
    }

    #[test]
    fn negative_branch_root() {
        // g(0) = -1 with g^2 = 1+T picks the other branch
        let f = PowerSeries::one(4).add(&PowerSeries::t(4));
        let g = series_root(&f, 2, &rat(-1)).unwrap();
        assert_eq!(g.coeff(0), &rat(-1));
        assert_eq!(g.coeff(1), &ratio(-1, 2));
        assert_eq!(g.pow(2), f);
    }

    #[test]
    fn cube_root() {
        // (2 + T)^3 = 8 + 12T + 6T^2 + T^3; the cube root recovers 2 + T
        let base = PowerSeries::from_coeffs(vec![rat(8), rat(12), rat(6), rat(1)]);
        let g = series_root(&base, 3, &rat(2)).unwrap();
        assert_eq!(g.coeff(0), &rat(2));
        assert_eq!(g.coeff(1), &rat(1));
        assert_eq!(g.coeff(2), &rat(0));
        assert_eq!(g.coeff(3), &rat(0));
    }

    #[test]
    fn root_error_cases() {
        let f = PowerSeries::t(4);
        assert!(matches!(
            series_root(&f, 2, &rat(0)),
            Err(Error::ZeroConstantTerm(_))
        ));
        let g = PowerSeries::constant(rat(2), 4);
        assert!(matches!(
            series_root(&g, 2, &rat(1)),
            Err(Error::NoRationalRoot(_))
        ));
    }

    #[test]
    fn composition() {
        // (1/(1-T)) composed with T = 2U + U^2: coefficients of the
        // composite through U^3
        let outer = PowerSeries::one(6)
            .sub(&PowerSeries::t(6))
            .inverse()
            .unwrap();
        let mut inner = PowerSeries::zero(3);
        inner.coeffs[1] = rat(2);
        inner.coeffs[2] = rat(1);
        let comp = outer.compose(&inner).unwrap();
        // 1 + (2U+U^2) + (2U+U^2)^2 + (2U+U^2)^3 = 1 + 2U + 5U^2 + 12U^3 + ...
        assert_eq!(comp.coeff(0), &rat(1));
        assert_eq!(comp.coeff(1), &rat(2));
        assert_eq!(comp.coeff(2), &rat(5));
        assert_eq!(comp.coeff(3), &rat(12));
        let bad = outer.compose(&PowerSeries::one(3));
        assert!(bad.is_err());
    }

    #[test]
    fn display_form() {
        let f = PowerSeries::from_coeffs(vec![rat(1), rat(-2), rat(0), ratio(1, 3)]);
        assert_eq!(f.to_string(), "1-2*T+1/3*T^3+O(T^4)");
        assert_eq!(PowerSeries::zero(2).to_string(), "0+O(T^3)");
    }
}
