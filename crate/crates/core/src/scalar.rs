//! Scalar modes: exact rationals and tolerance-checked floats behind one trait.
//!
//! Matrices are generic over [`Scalar`], so a single elimination kernel serves
//! the exact mode (where every zero test is literal) and the float mode (where
//! zero tests use a caller-supplied ε). Complex entries are pairs over the
//! base scalar via [`num::Complex`]; they satisfy the weaker [`Coeff`] trait,
//! which is all the elimination kernel needs.

use std::cmp::Ordering;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{Num, One, Signed, ToPrimitive, Zero};
use num::Complex;

/// Exact rational scalar.
pub type Rat = BigRational;

/// Field element accepted by the elimination kernel (real or complex).
pub trait Coeff:
    Clone
    + PartialEq
    + std::fmt::Debug
    + Zero
    + One
    + std::ops::Neg<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Div<Output = Self>
{
    /// Whether the value counts as zero at tolerance `eps`.
    /// Exact types ignore `eps` and test for literal zero.
    fn is_negligible(&self, eps: f64) -> bool;

    /// Pivot preference; larger is better, zero means unusable.
    /// Exact types score every nonzero value 1.0, so the first nonzero
    /// candidate wins and no spurious ordering is introduced.
    fn pivot_score(&self) -> f64;
}

/// Real scalar of a structure matrix: [`Rat`] (exact) or `f64` (ε-checked).
pub trait Scalar:
    Coeff + Num + PartialOrd + std::fmt::Display + Send + Sync + 'static
{
    /// True when arithmetic in this type is exact.
    const EXACT: bool;

    fn from_i64(n: i64) -> Self;

    /// The fraction `num/den`; `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Nearest `f64`.
    fn approx(&self) -> f64;

    /// Square root when representable in this type: for [`Rat`] only perfect
    /// squares of nonnegative values, for `f64` any nonnegative value.
    fn try_sqrt(&self) -> Option<Self>;

    /// Converts a float when the type represents it exactly: any finite
    /// value for `f64`, integers within 2⁵³ for [`Rat`].
    fn from_f64_checked(x: f64) -> Option<Self>;

    /// Compares `|self|` with `|other|`.
    fn abs_cmp(&self, other: &Self) -> Ordering;

    /// Absolute value.
    fn abs_val(&self) -> Self;
}

impl Coeff for Rat {
    fn is_negligible(&self, _eps: f64) -> bool {
        self.is_zero()
    }

    fn pivot_score(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

impl Scalar for Rat {
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        Rat::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rat::new(BigInt::from(num), BigInt::from(den))
    }

    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn try_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let num = self.numer();
        let den = self.denom();
        let sn = num.sqrt();
        let sd = den.sqrt();
        if &(&sn * &sn) == num && &(&sd * &sd) == den {
            Some(Rat::new(sn, sd))
        } else {
            None
        }
    }

    fn from_f64_checked(x: f64) -> Option<Self> {
        let in_range = x.is_finite() && x.fract() == 0.0 && x.abs() <= 9.0e15;
        in_range.then(|| Self::from_i64(x as i64))
    }

    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.abs().cmp(&other.abs())
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }
}

impl Coeff for f64 {
    fn is_negligible(&self, eps: f64) -> bool {
        self.abs() <= eps
    }

    fn pivot_score(&self) -> f64 {
        self.abs()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn approx(&self) -> f64 {
        *self
    }

    fn try_sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }

    fn from_f64_checked(x: f64) -> Option<Self> {
        x.is_finite().then_some(x)
    }

    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.abs()
            .partial_cmp(&other.abs())
            .unwrap_or(Ordering::Equal)
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }
}

impl<S: Scalar> Coeff for Complex<S> {
    fn is_negligible(&self, eps: f64) -> bool {
        self.re.is_negligible(eps) && self.im.is_negligible(eps)
    }

    fn pivot_score(&self) -> f64 {
        self.re.pivot_score() + self.im.pivot_score()
    }
}

/// The rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Embeds a real scalar as a complex one.
pub fn c_re<S: Scalar>(x: S) -> Complex<S> {
    Complex::new(x, S::zero())
}

/// The imaginary unit over `S`.
pub fn c_i<S: Scalar>() -> Complex<S> {
    Complex::new(S::zero(), S::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sqrt_detects_perfect_squares() {
        assert_eq!(rat(16, 25).try_sqrt(), Some(rat(4, 5)));
        assert_eq!(rat(1, 1).try_sqrt(), Some(rat(1, 1)));
        assert_eq!(rat(2, 1).try_sqrt(), None);
        assert_eq!(rat(-4, 1).try_sqrt(), None);
    }

    #[test]
    fn negligibility_is_literal_for_rationals_and_eps_for_floats() {
        assert!(rat(0, 1).is_negligible(0.0));
        assert!(!rat(1, 1_000_000_000_000).is_negligible(1e-9));
        assert!(1e-12f64.is_negligible(1e-9));
        assert!(!1e-6f64.is_negligible(1e-9));
    }

    #[test]
    fn complex_negligibility_requires_both_parts() {
        let z = Complex::new(rat(0, 1), rat(1, 3));
        assert!(!z.is_negligible(0.0));
        assert!(Complex::new(rat(0, 1), rat(0, 1)).is_negligible(0.0));
    }
}
