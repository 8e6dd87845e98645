//! Scalar fields for the Hilbert-space layer.
//!
//! The lattice kernel is index based and never touches scalars. Matrices are
//! generic over [`Scalar`] so the same code runs with floating tolerance or
//! with exact rational arithmetic.

use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};
use std::fmt::{Debug, Display};

/// A real field usable as the component type of complex matrix entries.
pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// `true` when arithmetic is exact and comparisons need no tolerance.
    const EXACT: bool;

    /// Absolute tolerance for zero tests. Zero for exact fields.
    fn tolerance() -> Self;

    /// Nearest value to an exact rational.
    fn from_rational(r: &BigRational) -> Self;

    fn negligible(&self) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.abs() <= Self::tolerance()
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    fn tolerance() -> f64 {
        1e-9
    }
    fn from_rational(r: &BigRational) -> f64 {
        r.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;
    fn tolerance() -> f32 {
        1e-4
    }
    fn from_rational(r: &BigRational) -> f32 {
        r.to_f32().unwrap_or(f32::NAN)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;
    fn tolerance() -> BigRational {
        BigRational::zero()
    }
    fn from_rational(r: &BigRational) -> BigRational {
        r.clone()
    }
}

/// Floating scalars, needed for eigenvalues and transcendental angles.
pub trait RealScalar: Scalar + num_traits::Float {}

impl<T: Scalar + num_traits::Float> RealScalar for T {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negligible_respects_mode() {
        assert!(1e-12f64.negligible());
        assert!(!1e-6f64.negligible());
        let tiny = BigRational::new(1.into(), 1_000_000_000_000i64.into());
        assert!(!tiny.negligible());
        assert!(BigRational::zero().negligible());
    }
}
