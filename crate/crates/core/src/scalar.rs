//! Scalar kinds carried by residue- and divisor-indexed functions.
//!
//! Two kinds are supported: exact rationals ([`Rational`]) and complex
//! doubles ([`Complex64`]). Every kernel in the even-function pipeline is an
//! integer, so the hot loop is an integer-weighted sum; [`Scalar::batch`]
//! lets each kind prepare its values once for many such sums.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Values laid out for repeated integer-weighted sums.
    type Batch;

    fn from_integer(v: i128) -> Self;

    /// Division by a nonzero integer; exact for rationals.
    fn div_integer(&self, d: i64) -> Self;

    fn conj(&self) -> Self;

    fn to_complex(&self) -> Complex64;

    /// Exact equality for rationals; `|a - b| <= tol` for floating kinds.
    fn is_close(&self, other: &Self, tol: f64) -> bool;

    /// `|a - b|` as a double. Zero for equal rationals.
    fn distance(&self, other: &Self) -> f64;

    fn batch(values: &[Self]) -> Self::Batch;

    /// `Σ weights[i] · values[i]`, summed in index order.
    fn weighted_sum(batch: &Self::Batch, weights: &[i128]) -> Self;
}

/// Rationals rescaled to a common denominator, so that weighted sums run
/// on plain integers and normalize once at the end.
#[derive(Debug, Clone)]
pub struct CommonDenominator {
    numerators: Vec<BigInt>,
    denominator: BigInt,
}

impl Scalar for Rational {
    type Batch = CommonDenominator;

    fn from_integer(v: i128) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn div_integer(&self, d: i64) -> Self {
        assert!(d != 0, "division by zero");
        self / BigRational::from_integer(BigInt::from(d))
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn is_close(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn distance(&self, other: &Self) -> f64 {
        if self == other {
            0.0
        } else {
            (self - other).abs().to_f64().unwrap_or(f64::INFINITY)
        }
    }

    fn batch(values: &[Self]) -> CommonDenominator {
        let denominator = values
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let numerators = values
            .iter()
            .map(|v| v.numer() * (&denominator / v.denom()))
            .collect();
        CommonDenominator {
            numerators,
            denominator,
        }
    }

    fn weighted_sum(batch: &CommonDenominator, weights: &[i128]) -> Self {
        debug_assert_eq!(batch.numerators.len(), weights.len());
        let mut acc = BigInt::zero();
        for (n, &w) in batch.numerators.iter().zip(weights) {
            if w != 0 {
                acc += n * w;
            }
        }
        BigRational::new(acc, batch.denominator.clone())
    }
}

impl Scalar for Complex64 {
    type Batch = Vec<Complex64>;

    fn from_integer(v: i128) -> Self {
        Complex64::new(v as f64, 0.0)
    }

    fn div_integer(&self, d: i64) -> Self {
        // one rounding site: multiply by the reciprocal
        self * (1.0 / d as f64)
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn is_close(&self, other: &Self, tol: f64) -> bool {
        (self - other).norm() <= tol
    }

    fn distance(&self, other: &Self) -> f64 {
        (self - other).norm()
    }

    fn batch(values: &[Self]) -> Vec<Complex64> {
        values.to_vec()
    }

    fn weighted_sum(batch: &Vec<Complex64>, weights: &[i128]) -> Self {
        debug_assert_eq!(batch.len(), weights.len());
        batch
            .iter()
            .zip(weights)
            .fold(Complex64::zero(), |acc, (v, &w)| acc + v * (w as f64))
    }
}

/// Reduced rational `p/q`. Panics if `q == 0`.
pub fn rational(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}
