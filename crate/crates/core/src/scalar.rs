//! Scalar abstraction shared by the polynomial and density code.
//!
//! Exact work runs over [`BigRational`](num_rational::BigRational) and plain
//! integer accumulation runs over `i128`/[`BigInt`]; `f64`/`f32` are for
//! plotting and quick estimates only.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive};

pub trait Scalar: Num + Clone + PartialOrd + Debug + Send + Sync {
    /// Whether arithmetic in this type is exact. Cancellation checks are
    /// only meaningful when this is true.
    const EXACT: bool;

    fn from_i128(v: i128) -> Self;

    fn to_f64_lossy(&self) -> f64;
}

/// Marker for scalars where `/` is true division.
pub trait Field: Scalar {
    fn half() -> Self {
        Self::one() / (Self::one() + Self::one())
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    fn from_i128(v: i128) -> Self {
        v as f64
    }
    fn to_f64_lossy(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;
    fn from_i128(v: i128) -> Self {
        v as f32
    }
    fn to_f64_lossy(&self) -> f64 {
        *self as f64
    }
}

impl Scalar for i128 {
    const EXACT: bool = true;
    fn from_i128(v: i128) -> Self {
        v
    }
    fn to_f64_lossy(&self) -> f64 {
        *self as f64
    }
}

impl Scalar for BigInt {
    const EXACT: bool = true;
    fn from_i128(v: i128) -> Self {
        BigInt::from(v)
    }
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;
    fn from_i128(v: i128) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Field for f64 {}
impl Field for f32 {}
impl Field for BigRational {}
