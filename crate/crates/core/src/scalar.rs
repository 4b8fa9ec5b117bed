use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed};

/// Field operations shared by `f64` and exact rationals.
pub trait Scalar: Clone + Num + Signed + PartialOrd + Debug + FromPrimitive {
    fn int(n: i64) -> Self {
        Self::from_i64(n).expect("small integer")
    }
    fn from_f64_exact(x: f64) -> Self;
    fn to_f64(&self) -> f64;
}

impl Scalar for f64 {
    fn from_f64_exact(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for BigRational {
    /// Every finite double is a dyadic rational, so the conversion is exact.
    fn from_f64_exact(x: f64) -> Self {
        BigRational::from_float(x).expect("finite rate")
    }
    fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}
