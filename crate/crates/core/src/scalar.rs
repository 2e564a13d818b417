use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::{FromPrimitive, Num, Signed};

/// Field of coefficients used for weights, representation values and
/// matrix-factorization entries.
///
/// Every exact computation in the workspace is written against this trait;
/// the crate roots pin it to [`Q`].
pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + FromStr + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + FromStr + Send + Sync + 'static
{
}

/// Arbitrary precision rationals.
pub type Q = num_rational::BigRational;

/// Parse a rational written as `p`, `-p` or `p/q`.
pub fn parse_scalar<K: Scalar>(s: &str) -> Option<K> {
    s.parse::<K>().ok()
}

pub fn from_int<K: Scalar>(n: i64) -> K {
    K::from_i64(n).expect("integer fits the scalar type")
}
