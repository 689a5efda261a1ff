use std::fmt::{Debug, Display, LowerExp};
use std::str::FromStr;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Real scalar the walk, solver and bounds are computed in.
///
/// Implemented for `f32` and `f64`. The nalgebra bound is needed by the
/// least-squares solve; everything else goes through `num_traits::Float`.
/// Both traits define `sqrt`, `abs` and friends, so generic code calls them
/// as `Float::sqrt(x)`.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + nalgebra::RealField
    + Copy
    + Default
    + Debug
    + Display
    + LowerExp
    + FromStr
    + Send
    + Sync
    + 'static
{
    /// Constraint residual below which a least-squares solution counts as exact,
    /// relative to `max(1, |rhs|)`.
    const FEASIBILITY_TOL: f64;
    /// Largest tolerated `|norm - 1|` during an evolution before it is aborted.
    const DRIFT_TOL: f64;

    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("f64 literal fits the scalar type")
    }

    #[inline]
    fn from_count(n: usize) -> Self {
        <Self as FromPrimitive>::from_usize(n).expect("count fits the scalar type")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const FEASIBILITY_TOL: f64 = 1e-8;
    const DRIFT_TOL: f64 = 1e-6;
}

impl Scalar for f32 {
    const FEASIBILITY_TOL: f64 = 1e-3;
    const DRIFT_TOL: f64 = 1e-3;
}
