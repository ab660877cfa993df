//! Scalar abstraction for the numeric core.
//!
//! Every matrix routine in this crate is generic over [`Real`], so the same
//! code runs in `f32` or `f64`. The crate root exports concrete `f64` aliases
//! which the experiment sweeps and the CLI use.

use num_traits::{Float, FromPrimitive, NumAssign, NumCast};

/// Floating-point scalar usable by the numeric core: `f32` or `f64`.
pub trait Real:
    Float + FromPrimitive + NumAssign + NumCast + std::iter::Sum + std::fmt::Debug + std::fmt::Display + Default + Send + Sync + 'static
{
    /// Cast an `f64` constant (tolerances, step sizes) into this scalar type.
    fn of(v: f64) -> Self {
        <Self as NumCast>::from(v).expect("constant representable in scalar type")
    }

    /// Cast a `usize` (dimensions, counts) into this scalar type.
    fn of_usize(v: usize) -> Self {
        <Self as NumCast>::from(v).expect("count representable in scalar type")
    }

    /// Lossy conversion to `f64` for reporting.
    fn to_f64_lossy(self) -> f64 {
        <f64 as NumCast>::from(self).expect("scalar convertible to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}
