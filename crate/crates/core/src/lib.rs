//! Convolution calculus for constructible sheaves on the real line and for
//! constructible functions on ℚⁿ, n ≤ 3.

pub mod cf1;
mod error;
pub mod euler;
pub mod exec;
pub mod interval;
pub mod microlocal;
pub mod oracle;
pub mod random;

pub use cf1::Cf1;
pub use error::{Error, Result};
pub use euler::{ConstructibleFunction, SweepEntry};
pub use exec::Execution;
pub use interval::{Closure, Generator, GradedDims, Interval, Invertibility, NonInvertibleReason, Sheaf1};
pub use starconv_geom::{self as geom, Rat};
