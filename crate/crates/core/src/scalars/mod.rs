//! Exact coordinates: rationals and real quadratic irrationals.

mod quad;
mod rational;
mod scalar;

pub use quad::{check_discriminant, QuadValue};
pub use rational::{gcd, is_power_of_two, odd_part, Rational};
pub use scalar::Scalar;
