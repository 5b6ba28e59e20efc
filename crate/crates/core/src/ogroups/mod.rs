//! Concrete unital lattice-ordered groups and their exact arithmetic.

mod descriptor;
mod element;

pub use descriptor::{GroupDescriptor, ScalarTag};
pub use element::GroupElement;
