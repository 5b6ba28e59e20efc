//! Exact computation with pseudo MV-algebras and unital lattice-ordered groups:
//! square roots of elements, square-root mappings, ideal-theoretic
//! decompositions and symbolic square-root closures.

pub mod closures;
pub mod error;
pub mod ideals;
pub mod ogroups;
pub mod par;
pub mod pmv;
pub mod roots;
pub mod scalars;
pub mod value;

pub use error::{Error, Result};
pub use ogroups::{GroupDescriptor, GroupElement, ScalarTag};
pub use par::Exec;
pub use pmv::{Algebra, Element, FiniteAlgebra};
pub use scalars::{QuadValue, Rational, Scalar};
pub use value::Value;
