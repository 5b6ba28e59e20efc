//! Pseudo MV-algebras: `Γ(G,u)` over a group descriptor and finite
//! table-backed algebras.

mod algebra;
mod finite;
mod hom;

pub use algebra::{Algebra, Element};
pub use finite::FiniteAlgebra;
pub use hom::{check_homomorphism, check_homomorphism_with, is_embedding};

#[cfg(test)]
mod tests;
