mod element;
mod greatest;
mod identities;

pub use element::{
    gamma_sqrt_map, sqrt, sqrt_boolean, sqrt_element_finite, sqrt_element_gamma, sqrt_element_twist3, sqrt_map,
    sqrt_map_with, sqrt_zero, GammaSqrtMap, NoRootReason, RootKind, SqrtMap, SqrtResult,
};
pub use greatest::{compare_quantifiers, greatest_sqrt_subalgebra, is_subalgebra, GreatestSubalgebra, Quantifier, Stage};
pub use identities::{sqrt_identities_check, IdentityOutcome, IdentityReport, IDENTITY_NAMES};

#[cfg(test)]
mod tests;
