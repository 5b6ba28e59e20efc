mod crit;
mod descriptor;
mod sqrt_closure;
mod twist;

pub use crit::{corrdp_decompose, crit_check, min_doublings, sample_element, CritOutcome, RdpDecomposition};
pub use descriptor::{
    closed_group, closure_sqrt, strict_closure, strict_closure_idempotence_check, ClosureDescriptor, ClosureKind,
    ClosurePair,
};
pub use sqrt_closure::{sqrt_closure, sqrt_closure_descriptor, ClosureCase, SqrtClosureOutcome};
pub use twist::{minimal_two_divisible_check, twist4_axes, TwoDivisibleCertificate};
