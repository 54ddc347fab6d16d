//! Frobenius degeneracy ideals, F-signature estimates and the splitting oracle.

mod degeneracy;
mod divisor;
mod oracle;
mod presentation;

pub use degeneracy::{
    degeneracy_ideal, f_purity_test, fedder_ideal, frobenius_rank, signature_estimate, signature_estimate_with,
    SignatureSample,
};
#[allow(unused_imports)]
pub(crate) use degeneracy::{checked_q, multiplier_checked};
pub use divisor::{DivisorSpec, DivisorTerm, Rounding};
pub use oracle::{exhaustive_panel, splitting_oracle};
pub use presentation::{translate_point, RingPresentation};
