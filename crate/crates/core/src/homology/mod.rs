//! Homology by Smith normal form, closed-form evaluators for f-spindles and
//! block spindles, and checks of the structural identities between them.

mod closed_form;
mod compute;
mod homotopy;
mod identities;

pub use closed_form::{
    closed_form, closed_form_h1_block, closed_form_h1_fspindle, closed_form_hb_fspindle, closed_form_full_fspindle,
    closed_form_hn_fspindle, ClosedForm,
};
pub use compute::{compute_homology, homology, DegreeFailure, DegreeResult, HomologyReport, HomologyRequest};
pub use homotopy::{augmented_boundary, contracting_homotopy, homotopy_identity_holds, verify_acyclicity, AcyclicityReport};
pub use identities::{
    crosscheck_fspindle, relative_homology, verify_augmented, verify_bending_split, verify_degenerate_decomposition,
    verify_recursion, verify_relative_decomposition, verify_splitting, IdentityCheck,
};
