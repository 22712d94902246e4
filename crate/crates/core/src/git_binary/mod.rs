//! GIT heights of pencils of binary cubics and quartics over the projective line.
//!
//! The invariants of binary forms are entered once, in [`invariants`], and are
//! checked in the tests against the resultant discriminant, `SL_2` substitutions
//! and scaling. The unstable fibers of a pencil are located separately, from the
//! derivatives of the form, so that the contact length can be compared with the
//! base locus of the invariant map.

mod invariants;
mod pencil;

pub use invariants::{
    cubic_discriminant_of, invariant_cubic_disc, invariants_quartic, quadratic_resultant,
    quartic_invariants_of,
};
pub use pencil::{
    contact_length_by_valuations, fiber_semistability_profile, git_height,
    verify_contact_identity, BinaryPencil, BinaryPencilInput, FiberRecord, GitHeightReport,
};
