//! Exact heights of pencils of projective hypersurfaces over curves.
//!
//! - [`algebra`]: exact rationals, polynomials and sparse forms.
//! - [`coeffs`]: the closed-form coefficients `F_stab`, `w_{N,δ}`, `g_N(δ)`.
//! - [`semistability`]: Hilbert–Mumford torus tests, the binary multiplicity rule
//!   and numeric sufficient criteria from singularity data.
//! - [`pencils`]: intersection and stable Griffiths heights of pencils.
//! - [`git_binary`]: concrete GIT heights for pencils of binary cubics and quartics.
//! - [`verify`]: the grid and randomized theorem checks behind `verify`.

pub mod algebra;
pub mod coeffs;
pub mod error;
pub mod git_binary;
pub mod pencils;
pub mod semistability;
pub mod verify;

pub use algebra::{HomPoly2, MultiForm, Rational, UniPoly};
pub use error::{Error, Result};
