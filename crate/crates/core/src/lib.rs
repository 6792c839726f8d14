//! Verification engine for isoparametric hypersurfaces with constant
//! principal curvatures in products `Q²_{c₁} × Q²_{c₂}` of two-dimensional
//! space forms with `c₁ ≠ c₂`.

// `!(x > tol)` is used on purpose so that NaN takes the failure branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod classifier;
pub mod error;
pub mod hypersurface;
pub mod jacobi;
pub mod product;
pub mod spaceform;

pub use error::{GeomError, Result};
