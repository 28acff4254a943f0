//! Computational toolkit for finite set-theoretic solutions of the
//! Yang-Baxter equation and the algebra around them: solution verification,
//! retraction and multipermutation level, exact integer linear algebra, the
//! affine representation of structure groups, detection of Promislow
//! subgroups (with unique-product-property failure witnesses), and the
//! finite skew brace calculus.

// index-based loops mirror the mathematical notation throughout the table
// and matrix code; iterator rewrites would obscure it
#![allow(clippy::needless_range_loop)]

pub mod braces;
pub mod error;
pub mod fixtures;
pub mod intlin;
pub mod perm;
pub mod promislow;
pub mod solutions;
pub mod structure_group;

pub use error::{Error, Result};
