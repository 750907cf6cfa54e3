//! Oracle identification laboratory.
//!
//! Identify an unknown string `x` from a known promise set `C` by querying
//! its bits. The crate provides halving-style identification algorithms
//! driven by either an exact disagreement finder or a simulated quantum
//! search engine, the informative query ordering they rely on, explicit
//! feasible solutions of the filtered γ₂-norm program with their
//! input-dependent costs and composition operators, and the closed-form
//! and exhaustive complexity bounds used to check all of the above.

pub mod bounds;
pub mod concept;
mod error;
pub mod identify;
pub mod ordering;
pub mod qsim;
pub mod sdp;

pub use error::{Error, Result};
