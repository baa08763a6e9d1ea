//! Sidon sets in elementary abelian 2-groups.
//!
//! Constructions from conics of AG(2, q), verification and completeness
//! checks, extremal search, the bridge to double-error-correcting binary
//! codes, and vectorial Boolean function nonlinearity bounds.

pub mod algebra;
pub mod cli;
pub mod codes;
pub mod constructions;
pub mod files;
pub mod sbox;
pub mod search;
pub mod sidon;
pub mod verify;

pub use algebra::{FieldElement, FieldParams, GroupElement, PlanePoint};
pub use sidon::{PointSet, SidonReport};
