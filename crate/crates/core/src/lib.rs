//! Dimer quivers on closed oriented surfaces: data model, text format,
//! surface invariants, specular duality and integer homology.

pub mod corpus;
pub mod dimer;
pub mod dtf;
pub mod error;
pub mod homology;
pub mod homotopy;
pub mod lattice;
pub mod perm;
pub mod scalar;
pub mod snf;

pub use dimer::{Dimer, Face, Sign};
pub use dtf::{parse_dimer, parse_rep, parse_weights, print_dimer};
pub use error::DimerError;
pub use homology::{boundary, face_chain, word_chain, Chain, Homology};
pub use homotopy::Homotopy;
pub use lattice::Point;
pub use scalar::{from_int, parse_scalar, Scalar, Q};
