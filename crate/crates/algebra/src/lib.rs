//! Exact elements of the weak Jacobi algebra of a dimer and the angle algebra
//! `Gtl` with its combinatorial higher products.

pub mod gtl;
pub mod path;

use dimer_core::{DimerError, Q};
use thiserror::Error;

pub use gtl::{disc_sequences, gtl_mu, Angle, AnglePath, AngleQuiver};
pub use path::{Jacobi, PathElement, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("word is not composable at position {0}")]
    NotComposable(usize),
    #[error("no perfect matchings")]
    NoMatchings,
    #[error("there is no matching {0}")]
    NoMatching(usize),
    #[error("arrows {0} and {1} are not consecutive in a positive face")]
    NotConsecutive(usize, usize),
    #[error("entry is not invertible")]
    NotInvertible,
    #[error(transparent)]
    Dimer(#[from] DimerError),
}

pub type PathQ = PathElement<Q>;
pub type AnglePathQ = AnglePath<Q>;
