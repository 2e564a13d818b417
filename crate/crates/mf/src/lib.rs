//! Matrix factorizations of `(J, ℓ)` for a dimer: arrow factorizations, cones,
//! the shortening lemma, band factorizations, and the bands of a toric
//! representation.

pub mod band;
pub mod factorization;
pub mod rep;

use dimer_algebra::AlgebraError;
use dimer_core::{DimerError, Q};
use thiserror::Error;

pub use band::{band_twisted, enumerate_garlands, mf_band, mf_band_da, snake_path, Garland, TwistedReport};
pub use factorization::{
    cone, face_subpath, find_unit, format_element, hat_from, hat_morphism, iterated_cone, mf_arrow, mf_path, shorten,
    MatrixFactorization, MfMorphism, Shortened, Summand,
};
pub use rep::{rep_bands, DecoratedBand, RepBands};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MfError {
    #[error("check failed: {0}")]
    Check(String),
    #[error("entry ({0},{1}) is not invertible")]
    NotInvertible(usize, usize),
    #[error("arrows are not consecutive in a positive face")]
    NotConsecutive,
    #[error("invalid garland: {0}")]
    Garland(String),
    #[error("decoration is singular")]
    Singular,
    #[error("not a toric degeneration: {0}")]
    NotToric(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Dimer(#[from] DimerError),
}

pub type MatrixFactorizationQ = MatrixFactorization<Q>;
pub type DecoratedBandQ = DecoratedBand<Q>;
