//! Tropical geometry of a weighted dimer: the character `θ_W`, the tropical
//! polynomial `f_W`, its regular subdivision, tropical curve and spider graph,
//! stability of perfect matchings, the lines and trees that place the mirror
//! on the spider graph, and the strip complex built from them.

pub mod curve;
pub mod lines;
pub mod model;
pub mod polynomial;
pub mod stability;
pub mod strebel;
pub mod subdivision;

use dimer_core::{DimerError, Q};
use dimer_matching::MatchingError;
use thiserror::Error;

pub use curve::{Leg, SpiderEdge, SpiderGraph, SpiderLeg, SpiderNode, TropCurve, TropEdge};
pub use lines::{face_tree, line_of_arrow, LineReport, TreeReport};
pub use model::{tropical_model, TropicalModel};
pub use polynomial::{lift, polytope_contains, theta, Term, TropicalPolynomial};
pub use stability::{classify_matchings, degeneracy, Degeneracy, MatchingStatus};
pub use strebel::{strebel_strips, Gluing, Strip, StripComplex, Zero};
pub use subdivision::{regular_subdivision, Cell, SubEdge, Subdivision};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TropicalError {
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("Newton polygon is not two-dimensional")]
    FlatPolygon,
    #[error("tropical node of cell {0} does not satisfy its equalities")]
    Inconsistent(usize),
    #[error("weight is degenerate: {0}")]
    Degenerate(String),
    #[error("arrow {0} lies in no stable matching on either side")]
    NoStableMatching(usize),
    #[error("strip assembly failed: {0}")]
    Strebel(String),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Dimer(#[from] DimerError),
}

pub type TropicalPolynomialQ = TropicalPolynomial<Q>;
pub type TropicalModelQ = TropicalModel<Q>;
pub type StripComplexQ = StripComplex<Q>;
