use dimer_core::{Dimer, Homology, Scalar};
use dimer_matching::{perfect_matchings, MatchingError, PerfectMatching};

use crate::curve::{SpiderGraph, TropCurve};
use crate::polynomial::{check_weights, lift, TropicalPolynomial};
use crate::subdivision::{regular_subdivision, Subdivision};
use crate::TropicalError;

/// Everything derived from a weight function on a torus dimer.
///
/// Subdivision point indices are term indices of `poly`, and node indices of
/// the curve and the spider graph are cell indices.
#[derive(Debug, Clone)]
pub struct TropicalModel<K> {
    pub weights: Vec<K>,
    pub matchings: Vec<PerfectMatching>,
    /// `Σ_{a∈P} W_a` per matching
    pub lifts: Vec<K>,
    pub poly: TropicalPolynomial<K>,
    pub subdivision: Subdivision<K>,
    pub curve: TropCurve<K>,
    pub spider: SpiderGraph<K>,
}

pub fn tropical_model<K: Scalar>(d: &Dimer, h: &Homology, w: &[K]) -> Result<TropicalModel<K>, TropicalError> {
    check_weights(d, w)?;
    let matchings = perfect_matchings(d, h)?;
    if matchings.is_empty() {
        return Err(MatchingError::NoMatchings.into());
    }
    TropicalModel::from_matchings(matchings, w.to_vec())
}

impl<K: Scalar> TropicalModel<K> {
    pub fn from_matchings(matchings: Vec<PerfectMatching>, weights: Vec<K>) -> Result<TropicalModel<K>, TropicalError> {
        let lifts: Vec<K> = matchings.iter().map(|m| lift(m, &weights)).collect();
        let poly = TropicalPolynomial::new(&matchings, &lifts);
        let heights: Vec<K> = poly.terms.iter().map(|t| t.c.clone()).collect();
        let subdivision = regular_subdivision(&poly.points(), &heights)?;
        for (ci, cell) in subdivision.cells.iter().enumerate() {
            let [x, y] = &cell.node;
            let value = poly.eval(x, y);
            for (i, t) in poly.terms.iter().enumerate() {
                let tied = poly.term_value(t, x, y) == value;
                if tied != cell.points.contains(&i) {
                    return Err(TropicalError::Inconsistent(ci));
                }
            }
        }
        let curve = TropCurve::from_subdivision(&subdivision)?;
        let spider = SpiderGraph::new(&subdivision, &curve);
        Ok(TropicalModel { weights, matchings, lifts, poly, subdivision, curve, spider })
    }

    /// Term index of the lattice point of matching `m`.
    pub fn term_of(&self, m: usize) -> usize {
        self.poly.term_at(self.matchings[m].point).expect("every matching has a term")
    }
}
