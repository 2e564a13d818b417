//! Perfect matchings of a dimer: exact-cover enumeration, lattice points and
//! the matching polygon.

mod polygon;

use dimer_core::{Dimer, DimerError, Homology, Point};
use thiserror::Error;

pub use polygon::{affine_normal_form, matching_polygon, polygon_invariants, MatchingPolygon, PolygonInvariants};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("no perfect matchings")]
    NoMatchings,
    #[error(transparent)]
    Dimer(#[from] DimerError),
}

/// An arrow set meeting every face exactly once, with its lattice point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PerfectMatching {
    /// sorted, 0-based
    pub arrows: Vec<usize>,
    pub point: Point,
}

impl PerfectMatching {
    pub fn contains(&self, a: usize) -> bool {
        self.arrows.binary_search(&a).is_ok()
    }

    /// Indicator vector over all arrows.
    pub fn indicator(&self, arrow_count: usize) -> Vec<i64> {
        let mut v = vec![0; arrow_count];
        for &a in &self.arrows {
            v[a] = 1;
        }
        v
    }

    /// `⟨P, chain⟩`
    pub fn degree(&self, chain: &[i64]) -> i64 {
        self.arrows.iter().map(|&a| chain[a]).sum()
    }

    pub fn ids(&self) -> Vec<usize> {
        self.arrows.iter().map(|a| a + 1).collect()
    }
}

/// All perfect matchings as sorted arrow sets, in lexicographic order.
///
/// Faces are the columns of an exact cover problem and each arrow covers its
/// two faces; the search branches on the face with fewest usable arrows.
pub fn enumerate_matchings(d: &Dimer) -> Vec<Vec<usize>> {
    let f = d.face_count();
    let mut covered = vec![false; f];
    let mut chosen = Vec::new();
    let mut out = Vec::new();
    search(d, &mut covered, &mut chosen, &mut out);
    for m in out.iter_mut() {
        m.sort_unstable();
    }
    out.sort();
    out
}

fn usable(d: &Dimer, covered: &[bool], a: usize) -> bool {
    !covered[d.pos_face(a)] && !covered[d.neg_face(a)]
}

fn search(d: &Dimer, covered: &mut [bool], chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let mut best: Option<(usize, usize)> = None;
    for (fi, face) in d.faces().iter().enumerate() {
        if covered[fi] {
            continue;
        }
        let n = face.arrows.iter().filter(|&&a| usable(d, covered, a)).count();
        if best.is_none_or(|(_, m)| n < m) {
            best = Some((fi, n));
        }
    }
    let Some((fi, n)) = best else {
        out.push(chosen.clone());
        return;
    };
    if n == 0 {
        return;
    }
    for &a in &d.face(fi).arrows {
        if !usable(d, covered, a) {
            continue;
        }
        let (p, q) = (d.pos_face(a), d.neg_face(a));
        covered[p] = true;
        covered[q] = true;
        chosen.push(a);
        search(d, covered, chosen, out);
        chosen.pop();
        covered[p] = false;
        covered[q] = false;
    }
}

/// Whether `arrows` meets every face exactly once.
pub fn is_perfect_matching(d: &Dimer, arrows: &[usize]) -> bool {
    let mut hits = vec![0usize; d.face_count()];
    for &a in arrows {
        hits[d.pos_face(a)] += 1;
        hits[d.neg_face(a)] += 1;
    }
    hits.iter().all(|&h| h == 1)
}

/// Lattice point `(⟨P, z_X⟩, ⟨P, z_Y⟩)`.
pub fn matching_point(h: &Homology, arrows: &[usize]) -> Point {
    let b = h.basis();
    [arrows.iter().map(|&a| b[0][a]).sum(), arrows.iter().map(|&a| b[1][a]).sum()]
}

/// Enumerate and attach lattice points; requires a torus.
pub fn perfect_matchings(d: &Dimer, h: &Homology) -> Result<Vec<PerfectMatching>, MatchingError> {
    h.require_torus()?;
    Ok(enumerate_matchings(d)
        .into_iter()
        .map(|arrows| {
            let point = matching_point(h, &arrows);
            PerfectMatching { arrows, point }
        })
        .collect())
}
