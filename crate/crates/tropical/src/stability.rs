//! Stability of perfect matchings with respect to `θ_W`.
//!
//! A matching is semistable when its lifted point is a vertex of the lower
//! hull, i.e. its linear form is the unique minimum on an open region and
//! cuts out a facet of `PT_f`. Lifted points in the relative interior of a
//! lower edge or facet only touch `PT_f` in a lower-dimensional face; they are
//! reported through `face_dim` but not counted as semistable, which is what
//! makes `W = 0` nondegenerate.

use dimer_core::{Dimer, Homology, Scalar};

use crate::model::{tropical_model, TropicalModel};
use crate::polynomial::theta;
use crate::subdivision::Carrier;
use crate::TropicalError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchingStatus {
    pub semistable: bool,
    pub stable: bool,
    /// dimension of the face of `PT_f` on which the lifted point lies:
    /// 2 at a hull vertex, 1 inside a lower edge, 0 inside a lower facet,
    /// `None` above the hull
    pub face_dim: Option<u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Degeneracy {
    /// every semistable matching is stable
    pub nondegenerate: bool,
    /// `θ·β ≠ 0` for all 0/1 vectors `β ∉ {0, 1}`; `None` beyond 24 vertices
    pub generic_character: Option<bool>,
    /// nondegenerate and every cell a unimodular triangle
    pub generic: bool,
}

pub fn classify_matchings<K: Scalar>(d: &Dimer, h: &Homology, w: &[K]) -> Result<Vec<MatchingStatus>, TropicalError> {
    Ok(tropical_model(d, h, w)?.classify())
}

pub fn degeneracy<K: Scalar>(d: &Dimer, h: &Homology, w: &[K]) -> Result<Degeneracy, TropicalError> {
    tropical_model(d, h, w)?.degeneracy(d)
}

/// Whether no proper nonempty vertex subset has zero `θ`-weight.
pub fn generic_character<K: Scalar>(theta: &[K]) -> Option<bool> {
    let n = theta.len();
    if n > 24 {
        return None;
    }
    let full = (1u32 << n) - 1;
    Some((1..full).all(|mask| {
        let s = (0..n).filter(|i| mask >> i & 1 == 1).fold(K::zero(), |s, i| s + theta[i].clone());
        !s.is_zero()
    }))
}

impl<K: Scalar> TropicalModel<K> {
    pub fn classify(&self) -> Vec<MatchingStatus> {
        let s = &self.subdivision;
        (0..self.matchings.len())
            .map(|m| {
                let t = self.term_of(m);
                let term = &self.poly.terms[t];
                let face_dim = if self.lifts[m] != term.c || !s.on_hull[t] {
                    None
                } else if s.vertex[t] {
                    Some(2)
                } else {
                    match s.carrier(t) {
                        Some(Carrier::Edge(_)) => Some(1),
                        _ => Some(0),
                    }
                };
                let semistable = face_dim == Some(2);
                let minimal = term.owners.iter().filter(|&&o| self.lifts[o] == term.c).count();
                MatchingStatus { semistable, stable: semistable && minimal == 1, face_dim }
            })
            .collect()
    }

    pub fn stable_matchings(&self) -> Vec<usize> {
        self.classify().iter().enumerate().filter(|(_, s)| s.stable).map(|(i, _)| i).collect()
    }

    pub fn degeneracy(&self, d: &Dimer) -> Result<Degeneracy, TropicalError> {
        let nondegenerate = self.classify().iter().all(|s| s.stable || !s.semistable);
        let th = theta(d, &self.weights)?;
        let unimodular = self.subdivision.cells.iter().all(|c| c.twice_area == 1);
        Ok(Degeneracy { nondegenerate, generic_character: generic_character(&th), generic: nondegenerate && unimodular })
    }

    /// The stable matching at every subdivision vertex; requires a
    /// nondegenerate weight.
    pub fn stable_at_vertices(&self) -> Result<Vec<Option<usize>>, TropicalError> {
        let status = self.classify();
        let mut at = vec![None; self.poly.terms.len()];
        for (t, term) in self.poly.terms.iter().enumerate() {
            if !self.subdivision.vertex[t] {
                continue;
            }
            let stable: Vec<usize> = term.owners.iter().copied().filter(|&o| status[o].stable).collect();
            match stable[..] {
                [m] => at[t] = Some(m),
                _ => {
                    return Err(TropicalError::Degenerate(format!(
                        "{} stable matchings at ({}, {})",
                        stable.len(),
                        term.point[0],
                        term.point[1]
                    )))
                }
            }
        }
        Ok(at)
    }
}
