//! Combinatorial assembly of the horizontal strips of the Strebel
//! differential on the mirror.
//!
//! Every arrow `a` contributes one strip per tropical edge `e` on `line_a`,
//! of size `w_e × B_a` (legs give half-infinite strips). Inside a face `c`
//! the two strips over an edge of `tree(c)` are glued, and a node of `tree(c)`
//! of valency `k` is where `2k` strips meet: a zero of order `k − 2`.

use dimer_core::{Dimer, Homology, Scalar};

use crate::lines::{LineReport, TreeReport};
use crate::model::{tropical_model, TropicalModel};
use crate::TropicalError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strip<K> {
    pub arrow: usize,
    /// subdivision edge dual to the tropical edge or leg
    pub edge: usize,
    /// affine length of the tropical edge; `None` on a leg
    pub width: Option<K>,
    pub height: K,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gluing {
    pub face: usize,
    pub edge: usize,
    pub strips: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Zero {
    pub face: usize,
    pub cell: usize,
    pub order: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StripComplex<K> {
    pub strips: Vec<Strip<K>>,
    pub gluings: Vec<Gluing>,
    pub zeros: Vec<Zero>,
    pub lines: Vec<LineReport>,
    pub trees: Vec<TreeReport>,
}

impl<K: Scalar> StripComplex<K> {
    pub fn zero_order_sum(&self) -> i64 {
        self.zeros.iter().map(|z| z.order).sum()
    }

    /// `Σ w_e·B_a` over the bounded strips.
    pub fn area(&self) -> K {
        self.strips
            .iter()
            .filter_map(|s| s.width.clone().map(|w| w * s.height.clone()))
            .fold(K::zero(), |x, y| x + y)
    }
}

pub fn strebel_strips<K: Scalar>(d: &Dimer, h: &Homology, w: &[K], b: &[K]) -> Result<StripComplex<K>, TropicalError> {
    tropical_model(d, h, w)?.strebel(d, b)
}

impl<K: Scalar> TropicalModel<K> {
    pub fn strebel(&self, d: &Dimer, b: &[K]) -> Result<StripComplex<K>, TropicalError> {
        if b.len() != d.arrow_count() {
            return Err(TropicalError::WeightCount { expected: d.arrow_count(), got: b.len() });
        }
        if let Some(a) = b.iter().position(|x| *x <= K::zero()) {
            return Err(TropicalError::Strebel(format!("width of arrow {} is not positive", a + 1)));
        }
        let fail = |what: String| Err(TropicalError::Strebel(what));
        let mut lines = Vec::new();
        for a in 0..d.arrow_count() {
            let l = self.line_of_arrow(d, a)?;
            if !(l.contractible && l.complement_contractible && l.leg_to_leg) {
                return fail(format!("line of arrow {} is not a contractible leg-to-leg path", a + 1));
            }
            lines.push(l);
        }
        let mut trees = Vec::new();
        for c in 0..d.face_count() {
            let t = self.face_tree(d, c)?;
            if !(t.acyclic && t.connected) {
                return fail(format!("tree of face {} is not a tree", c + 1));
            }
            trees.push(t);
        }

        let mut strips = Vec::new();
        let mut index = vec![Vec::new(); d.arrow_count()];
        for l in &lines {
            for &e in &l.line {
                index[l.arrow].push((e, strips.len()));
                let width = self.curve.edge_of(e).map(|t| t.length.clone());
                strips.push(Strip { arrow: l.arrow, edge: e, width, height: b[l.arrow].clone() });
            }
        }
        let mut gluings = Vec::new();
        let mut zeros = Vec::new();
        for t in &trees {
            for &e in &t.edges {
                let found: Vec<usize> = d
                    .face(t.face)
                    .arrows
                    .iter()
                    .filter_map(|&a| index[a].iter().find(|(x, _)| *x == e).map(|&(_, s)| s))
                    .collect();
                match found[..] {
                    [s0, s1] => gluings.push(Gluing { face: t.face, edge: e, strips: [s0, s1] }),
                    _ => return fail(format!("{} lines of face {} cross edge {}", found.len(), t.face + 1, e)),
                }
            }
            for &(cell, k) in &t.valency {
                zeros.push(Zero { face: t.face, cell, order: k as i64 - 2 });
            }
        }
        Ok(StripComplex { strips, gluings, zeros, lines, trees })
    }
}
