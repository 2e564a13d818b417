//! Where the arrows and faces of the mirror sit on the tropical curve.
//!
//! For an arrow `a`, `C_a` is the full subcomplex of the subdivision on the
//! vertices whose stable matching contains `a`, and `C_{r_a⁺}` the one on the
//! vertices whose stable matching meets the rest of the positive face of
//! `a`. The tropical edges dual to subdivision edges joining the two sides
//! form `line_a`. For a face `c`, the dual edges of subdivision edges whose
//! ends lie in different `C_{a_i}` form `tree(c)`.

use std::collections::BTreeSet;

use dimer_core::{Dimer, Homology, Scalar};

use crate::model::{tropical_model, TropicalModel};
use crate::TropicalError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineReport {
    pub arrow: usize,
    /// subdivision vertices of `C_a`
    pub marked: Vec<usize>,
    /// subdivision vertices of `C_{r_a⁺}`
    pub complement: Vec<usize>,
    pub contractible: bool,
    pub complement_contractible: bool,
    /// subdivision edges crossed, in order; the dual of each is a tropical edge or leg
    pub line: Vec<usize>,
    /// cells passed between consecutive entries of `line`
    pub cells: Vec<usize>,
    /// `line` is a single path from a leg to a leg through every separating edge
    pub leg_to_leg: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeReport {
    pub face: usize,
    /// subdivision edges whose duals form the tree
    pub edges: Vec<usize>,
    pub cells: Vec<usize>,
    pub legs: usize,
    /// `(cell, number of tree edges and legs at it)`
    pub valency: Vec<(usize, usize)>,
    pub acyclic: bool,
    pub connected: bool,
}

pub fn line_of_arrow<K: Scalar>(d: &Dimer, h: &Homology, w: &[K], a: usize) -> Result<LineReport, TropicalError> {
    tropical_model(d, h, w)?.line_of_arrow(d, a)
}

pub fn face_tree<K: Scalar>(d: &Dimer, h: &Homology, w: &[K], c: usize) -> Result<TreeReport, TropicalError> {
    tropical_model(d, h, w)?.face_tree(d, c)
}

impl<K: Scalar> TropicalModel<K> {
    fn vertices_containing(&self, at: &[Option<usize>], arrows: &[usize]) -> Vec<usize> {
        (0..at.len())
            .filter(|&t| at[t].is_some_and(|m| arrows.iter().any(|&a| self.matchings[m].contains(a))))
            .collect()
    }

    /// Connected and of Euler characteristic one.
    pub fn is_contractible(&self, marked: &[usize]) -> bool {
        if marked.is_empty() {
            return false;
        }
        let s = &self.subdivision;
        let inside = |t: usize| marked.contains(&t);
        let edges: Vec<[usize; 2]> = s.edges.iter().map(|e| e.ends).filter(|e| inside(e[0]) && inside(e[1])).collect();
        let cells = s.cells.iter().filter(|c| c.corners.iter().all(|&t| inside(t))).count();
        let mut comp = UnionFind::new(s.points.len());
        for e in &edges {
            comp.union(e[0], e[1]);
        }
        let roots: BTreeSet<usize> = marked.iter().map(|&t| comp.find(t)).collect();
        roots.len() == 1 && marked.len() as i64 - edges.len() as i64 + cells as i64 == 1
    }

    fn cell_edges(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.subdivision.cells.len()];
        for (k, e) in self.subdivision.edges.iter().enumerate() {
            for &c in &e.cells {
                out[c].push(k);
            }
        }
        out
    }

    pub fn line_of_arrow(&self, d: &Dimer, a: usize) -> Result<LineReport, TropicalError> {
        let at = self.stable_at_vertices()?;
        let f = d.pos_face(a);
        let rest: Vec<usize> = d.face(f).arrows.iter().copied().filter(|&b| b != a).collect();
        let marked = self.vertices_containing(&at, &[a]);
        let complement = self.vertices_containing(&at, &rest);
        if marked.is_empty() && complement.is_empty() {
            return Err(TropicalError::NoStableMatching(a));
        }
        let s = &self.subdivision;
        let separating: Vec<bool> =
            s.edges.iter().map(|e| marked.contains(&e.ends[0]) != marked.contains(&e.ends[1])).collect();
        let cell_edges = self.cell_edges();

        let start = s.edges.iter().position(|e| e.is_boundary() && marked.contains(&e.ends[0]) && !marked.contains(&e.ends[1]));
        let mut line = Vec::new();
        let mut cells = Vec::new();
        let mut ok = false;
        if let Some(e0) = start {
            line.push(e0);
            let mut e = e0;
            let mut c = s.edges[e0].cells[0];
            loop {
                let seps: Vec<usize> = cell_edges[c].iter().copied().filter(|&k| separating[k]).collect();
                if seps.len() != 2 || line.len() > s.edges.len() {
                    break;
                }
                let next = if seps[0] == e { seps[1] } else { seps[0] };
                cells.push(c);
                line.push(next);
                if s.edges[next].is_boundary() {
                    ok = true;
                    break;
                }
                let other = &s.edges[next].cells;
                c = if other[0] == c { other[1] } else { other[0] };
                e = next;
            }
        }
        let used: BTreeSet<usize> = line.iter().copied().collect();
        let leg_to_leg = ok && used.len() == line.len() && used.len() == separating.iter().filter(|&&x| x).count();
        Ok(LineReport {
            arrow: a,
            contractible: self.is_contractible(&marked),
            complement_contractible: self.is_contractible(&complement),
            marked,
            complement,
            line,
            cells,
            leg_to_leg,
        })
    }

    pub fn face_tree(&self, d: &Dimer, c: usize) -> Result<TreeReport, TropicalError> {
        let at = self.stable_at_vertices()?;
        let arrows = &d.face(c).arrows;
        let part = |t: usize| at[t].and_then(|m| arrows.iter().position(|&b| self.matchings[m].contains(b)));
        let s = &self.subdivision;
        let edges: Vec<usize> = (0..s.edges.len()).filter(|&k| part(s.edges[k].ends[0]) != part(s.edges[k].ends[1])).collect();
        let mut valency = vec![0usize; s.cells.len()];
        let mut comp = UnionFind::new(s.cells.len());
        let mut inner = 0;
        let mut legs = 0;
        for &k in &edges {
            let e = &s.edges[k];
            for &cell in &e.cells {
                valency[cell] += 1;
            }
            if e.is_boundary() {
                legs += 1;
            } else {
                inner += 1;
                comp.union(e.cells[0], e.cells[1]);
            }
        }
        let cells: Vec<usize> = (0..s.cells.len()).filter(|&x| valency[x] > 0).collect();
        let components: BTreeSet<usize> = cells.iter().map(|&x| comp.find(x)).collect();
        Ok(TreeReport {
            face: c,
            valency: cells.iter().map(|&x| (x, valency[x])).collect(),
            acyclic: inner + components.len() == cells.len(),
            connected: components.len() == 1,
            edges,
            cells,
            legs,
        })
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[x] = r;
        r
    }

    fn union(&mut self, x: usize, y: usize) {
        let (a, b) = (self.find(x), self.find(y));
        self.0[a] = b;
    }
}
