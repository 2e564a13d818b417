//! The tropical curve dual to a subdivision and its spider graph.

use dimer_core::lattice::{self, Point};
use dimer_core::Scalar;

use crate::polynomial::int;
use crate::subdivision::Subdivision;
use crate::TropicalError;

/// Bounded edge dual to an inner subdivision edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropEdge<K> {
    pub edge: usize,
    /// node (= cell) indices
    pub nodes: [usize; 2],
    /// lattice length of the dual subdivision edge
    pub multiplicity: i64,
    /// `t` with `node₁ − node₀ = t·(p, q)`, `(p, q)` primitive
    pub length: K,
    pub direction: Point,
}

/// Half line dual to a boundary subdivision edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leg {
    pub edge: usize,
    pub node: usize,
    pub multiplicity: i64,
    /// primitive outward normal of the boundary edge
    pub direction: Point,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropCurve<K> {
    /// one per cell, same indices
    pub nodes: Vec<[K; 2]>,
    pub edges: Vec<TropEdge<K>>,
    pub legs: Vec<Leg>,
}

impl<K: Scalar> TropCurve<K> {
    pub fn from_subdivision(s: &Subdivision<K>) -> Result<TropCurve<K>, TropicalError> {
        let nodes: Vec<[K; 2]> = s.cells.iter().map(|c| c.node.clone()).collect();
        let mut edges = Vec::new();
        let mut legs = Vec::new();
        for (k, e) in s.edges.iter().enumerate() {
            let along = lattice::primitive(lattice::sub(s.points[e.ends[1]], s.points[e.ends[0]]));
            if e.is_boundary() {
                // ends are counterclockwise for the only cell, so the outer side is on the right
                legs.push(Leg { edge: k, node: e.cells[0], multiplicity: e.length, direction: [along[1], -along[0]] });
                continue;
            }
            let [c0, c1] = [e.cells[0], e.cells[1]];
            let dx = nodes[c1][0].clone() - nodes[c0][0].clone();
            let dy = nodes[c1][1].clone() - nodes[c0][1].clone();
            let perp = [-along[1], along[0]];
            if dx.clone() * int::<K>(perp[1]) != dy.clone() * int::<K>(perp[0]) {
                return Err(TropicalError::Inconsistent(c1));
            }
            let t = if perp[0] != 0 { dx / int::<K>(perp[0]) } else { dy / int::<K>(perp[1]) };
            let (length, direction) = if t < K::zero() { (K::zero() - t, [-perp[0], -perp[1]]) } else { (t, perp) };
            edges.push(TropEdge { edge: k, nodes: [c0, c1], multiplicity: e.length, length, direction });
        }
        Ok(TropCurve { nodes, edges, legs })
    }

    pub fn edge_of(&self, sub_edge: usize) -> Option<&TropEdge<K>> {
        self.edges.iter().find(|e| e.edge == sub_edge)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpiderNode {
    pub cell: usize,
    pub genus: i64,
}

/// One strand of a possibly multiple tropical edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpiderEdge<K> {
    pub nodes: [usize; 2],
    pub weight: K,
    /// subdivision edge it comes from
    pub edge: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpiderLeg {
    pub node: usize,
    pub edge: usize,
}

/// Nodes carry the interior count of their cell; a `k`-fold edge or leg
/// becomes `k` parallel ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpiderGraph<K> {
    pub nodes: Vec<SpiderNode>,
    pub edges: Vec<SpiderEdge<K>>,
    pub legs: Vec<SpiderLeg>,
}

impl<K: Scalar> SpiderGraph<K> {
    pub fn new(s: &Subdivision<K>, curve: &TropCurve<K>) -> SpiderGraph<K> {
        let nodes = s.cells.iter().enumerate().map(|(cell, c)| SpiderNode { cell, genus: c.interior }).collect();
        let mut edges = Vec::new();
        for e in &curve.edges {
            for _ in 0..e.multiplicity {
                edges.push(SpiderEdge { nodes: e.nodes, weight: e.length.clone(), edge: e.edge });
            }
        }
        let mut legs = Vec::new();
        for l in &curve.legs {
            for _ in 0..l.multiplicity {
                legs.push(SpiderLeg { node: l.node, edge: l.edge });
            }
        }
        SpiderGraph { nodes, edges, legs }
    }

    /// `Σ g_v + #E_int − #V + 1`
    pub fn genus(&self) -> i64 {
        self.nodes.iter().map(|n| n.genus).sum::<i64>() + self.edges.len() as i64 - self.nodes.len() as i64 + 1
    }

    pub fn genera(&self) -> Vec<i64> {
        let mut g: Vec<i64> = self.nodes.iter().map(|n| n.genus).collect();
        g.sort();
        g
    }
}
