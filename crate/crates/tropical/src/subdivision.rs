//! Regular subdivision of a lattice polygon by the lower hull of lifted points.

use std::collections::BTreeMap;

use dimer_core::lattice::{self, Point};
use dimer_core::Scalar;

use crate::polynomial::int;
use crate::TropicalError;

/// A two-dimensional lower face projected to the plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell<K> {
    /// indices of all lifted points on the face
    pub points: Vec<usize>,
    /// counterclockwise corners, as point indices
    pub corners: Vec<usize>,
    pub interior: i64,
    pub twice_area: i64,
    /// `(X, Y)` at which the linear forms of `points` tie
    pub node: [K; 2],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubEdge {
    /// corner indices, in counterclockwise order for `cells[0]`
    pub ends: [usize; 2],
    pub length: i64,
    /// one cell for an edge on the boundary, two for an inner edge
    pub cells: Vec<usize>,
}

impl SubEdge {
    pub fn is_boundary(&self) -> bool {
        self.cells.len() == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subdivision<K> {
    pub points: Vec<Point>,
    pub heights: Vec<K>,
    pub cells: Vec<Cell<K>>,
    pub edges: Vec<SubEdge>,
    /// lifted point lies on the lower hull
    pub on_hull: Vec<bool>,
    /// point is a corner of some cell
    pub vertex: Vec<bool>,
}

impl<K: Scalar> Subdivision<K> {
    pub fn inner_edges(&self) -> impl Iterator<Item = (usize, &SubEdge)> {
        self.edges.iter().enumerate().filter(|(_, e)| !e.is_boundary())
    }

    pub fn boundary_edges(&self) -> impl Iterator<Item = (usize, &SubEdge)> {
        self.edges.iter().enumerate().filter(|(_, e)| e.is_boundary())
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.iter().position(|e| e.ends == [u, v] || e.ends == [v, u])
    }

    /// Index of the cell containing point `i` in its relative interior, or of
    /// the edge containing it; `None` for corners and points off the hull.
    pub fn carrier(&self, i: usize) -> Option<Carrier> {
        if !self.on_hull[i] || self.vertex[i] {
            return None;
        }
        let p = self.points[i];
        for (k, e) in self.edges.iter().enumerate() {
            let (u, v) = (self.points[e.ends[0]], self.points[e.ends[1]]);
            if lattice::cross(lattice::sub(v, u), lattice::sub(p, u)) == 0 {
                let t = lattice::dot(lattice::sub(v, u), lattice::sub(p, u));
                if t > 0 && t < lattice::dot(lattice::sub(v, u), lattice::sub(v, u)) {
                    return Some(Carrier::Edge(k));
                }
            }
        }
        self.cells.iter().position(|c| c.points.contains(&i)).map(Carrier::Cell)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Carrier {
    Edge(usize),
    Cell(usize),
}

type Lifted<K> = [K; 3];

fn lifted<K: Scalar>(p: Point, h: &K) -> Lifted<K> {
    [int(p[0]), int(p[1]), h.clone()]
}

fn diff<K: Scalar>(a: &Lifted<K>, b: &Lifted<K>) -> Lifted<K> {
    [a[0].clone() - b[0].clone(), a[1].clone() - b[1].clone(), a[2].clone() - b[2].clone()]
}

fn cross3<K: Scalar>(u: &Lifted<K>, v: &Lifted<K>) -> Lifted<K> {
    [
        u[1].clone() * v[2].clone() - u[2].clone() * v[1].clone(),
        u[2].clone() * v[0].clone() - u[0].clone() * v[2].clone(),
        u[0].clone() * v[1].clone() - u[1].clone() * v[0].clone(),
    ]
}

fn dot3<K: Scalar>(u: &Lifted<K>, v: &Lifted<K>) -> K {
    u[0].clone() * v[0].clone() + u[1].clone() * v[1].clone() + u[2].clone() * v[2].clone()
}

/// Project the lower faces of `{(p_i, h_i)}` to the plane.
///
/// Every plane through three affinely independent lifted points is tested
/// against all others; planes with every point on or above them are the lower
/// facets. Points must be distinct.
pub fn regular_subdivision<K: Scalar>(points: &[Point], heights: &[K]) -> Result<Subdivision<K>, TropicalError> {
    let n = points.len();
    let lift: Vec<Lifted<K>> = points.iter().zip(heights).map(|(&p, h)| lifted(p, h)).collect();
    let mut faces: Vec<(Vec<usize>, Lifted<K>)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if lattice::cross(lattice::sub(points[j], points[i]), lattice::sub(points[k], points[i])) == 0 {
                    continue;
                }
                if faces.iter().any(|(s, _)| s.contains(&i) && s.contains(&j) && s.contains(&k)) {
                    continue;
                }
                let mut normal = cross3(&diff(&lift[j], &lift[i]), &diff(&lift[k], &lift[i]));
                if normal[2] < K::zero() {
                    normal = normal.map(|x| K::zero() - x);
                }
                let mut on = Vec::new();
                let mut lower = true;
                for (l, q) in lift.iter().enumerate() {
                    let s = dot3(&normal, &diff(q, &lift[i]));
                    if s < K::zero() {
                        lower = false;
                        break;
                    }
                    if s.is_zero() {
                        on.push(l);
                    }
                }
                if lower {
                    faces.push((on, normal));
                }
            }
        }
    }
    if faces.is_empty() {
        return Err(TropicalError::FlatPolygon);
    }

    let mut cells = Vec::new();
    for (on, normal) in faces {
        let pts: Vec<Point> = on.iter().map(|&i| points[i]).collect();
        let hull = lattice::convex_hull(&pts);
        let corners: Vec<usize> = hull.iter().map(|c| on[pts.iter().position(|p| p == c).expect("corner")]).collect();
        let node = [normal[0].clone() / normal[2].clone(), normal[1].clone() / normal[2].clone()];
        cells.push(Cell {
            points: on,
            corners,
            interior: lattice::interior_points(&hull),
            twice_area: lattice::twice_area(&hull),
            node,
        });
    }
    cells.sort_by(|a, b| a.corners.cmp(&b.corners));

    let mut by_key: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut edges: Vec<SubEdge> = Vec::new();
    for (ci, cell) in cells.iter().enumerate() {
        let m = cell.corners.len();
        for t in 0..m {
            let (u, v) = (cell.corners[t], cell.corners[(t + 1) % m]);
            let key = (u.min(v), u.max(v));
            match by_key.get(&key) {
                Some(&e) => edges[e].cells.push(ci),
                None => {
                    by_key.insert(key, edges.len());
                    edges.push(SubEdge { ends: [u, v], length: lattice::lattice_length(points[u], points[v]), cells: vec![ci] });
                }
            }
        }
    }

    let mut on_hull = vec![false; n];
    let mut vertex = vec![false; n];
    for c in &cells {
        for &i in &c.points {
            on_hull[i] = true;
        }
        for &i in &c.corners {
            vertex[i] = true;
        }
    }
    Ok(Subdivision { points: points.to_vec(), heights: heights.to_vec(), cells, edges, on_hull, vertex })
}
