use std::cmp::Ordering;
use std::collections::BTreeMap;

use dimer_core::lattice::{self, Point};

use crate::{MatchingError, PerfectMatching};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingPolygon {
    /// lattice point → indices of the matchings sitting there
    pub points: BTreeMap<Point, Vec<usize>>,
    /// counterclockwise corners
    pub hull: Vec<Point>,
    pub boundary_count: i64,
    pub interior_count: i64,
    /// (primitive outward normal, lattice length), one per hull edge
    pub edge_normals: Vec<(Point, i64)>,
}

/// Data of a lattice polygon that survives integral-affine changes of basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolygonInvariants {
    pub interior: i64,
    pub boundary: i64,
    pub corners: usize,
    pub twice_area: i64,
    pub edge_lengths: Vec<i64>,
    /// corner list in a canonical position; equal iff the polygons are affinely equivalent
    pub normal_form: Vec<Point>,
}

pub fn matching_polygon(matchings: &[PerfectMatching]) -> Result<MatchingPolygon, MatchingError> {
    if matchings.is_empty() {
        return Err(MatchingError::NoMatchings);
    }
    let mut points: BTreeMap<Point, Vec<usize>> = BTreeMap::new();
    for (i, m) in matchings.iter().enumerate() {
        points.entry(m.point).or_default().push(i);
    }
    let pts: Vec<Point> = points.keys().copied().collect();
    let hull = lattice::convex_hull(&pts);
    Ok(MatchingPolygon {
        boundary_count: lattice::boundary_points(&hull),
        interior_count: lattice::interior_points(&hull),
        edge_normals: lattice::edge_normals(&hull),
        points,
        hull,
    })
}

impl MatchingPolygon {
    pub fn corner_count(&self) -> usize {
        self.hull.len()
    }

    pub fn is_corner(&self, p: Point) -> bool {
        self.hull.contains(&p)
    }

    pub fn multiplicity(&self, p: Point) -> usize {
        self.points.get(&p).map_or(0, Vec::len)
    }

    /// Lattice points of the hull that are not corners but lie on its boundary.
    pub fn boundary_non_corners(&self) -> Vec<Point> {
        lattice::lattice_points(&self.hull)
            .into_iter()
            .filter(|&p| lattice::locate(&self.hull, p) == Ordering::Equal && !self.is_corner(p))
            .collect()
    }

    pub fn lattice_points(&self) -> Vec<Point> {
        lattice::lattice_points(&self.hull)
    }

    /// Outward normals repeated by lattice length, sorted.
    pub fn normal_multiset(&self) -> Vec<Point> {
        let mut out: Vec<Point> =
            self.edge_normals.iter().flat_map(|&(n, len)| std::iter::repeat_n(n, len as usize)).collect();
        out.sort();
        out
    }

    pub fn invariants(&self) -> PolygonInvariants {
        polygon_invariants(&self.hull)
    }
}

pub fn polygon_invariants(hull: &[Point]) -> PolygonInvariants {
    let n = hull.len();
    let mut edge_lengths: Vec<i64> = if n >= 3 {
        (0..n).map(|i| lattice::lattice_length(hull[i], hull[(i + 1) % n])).collect()
    } else if n == 2 {
        vec![lattice::lattice_length(hull[0], hull[1])]
    } else {
        Vec::new()
    };
    edge_lengths.sort_unstable();
    PolygonInvariants {
        interior: lattice::interior_points(hull),
        boundary: lattice::boundary_points(hull),
        corners: n,
        twice_area: if n >= 3 { lattice::twice_area(hull) } else { 0 },
        edge_lengths,
        normal_form: affine_normal_form(hull),
    }
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.signum() * a, a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Unimodular matrix sending the primitive vector `v` to `(1, 0)`.
fn straighten(v: Point) -> [[i64; 2]; 2] {
    let (g, s, t) = ext_gcd(v[0], v[1]);
    debug_assert_eq!(g, 1);
    [[s, t], [-v[1], v[0]]]
}

fn apply(m: &[[i64; 2]; 2], p: Point) -> Point {
    [m[0][0] * p[0] + m[0][1] * p[1], m[1][0] * p[0] + m[1][1] * p[1]]
}

/// Canonical representative of a lattice polygon under `GL₂(ℤ) ⋉ ℤ²`:
/// every corner and both directions are tried, the first edge is sent to the
/// positive x-axis, the polygon to the upper half plane, the shear fixed by the
/// other edge at that corner, and the lexicographically least sorted corner
/// list is kept.
pub fn affine_normal_form(hull: &[Point]) -> Vec<Point> {
    let n = hull.len();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![[0, 0]];
    }
    if n == 2 {
        return vec![[0, 0], [lattice::lattice_length(hull[0], hull[1]), 0]];
    }
    let mut best: Option<Vec<Point>> = None;
    for i in 0..n {
        for dir in [1, n - 1] {
            let v = hull[i];
            let e1 = lattice::primitive(lattice::sub(hull[(i + dir) % n], v));
            let e2 = lattice::sub(hull[(i + n - dir) % n], v);
            let mut m = straighten(e1);
            let y2 = apply(&m, e2)[1];
            if y2 < 0 {
                m = [m[0], [-m[1][0], -m[1][1]]];
            }
            let w = apply(&m, e2);
            // shear x ↦ x − k·y with 0 ≤ x < y on the second edge
            let k = w[0].div_euclid(w[1]);
            let mut pts: Vec<Point> = hull
                .iter()
                .map(|&p| {
                    let q = apply(&m, lattice::sub(p, v));
                    [q[0] - k * q[1], q[1]]
                })
                .collect();
            pts.sort();
            if best.as_ref().is_none_or(|b| pts < *b) {
                best = Some(pts);
            }
        }
    }
    best.unwrap()
}
