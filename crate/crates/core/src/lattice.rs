//! Integer plane geometry: hulls, lattice lengths, Pick counts, angular order.

use std::cmp::Ordering;

pub type Point = [i64; 2];

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn sub(p: Point, q: Point) -> Point {
    [p[0] - q[0], p[1] - q[1]]
}

pub fn cross(u: Point, v: Point) -> i64 {
    u[0] * v[1] - u[1] * v[0]
}

pub fn dot(u: Point, v: Point) -> i64 {
    u[0] * v[0] + u[1] * v[1]
}

/// Number of lattice steps on the segment `pq`.
pub fn lattice_length(p: Point, q: Point) -> i64 {
    let d = sub(q, p);
    gcd(d[0], d[1])
}

pub fn primitive(v: Point) -> Point {
    let g = gcd(v[0], v[1]);
    if g == 0 {
        v
    } else {
        [v[0] / g, v[1] / g]
    }
}

/// Corners of the convex hull in counterclockwise order, starting from the
/// lexicographically smallest; collinear boundary points are dropped.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(sub(lower[lower.len() - 1], lower[lower.len() - 2]), sub(p, lower[lower.len() - 1])) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(sub(upper[upper.len() - 1], upper[upper.len() - 2]), sub(p, upper[upper.len() - 1])) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && lower[0] == lower[1] {
        lower.pop();
    }
    lower
}

/// Twice the signed area of a polygon given counterclockwise.
pub fn twice_area(poly: &[Point]) -> i64 {
    let n = poly.len();
    (0..n).map(|i| cross(poly[i], poly[(i + 1) % n])).sum()
}

/// Lattice points on the boundary of a convex polygon (or segment, or point).
pub fn boundary_points(poly: &[Point]) -> i64 {
    match poly.len() {
        0 => 0,
        1 => 1,
        2 => lattice_length(poly[0], poly[1]) + 1,
        n => (0..n).map(|i| lattice_length(poly[i], poly[(i + 1) % n])).sum(),
    }
}

/// Lattice points strictly inside a convex polygon, by Pick's theorem.
pub fn interior_points(poly: &[Point]) -> i64 {
    if poly.len() < 3 {
        return 0;
    }
    (twice_area(poly) - boundary_points(poly) + 2) / 2
}

/// Position of `p` relative to a counterclockwise convex polygon:
/// `Greater` inside, `Equal` on the boundary, `Less` outside.
pub fn locate(poly: &[Point], p: Point) -> Ordering {
    let n = poly.len();
    match n {
        0 => return Ordering::Less,
        1 => return if poly[0] == p { Ordering::Equal } else { Ordering::Less },
        2 => {
            let on = cross(sub(poly[1], poly[0]), sub(p, poly[0])) == 0
                && dot(sub(p, poly[0]), sub(p, poly[1])) <= 0;
            return if on { Ordering::Equal } else { Ordering::Less };
        }
        _ => {}
    }
    let mut boundary = false;
    for i in 0..n {
        let c = cross(sub(poly[(i + 1) % n], poly[i]), sub(p, poly[i]));
        if c < 0 {
            return Ordering::Less;
        }
        if c == 0 {
            boundary = true;
        }
    }
    if boundary {
        Ordering::Equal
    } else {
        Ordering::Greater
    }
}

/// All lattice points of a convex polygon, boundary included, sorted.
pub fn lattice_points(poly: &[Point]) -> Vec<Point> {
    if poly.is_empty() {
        return Vec::new();
    }
    let (x0, x1) = (poly.iter().map(|p| p[0]).min().unwrap(), poly.iter().map(|p| p[0]).max().unwrap());
    let (y0, y1) = (poly.iter().map(|p| p[1]).min().unwrap(), poly.iter().map(|p| p[1]).max().unwrap());
    let mut out = Vec::new();
    for x in x0..=x1 {
        for y in y0..=y1 {
            if locate(poly, [x, y]) != Ordering::Less {
                out.push([x, y]);
            }
        }
    }
    out
}

/// Outward primitive normals with lattice lengths for a counterclockwise polygon.
pub fn edge_normals(poly: &[Point]) -> Vec<(Point, i64)> {
    let n = poly.len();
    if n < 3 {
        return Vec::new();
    }
    (0..n)
        .map(|i| {
            let d = sub(poly[(i + 1) % n], poly[i]);
            let len = gcd(d[0], d[1]);
            ([d[1] / len, -d[0] / len], len)
        })
        .collect()
}

fn half(v: Point) -> u8 {
    if v[1] > 0 || (v[1] == 0 && v[0] > 0) {
        0
    } else {
        1
    }
}

/// Counterclockwise polar-angle order of nonzero vectors starting at the positive x-axis.
pub fn angle_cmp(u: Point, v: Point) -> Ordering {
    half(u).cmp(&half(v)).then_with(|| 0.cmp(&cross(u, v)))
}

/// Whether the cyclic sequence of nonzero vectors turns monotonically
/// counterclockwise once around the origin (equal neighbours allowed).
pub fn weakly_ccw_ordered(seq: &[Point]) -> bool {
    let n = seq.len();
    if n <= 2 {
        return true;
    }
    let descents = (0..n).filter(|&i| angle_cmp(seq[(i + 1) % n], seq[i]) == Ordering::Less).count();
    descents <= 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_and_pick() {
        let pts = [[0, 0], [2, 0], [0, 2], [1, 1], [1, 0], [2, 2]];
        let h = convex_hull(&pts);
        assert_eq!(h, vec![[0, 0], [2, 0], [2, 2], [0, 2]]);
        assert_eq!(boundary_points(&h), 8);
        assert_eq!(interior_points(&h), 1);
        assert_eq!(lattice_points(&h).len(), 9);
    }

    #[test]
    fn ccw_order_detects_double_winding() {
        let once = [[1, 0], [0, 1], [-1, 0], [0, -1]];
        assert!(weakly_ccw_ordered(&once));
        let backwards = [[1, 0], [0, -1], [-1, 0], [0, 1]];
        assert!(!weakly_ccw_ordered(&backwards));
        let twice = [[1, 0], [-1, 0], [1, 0], [-1, 1]];
        assert!(!weakly_ccw_ordered(&twice));
    }
}
