use std::collections::BTreeSet;

use dimer_core::lattice::{self, Point};
use dimer_core::{corpus, from_int, parse_weights, Dimer, Homology, Q};
use dimer_tropical::*;
use proptest::prelude::*;

const TORI: [&str; 5] = ["torus1", "spp", "gallery1", "gallery2", "hexagon"];

fn q(n: i64) -> Q {
    from_int(n)
}

fn setup(name: &str) -> (Dimer, Homology) {
    let d = corpus::load(name);
    let h = Homology::new(&d).unwrap();
    (d, h)
}

fn hexagon_weights(d: &Dimer) -> Vec<Q> {
    parse_weights(corpus::HEXAGON_WEIGHTS, d.arrow_count()).unwrap()
}

fn ids(d: &Dimer, one_based: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = one_based.iter().map(|i| d.find_arrow(&i.to_string()).unwrap()).collect();
    v.sort();
    v
}

const HEXAGON_STABLE: [[usize; 4]; 7] =
    [[9, 6, 4, 14], [8, 2, 4, 16], [8, 2, 13, 12], [5, 15, 13, 10], [3, 15, 11, 7], [1, 6, 11, 7], [9, 15, 13, 14]];

fn hexagon_model() -> (Dimer, TropicalModelQ) {
    let (d, h) = setup("hexagon");
    let w = hexagon_weights(&d);
    let m = tropical_model(&d, &h, &w).unwrap();
    (d, m)
}

/// Whether lifted point `t` is a vertex of the lower hull, decided by
/// searching for a segment or triangle of other lifted points below it.
fn hull_vertex_oracle(points: &[Point], heights: &[Q], t: usize) -> bool {
    let p = points[t];
    let n = points.len();
    let others: Vec<usize> = (0..n).filter(|&i| i != t).collect();
    for (x, &i) in others.iter().enumerate() {
        for &j in &others[x + 1..] {
            let (u, v) = (lattice::sub(points[j], points[i]), lattice::sub(p, points[i]));
            if lattice::cross(u, v) == 0 {
                let s = lattice::dot(u, v);
                let l = lattice::dot(u, u);
                if s >= 0 && s <= l {
                    let lam = Q::new(s.into(), l.into());
                    let hgt = heights[i].clone() + lam * (heights[j].clone() - heights[i].clone());
                    if hgt <= heights[t] {
                        return false;
                    }
                }
            }
        }
    }
    for (x, &i) in others.iter().enumerate() {
        for (y, &j) in others.iter().enumerate().skip(x + 1) {
            for &k in &others[y + 1..] {
                let det = lattice::cross(lattice::sub(points[j], points[i]), lattice::sub(points[k], points[i]));
                if det == 0 {
                    continue;
                }
                let bj = lattice::cross(lattice::sub(p, points[i]), lattice::sub(points[k], points[i]));
                let bk = lattice::cross(lattice::sub(points[j], points[i]), lattice::sub(p, points[i]));
                let (bj, bk, bi) = (Q::new(bj.into(), det.into()), Q::new(bk.into(), det.into()), Q::new((det - bj - bk).into(), det.into()));
                if bi < q(0) || bj < q(0) || bk < q(0) {
                    continue;
                }
                let hgt = bi * heights[i].clone() + bj * heights[j].clone() + bk * heights[k].clone();
                if hgt <= heights[t] {
                    return false;
                }
            }
        }
    }
    true
}

fn weights_strategy(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-2i64..=3, n)
}

#[test]
fn theta_of_zero_weight_vanishes() {
    let (d, _) = setup("hexagon");
    assert!(theta(&d, &vec![q(0); d.arrow_count()]).unwrap().iter().all(|x| *x == q(0)));
}

#[test]
fn theta_of_hexagon_weight() {
    let (d, _) = setup("hexagon");
    let w = hexagon_weights(&d);
    let th = theta(&d, &w).unwrap();
    assert_eq!(th.iter().fold(q(0), |s, x| s + x.clone()), q(0));
    assert!(th.iter().any(|x| *x != q(0)));
    // direct sums over incidences
    for v in 0..d.vertex_count() {
        let mut s = q(0);
        for a in 0..d.arrow_count() {
            if d.head(a) == v {
                s += w[a].clone();
            }
            if d.tail(a) == v {
                s -= w[a].clone();
            }
        }
        assert_eq!(th[v], s);
    }
    let doubled: Vec<Q> = w.iter().map(|x| x.clone() * q(2)).collect();
    let th2 = theta(&d, &doubled).unwrap();
    assert!(th.iter().zip(&th2).all(|(a, b)| a.clone() * q(2) == *b));
}

#[test]
fn weight_count_is_checked() {
    let (d, h) = setup("hexagon");
    assert!(matches!(theta(&d, &[q(1)]), Err(TropicalError::WeightCount { .. })));
    assert!(matches!(tropical_model(&d, &h, &[q(1)]), Err(TropicalError::WeightCount { .. })));
}

#[test]
fn hexagon_subdivision_has_three_quadrangles() {
    let (_, m) = hexagon_model();
    let cells = &m.subdivision.cells;
    assert_eq!(cells.len(), 3);
    assert!(cells.iter().all(|c| c.corners.len() == 4));
    assert_eq!(m.spider.nodes.len(), 3);
    assert_eq!(m.spider.genera(), vec![0, 0, 1]);
}

#[test]
fn hexagon_stable_matchings_are_the_listed_seven() {
    let (d, m) = hexagon_model();
    let got: BTreeSet<Vec<usize>> = m.stable_matchings().iter().map(|&i| m.matchings[i].arrows.clone()).collect();
    let want: BTreeSet<Vec<usize>> = HEXAGON_STABLE.iter().map(|s| ids(&d, s)).collect();
    assert_eq!(got, want);
    let deg = m.degeneracy(&d).unwrap();
    assert!(deg.nondegenerate);
    assert!(!deg.generic);
}

#[test]
fn hexagon_stable_matchings_sit_on_the_subdivision_vertices() {
    let (_, m) = hexagon_model();
    let at = m.stable_at_vertices().unwrap();
    let vertices = m.subdivision.vertex.iter().filter(|&&v| v).count();
    assert_eq!(vertices, 7);
    assert_eq!(at.iter().flatten().count(), 7);
}

#[test]
fn zero_weight_gives_a_single_cell() {
    for name in TORI {
        let (d, h) = setup(name);
        let m = tropical_model(&d, &h, &vec![q(0); d.arrow_count()]).unwrap();
        let hull = &m.subdivision.cells;
        assert_eq!(hull.len(), 1, "{name}");
        let pts: Vec<Point> = m.poly.points();
        let np = lattice::convex_hull(&pts);
        let corners: Vec<Point> = hull[0].corners.iter().map(|&i| pts[i]).collect();
        assert_eq!(corners, np);
        assert_eq!(m.spider.nodes.len(), 1);
        assert_eq!(m.spider.nodes[0].genus, lattice::interior_points(&np));
        assert_eq!(m.spider.legs.len() as i64, lattice::boundary_points(&np));
        assert!(m.spider.edges.is_empty());
    }
}

#[test]
fn zero_weight_on_hexagon_is_nondegenerate_but_not_generic() {
    let (d, h) = setup("hexagon");
    let m = tropical_model(&d, &h, &vec![q(0); d.arrow_count()]).unwrap();
    let deg = m.degeneracy(&d).unwrap();
    assert!(deg.nondegenerate);
    assert!(!deg.generic);
    assert_eq!(deg.generic_character, Some(false));
    // semistable exactly at the corners
    let np = lattice::convex_hull(&m.poly.points());
    for (s, pm) in m.classify().iter().zip(&m.matchings) {
        assert_eq!(s.semistable, np.contains(&pm.point));
        assert_eq!(s.stable, s.semistable && m.poly.terms[m.poly.term_at(pm.point).unwrap()].owners.len() == 1);
    }
}

#[test]
fn nodes_satisfy_their_equalities() {
    let (_, m) = hexagon_model();
    for c in &m.subdivision.cells {
        let [x, y] = &c.node;
        let vals: Vec<Q> = c.points.iter().map(|&i| m.poly.term_value(&m.poly.terms[i], x, y)).collect();
        assert!(vals.iter().all(|v| *v == vals[0]));
        assert_eq!(m.poly.eval(x, y), vals[0]);
    }
}

#[test]
fn polytope_membership() {
    let (_, m) = hexagon_model();
    for r in [q(0), q(1), Q::new(5.into(), 2.into())] {
        assert!(polytope_contains(&m.poly, [0, 0, 0], &q(0)));
        assert!(polytope_contains(&m.poly, [0, 0, 1], &r));
        assert!(polytope_contains(&m.poly, [0, 0, 5], &r));
    }
    // the face cycle ℓ has degree one on every matching
    assert!(polytope_contains(&m.poly, [0, 0, 1], &q(1)));
    assert!(!polytope_contains(&m.poly, [0, 0, -1], &q(0)));
    // some term has nonzero c, so scaling r moves the boundary
    let cmax = m.poly.terms.iter().map(|t| t.c.clone()).fold(q(0), |a, b| if b > a { b } else { a });
    assert!(cmax > q(0));
    assert!(polytope_contains(&m.poly, [0, 0, 0], &q(1)) == m.poly.terms.iter().all(|t| t.c >= q(0)));
}

#[test]
fn hexagon_arrow_one_marks_only_matching_six() {
    let (d, m) = hexagon_model();
    let a = d.find_arrow("1").unwrap();
    let l = m.line_of_arrow(&d, a).unwrap();
    let six = ids(&d, &HEXAGON_STABLE[5]);
    let m6 = m.matchings.iter().position(|p| p.arrows == six).unwrap();
    assert_eq!(l.marked, vec![m.term_of(m6)]);
    assert!(l.leg_to_leg);
}

#[test]
fn hexagon_lines_and_trees() {
    let (d, m) = hexagon_model();
    for a in 0..d.arrow_count() {
        let l = m.line_of_arrow(&d, a).unwrap();
        assert!(l.contractible && l.complement_contractible, "arrow {}", a + 1);
        assert!(l.leg_to_leg, "arrow {}", a + 1);
        let (first, last) = (l.line[0], *l.line.last().unwrap());
        assert!(m.subdivision.edges[first].is_boundary() && m.subdivision.edges[last].is_boundary());
        // marked and complement partition the vertices
        let mut all = l.marked.clone();
        all.extend(&l.complement);
        all.sort();
        let vertices: Vec<usize> = (0..m.poly.terms.len()).filter(|&t| m.subdivision.vertex[t]).collect();
        assert_eq!(all, vertices);
    }
    for c in 0..d.face_count() {
        let t = m.face_tree(&d, c).unwrap();
        assert!(t.acyclic && t.connected, "face {}", c + 1);
        assert_eq!(t.legs, d.face(c).len());
    }
}

#[test]
fn single_cell_trees_are_a_single_node() {
    let (d, h) = setup("hexagon");
    let m = tropical_model(&d, &h, &vec![q(0); d.arrow_count()]).unwrap();
    for c in 0..d.face_count() {
        let t = m.face_tree(&d, c).unwrap();
        assert!(t.cells.len() <= 1);
        assert!(t.acyclic);
    }
}

#[test]
fn degenerate_weight_refuses_lines() {
    // the inconsistent gallery torus has three matchings at one corner
    let (d, h) = setup("gallery2");
    let m = tropical_model(&d, &h, &vec![q(0); d.arrow_count()]).unwrap();
    assert!(!m.degeneracy(&d).unwrap().nondegenerate);
    assert!(matches!(m.line_of_arrow(&d, 0), Err(TropicalError::Degenerate(_))));
    assert!(matches!(m.face_tree(&d, 0), Err(TropicalError::Degenerate(_))));
}

#[test]
fn hexagon_strip_complex() {
    let (d, m) = hexagon_model();
    let b = vec![q(1); d.arrow_count()];
    let s = m.strebel(&d, &b).unwrap();
    let mirror = d.mirror();
    let (g, n) = (mirror.genus(), mirror.vertex_count() as i64);
    assert_eq!(s.zero_order_sum(), 4 * g - 4 + 2 * n);
    let total: usize = (0..d.arrow_count()).map(|a| m.line_of_arrow(&d, a).unwrap().line.len()).sum();
    assert_eq!(s.strips.len(), total);
    let mut reversed = s.clone();
    reversed.strips.reverse();
    assert_eq!(s.area(), reversed.area());
    // every edge of every tree glues exactly two strips of that face
    let glued: usize = s.trees.iter().map(|t| t.edges.len()).sum();
    assert_eq!(s.gluings.len(), glued);
}

#[test]
fn strip_widths_must_be_positive() {
    let (d, m) = hexagon_model();
    let mut b = vec![q(1); d.arrow_count()];
    b[3] = q(0);
    assert!(matches!(m.strebel(&d, &b), Err(TropicalError::Strebel(_))));
}

#[test]
fn flat_points_have_no_subdivision() {
    let pts: Vec<Point> = vec![[0, 0], [1, 0], [2, 0]];
    assert_eq!(regular_subdivision(&pts, &[q(0), q(1), q(0)]), Err(TropicalError::FlatPolygon));
}

#[test]
fn unit_square_with_a_fold() {
    let pts: Vec<Point> = vec![[0, 0], [0, 1], [1, 0], [1, 1]];
    let s = regular_subdivision(&pts, &[q(0), q(0), q(0), q(1)]).unwrap();
    assert_eq!(s.cells.len(), 2);
    assert_eq!(s.inner_edges().count(), 1);
    let flat = regular_subdivision(&pts, &[q(0), q(0), q(0), q(0)]).unwrap();
    assert_eq!(flat.cells.len(), 1);
}

fn check_invariants(d: &Dimer, h: &Homology, w: &[Q]) -> Result<(), TestCaseError> {
    let m = tropical_model(d, h, w).unwrap();
    let np = lattice::convex_hull(&m.poly.points());
    prop_assert_eq!(m.spider.genus(), lattice::interior_points(&np));
    prop_assert_eq!(m.spider.legs.len() as i64, lattice::boundary_points(&np));
    // cells tile the polygon
    let area: i64 = m.subdivision.cells.iter().map(|c| c.twice_area).sum();
    prop_assert_eq!(area, lattice::twice_area(&np));
    for e in &m.curve.edges {
        let se = &m.subdivision.edges[e.edge];
        let along = lattice::sub(m.subdivision.points[se.ends[1]], m.subdivision.points[se.ends[0]]);
        prop_assert_eq!(lattice::dot(e.direction, along), 0);
        prop_assert_eq!(lattice::primitive(e.direction), e.direction);
        prop_assert!(e.length > q(0));
        let [a, b] = e.nodes;
        let dx = m.curve.nodes[b][0].clone() - m.curve.nodes[a][0].clone();
        let dy = m.curve.nodes[b][1].clone() - m.curve.nodes[a][1].clone();
        let p2 = q(e.direction[0] * e.direction[0] + e.direction[1] * e.direction[1]);
        prop_assert_eq!(e.length.clone() * e.length.clone() * p2, dx.clone() * dx + dy.clone() * dy);
    }
    for se in m.subdivision.edges.iter() {
        prop_assert!(se.length >= 1);
    }
    let status = m.classify();
    for (i, pm) in m.matchings.iter().enumerate() {
        let t = m.term_of(i);
        let oracle = m.lifts[i] == m.poly.terms[t].c && hull_vertex_oracle(&m.subdivision.points, &m.subdivision.heights, t);
        prop_assert_eq!(status[i].semistable, oracle);
        if np.contains(&pm.point) && m.poly.terms[t].c == m.lifts[i] {
            prop_assert!(status[i].semistable);
        }
    }
    let scaled: Vec<Q> = w.iter().map(|x| x.clone() * q(3)).collect();
    let m3 = tropical_model(d, h, &scaled).unwrap();
    prop_assert_eq!(m3.classify(), status);
    prop_assert_eq!(m3.degeneracy(d).unwrap(), m.degeneracy(d).unwrap());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tropical_invariants_for_random_weights(name in prop::sample::select(TORI.to_vec()), seed in weights_strategy(24)) {
        let (d, h) = setup(name);
        let w: Vec<Q> = (0..d.arrow_count()).map(|a| q(seed[a % seed.len()])).collect();
        check_invariants(&d, &h, &w)?;
    }

    #[test]
    fn rational_scaling_preserves_classification(num in 1i64..7, den in 1i64..7) {
        let (d, h) = setup("hexagon");
        let w = hexagon_weights(&d);
        let lam = Q::new(num.into(), den.into());
        let scaled: Vec<Q> = w.iter().map(|x| x.clone() * lam.clone()).collect();
        let (m, ms) = (tropical_model(&d, &h, &w).unwrap(), tropical_model(&d, &h, &scaled).unwrap());
        prop_assert_eq!(m.classify(), ms.classify());
        prop_assert_eq!(m.degeneracy(&d).unwrap(), ms.degeneracy(&d).unwrap());
    }

    #[test]
    fn corner_matchings_are_semistable(name in prop::sample::select(vec!["torus1", "spp", "gallery1", "hexagon"]), seed in weights_strategy(24)) {
        let (d, h) = setup(name);
        let w: Vec<Q> = (0..d.arrow_count()).map(|a| q(seed[a % seed.len()])).collect();
        let m = tropical_model(&d, &h, &w).unwrap();
        let np = lattice::convex_hull(&m.poly.points());
        let status = m.classify();
        for c in np {
            let t = m.poly.term_at(c).unwrap();
            prop_assert!(m.poly.terms[t].owners.iter().any(|&o| status[o].semistable));
        }
    }
}
