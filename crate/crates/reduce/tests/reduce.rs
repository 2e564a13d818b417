use dimer_core::{corpus, from_int, parse_weights, Dimer, Homology, Q};
use dimer_matching::{enumerate_matchings, matching_polygon, perfect_matchings, polygon_invariants};
use dimer_reduce::*;
use dimer_tropical::{tropical_model, TropicalModelQ};
use dimer_zigzag::zigzag_cycles;
use proptest::prelude::*;

fn setup(name: &str) -> (Dimer, Homology) {
    let d = corpus::load(name);
    let h = Homology::new(&d).unwrap();
    (d, h)
}

fn hexagon() -> (Dimer, Homology, TropicalModelQ) {
    let (d, h) = setup("hexagon");
    let w: Vec<Q> = parse_weights(corpus::HEXAGON_WEIGHTS, d.arrow_count()).unwrap();
    let m = tropical_model(&d, &h, &w).unwrap();
    (d, h, m)
}

/// ρ equal to 1 on the listed (1-based) arrows and 0 elsewhere.
fn indicator(d: &Dimer, nonzero: &[usize]) -> Vec<Q> {
    let mut rho = vec![from_int(0); d.arrow_count()];
    for &a in nonzero {
        rho[d.find_arrow(&a.to_string()).unwrap()] = from_int(1);
    }
    rho
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|a| a + 1).collect()
}

const UNIT_SQUARE: [[i64; 2]; 4] = [[0, 0], [1, 0], [1, 1], [0, 1]];

/// Node of the spider graph over `cell`, with its number of edge and leg ends.
fn spider_valency(m: &TropicalModelQ, cell: usize) -> usize {
    let s = &m.spider;
    let node = s.nodes.iter().position(|n| n.cell == cell).unwrap();
    let ends = s.edges.iter().map(|e| e.nodes.iter().filter(|&&x| x == node).count()).sum::<usize>();
    ends + s.legs.iter().filter(|l| l.node == node).count()
}

fn check_reduced(r: &Reduction) -> Dimer {
    let q = r.result.clone().expect("zero-dimensional orbit");
    assert_eq!(q.euler_characteristic(), 0);
    assert_eq!(r.well_ordered, Some(true));
    assert_eq!(q.arrow_count(), r.kept.len());
    q
}

#[test]
fn conifold_reductions() {
    let (d, h, _) = hexagon();
    for (set, kept) in [([1, 3, 5, 7, 10, 11], [6, 12, 15, 16]), ([2, 5, 8, 10, 12, 16], [1, 3, 4, 13])] {
        let r = reduce_dimer(&d, &h, &indicator(&d, &set)).unwrap();
        assert_eq!(r.orbit, Orbit::Node);
        let q = check_reduced(&r);
        assert_eq!((q.vertex_count(), q.arrow_count(), q.face_count()), (2, 4, 2));
        assert_eq!(one_based(&r.kept), kept);
        assert_eq!(r.removed_digons.len(), 3);
        assert!(r.removed_loops.is_empty());
        assert_eq!(reduced_polygon(&q).unwrap(), polygon_invariants(&UNIT_SQUARE));
    }
}

#[test]
fn conifold_reduction_keeps_vertices_5_and_8() {
    let (d, h, _) = hexagon();
    let r = reduce_dimer(&d, &h, &indicator(&d, &[1, 3, 5, 7, 10, 11])).unwrap();
    // vertices 5 and 8 survive as the two classes
    let mut classes = r.vertex_classes.clone();
    classes.sort_by_key(|c| c.len());
    assert_eq!(classes, vec![vec![7], vec![0, 1, 2, 3, 4, 5, 6]]);
    let removed: Vec<usize> = r.removed_digons.iter().flat_map(|p| p.iter().map(|a| a + 1)).collect();
    let mut removed_sorted = removed.clone();
    removed_sorted.sort();
    assert_eq!(removed_sorted, vec![2, 4, 8, 9, 13, 14]);
}

#[test]
fn genus_one_node_reduction() {
    let (d, h, _) = hexagon();
    let r = reduce_dimer(&d, &h, &indicator(&d, &[1, 4, 6, 16])).unwrap();
    let q = check_reduced(&r);
    assert_eq!((q.vertex_count(), q.arrow_count(), q.face_count()), (4, 8, 4));
    assert_eq!(one_based(&r.kept), vec![2, 3, 5, 7, 8, 9, 10, 14]);
    assert_eq!(r.removed_digons, vec![[11, 14], [10, 12]]);
    let inv = reduced_polygon(&q).unwrap();
    assert_eq!((inv.interior, inv.boundary, inv.corners), (1, 4, 4));
}

#[test]
fn literal_third_set_is_not_a_representation() {
    let (d, h, _) = hexagon();
    // the negative face 1 15 12 4 keeps three nonzero arrows while the
    // positive face of 15 has a zero one
    assert_eq!(relation_failure(&d, &indicator(&d, &[1, 4, 12, 16])), Some(14));
    assert_eq!(reduce_dimer(&d, &h, &indicator(&d, &[1, 4, 12, 16])), Err(ReduceError::Relation(14)));
    assert_eq!(relation_failure(&d, &indicator(&d, &[1, 4, 6, 16])), None);
}

#[test]
fn inverting_the_literal_third_set_forces_more_arrows() {
    let d = corpus::load("hexagon");
    let avoid = |s: &[usize]| -> Vec<usize> {
        let zero: std::collections::BTreeSet<usize> =
            enumerate_matchings(&d).into_iter().filter(|m| s.iter().all(|a| !m.contains(&(a - 1)))).flatten().collect();
        (1..=d.arrow_count()).filter(|a| !zero.contains(&(a - 1))).collect()
    };
    assert_eq!(avoid(&[1, 4, 12, 16]), vec![1, 2, 4, 6, 12, 16]);
    assert_eq!(avoid(&[1, 4, 6, 16]), vec![1, 4, 6, 16]);
}

#[test]
fn node_contractions_from_lines() {
    let (d, _, m) = hexagon();
    let mut sets: Vec<Vec<usize>> = (0..m.subdivision.cells.len()).map(|c| one_based(&node_contraction(&d, &m, c).unwrap())).collect();
    sets.sort();
    assert_eq!(sets, vec![vec![1, 3, 5, 7, 10, 11], vec![1, 4, 6, 16], vec![2, 5, 8, 10, 12, 16]]);
}

#[test]
fn cell_checks_on_every_node() {
    let (d, h, m) = hexagon();
    for c in 0..m.subdivision.cells.len() {
        let chk = cell_polygon_check(&d, &h, &m, c).unwrap();
        assert!(chk.matches, "cell {c}");
        assert_eq!(chk.cell_invariants.interior, m.subdivision.cells[c].interior);
        let q = check_reduced(&chk.reduction);
        assert_eq!(zigzag_cycles(&q, &Homology::new(&q).unwrap()).len(), spider_valency(&m, c));
        assert_eq!(one_based(&chk.reduction.nonzero_arrows), one_based(&node_contraction(&d, &m, c).unwrap()));
    }
}

#[test]
fn trivial_node_is_the_whole_dimer() {
    for name in ["torus1", "spp", "gallery1", "hexagon"] {
        let (d, h) = setup(name);
        let m = tropical_model(&d, &h, &vec![from_int::<Q>(0); d.arrow_count()]).unwrap();
        assert_eq!(m.subdivision.cells.len(), 1);
        let chk = cell_polygon_check(&d, &h, &m, 0).unwrap();
        assert!(chk.matches, "{name}");
        let r = &chk.reduction;
        assert!(r.nonzero_arrows.is_empty() && r.removed_loops.is_empty());
        let full = matching_polygon(&perfect_matchings(&d, &h).unwrap()).unwrap().invariants();
        assert_eq!(chk.cell_invariants, full);
        if r.removed_digons.is_empty() {
            assert!(r.result.as_ref().unwrap().same_permutations(&d));
        }
    }
}

#[test]
fn digon_removal_preserves_polygon() {
    let (d, h, m) = hexagon();
    for c in 0..m.subdivision.cells.len() {
        let r = cell_polygon_check(&d, &h, &m, c).unwrap().reduction;
        let before = reduced_polygon(r.contracted.as_ref().unwrap()).unwrap();
        let after = reduced_polygon(r.result.as_ref().unwrap()).unwrap();
        assert_eq!(before, after);
    }
}

#[test]
fn lower_dimensional_orbits() {
    let (d, h, m) = hexagon();
    let at = m.stable_at_vertices().unwrap();
    let single = &m.matchings[at.iter().flatten().next().copied().unwrap()];
    let mut rho = vec![from_int::<Q>(1); d.arrow_count()];
    for &a in &single.arrows {
        rho[a] = from_int(0);
    }
    let r = reduce_dimer(&d, &h, &rho).unwrap();
    assert_eq!(r.orbit, Orbit::Open);
    assert!(r.result.is_none());
    assert_eq!(r.vertex_classes.len(), 1);

    for e in &m.subdivision.edges {
        let mut rho = vec![from_int::<Q>(1); d.arrow_count()];
        for t in e.ends {
            for &a in &m.matchings[at[t].unwrap()].arrows {
                rho[a] = from_int(0);
            }
        }
        let r = reduce_dimer(&d, &h, &rho).unwrap();
        assert_eq!(r.orbit, Orbit::Edge(e.length));
        assert!(r.result.is_none());
    }
}

#[test]
fn errors() {
    let (d, h, m) = hexagon();
    assert_eq!(reduce_dimer(&d, &h, &[from_int::<Q>(1)]), Err(ReduceError::ValueCount { expected: 16, got: 1 }));
    // all arrows invertible: nothing vanishes
    assert_eq!(reduce_dimer(&d, &h, &vec![from_int::<Q>(1); 16]), Err(ReduceError::NotToric));
    // scaling one arrow breaks the relations of its face neighbours
    let mut rho = vec![from_int::<Q>(1); 16];
    rho[0] = from_int(2);
    assert!(matches!(reduce_dimer(&d, &h, &rho), Err(ReduceError::Relation(_))));
    assert_eq!(node_contraction(&d, &m, 99), Err(ReduceError::NoNode(99)));
}

fn small_weights(n: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-3i64..=3, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// For every nondegenerate weight, each node reduces to a well-ordered
    /// torus dimer whose polygon is its cell and whose zigzags match the
    /// spider valency.
    #[test]
    fn every_node_reduces_to_its_cell(w in small_weights(16)) {
        let (d, h) = setup("hexagon");
        let w: Vec<Q> = w.into_iter().map(from_int).collect();
        let m = tropical_model(&d, &h, &w).unwrap();
        prop_assume!(m.stable_at_vertices().is_ok());
        for c in 0..m.subdivision.cells.len() {
            let chk = cell_polygon_check(&d, &h, &m, c).unwrap();
            prop_assert!(chk.matches);
            let q = chk.reduction.result.clone().unwrap();
            prop_assert_eq!(q.euler_characteristic(), 0);
            prop_assert_eq!(chk.reduction.well_ordered, Some(true));
            prop_assert_eq!(zigzag_cycles(&q, &Homology::new(&q).unwrap()).len(), spider_valency(&m, c));
        }
    }

    #[test]
    fn spp_nodes_reduce_to_their_cells(w in small_weights(7)) {
        let (d, h) = setup("spp");
        let w: Vec<Q> = w.into_iter().map(from_int).collect();
        let m = tropical_model(&d, &h, &w).unwrap();
        prop_assume!(m.stable_at_vertices().is_ok());
        for c in 0..m.subdivision.cells.len() {
            let chk = cell_polygon_check(&d, &h, &m, c).unwrap();
            prop_assert!(chk.matches);
            prop_assert_eq!(chk.reduction.well_ordered, Some(true));
        }
    }
}
