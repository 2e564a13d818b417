use dimer_core::{corpus, face_chain, Homology};
use dimer_matching::*;
use proptest::prelude::*;

fn brute_force(d: &dimer_core::Dimer) -> Vec<Vec<usize>> {
    let e = d.arrow_count();
    let mut out = Vec::new();
    for mask in 0u32..(1 << e) {
        let set: Vec<usize> = (0..e).filter(|&a| mask >> a & 1 == 1).collect();
        if is_perfect_matching(d, &set) {
            out.push(set);
        }
    }
    out.sort();
    out
}

#[test]
fn enumeration_matches_brute_force() {
    for d in corpus::all() {
        assert_eq!(enumerate_matchings(&d), brute_force(&d), "{}", d.name());
    }
}

#[test]
fn torus1_has_three_single_arrow_matchings() {
    let d = corpus::load("torus1");
    assert_eq!(enumerate_matchings(&d), vec![vec![0], vec![1], vec![2]]);
    let h = Homology::new(&d).unwrap();
    let p = matching_polygon(&perfect_matchings(&d, &h).unwrap()).unwrap();
    assert_eq!((p.corner_count(), p.interior_count, p.boundary_count), (3, 0, 3));
    for c in &p.hull {
        assert_eq!(p.multiplicity(*c), 1);
    }
}

#[test]
fn suspended_pinchpoint_polygon() {
    let d = corpus::load("spp");
    let h = Homology::new(&d).unwrap();
    let ms = perfect_matchings(&d, &h).unwrap();
    assert_eq!(ms.len(), 6);
    let p = matching_polygon(&ms).unwrap();
    assert_eq!((p.corner_count(), p.boundary_count, p.interior_count), (4, 5, 0));
    let extra = p.boundary_non_corners();
    assert_eq!(extra.len(), 1);
    assert_eq!(p.multiplicity(extra[0]), 2);
}

#[test]
fn hexagon_contains_listed_matchings() {
    let d = corpus::load("hexagon");
    let all = enumerate_matchings(&d);
    let listed: [&[usize]; 7] =
        [&[9, 6, 4, 14], &[8, 2, 4, 16], &[8, 2, 13, 12], &[5, 15, 13, 10], &[3, 15, 11, 7], &[1, 6, 11, 7], &[9, 15, 13, 14]];
    for l in listed {
        let mut set: Vec<usize> = l.iter().map(|a| a - 1).collect();
        set.sort();
        assert!(all.contains(&set), "{l:?}");
    }
    let h = Homology::new(&d).unwrap();
    let p = matching_polygon(&perfect_matchings(&d, &h).unwrap()).unwrap();
    assert_eq!(p.corner_count(), 6);
    assert_eq!(p.boundary_count, 6);
    // two interior points: the central one and the one inside the big quadrangle
    assert_eq!(p.interior_count, 2);
}

#[test]
fn every_matching_meets_every_face_once() {
    for d in corpus::all() {
        for m in enumerate_matchings(&d) {
            let pm = PerfectMatching { arrows: m, point: [0, 0] };
            for f in 0..d.face_count() {
                assert_eq!(pm.degree(&face_chain(&d, f)), 1);
            }
        }
    }
}

#[test]
fn mirror_has_the_same_matchings() {
    for d in corpus::all() {
        assert_eq!(enumerate_matchings(&d), enumerate_matchings(&d.mirror()), "{}", d.name());
    }
}

#[test]
fn no_matchings_is_an_error() {
    assert_eq!(matching_polygon(&[]).unwrap_err(), MatchingError::NoMatchings);
}

#[test]
fn non_torus_is_rejected() {
    let d = corpus::load("gallery4");
    let h = Homology::new(&d).unwrap();
    assert!(perfect_matchings(&d, &h).is_err());
}

#[test]
fn normal_form_identifies_known_polygons() {
    let square = affine_normal_form(&[[0, 0], [1, 0], [1, 1], [0, 1]]);
    let sheared = affine_normal_form(&[[0, 0], [1, 0], [4, 1], [3, 1]]);
    assert_eq!(square, sheared);
    let triangle = affine_normal_form(&[[0, 0], [1, 0], [0, 1]]);
    assert_ne!(square, triangle);
    assert_eq!(triangle, affine_normal_form(&[[2, 3], [3, 5], [1, 2]]));
}

fn unimodular() -> impl Strategy<Value = [[i64; 2]; 2]> {
    // products of elementary matrices
    prop::collection::vec((0u8..4, -2i64..3), 1..5).prop_map(|ops| {
        let mut m = [[1i64, 0], [0, 1]];
        for (kind, k) in ops {
            let e = match kind {
                0 => [[1, k], [0, 1]],
                1 => [[1, 0], [k, 1]],
                2 => [[0, 1], [1, 0]],
                _ => [[-1, 0], [0, 1]],
            };
            m = [
                [e[0][0] * m[0][0] + e[0][1] * m[1][0], e[0][0] * m[0][1] + e[0][1] * m[1][1]],
                [e[1][0] * m[0][0] + e[1][1] * m[1][0], e[1][0] * m[0][1] + e[1][1] * m[1][1]],
            ];
        }
        m
    })
}

proptest! {
    #[test]
    fn invariants_survive_affine_maps(name in prop::sample::select(vec!["torus1", "spp", "hexagon", "gallery1", "gallery2"]),
                                      m in unimodular(), shift in (-5i64..6, -5i64..6)) {
        let d = corpus::load(name);
        let h = Homology::new(&d).unwrap();
        let ms = perfect_matchings(&d, &h).unwrap();
        let moved: Vec<PerfectMatching> = ms
            .iter()
            .map(|pm| {
                let p = pm.point;
                let q = [m[0][0] * p[0] + m[0][1] * p[1] + shift.0, m[1][0] * p[0] + m[1][1] * p[1] + shift.1];
                PerfectMatching { arrows: pm.arrows.clone(), point: q }
            })
            .collect();
        let a = matching_polygon(&ms).unwrap();
        let b = matching_polygon(&moved).unwrap();
        prop_assert_eq!(a.invariants(), b.invariants());
        let mut ma: Vec<usize> = a.points.values().map(Vec::len).collect();
        let mut mb: Vec<usize> = b.points.values().map(Vec::len).collect();
        ma.sort();
        mb.sort();
        prop_assert_eq!(ma, mb);
    }
}
