use dimer_core::corpus;
use dimer_core::homology::{boundary, face_chain};
use dimer_core::perm;
use dimer_core::{parse_dimer, print_dimer, Dimer, DimerError, Homology};
use proptest::prelude::*;

#[test]
fn torus1_counts() {
    let d = corpus::load("torus1");
    assert_eq!((d.arrow_count(), d.vertex_count(), d.face_count()), (3, 1, 2));
    assert_eq!(d.surface_invariants().unwrap(), (0, 1));
    assert_eq!(Homology::new(&d).unwrap().rank(), 2);
}

#[test]
fn empty_face_list_is_rejected() {
    let err = parse_dimer("dimer t\nvertices 1\narrow 1 1 1\nend\n").unwrap_err();
    assert_eq!(err.to_string(), "arrow 1 in 0 positive faces");
}

#[test]
fn syntax_errors_carry_positions() {
    let err = parse_dimer("dimer t\nvertices 1\narrow x 1 1\nend\n").unwrap_err();
    assert!(matches!(err, DimerError::Syntax { line: 3, column: 7, .. }), "{err:?}");
    let err = parse_dimer("dimer t\nvertices 1\narrow 1 1 1\nface * 1\nend\n").unwrap_err();
    assert!(matches!(err, DimerError::Syntax { line: 4, column: 6, .. }), "{err:?}");
}

#[test]
fn non_composable_face() {
    let text = "dimer t\nvertices 2\narrow 1 2 1\narrow 2 2 1\nface + 1 2\nface - 1 2\nend\n";
    assert!(matches!(parse_dimer(text), Err(DimerError::NotComposable { .. })));
}

#[test]
fn head_star_mismatch_detected() {
    // a valid torus1 with the single vertex split into two names
    let text = "dimer t\nvertices 2\narrow 1 1 1\narrow 2 2 2\narrow 3 1 1\nface + 1 3 2\nface - 1 2 3\nend\n";
    assert!(parse_dimer(text).is_err());
}

#[test]
fn hexagon_counts() {
    let d = corpus::load("hexagon");
    assert_eq!((d.arrow_count(), d.vertex_count(), d.face_count()), (16, 8, 8));
    let h = Homology::new(&d).unwrap();
    assert_eq!(h.rank(), 2);
    assert!(h.torsion().is_empty());
}

#[test]
fn gallery_genera() {
    let genera: Vec<i64> = (1..=4).map(|i| corpus::load(&format!("gallery{i}")).genus()).collect();
    assert_eq!(genera, vec![1, 1, 2, 0]);
    for i in 1..=4 {
        assert_eq!(corpus::load(&format!("gallery{i}")).mirror().genus(), 1);
    }
    assert_eq!(corpus::load("gallery3").surface_invariants().unwrap(), (-2, 2));
    assert_eq!(corpus::load("gallery4").surface_invariants().unwrap(), (2, 0));
    assert_eq!(Homology::new(&corpus::load("gallery4")).unwrap().rank(), 0);
    assert_eq!(Homology::new(&corpus::load("gallery3")).unwrap().rank(), 4);
}

#[test]
fn spp_mirror_is_five_punctured_sphere() {
    let m = corpus::load("spp").mirror();
    assert_eq!(m.genus(), 0);
    assert_eq!(m.vertex_count(), 5);
}

#[test]
fn cycle_counts_match_structure() {
    for d in corpus::all() {
        let star = perm::compose(&perm::inverse(d.sigma_minus()), d.sigma_plus());
        assert_eq!(perm::cycles(&star).len(), d.vertex_count());
        assert_eq!(perm::cycles(d.sigma_plus()).len(), d.positive_faces().count());
        assert_eq!(perm::cycles(d.sigma_minus()).len(), d.negative_faces().count());
    }
}

#[test]
fn mirror_is_an_involution() {
    for d in corpus::all() {
        let mm = d.mirror().mirror();
        assert!(mm.same_permutations(&d), "{}", d.name());
        assert_eq!(print_dimer(&mm), print_dimer(&d.normalized()));
    }
}

#[test]
fn mirror_vertices_are_zigzag_even_supports() {
    for d in corpus::all() {
        let zz = perm::compose(d.sigma_minus(), d.sigma_plus());
        let mut supports: Vec<Vec<usize>> = perm::cycles(&zz).into_iter().map(|mut c| { c.sort(); c }).collect();
        supports.sort();
        let m = d.mirror();
        let mut stars: Vec<Vec<usize>> = (0..m.vertex_count())
            .map(|v| (0..m.arrow_count()).filter(|&a| m.head(a) == v).collect())
            .collect();
        stars.sort();
        assert_eq!(stars, supports, "{}", d.name());
    }
}

#[test]
fn print_parse_round_trip() {
    for d in corpus::all() {
        let text = print_dimer(&d);
        let back = parse_dimer(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(print_dimer(&back), text);
    }
}

#[test]
fn homology_basis_properties() {
    for d in corpus::all() {
        let h = Homology::new(&d).unwrap();
        for f in 0..d.face_count() {
            assert!(h.class_of(&face_chain(&d, f)).iter().all(|&c| c == 0));
        }
        for (k, z) in h.basis().iter().enumerate() {
            assert!(boundary(&d, z).iter().all(|&c| c == 0));
            let cls = h.class_of(z);
            for (j, c) in cls.iter().enumerate() {
                assert_eq!(*c, (j == k) as i64);
            }
        }
        for v in 0..d.vertex_count() {
            for w in 0..d.vertex_count() {
                let c = h.base_chain(v, w);
                let b = boundary(&d, &c);
                for x in 0..d.vertex_count() {
                    assert_eq!(b[x], (x == v) as i64 - (x == w) as i64);
                }
            }
        }
    }
}

fn reparse(d: &Dimer) -> Dimer {
    parse_dimer(&print_dimer(d)).unwrap()
}

proptest! {
    #[test]
    fn class_of_is_additive(name in prop::sample::select(corpus::NAMES.to_vec()),
                            c1 in prop::collection::vec(-3i64..4, 16),
                            c2 in prop::collection::vec(-3i64..4, 16)) {
        let d = corpus::load(name);
        let h = Homology::new(&d).unwrap();
        let e = d.arrow_count();
        let a: Vec<i64> = c1[..e].to_vec();
        let b: Vec<i64> = c2[..e].to_vec();
        let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let lhs = h.class_of(&sum);
        let rhs: Vec<i64> = h.class_of(&a).iter().zip(h.class_of(&b)).map(|(x, y)| x + y).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn relabelled_faces_give_same_dimer(name in prop::sample::select(corpus::NAMES.to_vec()), rot in 0usize..7) {
        let d = corpus::load(name);
        // rotating every face and reversing the face list must not change the dimer
        let mut text = format!("dimer {}\nvertices {}\n", d.name(), d.vertex_count());
        for a in 0..d.arrow_count() {
            text += &format!("arrow {} {} {}\n", a + 1, d.head(a) + 1, d.tail(a) + 1);
        }
        for f in d.faces().iter().rev() {
            let k = f.len();
            let ids: Vec<String> = (0..k).map(|i| (f.arrows[(i + rot) % k] + 1).to_string()).collect();
            text += &format!("face {} {}\n", f.sign.symbol(), ids.join(" "));
        }
        text += "end\n";
        let back = parse_dimer(&text).unwrap();
        prop_assert!(back.same_permutations(&d));
        let again = reparse(&d);
        prop_assert_eq!(back.faces(), again.faces());
    }
}
