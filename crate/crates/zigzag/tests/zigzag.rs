use dimer_core::{corpus, Dimer, Homology};
use dimer_matching::{matching_polygon, perfect_matchings};
use dimer_zigzag::*;

fn all_with_mirrors() -> Vec<Dimer> {
    corpus::all().into_iter().flat_map(|d| [d.mirror(), d]).collect()
}

fn report(name: &str) -> (Dimer, ConsistencyReport) {
    let d = corpus::load(name);
    let h = Homology::new(&d).unwrap();
    let r = is_consistent(&d, &h);
    (d, r)
}

#[test]
fn spp_has_five_zigzags_and_is_consistent() {
    let (d, r) = report("spp");
    let h = Homology::new(&d).unwrap();
    assert_eq!(zigzag_cycles(&d, &h).len(), 5);
    assert!(r.consistent);
    assert_eq!(r.well_ordered, Some(true));
}

#[test]
fn zigzag_count_is_mirror_vertex_count() {
    for d in all_with_mirrors() {
        let h = Homology::new(&d).unwrap();
        assert_eq!(zigzag_cycles(&d, &h).len(), d.mirror().vertex_count(), "{}", d.name());
    }
}

#[test]
fn gallery_consistency() {
    assert!(report("gallery1").1.consistent);
    assert!(report("gallery3").1.consistent);
    let (d, r) = report("gallery2");
    assert!(!r.consistent);
    let x = d.find_arrow("x").unwrap();
    let z = d.find_arrow("z").unwrap();
    assert!(r.ray_overlaps.contains(&RayOverlap { arrow: x, shared: z }));
}

#[test]
fn mirror_row_consistency() {
    let verdicts: Vec<bool> = (1..=4)
        .map(|i| {
            let m = corpus::load(&format!("gallery{i}")).mirror();
            let h = Homology::new(&m).unwrap();
            is_consistent(&m, &h).consistent
        })
        .collect();
    assert_eq!(verdicts, vec![true, false, false, true]);
}

#[test]
fn every_arrow_lies_on_two_zigzag_positions() {
    for d in all_with_mirrors() {
        let h = Homology::new(&d).unwrap();
        let mut count = vec![0; d.arrow_count()];
        for c in zigzag_cycles(&d, &h) {
            assert_eq!(c.len() % 2, 0);
            for &a in &c.arrows {
                count[a] += 1;
            }
        }
        assert!(count.iter().all(|&c| c == 2), "{}", d.name());
    }
}

#[test]
fn zig_cycle_of_a_is_zag_cycle_of_successor() {
    for d in all_with_mirrors() {
        let h = Homology::new(&d).unwrap();
        let cycles = zigzag_cycles(&d, &h);
        let owner = zig_owner(&d);
        for a in 0..d.arrow_count() {
            let c = &cycles[owner[a]];
            let i = (0..c.len()).step_by(2).find(|&i| c.arrows[i] == a).unwrap();
            assert_eq!(c.arrows[i + 1], d.sigma_plus()[a]);
        }
    }
}

#[test]
fn classes_sum_to_zero() {
    for d in all_with_mirrors() {
        let h = Homology::new(&d).unwrap();
        let cycles = zigzag_cycles(&d, &h);
        for k in 0..h.rank() {
            assert_eq!(cycles.iter().map(|c| c.hclass[k]).sum::<i64>(), 0, "{}", d.name());
        }
    }
}

#[test]
fn ray_check_agrees_with_well_ordered() {
    for d in all_with_mirrors() {
        let h = Homology::new(&d).unwrap();
        let r = is_consistent(&d, &h);
        if let Some(w) = r.well_ordered {
            assert_eq!(w && r.zero_class.is_empty(), r.ray_check, "{}", d.name());
        }
    }
}

#[test]
fn zigzag_classes_are_polygon_normals() {
    for d in all_with_mirrors() {
        let h = Homology::new(&d).unwrap();
        if !h.is_torus() || !is_consistent(&d, &h).consistent {
            continue;
        }
        let poly = matching_polygon(&perfect_matchings(&d, &h).unwrap()).unwrap();
        let cycles = zigzag_cycles(&d, &h);
        assert!(compare_with_normals(&cycles, &poly.normal_multiset()).is_some(), "{}", d.name());
    }
}

#[test]
fn hexagon_classes_are_hexagon_normals() {
    let d = corpus::load("hexagon");
    let h = Homology::new(&d).unwrap();
    let poly = matching_polygon(&perfect_matchings(&d, &h).unwrap()).unwrap();
    assert_eq!(compare_with_normals(&zigzag_cycles(&d, &h), &poly.normal_multiset()), Some(1));
}
