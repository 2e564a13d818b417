//! The acceptance suite over the bundled dimers.
//!
//! Each criterion is exact: integer or rational equalities, no tolerance.
//! A criterion returns a one-line summary on success and the first
//! violated expectation on failure.

use std::collections::BTreeSet;

use dimer_algebra::{disc_sequences, gtl_mu, AnglePathQ, AngleQuiver, Jacobi};
use dimer_core::lattice::{self, Point};
use dimer_core::{corpus, from_int, parse_weights, Dimer, Homology, Q};
use dimer_matching::{enumerate_matchings, matching_point, matching_polygon, perfect_matchings};
use dimer_mf::{enumerate_garlands, face_subpath, iterated_cone, mf_arrow, mf_band, mf_path, rep_bands, MatrixFactorizationQ};
use dimer_reduce::{cell_polygon_check, reduce_dimer, reduced_polygon, Orbit};
use dimer_tropical::{tropical_model, TropicalModelQ};
use dimer_zigzag::{compare_with_normals, is_consistent, zigzag_cycles, RayOverlap};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<String, String>;

pub struct Criterion {
    pub id: usize,
    pub title: &'static str,
    pub run: fn() -> Check,
}

pub struct Outcome {
    pub id: usize,
    pub title: &'static str,
    pub result: Check,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.result.is_ok()
    }

    pub fn line(&self) -> String {
        let (verdict, detail) = match &self.result {
            Ok(s) => ("PASS", s),
            Err(s) => ("FAIL", s),
        };
        format!("criterion {:2}: {verdict} - {} - {detail}", self.id, self.title)
    }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, title: "suspended pinchpoint", run: spp },
        Criterion { id: 2, title: "gallery genera and consistency", run: gallery },
        Criterion { id: 3, title: "mirror involution", run: mirror_involution },
        Criterion { id: 4, title: "zigzag classes are polygon normals", run: zigzag_normals },
        Criterion { id: 5, title: "stability of the node weight", run: stability },
        Criterion { id: 6, title: "reductions at the three nodes", run: reductions },
        Criterion { id: 7, title: "matrix factorization identities", run: factorizations },
        Criterion { id: 8, title: "band counts of two-matching representations", run: band_counts },
        Criterion { id: 9, title: "lines and trees", run: lines_and_trees },
        Criterion { id: 10, title: "tropical invariants", run: tropical_invariants },
        Criterion { id: 11, title: "strip complex", run: strip_complex },
        Criterion { id: 12, title: "Gtl disc sequences", run: gtl_discs },
    ]
}

pub fn run_all() -> Vec<Outcome> {
    criteria().into_iter().map(|c| Outcome { id: c.id, title: c.title, result: (c.run)() }).collect()
}

fn setup(name: &str) -> Result<(Dimer, Homology), String> {
    let d = corpus::load(name);
    let h = ok(Homology::new(&d), name)?;
    Ok((d, h))
}

fn with_mirrors() -> Vec<Dimer> {
    corpus::all().into_iter().flat_map(|d| [d.clone(), d.mirror()]).collect()
}

fn hexagon_model() -> Result<(Dimer, Homology, TropicalModelQ), String> {
    let (d, h) = setup("hexagon")?;
    let w: Vec<Q> = ok(parse_weights(corpus::HEXAGON_WEIGHTS, d.arrow_count()), "weights")?;
    let m = ok(tropical_model(&d, &h, &w), "model")?;
    Ok((d, h, m))
}

/// Sorted 0-based ids of 1-based arrow names.
fn arrows(d: &Dimer, one_based: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = one_based.iter().map(|i| d.find_arrow(&i.to_string()).expect("arrow")).collect();
    v.sort();
    v
}

fn spp() -> Check {
    let (d, h) = setup("spp")?;
    let pm = ok(perfect_matchings(&d, &h), "matchings")?;
    ensure!(pm.len() == 6, "{} perfect matchings", pm.len());
    let p = ok(matching_polygon(&pm), "polygon")?;
    let counts = (p.corner_count(), p.boundary_count, p.interior_count);
    ensure!(counts == (4, 5, 0), "corners/boundary/interior {counts:?}");
    let extra = p.boundary_non_corners();
    ensure!(extra.len() == 1, "{} non-corner points", extra.len());
    ensure!(p.multiplicity(extra[0]) == 2, "{} matchings on the non-corner point", p.multiplicity(extra[0]));
    let z = zigzag_cycles(&d, &h).len();
    ensure!(z == 5, "{z} zigzag cycles");
    let m = d.mirror();
    ensure!(m.genus() == 0 && m.vertex_count() == 5, "mirror genus {} with {} vertices", m.genus(), m.vertex_count());
    Ok("6 matchings, 4 corners, 5 boundary, 0 interior, 2 on the middle point, 5 zigzags, mirror genus 0 with 5 vertices".into())
}

fn gallery() -> Check {
    let genera: Vec<i64> = (1..=4).map(|i| corpus::load(&format!("gallery{i}")).genus()).collect();
    ensure!(genera == [1, 1, 2, 0], "genera {genera:?}");
    let mirrors: Vec<i64> = (1..=4).map(|i| corpus::load(&format!("gallery{i}")).mirror().genus()).collect();
    ensure!(mirrors == [1, 1, 1, 1], "mirror genera {mirrors:?}");
    let verdict = |name: &str| -> Result<_, String> {
        let (d, h) = setup(name)?;
        Ok((is_consistent(&d, &h), d))
    };
    let (r1, _) = verdict("gallery1")?;
    let (r3, _) = verdict("gallery3")?;
    ensure!(r1.consistent && r3.consistent, "gallery1/gallery3 consistency {} {}", r1.consistent, r3.consistent);
    let (r2, d2) = verdict("gallery2")?;
    ensure!(!r2.consistent, "gallery2 is consistent");
    let (x, z) = (d2.find_arrow("x").ok_or("no arrow x")?, d2.find_arrow("z").ok_or("no arrow z")?);
    ensure!(r2.ray_overlaps.contains(&RayOverlap { arrow: x, shared: z }), "no witness x/z in {:?}", r2.ray_overlaps);
    Ok("genera (1,1,2,0), mirrors all genus 1, gallery2 inconsistent: zig and zag rays of x share z".into())
}

fn mirror_involution() -> Check {
    let mut n = 0;
    for d in corpus::all() {
        let m = d.mirror();
        ensure!(m.mirror().same_permutations(&d), "{}: mirror twice differs", d.name());
        let (a, b) = (enumerate_matchings(&d), enumerate_matchings(&m));
        ensure!(a == b, "{}: {} matchings vs {} on the mirror", d.name(), a.len(), b.len());
        n += 1;
    }
    Ok(format!("{n} dimers"))
}

fn zigzag_normals() -> Check {
    let mut n = 0;
    for d in with_mirrors() {
        let h = ok(Homology::new(&d), d.name())?;
        if !h.is_torus() || !is_consistent(&d, &h).consistent {
            continue;
        }
        let poly = ok(matching_polygon(&ok(perfect_matchings(&d, &h), d.name())?), d.name())?;
        ensure!(compare_with_normals(&zigzag_cycles(&d, &h), &poly.normal_multiset()).is_some(), "{}: classes differ from normals", d.name());
        n += 1;
    }
    ensure!(n > 0, "no consistent torus");
    Ok(format!("{n} consistent tori (dimers and mirrors)"))
}

const HEXAGON_STABLE: [[usize; 4]; 7] =
    [[9, 6, 4, 14], [8, 2, 4, 16], [8, 2, 13, 12], [5, 15, 13, 10], [3, 15, 11, 7], [1, 6, 11, 7], [9, 15, 13, 14]];

fn stability() -> Check {
    let (d, _, m) = hexagon_model()?;
    let got: BTreeSet<Vec<usize>> = m.stable_matchings().into_iter().map(|i| m.matchings[i].arrows.clone()).collect();
    let want: BTreeSet<Vec<usize>> = HEXAGON_STABLE.iter().map(|s| arrows(&d, s)).collect();
    ensure!(got == want, "{} stable matchings, expected the 7 listed", got.len());
    let deg = ok(m.degeneracy(&d), "degeneracy")?;
    ensure!(deg.nondegenerate, "weight is degenerate");
    ensure!(m.subdivision.cells.len() == 3, "{} cells", m.subdivision.cells.len());
    let mut genera = m.spider.genera();
    genera.sort();
    ensure!(genera == [0, 0, 1], "spider genera {genera:?}");
    Ok("7 listed stable matchings, nondegenerate, 3 cells, spider genera {0,0,1}".into())
}

fn reductions() -> Check {
    let (d, h, m) = hexagon_model()?;
    let cells: Vec<_> = (0..m.subdivision.cells.len())
        .map(|c| cell_polygon_check(&d, &h, &m, c).map(|k| k.cell_invariants))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    // contraction set, reduced (V, E, F), kept arrows
    let cases: [(&[usize], (usize, usize, usize), &[usize]); 3] = [
        (&[1, 3, 5, 7, 10, 11], (2, 4, 2), &[6, 12, 15, 16]),
        (&[2, 5, 8, 10, 12, 16], (2, 4, 2), &[1, 3, 4, 13]),
        (&[1, 4, 12, 16], (4, 8, 4), &[2, 3, 5, 7, 8, 9, 10, 14]),
    ];
    let one_case = |set: &[usize], shape: (usize, usize, usize), kept: &[usize]| -> Check {
        let mut rho = vec![Q::zero(); d.arrow_count()];
        for a in arrows(&d, set) {
            rho[a] = Q::one();
        }
        let r = reduce_dimer(&d, &h, &rho).map_err(|e| e.to_string())?;
        ensure!(r.orbit == Orbit::Node, "orbit {:?}", r.orbit);
        let q = r.result.as_ref().ok_or("no reduced dimer")?;
        let got = (q.vertex_count(), q.arrow_count(), q.face_count());
        ensure!(got == shape && q.genus() == 1, "reduced V/E/F {got:?}, genus {}", q.genus());
        let kept_got: Vec<usize> = r.kept.iter().map(|a| a + 1).collect();
        ensure!(kept_got == kept, "kept arrows {kept_got:?}");
        ensure!(r.well_ordered == Some(true), "not well-ordered");
        let inv = ok(reduced_polygon(q), "reduced polygon")?;
        ensure!(cells.contains(&inv), "polygon {:?} is no subdivision cell", inv.normal_form);
        if shape.0 == 2 {
            ensure!(inv.twice_area == 2 && inv.corners == 4, "not a unit square");
        }
        Ok(format!("{got:?}"))
    };
    let mut lines = Vec::new();
    let mut failed = false;
    for (set, shape, kept) in cases {
        match one_case(set, shape, kept) {
            Ok(s) => lines.push(format!("{set:?} ok {s}")),
            Err(e) => {
                failed = true;
                lines.push(format!("{set:?} fails: {e}"));
            }
        }
    }
    if failed {
        Err(lines.join("; "))
    } else {
        Ok(format!("{}; all well-ordered torus dimers on their cells", lines.join("; ")))
    }
}

fn factorizations() -> Check {
    let mut counts = [0usize; 3];
    for d in with_mirrors() {
        let Ok(j) = Jacobi::new(&d) else { continue };
        for a in 0..d.arrow_count() {
            let m: MatrixFactorizationQ = mf_arrow(&j, a);
            ok(m.check(&j), &format!("{} M_{}", d.name(), d.arrow_name(a)))?;
            counts[0] += 1;
        }
        for (_, f) in d.positive_faces() {
            for &a in &f.arrows {
                for l in 1..f.len() {
                    let what = format!("{} face arrow {} length {l}", d.name(), d.arrow_name(a));
                    let it: MatrixFactorizationQ = ok(iterated_cone(&j, a, l), &what)?;
                    let direct = ok(mf_path(&j, &ok(face_subpath(&j, a, l), &what)?), &what)?;
                    ensure!(it == direct, "{what}: iterated cone differs");
                    counts[2] += 1;
                }
            }
        }
    }
    let one = vec![vec![Q::one()]];
    for name in ["hexagon", "spp"] {
        let d = corpus::load(name);
        let j = ok(Jacobi::new(&d), name)?;
        for g in enumerate_garlands(&d, 8) {
            let m = ok(mf_band(&j, &g, &one), name)?;
            ok(m.check(&j), &format!("{name} garland {:?}", g.entries))?;
            counts[1] += 1;
        }
    }
    Ok(format!("{} arrow, {} band and {} iterated-cone factorizations", counts[0], counts[1], counts[2]))
}

fn band_counts() -> Check {
    let (d, h, m) = hexagon_model()?;
    let at = ok(m.stable_at_vertices(), "stable matchings")?;
    let zero_on = |zero: &[usize]| -> Vec<Q> {
        let mut rho = vec![Q::one(); d.arrow_count()];
        for &a in zero {
            rho[a] = Q::zero();
        }
        rho
    };
    let mut edges = 0;
    for e in &m.subdivision.edges {
        let [p1, p2] = e.ends.map(|t| at[t].map(|i| m.matchings[i].arrows.clone()));
        let (p1, p2) = (p1.ok_or("edge end without a stable matching")?, p2.ok_or("edge end without a stable matching")?);
        let zero: Vec<usize> = p1.iter().chain(&p2).copied().collect();
        let r = ok(rep_bands(&d, &h, &zero_on(&zero)), "rep_bands")?;
        let (n1, n2) = (matching_point(&h, &p1), matching_point(&h, &p2));
        let k = lattice::gcd(n1[0] - n2[0], n1[1] - n2[1]);
        ensure!(r.bands.len() as i64 == k, "edge {:?}: {} bands, gcd {k}", e.ends, r.bands.len());
        let c0 = &r.bands[0].hclass;
        for b in &r.bands {
            let anti = b.hclass.iter().zip(c0).all(|(x, y)| *x == -*y);
            ensure!(b.hclass == *c0 || anti, "edge {:?}: bands not parallel", e.ends);
            let arrows = b.garland.arrows();
            let side = |a: usize| (p1.contains(&a), p2.contains(&a));
            for i in 0..arrows.len() {
                let (x, y) = (side(arrows[i]), side(arrows[(i + 1) % arrows.len()]));
                ensure!(x != y && x.0 != x.1 && y.0 != y.1, "edge {:?}: band does not alternate", e.ends);
            }
        }
        edges += 1;
    }
    for i in m.stable_matchings() {
        let r = ok(rep_bands(&d, &h, &zero_on(&m.matchings[i].arrows)), "rep_bands")?;
        ensure!(r.bands.is_empty(), "single matching {} gives {} bands", i + 1, r.bands.len());
    }
    Ok(format!("{edges} subdivision edges, gcd-many alternating (anti)parallel bands; single matchings give none"))
}

fn lines_and_trees() -> Check {
    let (d, _, m) = hexagon_model()?;
    for a in 0..d.arrow_count() {
        let l = ok(m.line_of_arrow(&d, a), "line")?;
        ensure!(l.contractible && l.complement_contractible, "arrow {}: marked sets not contractible", a + 1);
        ensure!(l.leg_to_leg, "arrow {}: line not leg-to-leg", a + 1);
    }
    for c in 0..d.face_count() {
        let t = ok(m.face_tree(&d, c), "tree")?;
        ensure!(t.acyclic && t.connected, "face {}: tree not acyclic and connected", c + 1);
    }
    Ok(format!("{} arrows, {} faces", d.arrow_count(), d.face_count()))
}

/// Whether lifted point `t` is a lower-hull vertex: no segment or triangle
/// of other lifted points lies weakly below it.
fn hull_vertex_oracle(points: &[Point], heights: &[Q], t: usize) -> bool {
    let p = points[t];
    let others: Vec<usize> = (0..points.len()).filter(|&i| i != t).collect();
    let frac = |a: i64, b: i64| Q::new(a.into(), b.into());
    for (x, &i) in others.iter().enumerate() {
        for &j in &others[x + 1..] {
            let (u, v) = (lattice::sub(points[j], points[i]), lattice::sub(p, points[i]));
            let (s, l) = (lattice::dot(u, v), lattice::dot(u, u));
            if lattice::cross(u, v) == 0 && s >= 0 && s <= l {
                let hgt = heights[i].clone() + frac(s, l) * (heights[j].clone() - heights[i].clone());
                if hgt <= heights[t] {
                    return false;
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
                let (bi, bj, bk) = (frac(det - bj - bk, det), frac(bj, det), frac(bk, det));
                if bi < Q::zero() || bj < Q::zero() || bk < Q::zero() {
                    continue;
                }
                if bi * heights[i].clone() + bj * heights[j].clone() + bk * heights[k].clone() <= heights[t] {
                    return false;
                }
            }
        }
    }
    true
}

fn check_weight(d: &Dimer, h: &Homology, w: &[Q]) -> Result<(), String> {
    let m = ok(tropical_model(d, h, w), "model")?;
    let np = lattice::convex_hull(&m.poly.points());
    let (g, legs) = (m.spider.genus(), m.spider.legs.len() as i64);
    ensure!(g == lattice::interior_points(&np), "spider genus {g}");
    ensure!(legs == lattice::boundary_points(&np), "{legs} legs");
    let status = m.classify();
    for i in 0..m.matchings.len() {
        let t = m.term_of(i);
        let oracle = m.lifts[i] == m.poly.terms[t].c && hull_vertex_oracle(&m.subdivision.points, &m.subdivision.heights, t);
        ensure!(status[i].semistable == oracle, "matching {}: classification disagrees with the oracle", i + 1);
    }
    let scaled: Vec<Q> = w.iter().map(|x| x.clone() * from_int::<Q>(3)).collect();
    let m3 = ok(tropical_model(d, h, &scaled), "model")?;
    ensure!(m3.classify() == status, "classification changes under W -> 3W");
    ensure!(ok(m3.degeneracy(d), "degeneracy")? == ok(m.degeneracy(d), "degeneracy")?, "degeneracy changes under W -> 3W");
    Ok(())
}

fn tropical_invariants() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7d1e_2024);
    let (mut dimers, mut weights) = (0, 0);
    for d in corpus::all() {
        let h = ok(Homology::new(&d), d.name())?;
        if !h.is_torus() {
            continue;
        }
        let mut ws: Vec<Vec<Q>> = vec![vec![Q::zero(); d.arrow_count()]];
        for _ in 0..5 {
            ws.push((0..d.arrow_count()).map(|_| from_int(rng.gen_range(-2..=3))).collect());
        }
        for w in &ws {
            check_weight(&d, &h, w).map_err(|e| format!("{} at {:?}: {e}", d.name(), w.iter().map(Q::to_string).collect::<Vec<_>>()))?;
        }
        dimers += 1;
        weights += ws.len();
    }
    Ok(format!("{weights} weights over {dimers} torus dimers"))
}

fn strip_complex() -> Check {
    let (d, _, m) = hexagon_model()?;
    let s = ok(m.strebel(&d, &vec![Q::one(); d.arrow_count()]), "strebel")?;
    let mirror = d.mirror();
    let (g, n) = (mirror.genus(), mirror.vertex_count() as i64);
    ensure!(s.zero_order_sum() == 4 * g - 4 + 2 * n, "zero orders sum to {}, 4g-4+2n = {}", s.zero_order_sum(), 4 * g - 4 + 2 * n);
    let mut lines = 0;
    for a in 0..d.arrow_count() {
        lines += ok(m.line_of_arrow(&d, a), "line")?.line.len();
    }
    ensure!(s.strips.len() == lines, "{} strips, lines have {lines} edges", s.strips.len());
    Ok(format!("zero orders sum to {} with g={g}, n={n}; {} strips", s.zero_order_sum(), s.strips.len()))
}

type A = AnglePathQ;

/// Nonzero angle paths of length 1 and 2 with the given head.
fn short_paths(q: &AngleQuiver, head: usize) -> Vec<A> {
    let mut out = Vec::new();
    for i in 0..q.len() {
        if q.angle(i).to != head {
            continue;
        }
        out.push(A::new(q, vec![i]).expect("angle"));
        for k in 0..q.len() {
            if q.angle(k).to == q.angle(i).from {
                let p = A::new(q, vec![i, k]).expect("angle pair");
                if !p.is_zero() {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Checks every rotation of every disc sequence with β inserted at either
/// end; returns the number of sequences checked.
fn check_discs(d: &Dimer, max_faces: usize, grading: &[usize]) -> Result<usize, String> {
    let q = AngleQuiver::new(d);
    let sign = |n: usize| if n % 2 == 1 { -Q::one() } else { Q::one() };
    let mut checked = 0;
    for entries in disc_sequences(d, &q, max_faces, 6) {
        let k = entries.len();
        for r in 0..k {
            let seq: Vec<A> = (0..k).map(|i| A::new(&q, entries[(i + r) % k].clone())).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
            let mut cases: Vec<(Vec<A>, A)> = Vec::new();
            for beta in short_paths(&q, seq[k - 1].tail) {
                let last = seq[k - 1].mul(&q, &beta);
                if !last.is_zero() {
                    let mut s = seq.clone();
                    s[k - 1] = last;
                    cases.push((s, beta));
                }
            }
            for b in (0..d.arrow_count()).flat_map(|h| short_paths(&q, h)) {
                if b.tail != seq[0].head {
                    continue;
                }
                let first = b.mul(&q, &seq[0]);
                if !first.is_zero() {
                    let mut s = seq.clone();
                    s[0] = first;
                    cases.push((s, b));
                }
            }
            cases.dedup_by(|x, y| x.0 == y.0);
            for (s, beta) in cases {
                let shown = || s.iter().map(|p| p.display(&q)).collect::<Vec<_>>().join(", ");
                let got = gtl_mu(&q, &s).map_err(|e| e.to_string())?;
                ensure!(got == beta.scale(&sign(beta.len())), "{}: closed form fails on ({})", d.name(), shown());
                for lo in 0..k {
                    for hi in lo + 2..=k {
                        if hi - lo < k {
                            let sub = gtl_mu(&q, &s[lo..hi]).map_err(|e| e.to_string())?;
                            ensure!(sub.is_zero(), "{}: subsequence {lo}..{hi} of ({}) survives", d.name(), shown());
                        }
                    }
                }
                let total: i64 = s.iter().map(|p| p.degree(&q, grading)).sum();
                ensure!(got.degree(&q, grading) == total + 2 - k as i64, "{}: degree shift fails on ({})", d.name(), shown());
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn gtl_discs() -> Check {
    let mut parts = Vec::new();
    for (d, faces) in [(corpus::load("torus1"), 4), (corpus::load("spp").mirror(), 3)] {
        let m = enumerate_matchings(&d).into_iter().next().ok_or_else(|| format!("{}: no perfect matching", d.name()))?;
        let n = check_discs(&d, faces, &m)?;
        ensure!(n > 0, "{}: no disc sequences", d.name());
        parts.push(format!("{}: {n}", d.name()));
    }
    Ok(format!("sequences checked {}", parts.join(", ")))
}
