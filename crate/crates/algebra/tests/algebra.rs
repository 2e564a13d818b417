use std::collections::HashMap;

use dimer_algebra::{disc_sequences, gtl_mu, AlgebraError, AnglePath, AngleQuiver, Jacobi, PathElement};
use dimer_core::homotopy::Homotopy;
use dimer_core::{corpus, Dimer, Q};
use dimer_matching::enumerate_matchings;
use num_traits::{One, Zero};
use proptest::prelude::*;

type P = PathElement<Q>;
type A = AnglePath<Q>;

fn arrow(d: &Dimer, name: &str) -> usize {
    d.find_arrow(name).unwrap()
}

#[test]
fn torus1_face_word_is_ell() {
    let d = corpus::load("torus1");
    let j = Jacobi::new(&d).unwrap();
    let (x, y, z) = (arrow(&d, "x"), arrow(&d, "y"), arrow(&d, "z"));
    let xyz: P = j.path_element(&[(x, 1), (y, 1), (z, 1)]).unwrap();
    assert_eq!(xyz, j.ell(0));
    assert_eq!(xyz.refdeg, 1);
    assert_eq!(xyz.hclass, vec![0, 0]);
    // commutative: J = C[X,Y,Z]
    let yx: P = j.path_element(&[(y, 1), (x, 1)]).unwrap();
    let xy: P = j.path_element(&[(x, 1), (y, 1)]).unwrap();
    assert_eq!(xy, yx);
}

#[test]
fn arrow_times_inverse_is_identity() {
    for d in corpus::all() {
        let Ok(j) = Jacobi::new(&d) else { continue };
        for a in 0..d.arrow_count() {
            let e: P = j.path_element(&[(a, 1), (a, -1)]).unwrap();
            assert_eq!(e, j.identity(d.head(a)));
            let e: P = j.path_element(&[(a, -1), (a, 1)]).unwrap();
            assert_eq!(e, j.identity(d.tail(a)));
        }
    }
}

#[test]
fn multiply_laws() {
    let d = corpus::load("spp");
    let j = Jacobi::new(&d).unwrap();
    for a in 0..d.arrow_count() {
        let e: P = j.arrow(a);
        assert_eq!(e.mul(&j.identity(d.tail(a))), e);
        assert_eq!(j.identity(d.head(a)).mul(&e), e);
        // both faces of a close up to ℓ
        assert_eq!(e.mul(&j.r_plus(a)), j.ell(d.head(a)));
        assert_eq!(j.r_plus::<Q>(a).mul(&e), j.ell(d.tail(a)));
        let minus: P = j.path_element(&j.r_minus_word(a).iter().map(|&b| (b, 1)).collect::<Vec<_>>()).unwrap();
        assert_eq!(minus, j.r_plus(a));
        let plus: P = j.path_element(&j.r_plus_word(a).iter().map(|&b| (b, 1)).collect::<Vec<_>>()).unwrap();
        assert_eq!(plus, j.r_plus(a));
        // a⁻¹ = r_a⁺ ℓ⁻¹
        let inv = j.r_plus::<Q>(a).mul(&j.ell::<Q>(d.head(a)).weak_inverse().unwrap());
        assert_eq!(inv, j.arrow_inverse(a));
    }
    let l: P = j.ell(0);
    let ll = l.mul(&l);
    assert_eq!((ll.refdeg, ll.hclass.clone()), (2, vec![0, 0]));
    let mismatch = (0..d.arrow_count()).find(|&a| d.head(a) != 0).unwrap();
    assert!(l.mul(&j.arrow::<Q>(mismatch)).is_zero());
    assert_eq!(l.mul(&j.arrow::<Q>(mismatch)), P::zero());
}

#[test]
fn non_composable_word_is_rejected() {
    let d = corpus::load("spp");
    let j = Jacobi::new(&d).unwrap();
    let (a, b) = (0..d.arrow_count())
        .flat_map(|a| (0..d.arrow_count()).map(move |b| (a, b)))
        .find(|&(a, b)| d.tail(a) != d.head(b))
        .unwrap();
    assert_eq!(j.path_element::<Q>(&[(a, 1), (b, 1)]), Err(AlgebraError::NotComposable(1)));
}

/// Every composable weak word of the given length, in path order.
fn words(d: &Dimer, len: usize) -> Vec<Vec<(usize, i64)>> {
    let letters: Vec<(usize, i64)> = (0..d.arrow_count()).flat_map(|a| [(a, 1), (a, -1)]).collect();
    let ends = |&(a, s): &(usize, i64)| if s > 0 { (d.head(a), d.tail(a)) } else { (d.tail(a), d.head(a)) };
    let mut out: Vec<Vec<(usize, i64)>> = letters.iter().map(|&l| vec![l]).collect();
    for _ in 1..len {
        let mut next = Vec::new();
        for w in &out {
            let t = ends(w.last().unwrap()).1;
            for l in &letters {
                if ends(l).0 == t {
                    let mut v = w.clone();
                    v.push(*l);
                    next.push(v);
                }
            }
        }
        out = next;
    }
    out
}

fn direct_degree(m: &[usize], w: &[(usize, i64)]) -> i64 {
    w.iter().map(|&(a, s)| if m.contains(&a) { s } else { 0 }).sum()
}

#[test]
fn degrees_agree_with_direct_count() {
    for name in ["torus1", "spp", "hexagon", "gallery1"] {
        let d = corpus::load(name);
        let j = Jacobi::new(&d).unwrap();
        let ms = enumerate_matchings(&d);
        for len in 1..=3 {
            for w in words(&d, len) {
                let e: P = j.path_element(&w).unwrap();
                for (m, pm) in ms.iter().enumerate() {
                    assert_eq!(j.degree(m, &e), direct_degree(pm, &w), "{name} {w:?}");
                }
                let inverse_free = w.iter().all(|&(_, s)| s > 0);
                if inverse_free {
                    assert!(j.in_jacobi(&e));
                    assert!(e.refdeg >= 0);
                }
            }
        }
        for v in 0..d.vertex_count() {
            for m in 0..ms.len() {
                assert_eq!(j.degree(m, &j.ell::<Q>(v)), 1);
            }
        }
    }
}

#[test]
fn inverse_of_matched_arrow_leaves_jacobi() {
    let d = corpus::load("spp");
    let j = Jacobi::new(&d).unwrap();
    let ms = enumerate_matchings(&d);
    assert_eq!(ms.len(), 6);
    for a in 0..d.arrow_count() {
        let inv: P = j.arrow_inverse(a);
        let in_some = ms.iter().any(|m| m.contains(&a));
        assert_eq!(j.in_jacobi(&inv), !in_some);
        assert!(j.in_jacobi(&j.ell::<Q>(d.tail(a)).mul(&inv)));
        assert_eq!(j.ell::<Q>(d.tail(a)).mul(&inv), j.r_plus(a));
    }
}

/// Canonical forms agree exactly when the walks are homotopic (checked in the
/// universal cover) and have the same reference degree.
fn check_canonical_forms(name: &str, max_len: usize) {
    let d = corpus::load(name);
    let j = Jacobi::new(&d).unwrap();
    let hom = Homotopy::new(&d).unwrap();
    let p0 = &j.matchings()[0];
    // groups keyed by endpoints and degree; each holds (cover word, canonical form) reps
    let mut groups: HashMap<(usize, usize, i64), Vec<(Vec<i32>, P)>> = HashMap::new();
    for len in 1..=max_len {
        for w in words(&d, len) {
            let e: P = j.path_element(&w).unwrap();
            let walk: Vec<(usize, i64)> = w.iter().rev().copied().collect();
            let cover = hom.word(&walk);
            let key = (e.head, e.tail, direct_degree(p0, &w));
            let reps = groups.entry(key).or_default();
            match reps.iter().find(|(c, _)| hom.same_lift(c, &cover)) {
                Some((_, rep)) => assert_eq!(*rep, e, "{name}: {w:?}"),
                None => {
                    assert!(reps.iter().all(|(_, r)| *r != e), "{name}: distinct classes collide at {w:?}");
                    reps.push((cover, e));
                }
            }
        }
    }
}

#[test]
fn canonical_form_is_homotopy_and_degree() {
    check_canonical_forms("torus1", 6);
    check_canonical_forms("spp", 4);
    check_canonical_forms("gallery1", 4);
}

#[test]
fn face_complement_of_consecutive_pair() {
    let d = corpus::load("torus1");
    let j = Jacobi::new(&d).unwrap();
    let (x, y, z) = (arrow(&d, "x"), arrow(&d, "y"), arrow(&d, "z"));
    // positive face x·z·y: consecutive pairs are (x,z), (z,y), (y,x)
    assert_eq!(j.face_complement::<Q>(y, x).unwrap(), j.arrow(z));
    assert_eq!(j.face_complement::<Q>(x, z).unwrap(), j.arrow(y));
    assert_eq!(j.face_complement::<Q>(x, y), Err(AlgebraError::NotConsecutive(x + 1, y + 1)));
}

proptest! {
    #[test]
    fn ell_is_central(name in prop::sample::select(vec!["torus1", "spp", "hexagon", "gallery1", "gallery2"]),
                      seed in prop::collection::vec((0usize..64, any::<bool>()), 1..6)) {
        let d = corpus::load(name);
        let j = Jacobi::new(&d).unwrap();
        // random composable weak walk
        let ends = |a: usize, s: i64| if s > 0 { (d.head(a), d.tail(a)) } else { (d.tail(a), d.head(a)) };
        let mut w: Vec<(usize, i64)> = Vec::new();
        for (k, pos) in seed {
            let s = if pos { 1 } else { -1 };
            let cands: Vec<usize> = (0..d.arrow_count())
                .filter(|&a| w.last().is_none_or(|&(b, t)| ends(b, t).1 == ends(a, s).0))
                .collect();
            if cands.is_empty() { break; }
            w.push((cands[k % cands.len()], s));
        }
        prop_assume!(!w.is_empty());
        let e: P = j.path_element(&w).unwrap();
        prop_assert_eq!(j.ell::<Q>(e.head).mul(&e), e.mul(&j.ell(e.tail)));
    }
}

// ---------------------------------------------------------------- Gtl

fn angle_pairs(q: &AngleQuiver) -> Vec<(usize, usize)> {
    let mut v: Vec<(usize, usize)> = q.angles().iter().map(|x| (x.from, x.to)).collect();
    v.sort();
    v
}

fn single(q: &AngleQuiver, i: usize) -> A {
    A::new(q, vec![i]).unwrap()
}

#[test]
fn angle_quiver_shape() {
    for d in corpus::all().into_iter().chain(corpus::all().iter().map(|d| d.mirror())) {
        let q = AngleQuiver::new(&d);
        assert_eq!(q.len(), 2 * d.arrow_count());
        assert_eq!(q.relations().len(), 2 * d.arrow_count());
        for f in 0..d.face_count() {
            assert_eq!(q.face_cycle(f, d.face(f).arrows[0]).len(), d.face(f).len());
        }
        for i in 0..q.len() {
            assert_eq!(q.prev(q.next(i)), i);
        }
    }
    // torus1: α_i: 1→3, γ_i: 3→2, β_i: 2→1, two of each
    let q = AngleQuiver::new(&corpus::load("torus1"));
    assert_eq!(angle_pairs(&q), vec![(0, 2), (0, 2), (1, 0), (1, 0), (2, 1), (2, 1)]);
}

#[test]
fn torus1_relations() {
    let q = AngleQuiver::new(&corpus::load("torus1"));
    let alphas: Vec<usize> = (0..q.len()).filter(|&i| (q.angle(i).from, q.angle(i).to) == (0, 2)).collect();
    let betas: Vec<usize> = (0..q.len()).filter(|&i| (q.angle(i).from, q.angle(i).to) == (1, 0)).collect();
    for &a in &alphas {
        for &b in &betas {
            let r = gtl_mu(&q, &[single(&q, a), single(&q, b)]).unwrap();
            // α_iβ_i = 0, α_iβ_j ≠ 0
            assert_eq!(r.is_zero(), q.angle(a).face == q.angle(b).face);
        }
    }
}

#[test]
fn vertex_argument_kills_higher_products() {
    let q = AngleQuiver::new(&corpus::load("torus1"));
    let a = single(&q, 0);
    let v = A::vertex(a.tail);
    let b = single(&q, q.out_angles(a.tail)[1]);
    let b = A::new(&q, vec![*b.angles.last().unwrap()]).unwrap();
    let seq = [a.clone(), v, b.clone()];
    if seq[0].tail == seq[2].head {
        assert!(gtl_mu(&q, &seq).unwrap().is_zero());
    }
    assert!(gtl_mu(&q, &[A::vertex(a.head), a.clone(), A::vertex(a.tail)]).unwrap().is_zero());
    assert_eq!(gtl_mu(&q, &[A::vertex(a.head), a.clone()]).unwrap(), a);
}

#[test]
fn non_composable_sequence_is_an_error() {
    let q = AngleQuiver::new(&corpus::load("spp"));
    let (i, k) = (0..q.len())
        .flat_map(|i| (0..q.len()).map(move |k| (i, k)))
        .find(|&(i, k)| q.angle(i).from != q.angle(k).to)
        .unwrap();
    assert!(matches!(gtl_mu(&q, &[single(&q, i), single(&q, k)]), Err(AlgebraError::NotComposable(1))));
}

fn to_paths(q: &AngleQuiver, entries: &[Vec<usize>]) -> Vec<A> {
    entries.iter().map(|e| A::new(q, e.clone()).unwrap()).collect()
}

/// Nonzero angle paths of length 1 and 2 with the given head.
fn short_paths(q: &AngleQuiver, head: usize) -> Vec<A> {
    let mut out = Vec::new();
    for i in 0..q.len() {
        if q.angle(i).to != head {
            continue;
        }
        out.push(single(q, i));
        for k in 0..q.len() {
            if q.angle(k).to == q.angle(i).from {
                let p = A::new(q, vec![i, k]).unwrap();
                if !p.is_zero() {
                    out.push(p);
                }
            }
        }
    }
    out
}

fn sign(n: usize) -> Q {
    if n % 2 == 1 {
        -Q::one()
    } else {
        Q::one()
    }
}

struct DiscStats {
    checked: usize,
}

fn check_discs(d: &Dimer, max_faces: usize, max_entries: usize, grading: Option<&[usize]>) -> DiscStats {
    let q = AngleQuiver::new(d);
    let mut checked = 0;
    for entries in disc_sequences(d, &q, max_faces, max_entries) {
        let k = entries.len();
        for r in 0..k {
            let rot: Vec<Vec<usize>> = (0..k).map(|i| entries[(i + r) % k].clone()).collect();
            let seq = to_paths(&q, &rot);
            for w in seq.windows(2) {
                assert!(w[0].mul(&q, &w[1]).is_zero());
            }
            let mut cases: Vec<(Vec<A>, A)> = Vec::new();
            for beta in short_paths(&q, seq[k - 1].tail) {
                let last = seq[k - 1].mul(&q, &beta);
                if last.is_zero() {
                    continue;
                }
                let mut s = seq.clone();
                s[k - 1] = last;
                cases.push((s, beta));
            }
            for b in (0..d.arrow_count()).flat_map(|h| short_paths(&q, h)) {
                if b.tail != seq[0].head {
                    continue;
                }
                let first = b.mul(&q, &seq[0]);
                if first.is_zero() {
                    continue;
                }
                let mut s = seq.clone();
                s[0] = first;
                cases.push((s, b));
            }
            cases.dedup_by(|x, y| x.0 == y.0);
            for (s, beta) in cases {
                let got = gtl_mu(&q, &s).unwrap();
                let want = beta.scale(&sign(beta.len()));
                assert_eq!(got, want, "{}: {:?}", d.name(), s.iter().map(|p| p.display(&q)).collect::<Vec<_>>());
                if k > 2 {
                    for lo in 0..k {
                        for hi in lo + 2..=k {
                            if hi - lo < k {
                                assert!(gtl_mu(&q, &s[lo..hi]).unwrap().is_zero(), "proper subsequence {lo}..{hi}");
                            }
                        }
                    }
                }
                if let Some(m) = grading {
                    let total: i64 = s.iter().map(|p| p.degree(&q, m)).sum();
                    assert_eq!(got.degree(&q, m), total + 2 - k as i64);
                }
                checked += 1;
            }
        }
    }
    DiscStats { checked }
}

#[test]
fn disc_sequences_give_closed_form() {
    let t = corpus::load("torus1");
    let m = enumerate_matchings(&t)[0].clone();
    assert!(check_discs(&t, 4, 6, Some(&m)).checked > 0);
    let s = corpus::load("spp").mirror();
    let m = enumerate_matchings(&s).first().cloned();
    assert!(check_discs(&s, 3, 6, m.as_deref()).checked > 0);
}

#[test]
fn face_cycles_have_degree_length_minus_two() {
    for name in ["torus1", "spp", "hexagon", "gallery1"] {
        let d = corpus::load(name);
        let q = AngleQuiver::new(&d);
        for m in enumerate_matchings(&d) {
            for f in 0..d.face_count() {
                let cyc = q.face_cycle(f, d.face(f).arrows[0]);
                let deg: i64 = cyc.iter().map(|&i| q.angle_degree(i, &m)).sum();
                assert_eq!(deg, d.face(f).len() as i64 - 2);
            }
        }
    }
}

#[test]
fn coefficients_multiply_through() {
    let d = corpus::load("torus1");
    let q = AngleQuiver::new(&d);
    let entries = &disc_sequences(&d, &q, 1, 3)[0];
    let mut seq = to_paths(&q, entries);
    let beta = short_paths(&q, seq[2].tail).into_iter().find(|b| !seq[2].mul(&q, b).is_zero()).unwrap();
    seq[2] = seq[2].mul(&q, &beta);
    let two = Q::from_integer(2.into());
    let three = Q::from_integer(3.into());
    seq[0] = seq[0].scale(&two);
    seq[1] = seq[1].scale(&three);
    let got = gtl_mu(&q, &seq).unwrap();
    assert_eq!(got.coeff, two * three * sign(beta.len()));
    assert!(!got.coeff.is_zero());
}

#[test]
fn reference_matching_shifts_degrees_consistently() {
    let d = corpus::load("spp");
    let base = Jacobi::new(&d).unwrap();
    let n = base.matchings().len();
    assert!(matches!(Jacobi::with_reference(&d, n), Err(AlgebraError::NoMatching(_))));
    let words: Vec<Vec<(usize, i64)>> = (0..d.arrow_count()).flat_map(|a| [vec![(a, 1)], vec![(a, -1)]]).collect();
    for r in 0..n {
        let j = Jacobi::with_reference(&d, r).unwrap();
        assert_eq!(j.reference(), r);
        for w in &words {
            let (e0, e1): (P, P) = (base.path_element(w).unwrap(), j.path_element(w).unwrap());
            // refdeg is the degree under the reference; every P-degree is independent of it
            assert_eq!(e1.refdeg, base.degree(r, &e0));
            for m in 0..n {
                assert_eq!(j.degree(m, &e1), base.degree(m, &e0));
            }
            assert_eq!(j.in_jacobi(&e1), base.in_jacobi(&e0));
        }
    }
}
