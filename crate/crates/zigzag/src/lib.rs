//! Zigzag cycles and zigzag consistency.
//!
//! A zigzag cycle alternates between turning in a positive and in a negative
//! face: `a₀, a₁ = σ₊(a₀), a₂ = σ₋(a₁), …`. Its even positions form a cycle of
//! `σ₋∘σ₊`.

use dimer_core::lattice::{self, Point};
use dimer_core::homotopy::Word;
use dimer_core::{perm, Dimer, Homology, Homotopy, Sign};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZigzagCycle {
    /// walking order, starting at the smallest arrow of the even support
    pub arrows: Vec<usize>,
    pub even_support: Vec<usize>,
    pub hclass: Vec<i64>,
}

impl ZigzagCycle {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn class2(&self) -> Point {
        [self.hclass[0], self.hclass[1]]
    }

    pub fn chain(&self, arrow_count: usize) -> Vec<i64> {
        let mut c = vec![0; arrow_count];
        for &a in &self.arrows {
            c[a] += 1;
        }
        c
    }
}

/// `σ₋∘σ₊`
pub fn zigzag_permutation(d: &Dimer) -> Vec<usize> {
    perm::compose(d.sigma_minus(), d.sigma_plus())
}

pub fn zigzag_cycles(d: &Dimer, h: &Homology) -> Vec<ZigzagCycle> {
    let e = d.arrow_count();
    perm::cycles(&zigzag_permutation(d))
        .into_iter()
        .map(|even| {
            let arrows: Vec<usize> = even.iter().flat_map(|&a| [a, d.sigma_plus()[a]]).collect();
            let mut chain = vec![0; e];
            for &a in &arrows {
                chain[a] += 1;
            }
            let mut even_support = even;
            even_support.sort_unstable();
            ZigzagCycle { hclass: h.class_of(&chain), arrows, even_support }
        })
        .collect()
}

/// Index of the zigzag cycle whose even support contains each arrow, i.e. the
/// cycle that turns from `a` to `σ₊(a)` inside the positive face of `a`.
pub fn zig_owner(d: &Dimer) -> Vec<usize> {
    perm::cycle_index(&zigzag_permutation(d)).0
}

/// Failure of the cyclic-order test at one positive face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceWitness {
    pub face: usize,
    /// (arrow, zigzag cycle turning there, its class) in walking order
    pub turns: Vec<(usize, usize, Point)>,
}

/// Zig and zag ray of `arrow` meeting again at `shared` in the cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayOverlap {
    pub arrow: usize,
    pub shared: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyReport {
    /// `None` when the surface is not a torus
    pub well_ordered: Option<bool>,
    pub order_failures: Vec<FaceWitness>,
    pub ray_check: bool,
    pub ray_overlaps: Vec<RayOverlap>,
    /// indices of zigzag cycles with class 0
    pub zero_class: Vec<usize>,
    /// (cycle, face) pairs where one cycle turns twice in the same positive face
    pub double_turns: Vec<(usize, usize)>,
    pub consistent: bool,
}

/// Zig-turns of a positive face in walking order.
fn face_turns(d: &Dimer, owner: &[usize], f: usize) -> Vec<(usize, usize)> {
    // faces are stored in path order; walking order is the reverse
    d.face(f).arrows.iter().rev().map(|&a| (a, owner[a])).collect()
}

/// Whether the cyclic sequence of nonzero classes winds once, weakly monotonically,
/// counterclockwise (`ccw = true`) or clockwise.
fn cyclically_ordered(classes: &[Point], ccw: bool) -> bool {
    let mut seq: Vec<Point> = classes.iter().copied().filter(|c| *c != [0, 0]).collect();
    if !ccw {
        seq.reverse();
    }
    lattice::weakly_ccw_ordered(&seq)
}

/// A face passes when every zigzag cycle turns in it at most once and the
/// classes of its turns are cyclically ordered; equal classes of distinct
/// cycles count as ties.
fn face_ordered(turns: &[(usize, usize, Point)], ccw: bool) -> bool {
    let mut owners: Vec<usize> = turns.iter().map(|t| t.1).collect();
    owners.sort_unstable();
    owners.dedup();
    owners.len() == turns.len() && cyclically_ordered(&turns.iter().map(|t| t.2).collect::<Vec<_>>(), ccw)
}

/// Lifted positions of a ray: each arrow with the word of the walk before it.
fn ray(d: &Dimer, pi: &Homotopy, start: usize, first: Sign, steps: usize) -> Vec<(usize, Word)> {
    let mut walk = Vec::with_capacity(steps);
    let mut out = Vec::with_capacity(steps);
    let mut a = start;
    let mut sign = first;
    for _ in 0..steps {
        out.push((a, pi.word(&walk)));
        walk.push((a, 1));
        a = d.sigma(sign)[a];
        sign = sign.flip();
    }
    out
}

/// Arrows other than the start shared by the zig and zag ray of each arrow in
/// the universal cover. Each ray is followed for `4·#faces` steps or two
/// periods of the longest zigzag cycle, whichever is longer.
pub fn ray_overlaps(d: &Dimer) -> Vec<RayOverlap> {
    let pi = Homotopy::new(d).expect("a valid dimer lives on a closed surface");
    let longest = perm::cycles(&zigzag_permutation(d)).iter().map(|c| 2 * c.len()).max().unwrap_or(0);
    let steps = (4 * d.face_count()).max(2 * longest) + 1;
    let mut out = Vec::new();
    for a in 0..d.arrow_count() {
        let zig = ray(d, &pi, a, Sign::Pos, steps);
        let zag = ray(d, &pi, a, Sign::Neg, steps);
        let mut shared: Vec<usize> = Vec::new();
        for (i, (b, wb)) in zig.iter().enumerate() {
            let hit = zag.iter().enumerate().any(|(j, (c, wc))| (i, j) != (0, 0) && b == c && pi.same_lift(wb, wc));
            if hit && !shared.contains(b) {
                shared.push(*b);
            }
        }
        shared.sort_unstable();
        out.extend(shared.into_iter().map(|b| RayOverlap { arrow: a, shared: b }));
    }
    out
}

pub fn is_consistent(d: &Dimer, h: &Homology) -> ConsistencyReport {
    let cycles = zigzag_cycles(d, h);
    let owner = zig_owner(d);
    let zero_class: Vec<usize> =
        cycles.iter().enumerate().filter(|(_, c)| c.hclass.iter().all(|&x| x == 0)).map(|(i, _)| i).collect();
    let mut double_turns = Vec::new();
    for (f, _) in d.positive_faces() {
        let turns = face_turns(d, &owner, f);
        let mut seen: Vec<usize> = turns.iter().map(|t| t.1).collect();
        seen.sort_unstable();
        for w in seen.windows(2) {
            if w[0] == w[1] && !double_turns.contains(&(w[0], f)) {
                double_turns.push((w[0], f));
            }
        }
    }
    let overlaps = ray_overlaps(d);
    let ray_check = overlaps.is_empty();
    let (well_ordered, order_failures) = if h.is_torus() {
        let faces: Vec<(usize, Vec<(usize, usize, Point)>)> =
            d.positive_faces()
                .map(|(f, _)| {
                    let turns = face_turns(d, &owner, f).into_iter().map(|(a, z)| (a, z, cycles[z].class2())).collect();
                    (f, turns)
                })
                .collect();
        let fails = |ccw: bool| -> Vec<FaceWitness> {
            faces
                .iter()
                .filter(|(_, t)| !face_ordered(t, ccw))
                .map(|(f, t)| FaceWitness { face: *f, turns: t.clone() })
                .collect()
        };
        let ccw = fails(true);
        let cw = fails(false);
        let best = if ccw.len() <= cw.len() { ccw } else { cw };
        (Some(best.is_empty()), best)
    } else {
        (None, Vec::new())
    };
    let consistent = match well_ordered {
        Some(w) => w && zero_class.is_empty(),
        None => ray_check,
    };
    ConsistencyReport { well_ordered, order_failures, ray_check, ray_overlaps: overlaps, zero_class, double_turns, consistent }
}

/// Compare zigzag classes with the outward edge normals of the matching
/// polygon (repeated by lattice length). The two bases are dual, so the only
/// freedom is a global sign; returns it when the multisets agree.
pub fn compare_with_normals(cycles: &[ZigzagCycle], normals: &[Point]) -> Option<i64> {
    let mut classes: Vec<Point> = cycles.iter().map(ZigzagCycle::class2).collect();
    classes.sort();
    for sign in [1, -1] {
        let mut n: Vec<Point> = normals.iter().map(|p| [sign * p[0], sign * p[1]]).collect();
        n.sort();
        if n == classes {
            return Some(sign);
        }
    }
    None
}
