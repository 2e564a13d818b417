//! Fundamental group of the surface, enough to decide whether a closed walk
//! is contractible.
//!
//! Contracting a spanning tree and then merging faces along a spanning tree
//! of the dual graph leaves one vertex and one face. The remaining arrows
//! generate `π₁` with the single relator read around that face. In the
//! universal cover of a closed surface of genus ≥ 2 every vertex of this
//! one-vertex map has degree ≥ 8, so two lifts of the face share at most one
//! edge and the relator satisfies C′(1/6); Dehn's algorithm then decides the
//! word problem. Genus 0 and 1 are handled directly (trivial group, `ℤ²`).

use std::collections::VecDeque;

use crate::dimer::Dimer;
use crate::error::DimerError;
use crate::homology::Homology;

/// Free-group word; letter `±(g + 1)` is generator `g` with exponent `±1`.
pub type Word = Vec<i32>;

pub fn invert(w: &[i32]) -> Word {
    w.iter().rev().map(|x| -x).collect()
}

pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct Homotopy {
    genus: i64,
    homology: Homology,
    /// word of each arrow traversed forward
    letters: Vec<Word>,
    relator: Word,
}

impl Homotopy {
    pub fn new(d: &Dimer) -> Result<Homotopy, DimerError> {
        let (_, genus) = d.surface_invariants()?;
        let homology = Homology::new(d)?;
        let e = d.arrow_count();
        // dual spanning tree over faces, avoiding primal tree arrows
        let f = d.face_count();
        let mut parent_edge: Vec<Option<usize>> = vec![None; f];
        let mut seen = vec![false; f];
        let mut order = Vec::with_capacity(f);
        let mut cotree = vec![false; e];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &a in &d.face(x).arrows {
                if homology.in_tree(a) {
                    continue;
                }
                let y = d.other_face(a, x);
                if !seen[y] {
                    seen[y] = true;
                    parent_edge[y] = Some(a);
                    cotree[a] = true;
                    queue.push_back(y);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(DimerError::Invalid("dual graph is disconnected".into()));
        }
        let mut gen_of = vec![None; e];
        let mut next = 0i32;
        for a in 0..e {
            if !homology.in_tree(a) && !cotree[a] {
                next += 1;
                gen_of[a] = Some(next);
            }
        }
        let mut letters: Vec<Option<Word>> = (0..e)
            .map(|a| {
                if homology.in_tree(a) {
                    Some(Vec::new())
                } else {
                    gen_of[a].map(|g| vec![g])
                }
            })
            .collect();
        // leaves of the dual tree first: each face expresses its parent edge
        for &x in order.iter().rev() {
            let Some(c) = parent_edge[x] else { continue };
            let walk: Vec<usize> = d.face(x).arrows.iter().rev().copied().collect();
            let i = walk.iter().position(|&a| a == c).expect("edge lies on face");
            let mut before = Vec::new();
            for &a in &walk[..i] {
                before.extend(letters[a].clone().expect("expressed"));
            }
            let mut after = Vec::new();
            for &a in &walk[i + 1..] {
                after.extend(letters[a].clone().expect("expressed"));
            }
            let mut w = invert(&before);
            w.extend(invert(&after));
            letters[c] = Some(free_reduce(&w));
        }
        let letters: Vec<Word> = letters.into_iter().map(|w| w.expect("every arrow expressed")).collect();
        let mut relator = Vec::new();
        for &a in d.face(0).arrows.iter().rev() {
            relator.extend(letters[a].iter().copied());
        }
        let relator = cyclic_reduce(&free_reduce(&relator));
        Ok(Homotopy { genus, homology, letters, relator })
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    pub fn relator(&self) -> &[i32] {
        &self.relator
    }

    /// Word of a walk given as `(arrow, ±1)` in walking order, relative to the tree paths.
    pub fn word(&self, walk: &[(usize, i64)]) -> Word {
        let mut w = Vec::new();
        for &(a, s) in walk {
            if s > 0 {
                w.extend(self.letters[a].iter().copied());
            } else {
                w.extend(invert(&self.letters[a]));
            }
        }
        free_reduce(&w)
    }

    pub fn letter(&self, a: usize) -> &[i32] {
        &self.letters[a]
    }

    pub fn is_trivial(&self, w: &[i32]) -> bool {
        let w = free_reduce(w);
        if w.is_empty() || self.genus == 0 {
            return true;
        }
        if self.genus == 1 {
            // π₁ is abelian: compare exponent sums through the tree-relative letters
            let mut sums = vec![0i64; self.relator.iter().map(|x| x.unsigned_abs() as usize).max().unwrap_or(0) + 1];
            for &x in &w {
                let g = x.unsigned_abs() as usize;
                if g >= sums.len() {
                    sums.resize(g + 1, 0);
                }
                sums[g] += x.signum() as i64;
            }
            return sums.iter().all(|&s| s == 0);
        }
        dehn(&w, &self.relator)
    }

    /// Whether two walks from the same point end at the same lift.
    pub fn same_lift(&self, w1: &[i32], w2: &[i32]) -> bool {
        let mut w = w1.to_vec();
        w.extend(invert(w2));
        self.is_trivial(&w)
    }

    pub fn homology(&self) -> &Homology {
        &self.homology
    }
}

fn cyclic_reduce(w: &[i32]) -> Word {
    let mut w = w.to_vec();
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.remove(0);
        w.pop();
    }
    w
}

/// Dehn's algorithm for a single C′(1/6) relator.
fn dehn(w: &[i32], r: &[i32]) -> bool {
    let n = r.len();
    let mut rels: Vec<Word> = Vec::with_capacity(2 * n);
    for base in [r.to_vec(), invert(r)] {
        for k in 0..n {
            let mut c = base[k..].to_vec();
            c.extend_from_slice(&base[..k]);
            rels.push(c);
        }
    }
    let mut w = free_reduce(w);
    'outer: while !w.is_empty() {
        for i in 0..w.len() {
            for rel in &rels {
                let l = w[i..].iter().zip(rel).take_while(|(x, y)| x == y).count();
                if 2 * l > n {
                    // w[i..i+l] = rel[..l] = (rel[l..])⁻¹ in the group
                    let mut next = w[..i].to_vec();
                    next.extend(invert(&rel[l..]));
                    next.extend_from_slice(&w[i + l..]);
                    w = free_reduce(&next);
                    continue 'outer;
                }
            }
        }
        // no long relator piece left; try the cyclic conjugate once before giving up
        let c = cyclic_reduce(&w);
        if c.len() < w.len() {
            w = c;
            continue;
        }
        return false;
    }
    true
}
