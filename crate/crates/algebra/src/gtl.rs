//! The angle quiver `ϙ` of a dimer and the algebra `Gtl` with its higher
//! products.
//!
//! Vertices of `ϙ` are the arrows of the dimer. Inside every face there is
//! one angle per corner, joining consecutive arrows: in a positive face the
//! angle leaves `a` towards the arrow before it in walking order, in a
//! negative face towards the arrow after it. Two consecutive angles of the
//! same face compose to zero.
//!
//! Higher products come from the disc rule: a sequence
//! `(…, ρᵢβ₁, β₂, …, β_{l−1}, β_lρ_{i+1}, …)` in which `β₁…β_l` is a full face
//! cycle reduces to `(…, ρᵢ, ρ_{i+1}, …)`. Reductions are applied leftmost
//! first until two entries remain, whose product is the answer.
//!
//! Sign convention: intermediate reductions carry no sign and a surviving
//! product `r` of a product of arity `k ≥ 3` is returned as `(−1)^{|r|} r`.
//! This gives `μ(ρ₁,…,ρ_kβ) = (−1)^{|β|}β = μ(βρ₁,…,ρ_k)` on every disc
//! sequence independently of the reduction order.

use std::fmt;

use dimer_core::{Dimer, Scalar, Sign};

use crate::AlgebraError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Angle {
    pub face: usize,
    pub sign: Sign,
    /// tail (an arrow of the dimer)
    pub from: usize,
    /// head
    pub to: usize,
}

#[derive(Debug, Clone)]
pub struct AngleQuiver {
    dimer: Dimer,
    angles: Vec<Angle>,
    /// `out[a]` = the angles leaving arrow `a`, positive face first
    out: Vec<[usize; 2]>,
}

impl AngleQuiver {
    pub fn new(d: &Dimer) -> AngleQuiver {
        let mut angles = Vec::with_capacity(2 * d.arrow_count());
        let mut out = vec![[usize::MAX; 2]; d.arrow_count()];
        for (f, face) in d.faces().iter().enumerate() {
            let n = face.arrows.len();
            for (i, &a) in face.arrows.iter().enumerate() {
                let to = match face.sign {
                    Sign::Pos => face.arrows[(i + 1) % n],
                    Sign::Neg => face.arrows[(i + n - 1) % n],
                };
                let slot = (face.sign == Sign::Neg) as usize;
                out[a][slot] = angles.len();
                angles.push(Angle { face: f, sign: face.sign, from: a, to });
            }
        }
        AngleQuiver { dimer: d.clone(), angles, out }
    }

    pub fn dimer(&self) -> &Dimer {
        &self.dimer
    }

    pub fn angles(&self) -> &[Angle] {
        &self.angles
    }

    pub fn angle(&self, i: usize) -> &Angle {
        &self.angles[i]
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// The angle leaving arrow `a` inside face `f`.
    pub fn out_angle(&self, f: usize, a: usize) -> usize {
        let [p, n] = self.out[a];
        if self.angles[p].face == f {
            p
        } else {
            assert_eq!(self.angles[n].face, f, "arrow does not lie on face");
            n
        }
    }

    pub fn out_angles(&self, a: usize) -> [usize; 2] {
        self.out[a]
    }

    /// The angle after `i` in its face cycle (walking order).
    pub fn next(&self, i: usize) -> usize {
        let x = &self.angles[i];
        self.out_angle(x.face, x.to)
    }

    /// The angle before `i` in its face cycle.
    pub fn prev(&self, i: usize) -> usize {
        let x = &self.angles[i];
        let f = &self.dimer.face(x.face).arrows;
        let n = f.len();
        let k = f.iter().position(|&a| a == x.from).expect("arrow on face");
        let from = match x.sign {
            Sign::Pos => f[(k + n - 1) % n],
            Sign::Neg => f[(k + 1) % n],
        };
        self.out_angle(x.face, from)
    }

    /// Defining relations `β·α = 0` for consecutive `α`, `β` in one face, as
    /// `(β, α)` in path order.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        (0..self.angles.len()).map(|i| (self.next(i), i)).collect()
    }

    /// `−1` if the angle arrives in an arrow of the matching, `+1` otherwise.
    pub fn angle_degree(&self, i: usize, matching: &[usize]) -> i64 {
        if matching.contains(&self.angles[i].to) {
            -1
        } else {
            1
        }
    }

    /// Angle cycle of face `f` in walking order starting at arrow `a`.
    pub fn face_cycle(&self, f: usize, a: usize) -> Vec<usize> {
        let start = self.out_angle(f, a);
        let mut cyc = vec![start];
        let mut x = self.next(start);
        while x != start {
            cyc.push(x);
            x = self.next(x);
        }
        cyc
    }

    pub fn angle_name(&self, i: usize) -> String {
        let x = &self.angles[i];
        format!("{}{}:{}>{}", x.sign.symbol(), x.face + 1, self.dimer.arrow_name(x.from), self.dimer.arrow_name(x.to))
    }
}

/// Scalar multiple of a path of angles, stored in path order (`t(γ_i) = h(γ_{i+1})`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AnglePath<K> {
    pub angles: Vec<usize>,
    pub head: usize,
    pub tail: usize,
    pub coeff: K,
}

impl<K: Scalar> AnglePath<K> {
    pub fn zero() -> Self {
        AnglePath { angles: Vec::new(), head: 0, tail: 0, coeff: K::zero() }
    }

    /// Idempotent at a vertex of `ϙ`, i.e. an arrow of the dimer.
    pub fn vertex(a: usize) -> Self {
        AnglePath { angles: Vec::new(), head: a, tail: a, coeff: K::one() }
    }

    /// A path from angles in path order; zero if it passes a relation.
    pub fn new(q: &AngleQuiver, angles: Vec<usize>) -> Result<Self, AlgebraError> {
        let Some(&first) = angles.first() else {
            return Err(AlgebraError::NotComposable(0));
        };
        for i in 1..angles.len() {
            if q.angle(angles[i - 1]).from != q.angle(angles[i]).to {
                return Err(AlgebraError::NotComposable(i));
            }
        }
        let last = *angles.last().expect("nonempty");
        let mut p = AnglePath { head: q.angle(first).to, tail: q.angle(last).from, angles, coeff: K::one() };
        if p.has_relation(q) {
            p = Self::zero();
        }
        Ok(p)
    }

    /// A path from angles in walking order.
    pub fn from_walk(q: &AngleQuiver, walk: &[usize]) -> Result<Self, AlgebraError> {
        Self::new(q, walk.iter().rev().copied().collect())
    }

    fn has_relation(&self, q: &AngleQuiver) -> bool {
        self.angles.windows(2).any(|w| q.angle(w[0]).face == q.angle(w[1]).face)
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_vertex(&self) -> bool {
        !self.is_zero() && self.angles.is_empty()
    }

    /// Length, which is also the `ℤ₂` degree.
    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn scale(&self, c: &K) -> Self {
        let coeff = self.coeff.clone() * c.clone();
        if coeff.is_zero() {
            Self::zero()
        } else {
            AnglePath { coeff, ..self.clone() }
        }
    }

    /// Product in `Gtl`: concatenation, zero across a relation or a mismatch.
    pub fn mul(&self, q: &AngleQuiver, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() || self.tail != other.head {
            return Self::zero();
        }
        if let (Some(&x), Some(&y)) = (self.angles.last(), other.angles.first()) {
            if q.angle(x).face == q.angle(y).face {
                return Self::zero();
            }
        }
        let mut angles = self.angles.clone();
        angles.extend_from_slice(&other.angles);
        AnglePath { angles, head: self.head, tail: other.tail, coeff: self.coeff.clone() * other.coeff.clone() }
    }

    /// `ℤ`-degree for the grading induced by a perfect matching.
    pub fn degree(&self, q: &AngleQuiver, matching: &[usize]) -> i64 {
        self.angles.iter().map(|&i| q.angle_degree(i, matching)).sum()
    }

    pub fn display(&self, q: &AngleQuiver) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let body = if self.angles.is_empty() {
            format!("e[{}]", q.dimer().arrow_name(self.head))
        } else {
            self.angles.iter().map(|&i| q.angle_name(i)).collect::<Vec<_>>().join(" . ")
        };
        if self.coeff.is_one() {
            body
        } else {
            format!("{} * {}", self.coeff, body)
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}:{}>{}", self.sign.symbol(), self.face + 1, self.from + 1, self.to + 1)
    }
}

/// One entry during reduction: a bare path of angles between two vertices.
#[derive(Debug, Clone)]
struct Piece {
    angles: Vec<usize>,
    head: usize,
    tail: usize,
}

/// Leftmost `(ρᵢβ₁, β₂, …, β_{l−1}, β_lρ_{i+1})` block; returns its start and length.
fn find_block(q: &AngleQuiver, seq: &[Piece]) -> Option<(usize, usize)> {
    for j in 0..seq.len() {
        let Some(&b1) = seq[j].angles.last() else { continue };
        let l = q.dimer().face(q.angle(b1).face).len();
        if l < 3 || j + l > seq.len() {
            continue;
        }
        // β_{m+1} precedes β_m when walking, since t(β_m) = h(β_{m+1})
        let mut expect = q.prev(b1);
        let mut ok = true;
        for piece in &seq[j + 1..j + l - 1] {
            if piece.angles.len() != 1 || piece.angles[0] != expect {
                ok = false;
                break;
            }
            expect = q.prev(expect);
        }
        if ok && seq[j + l - 1].angles.first() == Some(&expect) {
            return Some((j, l));
        }
    }
    None
}

/// The products `μ_k` of `Gtl` on a composable sequence (entry `i` followed
/// by entry `i+1` means `t(ρᵢ) = h(ρ_{i+1})`).
pub fn gtl_mu<K: Scalar>(q: &AngleQuiver, seq: &[AnglePath<K>]) -> Result<AnglePath<K>, AlgebraError> {
    if seq.is_empty() {
        return Err(AlgebraError::NotComposable(0));
    }
    for i in 1..seq.len() {
        if !seq[i - 1].is_zero() && !seq[i].is_zero() && seq[i - 1].tail != seq[i].head {
            return Err(AlgebraError::NotComposable(i));
        }
    }
    if seq.iter().any(|p| p.is_zero()) || seq.len() == 1 {
        return Ok(AnglePath::zero());
    }
    if seq.len() == 2 {
        return Ok(seq[0].mul(q, &seq[1]));
    }
    let mut coeff = K::one();
    for p in seq {
        coeff = coeff * p.coeff.clone();
    }
    let mut work: Vec<Piece> =
        seq.iter().map(|p| Piece { angles: p.angles.clone(), head: p.head, tail: p.tail }).collect();
    while work.len() >= 3 {
        if work.iter().any(|p| p.angles.is_empty()) {
            return Ok(AnglePath::zero());
        }
        let Some((j, l)) = find_block(q, &work) else {
            return Ok(AnglePath::zero());
        };
        let first = &work[j];
        let last = &work[j + l - 1];
        let b1 = *first.angles.last().expect("nonempty");
        let bl = last.angles[0];
        let left = Piece {
            angles: first.angles[..first.angles.len() - 1].to_vec(),
            head: first.head,
            tail: q.angle(b1).to,
        };
        let right = Piece { angles: last.angles[1..].to_vec(), head: q.angle(bl).from, tail: last.tail };
        work.splice(j..j + l, [left, right]);
    }
    let a = AnglePath { angles: work[0].angles.clone(), head: work[0].head, tail: work[0].tail, coeff: K::one() };
    let b = AnglePath { angles: work[1].angles.clone(), head: work[1].head, tail: work[1].tail, coeff: K::one() };
    let r = a.mul(q, &b);
    if r.is_zero() {
        return Ok(r);
    }
    let sign = if r.len() % 2 == 1 { K::zero() - K::one() } else { K::one() };
    Ok(r.scale(&(coeff * sign)))
}

/// Boundary tours of trees of faces glued along arrows. These are exactly the
/// discs of the universal cover of the punctured surface; each tour is
/// returned as entries in sequence order (cut where consecutive angles share
/// a face).
pub fn disc_sequences(d: &Dimer, q: &AngleQuiver, max_faces: usize, max_entries: usize) -> Vec<Vec<Vec<usize>>> {
    // node: (face, glued arrows → neighbour node)
    type Tree = Vec<(usize, Vec<(usize, usize)>)>;
    let mut trees: Vec<Tree> = (0..d.face_count()).map(|f| vec![(f, Vec::new())]).collect();
    let mut all = trees.clone();
    for _ in 1..max_faces {
        let mut next = Vec::new();
        for t in &trees {
            // grow only from the newest node or later-created ones to limit duplicates
            for n in 0..t.len() {
                for &a in &d.face(t[n].0).arrows {
                    if t[n].1.iter().any(|&(b, _)| b == a) {
                        continue;
                    }
                    let mut u = t.clone();
                    let g = d.other_face(a, t[n].0);
                    let id = u.len();
                    u.push((g, vec![(a, n)]));
                    u[n].1.push((a, id));
                    next.push(u);
                }
            }
        }
        all.extend(next.iter().cloned());
        trees = next;
    }
    let mut out = Vec::new();
    for t in &all {
        // start at a leaf-side unglued arrow
        let (n0, a0) = t
            .iter()
            .enumerate()
            .find_map(|(n, (f, glued))| {
                d.face(*f).arrows.iter().find(|&&a| glued.iter().all(|&(b, _)| b != a)).map(|&a| (n, a))
            })
            .expect("some unglued arrow");
        let (mut n, mut a) = (n0, a0);
        let mut walk: Vec<usize> = Vec::new();
        let mut cut_after: Vec<bool> = Vec::new();
        loop {
            let x = q.out_angle(t[n].0, a);
            walk.push(x);
            let b = q.angle(x).to;
            match t[n].1.iter().find(|&&(c, _)| c == b) {
                Some(&(_, m)) => {
                    n = m;
                    cut_after.push(false);
                }
                None => cut_after.push(true),
            }
            a = b;
            if (n, a) == (n0, a0) {
                break;
            }
        }
        // runs in walking order, then reverse everything into path order
        let mut runs: Vec<Vec<usize>> = vec![Vec::new()];
        for (x, cut) in walk.iter().zip(&cut_after) {
            runs.last_mut().unwrap().push(*x);
            if *cut {
                runs.push(Vec::new());
            }
        }
        runs.pop();
        let entries: Vec<Vec<usize>> = runs.into_iter().rev().map(|r| r.into_iter().rev().collect()).collect();
        if entries.len() <= max_entries {
            out.push(entries);
        }
    }
    out
}
