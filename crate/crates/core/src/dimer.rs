use std::collections::VecDeque;
use std::fmt;

use crate::error::DimerError;
use crate::perm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Pos => "positive",
            Sign::Neg => "negative",
        })
    }
}

/// A face cycle. Arrows are stored in path order: `t(a_i) = h(a_{i+1})`, so the
/// arrow walked first is the last one in the list. Stored rotated so that the
/// smallest arrow index comes first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Face {
    pub sign: Sign,
    pub arrows: Vec<usize>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.arrows.contains(&a)
    }
}

/// A quiver embedded in a closed oriented surface.
///
/// Arrows, vertices and faces are 0-based internally; the text format and all
/// reports use 1-based ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dimer {
    name: String,
    vertex_count: usize,
    head: Vec<usize>,
    tail: Vec<usize>,
    labels: Vec<Option<String>>,
    sigma_plus: Vec<usize>,
    sigma_minus: Vec<usize>,
    faces: Vec<Face>,
    pos_face: Vec<usize>,
    neg_face: Vec<usize>,
}

impl Dimer {
    /// Build and validate a dimer from explicit incidence data and face cycles.
    pub fn new(
        name: impl Into<String>,
        vertex_count: usize,
        head: Vec<usize>,
        tail: Vec<usize>,
        faces: Vec<(Sign, Vec<usize>)>,
        labels: Vec<Option<String>>,
    ) -> Result<Dimer, DimerError> {
        let e = head.len();
        if tail.len() != e || labels.len() != e {
            return Err(DimerError::Invalid("head, tail and label tables differ in length".into()));
        }
        if e == 0 {
            return Err(DimerError::Invalid("no arrows".into()));
        }
        for a in 0..e {
            if head[a] >= vertex_count || tail[a] >= vertex_count {
                return Err(DimerError::Invalid(format!("arrow {} references an unknown vertex", a + 1)));
            }
        }
        let mut count = [vec![0usize; e], vec![0usize; e]];
        for (sign, arrows) in &faces {
            if arrows.is_empty() {
                return Err(DimerError::Invalid("empty face".into()));
            }
            for &a in arrows {
                if a >= e {
                    return Err(DimerError::Invalid(format!("face uses unknown arrow {}", a + 1)));
                }
                count[(*sign == Sign::Neg) as usize][a] += 1;
            }
        }
        for (k, sign) in [Sign::Pos, Sign::Neg].into_iter().enumerate() {
            if let Some(a) = (0..e).find(|&a| count[k][a] != 1) {
                return Err(DimerError::FaceCount { arrow: a + 1, count: count[k][a], sign });
            }
        }
        let mut sigma_plus = vec![0; e];
        let mut sigma_minus = vec![0; e];
        for (sign, arrows) in &faces {
            let k = arrows.len();
            for i in 0..k {
                let a = arrows[i];
                let b = arrows[(i + 1) % k];
                if tail[a] != head[b] {
                    let face = arrows.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" ");
                    return Err(DimerError::NotComposable { face, arrow: a + 1 });
                }
                // b is walked immediately before a
                match sign {
                    Sign::Pos => sigma_plus[b] = a,
                    Sign::Neg => sigma_minus[b] = a,
                }
            }
        }
        let d = Dimer::assemble(name.into(), vertex_count, head, tail, labels, sigma_plus, sigma_minus);
        d.check_head_stars()?;
        Ok(d)
    }

    /// Build a dimer from its face permutations; vertices are recovered as the
    /// cycles of `σ₋⁻¹∘σ₊` and numbered canonically.
    pub fn from_permutations(
        name: impl Into<String>,
        sigma_plus: Vec<usize>,
        sigma_minus: Vec<usize>,
        labels: Vec<Option<String>>,
    ) -> Result<Dimer, DimerError> {
        let e = sigma_plus.len();
        if sigma_minus.len() != e || labels.len() != e || e == 0 {
            return Err(DimerError::Invalid("permutation tables differ in length".into()));
        }
        if !perm::is_permutation(&sigma_plus) || !perm::is_permutation(&sigma_minus) {
            return Err(DimerError::Invalid("face maps are not permutations".into()));
        }
        let star = perm::compose(&perm::inverse(&sigma_minus), &sigma_plus);
        let (cycle_of, n) = perm::cycle_index(&star);
        let inv_plus = perm::inverse(&sigma_plus);
        let head_raw = cycle_of.clone();
        let tail_raw: Vec<usize> = (0..e).map(|a| cycle_of[inv_plus[a]]).collect();
        let relabel = canonical_vertex_order(&head_raw, &tail_raw, n);
        let head = head_raw.iter().map(|&v| relabel[v]).collect();
        let tail = tail_raw.iter().map(|&v| relabel[v]).collect();
        Ok(Dimer::assemble(name.into(), n, head, tail, labels, sigma_plus, sigma_minus))
    }

    fn assemble(
        name: String,
        vertex_count: usize,
        head: Vec<usize>,
        tail: Vec<usize>,
        labels: Vec<Option<String>>,
        sigma_plus: Vec<usize>,
        sigma_minus: Vec<usize>,
    ) -> Dimer {
        let e = head.len();
        let mut faces = Vec::new();
        for (sign, sigma) in [(Sign::Pos, &sigma_plus), (Sign::Neg, &sigma_minus)] {
            let inv = perm::inverse(sigma);
            let mut seen = vec![false; e];
            for start in 0..e {
                if seen[start] {
                    continue;
                }
                // path order: a_{i+1} is walked before a_i
                let mut arrows = vec![start];
                seen[start] = true;
                let mut a = inv[start];
                while a != start {
                    seen[a] = true;
                    arrows.push(a);
                    a = inv[a];
                }
                faces.push(Face { sign, arrows });
            }
        }
        let mut pos_face = vec![0; e];
        let mut neg_face = vec![0; e];
        for (f, face) in faces.iter().enumerate() {
            for &a in &face.arrows {
                match face.sign {
                    Sign::Pos => pos_face[a] = f,
                    Sign::Neg => neg_face[a] = f,
                }
            }
        }
        Dimer { name, vertex_count, head, tail, labels, sigma_plus, sigma_minus, faces, pos_face, neg_face }
    }

    fn check_head_stars(&self) -> Result<(), DimerError> {
        let star = perm::compose(&perm::inverse(&self.sigma_minus), &self.sigma_plus);
        let (cycle_of, n) = perm::cycle_index(&star);
        let mut vertex_of_cycle = vec![usize::MAX; n];
        for a in 0..self.arrow_count() {
            let c = cycle_of[a];
            if vertex_of_cycle[c] == usize::MAX {
                vertex_of_cycle[c] = self.head[a];
            } else if vertex_of_cycle[c] != self.head[a] {
                return Err(DimerError::HeadStar(format!(
                    "arrows around one corner cycle have heads {} and {}",
                    vertex_of_cycle[c] + 1,
                    self.head[a] + 1
                )));
            }
        }
        let mut used = vec![false; self.vertex_count];
        for &v in &vertex_of_cycle {
            if used[v] {
                return Err(DimerError::HeadStar(format!(
                    "vertex {} has more than one corner cycle (not a surface embedding)",
                    v + 1
                )));
            }
            used[v] = true;
        }
        if let Some(v) = used.iter().position(|u| !u) {
            return Err(DimerError::HeadStar(format!("vertex {} is the head of no arrow", v + 1)));
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Dimer {
        self.name = name.into();
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrow_count(&self) -> usize {
        self.head.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn head(&self, a: usize) -> usize {
        self.head[a]
    }

    pub fn tail(&self, a: usize) -> usize {
        self.tail[a]
    }

    pub fn heads(&self) -> &[usize] {
        &self.head
    }

    pub fn tails(&self) -> &[usize] {
        &self.tail
    }

    pub fn label(&self, a: usize) -> Option<&str> {
        self.labels[a].as_deref()
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    /// Label if present, otherwise the 1-based id.
    pub fn arrow_name(&self, a: usize) -> String {
        self.labels[a].clone().unwrap_or_else(|| (a + 1).to_string())
    }

    /// Look an arrow up by label or 1-based id.
    pub fn find_arrow(&self, token: &str) -> Option<usize> {
        if let Some(a) = self.labels.iter().position(|l| l.as_deref() == Some(token)) {
            return Some(a);
        }
        token.parse::<usize>().ok().filter(|&i| i >= 1 && i <= self.arrow_count()).map(|i| i - 1)
    }

    pub fn sigma_plus(&self) -> &[usize] {
        &self.sigma_plus
    }

    pub fn sigma_minus(&self) -> &[usize] {
        &self.sigma_minus
    }

    pub fn sigma(&self, sign: Sign) -> &[usize] {
        match sign {
            Sign::Pos => &self.sigma_plus,
            Sign::Neg => &self.sigma_minus,
        }
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> &Face {
        &self.faces[f]
    }

    pub fn pos_face(&self, a: usize) -> usize {
        self.pos_face[a]
    }

    pub fn neg_face(&self, a: usize) -> usize {
        self.neg_face[a]
    }

    pub fn face_of(&self, a: usize, sign: Sign) -> usize {
        match sign {
            Sign::Pos => self.pos_face[a],
            Sign::Neg => self.neg_face[a],
        }
    }

    /// The face of `a` other than `f`.
    pub fn other_face(&self, a: usize, f: usize) -> usize {
        if self.pos_face[a] == f {
            self.neg_face[a]
        } else {
            self.pos_face[a]
        }
    }

    /// Successor of `a` in face `f` in walking order.
    pub fn next_in_face(&self, f: usize, a: usize) -> usize {
        self.sigma(self.faces[f].sign)[a]
    }

    /// Predecessor of `a` in face `f` in walking order.
    pub fn prev_in_face(&self, f: usize, a: usize) -> usize {
        let face = &self.faces[f].arrows;
        let i = face.iter().position(|&x| x == a).expect("arrow lies on face");
        face[(i + 1) % face.len()]
    }

    pub fn positive_faces(&self) -> impl Iterator<Item = (usize, &Face)> {
        self.faces.iter().enumerate().filter(|(_, f)| f.sign == Sign::Pos)
    }

    pub fn negative_faces(&self) -> impl Iterator<Item = (usize, &Face)> {
        self.faces.iter().enumerate().filter(|(_, f)| f.sign == Sign::Neg)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.arrow_count() as i64 + self.face_count() as i64
    }

    /// `(χ, genus)` of the underlying closed surface.
    pub fn surface_invariants(&self) -> Result<(i64, i64), DimerError> {
        let chi = self.euler_characteristic();
        if chi % 2 != 0 {
            return Err(DimerError::OddEuler(chi));
        }
        Ok((chi, (2 - chi) / 2))
    }

    pub fn genus(&self) -> i64 {
        (2 - self.euler_characteristic()) / 2
    }

    pub fn is_connected(&self) -> bool {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for a in 0..self.arrow_count() {
            adj[self.head[a]].push(self.tail[a]);
            adj[self.tail[a]].push(self.head[a]);
        }
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// The specular dual: same arrows and positive faces, negative faces reversed.
    pub fn mirror(&self) -> Dimer {
        let name = match self.name.strip_suffix(".mirror") {
            Some(base) => base.to_string(),
            None => format!("{}.mirror", self.name),
        };
        Dimer::from_permutations(name, self.sigma_plus.clone(), perm::inverse(&self.sigma_minus), self.labels.clone())
            .expect("mirror of a valid dimer is valid")
    }

    pub fn same_permutations(&self, other: &Dimer) -> bool {
        self.sigma_plus == other.sigma_plus && self.sigma_minus == other.sigma_minus
    }

    /// Vertices renumbered by first appearance (heads before tails, arrows by id).
    pub fn normalized(&self) -> Dimer {
        let relabel = canonical_vertex_order(&self.head, &self.tail, self.vertex_count);
        let mut d = self.clone();
        d.head = self.head.iter().map(|&v| relabel[v]).collect();
        d.tail = self.tail.iter().map(|&v| relabel[v]).collect();
        d
    }

    /// The arrows with head `v`, in corner-cycle order.
    pub fn head_star(&self, v: usize) -> Vec<usize> {
        let Some(start) = (0..self.arrow_count()).find(|&a| self.head[a] == v) else {
            return Vec::new();
        };
        let inv_minus = perm::inverse(&self.sigma_minus);
        let mut out = vec![start];
        let mut a = inv_minus[self.sigma_plus[start]];
        while a != start {
            out.push(a);
            a = inv_minus[self.sigma_plus[a]];
        }
        out
    }

    /// Check that a word of arrows given in walking order is a path.
    pub fn is_walk(&self, walk: &[usize]) -> bool {
        walk.windows(2).all(|w| self.head[w[0]] == self.tail[w[1]])
    }
}

fn canonical_vertex_order(head: &[usize], tail: &[usize], n: usize) -> Vec<usize> {
    let mut relabel = vec![usize::MAX; n];
    let mut next = 0;
    for a in 0..head.len() {
        for v in [head[a], tail[a]] {
            if relabel[v] == usize::MAX {
                relabel[v] = next;
                next += 1;
            }
        }
    }
    relabel
}
