//! Integer homology of the surface carrying a dimer.
//!
//! A closed 1-chain is determined modulo boundaries by its coefficients on the
//! arrows outside a spanning tree; `H₁` is the cokernel of the face matrix in
//! those coordinates, computed with a Smith normal form. The same projection
//! applied to an open path gives its class relative to the tree paths.

use std::collections::VecDeque;

use crate::dimer::Dimer;
use crate::error::DimerError;
use crate::snf::{smith, Mat};

pub type Chain = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homology {
    root: usize,
    tree: Vec<usize>,
    in_tree: Vec<bool>,
    rank: usize,
    torsion: Vec<i64>,
    /// rank × E: class of a chain is `proj · chain`
    proj: Mat,
    basis: Vec<Chain>,
    /// tree chain from the root to each vertex
    potential: Vec<Chain>,
}

impl Homology {
    pub fn new(d: &Dimer) -> Result<Homology, DimerError> {
        if !d.is_connected() {
            return Err(DimerError::Disconnected);
        }
        let e = d.arrow_count();
        let v = d.vertex_count();
        let root = 0;
        let mut incident = vec![Vec::new(); v];
        for a in 0..e {
            incident[d.head(a)].push(a);
            if d.tail(a) != d.head(a) {
                incident[d.tail(a)].push(a);
            }
        }
        let mut potential: Vec<Option<Chain>> = vec![None; v];
        potential[root] = Some(vec![0; e]);
        let mut in_tree = vec![false; e];
        let mut tree = Vec::new();
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &a in &incident[x] {
                let (y, sign) = if d.tail(a) == x { (d.head(a), 1) } else { (d.tail(a), -1) };
                if potential[y].is_some() {
                    continue;
                }
                let mut c = potential[x].clone().unwrap();
                c[a] += sign;
                potential[y] = Some(c);
                in_tree[a] = true;
                tree.push(a);
                queue.push_back(y);
            }
        }
        let potential: Vec<Chain> = potential.into_iter().map(|c| c.expect("connected")).collect();
        let nontree: Vec<usize> = (0..e).filter(|&a| !in_tree[a]).collect();
        let m = nontree.len();
        let f = d.face_count();
        let mut b: Mat = vec![vec![0; f]; m];
        for (fi, face) in d.faces().iter().enumerate() {
            for &a in &face.arrows {
                if let Some(r) = nontree.iter().position(|&x| x == a) {
                    b[r][fi] += 1;
                }
            }
        }
        let snf = smith(&b, m, f);
        let r = snf.diag.len();
        let torsion: Vec<i64> = snf.diag.iter().copied().filter(|&x| x > 1).collect();
        let rank = m - r;
        let proj: Mat = (r..m)
            .map(|row| {
                let mut p = vec![0; e];
                for (k, &a) in nontree.iter().enumerate() {
                    p[a] = snf.u[row][k];
                }
                p
            })
            .collect();
        let basis: Vec<Chain> = (r..m)
            .map(|col| {
                let mut z = vec![0i64; e];
                for (k, &a) in nontree.iter().enumerate() {
                    let c = snf.u_inv[k][col];
                    if c == 0 {
                        continue;
                    }
                    // fundamental cycle of a: a + T_{t(a)} − T_{h(a)}
                    z[a] += c;
                    for x in 0..e {
                        z[x] += c * (potential[d.tail(a)][x] - potential[d.head(a)][x]);
                    }
                }
                z
            })
            .collect();
        Ok(Homology { root, tree, in_tree, rank, torsion, proj, basis, potential })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn tree(&self) -> &[usize] {
        &self.tree
    }

    pub fn in_tree(&self, a: usize) -> bool {
        self.in_tree[a]
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[i64] {
        &self.torsion
    }

    pub fn is_torus(&self) -> bool {
        self.rank == 2 && self.torsion.is_empty()
    }

    pub fn require_torus(&self) -> Result<(), DimerError> {
        if self.is_torus() {
            Ok(())
        } else {
            Err(DimerError::NotTorus(format!("H1 rank {} with torsion {:?}", self.rank, self.torsion)))
        }
    }

    /// Class of a closed chain, or of an open one relative to the tree paths.
    pub fn class_of(&self, chain: &[i64]) -> Vec<i64> {
        self.proj.iter().map(|row| row.iter().zip(chain).map(|(p, c)| p * c).sum()).collect()
    }

    /// Torus-mode class as a lattice vector.
    pub fn class2(&self, chain: &[i64]) -> [i64; 2] {
        let c = self.class_of(chain);
        [c[0], c[1]]
    }

    pub fn arrow_class(&self, a: usize) -> Vec<i64> {
        self.proj.iter().map(|row| row[a]).collect()
    }

    pub fn arrow_class2(&self, a: usize) -> [i64; 2] {
        [self.proj[0][a], self.proj[1][a]]
    }

    /// Basis cycles `z_X, z_Y, …` whose classes are the unit vectors.
    pub fn basis(&self) -> &[Chain] {
        &self.basis
    }

    /// Tree chain from the root to `v`.
    pub fn potential(&self, v: usize) -> &[i64] {
        &self.potential[v]
    }

    /// Tree path from `w` to `v`, i.e. a chain with boundary `v − w`.
    pub fn base_chain(&self, v: usize, w: usize) -> Chain {
        self.potential[v].iter().zip(&self.potential[w]).map(|(x, y)| x - y).collect()
    }

    /// Cycle `Σ λ_i z_i`.
    pub fn cycle_of_class(&self, class: &[i64]) -> Chain {
        let e = self.in_tree.len();
        let mut z = vec![0; e];
        for (l, b) in class.iter().zip(&self.basis) {
            for x in 0..e {
                z[x] += l * b[x];
            }
        }
        z
    }
}

/// `∂₁` of a chain as a vertex vector (head minus tail).
pub fn boundary(d: &Dimer, chain: &[i64]) -> Vec<i64> {
    let mut out = vec![0; d.vertex_count()];
    for (a, &c) in chain.iter().enumerate() {
        out[d.head(a)] += c;
        out[d.tail(a)] -= c;
    }
    out
}

/// Chain of a word in walking order, `(arrow, ±1)`.
pub fn word_chain(arrow_count: usize, word: &[(usize, i64)]) -> Chain {
    let mut c = vec![0; arrow_count];
    for &(a, s) in word {
        c[a] += s;
    }
    c
}

/// `Σ_{a∈F} a`
pub fn face_chain(d: &Dimer, f: usize) -> Chain {
    let mut c = vec![0; d.arrow_count()];
    for &a in &d.face(f).arrows {
        c[a] += 1;
    }
    c
}
