//! Monomials of the weak Jacobi algebra `Ĵ` in canonical form.
//!
//! Two weak paths are equal in `Ĵ` when they have the same endpoints, the same
//! homotopy class and the same degree for one perfect matching. On a torus the
//! homotopy class of a path with fixed endpoints is its homology class relative
//! to the spanning-tree paths, so a monomial is the tuple
//! `(head, tail, class, deg_{P₀}, coefficient)`.

use std::collections::BTreeMap;

use dimer_core::homology::word_chain;
use dimer_core::{Dimer, Homology, Scalar};
use dimer_matching::enumerate_matchings;

use crate::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathElement<K> {
    pub head: usize,
    pub tail: usize,
    pub hclass: Vec<i64>,
    pub refdeg: i64,
    pub coeff: K,
}

impl<K: Scalar> PathElement<K> {
    pub fn zero() -> Self {
        PathElement { head: 0, tail: 0, hclass: Vec::new(), refdeg: 0, coeff: K::zero() }
    }

    fn normalized(self) -> Self {
        if self.coeff.is_zero() {
            Self::zero()
        } else {
            self
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// Concatenation; zero unless `tail(self) = head(other)`.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() || self.tail != other.head {
            return Self::zero();
        }
        PathElement {
            head: self.head,
            tail: other.tail,
            hclass: self.hclass.iter().zip(&other.hclass).map(|(x, y)| x + y).collect(),
            refdeg: self.refdeg + other.refdeg,
            coeff: self.coeff.clone() * other.coeff.clone(),
        }
        .normalized()
    }

    pub fn scale(&self, c: &K) -> Self {
        PathElement { coeff: self.coeff.clone() * c.clone(), ..self.clone() }.normalized()
    }

    pub fn neg(&self) -> Self {
        self.scale(&(K::zero() - K::one()))
    }

    /// Units among monomials: a nonzero multiple of a vertex idempotent.
    pub fn is_invertible(&self) -> bool {
        !self.is_zero() && self.head == self.tail && self.refdeg == 0 && self.hclass.iter().all(|&c| c == 0)
    }

    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        if !self.is_invertible() {
            return Err(AlgebraError::NotInvertible);
        }
        Ok(PathElement { coeff: K::one() / self.coeff.clone(), ..self.clone() })
    }

    /// Inverse in `Ĵ` (all monomials are invertible there once `ℓ` is).
    pub fn weak_inverse(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::NotInvertible);
        }
        Ok(PathElement {
            head: self.tail,
            tail: self.head,
            hclass: self.hclass.iter().map(|x| -x).collect(),
            refdeg: -self.refdeg,
            coeff: K::one() / self.coeff.clone(),
        })
    }

    /// Same monomial up to coefficient.
    pub fn same_monomial(&self, other: &Self) -> bool {
        self.head == other.head && self.tail == other.tail && self.hclass == other.hclass && self.refdeg == other.refdeg
    }
}

type Key = (usize, usize, Vec<i64>, i64);

/// Finite linear combination of monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly<K> {
    terms: BTreeMap<Key, K>,
}

impl<K: Scalar> Default for Poly<K> {
    fn default() -> Self {
        Poly { terms: BTreeMap::new() }
    }
}

impl<K: Scalar> Poly<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_element(e: &PathElement<K>) -> Self {
        let mut p = Self::new();
        p.add(e);
        p
    }

    pub fn add(&mut self, e: &PathElement<K>) {
        if e.is_zero() {
            return;
        }
        let key = (e.head, e.tail, e.hclass.clone(), e.refdeg);
        let c = self.terms.remove(&key).unwrap_or_else(K::zero) + e.coeff.clone();
        if !c.is_zero() {
            self.terms.insert(key, c);
        }
    }

    pub fn add_poly(&mut self, other: &Self) {
        for e in other.terms() {
            self.add(&e);
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for x in self.terms() {
            for y in other.terms() {
                out.add(&x.mul(&y));
            }
        }
        out
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut out = Self::new();
        for e in self.terms() {
            out.add(&e.scale(c));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&(K::zero() - K::one()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> Vec<PathElement<K>> {
        self.terms
            .iter()
            .map(|((h, t, c, r), k)| PathElement { head: *h, tail: *t, hclass: c.clone(), refdeg: *r, coeff: k.clone() })
            .collect()
    }

    /// The single term, if this is a monomial (zero counts as the zero monomial).
    pub fn as_monomial(&self) -> Option<PathElement<K>> {
        match self.terms.len() {
            0 => Some(PathElement::zero()),
            1 => self.terms().pop(),
            _ => None,
        }
    }
}

/// Dimer with the data needed to put weak paths in canonical form.
#[derive(Debug, Clone)]
pub struct Jacobi {
    dimer: Dimer,
    homology: Homology,
    /// sorted arrow sets, lexicographic
    matchings: Vec<Vec<usize>>,
    /// index of `P₀` in `matchings`
    reference: usize,
}

impl Jacobi {
    /// Enumerates the perfect matchings; the first one is the reference `P₀`.
    pub fn new(d: &Dimer) -> Result<Jacobi, AlgebraError> {
        let homology = Homology::new(d)?;
        let matchings = enumerate_matchings(d);
        if matchings.is_empty() {
            return Err(AlgebraError::NoMatchings);
        }
        Ok(Jacobi { dimer: d.clone(), homology, matchings, reference: 0 })
    }

    /// Same algebra with `matchings()[index]` as `P₀`.
    pub fn with_reference(d: &Dimer, index: usize) -> Result<Jacobi, AlgebraError> {
        let j = Jacobi::new(d)?;
        if index >= j.matchings.len() {
            return Err(AlgebraError::NoMatching(index + 1));
        }
        Ok(Jacobi { reference: index, ..j })
    }

    pub fn reference(&self) -> usize {
        self.reference
    }

    pub fn dimer(&self) -> &Dimer {
        &self.dimer
    }

    pub fn homology(&self) -> &Homology {
        &self.homology
    }

    pub fn matchings(&self) -> &[Vec<usize>] {
        &self.matchings
    }

    pub fn in_matching(&self, m: usize, a: usize) -> bool {
        self.matchings[m].binary_search(&a).is_ok()
    }

    fn rank(&self) -> usize {
        self.homology.rank()
    }

    fn deg0(&self, a: usize) -> i64 {
        self.in_matching(self.reference, a) as i64
    }

    /// Word in path order: `w₁·w₂·…·w_k` with `t(w_i) = h(w_{i+1})`, each
    /// letter an arrow with exponent `±1`.
    pub fn path_element<K: Scalar>(&self, word: &[(usize, i64)]) -> Result<PathElement<K>, AlgebraError> {
        let d = &self.dimer;
        let ends = |&(a, s): &(usize, i64)| if s > 0 { (d.head(a), d.tail(a)) } else { (d.tail(a), d.head(a)) };
        if word.is_empty() {
            return Err(AlgebraError::NotComposable(0));
        }
        for (i, &(a, s)) in word.iter().enumerate() {
            if a >= d.arrow_count() || (s != 1 && s != -1) {
                return Err(AlgebraError::NotComposable(i));
            }
        }
        for i in 1..word.len() {
            if ends(&word[i - 1]).1 != ends(&word[i]).0 {
                return Err(AlgebraError::NotComposable(i));
            }
        }
        let chain = word_chain(d.arrow_count(), word);
        let refdeg = word.iter().map(|&(a, s)| s * self.deg0(a)).sum();
        Ok(PathElement {
            head: ends(&word[0]).0,
            tail: ends(&word[word.len() - 1]).1,
            hclass: self.homology.class_of(&chain),
            refdeg,
            coeff: K::one(),
        })
    }

    pub fn identity<K: Scalar>(&self, v: usize) -> PathElement<K> {
        PathElement { head: v, tail: v, hclass: vec![0; self.rank()], refdeg: 0, coeff: K::one() }
    }

    pub fn arrow<K: Scalar>(&self, a: usize) -> PathElement<K> {
        self.path_element(&[(a, 1)]).expect("single arrow")
    }

    /// `a⁻¹ = r_a⁺ ℓ⁻¹`
    pub fn arrow_inverse<K: Scalar>(&self, a: usize) -> PathElement<K> {
        self.path_element(&[(a, -1)]).expect("single arrow")
    }

    /// Central element at `v`: any face cycle based there.
    pub fn ell<K: Scalar>(&self, v: usize) -> PathElement<K> {
        PathElement { head: v, tail: v, hclass: vec![0; self.rank()], refdeg: 1, coeff: K::one() }
    }

    /// `r_a⁺`: the rest of the positive face of `a`, so that `r_a⁺·a` is a face cycle.
    pub fn r_plus<K: Scalar>(&self, a: usize) -> PathElement<K> {
        let d = &self.dimer;
        PathElement {
            head: d.tail(a),
            tail: d.head(a),
            hclass: self.homology.arrow_class(a).iter().map(|x| -x).collect(),
            refdeg: 1 - self.deg0(a),
            coeff: K::one(),
        }
    }

    /// Word of `r_a⁺` in path order.
    pub fn r_plus_word(&self, a: usize) -> Vec<usize> {
        self.rest_of_face(self.dimer.pos_face(a), a)
    }

    /// Word of `r_a⁻` in path order.
    pub fn r_minus_word(&self, a: usize) -> Vec<usize> {
        self.rest_of_face(self.dimer.neg_face(a), a)
    }

    fn rest_of_face(&self, f: usize, a: usize) -> Vec<usize> {
        let arrows = &self.dimer.face(f).arrows;
        let i = arrows.iter().position(|&x| x == a).expect("arrow on face");
        let n = arrows.len();
        (1..n).map(|k| arrows[(i + k) % n]).collect()
    }

    /// `ℓ(ab)⁻¹` for `ab` consecutive (path order) in a positive face: the
    /// remaining subpath `u` with `abu` the face cycle.
    pub fn face_complement<K: Scalar>(&self, a: usize, b: usize) -> Result<PathElement<K>, AlgebraError> {
        let d = &self.dimer;
        let f = d.pos_face(a);
        let arrows = &d.face(f).arrows;
        let n = arrows.len();
        let i = arrows.iter().position(|&x| x == a).expect("arrow on face");
        if n < 3 || arrows[(i + 1) % n] != b {
            return Err(AlgebraError::NotConsecutive(a + 1, b + 1));
        }
        let word: Vec<(usize, i64)> = (2..n).map(|k| (arrows[(i + k) % n], 1)).collect();
        self.path_element(&word)
    }

    /// `deg_P(e) = refdeg + ⟨P − P₀, z(class) + T_{h} − T_{t}⟩`.
    pub fn degree<K: Scalar>(&self, m: usize, e: &PathElement<K>) -> i64 {
        let mut chain = self.homology.cycle_of_class(&e.hclass);
        for (c, b) in chain.iter_mut().zip(self.homology.base_chain(e.head, e.tail)) {
            *c += b;
        }
        let diff: i64 = chain
            .iter()
            .enumerate()
            .map(|(a, c)| c * (self.in_matching(m, a) as i64 - self.deg0(a)))
            .sum();
        e.refdeg + diff
    }

    /// Membership in `J ⊂ Ĵ`: nonnegative degree for every perfect matching.
    pub fn in_jacobi<K: Scalar>(&self, e: &PathElement<K>) -> bool {
        e.is_zero() || (0..self.matchings.len()).all(|m| self.degree(m, e) >= 0)
    }
}
