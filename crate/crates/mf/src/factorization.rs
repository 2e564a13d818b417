//! `ℤ₂`-graded matrix factorizations of `(J, ℓ)`.

use std::fmt;

use dimer_algebra::{Jacobi, PathElement, Poly};
use dimer_core::Scalar;

use crate::MfError;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Summand {
    pub vertex: usize,
    /// 0 even, 1 odd
    pub parity: u8,
    pub shift: Option<i64>,
}

impl Summand {
    pub fn new(vertex: usize, parity: u8) -> Summand {
        Summand { vertex, parity: parity % 2, shift: None }
    }
}

/// `d[i][j]` maps summand `j` to summand `i`. Entries are monomials except
/// for bands of length two, where two arcs share their endpoints.
pub type Matrix<K> = Vec<Vec<Poly<K>>>;

pub fn zero_matrix<K: Scalar>(rows: usize, cols: usize) -> Matrix<K> {
    vec![vec![Poly::new(); cols]; rows]
}

pub fn mat_mul<K: Scalar>(x: &Matrix<K>, y: &Matrix<K>) -> Matrix<K> {
    let rows = x.len();
    let cols = y.first().map_or(0, Vec::len);
    let mut out = vec![vec![Poly::new(); cols]; rows];
    for (i, row) in x.iter().enumerate() {
        for (k, xik) in row.iter().enumerate() {
            if xik.is_zero() {
                continue;
            }
            for (j, ykj) in y[k].iter().enumerate() {
                out[i][j].add_poly(&xik.mul(ykj));
            }
        }
    }
    out
}

fn mono<K: Scalar>(e: &PathElement<K>) -> Poly<K> {
    Poly::from_element(e)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixFactorization<K> {
    pub summands: Vec<Summand>,
    pub d: Matrix<K>,
}

impl<K: Scalar> MatrixFactorization<K> {
    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Endpoints and parity of every nonzero entry, then `d² = ℓ·id`.
    pub fn check(&self, j: &Jacobi) -> Result<(), MfError> {
        let n = self.len();
        if self.d.len() != n || self.d.iter().any(|r| r.len() != n) {
            return Err(MfError::Check("matrix is not square over the summands".into()));
        }
        for (r, row) in self.d.iter().enumerate() {
            for (c, p) in row.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let (si, sj) = (&self.summands[r], &self.summands[c]);
                if p.terms().iter().any(|e| e.head != si.vertex || e.tail != sj.vertex) {
                    return Err(MfError::Check(format!("entry ({},{}) has wrong endpoints", r + 1, c + 1)));
                }
                if si.parity == sj.parity {
                    return Err(MfError::Check(format!("entry ({},{}) is even", r + 1, c + 1)));
                }
            }
        }
        let sq = mat_mul(&self.d, &self.d);
        for (r, row) in sq.iter().enumerate() {
            for (c, p) in row.iter().enumerate() {
                let expected = if r == c { Poly::from_element(&j.ell(self.summands[r].vertex)) } else { Poly::new() };
                if *p != expected {
                    return Err(MfError::Check(format!("d² differs from ℓ at ({},{})", r + 1, c + 1)));
                }
            }
        }
        Ok(())
    }

    /// `M[1]`: parities flipped, differential negated.
    pub fn shift(&self) -> Self {
        MatrixFactorization {
            summands: self.summands.iter().map(|s| Summand { parity: 1 - s.parity, ..s.clone() }).collect(),
            d: self.d.iter().map(|row| row.iter().map(Poly::neg).collect()).collect(),
        }
    }

    pub fn entries(&self) -> Vec<(usize, usize, &Poly<K>)> {
        let mut out = Vec::new();
        for (r, row) in self.d.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                if !e.is_zero() {
                    out.push((r, c, e));
                }
            }
        }
        out
    }
}

impl<K: Scalar> fmt::Display for MatrixFactorization<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.summands.iter().enumerate() {
            write!(f, "summand {}: vertex {} parity {}", i + 1, s.vertex + 1, s.parity)?;
            if let Some(u) = s.shift {
                write!(f, " shift {u}")?;
            }
            writeln!(f)?;
        }
        for (r, c, p) in self.entries() {
            for e in p.terms() {
                writeln!(f, "({},{}): {}", r + 1, c + 1, format_element(&e))?;
            }
        }
        Ok(())
    }
}

/// `coeff * [h,t,λ,k]` with 1-based vertices, `λ` the homology class and `k` the reference degree.
pub fn format_element<K: Scalar>(e: &PathElement<K>) -> String {
    let class: Vec<String> = e.hclass.iter().map(i64::to_string).collect();
    format!("{} * [{},{},({}),{}]", e.coeff, e.head + 1, e.tail + 1, class.join(","), e.refdeg)
}

/// Morphism of factorizations; `matrix[i][j]` maps source summand `j` to target summand `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MfMorphism<K> {
    pub source: MatrixFactorization<K>,
    pub target: MatrixFactorization<K>,
    pub matrix: Matrix<K>,
    pub parity: u8,
}

impl<K: Scalar> MfMorphism<K> {
    /// `d_target∘f = (−1)^{parity} f∘d_source`, plus endpoint and parity bookkeeping.
    pub fn check(&self) -> Result<(), MfError> {
        for (r, row) in self.matrix.iter().enumerate() {
            for (c, p) in row.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let (ti, sj) = (&self.target.summands[r], &self.source.summands[c]);
                if p.terms().iter().any(|e| e.head != ti.vertex || e.tail != sj.vertex) {
                    return Err(MfError::Check(format!("morphism entry ({},{}) has wrong endpoints", r + 1, c + 1)));
                }
                if (ti.parity + sj.parity) % 2 != self.parity % 2 {
                    return Err(MfError::Check(format!("morphism entry ({},{}) has wrong parity", r + 1, c + 1)));
                }
            }
        }
        let left = mat_mul(&self.target.d, &self.matrix);
        let mut right = mat_mul(&self.matrix, &self.source.d);
        if self.parity % 2 == 1 {
            for row in right.iter_mut() {
                for p in row.iter_mut() {
                    *p = p.neg();
                }
            }
        }
        if left != right {
            return Err(MfError::Check("chain-map identity fails".into()));
        }
        Ok(())
    }
}

/// `M_p = (h(p)[1] ⊕ t(p), [[0, p], [ℓ·p⁻¹, 0]])` for a monomial `p` of `J`.
pub fn mf_path<K: Scalar>(j: &Jacobi, p: &PathElement<K>) -> Result<MatrixFactorization<K>, MfError> {
    let rest = p.weak_inverse()?.mul(&j.ell(p.head));
    if p.is_zero() || !j.in_jacobi(p) || !j.in_jacobi(&rest) {
        return Err(MfError::Check("path or its complement is not in the Jacobi algebra".into()));
    }
    let mut d = zero_matrix(2, 2);
    d[0][1] = mono(p);
    d[1][0] = mono(&rest);
    let m = MatrixFactorization { summands: vec![Summand::new(p.head, 1), Summand::new(p.tail, 0)], d };
    m.check(j)?;
    Ok(m)
}

/// `M_a` with entries `a` and `r_a⁺`.
pub fn mf_arrow<K: Scalar>(j: &Jacobi, a: usize) -> MatrixFactorization<K> {
    let mut d = zero_matrix(2, 2);
    d[0][1] = mono(&j.arrow(a));
    d[1][0] = mono(&j.r_plus::<K>(a));
    let dm = j.dimer();
    let m = MatrixFactorization { summands: vec![Summand::new(dm.head(a), 1), Summand::new(dm.tail(a), 0)], d };
    debug_assert!(m.check(j).is_ok());
    m
}

/// Arrows of the positive face of `a` starting at `a`, in path order.
fn face_from(j: &Jacobi, a: usize) -> Vec<usize> {
    let d = j.dimer();
    let arrows = &d.face(d.pos_face(a)).arrows;
    let i = arrows.iter().position(|&x| x == a).expect("arrow on its face");
    (0..arrows.len()).map(|k| arrows[(i + k) % arrows.len()]).collect()
}

/// The subpath `a₁…a_l` of the positive face of `a₁`, as a monomial.
pub fn face_subpath<K: Scalar>(j: &Jacobi, a1: usize, l: usize) -> Result<PathElement<K>, MfError> {
    let arrows = face_from(j, a1);
    if l == 0 || l >= arrows.len() {
        return Err(MfError::Check(format!("subpath length {l} out of range")));
    }
    let word: Vec<(usize, i64)> = arrows[..l].iter().map(|&a| (a, 1)).collect();
    Ok(j.path_element(&word)?)
}

/// `\hat{pb}: M_p → M_b[1]` with components `−id: t(p) → h(b)` and
/// `u = ℓ(pb)⁻¹: h(p) → t(b)`; `source` must be laid out as [`mf_path`] does.
pub fn hat_from<K: Scalar>(j: &Jacobi, source: &MatrixFactorization<K>, b: usize) -> Result<MfMorphism<K>, MfError> {
    let p = source.d.first().and_then(|r| r.get(1)).and_then(Poly::as_monomial).unwrap_or_else(PathElement::zero);
    if source.len() != 2 || p.is_zero() {
        return Err(MfError::Check("source is not a two-term factorization".into()));
    }
    let pb = p.mul(&j.arrow(b));
    if pb.is_zero() {
        return Err(MfError::NotConsecutive);
    }
    let u = pb.weak_inverse()?.mul(&j.ell(p.head));
    if !j.in_jacobi(&u) || u.refdeg == 0 && u.head == u.tail && u.hclass.iter().all(|&c| c == 0) {
        return Err(MfError::NotConsecutive);
    }
    let target = mf_arrow(j, b).shift();
    let mut matrix = zero_matrix(2, 2);
    matrix[0][1] = mono(&j.identity::<K>(p.tail).neg());
    matrix[1][0] = mono(&u);
    let f = MfMorphism { source: source.clone(), target, matrix, parity: 0 };
    f.check()?;
    Ok(f)
}

/// `\hat{ab}` for `ab` consecutive in a positive face.
pub fn hat_morphism<K: Scalar>(j: &Jacobi, a: usize, b: usize) -> Result<MfMorphism<K>, MfError> {
    j.face_complement::<K>(a, b).map_err(|_| MfError::NotConsecutive)?;
    hat_from(j, &mf_arrow(j, a), b)
}

/// Cone of an even morphism `f: X → Y[1]`: the twisted complex `X ⊕ Y` with
/// differential `[[d_X, 0], [f, d_Y]]`, `f` read as an odd map `X → Y`.
pub fn cone<K: Scalar>(f: &MfMorphism<K>) -> Result<MatrixFactorization<K>, MfError> {
    if f.parity % 2 != 0 {
        return Err(MfError::Check("cone expects an even morphism into a shift".into()));
    }
    let x = &f.source;
    let y = f.target.shift();
    let (n, m) = (x.len(), y.len());
    let mut d = zero_matrix(n + m, n + m);
    for r in 0..n {
        for c in 0..n {
            d[r][c] = x.d[r][c].clone();
        }
    }
    for r in 0..m {
        for c in 0..m {
            d[n + r][n + c] = y.d[r][c].clone();
        }
        for c in 0..n {
            d[n + r][c] = f.matrix[r][c].clone();
        }
    }
    let mut summands = x.summands.clone();
    summands.extend(y.summands.iter().cloned());
    Ok(MatrixFactorization { summands, d })
}

/// Result of the shortening lemma together with the quasi-isomorphisms
/// `ψ: P_red → P` and `ψ⁻¹: P → P_red`.
#[derive(Debug, Clone)]
pub struct Shortened<K> {
    pub reduced: MatrixFactorization<K>,
    pub psi: MfMorphism<K>,
    pub psi_inv: MfMorphism<K>,
    /// original index of each reduced summand
    pub kept: Vec<usize>,
}

/// Remove summands `a` and `b` where `φ = d_{ba}` is a unit:
/// `d^{red}_{ij} = d_{ij} − d_{ia}φ⁻¹d_{bj}`.
pub fn shorten<K: Scalar>(j: &Jacobi, m: &MatrixFactorization<K>, a: usize, b: usize) -> Result<Shortened<K>, MfError> {
    let n = m.len();
    if a >= n || b >= n || a == b {
        return Err(MfError::Check("summand index out of range".into()));
    }
    let phi = m.d[b][a].as_monomial().filter(PathElement::is_invertible);
    let Some(phi) = phi else {
        return Err(MfError::NotInvertible(b + 1, a + 1));
    };
    let phi_inv = mono(&phi.inverse()?);
    let kept: Vec<usize> = (0..n).filter(|&i| i != a && i != b).collect();
    let mut d = zero_matrix(kept.len(), kept.len());
    for (r, &i) in kept.iter().enumerate() {
        for (c, &k) in kept.iter().enumerate() {
            let mut p = m.d[i][k].clone();
            p.add_poly(&m.d[i][a].mul(&phi_inv).mul(&m.d[b][k]).neg());
            d[r][c] = p;
        }
    }
    let reduced = MatrixFactorization { summands: kept.iter().map(|&i| m.summands[i].clone()).collect(), d };
    reduced.check(j)?;

    let mut psi = zero_matrix(n, kept.len());
    for (c, &k) in kept.iter().enumerate() {
        psi[k][c] = mono(&j.identity(m.summands[k].vertex));
        psi[a][c] = phi_inv.mul(&m.d[b][k]).neg();
    }
    let mut psi_inv = zero_matrix(kept.len(), n);
    for (r, &i) in kept.iter().enumerate() {
        psi_inv[r][i] = mono(&j.identity(m.summands[i].vertex));
        psi_inv[r][b] = m.d[i][a].mul(&phi_inv).neg();
    }
    let psi = MfMorphism { source: reduced.clone(), target: m.clone(), matrix: psi, parity: 0 };
    let psi_inv = MfMorphism { source: m.clone(), target: reduced.clone(), matrix: psi_inv, parity: 0 };
    psi.check()?;
    psi_inv.check()?;
    // ψ⁻¹ψ = id on P_red
    let comp = mat_mul(&psi_inv.matrix, &psi.matrix);
    let mut ident = zero_matrix(kept.len(), kept.len());
    for (r, &i) in kept.iter().enumerate() {
        ident[r][r] = mono(&j.identity(m.summands[i].vertex));
    }
    if comp != ident {
        return Err(MfError::Check("ψ⁻¹∘ψ is not the identity".into()));
    }
    Ok(Shortened { reduced, psi, psi_inv, kept })
}

/// First entry that is a unit, as `(a, b)` with `d_{ba}` invertible.
pub fn find_unit<K: Scalar>(m: &MatrixFactorization<K>) -> Option<(usize, usize)> {
    m.entries()
        .into_iter()
        .find(|(_, _, p)| p.as_monomial().is_some_and(|e| e.is_invertible()))
        .map(|(b, a, _)| (a, b))
}

/// `M_{a₁…a_l}` as the iterated cone `Cone(\hat{(a₁…a_{l−1}) a_l})`, shortened after each step.
pub fn iterated_cone<K: Scalar>(j: &Jacobi, a1: usize, l: usize) -> Result<MatrixFactorization<K>, MfError> {
    let arrows = face_from(j, a1);
    if l == 0 || l >= arrows.len() {
        return Err(MfError::Check(format!("subpath length {l} out of range")));
    }
    let mut m = mf_arrow(j, a1);
    for &b in &arrows[1..l] {
        let f = hat_from(j, &m, b)?;
        let c = cone(&f)?;
        c.check(j)?;
        // the −id component sits from t(p) (index 1) to h(b) (index 2)
        m = shorten(j, &c, 1, 2)?.reduced;
    }
    Ok(m)
}
