//! Garlands and the two objects built from them: the band factorization
//! `M(g, α)` over `J(Q)` and the twisted object `B(g, α)` over `Gtl` of the
//! mirror.

use std::collections::HashMap;

use dimer_algebra::{AnglePath, AngleQuiver, Jacobi, PathElement, Poly};
use dimer_core::{Dimer, Scalar, Sign};

use crate::factorization::{zero_matrix, MatrixFactorization, Summand};
use crate::MfError;

/// Cyclic sequence `(g₀, g₁, …, g_{2k−1})`: arrows at even positions, faces at odd ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Garland {
    pub entries: Vec<usize>,
    pub primitive: bool,
}

impl Garland {
    pub fn new(d: &Dimer, entries: Vec<usize>) -> Result<Garland, MfError> {
        let n = entries.len();
        if n < 2 || n % 2 != 0 {
            return Err(MfError::Garland(format!("length {n} is not a positive even number")));
        }
        for (i, &x) in entries.iter().enumerate() {
            let bound = if i % 2 == 0 { d.arrow_count() } else { d.face_count() };
            if x >= bound {
                return Err(MfError::Garland(format!("entry {} out of range", i + 1)));
            }
        }
        for i in (0..n).step_by(2) {
            let a = entries[i];
            for f in [entries[(i + n - 1) % n], entries[i + 1]] {
                if !d.face(f).contains(a) {
                    return Err(MfError::Garland(format!("arrow {} is not on face {}", a + 1, f + 1)));
                }
            }
        }
        for i in 0..n {
            if entries[i] == entries[(i + 2) % n] {
                return Err(MfError::Garland(format!("entries {} and {} coincide", i + 1, (i + 2) % n + 1)));
            }
        }
        let primitive = (1..n / 2).filter(|s| (n / 2) % s == 0).all(|s| (0..n).any(|i| entries[i] != entries[(i + 2 * s) % n]));
        Ok(Garland { entries, primitive })
    }

    /// Number of arrows (= number of faces).
    pub fn k(&self) -> usize {
        self.entries.len() / 2
    }

    pub fn arrow(&self, c: usize) -> usize {
        self.entries[(2 * c) % self.entries.len()]
    }

    pub fn face(&self, c: usize) -> usize {
        self.entries[(2 * c + 1) % self.entries.len()]
    }

    pub fn arrows(&self) -> Vec<usize> {
        self.entries.iter().step_by(2).copied().collect()
    }

    pub fn faces(&self) -> Vec<usize> {
        self.entries.iter().skip(1).step_by(2).copied().collect()
    }

    pub fn rotate(&self, by: usize) -> Garland {
        let n = self.entries.len();
        let entries = (0..n).map(|i| self.entries[(i + 2 * by) % n]).collect();
        Garland { entries, primitive: self.primitive }
    }

    /// Rotated so that `g₁` is a positive face.
    pub fn with_positive_first(&self, d: &Dimer) -> Garland {
        if d.face(self.entries[1]).sign == Sign::Pos {
            self.clone()
        } else {
            self.rotate(1)
        }
    }

    /// The opposite band: `(g₀, g_{2k−1}, g_{2k−2}, …, g₁)`.
    pub fn reversed(&self) -> Garland {
        let n = self.entries.len();
        let entries = (0..n).map(|i| self.entries[(n - i) % n]).collect();
        Garland { entries, primitive: self.primitive }
    }

    /// Smallest even rotation, for comparisons.
    pub fn canonical(&self) -> Garland {
        (0..self.k()).map(|s| self.rotate(s)).min_by(|x, y| x.entries.cmp(&y.entries)).expect("nonempty")
    }

    /// Same band up to rotation and orientation.
    pub fn same_unoriented(&self, other: &Garland) -> bool {
        let c = other.canonical();
        self.canonical() == c || self.reversed().canonical() == c
    }

    /// The same garland with face ids of `to`, faces being matched by sign and arrow.
    pub fn transfer(&self, from: &Dimer, to: &Dimer) -> Result<Garland, MfError> {
        let n = self.entries.len();
        let entries = (0..n)
            .map(|i| {
                if i % 2 == 0 {
                    self.entries[i]
                } else {
                    to.face_of(self.entries[i - 1], from.face(self.entries[i]).sign)
                }
            })
            .collect();
        Garland::new(to, entries)
    }
}

/// Primitive garlands with at most `max_k` arrows, one per unoriented band.
///
/// Consecutive faces are the two faces of the arrow between them, so a
/// garland is a closed non-backtracking walk alternating arrows and faces;
/// walks are rooted at their smallest arrow.
pub fn enumerate_garlands(d: &Dimer, max_k: usize) -> Vec<Garland> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for a0 in 0..d.arrow_count() {
        for f1 in [d.pos_face(a0), d.neg_face(a0)] {
            let mut walk = vec![a0, f1];
            extend_walk(d, max_k, &mut walk, &mut |entries| {
                let Ok(g) = Garland::new(d, entries.to_vec()) else { return };
                if !g.primitive {
                    return;
                }
                let key = g.canonical().entries.min(g.reversed().canonical().entries);
                if seen.insert(key) {
                    out.push(g);
                }
            });
        }
    }
    out
}

fn extend_walk(d: &Dimer, max_k: usize, walk: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
    let (a0, f1) = (walk[0], walk[1]);
    let (a, f) = (walk[walk.len() - 2], walk[walk.len() - 1]);
    let k = walk.len() / 2;
    // close up: the last face is the other face of a0
    if k >= 2 && f == d.other_face(a0, f1) && a != a0 {
        emit(walk);
    }
    if k == max_k {
        return;
    }
    for &b in &d.face(f).arrows {
        if b == a || b < a0 {
            continue;
        }
        walk.push(b);
        walk.push(d.other_face(b, f));
        extend_walk(d, max_k, walk, emit);
        walk.truncate(walk.len() - 2);
    }
}

/// Face `f` in walking order starting at `a`.
fn walk_from(d: &Dimer, f: usize, a: usize) -> Vec<usize> {
    let mut out = vec![a];
    let mut x = d.next_in_face(f, a);
    while x != a {
        out.push(x);
        x = d.next_in_face(f, x);
    }
    out
}

/// Snake path with the face each arrow's outgoing pair lies in.
fn snake_with_faces(d: &Dimer, g: &Garland) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for c in 0..g.k() {
        let (f, start, stop) = (g.face(c), g.arrow(c), g.arrow(c + 1));
        let arrows = &d.face(f).arrows;
        let i = arrows.iter().position(|&x| x == start).expect("garland arrow on face");
        for s in 0..arrows.len() {
            let x = arrows[(i + s) % arrows.len()];
            if x == stop {
                break;
            }
            out.push((x, f));
        }
    }
    out
}

/// The cyclic path in path order running through the face cycles of `g`:
/// inside `g_{2j+1}` from `g_{2j}` up to the predecessor of `g_{2j+2}`.
pub fn snake_path(d: &Dimer, g: &Garland) -> Vec<usize> {
    snake_with_faces(d, g).into_iter().map(|(a, _)| a).collect()
}

fn word(walk: &[usize]) -> Vec<(usize, i64)> {
    walk.iter().rev().map(|&a| (a, 1)).collect()
}

fn element<K: Scalar>(j: &Jacobi, walk: &[usize], at: usize) -> Result<PathElement<K>, MfError> {
    if walk.is_empty() {
        Ok(j.identity(at))
    } else {
        Ok(j.path_element(&word(walk))?)
    }
}

pub(crate) fn determinant<K: Scalar>(m: &[Vec<K>]) -> K {
    let n = m.len();
    let mut a: Vec<Vec<K>> = m.to_vec();
    let mut det = K::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return K::zero();
        };
        if p != c {
            a.swap(p, c);
            det = K::zero() - det;
        }
        det = det * a[c][c].clone();
        for r in c + 1..n {
            let factor = a[r][c].clone() / a[c][c].clone();
            for k in c..n {
                let v = a[c][k].clone() * factor.clone();
                a[r][k] = a[r][k].clone() - v;
            }
        }
    }
    det
}

fn check_alpha<K: Scalar>(alpha: &[Vec<K>]) -> Result<usize, MfError> {
    let n = alpha.len();
    if n == 0 || alpha.iter().any(|r| r.len() != n) {
        return Err(MfError::Singular);
    }
    if determinant(alpha).is_zero() {
        return Err(MfError::Singular);
    }
    Ok(n)
}

/// Positions of `t` and `h` of column `c` in the summand ring of size `2k`.
fn column_positions(c: usize, k: usize) -> (usize, usize) {
    let n = 2 * k;
    let m = c / 2;
    if c % 2 == 0 {
        ((4 * m) % n, (4 * m + n - 2) % n)
    } else {
        ((4 * m + 1) % n, (4 * m + 3) % n)
    }
}

fn band_factorization<K: Scalar>(
    j: &Jacobi,
    g: &Garland,
    alpha: &[Vec<K>],
    with_db: bool,
) -> Result<MatrixFactorization<K>, MfError> {
    let d = j.dimer();
    let g = Garland::new(d, g.entries.clone())?.with_positive_first(d);
    let n = check_alpha(alpha)?;
    let k = g.k();
    let size = 2 * k;
    let mut vertex = vec![usize::MAX; size];
    for c in 0..k {
        let a = g.arrow(c);
        let (pt, ph) = column_positions(c, k);
        vertex[pt] = d.tail(a);
        vertex[ph] = d.head(a);
    }
    let mut summands = Vec::with_capacity(size * n);
    for (p, &v) in vertex.iter().enumerate() {
        for _ in 0..n {
            summands.push(Summand::new(v, (p % 2) as u8));
        }
    }
    let mut m = MatrixFactorization { summands, d: zero_matrix(size * n, size * n) };
    let mut put = |dst: usize, src: usize, e: PathElement<K>, twisted: bool| -> Result<(), MfError> {
        for r in 0..n {
            for c in 0..n {
                let coeff = if twisted {
                    alpha[r][c].clone()
                } else if r == c {
                    K::one()
                } else {
                    continue;
                };
                m.d[dst * n + r][src * n + c].add_poly(&Poly::from_element(&e.scale(&coeff)));
            }
        }
        Ok(())
    };
    for c in 0..k {
        let (f, a, b) = (g.face(c), g.arrow(c), g.arrow(c + 1));
        let walk = walk_from(d, f, a);
        let ib = walk.iter().position(|&x| x == b).expect("B1 holds");
        let s1 = &walk[1..ib];
        let s2 = &walk[ib + 1..];
        let (ta, ha) = column_positions(c, k);
        let (tb, hb) = column_positions((c + 1) % k, k);
        let positive = d.face(f).sign == Sign::Pos;
        // d_a: the two complementary subpaths between the corners
        let (mut ab, mut ba) = (vec![a], vec![b]);
        if positive {
            ab.extend_from_slice(s1);
            ba.extend_from_slice(s2);
            put(tb, ta, element(j, &ab, 0)?, false)?;
            put(ta, tb, element(j, &ba, 0)?, false)?;
        } else {
            let mut x = s1.to_vec();
            x.push(b);
            let mut y = s2.to_vec();
            y.push(a);
            put(hb, ha, element(j, &x, 0)?, false)?;
            put(ha, hb, element(j, &y, 0)?, false)?;
        }
        if with_db {
            let (sign1, sign2) = if positive { (-1, 1) } else { (1, -1) };
            let e1 = element::<K>(j, s1, d.head(a))?;
            let e2 = element::<K>(j, s2, d.head(b))?;
            let neg = |e: PathElement<K>, s: i64| if s < 0 { e.neg() } else { e };
            // the arcs into positions 0 and 1 carry the local system
            put(tb, ha, neg(e1, sign1), c == 0 || c == k - 1)?;
            put(ta, hb, neg(e2, sign2), false)?;
        }
    }
    m.check(j)?;
    Ok(m)
}

/// `M(g, α)` with `d = d_a + d_b`.
pub fn mf_band<K: Scalar>(j: &Jacobi, g: &Garland, alpha: &[Vec<K>]) -> Result<MatrixFactorization<K>, MfError> {
    band_factorization(j, g, alpha, true)
}

/// `(P, d_a)`: only the face-subpath entries.
pub fn mf_band_da<K: Scalar>(j: &Jacobi, g: &Garland, alpha: &[Vec<K>]) -> Result<MatrixFactorization<K>, MfError> {
    band_factorization(j, g, alpha, false)
}

#[derive(Debug, Clone)]
pub struct TwistedReport<K> {
    /// snake path in path order; summand `i·n + c` is copy `c` of arrow `snake[i]`
    pub snake: Vec<usize>,
    /// `(target summand, source summand, component)`
    pub delta: Vec<(usize, usize, AnglePath<K>)>,
    pub delta_squared_zero: bool,
    pub no_full_face_cycle: bool,
    /// `Σ ±deg` of the angles, `+` for positive faces
    pub degree_sum: Option<i64>,
    pub gradable: Option<bool>,
    pub shifts: Option<Vec<i64>>,
}

/// `B(g, α) = (⊕ p_i[u_i], δ)`: one summand per arrow of the snake path, the
/// angle between consecutive arrows (reversed in negative faces) as `δ`.
pub fn band_twisted<K: Scalar>(
    mirror: &Dimer,
    g: &Garland,
    alpha: &[Vec<K>],
    matching: Option<&[usize]>,
) -> Result<TwistedReport<K>, MfError> {
    let g = Garland::new(mirror, g.entries.clone())?;
    let n = check_alpha(alpha)?;
    let q = AngleQuiver::new(mirror);
    let snake = snake_with_faces(mirror, &g);
    let len = snake.len();
    let mut delta = Vec::new();
    // (angle, +1 forward / −1 backward)
    let mut steps = Vec::with_capacity(len);
    for i in 0..len {
        let (p, f) = snake[i];
        let next = snake[(i + 1) % len].0;
        let (angle, src, dst, eps) = match mirror.face(f).sign {
            Sign::Pos => (q.out_angle(f, p), i, (i + 1) % len, 1),
            Sign::Neg => (q.out_angle(f, next), (i + 1) % len, i, -1),
        };
        let x = q.angle(angle);
        debug_assert_eq!((x.from, x.to), if eps > 0 { (p, next) } else { (next, p) });
        steps.push((angle, eps));
        let path = AnglePath::new(&q, vec![angle])?;
        let closing = i == len - 1;
        for r in 0..n {
            for c in 0..n {
                let coeff = if closing {
                    alpha[r][c].clone()
                } else if r == c {
                    K::one()
                } else {
                    continue;
                };
                if !coeff.is_zero() {
                    delta.push((dst * n + r, src * n + c, path.scale(&coeff)));
                }
            }
        }
    }
    let mut square: HashMap<(usize, usize, Vec<usize>), K> = HashMap::new();
    for (t2, s2, y) in &delta {
        for (t1, s1, x) in &delta {
            if s2 != t1 {
                continue;
            }
            let prod = y.mul(&q, x);
            if !prod.is_zero() {
                let e = square.entry((*t2, *s1, prod.angles.clone())).or_insert_with(K::zero);
                *e = e.clone() + prod.coeff;
            }
        }
    }
    let delta_squared_zero = square.values().all(|c| c.is_zero());
    let mut per_face: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(angle, _) in &steps {
        let v = per_face.entry(q.angle(angle).face).or_default();
        if !v.contains(&angle) {
            v.push(angle);
        }
    }
    let no_full_face_cycle = per_face.iter().all(|(&f, v)| v.len() < mirror.face(f).len());
    let (mut degree_sum, mut gradable, mut shifts) = (None, None, None);
    if let Some(pm) = matching {
        let degs: Vec<i64> = steps.iter().map(|&(angle, _)| q.angle_degree(angle, pm)).collect();
        degree_sum = Some(steps.iter().zip(&degs).map(|(&(_, e), &dg)| e * dg).sum());
        // deg δ = 1 forces u_{i+1} = u_i + ε_i(1 − deg_i)
        let mut u = vec![0i64; len + 1];
        for i in 0..len {
            u[i + 1] = u[i] + steps[i].1 * (1 - degs[i]);
        }
        let closes = u[len] == 0;
        gradable = Some(closes);
        if closes {
            u.pop();
            shifts = Some(u);
        }
    }
    Ok(TwistedReport { snake: snake.into_iter().map(|(a, _)| a).collect(), delta, delta_squared_zero, no_full_face_cycle, degree_sum, gradable, shifts })
}
