//! Reduction of a dimer at a toric representation `ρ`.
//!
//! Arrows with `ρ(a) ≠ 0` become invertible in the localization and are
//! contracted; arrows that then close up into null-homotopic loops are
//! redundant and dropped; finally faces of length two are removed by merging
//! their neighbours. On a nondegenerate zero-dimensional orbit the result is a
//! consistent dimer whose matching polygon is the cell of the orbit.

use std::collections::BTreeSet;

use dimer_core::lattice::{self, Point};
use dimer_core::{Dimer, DimerError, Homology, Scalar, Sign};
use dimer_matching::{enumerate_matchings, matching_point, matching_polygon, perfect_matchings, MatchingError, PolygonInvariants};
use dimer_tropical::{TropicalError, TropicalModel};
use dimer_zigzag::is_consistent;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("expected {expected} values, got {got}")]
    ValueCount { expected: usize, got: usize },
    #[error("not a representation: the two paths completing arrow {} differ", .0 + 1)]
    Relation(usize),
    #[error("zero arrows are not a union of perfect matchings")]
    NotToric,
    #[error("invertible arrows close an essential cycle at arrow {}", .0 + 1)]
    EssentialCycle(usize),
    #[error("node {0} does not exist")]
    NoNode(usize),
    #[error(transparent)]
    Dimer(#[from] DimerError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Tropical(#[from] TropicalError),
}

/// Torus orbit of the representation, read off from the lattice points of the
/// matchings in its zero set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orbit {
    /// one point: Morita equivalent to `ℂ[ℂ* × ℂ* × ℂ]`
    Open,
    /// a segment of lattice length `k`: `ℂ[ℂ*] × ℂ[X,Y] ⋊ ℤ_k`
    Edge(i64),
    /// a polygon: the Jacobi algebra of the reduced dimer
    Node,
}

impl Orbit {
    pub fn morita_label(&self) -> String {
        match self {
            Orbit::Open => "C[C* x C* x C]".into(),
            Orbit::Edge(k) => format!("C[C*] x C[X,Y]#Z_{k}"),
            Orbit::Node => "J(Q_rho)".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub source: Dimer,
    pub orbit: Orbit,
    /// matchings inside the zero set
    pub matchings: Vec<Vec<usize>>,
    pub nonzero_arrows: Vec<usize>,
    /// vertices identified by invertible arrows
    pub vertex_classes: Vec<Vec<usize>>,
    pub removed_loops: Vec<usize>,
    pub removed_digons: Vec<[usize; 2]>,
    /// dimer after contraction and loop removal, before 2-cycles go
    pub contracted: Option<Dimer>,
    /// reduced dimer, for a zero-dimensional orbit
    pub result: Option<Dimer>,
    /// original id of every arrow of `result`, in its arrow order
    pub kept: Vec<usize>,
    /// `None` when `result` is absent or not on a torus
    pub well_ordered: Option<bool>,
}

struct Classes {
    of: Vec<usize>,
    members: Vec<Vec<usize>>,
    /// chain from the class root to each vertex along invertible arrows
    potential: Vec<Vec<i64>>,
    tree: Vec<bool>,
}

fn vertex_classes(d: &Dimer, nonzero: &[bool]) -> Classes {
    let (n, e) = (d.vertex_count(), d.arrow_count());
    let mut of = vec![usize::MAX; n];
    let mut members = Vec::new();
    let mut potential = vec![Vec::new(); n];
    let mut tree = vec![false; e];
    for root in 0..n {
        if of[root] != usize::MAX {
            continue;
        }
        let k = members.len();
        of[root] = k;
        potential[root] = vec![0; e];
        let mut class = vec![root];
        let mut i = 0;
        while i < class.len() {
            let x = class[i];
            i += 1;
            for a in (0..e).filter(|&a| nonzero[a] && (d.head(a) == x || d.tail(a) == x)) {
                let (y, sign) = if d.tail(a) == x { (d.head(a), 1) } else { (d.tail(a), -1) };
                if of[y] != usize::MAX {
                    continue;
                }
                of[y] = k;
                let mut c = potential[x].clone();
                c[a] += sign;
                potential[y] = c;
                tree[a] = true;
                class.push(y);
            }
        }
        class.sort_unstable();
        members.push(class);
    }
    Classes { of, members, potential, tree }
}

impl Classes {
    /// First invertible arrow closing a cycle that wraps the torus.
    fn essential_cycle(&self, d: &Dimer, h: &Homology, nonzero: &[bool]) -> Option<usize> {
        (0..d.arrow_count()).find(|&a| nonzero[a] && !self.tree[a] && self.cycle_class(d, h, a) != [0, 0])
    }

    /// Class of `a` closed up inside its vertex class; `a` must join two
    /// vertices of one class.
    fn cycle_class(&self, d: &Dimer, h: &Homology, a: usize) -> Point {
        let mut c: Vec<i64> = self.potential[d.tail(a)].iter().zip(&self.potential[d.head(a)]).map(|(t, s)| t - s).collect();
        c[a] += 1;
        h.class2(&c)
    }
}

/// First arrow whose two face relations disagree under the scalar
/// assignment `ρ` (one-dimensional spaces at every vertex).
pub fn relation_failure<K: Scalar>(d: &Dimer, rho: &[K]) -> Option<usize> {
    let rest = |a: usize, f: usize| {
        d.face(f).arrows.iter().filter(|&&b| b != a).fold(K::one(), |p, &b| p * rho[b].clone())
    };
    (0..d.arrow_count()).find(|&a| rest(a, d.pos_face(a)) != rest(a, d.neg_face(a)))
}

fn orbit_of(points: &[Point]) -> Orbit {
    let hull = lattice::convex_hull(points);
    match hull.len() {
        1 => Orbit::Open,
        2 => Orbit::Edge(lattice::lattice_length(hull[0], hull[1])),
        _ => Orbit::Node,
    }
}

/// Reduce `d` at `ρ`; the reduced dimer is built only for zero-dimensional
/// orbits.
pub fn reduce_dimer<K: Scalar>(d: &Dimer, h: &Homology, rho: &[K]) -> Result<Reduction, ReduceError> {
    if rho.len() != d.arrow_count() {
        return Err(ReduceError::ValueCount { expected: d.arrow_count(), got: rho.len() });
    }
    h.require_torus()?;
    if let Some(a) = relation_failure(d, rho) {
        return Err(ReduceError::Relation(a));
    }
    let e = d.arrow_count();
    let zero: Vec<bool> = rho.iter().map(|x| x.is_zero()).collect();
    let matchings: Vec<Vec<usize>> = enumerate_matchings(d).into_iter().filter(|m| m.iter().all(|&a| zero[a])).collect();
    let mut covered = vec![false; e];
    for &a in matchings.iter().flatten() {
        covered[a] = true;
    }
    if matchings.is_empty() || covered != zero {
        return Err(ReduceError::NotToric);
    }
    let points: Vec<Point> = matchings.iter().map(|m| matching_point(h, m)).collect();
    let orbit = orbit_of(&points);
    let nonzero: Vec<bool> = zero.iter().map(|z| !z).collect();
    let classes = vertex_classes(d, &nonzero);
    let mut reduction = Reduction {
        source: d.clone(),
        orbit,
        matchings,
        nonzero_arrows: (0..e).filter(|&a| nonzero[a]).collect(),
        vertex_classes: classes.members.clone(),
        removed_loops: Vec::new(),
        removed_digons: Vec::new(),
        contracted: None,
        result: None,
        kept: Vec::new(),
        well_ordered: None,
    };
    // on lower-dimensional orbits the inverted essential cycles are exactly
    // the torus factors of the Morita type
    if orbit != Orbit::Node {
        return Ok(reduction);
    }
    if let Some(a) = classes.essential_cycle(d, h, &nonzero) {
        return Err(ReduceError::EssentialCycle(a));
    }

    let mut keep = zero.clone();
    for a in (0..e).filter(|&a| zero[a]) {
        if classes.of[d.head(a)] == classes.of[d.tail(a)] && classes.cycle_class(d, h, a) == [0, 0] {
            keep[a] = false;
            reduction.removed_loops.push(a);
        }
    }
    let mut faces: Vec<(Sign, Vec<usize>)> = d
        .faces()
        .iter()
        .map(|f| (f.sign, f.arrows.iter().copied().filter(|&a| keep[a]).collect::<Vec<_>>()))
        .filter(|(_, arrows)| !arrows.is_empty())
        .collect();
    let name = d.name().to_string();
    reduction.contracted = Some(rebuild(d, &faces, &keep, format!("{name}-contracted"))?);
    while let Some(pair) = remove_digon(&mut faces) {
        for a in pair {
            keep[a] = false;
        }
        reduction.removed_digons.push(pair);
    }
    let result = rebuild(d, &faces, &keep, format!("{name}-reduced"))?;
    let kept: Vec<usize> = (0..e).filter(|&a| keep[a]).collect();
    reduction.well_ordered = Homology::new(&result).ok().and_then(|hr| is_consistent(&result, &hr).well_ordered);
    reduction.result = Some(result);
    reduction.kept = kept;
    Ok(reduction)
}

/// Dimer on the kept arrows of `d` with the given faces in path order.
fn rebuild(d: &Dimer, faces: &[(Sign, Vec<usize>)], keep: &[bool], name: String) -> Result<Dimer, ReduceError> {
    let kept: Vec<usize> = (0..keep.len()).filter(|&a| keep[a]).collect();
    let index = |a: usize| kept.binary_search(&a).expect("kept arrow");
    let mut sigma = [vec![0; kept.len()], vec![0; kept.len()]];
    for (sign, arrows) in faces {
        let s = &mut sigma[(*sign == Sign::Neg) as usize];
        let k = arrows.len();
        for i in 0..k {
            // path order: arrows[i + 1] is walked just before arrows[i]
            s[index(arrows[(i + 1) % k])] = index(arrows[i]);
        }
    }
    let [sp, sm] = sigma;
    let labels = kept.iter().map(|&a| Some(d.arrow_name(a))).collect();
    Ok(Dimer::from_permutations(name, sp, sm, labels)?)
}

/// Remove one 2-cycle face, merging the two faces on its other side; returns
/// the removed pair. Among overlapping choices the pair with the largest
/// arrows goes first, so the reduced dimer keeps the lowest arrow ids.
fn remove_digon(faces: &mut Vec<(Sign, Vec<usize>)>) -> Option<[usize; 2]> {
    let mut candidates: Vec<usize> = (0..faces.len()).filter(|&f| faces[f].1.len() == 2).collect();
    candidates.sort_by_key(|&f| {
        let (a, b) = (faces[f].1[0], faces[f].1[1]);
        std::cmp::Reverse((a.max(b), a.min(b)))
    });
    for f in candidates {
        let sign = faces[f].0;
        let (a, b) = (faces[f].1[0], faces[f].1[1]);
        let other = |x: usize| faces.iter().position(|(s, arrows)| *s != sign && arrows.contains(&x));
        let (Some(fa), Some(fb)) = (other(a), other(b)) else { continue };
        if fa == fb {
            continue;
        }
        // rotate each neighbour to start at the removed arrow; what follows it
        // in path order joins up into one cycle
        let rest = |face: &[usize], x: usize| -> Vec<usize> {
            let i = face.iter().position(|&y| y == x).expect("arrow on face");
            (1..face.len()).map(|k| face[(i + k) % face.len()]).collect()
        };
        let mut merged = rest(&faces[fa].1, a);
        merged.extend(rest(&faces[fb].1, b));
        let mut drop: Vec<usize> = vec![f, fa, fb];
        drop.sort_unstable();
        for &i in drop.iter().rev() {
            faces.remove(i);
        }
        if !merged.is_empty() {
            faces.push((sign.flip(), merged));
        }
        let (x, y) = (a.min(b), a.max(b));
        return Some([x, y]);
    }
    None
}

/// Outcome of comparing a spider node's cell with the matching polygon of
/// the dimer reduced at that node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellCheck {
    pub cell: usize,
    pub reduction: Reduction,
    pub cell_invariants: PolygonInvariants,
    pub reduced_invariants: Option<PolygonInvariants>,
    pub matches: bool,
}

/// Representation vanishing exactly on the stable matchings of a cell.
pub fn node_representation<K: Scalar>(d: &Dimer, model: &TropicalModel<K>, cell: usize) -> Result<Vec<K>, ReduceError> {
    let c = model.subdivision.cells.get(cell).ok_or(ReduceError::NoNode(cell))?;
    let at = model.stable_at_vertices()?;
    let mut rho = vec![K::one(); d.arrow_count()];
    for &t in &c.corners {
        let m = at[t].expect("corners carry stable matchings");
        for &a in &model.matchings[m].arrows {
            rho[a] = K::zero();
        }
    }
    Ok(rho)
}

/// Arrows whose line avoids the node, i.e. the ones inverted at it.
pub fn node_contraction<K: Scalar>(d: &Dimer, model: &TropicalModel<K>, cell: usize) -> Result<Vec<usize>, ReduceError> {
    if cell >= model.subdivision.cells.len() {
        return Err(ReduceError::NoNode(cell));
    }
    let mut out = Vec::new();
    for a in 0..d.arrow_count() {
        let l = model.line_of_arrow(d, a)?;
        if !l.cells.contains(&cell) {
            out.push(a);
        }
    }
    Ok(out)
}

pub fn cell_polygon_check<K: Scalar>(d: &Dimer, h: &Homology, model: &TropicalModel<K>, cell: usize) -> Result<CellCheck, ReduceError> {
    let rho = node_representation(d, model, cell)?;
    let reduction = reduce_dimer(d, h, &rho)?;
    let c = &model.subdivision.cells[cell];
    let hull: Vec<Point> = c.corners.iter().map(|&t| model.subdivision.points[t]).collect();
    let cell_invariants = dimer_matching::polygon_invariants(&hull);
    let reduced_invariants = match &reduction.result {
        Some(r) => Some(reduced_polygon(r)?),
        None => None,
    };
    let matches = reduced_invariants.as_ref() == Some(&cell_invariants);
    Ok(CellCheck { cell, reduction, cell_invariants, reduced_invariants, matches })
}

/// Matching polygon invariants of a reduced dimer.
pub fn reduced_polygon(r: &Dimer) -> Result<PolygonInvariants, ReduceError> {
    let hr = Homology::new(r)?;
    let pm = perfect_matchings(r, &hr)?;
    Ok(matching_polygon(&pm)?.invariants())
}

/// Arrows in every matching of the zero set.
pub fn common_arrows(red: &Reduction) -> Vec<usize> {
    let mut sets = red.matchings.iter().map(|m| m.iter().copied().collect::<BTreeSet<usize>>());
    let first = sets.next().unwrap_or_default();
    sets.fold(first, |acc, s| acc.intersection(&s).copied().collect()).into_iter().collect()
}
