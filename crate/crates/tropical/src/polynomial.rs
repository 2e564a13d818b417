use std::collections::BTreeMap;

use dimer_core::{Dimer, Point, Scalar};
use dimer_matching::PerfectMatching;

use crate::TropicalError;

/// `θ_W(v) = Σ_{h(a)=v} W_a − Σ_{t(a)=v} W_a`
pub fn theta<K: Scalar>(d: &Dimer, w: &[K]) -> Result<Vec<K>, TropicalError> {
    check_weights(d, w)?;
    let mut out = vec![K::zero(); d.vertex_count()];
    for (a, wa) in w.iter().enumerate() {
        out[d.head(a)] = out[d.head(a)].clone() + wa.clone();
        out[d.tail(a)] = out[d.tail(a)].clone() - wa.clone();
    }
    Ok(out)
}

pub(crate) fn check_weights<K>(d: &Dimer, w: &[K]) -> Result<(), TropicalError> {
    if w.len() != d.arrow_count() {
        return Err(TropicalError::WeightCount { expected: d.arrow_count(), got: w.len() });
    }
    Ok(())
}

/// `Σ_{a∈P} W_a`
pub fn lift<K: Scalar>(m: &PerfectMatching, w: &[K]) -> K {
    m.arrows.iter().fold(K::zero(), |s, &a| s + w[a].clone())
}

/// One linear form `aX + bY + c` of `f_W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term<K> {
    pub point: Point,
    /// minimum lift over the matchings at `point`
    pub c: K,
    /// indices of all matchings at `point`
    pub owners: Vec<usize>,
}

/// `f_W = min_P (deg_P x) X + (deg_P y) Y + Σ_{a∈P} W_a`, one term per lattice point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalPolynomial<K> {
    /// sorted by lattice point
    pub terms: Vec<Term<K>>,
}

impl<K: Scalar> TropicalPolynomial<K> {
    pub fn new(matchings: &[PerfectMatching], lifts: &[K]) -> TropicalPolynomial<K> {
        let mut by_point: BTreeMap<Point, Vec<usize>> = BTreeMap::new();
        for (i, m) in matchings.iter().enumerate() {
            by_point.entry(m.point).or_default().push(i);
        }
        let terms = by_point
            .into_iter()
            .map(|(point, owners)| {
                let c = owners
                    .iter()
                    .map(|&i| lifts[i].clone())
                    .reduce(|x, y| if y < x { y } else { x })
                    .expect("owners are nonempty");
                Term { point, c, owners }
            })
            .collect();
        TropicalPolynomial { terms }
    }

    pub fn term_at(&self, p: Point) -> Option<usize> {
        self.terms.binary_search_by(|t| t.point.cmp(&p)).ok()
    }

    pub fn points(&self) -> Vec<Point> {
        self.terms.iter().map(|t| t.point).collect()
    }

    /// Value of `f` at `(X, Y)`.
    pub fn eval(&self, x: &K, y: &K) -> K {
        self.terms
            .iter()
            .map(|t| self.term_value(t, x, y))
            .reduce(|p, q| if q < p { q } else { p })
            .expect("nonempty polynomial")
    }

    pub fn term_value(&self, t: &Term<K>, x: &K, y: &K) -> K {
        int::<K>(t.point[0]) * x.clone() + int::<K>(t.point[1]) * y.clone() + t.c.clone()
    }
}

/// Membership of `(u, v, w)` in `PT_{f,r} = {a_i x + b_i y + z ≥ −r c_i}`.
pub fn polytope_contains<K: Scalar>(f: &TropicalPolynomial<K>, uvw: [i64; 3], r: &K) -> bool {
    f.terms.iter().all(|t| {
        let lhs = int::<K>(t.point[0] * uvw[0] + t.point[1] * uvw[1] + uvw[2]);
        lhs >= K::zero() - r.clone() * t.c.clone()
    })
}

pub(crate) fn int<K: Scalar>(n: i64) -> K {
    dimer_core::from_int(n)
}
