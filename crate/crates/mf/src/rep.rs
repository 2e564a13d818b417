//! Bands of a representation whose zero arrows form a union of perfect
//! matchings.
//!
//! Every zero arrow is crossed by two strands. A strand entering a face
//! through a zero arrow follows the boundary (along the arrows in a positive
//! face, against them in a negative one) and leaves through the next zero
//! arrow. Strands that leave a face through the arrow they entered by bound a
//! disc over two neighbouring faces and are dropped.

use dimer_core::{Dimer, Homology, Scalar, Sign};
use dimer_matching::enumerate_matchings;

use crate::band::Garland;
use crate::MfError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedBand<K> {
    /// face ids of the dimer (the mirror has the same faces)
    pub garland: Garland,
    /// `n×n` local system; `1×1` for a representation
    pub decoration: Vec<Vec<K>>,
    /// class in `H₁` of the torus of the band curve
    pub hclass: Vec<i64>,
    /// null-homologous trace that passed the garland conditions
    pub warning: bool,
}

#[derive(Debug, Clone)]
pub struct RepBands<K> {
    /// one band per pair `{band, opposite}`
    pub bands: Vec<DecoratedBand<K>>,
    /// oriented traces before identification
    pub oriented: usize,
    /// oriented traces dropped for revisiting an arrow at once
    pub dropped: usize,
    /// every oriented trace as `(z₀, F₀, z₁, F₁, …)`, dropped ones included
    pub traces: Vec<Vec<usize>>,
    /// matchings contained in the zero set
    pub matchings: Vec<Vec<usize>>,
}

struct Step {
    exit: usize,
    factor_passed: Vec<(usize, i64)>,
}

fn walk_to_next_zero(d: &Dimer, zero: &[bool], f: usize, z: usize) -> Step {
    let advance = |a: usize| match d.face(f).sign {
        Sign::Pos => d.next_in_face(f, a),
        Sign::Neg => d.prev_in_face(f, a),
    };
    let exponent = match d.face(f).sign {
        Sign::Pos => -1,
        Sign::Neg => 1,
    };
    let mut passed = Vec::new();
    let mut a = advance(z);
    while !zero[a] {
        passed.push((a, exponent));
        a = advance(a);
    }
    Step { exit: a, factor_passed: passed }
}

/// Trace the strands of `ρ` and return its bands.
pub fn rep_bands<K: Scalar>(d: &Dimer, h: &Homology, rho: &[K]) -> Result<RepBands<K>, MfError> {
    if rho.len() != d.arrow_count() {
        return Err(MfError::NotToric(format!("{} values for {} arrows", rho.len(), d.arrow_count())));
    }
    let zero: Vec<bool> = rho.iter().map(|x| x.is_zero()).collect();
    let matchings: Vec<Vec<usize>> = enumerate_matchings(d).into_iter().filter(|m| m.iter().all(|&a| zero[a])).collect();
    let mut covered = vec![false; d.arrow_count()];
    for m in &matchings {
        for &a in m {
            covered[a] = true;
        }
    }
    if matchings.is_empty() || covered != zero {
        return Err(MfError::NotToric("zero arrows are not a union of perfect matchings".into()));
    }

    // states: (face entered, zero arrow crossed)
    let zeros: Vec<usize> = (0..d.arrow_count()).filter(|&a| zero[a]).collect();
    let state_index = |f: usize, z: usize| -> usize {
        let i = zeros.binary_search(&z).expect("zero arrow");
        2 * i + (d.face(f).sign == Sign::Neg) as usize
    };
    let mut seen = vec![false; 2 * zeros.len()];
    let basis = h.basis();
    let mut oriented = Vec::new();
    let mut dropped = 0;
    let mut traces = Vec::new();
    for &z0 in &zeros {
        for f0 in [d.pos_face(z0), d.neg_face(z0)] {
            if seen[state_index(f0, z0)] {
                continue;
            }
            let (mut f, mut z) = (f0, z0);
            let mut entries = Vec::new();
            let mut decoration = K::one();
            let mut crossing = vec![0i64; basis.len()];
            loop {
                seen[state_index(f, z)] = true;
                let eps = if d.face(f).sign == Sign::Neg { 1 } else { -1 };
                for (c, b) in crossing.iter_mut().zip(basis) {
                    *c += eps * b[z];
                }
                entries.push(z);
                entries.push(f);
                let step = walk_to_next_zero(d, &zero, f, z);
                for (a, e) in step.factor_passed {
                    decoration = if e < 0 { decoration / rho[a].clone() } else { decoration * rho[a].clone() };
                }
                z = step.exit;
                f = d.other_face(z, f);
                if (f, z) == (f0, z0) {
                    break;
                }
            }
            traces.push(entries.clone());
            let Ok(garland) = Garland::new(d, entries) else {
                dropped += 1;
                continue;
            };
            if (garland.k() / 2) % 2 == 1 {
                decoration = K::zero() - decoration;
            }
            // Poincaré dual of the crossing vector
            let hclass = if crossing.len() == 2 { vec![-crossing[1], crossing[0]] } else { crossing };
            let warning = hclass.iter().all(|&c| c == 0);
            oriented.push(DecoratedBand { garland, decoration: vec![vec![decoration]], hclass, warning });
        }
    }
    let count = oriented.len();
    let mut bands: Vec<DecoratedBand<K>> = Vec::new();
    for b in oriented {
        if !bands.iter().any(|x| x.garland.same_unoriented(&b.garland)) {
            bands.push(b);
        }
    }
    Ok(RepBands { bands, oriented: count, dropped, traces, matchings })
}
