//! Small helpers for permutations stored as index vectors.

pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

pub fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// `(f ∘ g)(x) = f(g(x))`
pub fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}

/// Cycles, each starting at its smallest element, ordered by that element.
pub fn cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cyc.push(x);
            x = p[x];
        }
        out.push(cyc);
    }
    out
}

/// Index of the cycle containing each element, and the number of cycles.
pub fn cycle_index(p: &[usize]) -> (Vec<usize>, usize) {
    let cyc = cycles(p);
    let mut idx = vec![0; p.len()];
    for (c, members) in cyc.iter().enumerate() {
        for &x in members {
            idx[x] = c;
        }
    }
    (idx, cyc.len())
}
