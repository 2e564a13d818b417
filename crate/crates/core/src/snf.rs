//! Smith normal form over the integers with the row transform and its inverse.
//!
//! Pivot rule: smallest nonzero absolute value in the remaining block, ties
//! broken by lowest (row, column) index. Overflow panics rather than wraps.

pub type Mat = Vec<Vec<i64>>;

#[derive(Debug, Clone)]
pub struct Snf {
    /// Diagonal of `D`, nonnegative, each entry dividing the next; length = rank.
    pub diag: Vec<i64>,
    /// Unimodular `U` with `U·A·V = D`.
    pub u: Mat,
    /// `U⁻¹`
    pub u_inv: Mat,
}

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

fn mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("integer overflow in Smith normal form")
}

fn sub(a: i64, b: i64) -> i64 {
    a.checked_sub(b).expect("integer overflow in Smith normal form")
}

struct Work {
    a: Mat,
    u: Mat,
    u_inv: Mat,
    rows: usize,
    cols: usize,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in self.u_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
    }

    /// row_i -= q·row_t
    fn row_axpy(&mut self, i: usize, t: usize, q: i64) {
        if q == 0 {
            return;
        }
        for c in 0..self.cols {
            let v = mul(q, self.a[t][c]);
            self.a[i][c] = sub(self.a[i][c], v);
        }
        for c in 0..self.rows {
            let v = mul(q, self.u[t][c]);
            self.u[i][c] = sub(self.u[i][c], v);
        }
        // U⁻¹ ← U⁻¹ · E⁻¹ : column t += q·column i
        for r in 0..self.rows {
            let v = mul(q, self.u_inv[r][i]);
            self.u_inv[r][t] = self.u_inv[r][t].checked_add(v).expect("integer overflow in Smith normal form");
        }
    }

    /// col_j -= q·col_t
    fn col_axpy(&mut self, j: usize, t: usize, q: i64) {
        if q == 0 {
            return;
        }
        for r in 0..self.rows {
            let v = mul(q, self.a[r][t]);
            self.a[r][j] = sub(self.a[r][j], v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            self.a[i][c] = -self.a[i][c];
        }
        for c in 0..self.rows {
            self.u[i][c] = -self.u[i][c];
        }
        for r in 0..self.rows {
            self.u_inv[r][i] = -self.u_inv[r][i];
        }
    }

    fn pivot(&self, cells: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
        let mut best: Option<(i64, usize, usize)> = None;
        for (i, j) in cells {
            let v = self.a[i][j].abs();
            if v != 0 && best.is_none_or(|(b, bi, bj)| (v, i, j) < (b, bi, bj)) {
                best = Some((v, i, j));
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

pub fn smith(a: &Mat, rows: usize, cols: usize) -> Snf {
    let mut w = Work { a: a.clone(), u: identity(rows), u_inv: identity(rows), rows, cols };
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let block = (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j)));
        let Some((pi, pj)) = w.pivot(block) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let p = w.a[t][t];
            for i in t + 1..rows {
                let q = w.a[i][t].div_euclid(p);
                w.row_axpy(i, t, q);
            }
            for j in t + 1..cols {
                let q = w.a[t][j].div_euclid(p);
                w.col_axpy(j, t, q);
            }
            let line = (t + 1..rows).map(|i| (i, t)).chain((t + 1..cols).map(|j| (t, j)));
            if let Some((i, j)) = w.pivot(line) {
                // a smaller remainder survived; move it to the pivot position
                w.swap_rows(t, i);
                w.swap_cols(t, j);
                continue;
            }
            let p = w.a[t][t];
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| w.a[i][j] % p != 0));
            match bad {
                Some(i) => w.row_axpy(t, i, -1),
                None => break,
            }
        }
        if w.a[t][t] < 0 {
            w.negate_row(t);
        }
        diag.push(w.a[t][t]);
    }
    Snf { diag, u: w.u, u_inv: w.u_inv }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matmul(a: &Mat, b: &Mat) -> Mat {
        let n = a.len();
        let m = b[0].len();
        let k = b.len();
        (0..n).map(|i| (0..m).map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum()).collect()).collect()
    }

    #[test]
    fn diagonalizes_small_matrix() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith(&a, 3, 3);
        assert_eq!(s.diag, vec![2, 6, 12]);
        assert_eq!(matmul(&s.u, &s.u_inv), identity(3));
    }

    #[test]
    fn rank_deficient() {
        let a = vec![vec![1, -1], vec![-1, 1], vec![0, 0]];
        let s = smith(&a, 3, 2);
        assert_eq!(s.diag, vec![1]);
        assert_eq!(matmul(&s.u_inv, &s.u), identity(3));
    }
}
