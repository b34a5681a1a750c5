use std::fmt;

use super::Rational;

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from its rows. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            entries.extend(r);
        }
        RatMatrix {
            rows: nrows,
            cols,
            entries,
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from(v)).collect())
                .collect(),
        )
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged column");
            for (i, v) in c.iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if !v.is_zero() {
                    t.set(j, i, v.clone());
                }
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.entries[idx] += &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row-echelon form and the pivot columns.
///
/// Columns are scanned left to right; within a column the first row at or
/// below the current rank with a nonzero entry becomes the pivot row.
pub fn rref(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let mut a = m.clone();
    let cols = a.cols;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a.get(r, c).recip();
        if !inv.is_one() {
            for j in c..cols {
                let v = &a.entries[r * cols + j];
                if !v.is_zero() {
                    a.entries[r * cols + j] = v * &inv;
                }
            }
        }
        let pivot_row: Vec<(usize, Rational)> = (c..cols)
            .filter_map(|j| {
                let v = a.get(r, j);
                (!v.is_zero()).then(|| (j, v.clone()))
            })
            .collect();
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, c).clone();
            if factor.is_zero() {
                continue;
            }
            for (j, v) in &pivot_row {
                let idx = i * cols + j;
                a.entries[idx] -= &(&factor * v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Basis of the right kernel `{v : m v = 0}`, one vector per free column.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(m);
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                let e = r.get(row, free);
                if !e.is_zero() {
                    v[p] = -e;
                }
            }
            v
        })
        .collect()
}

/// Whether `v` is a rational linear combination of `basis`.
pub fn in_span(v: &[Rational], basis: &[Vec<Rational>]) -> bool {
    if v.iter().all(Rational::is_zero) {
        return true;
    }
    let cols = v.len();
    let base = RatMatrix::from_rows(cols, basis.to_vec());
    let mut with_v = basis.to_vec();
    with_v.push(v.to_vec());
    let ext = RatMatrix::from_rows(cols, with_v);
    base.rank() == ext.rank()
}

/// The nonzero rows of the RREF of the given vectors: a canonical basis of
/// their span.
pub fn row_basis(len: usize, vectors: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = RatMatrix::from_rows(len, vectors.to_vec());
    let (r, pivots) = rref(&m);
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Some solution `x` of `m x = b`, or `None` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve(m: &RatMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(m.rows(), b.len(), "right-hand side length");
    let cols = m.cols();
    let mut aug = RatMatrix::zeros(m.rows(), cols + 1);
    for i in 0..m.rows() {
        for j in 0..cols {
            let v = m.get(i, j);
            if !v.is_zero() {
                aug.set(i, j, v.clone());
            }
        }
        aug.set(i, cols, b[i].clone());
    }
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r.get(row, cols).clone();
    }
    Some(x)
}

/// Inverse of a square matrix, or `None` when it is singular.
pub fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    assert_eq!(m.rows(), m.cols(), "inverse of a non-square matrix");
    let n = m.rows();
    let mut aug = RatMatrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let v = m.get(i, j);
            if !v.is_zero() {
                aug.set(i, j, v.clone());
            }
        }
        aug.set(i, n + i, Rational::one());
    }
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
        return None;
    }
    let mut inv = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let v = r.get(i, n + j);
            if !v.is_zero() {
                inv.set(i, j, v.clone());
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;

    #[test]
    fn rref_identity_and_rank_one() {
        let id = RatMatrix::identity(2);
        let (r, p) = rref(&id);
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1]);

        let m = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        let (r, p) = rref(&m);
        assert_eq!(r, RatMatrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_normalizes_fractions() {
        let m = RatMatrix::from_i64(&[&[2, 1, 0], &[4, 0, 1]]);
        let (r, p) = rref(&m);
        assert_eq!(p, vec![0, 1]);
        assert_eq!(r.get(0, 2), &q(1, 4));
        assert_eq!(r.get(1, 2), &q(-1, 2));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&RatMatrix::zeros(3, 3)).len(), 3);
        assert!(kernel_basis(&RatMatrix::identity(3)).is_empty());

        let m = RatMatrix::from_i64(&[&[1, 1, 0]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!((&v[0] + &v[1]).is_zero());
            assert!(m.mul_vec(v).iter().all(Rational::is_zero));
        }
        assert_eq!(k[0], vec![q(-1, 1), q(1, 1), q(0, 1)]);
        assert_eq!(k[1], vec![q(0, 1), q(0, 1), q(1, 1)]);
    }

    #[test]
    fn span_membership() {
        let e1 = vec![q(1, 1), q(0, 1)];
        let e2 = vec![q(0, 1), q(1, 1)];
        assert!(in_span(&[q(0, 1), q(0, 1)], std::slice::from_ref(&e2)));
        assert!(in_span(&[q(0, 1), q(0, 1)], &[]));
        assert!(!in_span(&e1, &[e2]));
        assert!(in_span(&[q(2, 1), q(4, 1)], &[vec![q(1, 1), q(2, 1)]]));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = RatMatrix::from_i64(&[&[1, 1], &[1, -1]]);
        let x = solve(&m, &[q(3, 1), q(1, 1)]).unwrap();
        assert_eq!(x, vec![q(2, 1), q(1, 1)]);
        let s = RatMatrix::from_i64(&[&[1, 1], &[2, 2]]);
        assert!(solve(&s, &[q(1, 1), q(3, 1)]).is_none());
    }

    #[test]
    fn inverse_examples() {
        let m = RatMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv), RatMatrix::identity(2));
        assert!(inverse(&RatMatrix::from_i64(&[&[1, 2], &[2, 4]])).is_none());
        assert_eq!(inverse(&RatMatrix::zeros(0, 0)), Some(RatMatrix::zeros(0, 0)));
    }
}
