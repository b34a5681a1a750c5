use std::collections::BTreeMap;

use super::Rational;

/// Sparse coordinate vector; absent keys are zero and stored values are
/// never zero.
pub type SparseVec = BTreeMap<usize, Rational>;

/// `acc += c * v`, dropping entries that cancel.
pub fn add_scaled<K: Ord + Clone>(acc: &mut BTreeMap<K, Rational>, c: &Rational, v: &BTreeMap<K, Rational>) {
    if c.is_zero() {
        return;
    }
    for (k, x) in v {
        let term = c * x;
        match acc.get_mut(k) {
            Some(e) => {
                *e += term;
                if e.is_zero() {
                    acc.remove(k);
                }
            }
            None => {
                acc.insert(k.clone(), term);
            }
        }
    }
}

pub fn scale<K: Ord + Clone>(v: &BTreeMap<K, Rational>, c: &Rational) -> BTreeMap<K, Rational> {
    if c.is_zero() {
        return BTreeMap::new();
    }
    v.iter().map(|(k, x)| (k.clone(), c * x)).collect()
}

pub fn sparse_to_dense(v: &SparseVec, len: usize) -> Vec<Rational> {
    let mut d = vec![Rational::zero(); len];
    for (&i, x) in v {
        d[i] = x.clone();
    }
    d
}

pub fn dense_to_sparse(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Incrementally maintained reduced row-echelon form of a set of sparse
/// vectors. The pivot of a row is its smallest key and every row is zero in
/// the pivot columns of the other rows.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Rows keyed by pivot column; each row has coefficient one at its pivot.
    pub fn rows(&self) -> &BTreeMap<usize, SparseVec> {
        &self.rows
    }

    /// Remainder of `v` after eliminating every pivot column. Zero iff `v`
    /// lies in the row space.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let hits: Vec<(usize, Rational)> = v
            .iter()
            .filter(|(k, _)| self.rows.contains_key(k))
            .map(|(k, c)| (*k, c.clone()))
            .collect();
        let mut out = v.clone();
        for (k, c) in hits {
            add_scaled(&mut out, &-c, &self.rows[&k]);
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the row space. Returns whether the rank went up.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let mut r = self.reduce(v);
        let Some((&k, lead)) = r.first_key_value() else {
            return false;
        };
        if !lead.is_one() {
            let inv = lead.recip();
            for x in r.values_mut() {
                *x *= &inv;
            }
        }
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&k).cloned() {
                add_scaled(row, &-c, &r);
            }
        }
        self.rows.insert(k, r);
        true
    }
}

/// Column-sparse matrix: `columns[j]` holds the nonzero entries of column `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn new(rows: usize, columns: Vec<SparseVec>) -> Self {
        assert!(
            columns.iter().all(|c| c.keys().next_back().is_none_or(|&k| k < rows)),
            "entry outside the row range"
        );
        SparseMatrix { rows, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn rank(&self) -> usize {
        let mut e = SparseEchelon::new();
        for c in &self.columns {
            e.insert(c);
        }
        e.rank()
    }

    pub fn nullity(&self) -> usize {
        self.cols() - self.rank()
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&k, c) in v {
            add_scaled(&mut out, c, &self.columns[k]);
        }
        out
    }

    /// `self * other`.
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), other.rows, "dimension mismatch in product");
        SparseMatrix {
            rows: self.rows,
            columns: other.columns.iter().map(|c| self.mul_vec(c)).collect(),
        }
    }

    pub fn to_dense(&self) -> super::RatMatrix {
        let mut m = super::RatMatrix::zeros(self.rows, self.cols());
        for (j, c) in self.columns.iter().enumerate() {
            for (&i, v) in c {
                m.set(i, j, v.clone());
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{q, RatMatrix};

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(k, v)| (k, Rational::from(v))).collect()
    }

    #[test]
    fn echelon_matches_dense_rank() {
        let vs = [sv(&[(0, 1), (1, 2)]), sv(&[(0, 2), (1, 4)]), sv(&[(1, 1), (2, 1)])];
        let mut e = SparseEchelon::new();
        let added: Vec<bool> = vs.iter().map(|v| e.insert(v)).collect();
        assert_eq!(added, vec![true, false, true]);
        let dense = RatMatrix::from_rows(3, vs.iter().map(|v| sparse_to_dense(v, 3)).collect());
        assert_eq!(e.rank(), dense.rank());
        // fully reduced: row 0 has no entry in column 1
        assert_eq!(e.rows()[&0], sv(&[(0, 1), (2, -2)]));
        assert!(e.contains(&sv(&[(0, 1), (1, 3), (2, 1)])));
        assert!(!e.contains(&sv(&[(2, 1)])));
        assert_eq!(e.reduce(&sv(&[(2, 1)])), BTreeMap::from([(2, q(1, 1))]));
    }

    #[test]
    fn sparse_matrix_rank_and_product() {
        let a = SparseMatrix::new(2, vec![sv(&[(0, 1)]), sv(&[(0, 2)]), sv(&[(1, 1)])]);
        assert_eq!(a.rank(), a.to_dense().rank());
        assert_eq!(a.nullity(), 1);
        let k = SparseMatrix::new(3, vec![sv(&[(0, -2), (1, 1)])]);
        assert!(a.compose(&k).is_zero());
    }
}
