//! The complex `S(V)[-4] -> S(V)⊗V[-2] -> S(V)⊗V -> S(V)` computing
//! `H_•(ym(n), S(V(n)))`, one polynomial degree at a time.
//!
//! Differentials, for `w` a monomial of `S^q`:
//! `d3(w) = sum_i x_i w ⊗ x_i`,
//! `d2(w ⊗ x_i) = sum_j (x_j^2 w ⊗ x_i - x_i x_j w ⊗ x_j)`,
//! `d1(w ⊗ x_i) = x_i w`.
//! A basis element `w ⊗ x_i` of `S^q ⊗ V` has index `k * n + (i - 1)` where
//! `k` is the index of `w` in [`SymBasis`].

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{Rational, SparseMatrix, SparseVec};
use crate::series;

/// Monomials of `S^p(V(n))` as exponent vectors, lexicographically
/// decreasing (`x_1^p` first).
#[derive(Clone, Debug)]
pub struct SymBasis {
    n: usize,
    p: usize,
    monomials: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl SymBasis {
    pub fn new(n: usize, p: usize) -> Self {
        let mut monomials = Vec::new();
        let mut cur = vec![0u32; n];
        fill_monomials(0, p as u32, &mut cur, &mut monomials);
        let index = monomials.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
        SymBasis {
            n,
            p,
            monomials,
            index,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monomials
    }

    pub fn index_of(&self, alpha: &[u32]) -> Option<usize> {
        self.index.get(alpha).copied()
    }
}

fn fill_monomials(pos: usize, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let n = cur.len();
    if pos + 1 == n {
        cur[pos] = remaining;
        out.push(cur.clone());
        cur[pos] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        cur[pos] = e;
        fill_monomials(pos + 1, remaining - e, cur, out);
    }
    cur[pos] = 0;
}

/// `C(a, b)` as a big integer; zero when `b > a`.
pub fn binomial(a: usize, b: usize) -> BigInt {
    if b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for k in 0..b {
        acc = acc * BigInt::from(a - k) / BigInt::from(k + 1);
    }
    acc
}

/// `dim S^q(V(n))`, zero for negative `q`.
pub fn sym_dim(n: usize, q: i64) -> BigInt {
    if q < 0 {
        return BigInt::zero();
    }
    binomial(n + q as usize - 1, q as usize)
}

fn shifted(alpha: &[u32], i: usize, by: u32) -> Vec<u32> {
    let mut b = alpha.to_vec();
    b[i] += by;
    b
}

fn add_entry(v: &mut SparseVec, k: usize, c: i64) {
    let e = v.entry(k).or_insert_with(Rational::zero);
    *e += Rational::from(c);
    if e.is_zero() {
        v.remove(&k);
    }
}

/// `d1^q : S^q ⊗ V -> S^{q+1}`.
pub fn d1_matrix(n: usize, q: usize) -> SparseMatrix {
    let src = SymBasis::new(n, q);
    let dst = SymBasis::new(n, q + 1);
    let mut cols = Vec::with_capacity(src.len() * n);
    for alpha in src.monomials() {
        for i in 0..n {
            let mut c = SparseVec::new();
            add_entry(&mut c, dst.index_of(&shifted(alpha, i, 1)).unwrap(), 1);
            cols.push(c);
        }
    }
    SparseMatrix::new(dst.len(), cols)
}

/// `d2^q : S^q ⊗ V -> S^{q+2} ⊗ V`.
pub fn d2_matrix(n: usize, q: usize) -> SparseMatrix {
    let src = SymBasis::new(n, q);
    let dst = SymBasis::new(n, q + 2);
    let mut cols = Vec::with_capacity(src.len() * n);
    for alpha in src.monomials() {
        for i in 0..n {
            let mut c = SparseVec::new();
            for j in 0..n {
                let sq = dst.index_of(&shifted(alpha, j, 2)).unwrap();
                add_entry(&mut c, sq * n + i, 1);
                let mixed = dst.index_of(&shifted(&shifted(alpha, i, 1), j, 1)).unwrap();
                add_entry(&mut c, mixed * n + j, -1);
            }
            cols.push(c);
        }
    }
    SparseMatrix::new(dst.len() * n, cols)
}

/// `d3^q : S^q -> S^{q+1} ⊗ V`.
pub fn d3_matrix(n: usize, q: usize) -> SparseMatrix {
    let src = SymBasis::new(n, q);
    let dst = SymBasis::new(n, q + 1);
    let cols = src
        .monomials()
        .iter()
        .map(|alpha| {
            let mut c = SparseVec::new();
            for i in 0..n {
                add_entry(&mut c, dst.index_of(&shifted(alpha, i, 1)).unwrap() * n + i, 1);
            }
            c
        })
        .collect();
    SparseMatrix::new(dst.len() * n, cols)
}

fn empty_map(rows: usize) -> SparseMatrix {
    SparseMatrix::new(rows, Vec::new())
}

/// The part of the complex in internal degree `p + 3`:
/// `S^{p-1} -> S^p ⊗ V -> S^{p+2} ⊗ V -> S^{p+3}`.
#[derive(Clone, Debug)]
pub struct KoszulSlice {
    pub n: usize,
    pub p: usize,
    pub d3: SparseMatrix,
    pub d2: SparseMatrix,
    pub d1: SparseMatrix,
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("need n >= 2 generators, got {n}")));
    }
    Ok(())
}

pub fn build_slice(n: usize, p: usize) -> Result<KoszulSlice> {
    check_n(n)?;
    let d3 = if p == 0 {
        empty_map(SymBasis::new(n, 0).len() * n)
    } else {
        d3_matrix(n, p - 1)
    };
    Ok(KoszulSlice {
        n,
        p,
        d3,
        d2: d2_matrix(n, p),
        d1: d1_matrix(n, p + 2),
    })
}

impl KoszulSlice {
    /// `d1 ∘ d2 = 0` and `d2 ∘ d3 = 0`, by exact products.
    pub fn is_complex(&self) -> bool {
        self.d1.compose(&self.d2).is_zero() && self.d2.compose(&self.d3).is_zero()
    }
}

/// `H_0^p`, `H_1^p`, `H_2^p`, `H_3^p`: `p` is the symmetric degree of the
/// first factor of the space where each homology is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomologyDims {
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
    pub h3: usize,
}

impl HomologyDims {
    pub fn as_array(&self) -> [usize; 4] {
        [self.h0, self.h1, self.h2, self.h3]
    }
}

fn rank_d1(n: usize, q: i64) -> usize {
    if q < 0 {
        0
    } else {
        d1_matrix(n, q as usize).rank()
    }
}

fn rank_d2(n: usize, q: i64) -> usize {
    if q < 0 {
        0
    } else {
        d2_matrix(n, q as usize).rank()
    }
}

fn rank_d3(n: usize, q: i64) -> usize {
    if q < 0 {
        0
    } else {
        d3_matrix(n, q as usize).rank()
    }
}

fn small(v: &BigInt) -> usize {
    usize::try_from(v).expect("dimension fits in usize")
}

/// Exact homology dimensions:
/// `h0 = dim S^p - rk d1^{p-1}`, `h1 = dim Ker d1^p - rk d2^{p-2}`,
/// `h2 = dim Ker d2^p - rk d3^{p-1}`, `h3 = dim Ker d3^p`.
pub fn homology_dims(n: usize, p: usize) -> Result<HomologyDims> {
    check_n(n)?;
    let p = p as i64;
    let s = |q: i64| small(&sym_dim(n, q));
    let h0 = s(p) - rank_d1(n, p - 1);
    let h1 = s(p) * n - rank_d1(n, p) - rank_d2(n, p - 2);
    let h2 = s(p) * n - rank_d2(n, p) - rank_d3(n, p - 1);
    let h3 = s(p) - rank_d3(n, p);
    Ok(HomologyDims { h0, h1, h2, h3 })
}

/// Closed formula for `dim H_1^p`:
/// `p <= 1`: `n (n+p-1)!/(n-1)! - (n+p)!/((n-1)!(p+1)!)`;
/// `p = 2`: `n C(n+1,2) - C(n+2,3) - n`;
/// `p >= 3`: `n C(n+p-1,p) - C(n+p,p+1) - n C(n+p-3,p-2) + C(n+p-4,p-3)`.
pub fn h1_closed_formula(n: usize, p: usize) -> BigInt {
    let nb = BigInt::from(n);
    match p {
        0 | 1 => {
            // (n+p-1)!/(n-1)! is a product of p factors; (n+p)!/((n-1)!(p+1)!) = C(n+p, p+1)
            let falling: BigInt = (n..n + p).map(BigInt::from).product();
            &nb * falling - binomial(n + p, p + 1)
        }
        2 => &nb * binomial(n + 1, 2) - binomial(n + 2, 3) - &nb,
        _ => {
            &nb * binomial(n + p - 1, p) - binomial(n + p, p + 1) - &nb * binomial(n + p - 3, p - 2)
                + binomial(n + p - 4, p - 3)
        }
    }
}

/// `dim W(n)_m = dim H_1^{m-1}` for `m = 2..=max`, checked against the
/// series `1 - (1 - nt + nt^3 - t^4)(1-t)^{-n}`.
pub fn w_dims(n: usize, max: usize) -> Result<Vec<usize>> {
    check_n(n)?;
    let w = series::w_series(n, max)?;
    let mut out = Vec::new();
    for m in 2..=max {
        let h1 = homology_dims(n, m - 1)?.h1;
        if BigInt::from(h1) != *w.coeff(m) {
            return Err(Error::Consistency(format!(
                "W({n})_{m}: homology gives {h1}, series gives {}",
                w.coeff(m)
            )));
        }
        out.push(h1);
    }
    Ok(out)
}
