//! Orbit-method data for the nilpotent quotients: radicals of linear
//! forms, flags of ideals, standard polarizations and their weights.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactalg::{dense_to_sparse, in_span, kernel_basis, row_basis, solve, RatMatrix, Rational, SparseVec};
use crate::ymquotient::{named_basis_labels, parse_named_label, GradedNilpotentLie, LieElementQ};

/// A linear form on `g`, stored by its values on the canonical basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional {
    values: Vec<Rational>,
}

impl Functional {
    pub fn zero(g: &GradedNilpotentLie) -> Self {
        Functional {
            values: vec![Rational::zero(); g.dim()],
        }
    }

    /// From values on the canonical basis.
    pub fn from_values(g: &GradedNilpotentLie, values: Vec<Rational>) -> Result<Self> {
        if values.len() != g.dim() {
            return Err(Error::InvalidInput(format!(
                "functional has {} values, algebra has dimension {}",
                values.len(),
                g.dim()
            )));
        }
        Ok(Functional { values })
    }

    /// From labelled coordinates. Digit-string labels (`"112"`) refer to the
    /// dual of the canonical Lyndon basis. Labels starting with `x`
    /// (`"x312"`) refer to the dual of the named right-nested basis, which
    /// exists for `n = 3`, `l <= 4`; unlisted basis elements get value 0.
    pub fn from_labels(g: &GradedNilpotentLie, coords: &BTreeMap<String, Rational>) -> Result<Self> {
        let named = coords.keys().filter(|k| k.starts_with('x')).count();
        if named > 0 && named < coords.len() {
            return Err(Error::InvalidInput("functional mixes x-labels and canonical labels".into()));
        }
        if named == 0 {
            let mut values = vec![Rational::zero(); g.dim()];
            for (label, c) in coords {
                let idx = g
                    .index_of_label(label)
                    .ok_or_else(|| Error::InvalidInput(format!("unknown basis label {label:?}")))?;
                values[idx] = c.clone();
            }
            return Ok(Functional { values });
        }
        let labels = named_basis_labels(g.n(), g.l()).map_err(|e| match e {
            Error::Unsupported(m) => Error::InvalidInput(format!("x-labels unavailable: {m}")),
            other => other,
        })?;
        let mut target = vec![Rational::zero(); labels.len()];
        for (label, c) in coords {
            let k = labels
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| Error::InvalidInput(format!("{label:?} is not in the named basis for l = {}", g.l())))?;
            target[k] = c.clone();
        }
        // values . P = target, columns of P the named basis in coordinates
        let cols: Vec<Vec<Rational>> = g
            .named_basis_coords()?
            .iter()
            .map(|v| crate::exactalg::sparse_to_dense(v, g.dim()))
            .collect();
        let pt = RatMatrix::from_rows(g.dim(), cols);
        let values = solve(&pt, &target)
            .ok_or_else(|| Error::Consistency("named basis is not a basis".into()))?;
        Ok(Functional { values })
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn eval(&self, v: &LieElementQ) -> Rational {
        v.iter().map(|(&k, c)| c * &self.values[k]).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Rational::is_zero)
    }

    /// Nonzero values keyed by canonical label.
    pub fn labelled(&self, g: &GradedNilpotentLie) -> Vec<(String, Rational)> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (g.label(k), c.clone()))
            .collect()
    }

    /// `f ∘ A` for a linear map `A` given by its matrix on the basis.
    pub fn compose(&self, a: &RatMatrix) -> Functional {
        let values = (0..a.cols())
            .map(|b| {
                (0..a.rows())
                    .filter(|&k| !a.get(k, b).is_zero() && !self.values[k].is_zero())
                    .map(|k| &self.values[k] * a.get(k, b))
                    .sum()
            })
            .collect();
        Functional { values }
    }
}

/// A subspace of `g` held by a reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        Subspace {
            ambient,
            basis: row_basis(ambient, vectors),
        }
    }

    pub fn span_sparse(ambient: usize, vectors: &[SparseVec]) -> Self {
        let dense: Vec<Vec<Rational>> = vectors
            .iter()
            .map(|v| crate::exactalg::sparse_to_dense(v, ambient))
            .collect();
        Self::span(ambient, &dense)
    }

    pub fn whole(ambient: usize) -> Self {
        Self::span(ambient, &RatMatrix::identity(ambient).row_vecs())
    }

    /// Span of basis elements given by label: canonical digit strings or
    /// right-nested `x` labels.
    pub fn span_of_labels(g: &GradedNilpotentLie, labels: &[&str]) -> Result<Self> {
        let vectors = labels
            .iter()
            .map(|l| {
                if l.starts_with('x') {
                    g.reduce(&parse_named_label(l, g.n())?)
                } else {
                    g.index_of_label(l)
                        .map(|i| g.basis_vector(i))
                        .ok_or_else(|| Error::InvalidInput(format!("unknown basis label {l:?}")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::span_sparse(g.dim(), &vectors))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn sparse_basis(&self) -> Vec<SparseVec> {
        self.basis.iter().map(|v| dense_to_sparse(v)).collect()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        in_span(v, &self.basis)
    }

    pub fn contains_sparse(&self, v: &SparseVec) -> bool {
        self.contains(&crate::exactalg::sparse_to_dense(v, self.ambient))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &all)
    }
}

/// Matrix of the form `B_f(e_a, e_b) = f([e_a, e_b])`.
pub fn form_matrix(g: &GradedNilpotentLie, f: &Functional) -> RatMatrix {
    let d = g.dim();
    let mut m = RatMatrix::zeros(d, d);
    for a in 0..d {
        for b in 0..d {
            if let Some(v) = g.structure(a, b) {
                let x = f.eval(v);
                if !x.is_zero() {
                    m.set(a, b, x);
                }
            }
        }
    }
    m
}

/// `g^f = {x : f([x, g]) = 0}`.
pub fn radical(g: &GradedNilpotentLie, f: &Functional) -> Result<Subspace> {
    let m = form_matrix(g, f);
    let k = kernel_basis(&m);
    if !(g.dim() - k.len()).is_multiple_of(2) {
        return Err(Error::Consistency("alternating form of odd rank".into()));
    }
    Ok(Subspace::span(g.dim(), &k))
}

/// Basis order used for the flag: decreasing degree, and decreasing
/// canonical order within a degree.
pub fn flag_order(g: &GradedNilpotentLie) -> Vec<usize> {
    (1..=g.l()).rev().flat_map(|j| g.degree_range(j).rev()).collect()
}

/// Complete flag `0 = g_0 ⊂ g_1 ⊂ ... ⊂ g_d = g` of ideals, each checked
/// for ideality.
pub fn ideal_flag(g: &GradedNilpotentLie) -> Result<Vec<Subspace>> {
    let order = flag_order(g);
    let d = g.dim();
    let mut rank_in_flag = vec![0; d];
    for (k, &idx) in order.iter().enumerate() {
        rank_in_flag[idx] = k;
    }
    let mut out = Vec::with_capacity(d + 1);
    for k in 0..=d {
        // [e_a, e_b] for e_b in g_k must stay inside the first k flag vectors
        for &b in &order[..k] {
            for a in 0..d {
                if let Some(v) = g.structure(a, b) {
                    if v.keys().any(|&t| rank_in_flag[t] >= k) {
                        return Err(Error::Consistency(format!(
                            "flag member {k} is not an ideal: [{}, {}]",
                            g.label(a),
                            g.label(b)
                        )));
                    }
                }
            }
        }
        let vectors: Vec<SparseVec> = order[..k].iter().map(|&i| g.basis_vector(i)).collect();
        out.push(Subspace::span_sparse(d, &vectors));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct PolarizationReport {
    pub f: Functional,
    pub radical_dim: usize,
    pub polarization: Subspace,
    pub weight: usize,
}

/// Vergne's standard polarization `h = sum_k (g_k)^{f_k}` for the flag of
/// [`ideal_flag`], where `f_k` is `f` restricted to `g_k`.
pub fn standard_polarization(g: &GradedNilpotentLie, f: &Functional) -> Result<PolarizationReport> {
    let order = flag_order(g);
    let d = g.dim();
    let m = form_matrix(g, f);
    let mut pieces: Vec<Vec<Rational>> = Vec::new();
    for k in 1..=d {
        let idx = &order[..k];
        let mut sub = RatMatrix::zeros(k, k);
        for (r, &a) in idx.iter().enumerate() {
            for (c, &b) in idx.iter().enumerate() {
                let v = m.get(a, b);
                if !v.is_zero() {
                    sub.set(r, c, v.clone());
                }
            }
        }
        for kv in kernel_basis(&sub) {
            let mut full = vec![Rational::zero(); d];
            for (r, &a) in idx.iter().enumerate() {
                full[a] = kv[r].clone();
            }
            pieces.push(full);
        }
    }
    let h = Subspace::span(d, &pieces);
    let rad = radical(g, f)?;
    if !is_polarization(g, f, &h)? {
        return Err(Error::Consistency(format!(
            "standard construction gave a {}-dimensional subspace that is not a polarization",
            h.dim()
        )));
    }
    Ok(PolarizationReport {
        f: f.clone(),
        radical_dim: rad.dim(),
        weight: d - h.dim(),
        polarization: h,
    })
}

/// Closed under the bracket, `f([h, h]) = 0`, and of dimension
/// `(dim g + dim g^f) / 2`.
pub fn is_polarization(g: &GradedNilpotentLie, f: &Functional, h: &Subspace) -> Result<bool> {
    let rad = radical(g, f)?;
    if 2 * h.dim() != g.dim() + rad.dim() {
        return Ok(false);
    }
    let basis = h.sparse_basis();
    for (i, x) in basis.iter().enumerate() {
        for y in &basis[i + 1..] {
            let br = g.bracket(x, y);
            if !f.eval(&br).is_zero() || !h.contains_sparse(&br) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `{x in g : f([x, I]) = 0}` for a subspace `I`.
pub fn stabilizer_condition(g: &GradedNilpotentLie, ideal: &Subspace, f: &Functional) -> Subspace {
    let d = g.dim();
    let rows: Vec<Vec<Rational>> = ideal
        .sparse_basis()
        .iter()
        .map(|v| (0..d).map(|a| f.eval(&g.bracket(&g.basis_vector(a), v))).collect())
        .collect();
    if rows.is_empty() {
        return Subspace::whole(d);
    }
    let m = RatMatrix::from_rows(d, rows);
    Subspace::span(d, &kernel_basis(&m))
}

/// Matrix of `ad x`, column `b` holding `[x, e_b]`.
pub fn ad_matrix(g: &GradedNilpotentLie, x: &LieElementQ) -> RatMatrix {
    let d = g.dim();
    let mut m = RatMatrix::zeros(d, d);
    for b in 0..d {
        for (k, c) in g.bracket(x, &g.basis_vector(b)) {
            m.set(k, b, c);
        }
    }
    m
}

/// `exp(N)` for a nilpotent matrix, as a finite sum.
pub fn exp_nilpotent(nm: &RatMatrix) -> Result<RatMatrix> {
    let d = nm.rows();
    let mut total = RatMatrix::identity(d);
    let mut power = RatMatrix::identity(d);
    let mut fact = Rational::one();
    for k in 1..=d + 1 {
        power = power.mul(nm);
        if power.is_zero() {
            return Ok(total);
        }
        fact *= &Rational::from(k);
        let inv = fact.recip();
        for i in 0..d {
            for j in 0..d {
                let v = power.get(i, j);
                if !v.is_zero() {
                    let cur = total.get(i, j) + &(v * &inv);
                    total.set(i, j, cur);
                }
            }
        }
    }
    Err(Error::Consistency("matrix is not nilpotent".into()))
}

/// `Ad*(exp x) f = f ∘ exp(-ad x)`.
pub fn coadjoint_action(g: &GradedNilpotentLie, f: &Functional, x: &LieElementQ) -> Result<Functional> {
    let neg: LieElementQ = x.iter().map(|(&k, c)| (k, -c)).collect();
    Ok(f.compose(&exp_nilpotent(&ad_matrix(g, &neg))?))
}
