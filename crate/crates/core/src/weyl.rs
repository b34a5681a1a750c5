//! Weyl algebras `A_r` and maps `U(g) -> A_r` obtained from induced
//! representations.
//!
//! Convention: `[p_i, q_j] = delta_ij`, so `p_i` acts on `k[q_1..q_r]` as
//! `d/dq_i`. Elements are kept in normal order `q^alpha p^beta`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactalg::{add_scaled, inverse, RatMatrix, Rational, SparseVec};
use crate::freelie::BracketTree;
use crate::koszul::SymBasis;
use crate::orbit::{is_polarization, standard_polarization, Functional, Subspace};
use crate::ymquotient::{build, monomial_string, pbw_monomials, GradedNilpotentLie};

/// Exponent vector.
pub type Multi = Vec<u32>;

/// Polynomial in `q_1..q_r`.
pub type Poly = BTreeMap<Multi, Rational>;

fn falling(c: u32, k: u32) -> BigInt {
    (0..k).map(|t| BigInt::from(c - t)).product()
}

fn binom(b: u32, k: u32) -> BigInt {
    falling(b, k) / falling(k, k)
}

fn accumulate<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&key) {
        Some(e) => {
            *e += c;
            if e.is_zero() {
                map.remove(&key);
            }
        }
        None => {
            map.insert(key, c);
        }
    }
}

/// Normal-ordered element `sum c q^alpha p^beta` of `A_r`.
#[derive(Clone, PartialEq, Eq)]
pub struct WeylElement {
    r: usize,
    terms: BTreeMap<(Multi, Multi), Rational>,
}

impl WeylElement {
    pub fn zero(r: usize) -> Self {
        WeylElement {
            r,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(r: usize, c: Rational) -> Self {
        let mut e = Self::zero(r);
        accumulate(&mut e.terms, (vec![0; r], vec![0; r]), c);
        e
    }

    pub fn one(r: usize) -> Self {
        Self::scalar(r, Rational::one())
    }

    /// The variable `q_{i+1}`.
    pub fn q(r: usize, i: usize) -> Self {
        let mut a = vec![0; r];
        a[i] = 1;
        Self::monomial(r, a, vec![0; r], Rational::one())
    }

    /// The variable `p_{i+1}`.
    pub fn p(r: usize, i: usize) -> Self {
        let mut b = vec![0; r];
        b[i] = 1;
        Self::monomial(r, vec![0; r], b, Rational::one())
    }

    pub fn monomial(r: usize, alpha: Multi, beta: Multi, c: Rational) -> Self {
        assert!(alpha.len() == r && beta.len() == r, "exponent length must be r");
        let mut e = Self::zero(r);
        accumulate(&mut e.terms, (alpha, beta), c);
        e
    }

    pub fn from_terms(r: usize, terms: impl IntoIterator<Item = ((Multi, Multi), Rational)>) -> Self {
        let mut e = Self::zero(r);
        for ((a, b), c) in terms {
            assert!(a.len() == r && b.len() == r, "exponent length must be r");
            accumulate(&mut e.terms, (a, b), c);
        }
        e
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn terms(&self) -> &BTreeMap<(Multi, Multi), Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &WeylElement) -> WeylElement {
        assert_eq!(self.r, other.r, "Weyl algebras of different rank");
        let mut out = self.clone();
        add_scaled(&mut out.terms, &Rational::one(), &other.terms);
        out
    }

    pub fn sub(&self, other: &WeylElement) -> WeylElement {
        assert_eq!(self.r, other.r, "Weyl algebras of different rank");
        let mut out = self.clone();
        add_scaled(&mut out.terms, &-Rational::one(), &other.terms);
        out
    }

    pub fn scale(&self, c: &Rational) -> WeylElement {
        WeylElement {
            r: self.r,
            terms: crate::exactalg::scale(&self.terms, c),
        }
    }

    /// Normal-ordered product, using
    /// `p^b q^c = sum_k C(b,k) c!/(c-k)! q^{c-k} p^{b-k}` in each variable.
    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        assert_eq!(self.r, other.r, "Weyl algebras of different rank");
        let r = self.r;
        let mut out = BTreeMap::new();
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &other.terms {
                let mut partial: Vec<(Multi, Multi, BigInt)> = vec![(a.clone(), d.clone(), BigInt::one())];
                for i in 0..r {
                    let kmax = b[i].min(c[i]);
                    let mut next = Vec::with_capacity(partial.len() * (kmax as usize + 1));
                    for (qe, pe, co) in &partial {
                        for k in 0..=kmax {
                            let w = binom(b[i], k) * falling(c[i], k);
                            let mut qe2 = qe.clone();
                            qe2[i] += c[i] - k;
                            let mut pe2 = pe.clone();
                            pe2[i] += b[i] - k;
                            next.push((qe2, pe2, co * w));
                        }
                    }
                    partial = next;
                }
                let xy = x * y;
                for (qe, pe, co) in partial {
                    accumulate(&mut out, (qe, pe), &xy * &Rational::from(co));
                }
            }
        }
        WeylElement { r, terms: out }
    }

    pub fn commutator(&self, other: &WeylElement) -> WeylElement {
        self.mul(other).sub(&other.mul(self))
    }

    /// Action on `k[q]`, with `p_i = d/dq_i`.
    pub fn act(&self, poly: &Poly) -> Poly {
        let mut out = Poly::new();
        for ((alpha, beta), c) in &self.terms {
            for (gamma, d) in poly {
                if beta.iter().zip(gamma).any(|(b, g)| b > g) {
                    continue;
                }
                let mut coef = BigInt::one();
                for (b, g) in beta.iter().zip(gamma) {
                    coef *= falling(*g, *b);
                }
                let target: Multi = (0..self.r).map(|i| alpha[i] + gamma[i] - beta[i]).collect();
                accumulate(&mut out, target, c * d * Rational::from(coef));
            }
        }
        out
    }

    /// Terms as `((alpha, beta), coefficient)` in normal order.
    pub fn term_list(&self) -> Vec<((Multi, Multi), Rational)> {
        self.terms.iter().map(|(k, c)| (k.clone(), c.clone())).collect()
    }
}

fn render_monomial(letter: char, e: &[u32], parts: &mut Vec<String>) {
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(format!("{letter}{}", i + 1)),
            _ => parts.push(format!("{letter}{}^{k}", i + 1)),
        }
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut rendered = Vec::new();
        for ((a, b), c) in &self.terms {
            let mut parts = Vec::new();
            render_monomial('q', a, &mut parts);
            render_monomial('p', b, &mut parts);
            let mono = parts.join("*");
            rendered.push(match (mono.is_empty(), c.is_one()) {
                (true, _) => c.to_string(),
                (false, true) => mono,
                (false, false) if *c == -Rational::one() => format!("-{mono}"),
                (false, false) => format!("{c}*{mono}"),
            });
        }
        write!(f, "{}", rendered.join(" + "))
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A_{}[{self}]", self.r)
    }
}

/// Module element: sorted complement-index lists with coefficients.
type ModElem = BTreeMap<Vec<usize>, Rational>;

const STEP_LIMIT: u64 = 50_000_000;

/// PBW straightening in `U(g) ⊗_{U(h)} k_f`, on an adapted basis whose
/// first `r` members are the complement `y_0..y_{r-1}` and the rest span
/// `h`. Monomials `y_{b_1} ... y_{b_k} ⊗ v` with `b_1 <= ... <= b_k`.
///
/// `act(k, b)` terminates: a `y` acting either prepends or recurses on a
/// shorter tail and then acts with a strictly smaller `y` on a monomial of
/// no greater length; bracket terms always act on the shorter tail.
struct Straightener {
    r: usize,
    brackets: Vec<Vec<SparseVec>>,
    fvals: Vec<Rational>,
    memo: HashMap<(usize, Vec<usize>), ModElem>,
    steps: u64,
}

impl Straightener {
    fn act(&mut self, k: usize, beta: &[usize]) -> Result<ModElem> {
        if let Some(v) = self.memo.get(&(k, beta.to_vec())) {
            return Ok(v.clone());
        }
        self.steps += 1;
        if self.steps > STEP_LIMIT {
            return Err(Error::Consistency("PBW straightening exceeded its step bound".into()));
        }
        let out = if k < self.r && beta.first().is_none_or(|&b0| k <= b0) {
            let mut m = Vec::with_capacity(beta.len() + 1);
            m.push(k);
            m.extend_from_slice(beta);
            ModElem::from([(m, Rational::one())])
        } else if beta.is_empty() {
            let mut m = ModElem::new();
            accumulate(&mut m, Vec::new(), self.fvals[k].clone());
            m
        } else {
            let b0 = beta[0];
            let rest = &beta[1..];
            let mut out = ModElem::new();
            for (gamma, c) in self.act(k, rest)? {
                let v = self.act(b0, &gamma)?;
                add_scaled(&mut out, &c, &v);
            }
            let br = self.brackets[k][b0].clone();
            for (m, c) in br {
                let v = self.act(m, rest)?;
                add_scaled(&mut out, &c, &v);
            }
            out
        };
        self.memo.insert((k, beta.to_vec()), out.clone());
        Ok(out)
    }
}

/// Basis data of the truncated induced module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedModuleBasis {
    /// Canonical basis indices of `y_1..y_r`.
    pub complement: Vec<usize>,
    pub truncation: usize,
    /// Exponent vectors `alpha` of `y^alpha ⊗ v`, `|alpha| <= truncation`,
    /// by degree then lexicographically decreasing.
    pub monomials: Vec<Multi>,
}

/// Action of every canonical basis element of `g` on the truncated module,
/// with `y^alpha ⊗ v` identified with `q^alpha`.
#[derive(Clone, Debug)]
pub struct InducedRep {
    pub basis: InducedModuleBasis,
    /// `actions[a][m]` is `e_a · monomials[m]`, exact (not truncated).
    pub actions: Vec<Vec<Poly>>,
    /// Bound on q-degree and p-order used by extraction.
    pub order_bound: usize,
}

fn module_monomials(r: usize, d: usize) -> Vec<Multi> {
    if r == 0 {
        return vec![Vec::new()];
    }
    (0..=d).flat_map(|t| SymBasis::new(r, t).monomials().to_vec()).collect()
}

fn to_sorted(alpha: &[u32]) -> Vec<usize> {
    alpha
        .iter()
        .enumerate()
        .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
        .collect()
}

fn to_multi(r: usize, sorted: &[usize]) -> Multi {
    let mut a = vec![0; r];
    for &i in sorted {
        a[i] += 1;
    }
    a
}

/// Complement of `h`: canonical basis elements taken greedily in basis
/// order (which is increasing degree).
pub fn complement_basis(g: &GradedNilpotentLie, h: &Subspace) -> Vec<usize> {
    let mut span = h.clone();
    let mut out = Vec::new();
    for idx in 0..g.dim() {
        let e = crate::exactalg::sparse_to_dense(&g.basis_vector(idx), g.dim());
        if !span.contains(&e) {
            span = span.sum(&Subspace::span(g.dim(), &[e]));
            out.push(idx);
        }
    }
    out
}

/// `U(g) ⊗_{U(h)} k_f` truncated at degree `d`. For nilpotent `g` the
/// trace twist vanishes; this is checked rather than assumed.
pub fn induced_rep(g: &GradedNilpotentLie, f: &Functional, h: &Subspace, d: usize) -> Result<InducedRep> {
    if !is_polarization(g, f, h)? {
        return Err(Error::InvalidInput("subspace is not a polarization of f".into()));
    }
    let dim = g.dim();
    let complement = complement_basis(g, h);
    let r = complement.len();
    let mut columns: Vec<Vec<Rational>> = complement
        .iter()
        .map(|&i| crate::exactalg::sparse_to_dense(&g.basis_vector(i), dim))
        .collect();
    columns.extend(h.basis().iter().cloned());
    let p = RatMatrix::from_columns(dim, &columns);
    let pinv = inverse(&p).ok_or_else(|| Error::Consistency("adapted basis is singular".into()))?;
    let adapted: Vec<SparseVec> = columns.iter().map(|c| crate::exactalg::dense_to_sparse(c)).collect();
    let to_adapted = |v: &SparseVec| -> SparseVec {
        crate::exactalg::dense_to_sparse(&pinv.mul_vec(&crate::exactalg::sparse_to_dense(v, dim)))
    };
    let brackets: Vec<Vec<SparseVec>> = (0..dim)
        .map(|a| (0..dim).map(|b| to_adapted(&g.bracket(&adapted[a], &adapted[b]))).collect())
        .collect();
    for (t, row) in brackets.iter().enumerate().skip(r) {
        let trace: Rational = (0..r).filter_map(|j| row[j].get(&j)).sum();
        if !trace.is_zero() {
            return Err(Error::Consistency(format!(
                "ad of polarization element {t} has nonzero trace on g/h"
            )));
        }
    }
    let fvals: Vec<Rational> = adapted.iter().map(|v| f.eval(v)).collect();
    let mut engine = Straightener {
        r,
        brackets,
        fvals,
        memo: HashMap::new(),
        steps: 0,
    };
    let monomials = module_monomials(r, d);
    let mut actions = Vec::with_capacity(dim);
    for a in 0..dim {
        let coords: Vec<(usize, Rational)> = (0..dim)
            .filter(|&k| !pinv.get(k, a).is_zero())
            .map(|k| (k, pinv.get(k, a).clone()))
            .collect();
        let mut row = Vec::with_capacity(monomials.len());
        for alpha in &monomials {
            let beta = to_sorted(alpha);
            let mut total = ModElem::new();
            for (k, c) in &coords {
                add_scaled(&mut total, c, &engine.act(*k, &beta)?);
            }
            row.push(total.into_iter().map(|(s, c)| (to_multi(r, &s), c)).collect());
        }
        actions.push(row);
    }
    Ok(InducedRep {
        basis: InducedModuleBasis {
            complement,
            truncation: d,
            monomials,
        },
        actions,
        order_bound: g.class(),
    })
}

/// Recovers, for each basis element, the Weyl operator with q-degree and
/// p-order at most `order_bound` that reproduces its action. Monomials of
/// degree above the bound serve as held-out checks.
pub fn extract_weyl(rep: &InducedRep) -> Result<Vec<WeylElement>> {
    let r = rep.basis.complement.len();
    let bound = rep.order_bound;
    let top = rep.basis.monomials.iter().map(|m| m.iter().sum::<u32>() as usize).max().unwrap_or(0);
    if r > 0 && top <= bound {
        return Err(Error::Extraction(format!(
            "truncation {} leaves no held-out monomials above order bound {bound}",
            rep.basis.truncation
        )));
    }
    rep.actions
        .iter()
        .enumerate()
        .map(|(a, acts)| extract_one(r, bound, &rep.basis.monomials, acts, a))
        .collect()
}

fn extract_one(r: usize, bound: usize, monomials: &[Multi], acts: &[Poly], which: usize) -> Result<WeylElement> {
    let mut w = WeylElement::zero(r);
    for (gamma, action) in monomials.iter().zip(acts) {
        let mut residual = action.clone();
        add_scaled(&mut residual, &-Rational::one(), &w.act(&Poly::from([(gamma.clone(), Rational::one())])));
        let deg = gamma.iter().sum::<u32>() as usize;
        if deg <= bound {
            let fact: BigInt = gamma.iter().map(|&g| falling(g, g)).product();
            let inv = Rational::from(fact).recip();
            for (alpha, c) in residual {
                if alpha.iter().sum::<u32>() as usize > bound {
                    return Err(Error::Extraction(format!(
                        "basis element {which}: q-degree of {alpha:?} exceeds bound {bound}"
                    )));
                }
                accumulate(&mut w.terms, (alpha, gamma.clone()), c * &inv);
            }
        } else if !residual.is_empty() {
            return Err(Error::Extraction(format!(
                "basis element {which}: interpolation inconsistent on held-out monomial {gamma:?}"
            )));
        }
    }
    Ok(w)
}

/// Linear combination of words in the images; word entries index the
/// image list.
pub type Expression = BTreeMap<Vec<usize>, Rational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// `q1`, `p2`, ...
    pub target: String,
    pub expression: Expression,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurjectivityReport {
    pub surjective: bool,
    pub max_length: usize,
    /// Smallest word length at which every generator was reached.
    pub length_reached: Option<usize>,
    pub witnesses: Vec<Witness>,
}

struct TrackedEchelon {
    keys: HashMap<(Multi, Multi), usize>,
    rows: BTreeMap<usize, (SparseVec, Expression)>,
}

impl TrackedEchelon {
    fn new() -> Self {
        TrackedEchelon {
            keys: HashMap::new(),
            rows: BTreeMap::new(),
        }
    }

    fn coords(&mut self, w: &WeylElement) -> SparseVec {
        let mut v = SparseVec::new();
        for (k, c) in w.terms() {
            let next = self.keys.len();
            let idx = *self.keys.entry(k.clone()).or_insert(next);
            v.insert(idx, c.clone());
        }
        v
    }

    fn reduce(&self, v: &SparseVec) -> (SparseVec, Expression) {
        let mut res = v.clone();
        let mut used = Expression::new();
        let hits: Vec<(usize, Rational)> = v
            .iter()
            .filter(|(k, _)| self.rows.contains_key(k))
            .map(|(k, c)| (*k, c.clone()))
            .collect();
        for (k, c) in hits {
            let (row, expr) = &self.rows[&k];
            add_scaled(&mut res, &-c.clone(), row);
            add_scaled(&mut used, &c, expr);
        }
        (res, used)
    }

    fn insert(&mut self, w: &WeylElement, expr: Expression) -> bool {
        let v = self.coords(w);
        let (mut res, used) = self.reduce(&v);
        let Some((&k, lead)) = res.first_key_value() else {
            return false;
        };
        let inv = lead.recip();
        let mut e = expr;
        add_scaled(&mut e, &-Rational::one(), &used);
        for x in res.values_mut() {
            *x *= &inv;
        }
        let e = crate::exactalg::scale(&e, &inv);
        for (row, rexpr) in self.rows.values_mut() {
            if let Some(c) = row.get(&k).cloned() {
                add_scaled(row, &-c.clone(), &res);
                add_scaled(rexpr, &-c, &e);
            }
        }
        self.rows.insert(k, (res, e));
        true
    }

    fn express(&mut self, w: &WeylElement) -> Option<Expression> {
        let v = self.coords(w);
        let (res, used) = self.reduce(&v);
        res.is_empty().then_some(used)
    }
}

fn concat(a: &Expression, b: &Expression) -> Expression {
    let mut out = Expression::new();
    for (u, c) in a {
        for (v, d) in b {
            let mut w = u.clone();
            w.extend_from_slice(v);
            accumulate(&mut out, w, c * d);
        }
    }
    out
}

/// Whether every `q_i` and `p_i` lies in the span of products of at most
/// `max_length` images. A negative answer only means nothing was found up
/// to that length.
pub fn surjectivity_check(r: usize, images: &[WeylElement], max_length: usize) -> SurjectivityReport {
    let targets: Vec<(String, WeylElement)> = (0..r)
        .flat_map(|i| [(format!("q{}", i + 1), WeylElement::q(r, i)), (format!("p{}", i + 1), WeylElement::p(r, i))])
        .collect();
    let mut span = TrackedEchelon::new();
    span.insert(&WeylElement::one(r), Expression::from([(Vec::new(), Rational::one())]));
    let mut gens: Vec<(WeylElement, Expression)> = Vec::new();
    let mut frontier: Vec<(WeylElement, Expression)> = Vec::new();
    let mut length_reached = None;
    let mut witnesses = Vec::new();
    for len in 1..=max_length {
        let mut added = Vec::new();
        if len == 1 {
            for (a, img) in images.iter().enumerate() {
                let e = Expression::from([(vec![a], Rational::one())]);
                if span.insert(img, e.clone()) {
                    gens.push((img.clone(), e.clone()));
                    added.push((img.clone(), e));
                }
            }
        } else {
            for (x, ex) in &gens {
                for (s, es) in &frontier {
                    let prod = x.mul(s);
                    let e = concat(ex, es);
                    if span.insert(&prod, e.clone()) {
                        added.push((prod, e));
                    }
                }
            }
        }
        frontier = added;
        let found: Option<Vec<Witness>> = targets
            .iter()
            .map(|(name, t)| {
                span.express(t).map(|expression| Witness {
                    target: name.clone(),
                    expression,
                })
            })
            .collect();
        if let Some(w) = found {
            length_reached = Some(len);
            witnesses = w;
            break;
        }
        if frontier.is_empty() {
            break;
        }
    }
    SurjectivityReport {
        surjective: length_reached.is_some(),
        max_length,
        length_reached,
        witnesses,
    }
}

#[derive(Clone, Debug)]
pub struct WeylMapOptions {
    /// Interpolation truncation; `None` means nilpotency class + 2.
    pub truncation: Option<usize>,
    /// Word length for the surjectivity search; 0 skips it.
    pub surjectivity_depth: usize,
}

impl Default for WeylMapOptions {
    fn default() -> Self {
        WeylMapOptions {
            truncation: None,
            surjectivity_depth: 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct WeylMapReport {
    pub n: usize,
    pub l: usize,
    pub weight: usize,
    pub labels: Vec<String>,
    /// Image of every canonical basis element.
    pub basis_images: Vec<WeylElement>,
    /// `[X_a, X_b]` equals the image of `[e_a, e_b]` for all pairs.
    pub hom_check: bool,
    /// `sum_i [X_i,[X_i,X_j]] = 0` for all `j`.
    pub relator_check: bool,
    pub surjectivity: Option<SurjectivityReport>,
    pub complement: Vec<usize>,
}

impl WeylMapReport {
    /// Images `X_1..X_n` of the generators.
    pub fn generator_images(&self) -> &[WeylElement] {
        &self.basis_images[..self.n]
    }
}

/// Standard polarization, induced module, extraction and checks.
pub fn ym_weyl_map(g: &GradedNilpotentLie, f: &Functional, opts: &WeylMapOptions) -> Result<WeylMapReport> {
    let pol = standard_polarization(g, f)?;
    let d = opts.truncation.unwrap_or(g.class() + 2);
    let rep = induced_rep(g, f, &pol.polarization, d)?;
    let images = extract_weyl(&rep)?;
    let r = pol.weight;
    if rep.basis.complement.len() != r {
        return Err(Error::Consistency("complement size differs from the weight".into()));
    }
    let dim = g.dim();
    let mut hom_check = true;
    'outer: for a in 0..dim {
        for b in 0..dim {
            let lhs = images[a].commutator(&images[b]);
            let mut rhs = WeylElement::zero(r);
            if let Some(v) = g.structure(a, b) {
                for (&k, c) in v {
                    rhs = rhs.add(&images[k].scale(c));
                }
            }
            if lhs != rhs {
                hom_check = false;
                break 'outer;
            }
        }
    }
    let relator_check = relator_images(&images[..g.n()]).iter().all(WeylElement::is_zero);
    let surjectivity = (opts.surjectivity_depth > 0).then(|| surjectivity_check(r, &images, opts.surjectivity_depth));
    Ok(WeylMapReport {
        n: g.n(),
        l: g.l(),
        weight: r,
        labels: g.labels(),
        basis_images: images,
        hom_check,
        relator_check,
        surjectivity,
        complement: rep.basis.complement,
    })
}

/// `sum_i [X_i,[X_i,X_j]]` for each `j`.
pub fn relator_images(gens: &[WeylElement]) -> Vec<WeylElement> {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let r = first.r();
    gens.iter()
        .map(|xj| {
            gens.iter()
                .fold(WeylElement::zero(r), |acc, xi| acc.add(&xi.commutator(&xi.commutator(xj))))
        })
        .collect()
}

/// Image of a bracket expression under `x_i -> gens[i-1]`.
pub fn evaluate_tree(tree: &BracketTree, gens: &[WeylElement]) -> WeylElement {
    match tree {
        BracketTree::Gen(i) => gens[*i as usize - 1].clone(),
        BracketTree::Bracket(a, b) => evaluate_tree(a, gens).commutator(&evaluate_tree(b, gens)),
    }
}

/// Generators acting on polynomials of degree at most `truncation`.
#[derive(Clone, Debug)]
pub struct PolynomialModule {
    pub r: usize,
    pub truncation: usize,
    pub monomials: Vec<Multi>,
    pub generators: Vec<WeylElement>,
    /// Matrix of each generator, projected back to degree `<= truncation`.
    pub matrices: Vec<RatMatrix>,
}

impl PolynomialModule {
    /// Exact action of generator `i` (1-based), without truncation.
    pub fn act(&self, i: usize, poly: &Poly) -> Poly {
        self.generators[i - 1].act(poly)
    }
}

/// Pulls back `k[q_1..q_r]` along the map.
pub fn pullback_module(report: &WeylMapReport, d: usize) -> Result<PolynomialModule> {
    if !report.relator_check {
        return Err(Error::InvalidInput("map does not kill the relators".into()));
    }
    let r = report.weight;
    let monomials = module_monomials(r, d);
    let position: HashMap<&Multi, usize> = monomials.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let generators = report.generator_images().to_vec();
    let matrices = generators
        .iter()
        .map(|x| {
            let mut m = RatMatrix::zeros(monomials.len(), monomials.len());
            for (j, mono) in monomials.iter().enumerate() {
                for (out, c) in x.act(&Poly::from([(mono.clone(), Rational::one())])) {
                    if let Some(&i) = position.get(&out) {
                        m.set(i, j, c);
                    }
                }
            }
            m
        })
        .collect();
    Ok(PolynomialModule {
        r,
        truncation: d,
        monomials,
        generators,
        matrices,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationEntry {
    pub monomial: String,
    pub degree: usize,
    /// Indices of the candidate maps under which the image is nonzero.
    pub separated_by: Vec<usize>,
    pub by_character: bool,
}

impl SeparationEntry {
    pub fn separated(&self) -> bool {
        self.by_character || !self.separated_by.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationReport {
    pub candidate_weights: Vec<usize>,
    pub entries: Vec<SeparationEntry>,
    pub all_separated: bool,
}

/// For each PBW monomial of `U(ym(n))` of degree at most `d`, which of the
/// candidate maps `(l, f)` send it to a nonzero element of `A_r`.
/// Characters are used for the degree-one monomials.
pub fn separation_probe(
    n: usize,
    d: usize,
    candidates: &[(usize, BTreeMap<String, Rational>)],
) -> Result<SeparationReport> {
    let g = build(n, d.max(1))?;
    let table = pbw_monomials(&g, d)?;
    let opts = WeylMapOptions {
        truncation: None,
        surjectivity_depth: 0,
    };
    let mut candidate_weights = Vec::new();
    // images of the canonical basis of ym(n)/C^d under each candidate
    let mut basis_images: Vec<Vec<WeylElement>> = Vec::new();
    for (l, coords) in candidates {
        let gl = build(n, *l)?;
        let f = Functional::from_labels(&gl, coords)?;
        let report = ym_weyl_map(&gl, &f, &opts)?;
        candidate_weights.push(report.weight);
        let gens = report.generator_images();
        basis_images.push((0..g.dim()).map(|i| evaluate_tree(&g.tree(i), gens)).collect());
    }
    let mut entries = Vec::with_capacity(table.monomials.len());
    for (k, m) in table.monomials.iter().enumerate() {
        let degree = (0..=d).find(|&j| table.degree_range(j).contains(&k)).unwrap_or(0);
        let mut separated_by = Vec::new();
        for (c, imgs) in basis_images.iter().enumerate() {
            let r = candidate_weights[c];
            let prod = m.iter().fold(WeylElement::one(r), |acc, &i| acc.mul(&imgs[i]));
            if !prod.is_zero() {
                separated_by.push(c);
            }
        }
        let by_character = degree == 1;
        entries.push(SeparationEntry {
            monomial: monomial_string(&g, m),
            degree,
            separated_by,
            by_character,
        });
    }
    let all_separated = entries.iter().all(SeparationEntry::separated);
    Ok(SeparationReport {
        candidate_weights,
        entries,
        all_separated,
    })
}
