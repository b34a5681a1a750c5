//! Nilpotent quotients `ym(n)/C^l(ym(n))` with exact structure constants.
//!
//! Degree by degree, the ideal generated by the Yang-Mills relators is
//! spanned inside the Lyndon basis of `f(n)`. Columns are ordered by
//! decreasing Lyndon word, so RREF pivots fall on the largest words and the
//! surviving (non-pivot) words, the lowest ones, label the quotient basis.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::exactalg::{add_scaled, q, Rational, SparseEchelon, SparseVec};
use crate::freelie::{
    expand_tree, parse_word, standard_bracketing, word_string, BracketTree, FreeLieAlgebra, FreeLieElement,
    LyndonWord,
};
use crate::series;

/// Coordinates over the basis of a [`GradedNilpotentLie`].
pub type LieElementQ = SparseVec;

struct DegreeReducer {
    /// Lyndon words of this degree in decreasing order; column `c` is `columns[c]`.
    columns: Vec<LyndonWord>,
    column_of: HashMap<LyndonWord, usize>,
    /// Row space of the ideal component.
    ideal: SparseEchelon,
    /// Non-pivot column -> global basis index.
    basis_index: HashMap<usize, usize>,
}

/// `ym(n)/C^l(ym(n))`: degrees `1..=l`, basis in degree order then Lyndon
/// order, brackets stored for every ordered pair of basis elements.
pub struct GradedNilpotentLie {
    n: usize,
    l: usize,
    free: FreeLieAlgebra,
    basis: Vec<LyndonWord>,
    offsets: Vec<usize>,
    index: HashMap<LyndonWord, usize>,
    reducers: Vec<DegreeReducer>,
    structure: HashMap<(usize, usize), SparseVec>,
    relators: Vec<FreeLieElement>,
}

/// Builds `ym(n)/C^l(ym(n))` and verifies antisymmetry, Jacobi, the
/// relators and the dimensions before returning.
pub fn build(n: usize, l: usize) -> Result<GradedNilpotentLie> {
    if !(2..=9).contains(&n) {
        return Err(Error::InvalidInput(format!("need 2 <= n <= 9, got {n}")));
    }
    let cap = crate::config::degree_cap();
    if l == 0 || l > cap {
        return Err(Error::InvalidInput(format!("cutoff l = {l} outside 1..={cap}")));
    }
    let free = FreeLieAlgebra::new(n, l.max(3))?;
    let relators = relator_elements(&free)?;

    let mut reducers: Vec<DegreeReducer> = Vec::with_capacity(l + 1);
    reducers.push(DegreeReducer {
        columns: Vec::new(),
        column_of: HashMap::new(),
        ideal: SparseEchelon::new(),
        basis_index: HashMap::new(),
    });
    for j in 1..=l {
        let columns: Vec<LyndonWord> = free.basis(j).iter().rev().cloned().collect();
        let column_of: HashMap<LyndonWord, usize> =
            columns.iter().enumerate().map(|(c, w)| (w.clone(), c)).collect();
        let mut ideal = SparseEchelon::new();
        let to_cols = |e: &FreeLieElement| -> SparseVec {
            e.terms().iter().map(|(w, c)| (column_of[w], c.clone())).collect()
        };
        if j == 3 {
            for r in &relators {
                ideal.insert(&to_cols(r));
            }
        } else if j >= 4 {
            // I_j = [V, I_{j-1}]: f(n) is generated in degree one, so ad of the
            // whole algebra is generated by the ad x_i.
            let prev = &reducers[j - 1];
            let mut ad_cache: HashMap<(usize, usize), Vec<(usize, Rational)>> = HashMap::new();
            for row in prev.ideal.rows().values() {
                for i in 1..=n {
                    let mut image = SparseVec::new();
                    for (&col, c) in row {
                        if let std::collections::hash_map::Entry::Vacant(e) = ad_cache.entry((i, col)) {
                            let terms = free
                                .ad_generator(i, &prev.columns[col])?
                                .into_iter()
                                .map(|(w, k)| (column_of[&w], Rational::from(k)))
                                .collect();
                            e.insert(terms);
                        }
                        for (t, k) in &ad_cache[&(i, col)] {
                            let e = image.entry(*t).or_insert_with(Rational::zero);
                            *e += c * k;
                            if e.is_zero() {
                                image.remove(t);
                            }
                        }
                    }
                    ideal.insert(&image);
                }
            }
        }
        reducers.push(DegreeReducer {
            columns,
            column_of,
            ideal,
            basis_index: HashMap::new(),
        });
    }

    let expected = series::lie_dims_moebius(n, l)?;
    let mut basis = Vec::new();
    let mut offsets = vec![0, 0];
    for (j, red) in reducers.iter_mut().enumerate().skip(1) {
        let mut survivors: Vec<usize> = (0..red.columns.len()).filter(|c| !red.ideal.is_pivot(*c)).collect();
        survivors.reverse();
        let want = expected.get(j).cloned().unwrap_or_default();
        if num_bigint::BigInt::from(survivors.len()) != want {
            return Err(Error::Consistency(format!(
                "degree {j}: quotient dimension {} differs from the Moebius count {want}",
                survivors.len()
            )));
        }
        for c in survivors {
            red.basis_index.insert(c, basis.len());
            basis.push(red.columns[c].clone());
        }
        offsets.push(basis.len());
    }
    let index = basis.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();

    let mut g = GradedNilpotentLie {
        n,
        l,
        free,
        basis,
        offsets,
        index,
        reducers,
        structure: HashMap::new(),
        relators,
    };
    let dim = g.dim();
    let mut structure = HashMap::new();
    for a in 0..dim {
        for b in 0..dim {
            if a == b || g.degree(a) + g.degree(b) > l {
                continue;
            }
            let br = g.free.bracket_basis(&g.basis[a], &g.basis[b])?;
            let e = FreeLieElement::from_terms(n, br.into_iter().map(|(w, c)| (w, Rational::from(c))));
            let v = g.reduce_free(&e);
            if !v.is_empty() {
                structure.insert((a, b), v);
            }
        }
    }
    g.structure = structure;
    g.check_antisymmetry()?;
    g.check_jacobi()?;
    g.check_relators()?;
    Ok(g)
}

fn relator_elements(free: &FreeLieAlgebra) -> Result<Vec<FreeLieElement>> {
    let n = free.n();
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let mut acc: BTreeMap<LyndonWord, i64> = BTreeMap::new();
        for i in 1..=n {
            for (w, c) in free.ad_generator(i, &LyndonWord::generator(k, n))? {
                for (u, d) in free.ad_generator(i, &w)? {
                    *acc.entry(u).or_insert(0) += c * d;
                }
            }
        }
        out.push(FreeLieElement::from_terms(
            n,
            acc.into_iter().map(|(w, c)| (w, Rational::from(c))),
        ));
    }
    Ok(out)
}

impl GradedNilpotentLie {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimensions of the graded components, degrees `1..=l`.
    pub fn dims(&self) -> Vec<usize> {
        (1..=self.l).map(|j| self.offsets[j + 1] - self.offsets[j]).collect()
    }

    /// Basis indices of the degree-`j` component.
    pub fn degree_range(&self, j: usize) -> std::ops::Range<usize> {
        if j == 0 || j > self.l {
            return 0..0;
        }
        self.offsets[j]..self.offsets[j + 1]
    }

    pub fn degree(&self, idx: usize) -> usize {
        self.basis[idx].len()
    }

    pub fn basis_word(&self, idx: usize) -> &LyndonWord {
        &self.basis[idx]
    }

    /// Canonical label: the Lyndon word as a digit string.
    pub fn label(&self, idx: usize) -> String {
        self.basis[idx].to_string()
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.dim()).map(|i| self.label(i)).collect()
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        let w = parse_word(label, self.n).ok()?;
        let lw = LyndonWord::new(w, self.n).ok()?;
        self.index.get(&lw).copied()
    }

    /// Standard bracketing of the basis element's Lyndon word.
    pub fn tree(&self, idx: usize) -> BracketTree {
        standard_bracketing(&self.basis[idx])
    }

    /// Nilpotency class: the top nonzero degree.
    pub fn class(&self) -> usize {
        (1..=self.l).rev().find(|&j| !self.degree_range(j).is_empty()).unwrap_or(0)
    }

    pub fn free_algebra(&self) -> &FreeLieAlgebra {
        &self.free
    }

    /// The relators `sum_i [x_i,[x_i,x_k]]` in `f(n)`, `k = 1..n`.
    pub fn relators(&self) -> &[FreeLieElement] {
        &self.relators
    }

    /// `[e_a, e_b]`, or `None` when it vanishes.
    pub fn structure(&self, a: usize, b: usize) -> Option<&SparseVec> {
        self.structure.get(&(a, b))
    }

    pub fn basis_vector(&self, idx: usize) -> LieElementQ {
        SparseVec::from([(idx, Rational::one())])
    }

    pub fn bracket(&self, x: &LieElementQ, y: &LieElementQ) -> LieElementQ {
        let mut out = SparseVec::new();
        for (&a, ca) in x {
            for (&b, cb) in y {
                if let Some(s) = self.structure.get(&(a, b)) {
                    add_scaled(&mut out, &(ca * cb), s);
                }
            }
        }
        out
    }

    /// Image in the quotient of an element of `f(n)`; components of degree
    /// above `l` vanish.
    pub fn reduce_free(&self, e: &FreeLieElement) -> LieElementQ {
        let mut by_degree: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (w, c) in e.terms() {
            let j = w.len();
            if j > self.l {
                continue;
            }
            let red = &self.reducers[j];
            by_degree.entry(j).or_default().insert(red.column_of[w], c.clone());
        }
        let mut out = SparseVec::new();
        for (j, v) in by_degree {
            let red = &self.reducers[j];
            for (col, c) in red.ideal.reduce(&v) {
                out.insert(red.basis_index[&col], c);
            }
        }
        out
    }

    /// Coordinates of a bracket expression, computed in `f(n)` and then
    /// reduced. Expressions of degree above `l` give zero.
    pub fn reduce(&self, expr: &BracketTree) -> Result<LieElementQ> {
        let top = expr.max_generator();
        if top == 0 || top > self.n {
            return Err(Error::InvalidInput(format!("{expr} uses generators outside x1..x{}", self.n)));
        }
        let j = expr.degree();
        if j > self.l {
            return Ok(SparseVec::new());
        }
        let t = expand_tree(expr);
        let e = self.free.from_tensor(&t, j)?;
        Ok(self.reduce_free(&e))
    }

    /// Evaluates a bracket expression with the structure constants.
    pub fn evaluate(&self, expr: &BracketTree) -> Result<LieElementQ> {
        match expr {
            BracketTree::Gen(i) => {
                let i = *i as usize;
                if i == 0 || i > self.n {
                    return Err(Error::InvalidInput(format!("generator x{i} outside x1..x{}", self.n)));
                }
                Ok(self.basis_vector(i - 1))
            }
            BracketTree::Bracket(a, b) => Ok(self.bracket(&self.evaluate(a)?, &self.evaluate(b)?)),
        }
    }

    /// Labelled coordinates, in basis order.
    pub fn labelled(&self, v: &LieElementQ) -> Vec<(String, Rational)> {
        v.iter().map(|(&i, c)| (self.label(i), c.clone())).collect()
    }

    pub fn check_antisymmetry(&self) -> Result<()> {
        for (&(a, b), v) in &self.structure {
            let w = self.structure.get(&(b, a));
            let ok = w.is_some_and(|w| w.len() == v.len() && w.iter().all(|(k, c)| v.get(k) == Some(&-c)));
            if !ok {
                return Err(Error::Consistency(format!(
                    "antisymmetry fails for [{}, {}]",
                    self.label(a),
                    self.label(b)
                )));
            }
        }
        Ok(())
    }

    /// Jacobi identity on every triple `a < b < c` with degree sum at most
    /// `l`. Together with antisymmetry this covers all triples.
    pub fn check_jacobi(&self) -> Result<()> {
        let dim = self.dim();
        for a in 0..dim {
            for b in a + 1..dim {
                let dab = self.degree(a) + self.degree(b);
                if dab >= self.l {
                    break;
                }
                let ea = self.basis_vector(a);
                let eb = self.basis_vector(b);
                let ab = self.bracket(&ea, &eb);
                for c in b + 1..dim {
                    if dab + self.degree(c) > self.l {
                        break;
                    }
                    let ec = self.basis_vector(c);
                    let mut j = self.bracket(&ea, &self.bracket(&eb, &ec));
                    add_scaled(&mut j, &Rational::one(), &self.bracket(&eb, &self.bracket(&ec, &ea)));
                    add_scaled(&mut j, &Rational::one(), &self.bracket(&ec, &ab));
                    if !j.is_empty() {
                        return Err(Error::Consistency(format!(
                            "Jacobi fails for ({}, {}, {})",
                            self.label(a),
                            self.label(b),
                            self.label(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The relators vanish, both after reduction and when evaluated through
    /// the structure constants.
    pub fn check_relators(&self) -> Result<()> {
        for (k, r) in self.relators.iter().enumerate() {
            let tree_sum = (1..=self.n)
                .map(|i| {
                    self.evaluate(&BracketTree::right_nested(&[i, i, k + 1]))
                })
                .collect::<Result<Vec<_>>>()?;
            let mut total = SparseVec::new();
            for v in &tree_sum {
                add_scaled(&mut total, &Rational::one(), v);
            }
            if !self.reduce_free(r).is_empty() || !total.is_empty() {
                return Err(Error::Consistency(format!("relator for j = {} does not vanish", k + 1)));
            }
        }
        Ok(())
    }

    /// Dimensions of `C^0 = g, C^1, ..., C^l`, computed as spans of brackets.
    pub fn lower_central_series_dims(&self) -> Vec<usize> {
        let dim = self.dim();
        let mut current: Vec<SparseVec> = (0..dim).map(|i| self.basis_vector(i)).collect();
        let mut dims = vec![dim];
        for _ in 0..self.l {
            let mut ech = SparseEchelon::new();
            for a in 0..dim {
                let ea = self.basis_vector(a);
                for v in &current {
                    ech.insert(&self.bracket(&ea, v));
                }
            }
            current = ech.rows().values().cloned().collect();
            dims.push(ech.rank());
        }
        dims
    }
}

/// The quotient bases for `n = 3`, in order; `B_l` is the first 3, 6, 11 or
/// 21 entries. Labels are right-nested brackets, `x312 = [x3,[x1,x2]]`.
pub const NAMED_BASIS_LABELS: [&str; 21] = [
    "x1", "x2", "x3", "x12", "x13", "x23", "x112", "x221", "x113", "x123", "x312", "x1112", "x1221", "x1113",
    "x1123", "x2221", "x2113", "x2312", "x3112", "x3221", "x3312",
];

const NAMED_BASIS_SIZES: [usize; 5] = [0, 3, 6, 11, 21];

/// Right-nested bracket named by a label such as `x312`.
pub fn parse_named_label(label: &str, n: usize) -> Result<BracketTree> {
    let digits = label
        .strip_prefix('x')
        .ok_or_else(|| Error::InvalidInput(format!("label {label:?} must start with 'x'")))?;
    let w = parse_word(digits, n)?;
    if w.len() >= 2 && w[w.len() - 2] == w[w.len() - 1] {
        return Err(Error::InvalidInput(format!("label {label:?} is a zero bracket")));
    }
    let idx: Vec<usize> = w.iter().map(|&a| a as usize).collect();
    Ok(BracketTree::right_nested(&idx))
}

/// Labels of the named basis of `ym(3)/C^l`, `l = 1..4`.
pub fn named_basis_labels(n: usize, l: usize) -> Result<&'static [&'static str]> {
    if n != 3 {
        return Err(Error::Unsupported(format!("named bases exist only for n = 3, got {n}")));
    }
    if !(1..=4).contains(&l) {
        return Err(Error::Unsupported(format!("named bases exist only for l = 1..4, got {l}")));
    }
    Ok(&NAMED_BASIS_LABELS[..NAMED_BASIS_SIZES[l]])
}

pub fn named_basis(n: usize, l: usize) -> Result<Vec<BracketTree>> {
    named_basis_labels(n, l)?
        .iter()
        .map(|s| parse_named_label(s, n))
        .collect()
}

impl GradedNilpotentLie {
    /// Coordinates of the named basis elements.
    pub fn named_basis_coords(&self) -> Result<Vec<LieElementQ>> {
        named_basis(self.n, self.l)?.iter().map(|t| self.reduce(t)).collect()
    }

    /// Whether the named basis is a basis: right size and full rank.
    pub fn verify_named_basis(&self) -> Result<bool> {
        let coords = self.named_basis_coords()?;
        let mut ech = SparseEchelon::new();
        for v in &coords {
            ech.insert(v);
        }
        Ok(coords.len() == self.dim() && ech.rank() == self.dim())
    }

    /// Checks each relation of [`named_identities`] of degree at most `l`.
    pub fn check_identities(&self) -> Result<Vec<(String, bool)>> {
        let mut out = Vec::new();
        for id in named_identities() {
            if id.degree() > self.l {
                continue;
            }
            let lhs = self.reduce(&parse_named_label(id.lhs, self.n)?)?;
            let mut rhs = SparseVec::new();
            for (label, c) in &id.rhs {
                add_scaled(&mut rhs, c, &self.reduce(&parse_named_label(label, self.n)?)?);
            }
            out.push((id.to_string(), lhs == rhs));
        }
        Ok(out)
    }
}

/// A relation `lhs = sum c * label` between right-nested brackets.
#[derive(Clone, Debug)]
pub struct Identity {
    pub lhs: &'static str,
    pub rhs: Vec<(&'static str, Rational)>,
}

impl Identity {
    pub fn degree(&self) -> usize {
        self.lhs.len() - 1
    }
}

impl std::fmt::Display for Identity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self.rhs.iter().map(|(l, c)| format!("({c}){l}")).collect();
        write!(f, "{} = {}", self.lhs, terms.join(" + "))
    }
}

/// Relations among right-nested brackets in `ym(3)`, degrees 3 and 4.
pub fn named_identities() -> Vec<Identity> {
    let id = |lhs, rhs: &[(&'static str, Rational)]| Identity { lhs, rhs: rhs.to_vec() };
    let one = q(1, 1);
    let m1 = q(-1, 1);
    let half = q(1, 2);
    let mhalf = q(-1, 2);
    vec![
        id("x332", &[("x112", m1.clone())]),
        id("x213", &[("x123", one.clone()), ("x312", one.clone())]),
        id("x3113", &[("x1221", one.clone())]),
        id("x2112", &[("x1221", m1.clone())]),
        id("x2123", &[("x3221", one.clone()), ("x2312", one.clone()), ("x1113", m1)]),
        id(
            "x1312",
            &[("x3112", half.clone()), ("x2113", half.clone()), ("x1123", mhalf.clone())],
        ),
        id("x3123", &[("x1112", half.clone()), ("x2221", half), ("x3312", mhalf)]),
    ]
}

/// One-dimensional representation `x_i -> lambda_i`, brackets acting by 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterRep {
    lambda: Vec<Rational>,
}

pub fn character_rep(n: usize, lambda: Vec<Rational>) -> Result<CharacterRep> {
    if lambda.len() != n {
        return Err(Error::InvalidInput(format!("character needs {n} values, got {}", lambda.len())));
    }
    Ok(CharacterRep { lambda })
}

impl CharacterRep {
    pub fn lambda(&self) -> &[Rational] {
        &self.lambda
    }

    /// Scalar by which basis element `idx` of `g` acts.
    pub fn value(&self, g: &GradedNilpotentLie, idx: usize) -> Rational {
        if g.degree(idx) == 1 {
            self.lambda[g.basis_word(idx).letters()[0] as usize - 1].clone()
        } else {
            Rational::zero()
        }
    }

    /// Images of the relators, evaluated word by word in the commutative
    /// image of the tensor algebra.
    pub fn relator_values(&self) -> Vec<Rational> {
        let n = self.lambda.len();
        (1..=n)
            .map(|k| {
                let mut total = Rational::zero();
                for i in 1..=n {
                    for (w, c) in expand_tree(&BracketTree::right_nested(&[i, i, k])) {
                        let prod: Rational = w.iter().map(|&a| self.lambda[a as usize - 1].clone()).product();
                        total += c * prod;
                    }
                }
                total
            })
            .collect()
    }

    /// `rho([e_a, e_b]) = 0 = [rho(e_a), rho(e_b)]` for all basis pairs.
    pub fn is_lie_hom(&self, g: &GradedNilpotentLie) -> bool {
        (0..g.dim()).all(|a| {
            (0..g.dim()).all(|b| match g.structure(a, b) {
                None => true,
                Some(v) => v
                    .iter()
                    .map(|(&k, c)| c * &self.value(g, k))
                    .sum::<Rational>()
                    .is_zero(),
            })
        })
    }
}

/// Ordered PBW monomials of the enveloping algebra up to a degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PBWMonomialTable {
    pub degree_cap: usize,
    /// Non-decreasing sequences of basis indices; graded, then lexicographic.
    pub monomials: Vec<Vec<usize>>,
    pub counts: Vec<usize>,
}

impl PBWMonomialTable {
    /// Indices into `monomials` of the given degree.
    pub fn degree_range(&self, j: usize) -> std::ops::Range<usize> {
        let start: usize = self.counts[..j].iter().sum();
        start..start + self.counts[j]
    }
}

pub fn pbw_monomials(g: &GradedNilpotentLie, d: usize) -> Result<PBWMonomialTable> {
    let cap = crate::config::degree_cap();
    if d > cap {
        return Err(Error::InvalidInput(format!("degree {d} exceeds the configured cap {cap}")));
    }
    let mut monomials = Vec::new();
    let mut counts = Vec::with_capacity(d + 1);
    for t in 0..=d {
        let before = monomials.len();
        let mut cur = Vec::new();
        extend_monomials(g, 0, t, &mut cur, &mut monomials);
        counts.push(monomials.len() - before);
    }
    Ok(PBWMonomialTable {
        degree_cap: d,
        monomials,
        counts,
    })
}

fn extend_monomials(g: &GradedNilpotentLie, start: usize, remaining: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if remaining == 0 {
        out.push(cur.clone());
        return;
    }
    for idx in start..g.dim() {
        let dg = g.degree(idx);
        if dg > remaining {
            break;
        }
        cur.push(idx);
        extend_monomials(g, idx, remaining - dg, cur, out);
        cur.pop();
    }
}

/// Element of the enveloping algebra on the PBW basis.
pub type PbwElement = BTreeMap<Vec<usize>, Rational>;

/// The derivation `d_i` with `d_i(x_j) = delta_ij` and `d_i(b) = 0` for every
/// bracket basis element. It sends basis elements to scalars, so the Leibniz
/// rule keeps ordered monomials ordered.
pub fn derivation_di(g: &GradedNilpotentLie, i: usize, u: &PbwElement) -> Result<PbwElement> {
    if i == 0 || i > g.n() {
        return Err(Error::InvalidInput(format!("derivation index {i} outside 1..={}", g.n())));
    }
    let target = i - 1;
    let mut out = PbwElement::new();
    for (m, c) in u {
        if let Some(bad) = m.iter().find(|&&k| k >= g.dim()) {
            return Err(Error::InvalidInput(format!("basis index {bad} out of range")));
        }
        for pos in (0..m.len()).filter(|&p| m[p] == target) {
            let mut rest = m.clone();
            rest.remove(pos);
            let e = out.entry(rest.clone()).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                out.remove(&rest);
            }
        }
    }
    Ok(out)
}

/// Dimension of `Ker d_1 ∩ ... ∩ Ker d_n` in each degree `0..=d` of the
/// enveloping algebra, by exact rank computation.
pub fn kernel_intersection_dims(g: &GradedNilpotentLie, d: usize) -> Result<Vec<usize>> {
    if g.l() < d {
        return Err(Error::InvalidInput(format!(
            "cutoff l = {} truncates the enveloping algebra below degree {d}",
            g.l()
        )));
    }
    let table = pbw_monomials(g, d)?;
    let position: HashMap<&[usize], usize> = table
        .monomials
        .iter()
        .enumerate()
        .map(|(k, m)| (m.as_slice(), k))
        .collect();
    let total = table.monomials.len();
    let mut dims = Vec::with_capacity(d + 1);
    for j in 0..=d {
        let mut ech = SparseEchelon::new();
        for m in &table.monomials[table.degree_range(j)] {
            let mut image = SparseVec::new();
            for i in 1..=g.n() {
                let u = PbwElement::from([(m.clone(), Rational::one())]);
                for (r, c) in derivation_di(g, i, &u)? {
                    image.insert((i - 1) * total + position[r.as_slice()], c);
                }
            }
            ech.insert(&image);
        }
        dims.push(table.counts[j] - ech.rank());
    }
    Ok(dims)
}

/// Renders a PBW monomial with canonical labels, e.g. `x1^2 x12`.
pub fn monomial_string(g: &GradedNilpotentLie, m: &[usize]) -> String {
    if m.is_empty() {
        return "1".into();
    }
    let mut parts = Vec::new();
    let mut k = 0;
    while k < m.len() {
        let mut e = 1;
        while k + e < m.len() && m[k + e] == m[k] {
            e += 1;
        }
        let base = format!("x{}", word_string(g.basis_word(m[k]).letters()));
        parts.push(if e == 1 { base } else { format!("{base}^{e}") });
        k += e;
    }
    parts.join(" ")
}
