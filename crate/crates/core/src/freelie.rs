//! Free Lie algebra `f(n)` on the Lyndon basis.
//!
//! A Lyndon word `w` stands for its standard bracketing `P_w`. Expanded in
//! the tensor algebra, `P_w` is `w` itself plus lexicographically larger
//! words, which makes conversion from tensors back to the Lyndon basis a
//! triangular elimination.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{add_scaled, Rational};

/// A word over the alphabet `1..=n`.
pub type Word = Vec<u8>;

/// Element of the tensor algebra `T(V(n))`: words with rational coefficients.
pub type Tensor = BTreeMap<Word, Rational>;

/// Renders a word as a digit string, e.g. `112`.
pub fn word_string(w: &[u8]) -> String {
    w.iter().map(|&a| char::from(b'0' + a)).collect()
}

/// Parses a digit string into a word over `1..=n`.
pub fn parse_word(s: &str, n: usize) -> Result<Word> {
    if s.is_empty() {
        return Err(Error::InvalidInput("empty word".into()));
    }
    s.chars()
        .map(|c| match c.to_digit(10) {
            Some(d) if d >= 1 && (d as usize) <= n => Ok(d as u8),
            _ => Err(Error::InvalidInput(format!("letter {c:?} not in 1..={n}"))),
        })
        .collect()
}

/// Whether `w` is strictly smaller than each of its proper rotations.
pub fn is_lyndon(w: &[u8]) -> bool {
    if w.is_empty() {
        return false;
    }
    let k = w.len();
    (1..k).all(|i| {
        let rotated = w[i..].iter().chain(&w[..i]);
        w.iter().lt(rotated)
    })
}

/// Bitmask of the letters occurring an odd number of times.
pub fn parity(w: &[u8]) -> u32 {
    w.iter().fold(0, |m, &a| m ^ (1 << (a - 1)))
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LyndonWord {
    letters: Word,
    n: u8,
}

impl LyndonWord {
    pub fn new(letters: Word, n: usize) -> Result<Self> {
        if !(1..=9).contains(&n) {
            return Err(Error::InvalidInput(format!("alphabet size {n} outside 1..=9")));
        }
        if letters.iter().any(|&a| a == 0 || a as usize > n) {
            return Err(Error::InvalidInput(format!(
                "word {} uses letters outside 1..={n}",
                word_string(&letters)
            )));
        }
        if !is_lyndon(&letters) {
            return Err(Error::InvalidInput(format!("{} is not a Lyndon word", word_string(&letters))));
        }
        Ok(LyndonWord { letters, n: n as u8 })
    }

    pub fn generator(i: usize, n: usize) -> Self {
        LyndonWord {
            letters: vec![i as u8],
            n: n as u8,
        }
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn parity(&self) -> u32 {
        parity(&self.letters)
    }

    /// `w = uv` with `v` the longest proper Lyndon suffix; `None` for letters.
    pub fn standard_factorization(&self) -> Option<(LyndonWord, LyndonWord)> {
        let w = &self.letters;
        (1..w.len()).find(|&i| is_lyndon(&w[i..])).map(|i| {
            (
                LyndonWord {
                    letters: w[..i].to_vec(),
                    n: self.n,
                },
                LyndonWord {
                    letters: w[i..].to_vec(),
                    n: self.n,
                },
            )
        })
    }
}

impl fmt::Display for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&word_string(&self.letters))
    }
}

impl fmt::Debug for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({self})")
    }
}

/// Lyndon words of length `j` over `1..=n`, in lexicographic order
/// (Duval's generation algorithm, filtered by length).
pub fn lyndon_basis(n: usize, j: usize) -> Vec<LyndonWord> {
    if n == 0 || j == 0 {
        return Vec::new();
    }
    let top = n as u8;
    let mut out = Vec::new();
    let mut w: Word = vec![1];
    loop {
        if w.len() == j {
            out.push(LyndonWord {
                letters: w.clone(),
                n: top,
            });
        }
        let m = w.len();
        while w.len() < j {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&top) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

/// Number of Lyndon words of length `j` over `n` letters:
/// `(1/j) sum_{d | j} mu(d) n^(j/d)`.
pub fn necklace_count(n: usize, j: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for d in (1..=j).filter(|d| j.is_multiple_of(*d)) {
        let mu = crate::series::moebius(d);
        if mu != 0 {
            acc += BigInt::from(mu) * Pow::pow(BigInt::from(n), (j / d) as u32);
        }
    }
    let (q, r) = acc.div_rem(&BigInt::from(j));
    debug_assert!(r.is_zero());
    q
}

/// Binary bracket expression in the generators `x_1..x_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum BracketTree {
    Gen(u8),
    Bracket(Box<BracketTree>, Box<BracketTree>),
}

impl BracketTree {
    pub fn gen(i: usize) -> Self {
        BracketTree::Gen(i as u8)
    }

    pub fn bracket(a: BracketTree, b: BracketTree) -> Self {
        BracketTree::Bracket(Box::new(a), Box::new(b))
    }

    /// Right-nested bracket `[x_{i1},[x_{i2},[...,x_{ik}]]]`.
    pub fn right_nested(indices: &[usize]) -> Self {
        assert!(!indices.is_empty());
        let mut t = BracketTree::gen(indices[indices.len() - 1]);
        for &i in indices[..indices.len() - 1].iter().rev() {
            t = BracketTree::bracket(BracketTree::gen(i), t);
        }
        t
    }

    pub fn degree(&self) -> usize {
        match self {
            BracketTree::Gen(_) => 1,
            BracketTree::Bracket(a, b) => a.degree() + b.degree(),
        }
    }

    pub fn leaves(&self) -> Word {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Word) {
        match self {
            BracketTree::Gen(i) => out.push(*i),
            BracketTree::Bracket(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    pub fn max_generator(&self) -> usize {
        self.leaves().into_iter().max().unwrap_or(0) as usize
    }
}

impl fmt::Display for BracketTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketTree::Gen(i) => write!(f, "x{i}"),
            BracketTree::Bracket(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

impl fmt::Debug for BracketTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BracketTree {
    type Err = Error;

    /// Parses `x3` or `[x1,[x2,x3]]`.
    fn from_str(s: &str) -> Result<Self> {
        let s: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let t = parse_tree(&s, &mut pos)?;
        if pos != s.len() {
            return Err(Error::InvalidInput("trailing characters after bracket expression".into()));
        }
        Ok(t)
    }
}

fn parse_tree(s: &[char], pos: &mut usize) -> Result<BracketTree> {
    let bad = |what: &str| Error::InvalidInput(format!("malformed bracket expression: {what}"));
    match s.get(*pos) {
        Some('x') => {
            *pos += 1;
            let start = *pos;
            while s.get(*pos).is_some_and(|c| c.is_ascii_digit()) {
                *pos += 1;
            }
            let digits: String = s[start..*pos].iter().collect();
            let i: u8 = digits.parse().map_err(|_| bad("generator index"))?;
            if i == 0 {
                return Err(bad("generator index 0"));
            }
            Ok(BracketTree::Gen(i))
        }
        Some('[') => {
            *pos += 1;
            let a = parse_tree(s, pos)?;
            if s.get(*pos) != Some(&',') {
                return Err(bad("expected ','"));
            }
            *pos += 1;
            let b = parse_tree(s, pos)?;
            if s.get(*pos) != Some(&']') {
                return Err(bad("expected ']'"));
            }
            *pos += 1;
            Ok(BracketTree::bracket(a, b))
        }
        _ => Err(bad("expected 'x' or '['")),
    }
}

/// Standard bracketing of a Lyndon word.
pub fn standard_bracketing(w: &LyndonWord) -> BracketTree {
    match w.standard_factorization() {
        None => BracketTree::Gen(w.letters[0]),
        Some((u, v)) => BracketTree::bracket(standard_bracketing(&u), standard_bracketing(&v)),
    }
}

/// Concatenation product in the tensor algebra.
pub fn tensor_mul(a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = Tensor::new();
    for (u, c) in a {
        for (v, d) in b {
            let mut w = u.clone();
            w.extend_from_slice(v);
            let term = c * d;
            match out.get_mut(&w) {
                Some(e) => {
                    *e += term;
                    if e.is_zero() {
                        out.remove(&w);
                    }
                }
                None => {
                    out.insert(w, term);
                }
            }
        }
    }
    out
}

/// Commutator `ab - ba` in the tensor algebra.
pub fn tensor_commutator(a: &Tensor, b: &Tensor) -> Tensor {
    let mut ab = tensor_mul(a, b);
    add_scaled(&mut ab, &-Rational::one(), &tensor_mul(b, a));
    ab
}

/// Tensor expansion of a bracket expression, `[a,b] = ab - ba`.
pub fn expand_tree(t: &BracketTree) -> Tensor {
    match t {
        BracketTree::Gen(i) => Tensor::from([(vec![*i], Rational::one())]),
        BracketTree::Bracket(a, b) => tensor_commutator(&expand_tree(a), &expand_tree(b)),
    }
}

/// Rational combination of Lyndon basis elements.
#[derive(Clone, PartialEq, Eq)]
pub struct FreeLieElement {
    n: usize,
    terms: BTreeMap<LyndonWord, Rational>,
}

impl FreeLieElement {
    pub fn zero(n: usize) -> Self {
        FreeLieElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(w: LyndonWord) -> Self {
        let n = w.n();
        FreeLieElement {
            n,
            terms: BTreeMap::from([(w, Rational::one())]),
        }
    }

    pub fn generator(i: usize, n: usize) -> Self {
        Self::basis(LyndonWord::generator(i, n))
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (LyndonWord, Rational)>) -> Self {
        let mut e = Self::zero(n);
        for (w, c) in terms {
            assert_eq!(w.n(), n, "alphabet mismatch");
            e.add_term(w, c);
        }
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<LyndonWord, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &LyndonWord) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, w: LyndonWord, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &FreeLieElement) -> FreeLieElement {
        assert_eq!(self.n, other.n, "alphabet mismatch");
        let mut out = self.clone();
        add_scaled(&mut out.terms, &Rational::one(), &other.terms);
        out
    }

    pub fn scale(&self, c: &Rational) -> FreeLieElement {
        FreeLieElement {
            n: self.n,
            terms: crate::exactalg::scale(&self.terms, c),
        }
    }

    /// Common word length of all terms; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut lens = self.terms.keys().map(LyndonWord::len);
        let first = lens.next()?;
        lens.all(|l| l == first).then_some(first)
    }
}

impl fmt::Debug for FreeLieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("{c}*{w}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Image of `e` under the embedding `f(n) -> T(V(n))`.
pub fn to_tensor(e: &FreeLieElement) -> Tensor {
    let mut out = Tensor::new();
    for (w, c) in &e.terms {
        add_scaled(&mut out, c, &expand_tree(&standard_bracketing(w)));
    }
    out
}

/// Inverse of [`to_tensor`] on homogeneous degree-`j` Lie elements.
pub fn from_tensor(n: usize, t: &Tensor, j: usize) -> Result<FreeLieElement> {
    eliminate(n, t, Some(j), |w| expand_tree(&standard_bracketing(w)))
}

/// Lie bracket in `f(n)`, through the tensor algebra.
pub fn bracket(a: &FreeLieElement, b: &FreeLieElement) -> Result<FreeLieElement> {
    if a.n != b.n {
        return Err(Error::InvalidInput("bracket of elements over different alphabets".into()));
    }
    let t = tensor_commutator(&to_tensor(a), &to_tensor(b));
    eliminate(a.n, &t, None, |w| expand_tree(&standard_bracketing(w)))
}

/// Triangular elimination against Lyndon leading terms. When `degree` is
/// given, every word must have that length.
fn eliminate<F>(n: usize, t: &Tensor, degree: Option<usize>, expand: F) -> Result<FreeLieElement>
where
    F: Fn(&LyndonWord) -> Tensor,
{
    if let Some(j) = degree {
        if let Some(w) = t.keys().find(|w| w.len() != j) {
            return Err(Error::InvalidInput(format!(
                "word {} has length {} in a degree-{j} tensor",
                word_string(w),
                w.len()
            )));
        }
    }
    let mut rest = t.clone();
    let mut out = FreeLieElement::zero(n);
    while let Some((w, c)) = rest.first_key_value().map(|(w, c)| (w.clone(), c.clone())) {
        if !is_lyndon(&w) || w.iter().any(|&a| a as usize > n) {
            return Err(Error::NotLieElement(word_string(&w)));
        }
        let lw = LyndonWord { letters: w, n: n as u8 };
        add_scaled(&mut rest, &-c.clone(), &expand(&lw));
        out.add_term(lw, c);
    }
    Ok(out)
}

/// Free Lie algebra on `n` generators with cached Lyndon bases and tensor
/// expansions up to a fixed degree. Immutable once built.
pub struct FreeLieAlgebra {
    n: usize,
    max_degree: usize,
    bases: Vec<Vec<LyndonWord>>,
    expansions: HashMap<Word, Vec<(Word, i64)>>,
}

impl FreeLieAlgebra {
    pub fn new(n: usize, max_degree: usize) -> Result<Self> {
        if !(1..=9).contains(&n) {
            return Err(Error::InvalidInput(format!("alphabet size {n} outside 1..=9")));
        }
        let cap = crate::config::degree_cap();
        if max_degree > cap {
            return Err(Error::InvalidInput(format!(
                "degree {max_degree} exceeds the configured cap {cap}"
            )));
        }
        let mut bases = vec![Vec::new()];
        let mut expansions: HashMap<Word, Vec<(Word, i64)>> = HashMap::new();
        for j in 1..=max_degree {
            let basis = lyndon_basis(n, j);
            for w in &basis {
                let exp = match w.standard_factorization() {
                    None => vec![(w.letters.clone(), 1)],
                    Some((u, v)) => {
                        integer_commutator(&expansions[u.letters()], &expansions[v.letters()])
                    }
                };
                expansions.insert(w.letters.clone(), exp);
            }
            bases.push(basis);
        }
        Ok(FreeLieAlgebra {
            n,
            max_degree,
            bases,
            expansions,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn basis(&self, j: usize) -> &[LyndonWord] {
        &self.bases[j]
    }

    /// Tensor expansion of the standard bracketing of `w` (integer
    /// coefficients, sorted by word).
    pub fn expansion(&self, w: &LyndonWord) -> &[(Word, i64)] {
        &self.expansions[w.letters()]
    }

    pub fn expansion_tensor(&self, w: &LyndonWord) -> Tensor {
        self.expansion(w)
            .iter()
            .map(|(u, c)| (u.clone(), Rational::from(*c)))
            .collect()
    }

    pub fn to_tensor(&self, e: &FreeLieElement) -> Tensor {
        let mut out = Tensor::new();
        for (w, c) in &e.terms {
            for (u, k) in self.expansion(w) {
                accumulate(&mut out, u, c * &Rational::from(*k));
            }
        }
        out
    }

    pub fn from_tensor(&self, t: &Tensor, j: usize) -> Result<FreeLieElement> {
        if j > self.max_degree {
            return Err(Error::InvalidInput(format!(
                "degree {j} beyond the cached range {}",
                self.max_degree
            )));
        }
        let mut rest = t.clone();
        if let Some(w) = rest.keys().find(|w| w.len() != j) {
            return Err(Error::InvalidInput(format!(
                "word {} has length {} in a degree-{j} tensor",
                word_string(w),
                w.len()
            )));
        }
        let mut out = FreeLieElement::zero(self.n);
        while let Some((w, c)) = rest.pop_first() {
            let Some(exp) = self.expansions.get(&w) else {
                return Err(Error::NotLieElement(word_string(&w)));
            };
            // leading word has coefficient 1 and was just popped
            for (u, k) in &exp[1..] {
                accumulate(&mut rest, u, -(&c * &Rational::from(*k)));
            }
            out.add_term(LyndonWord { letters: w, n: self.n as u8 }, c);
        }
        Ok(out)
    }

    /// Integer version of [`FreeLieAlgebra::from_tensor`]; Lyndon coordinates
    /// of an integral Lie element are integral because the change of basis
    /// is unitriangular.
    pub fn from_tensor_int(&self, t: BTreeMap<Word, i64>) -> Result<Vec<(LyndonWord, i64)>> {
        let mut rest = t;
        rest.retain(|_, c| *c != 0);
        let mut out = Vec::new();
        while let Some((w, c)) = rest.pop_first() {
            let Some(exp) = self.expansions.get(&w) else {
                return Err(Error::NotLieElement(word_string(&w)));
            };
            for (u, k) in &exp[1..] {
                let e = rest.entry(u.clone()).or_insert(0);
                *e -= c * k;
                if *e == 0 {
                    rest.remove(u);
                }
            }
            out.push((LyndonWord { letters: w, n: self.n as u8 }, c));
        }
        Ok(out)
    }

    /// `[P_u, P_v]` in Lyndon coordinates.
    pub fn bracket_basis(&self, u: &LyndonWord, v: &LyndonWord) -> Result<Vec<(LyndonWord, i64)>> {
        if u.len() + v.len() > self.max_degree {
            return Err(Error::InvalidInput(format!(
                "bracket of degree {} beyond the cached range {}",
                u.len() + v.len(),
                self.max_degree
            )));
        }
        let t: BTreeMap<Word, i64> = integer_commutator(self.expansion(u), self.expansion(v))
            .into_iter()
            .collect();
        self.from_tensor_int(t)
    }

    /// `[x_i, P_w]` in Lyndon coordinates.
    pub fn ad_generator(&self, i: usize, w: &LyndonWord) -> Result<Vec<(LyndonWord, i64)>> {
        self.bracket_basis(&LyndonWord::generator(i, self.n), w)
    }

    pub fn bracket(&self, a: &FreeLieElement, b: &FreeLieElement) -> Result<FreeLieElement> {
        let t = tensor_commutator(&self.to_tensor(a), &self.to_tensor(b));
        let mut by_degree: BTreeMap<usize, Tensor> = BTreeMap::new();
        for (w, c) in t {
            by_degree.entry(w.len()).or_default().insert(w, c);
        }
        let mut out = FreeLieElement::zero(self.n);
        for (j, part) in by_degree {
            let e = self.from_tensor(&part, j)?;
            out = out.add(&e);
        }
        Ok(out)
    }
}

fn accumulate(t: &mut Tensor, w: &[u8], c: Rational) {
    if c.is_zero() {
        return;
    }
    match t.get_mut(w) {
        Some(e) => {
            *e += c;
            if e.is_zero() {
                t.remove(w);
            }
        }
        None => {
            t.insert(w.to_vec(), c);
        }
    }
}

fn integer_commutator(a: &[(Word, i64)], b: &[(Word, i64)]) -> Vec<(Word, i64)> {
    let mut acc: BTreeMap<Word, i64> = BTreeMap::new();
    for (u, c) in a {
        for (v, d) in b {
            let mut uv = u.clone();
            uv.extend_from_slice(v);
            *acc.entry(uv).or_insert(0) += c * d;
            let mut vu = v.clone();
            vu.extend_from_slice(u);
            *acc.entry(vu).or_insert(0) -= c * d;
        }
    }
    acc.into_iter().filter(|(_, c)| *c != 0).collect()
}
