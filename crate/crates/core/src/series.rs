//! Truncated integer power series and the generating functions attached to
//! the Yang-Mills algebras.
//!
//! The Hilbert series of `YM(n)` is `1/((1-t^2)(1-nt+t^2))`. The graded
//! dimensions `N(n)_j` of the Lie algebra follow from it through the
//! product formula `prod_j (1-t^j)^(-N(n)_j)`, and for `j >= 3` they have a
//! closed Möbius form in the power sums of the roots of `t^2 - nt + 1`.
//! Those power sums are integers (`p_k = n p_{k-1} - p_{k-2}`), so nothing
//! here ever leaves `Z`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Power series with integer coefficients, truncated after degree `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(d: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigInt::zero(); d + 1],
        }
    }

    pub fn one(d: usize) -> Self {
        let mut s = Self::zero(d);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// Polynomial given by its low-degree coefficients, truncated at `d`.
    pub fn from_coeffs(d: usize, coeffs: &[i64]) -> Self {
        let mut s = Self::zero(d);
        for (i, c) in coeffs.iter().enumerate().take(d + 1) {
            s.coeffs[i] = BigInt::from(*c);
        }
        s
    }

    pub fn from_bigints(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least one coefficient");
        TruncatedSeries { coeffs }
    }

    pub fn truncation_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    /// Coefficients as `i64`, when they all fit.
    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    /// `(1 - t)^(-m)`, whose coefficients are `C(m+k-1, k)`.
    pub fn inverse_power_of_one_minus_t(m: &BigInt, d: usize) -> Self {
        Self::inverse_power_of_one_minus_tj(1, m, d)
    }

    /// `(1 - t^j)^(-m)`.
    pub fn inverse_power_of_one_minus_tj(j: usize, m: &BigInt, d: usize) -> Self {
        assert!(j >= 1);
        let mut s = Self::zero(d);
        let mut c = BigInt::one();
        let mut k = 0usize;
        while j * k <= d {
            s.coeffs[j * k] = c.clone();
            k += 1;
            // C(m+k-1, k) = C(m+k-2, k-1) * (m+k-1) / k
            c = c * (m + BigInt::from(k) - 1) / BigInt::from(k);
        }
        s
    }

    /// Multiplicative inverse; needs a unit constant term so the result
    /// stays integral.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if !(c0.is_one() || (-c0).is_one()) {
            return Err(Error::Consistency(format!(
                "series with constant term {c0} has no integral inverse"
            )));
        }
        let d = self.truncation_degree();
        let mut inv = Self::zero(d);
        inv.coeffs[0] = c0.clone();
        for k in 1..=d {
            let mut acc = BigInt::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &inv.coeffs[k - i];
            }
            // c0 is a unit equal to its own inverse
            inv.coeffs[k] = -(acc * c0);
        }
        Ok(inv)
    }

    /// Exact division by an integer; any remainder is an error.
    pub fn div_exact(&self, by: &BigInt) -> Result<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (qt, r) = c.div_rem(by);
            if !r.is_zero() {
                return Err(Error::Consistency(format!("{c} is not divisible by {by}")));
            }
            out.push(qt);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.truncation_degree(),
            other.truncation_degree(),
            "series arithmetic needs equal truncation degrees"
        );
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.check_same(rhs);
        TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.check_same(rhs);
        TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.check_same(rhs);
        let d = self.truncation_degree();
        let mut out = TruncatedSeries::zero(d);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(d + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

/// Graded dimensions `N(n)_j` of `ym(n)` for `j = 1..=J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimTable {
    pub n: usize,
    values: BTreeMap<usize, BigInt>,
}

impl DimTable {
    pub fn new(n: usize, values: BTreeMap<usize, BigInt>) -> Self {
        DimTable { n, values }
    }

    pub fn from_slice(n: usize, dims: &[i64]) -> Self {
        DimTable {
            n,
            values: dims
                .iter()
                .enumerate()
                .map(|(i, &v)| (i + 1, BigInt::from(v)))
                .collect(),
        }
    }

    pub fn get(&self, j: usize) -> Option<&BigInt> {
        self.values.get(&j)
    }

    pub fn max_degree(&self) -> usize {
        self.values.keys().next_back().copied().unwrap_or(0)
    }

    /// Values for degrees `1..=max_degree`, in order.
    pub fn values(&self) -> Vec<BigInt> {
        self.values.values().cloned().collect()
    }

    pub fn set(&mut self, j: usize, v: BigInt) {
        self.values.insert(j, v);
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("need n >= 2 generators, got {n}")));
    }
    Ok(())
}

/// Expansion of `1/((1-t^2)(1-nt+t^2))` up to degree `d`.
pub fn hilbert_ym(n: usize, d: usize) -> Result<TruncatedSeries> {
    check_n(n)?;
    let n = n as i64;
    let denom = &TruncatedSeries::from_coeffs(d, &[1, 0, -1]) * &TruncatedSeries::from_coeffs(d, &[1, -n, 1]);
    denom.inverse()
}

/// Classical Möbius function.
pub fn moebius(mut m: usize) -> i64 {
    assert!(m >= 1);
    let mut result = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if m > 1 {
        result = -result;
    }
    result
}

fn divisors(j: usize) -> Vec<usize> {
    (1..=j).filter(|k| j.is_multiple_of(*k)).collect()
}

/// Power sums `t1^k + t2^k` of the roots of `t^2 - n t + 1`, for `k = 0..=kmax`.
pub fn root_power_sums(n: usize, kmax: usize) -> Vec<BigInt> {
    let n = BigInt::from(n);
    let mut p = vec![BigInt::from(2)];
    if kmax >= 1 {
        p.push(n.clone());
    }
    for k in 2..=kmax {
        let next = &n * &p[k - 1] - &p[k - 2];
        p.push(next);
    }
    p
}

/// `N(n)_j` for `j = 1..=jmax`: degrees 1 and 2 from the presentation, the
/// Möbius formula from degree 3 on.
pub fn lie_dims_moebius(n: usize, jmax: usize) -> Result<DimTable> {
    check_n(n)?;
    let p = root_power_sums(n, jmax);
    let mut values = BTreeMap::new();
    for j in 1..=jmax {
        let v = match j {
            1 => BigInt::from(n),
            2 => BigInt::from(n * (n - 1) / 2),
            _ => {
                let mut acc = BigInt::zero();
                for k in divisors(j) {
                    let mu = moebius(j / k);
                    if mu != 0 {
                        acc += BigInt::from(mu) * &p[k];
                    }
                }
                let (qt, r) = acc.div_rem(&BigInt::from(j));
                if !r.is_zero() || qt.is_negative() {
                    return Err(Error::Consistency(format!(
                        "Möbius sum {acc} at degree {j} is not a nonnegative multiple of {j}"
                    )));
                }
                qt
            }
        };
        values.insert(j, v);
    }
    Ok(DimTable { n, values })
}

/// `prod_{j=1}^{d} (1 - t^j)^(-dims_j)`, the Hilbert series of the
/// enveloping algebra of a graded Lie algebra with the given dimensions.
pub fn enveloping_series(dims: &DimTable, d: usize) -> Result<TruncatedSeries> {
    let mut acc = TruncatedSeries::one(d);
    for j in 1..=d {
        let m = dims.get(j).ok_or_else(|| {
            Error::InvalidInput(format!("dimension table has no entry for degree {j}"))
        })?;
        if m.is_zero() {
            continue;
        }
        acc = &acc * &TruncatedSeries::inverse_power_of_one_minus_tj(j, m, d);
    }
    Ok(acc)
}

/// Whether the product formula built from `dims` reproduces `hilbert_ym(n, d)`.
pub fn pbw_check(n: usize, dims: &DimTable, d: usize) -> Result<bool> {
    Ok(enveloping_series(dims, d)? == hilbert_ym(n, d)?)
}

/// Hilbert series of the generating space `W(n)`:
/// `((1-t)^n - 1 + nt - nt^3 + t^4) / (1-t)^n`.
pub fn w_series(n: usize, d: usize) -> Result<TruncatedSeries> {
    check_n(n)?;
    let ni = n as i64;
    let chi_num = TruncatedSeries::from_coeffs(d, &[1, -ni, 0, ni, -1]);
    let sym = TruncatedSeries::inverse_power_of_one_minus_t(&BigInt::from(n), d);
    Ok(&TruncatedSeries::one(d) - &(&chi_num * &sym))
}

/// Hilbert series of `U(tym(n))`, i.e. `hilbert_ym(n, d) * (1-t)^n`.
pub fn tym_enveloping_series(n: usize, d: usize) -> Result<TruncatedSeries> {
    let h = hilbert_ym(n, d)?;
    let mut one_minus_t_pow = TruncatedSeries::one(d);
    let one_minus_t = TruncatedSeries::from_coeffs(d, &[1, -1]);
    for _ in 0..n {
        one_minus_t_pow = &one_minus_t_pow * &one_minus_t;
    }
    Ok(&h * &one_minus_t_pow)
}

/// Whether `hilbert_ym(n, d) (1-t)^n` equals the free-algebra series
/// `1/(1 - W(n)(t))` through degree `d`.
pub fn freeness_identity(n: usize, d: usize) -> Result<bool> {
    let lhs = tym_enveloping_series(n, d)?;
    let w = w_series(n, d)?;
    let rhs = (&TruncatedSeries::one(d) - &w).inverse()?;
    Ok(lhs == rhs)
}
