//! Brute-force reference engine for symmetric powers.
//!
//! Polynomials are sparse maps from exponent vectors to coefficients and
//! `(Ax)^m` is expanded by plain repeated multiplication. Nothing here uses
//! the multi-index tables or the level recurrence of the main path, so
//! agreement between the two is independent evidence. Speed is not a goal.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};

use crate::error::{Error, Result};
use crate::matrix::{ExactMatrix, Matrix};
use crate::scalar::{GaussianRational, Ring};

/// Sparse multivariate polynomial. Exponent vectors are stored with
/// trailing zeros stripped, so the same monomial has one key regardless of
/// how many variables the caller has in mind. No zero coefficients are kept.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultivarPoly {
    terms: BTreeMap<Vec<u32>, GaussianRational>,
}

fn trim(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl MultivarPoly {
    pub fn constant(c: GaussianRational) -> Self {
        let mut p = Self::default();
        p.add_term(Vec::new(), c);
        p
    }

    /// `c · x_k`.
    pub fn variable(k: usize, c: GaussianRational) -> Self {
        let mut e = vec![0; k + 1];
        e[k] = 1;
        let mut p = Self::default();
        p.add_term(e, c);
        p
    }

    /// `Σ_j coeffs[j] x_j`.
    pub fn linear(coeffs: &[GaussianRational]) -> Self {
        coeffs.iter().enumerate().fold(Self::default(), |acc, (k, c)| {
            acc.add_ref(&Self::variable(k, c.clone()))
        })
    }

    fn add_term(&mut self, exponent: Vec<u32>, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let key = trim(exponent);
        let sum = match self.terms.get(&key) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    /// Coefficient of `x^exponent`.
    pub fn coeff(&self, exponent: &[u32]) -> GaussianRational {
        self.terms.get(&trim(exponent.to_vec())).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when every monomial in the support has total degree `degree`.
    pub fn is_homogeneous(&self, degree: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == degree)
    }

    fn map(&self, f: impl Fn(&GaussianRational) -> GaussianRational) -> Self {
        let mut out = Self::default();
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }
}

impl Ring for MultivarPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::constant(GaussianRational::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_integer(n: &BigInt) -> Self {
        Self::constant(GaussianRational::from_integer(n))
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out = Self::default();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let len = ea.len().max(eb.len());
                let e = (0..len)
                    .map(|k| ea.get(k).copied().unwrap_or(0) + eb.get(k).copied().unwrap_or(0))
                    .collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
    fn neg_ref(&self) -> Self {
        self.map(|c| -c)
    }
    fn div_int(&self, n: &BigUint) -> Self {
        self.map(|c| c.div_int(n))
    }
    fn conj(&self) -> Self {
        self.map(GaussianRational::conjugate)
    }
}

impl core::fmt::Debug for MultivarPoly {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})x^{e:?}")?;
        }
        Ok(())
    }
}

/// `Π_i ((Ax)_i)^{m_i}` by repeated multiplication.
pub fn expand_power(a: &ExactMatrix, m: &[u32]) -> Result<MultivarPoly> {
    if !a.is_square() || a.rows() != m.len() {
        return Err(Error::Shape(
            "exponent length must match the square matrix extent".into(),
        ));
    }
    let mut acc = MultivarPoly::one();
    for (i, &mi) in m.iter().enumerate() {
        let row = MultivarPoly::linear(a.row(i));
        for _ in 0..mi {
            acc = acc.mul_ref(&row);
        }
    }
    Ok(acc)
}

/// All exponent vectors of `vars` entries summing to `degree`, by scanning
/// the full box `[0, degree]^vars`, sorted descending lexicographically.
pub fn monomials(vars: usize, degree: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut e = vec![0u32; vars];
    loop {
        if e.iter().sum::<u32>() == degree {
            out.push(e.clone());
        }
        // odometer increment
        let mut k = 0;
        loop {
            if k == vars {
                out.sort_by(|x, y| y.cmp(x));
                return out;
            }
            if e[k] < degree {
                e[k] += 1;
                break;
            }
            e[k] = 0;
            k += 1;
        }
    }
}

/// Induced matrix assembled from [`expand_power`] rows.
pub fn bar_via_oracle(a: &ExactMatrix, degree: u32, guard: usize) -> Result<ExactMatrix> {
    if !a.is_square() || a.rows() == 0 {
        return Err(Error::Shape("expected a non-empty square matrix".into()));
    }
    let vars = a.rows();
    // ν = binom(degree + d, d), counted without the multi-index module
    let mut nu: u128 = 1;
    for t in 1..vars as u128 {
        nu = nu.saturating_mul(u128::from(degree) + t) / t;
    }
    if nu > guard as u128 {
        return Err(Error::Capacity {
            nu: alloc::format!("{nu}"),
            limit: guard,
        });
    }
    let labels = monomials(vars, degree);
    let mut out = Matrix::zeros(labels.len(), labels.len());
    for (r, m) in labels.iter().enumerate() {
        let poly = expand_power(a, m)?;
        if !poly.is_homogeneous(degree) {
            return Err(Error::Identity("expansion is not homogeneous".into()));
        }
        for (c, n) in labels.iter().enumerate() {
            out.set(r, c, poly.coeff(n));
        }
    }
    Ok(out)
}

/// Columns Theorem cross-check: with `Λ = Σ_j v_j Λ_j` built from the
/// columns of `A`, the main-path power of `Λ` (over polynomials in `v`) is
/// diagonal and its `(m, m)` entry has `v^n` coefficient `Ā_{mn}`.
///
/// Returns the first failing `(m, n)` position, or `None` when it holds.
pub fn columns_theorem_mismatch(a: &ExactMatrix, degree: u32) -> Result<Option<(usize, usize)>> {
    let n = a.rows();
    let lambda: Matrix<MultivarPoly> = Matrix::diagonal((0..n).map(|i| MultivarPoly::linear(a.row(i))).collect());
    let lbar = crate::sympow::bar(&lambda, degree)?;
    let abar = crate::sympow::bar(a, degree)?;
    let labels = monomials(n, degree);
    for r in 0..labels.len() {
        for (c, label) in labels.iter().enumerate() {
            if r != c && !lbar.get(r, c).is_zero() {
                return Ok(Some((r, c)));
            }
            if lbar.get(r, r).coeff(label) != *abar.get(r, c) {
                return Ok(Some((r, c)));
            }
        }
    }
    Ok(None)
}
