//! Exact scalars: Gaussian rationals `a + b i` with arbitrary-precision
//! rational parts, and univariate polynomials in a formal variable `v`.
//!
//! Every induced-matrix routine is generic over [`Ring`], so the same code
//! computes symmetric powers of numeric matrices and of matrices whose
//! entries are polynomials in `v`.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Commutative ring operations needed by the induced-matrix code.
///
/// `div_int` is exact division by a positive integer; every implementor has
/// characteristic zero with rational coefficients, so it never loses
/// information. `conj` is complex conjugation of coefficients (the formal
/// variables are treated as real).
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_integer(n: &BigInt) -> Self;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn div_int(&self, n: &BigUint) -> Self;
    fn conj(&self) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_integer(&BigInt::from(n))
    }

    fn mul_int(&self, n: i64) -> Self {
        self.mul_ref(&Self::from_i64(n))
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc.mul_ref(self);
        }
        acc
    }
}

/// An element `re + im·i` of the field Q(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(Rational::from_integer(n.into()))
    }

    /// `num/den`, real. Panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(Rational::new(num.into(), den.into()))
    }

    /// `(re_num/re_den) + (im_num/im_den) i`.
    pub fn complex(re: (i64, i64), im: (i64, i64)) -> Self {
        Self::new(
            Rational::new(re.0.into(), re.1.into()),
            Rational::new(im.0.into(), im.1.into()),
        )
    }

    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    /// `|z|^2 = re^2 + im^2`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::new(&self.re / &n, -&self.im / &n))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Positive real part check used by the weight and norm validators.
    pub fn is_positive_real(&self) -> bool {
        self.is_real() && self.re.is_positive()
    }
}

impl Ring for GaussianRational {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::from_int(1)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn from_integer(n: &BigInt) -> Self {
        Self::real(Rational::from_integer(n.clone()))
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_int(&self, n: &BigUint) -> Self {
        let n = Rational::from_integer(BigInt::from(n.clone()));
        Self::new(&self.re / &n, &self.im / &n)
    }
    fn conj(&self) -> Self {
        self.conjugate()
    }
}

impl From<Rational> for GaussianRational {
    fn from(re: Rational) -> Self {
        Self::real(re)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> Self {
        -&self
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Renders with the scalar text grammar: `3/5`, `-4/5i`, `1+8i`, `-9/2i`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write_rational(f, &self.re);
        }
        if !self.re.is_zero() {
            write_rational(f, &self.re)?;
            if self.im.is_positive() {
                f.write_str("+")?;
            }
        }
        write_rational(f, &self.im)?;
        f.write_str("i")
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str, whole: &str) -> Result<Rational> {
    let err = |reason| Error::Parse {
        input: whole.to_string(),
        reason,
    };
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) {
        return Err(err("expected digits"));
    }
    let mut numer: BigInt = num.parse().map_err(|_| err("bad integer"))?;
    if neg {
        numer = -numer;
    }
    let denom: BigInt = match den {
        Some(d) if digits(d) => d.parse().map_err(|_| err("bad integer"))?,
        Some(_) => return Err(err("expected digits after '/'")),
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(numer, denom))
}

impl FromStr for GaussianRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Self::real(parse_rational(s, s)?));
        };
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        match split {
            None => Ok(Self::new(Rational::zero(), parse_rational(body, s)?)),
            Some(k) => {
                let re = parse_rational(&body[..k], s)?;
                let im_text = &body[k..];
                let im = parse_rational(im_text.strip_prefix('+').unwrap_or(im_text), s)?;
                Ok(Self::new(re, im))
            }
        }
    }
}

/// Polynomial in one formal variable `v` with Gaussian-rational
/// coefficients; `coeffs[k]` multiplies `v^k`. Trailing zeros are never
/// stored, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<GaussianRational>,
}

impl UniPoly {
    pub fn new(coeffs: Vec<GaussianRational>) -> Self {
        let mut p = Self { coeffs };
        p.normalize();
        p
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c·v^k`.
    pub fn monomial(c: GaussianRational, k: usize) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `a + b·v`.
    pub fn linear(a: GaussianRational, b: GaussianRational) -> Self {
        Self::new(vec![a, b])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| GaussianRational::from_int(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    /// Coefficient of `v^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, v: &GaussianRational) -> GaussianRational {
        self.coeffs
            .iter()
            .rev()
            .fold(GaussianRational::zero(), |acc, c| &(&acc * v) + c)
    }

    fn map(&self, f: impl Fn(&GaussianRational) -> GaussianRational) -> Self {
        Self::new(self.coeffs.iter().map(f).collect())
    }
}

impl Ring for UniPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::constant(GaussianRational::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_integer(n: &BigInt) -> Self {
        Self::constant(GaussianRational::from_integer(n))
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..len).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..len).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (a, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in rhs.coeffs.iter().enumerate() {
                out[a + b] += &(x * y);
            }
        }
        Self::new(out)
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

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<String> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match k {
                0 => alloc::format!("{c}"),
                1 => alloc::format!("({c})v"),
                _ => alloc::format!("({c})v^{k}"),
            });
        }
        f.write_str(&terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&g("1/2") + &g("1/2"), g("1"));
        assert_eq!(&g("1i") * &g("1i"), g("-1"));
        assert_eq!(g("-3/5").checked_div(&g("-3/5")).unwrap(), g("1"));
        assert_eq!(g("1").checked_div(&g("0")), Err(Error::DivisionByZero));
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(g("2i").conjugate(), g("-2i"));
        assert_eq!(g("1").conjugate(), g("1"));
        assert_eq!(g("8i").conjugate(), g("-8i"));
    }

    #[test]
    fn grammar_round_trip() {
        for s in ["3/5", "-4/5i", "1+8i", "-9/2i", "0", "-7", "1-1i", "-1/2+3/4i"] {
            assert_eq!(g(s).to_string(), s, "{s}");
        }
        assert_eq!(g("2/4"), g("1/2"));
        assert_eq!(g("0+2i").to_string(), "2i");
        assert_eq!(g("5+0i").to_string(), "5");
    }

    #[test]
    fn grammar_rejects() {
        for s in ["", "i", "1/0", "+3", "1+-2i", "a", "1.5", "1/2/3", "3 ", "--1", "1+i"] {
            assert!(s.parse::<GaussianRational>().is_err(), "{s:?}");
        }
    }

    #[test]
    fn unipoly_examples() {
        let one_plus = UniPoly::from_ints(&[1, 1]);
        let one_minus = UniPoly::from_ints(&[1, -1]);
        assert_eq!(one_plus.mul_ref(&one_minus), UniPoly::from_ints(&[1, 0, -1]));
        assert_eq!(
            one_plus.pow(2).mul_ref(&one_minus.pow(2)),
            UniPoly::from_ints(&[1, 0, -2, 0, 1])
        );
        let p = UniPoly::from_ints(&[3, 0, 2]);
        assert_eq!(UniPoly::zero().add_ref(&p), p);
        assert_eq!(p.sub_ref(&p), UniPoly::zero());
        assert_eq!(UniPoly::zero().degree(), None);
        assert!(UniPoly::from_ints(&[0, 0, 0]).coeffs().is_empty());
    }

    // Brute-force convolution against explicit expansion of (1+v)^2(1-v)^2.
    #[test]
    fn unipoly_convolution_oracle() {
        let factors = [[1i64, 1], [1, 1], [1, -1], [1, -1]];
        let mut acc = vec![1i64];
        for f in factors {
            let mut next = vec![0i64; acc.len() + 1];
            for (a, x) in acc.iter().enumerate() {
                for (b, y) in f.iter().enumerate() {
                    next[a + b] += x * y;
                }
            }
            acc = next;
        }
        assert_eq!(acc, vec![1, 0, -2, 0, 1]);
        let p = UniPoly::from_ints(&[1, 1])
            .pow(2)
            .mul_ref(&UniPoly::from_ints(&[1, -1]).pow(2));
        assert_eq!(p, UniPoly::from_ints(&acc));
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-1_000_000i64..=1_000_000, 1i64..=1_000_000).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
    }

    fn gauss() -> impl Strategy<Value = GaussianRational> {
        (small_rational(), small_rational()).prop_map(|(re, im)| GaussianRational::new(re, im))
    }

    fn poly() -> impl Strategy<Value = UniPoly> {
        proptest::collection::vec(gauss(), 0..=7).prop_map(UniPoly::new)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn field_axioms(a in gauss(), b in gauss(), c in gauss()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a - &a, GaussianRational::zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), GaussianRational::one());
            }
            prop_assert_eq!(a.conjugate().conjugate(), a.clone());
            prop_assert!(!(&a * &a.conjugate()).im.is_positive() && (&a * &a.conjugate()).is_real());
        }

        #[test]
        fn canonical_text_is_idempotent(a in gauss()) {
            let once: GaussianRational = a.to_string().parse().unwrap();
            prop_assert_eq!(&once, &a);
            prop_assert_eq!(once.to_string(), a.to_string());
            prop_assert!(a.re.denom().is_positive() && a.im.denom().is_positive());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn unipoly_ring_axioms(p in poly(), q in poly(), r in poly()) {
            prop_assert_eq!(p.mul_ref(&q.add_ref(&r)), p.mul_ref(&q).add_ref(&p.mul_ref(&r)));
            prop_assert_eq!(p.mul_ref(&q).mul_ref(&r), p.mul_ref(&q.mul_ref(&r)));
            prop_assert_eq!(p.mul_ref(&q), q.mul_ref(&p));
            if let (Some(dp), Some(dq)) = (p.degree(), q.degree()) {
                prop_assert_eq!(p.mul_ref(&q).degree(), Some(dp + dq));
            }
            prop_assert_eq!(p.add_ref(&p.neg_ref()), UniPoly::zero());
        }
    }
}
