//! Exact elements of cyclotomic fields.
//!
//! A [`Cyclotomic`] is stored in the canonical integral basis of `Q(ζ_n)`
//! for the least possible conductor `n`, so two values are equal exactly
//! when their records are identical. Coefficients are arbitrary precision
//! rationals.

mod basis;
mod serial;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use basis::{basis_exponents, normalize_conductor};
pub use serial::ParseError;

use basis::{add_term, canonicalize, Terms};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CyclotomicError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("galois exponent {k} is not coprime to conductor {conductor}")]
    NotCoprime { k: i64, conductor: u32 },
    #[error("value does not lie in Q(zeta_{0})")]
    NotInField(u32),
}

/// An element of `Q(ζ_n)` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u32,
    /// `(basis exponent, coefficient)`, sorted by exponent, no zero coefficients
    terms: Vec<(u32, BigRational)>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { conductor: 1, terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(v))
    }

    pub fn from_rational(q: BigRational) -> Self {
        if q.is_zero() {
            Self::zero()
        } else {
            Cyclotomic { conductor: 1, terms: vec![(0, q)] }
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    /// `ζ_n^k`
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n > 0, "conductor must be positive");
        let k = k.rem_euclid(n as i64) as u32;
        let mut t = Terms::new();
        t.insert(k, BigRational::one());
        Self::from_raw(n, t)
    }

    /// `Σ c_k ζ_n^k` for arbitrary integer exponents and coefficients.
    pub fn from_exponent_sum<I>(n: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        assert!(n > 0, "conductor must be positive");
        let mut t = Terms::new();
        for (k, c) in terms {
            let k = k.rem_euclid(n as i64) as u32;
            add_term(&mut t, k, BigRational::from_integer(c.into()));
        }
        Self::from_raw(n, t)
    }

    /// Canonicalize raw rational coefficients of `ζ_n^k`, `0 ≤ k < n`.
    pub fn from_rational_terms<I>(n: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, BigRational)>,
    {
        assert!(n > 0, "conductor must be positive");
        let mut t = Terms::new();
        for (k, c) in terms {
            add_term(&mut t, k % n, c);
        }
        Self::from_raw(n, t)
    }

    fn from_raw(n: u32, t: Terms) -> Self {
        let (conductor, t) = canonicalize(n, t);
        Cyclotomic { conductor, terms: t.into_iter().collect() }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Basis exponents and coefficients of the canonical record.
    pub fn terms(&self) -> &[(u32, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.terms.len() == 1 && self.terms[0].1.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        match (self.conductor, self.terms.as_slice()) {
            (1, []) => Some(BigRational::zero()),
            (1, [(_, q)]) => Some(q.clone()),
            _ => None,
        }
    }

    /// The value as a rational integer, when it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|v| v.to_i64())
    }

    /// Whether every canonical coefficient is a rational integer. Since the
    /// basis is integral this is exactly membership in `Z[ζ_n]`.
    pub fn has_integral_coefficients(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    /// Raw terms of `self` rewritten over `ζ_n` (`conductor | n`), unreduced.
    fn lift_terms(&self, n: u32) -> Terms {
        debug_assert_eq!(n % self.conductor, 0);
        let scale = n / self.conductor;
        self.terms
            .iter()
            .map(|(k, c)| (k * scale, c.clone()))
            .collect()
    }

    /// Coefficients in the canonical basis of `Q(ζ_n)`; `n` must be a
    /// multiple of the conductor.
    pub fn coordinates_in(&self, n: u32) -> Result<Vec<(u32, BigRational)>, CyclotomicError> {
        let n = normalize_conductor(n);
        if !n.is_multiple_of(self.conductor) {
            return Err(CyclotomicError::NotInField(n));
        }
        let t = basis::reduce_to_basis(n, self.lift_terms(n));
        Ok(t.into_iter().collect())
    }

    /// Apply `ζ ↦ ζ^k`.
    pub fn galois(&self, k: i64) -> Result<Self, CyclotomicError> {
        let n = self.conductor;
        let kk = k.rem_euclid(n as i64) as u64;
        if basis::gcd(kk, n as u64) != 1 && n > 1 {
            return Err(CyclotomicError::NotCoprime { k, conductor: n });
        }
        if n == 1 {
            return Ok(self.clone());
        }
        let mut t = Terms::new();
        for (e, c) in &self.terms {
            add_term(&mut t, ((*e as u64 * kk) % n as u64) as u32, c.clone());
        }
        Ok(Self::from_raw(n, t))
    }

    /// Like [`Cyclotomic::galois`] for `k` already known to be coprime to
    /// some multiple of the conductor.
    pub fn galois_unchecked(&self, k: i64) -> Self {
        self.galois(k).expect("galois exponent must be coprime")
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois_unchecked(-1)
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    pub fn inverse(&self) -> Result<Self, CyclotomicError> {
        if self.is_zero() {
            return Err(CyclotomicError::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            return Ok(Self::from_rational(q.recip()));
        }
        // product of the other conjugates is N(x)/x
        let n = self.conductor as i64;
        let mut others = Self::one();
        for k in 2..n {
            if basis::gcd(k as u64, n as u64) == 1 {
                others = &others * &self.galois_unchecked(k);
            }
        }
        let norm = (&others * self)
            .to_rational()
            .expect("field norm is rational");
        Ok(others.scale(&norm.recip()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, CyclotomicError> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(k, c)| (*k, c * q)).collect(),
        }
    }

    pub fn scale_int(&self, v: i64) -> Self {
        self.scale(&BigRational::from_integer(v.into()))
    }

    /// Whether the value lies in `Q(ζ_m)`.
    pub fn lies_in(&self, m: u32) -> bool {
        values_in_subcyclotomic(std::slice::from_ref(self), m)
    }

    /// Floating point approximation; for display and debugging only.
    pub fn to_complex_approx(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        self.terms.iter().fold((0.0, 0.0), |(re, im), (k, c)| {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * (*k as f64) / n;
            (re + c * ang.cos(), im + c * ang.sin())
        })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn binary(&self, rhs: &Self, sign: i8) -> Self {
        if self.conductor == 1 && rhs.conductor == 1 {
            let a = self.to_rational().unwrap();
            let b = rhs.to_rational().unwrap();
            return Self::from_rational(if sign > 0 { a + b } else { a - b });
        }
        let n = basis::lcm(self.conductor, rhs.conductor);
        let mut t = self.lift_terms(n);
        let scale = n / rhs.conductor;
        for (k, c) in &rhs.terms {
            let c = if sign > 0 { c.clone() } else { -c.clone() };
            add_term(&mut t, k * scale, c);
        }
        Self::from_raw(n, t)
    }

    fn product(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if let Some(q) = self.to_rational() {
            return rhs.scale(&q);
        }
        if let Some(q) = rhs.to_rational() {
            return self.scale(&q);
        }
        let n = basis::lcm(self.conductor, rhs.conductor);
        let (sa, sb) = (n / self.conductor, n / rhs.conductor);
        let mut t = Terms::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let k = ((ka * sa) as u64 + (kb * sb) as u64) % n as u64;
                add_term(&mut t, k as u32, ca * cb);
            }
        }
        Self::from_raw(n, t)
    }
}

/// True iff every value lies in the `m`-th cyclotomic field, decided by
/// invariance under every `ζ ↦ ζ^k` with `k ≡ 1 (mod m)`.
pub fn values_in_subcyclotomic(values: &[Cyclotomic], m: u32) -> bool {
    assert!(m > 0);
    let l = values
        .iter()
        .fold(1u32, |acc, v| basis::lcm(acc, v.conductor()));
    let big = basis::lcm(l, m);
    let mut k = 1u64 + m as u64;
    while k < big as u64 + 1 {
        if basis::gcd(k, big as u64) == 1 {
            for v in values {
                if v.galois_unchecked(k as i64) != *v {
                    return false;
                }
            }
        }
        k += m as u64;
    }
    true
}

/// Least common multiple of conductors.
pub fn common_conductor<'a, I: IntoIterator<Item = &'a Cyclotomic>>(values: I) -> u32 {
    values
        .into_iter()
        .fold(1u32, |acc, v| basis::lcm(acc, v.conductor()))
}

pub fn euler_phi(n: u32) -> u32 {
    basis::euler_phi(n)
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Cyclotomic {
    fn from(v: i64) -> Self {
        Self::from_integer(v)
    }
}

impl From<BigRational> for Cyclotomic {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A fixed total order (conductor, then terms) used for deterministic
/// sorting; it has no arithmetic meaning.
impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.conductor
            .cmp(&other.conductor)
            .then_with(|| self.terms.cmp(&other.terms))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                let f: fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic = $body;
                f(self, rhs)
            }
        }
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.binary(b, 1));
forward_binop!(Sub, sub, |a, b| a.binary(b, -1));
forward_binop!(Mul, mul, |a, b| a.product(b));
forward_binop!(Div, div, |a, b| a
    .checked_div(b)
    .expect("division by zero cyclotomic"));

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Cyclotomic> for Cyclotomic {
    fn mul_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self * rhs;
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |a, b| a + b)
    }
}

impl fmt::Display for Cyclotomic {
    /// `E(n)^k` notation, e.g. `-1`, `E(3)+2*E(3)^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            let root = match (self.conductor, *k) {
                (1, _) | (_, 0) => None,
                (n, 1) => Some(format!("E({n})")),
                (n, k) => Some(format!("E({n})^{k}")),
            };
            match root {
                None => write!(f, "{mag}")?,
                Some(r) if mag.is_one() => write!(f, "{r}")?,
                Some(r) => write!(f, "{mag}*{r}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    #[test]
    fn cube_roots_sum_to_minus_one() {
        assert_eq!(z(3, 1) + z(3, 2), Cyclotomic::from_integer(-1));
    }

    #[test]
    fn sixth_root_drops_to_conductor_three() {
        let x = z(6, 1);
        assert_eq!(x.conductor(), 3);
        assert_eq!(x, -z(3, 2));
    }

    #[test]
    fn i_squared() {
        let i = z(4, 1);
        assert_eq!(&i * &i, Cyclotomic::from_integer(-1));
        assert_eq!(i.conductor(), 4);
    }

    #[test]
    fn sqrt_minus_three() {
        // ζ3 - ζ3² = sqrt(-3)
        let s = z(3, 1) - z(3, 2);
        assert_eq!(&s * &s, Cyclotomic::from_integer(-3));
    }

    #[test]
    fn sqrt_two_in_conductor_eight() {
        let r = z(8, 1) + z(8, -1);
        assert!(r.is_real());
        assert!(!r.is_rational());
        assert_eq!(&r * &r, Cyclotomic::from_integer(2));
        assert_eq!(r.conductor(), 8);
    }

    #[test]
    fn conductor_fifteen_reduces() {
        // ζ15^5 = ζ3
        assert_eq!(z(15, 5), z(3, 1));
        assert_eq!(z(15, 5).conductor(), 3);
        // sum of all primitive 5th roots is -1
        let s: Cyclotomic = (1..5).map(|k| z(5, k)).sum();
        assert_eq!(s, Cyclotomic::from_integer(-1));
    }

    #[test]
    fn conj_of_cube_root() {
        assert_eq!(z(3, 1).conj(), z(3, 2));
    }

    #[test]
    fn galois_needs_coprime() {
        assert!(matches!(
            z(3, 1).galois(3),
            Err(CyclotomicError::NotCoprime { .. })
        ));
    }

    #[test]
    fn inverse_and_division() {
        let x = z(7, 1) + Cyclotomic::from_integer(2);
        let inv = x.inverse().unwrap();
        assert!((&x * &inv).is_one());
        assert_eq!(
            Cyclotomic::zero().inverse(),
            Err(CyclotomicError::DivisionByZero)
        );
    }

    #[test]
    fn subcyclotomic_membership() {
        assert!(values_in_subcyclotomic(&[Cyclotomic::from_integer(3)], 1));
        assert!(values_in_subcyclotomic(&[z(3, 1), z(3, 2)], 3));
        assert!(!values_in_subcyclotomic(&[z(3, 1)], 1));
        let s3: Vec<_> = [2, 0, -1].iter().map(|&v| Cyclotomic::from_integer(v)).collect();
        assert!(values_in_subcyclotomic(&s3, 1));
        // Q(ζ3) = Q(ζ6)
        assert!(values_in_subcyclotomic(&[z(3, 1)], 6));
        assert!(!values_in_subcyclotomic(&[z(4, 1)], 6));
    }

    #[test]
    fn display() {
        assert_eq!(Cyclotomic::from_integer(-1).to_string(), "-1");
        assert_eq!(z(3, 1).to_string(), "E(3)");
        assert_eq!((z(3, 1).scale_int(2) - z(3, 2)).to_string(), "2*E(3)-E(3)^2");
    }
}
