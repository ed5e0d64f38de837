//! Truncated Laurent series in `q^{1/24}` with exact rational coefficients.
//!
//! Exponents are stored as integer numerators over the fixed denominator 24,
//! so `q^{1/4}` is numerator 6 and `q` is numerator 24. A series carries its
//! `order`: the largest numerator whose coefficient is known exactly. Every
//! operation propagates the order so that results never claim more precision
//! than their inputs support.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::SeriesError;

/// Exponent numerators per unit power of `q`.
pub const DENOM: i64 = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSeries {
    order: i64,
    coeffs: BTreeMap<i64, BigRational>,
}

impl FormalSeries {
    pub fn zero(order: i64) -> Self {
        FormalSeries { order, coeffs: BTreeMap::new() }
    }

    pub fn one(order: i64) -> Self {
        Self::constant(BigRational::one(), order)
    }

    pub fn constant(c: BigRational, order: i64) -> Self {
        Self::from_terms(order, std::iter::once((0, c)))
    }

    /// Builds a series from `(numerator, coefficient)` pairs. Duplicate
    /// exponents are summed; terms above `order` and zero sums are dropped.
    pub fn from_terms<I>(order: i64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let mut coeffs: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (e, c) in terms {
            if e > order || c.is_zero() {
                continue;
            }
            *coeffs.entry(e).or_insert_with(BigRational::zero) += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        FormalSeries { order, coeffs }
    }

    /// Integer-coefficient convenience wrapper around [`FormalSeries::from_terms`].
    pub fn from_int_terms<I>(order: i64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        Self::from_terms(
            order,
            terms
                .into_iter()
                .map(|(e, c)| (e, BigRational::from_integer(BigInt::from(c)))),
        )
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Valuation, or `order + 1` for a series that vanishes through its order.
    fn valuation_bound(&self) -> i64 {
        self.valuation().unwrap_or(self.order + 1)
    }

    pub fn truncate(&self, order: i64) -> Self {
        let order = order.min(self.order);
        FormalSeries {
            order,
            coeffs: self
                .coeffs
                .range(..=order)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Substitutes `q -> q^k`.
    pub fn dilate(&self, k: i64) -> Self {
        assert!(k >= 1, "dilation factor must be positive");
        FormalSeries {
            order: self.order * k,
            coeffs: self.coeffs.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        FormalSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let terms = self
            .coeffs
            .iter()
            .chain(other.coeffs.iter())
            .map(|(e, c)| (*e, c.clone()));
        Self::from_terms(order, terms)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        FormalSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    /// Exact product. The result is known through
    /// `min(order_a + val_b, order_b + val_a)`.
    pub fn mul(&self, other: &Self) -> Self {
        let order = (self.order + other.valuation_bound()).min(other.order + self.valuation_bound());
        if self.is_zero() || other.is_zero() {
            return Self::zero(order);
        }
        let (da, na) = self.integer_form();
        let (db, nb) = other.integer_form();
        let lo = na[0].0 + nb[0].0;
        if lo > order {
            return Self::zero(order);
        }
        let width = (order - lo + 1) as usize;
        let denom = da * db;

        let fits_i128 = {
            let bits = |v: &[(i64, BigInt)]| v.iter().map(|(_, c)| c.bits()).max().unwrap_or(0);
            let len_bits = 64 - (na.len().min(nb.len()) as u64).leading_zeros() as u64;
            bits(&na) + bits(&nb) + len_bits <= 125
        };

        let coeffs = if fits_i128 {
            let a: Vec<(i64, i128)> = na.iter().map(|(e, c)| (*e, c.to_i128().unwrap())).collect();
            let b: Vec<(i64, i128)> = nb.iter().map(|(e, c)| (*e, c.to_i128().unwrap())).collect();
            let mut acc = vec![0i128; width];
            for &(ea, ca) in &a {
                for &(eb, cb) in &b {
                    let e = ea + eb;
                    if e > order {
                        break;
                    }
                    acc[(e - lo) as usize] += ca * cb;
                }
            }
            collect_dense(lo, acc.into_iter().map(BigInt::from), &denom)
        } else {
            let mut acc = vec![BigInt::zero(); width];
            for (ea, ca) in &na {
                for (eb, cb) in &nb {
                    let e = ea + eb;
                    if e > order {
                        break;
                    }
                    acc[(e - lo) as usize] += ca * cb;
                }
            }
            collect_dense(lo, acc.into_iter(), &denom)
        };
        FormalSeries { order, coeffs }
    }

    /// Multiplicative inverse as a Laurent series.
    ///
    /// Writing `self = q^v * u` with `u(0) != 0`, the inverse is
    /// `q^{-v} / u`, known through `order - 2v`.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let v = self.valuation().ok_or(SeriesError::NotInvertible { order: self.order })?;
        let rel_order = self.order - v;
        let unit: Vec<(i64, &BigRational)> = self.coeffs.iter().map(|(e, c)| (e - v, c)).collect();
        let step = unit
            .iter()
            .skip(1)
            .fold(0i64, |g, (e, _)| g.gcd(e))
            .max(1);
        let n = (rel_order / step) as usize;
        let idx: Vec<(usize, &BigRational)> = unit
            .iter()
            .map(|(e, c)| ((e / step) as usize, *c))
            .take_while(|(i, _)| *i <= n)
            .collect();

        let u0 = idx[0].1;
        let integral = u0.is_integer()
            && u0.numer().abs().is_one()
            && idx.iter().all(|(_, c)| c.is_integer());

        let mut terms = Vec::new();
        if integral {
            let inv0 = u0.numer().clone();
            let mut w: Vec<BigInt> = Vec::with_capacity(n + 1);
            w.push(inv0.clone());
            for i in 1..=n {
                let mut acc = BigInt::zero();
                for (j, c) in idx.iter().skip(1) {
                    if *j > i {
                        break;
                    }
                    if !w[i - j].is_zero() {
                        acc += c.numer() * &w[i - j];
                    }
                }
                w.push(-(acc * &inv0));
            }
            for (i, c) in w.into_iter().enumerate() {
                terms.push((i as i64 * step - v, BigRational::from_integer(c)));
            }
        } else {
            let inv0 = u0.recip();
            let mut w: Vec<BigRational> = Vec::with_capacity(n + 1);
            w.push(inv0.clone());
            for i in 1..=n {
                let mut acc = BigRational::zero();
                for (j, c) in idx.iter().skip(1) {
                    if *j > i {
                        break;
                    }
                    if !w[i - j].is_zero() {
                        acc += *c * &w[i - j];
                    }
                }
                w.push(-(acc * &inv0));
            }
            for (i, c) in w.into_iter().enumerate() {
                terms.push((i as i64 * step - v, c));
            }
        }
        Ok(Self::from_terms(rel_order - v, terms))
    }

    /// Integer power; negative exponents go through [`FormalSeries::reciprocal`].
    pub fn pow(&self, e: i64) -> Result<Self, SeriesError> {
        if e == 0 {
            return Ok(Self::one(self.order));
        }
        let base = if e < 0 { self.reciprocal()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut result: Option<FormalSeries> = None;
        let mut square = base;
        loop {
            if exp & 1 == 1 {
                result = Some(match result {
                    None => square.clone(),
                    Some(r) => r.mul(&square),
                });
            }
            exp >>= 1;
            if exp == 0 {
                break;
            }
            square = square.mul(&square);
        }
        Ok(result.expect("nonzero exponent"))
    }

    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&other.reciprocal()?))
    }

    /// Coefficients as `(numerator, "p/q")` pairs in ascending order;
    /// integral coefficients print without a denominator.
    pub fn dump(&self) -> Vec<(i64, String)> {
        self.coeffs.iter().map(|(e, c)| (*e, c.to_string())).collect()
    }

    /// Common denominator `d` and integer numerators with `self = (1/d) * sum`.
    fn integer_form(&self) -> (BigInt, Vec<(i64, BigInt)>) {
        let d = self
            .coeffs
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self
            .coeffs
            .iter()
            .map(|(e, c)| (*e, c.numer() * (&d / c.denom())))
            .collect();
        (d, nums)
    }
}

fn collect_dense<I>(lo: i64, acc: I, denom: &BigInt) -> BTreeMap<i64, BigRational>
where
    I: Iterator<Item = BigInt>,
{
    acc.enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (lo + i as i64, BigRational::new(c, denom.clone())))
        .collect()
}

impl fmt::Display for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else if i > 0 { "+" } else { "" };
            if i > 0 {
                write!(f, " {} ", sign)?;
            } else {
                write!(f, "{}", sign)?;
            }
            let mag = c.abs();
            let exp = BigRational::new(BigInt::from(*e), BigInt::from(DENOM));
            match (*e == 0, mag.is_one()) {
                (true, _) => write!(f, "{}", mag)?,
                (false, true) => write!(f, "q^({})", exp)?,
                (false, false) => write!(f, "{}*q^({})", mag, exp)?,
            }
        }
        write!(f, " + O(q^({}))", BigRational::new(BigInt::from(self.order + 1), BigInt::from(DENOM)))
    }
}

impl Add for &FormalSeries {
    type Output = FormalSeries;
    fn add(self, rhs: &FormalSeries) -> FormalSeries {
        FormalSeries::add(self, rhs)
    }
}

impl Sub for &FormalSeries {
    type Output = FormalSeries;
    fn sub(self, rhs: &FormalSeries) -> FormalSeries {
        FormalSeries::sub(self, rhs)
    }
}

impl Mul for &FormalSeries {
    type Output = FormalSeries;
    fn mul(self, rhs: &FormalSeries) -> FormalSeries {
        FormalSeries::mul(self, rhs)
    }
}

impl Neg for &FormalSeries {
    type Output = FormalSeries;
    fn neg(self) -> FormalSeries {
        FormalSeries::neg(self)
    }
}

pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(order: i64, terms: &[(i64, i64)]) -> FormalSeries {
        FormalSeries::from_int_terms(order, terms.iter().copied())
    }

    #[test]
    fn zero_coefficients_are_not_stored() {
        let s = poly(48, &[(0, 1), (24, 2), (24, -2), (96, 5)]);
        assert_eq!(s.len(), 1);
        assert_eq!(s.coeff(24), BigRational::zero());
    }

    #[test]
    fn pow_zero_is_one() {
        let s = poly(240, &[(0, 3), (24, 1)]);
        assert_eq!(s.pow(0).unwrap(), FormalSeries::one(240));
    }

    #[test]
    fn geometric_reciprocal() {
        // 1/(1 - q) = 1 + q + q^2 + ...
        let s = poly(240, &[(0, 1), (24, -1)]);
        let r = s.reciprocal().unwrap();
        assert_eq!(r.order(), 240);
        for k in 0..=10 {
            assert_eq!(r.coeff(24 * k), BigRational::one());
        }
    }

    #[test]
    fn reciprocal_with_positive_valuation_is_laurent() {
        // 1/(q^{1/24}(1 - q)) = q^{-1/24}(1 + q + ...), known through 240 - 2
        let s = poly(240, &[(1, 1), (25, -1)]);
        let r = s.reciprocal().unwrap();
        assert_eq!(r.order(), 238);
        assert_eq!(r.valuation(), Some(-1));
        assert_eq!(r.coeff(23), BigRational::one());
        assert!(r.mul(&s).truncate(200) == FormalSeries::one(200));
    }

    #[test]
    fn reciprocal_with_rational_leading_coefficient() {
        let s = FormalSeries::from_terms(96, vec![(0, rat(1, 2)), (24, rat(3, 4))]);
        let r = s.reciprocal().unwrap();
        assert_eq!(r.coeff(0), rat(2, 1));
        assert_eq!(r.coeff(24), rat(-3, 1));
        assert_eq!(r.mul(&s), FormalSeries::one(96));
    }

    #[test]
    fn zero_series_is_not_invertible() {
        assert!(matches!(
            FormalSeries::zero(48).reciprocal(),
            Err(SeriesError::NotInvertible { .. })
        ));
    }

    #[test]
    fn mul_tracks_truncation() {
        let a = poly(100, &[(10, 1), (50, 1)]);
        let b = poly(60, &[(0, 1), (30, 2)]);
        let p = a.mul(&b);
        assert_eq!(p.order(), 70);
        assert_eq!(p.coeff(40), rat(2, 1));
        assert_eq!(p.coeff(50), rat(1, 1));
        assert_eq!(p.coeff(80), rat(0, 1));
    }

    #[test]
    fn bigint_path_matches_i128_path() {
        let big = BigRational::from_integer(BigInt::from(1u8) << 100);
        let a = FormalSeries::from_terms(48, vec![(0, big.clone()), (24, big.clone())]);
        let b = FormalSeries::from_terms(48, vec![(0, big.clone()), (24, -big.clone())]);
        let p = a.mul(&b);
        assert_eq!(p.coeff(0), &big * &big);
        assert_eq!(p.coeff(24), BigRational::zero());
        assert_eq!(p.coeff(48), -(&big * &big));
    }

    #[test]
    fn display_is_readable() {
        let s = FormalSeries::from_terms(48, vec![(0, rat(1, 1)), (6, rat(-2, 1)), (24, rat(1, 4))]);
        assert_eq!(s.to_string(), "1 - 2*q^(1/4) + 1/4*q^(1) + O(q^(49/24))");
    }
}
