//! Exact arithmetic in ℤ[q, q⁻¹].
//!
//! [`LaurentPoly`] keeps a sparse map exponent → nonzero coefficient. Quantum
//! integers and binomials use the balanced convention
//! `[m]_q = (q^m − q^{−m}) / (q − q^{−1})`, so every value here is invariant
//! under the bar involution `q ↦ q⁻¹`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QArithError {
    #[error("q-integer [{0}] requested with negative argument")]
    NegativeQInt(i64),
    #[error("q-binomial [{n} choose {k}] out of range")]
    BinomialRange { n: i64, k: i64 },
    #[error("symmetrizer must be positive, got {0}")]
    NonPositiveSymmetrizer(i64),
    #[error("cannot evaluate at q = 0")]
    EvalAtZero,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division is not exact")]
    InexactDivision,
}

/// Element of ℤ[q, q⁻¹].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c · q^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        LaurentPoly { coeffs }
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(1, e)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// Build from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// If `self = q^e` exactly, returns `e`.
    pub fn as_q_power(&self) -> Option<i64> {
        if self.coeffs.len() != 1 {
            return None;
        }
        let (e, c) = self.coeffs.iter().next()?;
        c.is_one().then_some(*e)
    }

    pub fn scalar_mul(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    /// The bar involution `q ↦ q⁻¹`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Substitute `q ↦ q^d`.
    pub fn substitute_power(&self, d: i64) -> Self {
        LaurentPoly::from_terms(self.coeffs.iter().map(|(e, c)| (e * d, c.clone())))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact rational value at `q = q0`.
    pub fn eval(&self, q0: &BigRational) -> Result<BigRational, QArithError> {
        if q0.is_zero() {
            return Err(QArithError::EvalAtZero);
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.coeffs {
            let term = if *e >= 0 {
                num_traits::pow(q0.clone(), *e as usize)
            } else {
                num_traits::pow(q0.recip(), e.unsigned_abs() as usize)
            };
            acc += term * BigRational::from_integer(c.clone());
        }
        Ok(acc)
    }

    /// Exact quotient `self / divisor`; fails unless the division leaves no remainder.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, QArithError> {
        let (dlo, dhi) = match (divisor.min_exp(), divisor.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(QArithError::DivisionByZero),
        };
        let lead = divisor.coeffs[&dhi].clone();
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some(rhi) = rem.max_exp() {
            let rlo = rem.min_exp().unwrap_or(rhi);
            // the remainder must keep a span at least that of the divisor
            if rhi - rlo < dhi - dlo {
                return Err(QArithError::InexactDivision);
            }
            let c = &rem.coeffs[&rhi];
            if !(c % &lead).is_zero() {
                return Err(QArithError::InexactDivision);
            }
            let factor = LaurentPoly::monomial(c / &lead, rhi - dhi);
            rem = &rem - &(&factor * divisor);
            quot = &quot + &factor;
        }
        Ok(quot)
    }
}

impl fmt::Display for LaurentPoly {
    /// Decreasing exponents, e.g. `q^4 + q^2 + 2 + q^-2 + q^-4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let var = match *e {
                0 => String::new(),
                1 => "q".to_string(),
                e => format!("q^{e}"),
            };
            if var.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{abs}{var}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse Laurent polynomial term '{0}'")]
pub struct ParsePolyError(String);

impl std::str::FromStr for LaurentPoly {
    type Err = ParsePolyError;

    /// Parses the canonical string form produced by `Display`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(LaurentPoly::zero());
        }
        let mut p = LaurentPoly::zero();
        let mut rest = s;
        let mut sign = 1i64;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        }
        loop {
            let (term, next) = match (rest.find(" + "), rest.find(" - ")) {
                (Some(a), Some(b)) if a < b => (&rest[..a], Some((1, &rest[a + 3..]))),
                (_, Some(b)) => (&rest[..b], Some((-1, &rest[b + 3..]))),
                (Some(a), None) => (&rest[..a], Some((1, &rest[a + 3..]))),
                (None, None) => (rest, None),
            };
            let bad = || ParsePolyError(term.to_string());
            let (coef, exp) = match term.find('q') {
                None => (term.parse::<BigInt>().map_err(|_| bad())?, 0),
                Some(pos) => {
                    let c = if pos == 0 {
                        BigInt::one()
                    } else {
                        term[..pos].parse::<BigInt>().map_err(|_| bad())?
                    };
                    let tail = &term[pos + 1..];
                    let e = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse::<i64>()
                            .map_err(|_| bad())?
                    };
                    (c, e)
                }
            };
            p.add_term(exp, coef * sign);
            match next {
                Some((sg, r)) => {
                    sign = sg;
                    rest = r;
                }
                None => break,
            }
        }
        Ok(p)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c.clone());
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// `[m]_{q^d} = q^{d(m−1)} + q^{d(m−3)} + ⋯ + q^{−d(m−1)}`.
pub fn qint(m: i64, d: i64) -> Result<LaurentPoly, QArithError> {
    if m < 0 {
        return Err(QArithError::NegativeQInt(m));
    }
    if d <= 0 {
        return Err(QArithError::NonPositiveSymmetrizer(d));
    }
    Ok(LaurentPoly::from_terms(
        (0..m).map(|k| (d * (m - 1 - 2 * k), 1)),
    ))
}

/// `[m]_{q^d}` extended to negative `m` by `[−m] = −[m]`.
pub fn qint_signed(m: i64, d: i64) -> Result<LaurentPoly, QArithError> {
    if m < 0 {
        Ok(-qint(-m, d)?)
    } else {
        qint(m, d)
    }
}

/// `[n]_{q^d}!`.
pub fn qfactorial(n: i64, d: i64) -> Result<LaurentPoly, QArithError> {
    if n < 0 {
        return Err(QArithError::NegativeQInt(n));
    }
    let mut acc = LaurentPoly::one();
    for m in 2..=n {
        acc = &acc * &qint(m, d)?;
    }
    Ok(acc)
}

/// Balanced Gaussian binomial `[n; k]_{q^d} = [n]! / ([k]! [n−k]!)`, via exact division.
pub fn qbinom(n: i64, k: i64, d: i64) -> Result<LaurentPoly, QArithError> {
    if n < 0 || k < 0 || k > n {
        return Err(QArithError::BinomialRange { n, k });
    }
    if d <= 0 {
        return Err(QArithError::NonPositiveSymmetrizer(d));
    }
    let k = k.min(n - k);
    // [n][n−1]⋯[n−k+1] / [k]!
    let mut num = LaurentPoly::one();
    for m in (n - k + 1)..=n {
        num = &num * &qint(m, d)?;
    }
    num.div_exact(&qfactorial(k, d)?)
}

/// Exact value of `p` at `q = q0`.
pub fn eval(p: &LaurentPoly, q0: &BigRational) -> Result<BigRational, QArithError> {
    p.eval(q0)
}

pub fn bar(p: &LaurentPoly) -> LaurentPoly {
    p.bar()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn ring_examples() {
        assert!((LaurentPoly::q_pow(1) * LaurentPoly::q_pow(-1)).is_one());
        let s = lp(&[(1, 1), (-1, 1)]);
        assert_eq!(&s * &s, lp(&[(2, 1), (0, 2), (-2, 1)]));
        assert!((&s + &(-&s)).is_zero());
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let p = lp(&[(3, 2), (3, -2), (1, 1)]);
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.coeff(3), BigInt::zero());
    }

    #[test]
    fn qint_examples() {
        assert_eq!(qint(2, 1).unwrap(), lp(&[(1, 1), (-1, 1)]));
        assert_eq!(qint(3, 1).unwrap(), lp(&[(2, 1), (0, 1), (-2, 1)]));
        assert_eq!(qint(2, 2).unwrap(), lp(&[(2, 1), (-2, 1)]));
        assert!(qint(0, 1).unwrap().is_zero());
        assert!(qint(1, 3).unwrap().is_one());
        assert_eq!(qint(-1, 1), Err(QArithError::NegativeQInt(-1)));
        assert_eq!(qint_signed(-2, 1).unwrap(), -qint(2, 1).unwrap());
    }

    #[test]
    fn qint_matches_defining_quotient() {
        // (q^m − q^{−m}) = [m]_q (q − q^{−1})
        let denom = lp(&[(1, 1), (-1, -1)]);
        for m in 0..15 {
            let numer = lp(&[(m, 1), (-m, -1)]);
            assert_eq!(&qint(m, 1).unwrap() * &denom, numer);
            assert_eq!(numer.div_exact(&denom).unwrap(), qint(m, 1).unwrap());
        }
    }

    #[test]
    fn qbinom_examples() {
        assert_eq!(qbinom(2, 1, 1).unwrap(), qint(2, 1).unwrap());
        assert_eq!(
            qbinom(4, 2, 1).unwrap(),
            lp(&[(4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1)])
        );
        assert!(qbinom(7, 0, 2).unwrap().is_one());
        assert!(qbinom(7, 7, 2).unwrap().is_one());
        assert!(qbinom(3, 4, 1).is_err());
        assert!(qbinom(3, -1, 1).is_err());
    }

    #[test]
    fn inexact_division_is_an_error() {
        let p = lp(&[(2, 1), (0, 1)]);
        let d = lp(&[(1, 2), (0, 1)]);
        assert_eq!(p.div_exact(&d), Err(QArithError::InexactDivision));
        assert_eq!(
            p.div_exact(&LaurentPoly::zero()),
            Err(QArithError::DivisionByZero)
        );
        assert_eq!(
            lp(&[(1, 1)]).div_exact(&lp(&[(1, 1), (0, 1)])),
            Err(QArithError::InexactDivision)
        );
    }

    #[test]
    fn eval_and_bar_examples() {
        let s = lp(&[(1, 1), (-1, 1)]);
        assert_eq!(s.eval(&rat(2, 1)).unwrap(), rat(5, 2));
        assert_eq!(s.eval(&BigRational::zero()), Err(QArithError::EvalAtZero));
        assert_eq!(lp(&[(2, 1), (-1, -3)]).bar(), lp(&[(-2, 1), (1, -3)]));
    }

    #[test]
    fn canonical_string() {
        assert_eq!(
            qbinom(4, 2, 1).unwrap().to_string(),
            "q^4 + q^2 + 2 + q^-2 + q^-4"
        );
        assert_eq!(
            lp(&[(1, -1), (0, 3), (-1, -2)]).to_string(),
            "-q + 3 - 2q^-1"
        );
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-6i64..6, -20i64..20), 0..6).prop_map(|t| lp(&t))
    }

    proptest! {
        #[test]
        fn string_form_round_trips(p in arb_poly()) {
            let s = p.to_string();
            prop_assert_eq!(s.parse::<LaurentPoly>().unwrap(), p);
        }

        #[test]
        fn additive_inverse(p in arb_poly()) {
            prop_assert!((&p + &(-&p)).is_zero());
        }

        #[test]
        fn eval_is_multiplicative(p in arb_poly(), r in arb_poly(), n in 1i64..7, m in 1i64..7) {
            let x = rat(n, m);
            let lhs = (&p * &r).eval(&x).unwrap();
            prop_assert_eq!(lhs, p.eval(&x).unwrap() * r.eval(&x).unwrap());
        }

        #[test]
        fn bar_is_involutive_automorphism(p in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(p.bar().bar(), p.clone());
            prop_assert_eq!((&p * &r).bar(), &p.bar() * &r.bar());
        }

        #[test]
        fn product_divides_back(p in arb_poly(), r in arb_poly()) {
            prop_assume!(!r.is_zero());
            prop_assert_eq!((&p * &r).div_exact(&r).unwrap(), p);
        }
    }
}
