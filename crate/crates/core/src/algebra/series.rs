use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize};

use super::monomial::{Monomial, Var};
use super::poly::{fmt_terms, JsonTerm, MultiPoly};
use super::ring::Ring;
use crate::error::{Error, Result};

/// Truncated power series in the `x_k` variables with integer coefficients.
///
/// Truncation is by total degree: every `x_k` counts as degree one, and all
/// terms of total degree above `order` are discarded after each operation.
/// Binary operations on series of different orders truncate to the smaller.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSeries {
    order: u32,
    terms: BTreeMap<Monomial, BigInt>,
}

impl XSeries {
    pub fn zero(order: u32) -> Self {
        XSeries {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<T: Into<BigInt>>(c: T, order: u32) -> Self {
        let mut s = XSeries::zero(order);
        s.add_term(Monomial::one(), c.into());
        s
    }

    pub fn one(order: u32) -> Self {
        XSeries::constant(1, order)
    }

    /// The series `x_k`.
    pub fn x(k: u32, order: u32) -> Self {
        let mut s = XSeries::zero(order);
        s.add_term(Monomial::var(Var::X(k)), BigInt::one());
        s
    }

    /// Truncates a polynomial in the `x` variables. Fails on any `V_i`.
    pub fn from_poly(p: &MultiPoly, order: u32) -> Result<Self> {
        let mut s = XSeries::zero(order);
        for (m, c) in p.terms() {
            if let Some(&(v, _)) = m.factors().iter().find(|(v, _)| matches!(v, Var::V(_))) {
                return Err(Error::UnassignedVariable(v));
            }
            s.add_term(m.clone(), c.clone());
        }
        Ok(s)
    }

    /// Univariate series in `x_1` from a coefficient list.
    pub fn from_coeffs<T: Into<BigInt> + Clone>(coeffs: &[T], order: u32) -> Self {
        let mut s = XSeries::zero(order);
        for (d, c) in coeffs.iter().enumerate() {
            s.add_term(Monomial::pow(Var::X(1), d as u32), c.clone().into());
        }
        s
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&Monomial::one())
    }

    /// Coefficient of `x_1^d`; the natural accessor for univariate series.
    pub fn coeff_x1(&self, d: u32) -> BigInt {
        self.coeff(&Monomial::pow(Var::X(1), d))
    }

    /// Coefficients of `x_1^0 .. x_1^order`.
    pub fn univariate_coeffs(&self) -> Vec<BigInt> {
        (0..=self.order).map(|d| self.coeff_x1(d)).collect()
    }

    /// Lowest total degree carrying a nonzero coefficient; `None` for zero.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        debug_assert!(!m.has_v(), "series monomials carry only x variables");
        if c.is_zero() || m.degree() > self.order {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn truncate(&self, order: u32) -> XSeries {
        XSeries {
            order: order.min(self.order),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= order)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Keeps the order but drops every term of degree at least `degree`.
    pub fn mask_from(&self, degree: u32) -> XSeries {
        XSeries {
            order: self.order,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() < degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// `x_k * self`, exact through one degree more than `self`.
    pub fn times_x(&self, k: u32) -> XSeries {
        let xk = Monomial::var(Var::X(k));
        XSeries {
            order: self.order + 1,
            terms: self.terms.iter().map(|(m, c)| (m.mul(&xk), c.clone())).collect(),
        }
    }

    pub fn scale<T: Into<BigInt>>(&self, c: T) -> XSeries {
        let c = c.into();
        let mut out = XSeries::zero(self.order);
        for (m, k) in &self.terms {
            out.add_term(m.clone(), k * &c);
        }
        out
    }

    /// Multiplicative inverse; the constant term must be a unit of the
    /// integers. Newton iteration `b <- b (2 - a b)` doubles the number of
    /// correct degrees per step.
    pub fn inv(&self) -> Result<XSeries> {
        let c = self.constant_term();
        if !(c.is_one() || (-&c).is_one()) {
            return Err(Error::NonUnitConstant {
                constant: c.to_string(),
            });
        }
        let two = XSeries::constant(2, self.order);
        let mut b = XSeries::constant(c, self.order);
        let mut correct = 1u32;
        while correct <= self.order {
            b = &b * &(&two - &(self * &b));
            correct = correct.saturating_mul(2);
        }
        Ok(b)
    }

    /// Integer power; negative exponents go through [`XSeries::inv`].
    pub fn pow(&self, e: i64) -> Result<XSeries> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        Ok(base.pow_u(e.unsigned_abs()))
    }

    pub fn pow_u(&self, e: u64) -> XSeries {
        let mut acc = XSeries::one(self.order);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl<'a> Add<&'a XSeries> for &'a XSeries {
    type Output = XSeries;
    fn add(self, rhs: &XSeries) -> XSeries {
        let mut out = self.truncate(rhs.order);
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a XSeries> for &'a XSeries {
    type Output = XSeries;
    fn sub(self, rhs: &XSeries) -> XSeries {
        let mut out = self.truncate(rhs.order);
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &XSeries {
    type Output = XSeries;
    fn neg(self) -> XSeries {
        XSeries {
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a XSeries> for &'a XSeries {
    type Output = XSeries;
    fn mul(self, rhs: &XSeries) -> XSeries {
        let order = self.order.min(rhs.order);
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        // Both maps iterate by ascending degree, so the inner loop can stop
        // at the first term that overshoots the truncation order.
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            if da > order {
                break;
            }
            for (mb, cb) in &rhs.terms {
                if da + mb.degree() > order {
                    break;
                }
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        XSeries {
            order,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for XSeries {
            type Output = XSeries;
            fn $f(self, rhs: XSeries) -> XSeries {
                (&self).$f(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for XSeries {
    type Output = XSeries;
    fn neg(self) -> XSeries {
        -&self
    }
}

impl Ring for XSeries {
    fn zero_like(&self) -> Self {
        XSeries::zero(self.order)
    }
    fn one_like(&self) -> Self {
        XSeries::one(self.order)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl fmt::Display for XSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.terms.iter())
    }
}

#[derive(Serialize, Deserialize)]
struct JsonSeries {
    order: u32,
    terms: Vec<JsonTerm>,
}

impl Serialize for XSeries {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| JsonTerm {
                coeff: c.to_string(),
                v: BTreeMap::new(),
                x: m.x_exponents(),
            })
            .collect();
        JsonSeries {
            order: self.order,
            terms,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for XSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = JsonSeries::deserialize(deserializer)?;
        let poly = MultiPoly::from_json_terms(&raw.terms).map_err(serde::de::Error::custom)?;
        XSeries::from_poly(&poly, raw.order).map_err(serde::de::Error::custom)
    }
}

/// Assignment of series values to the variables of a polynomial.
#[derive(Clone, Debug, Default)]
pub struct Substitution {
    pub v: BTreeMap<u32, XSeries>,
    pub x: BTreeMap<u32, XSeries>,
}

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    pub fn with_v(mut self, i: u32, s: XSeries) -> Self {
        self.v.insert(i, s);
        self
    }

    pub fn with_x(mut self, k: u32, s: XSeries) -> Self {
        self.x.insert(k, s);
        self
    }

    /// Every `x_k` for `k <= kmax` maps to itself.
    pub fn with_identity_x(mut self, kmax: u32, order: u32) -> Self {
        for k in 1..=kmax {
            self.x.insert(k, XSeries::x(k, order));
        }
        self
    }

    fn lookup(&self, v: Var) -> Result<&XSeries> {
        match v {
            Var::V(i) => self.v.get(&i),
            Var::X(k) => self.x.get(&k),
        }
        .ok_or(Error::UnassignedVariable(v))
    }
}

/// Evaluates `poly` with the assigned series, truncated at `order`.
pub fn poly_substitute(poly: &MultiPoly, assign: &Substitution, order: u32) -> Result<XSeries> {
    let mut powers: HashMap<(Var, u32), XSeries> = HashMap::new();
    let mut out = XSeries::zero(order);
    for (m, c) in poly.terms() {
        let mut term = XSeries::constant(c.clone(), order);
        for &(v, e) in m.factors() {
            let power = match powers.entry((v, e)) {
                Entry::Occupied(slot) => slot.into_mut(),
                Entry::Vacant(slot) => slot.insert(assign.lookup(v)?.truncate(order).pow_u(e as u64)),
            };
            term = &term * &*power;
            if term.is_zero() {
                break;
            }
        }
        out = &out + &term;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let v = XSeries::from_coeffs(&[1, 2, 8, 40], 3);
        let s = &v * &(&XSeries::one(3) + &XSeries::x(2, 3));
        let back: XSeries = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<XSeries>(r#"{"order":2,"terms":[{"coeff":"1","V":{"1":1},"x":{}}]}"#).is_err());
    }

    #[test]
    fn geometric_inverse() {
        let one_minus_x = &XSeries::one(6) - &XSeries::x(1, 6);
        let inv = one_minus_x.inv().unwrap();
        assert_eq!(inv.univariate_coeffs(), vec![BigInt::one(); 7]);
    }

    #[test]
    fn inverse_solves_quadratic() {
        // V = 1/(1 - 2xV) satisfies V = 1 + 2xV^2, so V has coefficients 2^n Cat(n).
        let n = 6;
        let v = XSeries::from_coeffs(&[1, 2, 8, 40, 224, 1344, 8448], n);
        let x = XSeries::x(1, n);
        let denom = &XSeries::one(n) - &(&x * &v).scale(2);
        assert_eq!(denom.inv().unwrap(), v);
        assert_eq!(&v * &denom, XSeries::one(n));
    }

    #[test]
    fn non_unit_constant() {
        assert!(matches!(XSeries::x(1, 3).inv(), Err(Error::NonUnitConstant { .. })));
        assert!(XSeries::constant(2, 3).inv().is_err());
        assert!(XSeries::constant(-1, 3).inv().is_ok());
        assert!(XSeries::x(1, 3).pow(-1).is_err());
    }

    #[test]
    fn negative_powers() {
        let s = &XSeries::one(5) + &XSeries::x(1, 5);
        let back = &s.pow(-3).unwrap() * &s.pow(3).unwrap();
        assert_eq!(back, XSeries::one(5));
    }

    #[test]
    fn multivariate_truncation_is_by_total_degree() {
        let s = &(&XSeries::one(2) + &XSeries::x(1, 2)) + &XSeries::x(2, 2);
        let sq = &s * &s;
        assert!(sq.terms().all(|(m, _)| m.degree() <= 2));
        assert_eq!(sq.coeff(&Monomial::from_pairs([(Var::X(1), 1), (Var::X(2), 1)])), BigInt::from(2));
        assert_eq!(sq.to_string(), "1 + 2*x1 + 2*x2 + x1^2 + 2*x1*x2 + x2^2");
    }

    #[test]
    fn substitute_examples() {
        let order = 4;
        let ones = Substitution::new().with_v(1, XSeries::one(order)).with_v(2, XSeries::one(order));
        let v1v2 = &MultiPoly::v(1) * &MultiPoly::v(2);
        assert_eq!(poly_substitute(&v1v2, &ones, order).unwrap(), XSeries::one(order));
        let err = poly_substitute(&MultiPoly::v(3), &ones, order).unwrap_err();
        assert_eq!(err, Error::UnassignedVariable(Var::V(3)));
        let xs = Substitution::new().with_identity_x(1, order);
        let poly: MultiPoly = "1 - x1 + 3*x1^5".parse().unwrap();
        assert_eq!(poly_substitute(&poly, &xs, order).unwrap().to_string(), "1 - x1");
    }
}
