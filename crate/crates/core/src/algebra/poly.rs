use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::monomial::{Monomial, Var};
use super::ring::Ring;
use crate::error::{Error, Result};

/// Exact multivariate polynomial over the integers in the variables
/// `V_i` and `x_k`.
///
/// Terms are kept in a `BTreeMap` keyed by [`Monomial`], so iteration
/// follows the canonical graded order and zero coefficients are never
/// stored. Two polynomials are equal iff their term maps are equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        MultiPoly::term(c, Monomial::one())
    }

    pub fn term<T: Into<BigInt>>(c: T, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        MultiPoly::term(1, Monomial::var(v))
    }

    /// The fall weight `V_i`.
    pub fn v(i: u32) -> Self {
        MultiPoly::var(Var::V(i))
    }

    /// The face weight `x_k`.
    pub fn x(k: u32) -> Self {
        MultiPoly::var(Var::X(k))
    }

    /// Product `V_lo * V_{lo+1} * ... * V_hi`; empty ranges give 1.
    pub fn v_range_product(lo: u32, hi: u32) -> Self {
        MultiPoly::term(1, Monomial::from_pairs((lo..=hi).map(|i| (Var::V(i), 1))))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(terms: I) -> Self {
        let mut out = MultiPoly::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&Monomial::one())
    }

    /// The greatest term in the canonical order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn max_v_index(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter())
            .filter_map(|(v, _)| match v {
                Var::V(i) => Some(*i),
                Var::X(_) => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Sum of all coefficients, i.e. the value with every variable set to 1.
    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
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

    pub fn scale<T: Into<BigInt>>(&self, c: T) -> MultiPoly {
        let c = c.into();
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * &c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
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

    /// Renames `V_i` to `V_{i+shift}` throughout.
    pub fn shift_v(&self, shift: u32) -> MultiPoly {
        if shift == 0 {
            return self.clone();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.shift_v(shift), c.clone())).collect(),
        }
    }

    /// Returns `q` with `q * divisor == self`, or [`Error::NotDivisible`].
    ///
    /// Runs the multivariate division algorithm on leading terms; for an
    /// exact quotient every leading term of the running remainder must be
    /// divisible by the divisor's leading term.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Result<MultiPoly> {
        let (lead_m, lead_c) = divisor
            .leading_term()
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(Error::NotDivisible)?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(&lead_m).ok_or(Error::NotDivisible)?;
            let (qc, r) = c.div_rem(&lead_c);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            for (dm, dc) in divisor.terms() {
                rem.add_term(dm.mul(&qm), -(dc * &qc));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }
}

impl From<i64> for MultiPoly {
    fn from(c: i64) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<BigInt> for MultiPoly {
    fn from(c: BigInt) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<Var> for MultiPoly {
    fn from(v: Var) -> Self {
        MultiPoly::var(v)
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in rhs.terms() {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in rhs.terms() {
            self.add_term(m.clone(), -c);
        }
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(mut self, rhs: MultiPoly) -> MultiPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        let (small, big) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        if small.len() == 1 {
            let (m, c) = small.terms.iter().next().unwrap();
            let mut out = big.mul_monomial(m);
            if !c.is_one() {
                out.terms.values_mut().for_each(|k| *k *= c);
            }
            return out;
        }
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(self.len() * rhs.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        MultiPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Ring for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero()
    }
    fn one_like(&self) -> Self {
        MultiPoly::one()
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

pub(crate) fn fmt_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (&'a Monomial, &'a BigInt)>,
{
    let mut first = true;
    for (m, c) in terms {
        let mag = c.abs();
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else if c.is_negative() {
            f.write_str(" - ")?;
        } else {
            f.write_str(" + ")?;
        }
        if m.is_one() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            write!(f, "{m}")?;
        } else {
            write!(f, "{mag}*{m}")?;
        }
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.terms.iter())
    }
}

fn parse_factor(tok: &str) -> Result<(Var, u32)> {
    let bad = || Error::Parse(format!("bad factor {tok:?}"));
    let (name, exp) = match tok.split_once('^') {
        Some((n, e)) => (n, e.parse::<u32>().map_err(|_| bad())?),
        None => (tok, 1),
    };
    let mut chars = name.chars();
    let family = chars.next().ok_or_else(bad)?;
    let index: u32 = chars.as_str().parse().map_err(|_| bad())?;
    if index == 0 {
        return Err(bad());
    }
    match family {
        'V' => Ok((Var::V(index), exp)),
        'x' => Ok((Var::X(index), exp)),
        _ => Err(bad()),
    }
}

fn parse_term(body: &str, negative: bool) -> Result<(Monomial, BigInt)> {
    let mut coeff = BigInt::one();
    let mut pairs = Vec::new();
    for (n, tok) in body.split('*').map(str::trim).enumerate() {
        if tok.is_empty() {
            return Err(Error::Parse(format!("empty factor in {body:?}")));
        }
        if n == 0 && tok.bytes().all(|b| b.is_ascii_digit()) {
            coeff = tok.parse().map_err(|_| Error::Parse(tok.to_string()))?;
        } else {
            pairs.push(parse_factor(tok)?);
        }
    }
    if negative {
        coeff = -coeff;
    }
    Ok((Monomial::from_pairs(pairs), coeff))
}

impl FromStr for MultiPoly {
    type Err = Error;

    /// Parses the canonical text form, e.g. `"V1*V2 - 2*V3^2 + 1"`.
    /// Terms need not be in canonical order.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty input".into()));
        }
        let mut out = MultiPoly::zero();
        let mut negative = false;
        let mut start = 0;
        let bytes = s.as_bytes();
        let pending = |out: &mut MultiPoly, body: &str, neg: bool| -> Result<()> {
            let body = body.trim();
            if body.is_empty() {
                return Err(Error::Parse(format!("dangling sign in {s:?}")));
            }
            let (m, c) = parse_term(body, neg)?;
            out.add_term(m, c);
            Ok(())
        };
        let mut i = 0;
        if bytes[0] == b'-' || bytes[0] == b'+' {
            negative = bytes[0] == b'-';
            i = 1;
            start = 1;
        }
        while i < bytes.len() {
            if bytes[i] == b'+' || bytes[i] == b'-' {
                pending(&mut out, &s[start..i], negative)?;
                negative = bytes[i] == b'-';
                start = i + 1;
            }
            i += 1;
        }
        pending(&mut out, &s[start..], negative)?;
        Ok(out)
    }
}

/// One term of the JSON form: `{"coeff": "-3", "V": {"1": 2}, "x": {}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub coeff: String,
    #[serde(rename = "V")]
    pub v: BTreeMap<u32, u32>,
    pub x: BTreeMap<u32, u32>,
}

impl MultiPoly {
    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        self.terms
            .iter()
            .map(|(m, c)| JsonTerm {
                coeff: c.to_string(),
                v: m.v_exponents(),
                x: m.x_exponents(),
            })
            .collect()
    }

    pub fn from_json_terms(terms: &[JsonTerm]) -> Result<Self> {
        let mut out = MultiPoly::zero();
        for t in terms {
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {:?}", t.coeff)))?;
            if t.v.keys().chain(t.x.keys()).any(|&i| i == 0) {
                return Err(Error::Parse("variable index 0".into()));
            }
            let pairs = t
                .v
                .iter()
                .map(|(&i, &e)| (Var::V(i), e))
                .chain(t.x.iter().map(|(&k, &e)| (Var::X(k), e)));
            out.add_term(Monomial::from_pairs(pairs), c);
        }
        Ok(out)
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_terms().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<JsonTerm>::deserialize(deserializer)?;
        MultiPoly::from_json_terms(&terms).map_err(serde::de::Error::custom)
    }
}
