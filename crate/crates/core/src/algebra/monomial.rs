use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// A variable of one of the two indexed families: the fall weights `V_i`
/// and the face weights `x_k`. Indices are positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    V(u32),
    X(u32),
}

impl Var {
    pub fn index(self) -> u32 {
        match self {
            Var::V(i) | Var::X(i) => i,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::V(i) => write!(f, "V{i}"),
            Var::X(k) => write!(f, "x{k}"),
        }
    }
}

/// A power product of variables, stored as `(variable, exponent)` pairs
/// sorted by variable with every exponent at least one.
///
/// Monomials are ordered by total degree first; ties are broken
/// lexicographically on the sorted, expanded variable sequence
/// (`V1*V1*V2 < V1*V2*V2 < V1*V2*V3`). This is a monomial order, so it is
/// compatible with multiplication and usable for exact division.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    factors: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var) -> Self {
        Monomial::pow(v, 1)
    }

    pub fn pow(v: Var, e: u32) -> Self {
        assert!(v.index() > 0, "variable indices start at 1");
        if e == 0 {
            return Monomial::one();
        }
        Monomial {
            factors: vec![(v, e)],
        }
    }

    /// Builds a monomial from arbitrary pairs; repeated variables are merged
    /// and zero exponents dropped.
    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Self {
        let mut acc: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            assert!(v.index() > 0, "variable indices start at 1");
            *acc.entry(v).or_default() += e;
        }
        Monomial {
            factors: acc.into_iter().filter(|&(_, e)| e > 0).collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    /// Degree counting only the `x` variables.
    pub fn x_degree(&self) -> u32 {
        self.factors
            .iter()
            .filter(|(v, _)| matches!(v, Var::X(_)))
            .map(|&(_, e)| e)
            .sum()
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.factors
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.factors
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|pos| self.factors[pos].1)
            .unwrap_or(0)
    }

    pub fn v_exponents(&self) -> BTreeMap<u32, u32> {
        self.factors
            .iter()
            .filter_map(|&(v, e)| match v {
                Var::V(i) => Some((i, e)),
                Var::X(_) => None,
            })
            .collect()
    }

    pub fn x_exponents(&self) -> BTreeMap<u32, u32> {
        self.factors
            .iter()
            .filter_map(|&(v, e)| match v {
                Var::X(k) => Some((k, e)),
                Var::V(_) => None,
            })
            .collect()
    }

    pub fn has_v(&self) -> bool {
        self.factors.iter().any(|(v, _)| matches!(v, Var::V(_)))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut j = 0;
        for &(v, e) in &self.factors {
            if j < other.factors.len() && other.factors[j].0 < v {
                return None;
            }
            let d = if j < other.factors.len() && other.factors[j].0 == v {
                j += 1;
                other.factors[j - 1].1
            } else {
                0
            };
            match e.cmp(&d) {
                Ordering::Less => return None,
                Ordering::Equal => {}
                Ordering::Greater => out.push((v, e - d)),
            }
        }
        if j < other.factors.len() {
            return None;
        }
        Some(Monomial { factors: out })
    }

    /// Renames every `V_i` to `V_{i+shift}`.
    pub fn shift_v(&self, shift: u32) -> Monomial {
        Monomial {
            factors: self
                .factors
                .iter()
                .map(|&(v, e)| match v {
                    Var::V(i) => (Var::V(i + shift), e),
                    x => (x, e),
                })
                .collect(),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (&(va, ea), &(vb, eb)) in self.factors.iter().zip(&other.factors) {
                match va.cmp(&vb) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                match eb.cmp(&ea) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
            }
            // Equal degree and equal common prefix means equal monomials.
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (n, (v, e)) in self.factors.iter().enumerate() {
            if n > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}
