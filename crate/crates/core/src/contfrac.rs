//! Truncated expansions in the rise marker `t`.
//!
//! `F^{(r)}(t; V_{s+1}, V_{s+2}, ...)` is built from the first-passage
//! recursion on p-paths, and `F^{(0)}` is also built directly as the
//! nested multicontinued fraction. Both agree coefficientwise with the
//! path polynomials of [`crate::paths::f_poly`].

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::MultiPoly;

/// `sum_n coeffs[n] t^n`, truncated after `t^order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct TSeries {
    coeffs: Vec<MultiPoly>,
}

impl TSeries {
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![MultiPoly::zero(); order + 1];
        coeffs[0] = MultiPoly::one();
        TSeries { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<MultiPoly>) -> Self {
        assert!(!coeffs.is_empty(), "a t-series keeps at least t^0");
        TSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &MultiPoly {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn mul(&self, other: &TSeries) -> TSeries {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| {
                let mut acc = MultiPoly::zero();
                for k in 0..=n {
                    if self.coeffs[k].is_zero() || other.coeffs[n - k].is_zero() {
                        continue;
                    }
                    acc += &(&self.coeffs[k] * &other.coeffs[n - k]);
                }
                acc
            })
            .collect();
        TSeries { coeffs }
    }

    pub fn scale(&self, c: &MultiPoly) -> TSeries {
        TSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `t * self`, keeping the order of `self` plus one.
    pub fn times_t(&self) -> TSeries {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(MultiPoly::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        TSeries { coeffs }
    }

    pub fn truncate(&self, order: usize) -> TSeries {
        TSeries {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    /// `1 / (1 - u)` for `u` with zero constant term.
    pub fn one_over_one_minus(u: &TSeries) -> TSeries {
        assert!(u.coeffs[0].is_zero(), "geometric inverse needs u(0) = 0");
        let order = u.order();
        let mut g: Vec<MultiPoly> = Vec::with_capacity(order + 1);
        g.push(MultiPoly::one());
        for n in 1..=order {
            let mut acc = MultiPoly::zero();
            for k in 1..=n {
                if u.coeffs[k].is_zero() || g[n - k].is_zero() {
                    continue;
                }
                acc += &(&u.coeffs[k] * &g[n - k]);
            }
            g.push(acc);
        }
        TSeries { coeffs: g }
    }
}

/// Memoized evaluator of the first-passage recursion
///
/// ```text
/// F^{(0)}_s = 1 + t F^{(p-1)}_s
/// F^{(r)}_s = V_{s+r} F^{(0)}_{s+r} F^{(r-1)}_s      (r >= 1)
/// ```
///
/// where the subscript `s` shifts every `V_i` to `V_{i+s}`.
pub struct Expander {
    p: u32,
    memo: HashMap<(u32, u32, usize), TSeries>,
}

impl Expander {
    pub fn new(p: u32) -> Self {
        assert!(p >= 2, "p must be at least 2");
        Expander { p, memo: HashMap::new() }
    }

    pub fn expand(&mut self, r: u32, shift: u32, order: usize) -> TSeries {
        assert!(r < self.p, "superscript r must lie in [0, p-1]");
        if let Some(s) = self.memo.get(&(r, shift, order)) {
            return s.clone();
        }
        let out = if r == 0 {
            if order == 0 {
                TSeries::one(0)
            } else {
                let tail = self.expand(self.p - 1, shift, order - 1).times_t();
                let mut coeffs = tail.coeffs;
                coeffs[0] = MultiPoly::one();
                TSeries { coeffs }
            }
        } else {
            let head = self.expand(0, shift + r, order);
            let rest = self.expand(r - 1, shift, order);
            head.mul(&rest).scale(&MultiPoly::v(shift + r))
        };
        self.memo.insert((r, shift, order), out.clone());
        out
    }
}

/// `F^{(r)}(t; V_{shift+1}, V_{shift+2}, ...)` through `t^order`.
pub fn expand_f(p: u32, r: u32, shift: u32, order: usize) -> TSeries {
    Expander::new(p).expand(r, shift, order)
}

/// `F^{(0)}(t; V_1, V_2, ...)` through `t^order`, evaluated as the nested
/// multicontinued fraction with the tail below level `order + 1` set to 1.
pub fn expand_multicont(p: u32, order: usize) -> TSeries {
    expand_multicont_depth(p, order, order + 1)
}

/// Same as [`expand_multicont`] with an explicit nesting depth. Any depth
/// of at least `order` yields exact coefficients through `t^order`, since
/// every level contributes a factor of `t`.
pub fn expand_multicont_depth(p: u32, order: usize, depth: usize) -> TSeries {
    assert!(p >= 2, "p must be at least 2");
    let mut memo = HashMap::new();
    level(p, 0, depth, order, &mut memo)
}

fn level(p: u32, shift: u32, depth: usize, order: usize, memo: &mut HashMap<(u32, usize), TSeries>) -> TSeries {
    if depth == 0 || order == 0 {
        return TSeries::one(order);
    }
    if let Some(s) = memo.get(&(shift, depth)) {
        return s.clone();
    }
    // The product is multiplied by t afterwards, so order - 1 suffices.
    let mut prod = TSeries::one(order - 1);
    for i in 1..p {
        let inner = level(p, shift + i, depth - 1, order - 1, memo);
        prod = prod.mul(&inner).scale(&MultiPoly::v(shift + i));
    }
    let out = TSeries::one_over_one_minus(&prod.times_t());
    memo.insert((shift, depth), out.clone());
    out
}
