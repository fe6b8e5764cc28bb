//! Eulerian triangulations: `p = 3` with only triangular white faces
//! (`x_1 = x`, every other `x_k = 0`).
//!
//! Here `V = 1 + 2xV^2`, the family obeys `V_i = 1 + x V_i (V_{i-1} + V_{i+1})`
//! with `V_0 = 0`, and the closed form
//! `V_i = V (1-y^i)(1-y^{i+4}) / ((1-y^{i+1})(1-y^{i+3}))` holds with
//! `y = xV (1+y)^2`. The normalized determinants `T_n` coincide with the
//! Fibonacci polynomials `phi_n(xV)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{det_division_free, Matrix, XSeries};
use crate::error::{Error, Result};
use crate::hankel::qr;
use crate::paths::binomial;
use crate::solver::{solve_v, solve_vi, SolverConfig, VFamily};

/// Univariate integer polynomial, coefficients from degree 0 upwards with
/// no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FibPoly(Vec<BigInt>);

impl FibPoly {
    pub fn from_coeffs<T: Into<BigInt>>(coeffs: impl IntoIterator<Item = T>) -> Self {
        let mut out = FibPoly(coeffs.into_iter().map(Into::into).collect());
        out.trim();
        out
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn add(&self, other: &FibPoly) -> FibPoly {
        let len = self.0.len().max(other.0.len());
        FibPoly::from_coeffs((0..len).map(|i| {
            self.0.get(i).cloned().unwrap_or_default() + other.0.get(i).cloned().unwrap_or_default()
        }))
    }

    pub fn neg(&self) -> FibPoly {
        FibPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &FibPoly) -> FibPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FibPoly) -> FibPoly {
        if self.0.is_empty() || other.0.is_empty() {
            return FibPoly::default();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        FibPoly::from_coeffs(out)
    }

    pub fn pow(&self, e: u32) -> FibPoly {
        (0..e).fold(FibPoly::from_coeffs([1]), |acc, _| acc.mul(self))
    }

    /// Horner evaluation at a series.
    pub fn eval(&self, z: &XSeries) -> XSeries {
        let mut acc = XSeries::zero(z.order());
        for c in self.0.iter().rev() {
            acc = &(&acc * z) + &XSeries::constant(c.clone(), z.order());
        }
        acc
    }
}

impl fmt::Display for FibPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| {
                let mono = crate::algebra::Monomial::pow(crate::algebra::Var::X(1), d as u32);
                (mono, c.clone())
            });
        // Reuse the polynomial printer, then rename the variable.
        let text = crate::algebra::MultiPoly::from_terms(terms).to_string();
        f.write_str(&text.replace("x1", "z"))
    }
}

/// `phi_0 = 0`, `phi_1 = 1`, `phi_{n+2} = phi_{n+1} - z phi_n`.
pub fn fib_poly(n: u32) -> FibPoly {
    let z = FibPoly::from_coeffs([0, 1]);
    let (mut a, mut b) = (FibPoly::default(), FibPoly::from_coeffs([1]));
    for _ in 0..n {
        let next = b.sub(&z.mul(&a));
        a = b;
        b = next;
    }
    a
}

/// Checks `(1-y)(1+y)^{n-1} phi_n(y/(1+y)^2) = 1 - y^n` twice: as an exact
/// polynomial identity in `y`, and as a series identity with the
/// Eulerian `y` and `z = xV` through `order`.
pub fn fib_chebyshev_check(n: u32, order: u32) -> bool {
    assert!(n >= 1, "identity is stated for n >= 1");
    let phi = fib_poly(n);
    let one_plus_y = FibPoly::from_coeffs([1, 1]);
    let one_minus_y = FibPoly::from_coeffs([1, -1]);
    let mut cleared = FibPoly::default();
    for (k, c) in phi.coeffs().iter().enumerate() {
        let k = k as u32;
        if 2 * k > n - 1 {
            return false;
        }
        let y_k = FibPoly::from_coeffs((0..=k).map(|d| if d == k { 1 } else { 0 }));
        let term = y_k.mul(&one_plus_y.pow(n - 1 - 2 * k)).mul(&FibPoly::from_coeffs([c.clone()]));
        cleared = cleared.add(&term);
    }
    let lhs = one_minus_y.mul(&cleared);
    let rhs = FibPoly::from_coeffs((0..=n).map(|d| match d {
        0 => 1,
        d if d == n => -1,
        _ => 0,
    }));
    if lhs != rhs {
        return false;
    }
    let ctx = make_context(order);
    let series_lhs = &one_minus_y.mul(&one_plus_y.pow(n - 1)).eval(&ctx.y) * &phi.eval(&ctx.xv);
    let series_rhs = &XSeries::one(order) - &ctx.y.pow_u(n as u64);
    series_lhs == series_rhs
}

/// The Eulerian series `V`, `y` and `xV` through a common order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerContext {
    pub order: u32,
    pub v: XSeries,
    pub y: XSeries,
    pub xv: XSeries,
}

impl EulerContext {
    /// `xV (y^2 + 1) = y (1 - 2xV)`, the cleared form of
    /// `y + 1/y = 1/(xV) - 2`.
    pub fn check_y(&self) -> bool {
        let one = XSeries::one(self.order);
        let lhs = &self.xv * &(&(&self.y * &self.y) + &one);
        let rhs = &self.y * &(&one - &self.xv.scale(2));
        lhs == rhs
    }

    pub fn one_minus_xv(&self) -> XSeries {
        &XSeries::one(self.order) - &self.xv
    }

    fn v_power(&self, e: i64) -> XSeries {
        self.v.pow(e).expect("V has constant term 1")
    }
}

pub fn eulerian_config(order: u32, imax: u32) -> SolverConfig {
    SolverConfig::new(3, order, 1, imax).expect("p = 3 is valid")
}

pub fn make_context(order: u32) -> EulerContext {
    let v = solve_v(&eulerian_config(order, 0));
    let xv = &XSeries::x(1, order) * &v;
    let one = XSeries::one(order);
    let mut y = XSeries::zero(order);
    // Each pass fixes one more coefficient since xV has zero constant term.
    for _ in 0..order {
        let s = &one + &y;
        y = &xv * &(&s * &s);
    }
    EulerContext { order, v, y, xv }
}

/// `V_1 .. V_imax` from the recursion.
pub fn v_family(imax: u32, order: u32) -> VFamily {
    solve_vi(&eulerian_config(order, imax))
}

/// `V_i` from the recursion; `V_0 = 0`.
pub fn v_series(i: u32, order: u32) -> XSeries {
    if i == 0 {
        return XSeries::zero(order);
    }
    v_family(i, order).get(i).clone()
}

/// `V_i` from the closed form in `V` and `y`.
pub fn v_closed(i: u32, ctx: &EulerContext) -> XSeries {
    assert!(i >= 1, "closed form is stated for i >= 1");
    let one = XSeries::one(ctx.order);
    let f = |e: u32| &one - &ctx.y.pow_u(e as u64);
    let num = &(&ctx.v * &f(i)) * &f(i + 4);
    let den = &f(i + 1) * &f(i + 3);
    &num * &den.inv().expect("1 - y^k has constant term 1")
}

/// `p_n^{(r)} = (r+1)/(3n+r+1) C(3n+r+1, n)`, the number of 3-paths from
/// `(-r, r)` to `(3n, 0)`; zero for negative `n`.
pub fn ballot(n: i64, r: u32) -> BigInt {
    if n < 0 {
        return BigInt::zero();
    }
    let m = 3 * n as u64 + r as u64 + 1;
    binomial(m, n as u64) * BigInt::from(r + 1) / BigInt::from(m)
}

/// `F_n = (p_n^{(0)} (1-xV) - p_n^{(1)} xV) V^{2n+1}`.
pub fn f_closed(n: u32, ctx: &EulerContext) -> XSeries {
    let n_ = n as i64;
    let inner = &ctx.one_minus_xv().scale(ballot(n_, 0)) - &ctx.xv.scale(ballot(n_, 1));
    &inner * &ctx.v.pow_u(2 * n as u64 + 1)
}

/// `F_n = (p_n^{(0)} (1-2xV) - p_{n-1}^{(3)} xV) V^{2n+1}`.
pub fn f_closed_alt(n: u32, ctx: &EulerContext) -> XSeries {
    let n_ = n as i64;
    let one = XSeries::one(ctx.order);
    let inner = &(&one - &ctx.xv.scale(2)).scale(ballot(n_, 0)) - &ctx.xv.scale(ballot(n_ - 1, 3));
    &inner * &ctx.v.pow_u(2 * n as u64 + 1)
}

/// `F_n^{(1)} = (p_n^{(1)} (1-xV)^2 - p_{n+1}^{(0)} xV) V^{2n+2}`.
pub fn f1_closed(n: u32, ctx: &EulerContext) -> XSeries {
    let n_ = n as i64;
    let omx = ctx.one_minus_xv();
    let inner = &(&omx * &omx).scale(ballot(n_, 1)) - &ctx.xv.scale(ballot(n_ + 1, 0));
    &inner * &ctx.v.pow_u(2 * n as u64 + 2)
}

/// `H_3^{m,n}` with the closed-form entries; `n = -1` gives 1.
pub fn hankel_det_closed(m: u32, n: i64, ctx: &EulerContext) -> XSeries {
    let one = XSeries::one(ctx.order);
    if n < 0 {
        return one;
    }
    let size = (n + 1) as usize;
    let mat = Matrix::from_fn(size, size, |i, j| {
        let (q, r) = qr(i as u32 + m, 3);
        if r == 0 {
            f_closed(q + j as u32, ctx)
        } else {
            f1_closed(q + j as u32, ctx)
        }
    });
    det_division_free(&mat, &one).expect("square")
}

/// `T_{3k+1} = H^{0,k-1} / V^{k(3k-1)/2}`, `T_{3k+2} = H^{1,k-1} / V^{k(3k+1)/2}`,
/// `T_{3k+3} = H^{2,k-1} (1-xV) / V^{k(3k+3)/2}`.
pub fn t_n(n: u32, ctx: &EulerContext) -> Result<XSeries> {
    if n == 0 {
        return Err(Error::InvalidArgument("T_n is defined for n >= 1".into()));
    }
    let k = ((n - 1) / 3) as i64;
    let m = (n - 1) % 3;
    let det = hankel_det_closed(m, k - 1, ctx);
    let (exp, extra) = match m {
        0 => (k * (3 * k - 1) / 2, None),
        1 => (k * (3 * k + 1) / 2, None),
        _ => (k * (3 * k + 3) / 2, Some(ctx.one_minus_xv())),
    };
    let scaled = &det * &ctx.v.pow(-exp)?;
    Ok(match extra {
        Some(f) => &scaled * &f,
        None => scaled,
    })
}

/// Failure witness of [`verify_det3`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Det3Failure {
    Fibonacci { n: u32 },
    Recurrence { n: u32 },
    YEquation,
}

impl fmt::Display for Det3Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Det3Failure::Fibonacci { n } => write!(f, "T_{n} != phi_{n}(xV)"),
            Det3Failure::Recurrence { n } => write!(f, "T_{} != (1-xV) T_{} - xV T_{n}", n + 3, n + 1),
            Det3Failure::YEquation => f.write_str("y does not satisfy xV(y^2+1) = y(1-2xV)"),
        }
    }
}

/// Checks `T_n = phi_n(xV)` for `1 <= n <= 3 kmax + 3` and the recurrence
/// `T_{n+3} = (1-xV) T_{n+1} - xV T_n` wherever all three terms are in range.
pub fn verify_det3(kmax: u32, order: u32) -> std::result::Result<(), Det3Failure> {
    let ctx = make_context(order);
    if !ctx.check_y() {
        return Err(Det3Failure::YEquation);
    }
    let top = 3 * kmax + 3;
    let ts: Vec<XSeries> = (1..=top)
        .map(|n| t_n(n, &ctx).expect("V is a unit"))
        .collect();
    let t = |n: u32| &ts[n as usize - 1];
    for n in 1..=top {
        if *t(n) != fib_poly(n).eval(&ctx.xv) {
            return Err(Det3Failure::Fibonacci { n });
        }
    }
    let omx = ctx.one_minus_xv();
    for n in 1..=top.saturating_sub(3) {
        let rhs = &(&omx * t(n + 1)) - &(&ctx.xv * t(n));
        if *t(n + 3) != rhs {
            return Err(Det3Failure::Recurrence { n });
        }
    }
    Ok(())
}

/// The three determinant formulas directly:
/// `H^{0,k-1} = V^{k(3k-1)/2} phi_{3k+1}`, `H^{1,k-1} = V^{k(3k+1)/2} phi_{3k+2}`,
/// `(1-xV) H^{2,k-1} = V^{k(3k+3)/2} phi_{3k+3}`, all at `z = xV`.
pub fn check_det_formulas(k: u32, ctx: &EulerContext) -> bool {
    let k_ = k as i64;
    let phi = |n: u32| fib_poly(n).eval(&ctx.xv);
    let h0 = hankel_det_closed(0, k_ - 1, ctx);
    let h1 = hankel_det_closed(1, k_ - 1, ctx);
    let h2 = &hankel_det_closed(2, k_ - 1, ctx) * &ctx.one_minus_xv();
    h0 == &ctx.v_power(k_ * (3 * k_ - 1) / 2) * &phi(3 * k + 1)
        && h1 == &ctx.v_power(k_ * (3 * k_ + 1) / 2) * &phi(3 * k + 2)
        && h2 == &ctx.v_power(k_ * (3 * k_ + 3) / 2) * &phi(3 * k + 3)
}
