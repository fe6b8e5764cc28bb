//! Series solutions for the generating functions `V` and `V_i` in the face
//! weights `x_1, ..., x_K`.
//!
//! `V_i = 1 + V_i sum_n x_n F_n^{(i-1;i)}` is solved by fixed-point sweeps
//! over the whole family at once; `V` is the `i -> infinity` limit, which
//! satisfies `V = 1 + sum_n C(np-1, n) x_n V^{n(p-1)}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::algebra::{poly_substitute, MultiPoly, Substitution, XSeries};
use crate::error::{Error, Result};
use crate::paths::{binomial, f_mid, f_poly, fuss_catalan, transfer, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    pub p: u32,
    /// Total x-degree truncation `D`.
    pub degree: u32,
    /// Highest face weight `x_K` that is nonzero.
    pub kmax: u32,
    /// Highest `V_i` requested.
    pub imax: u32,
    /// Indices above this are pinned to `V`.
    pub index_cap: u32,
}

impl SolverConfig {
    /// Uses the default cap `imax + (p-1) p D`: a path contributing at
    /// x-degree `<= D` has length `<= pD`, so it cannot climb from `i - 1`
    /// beyond that many levels.
    pub fn new(p: u32, degree: u32, kmax: u32, imax: u32) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidArgument(format!("p = {p}, need p >= 2")));
        }
        Ok(SolverConfig {
            p,
            degree,
            kmax,
            imax,
            index_cap: imax + (p - 1) * p * degree,
        })
    }

    pub fn with_index_cap(mut self, cap: u32) -> Result<Self> {
        if cap < self.imax + (self.p - 1) * self.p * self.degree {
            return Err(Error::InvalidArgument(format!(
                "index cap {cap} below the minimum {}",
                self.imax + (self.p - 1) * self.p * self.degree
            )));
        }
        self.index_cap = cap;
        Ok(self)
    }

    /// Every active `x_k` mapped to itself.
    pub fn x_substitution(&self) -> Substitution {
        Substitution::new().with_identity_x(self.kmax, self.degree)
    }
}

/// `V` by fixed-point iteration from 1; `D` steps give degree-`D` exactness.
pub fn solve_v(cfg: &SolverConfig) -> XSeries {
    let mut v = XSeries::one(cfg.degree);
    for _ in 0..cfg.degree {
        v = recv_rhs(cfg, &v);
    }
    v
}

/// Right-hand side `1 + sum_n C(np-1, n) x_n V^{n(p-1)}`.
pub fn recv_rhs(cfg: &SolverConfig, v: &XSeries) -> XSeries {
    let d = cfg.degree;
    let mut out = XSeries::one(d);
    for n in 1..=cfg.kmax {
        let c = binomial((n * cfg.p - 1) as u64, n as u64);
        let term = &XSeries::x(n, d) * &v.pow_u((n * (cfg.p - 1)) as u64);
        out = &out + &term.scale(c);
    }
    out
}

/// The solved family `V_1, V_2, ...` with indices beyond the cap reading
/// as `V`.
#[derive(Clone, Debug)]
pub struct VFamily {
    cfg: SolverConfig,
    v: XSeries,
    // series[0] is unused; series[i] for 1 <= i <= index_cap.
    series: Vec<XSeries>,
}

impl VFamily {
    pub fn config(&self) -> &SolverConfig {
        &self.cfg
    }

    pub fn v(&self) -> &XSeries {
        &self.v
    }

    pub fn get(&self, i: u32) -> &XSeries {
        assert!(i >= 1, "V_i is indexed from 1");
        self.series.get(i as usize).unwrap_or(&self.v)
    }

    /// Substitution assigning `V_1 .. V_upto` and the identity on `x_k`.
    pub fn substitution(&self, upto: u32) -> Substitution {
        let mut s = self.cfg.x_substitution();
        for i in 1..=upto {
            s.v.insert(i, self.get(i).clone());
        }
        s
    }

    /// Evaluates a polynomial in the `V_i` and `x_k` on the solution.
    /// Indices must stay within the range the family certifies.
    pub fn substitute(&self, poly: &MultiPoly) -> Result<XSeries> {
        let top = poly.max_v_index();
        if top > self.cfg.imax {
            return Err(Error::InvalidArgument(format!(
                "V{top} requested but the family is certified only up to V{}",
                self.cfg.imax
            )));
        }
        poly_substitute(poly, &self.substitution(top), self.cfg.degree)
    }
}

/// One solver instance: the limit `V` and the index range being swept.
pub struct Solver {
    cfg: SolverConfig,
    v: XSeries,
}

impl Solver {
    pub fn new(cfg: SolverConfig) -> Self {
        Solver { v: solve_v(&cfg), cfg }
    }

    pub fn config(&self) -> &SolverConfig {
        &self.cfg
    }

    pub fn initial(&self) -> VFamily {
        let mut series = vec![XSeries::zero(self.cfg.degree)];
        series.extend((1..=self.cfg.index_cap).map(|_| XSeries::one(self.cfg.degree)));
        VFamily {
            cfg: self.cfg,
            v: self.v.clone(),
            series,
        }
    }

    /// `V_h` truncated at degree `D - 1`, enough for factors of some `x_n`.
    /// Empty when `D = 0`.
    fn truncated_weights(&self, family: &VFamily) -> Vec<XSeries> {
        if self.cfg.degree == 0 {
            return Vec::new();
        }
        let order = self.cfg.degree - 1;
        let reach = self.cfg.index_cap + (self.cfg.p - 1) * self.cfg.kmax + 1;
        let mut row = vec![XSeries::zero(order)];
        row.extend((1..=reach).map(|h| family.get(h).truncate(order)));
        row
    }

    /// `sum_n x_n F_n^{(i-1;i)}`, with each path sum evaluated directly on
    /// series weights.
    fn inner_sum(&self, i: u32, weights: &[XSeries]) -> XSeries {
        let d = self.cfg.degree;
        let p = self.cfg.p;
        let mut acc = XSeries::zero(d);
        if weights.is_empty() {
            return acc;
        }
        for n in 1..=self.cfg.kmax {
            let start = Point::new(0, i as i64 - 1);
            let end = Point::new((n * p) as i64 - 1, i as i64);
            let one = XSeries::one(d - 1);
            let value = transfer(p, start, end, one, |w, h| w * &weights[h as usize], |a, b| *a = &*a + &b)
                .expect("F_n^{(i-1;i)} has at least one path");
            acc = &acc + &value.times_x(n);
        }
        acc
    }

    /// One Jacobi sweep of `V_i <- 1 + V_i sum_n x_n F_n^{(i-1;i)}`.
    pub fn sweep(&self, family: &VFamily) -> VFamily {
        let weights = self.truncated_weights(family);
        let d = self.cfg.degree;
        let mut next = family.clone();
        for i in 1..=self.cfg.index_cap {
            let inner = self.inner_sum(i, &weights);
            next.series[i as usize] = &XSeries::one(d) + &(family.get(i) * &inner);
        }
        next
    }

    /// `D` sweeps from the all-ones family.
    pub fn solve(&self) -> VFamily {
        let mut family = self.initial();
        for _ in 0..self.cfg.degree {
            family = self.sweep(&family);
        }
        family
    }

    /// First index `i <= imax` at which the recursion fails, if any. The
    /// path sums are expanded as polynomials and substituted, independently
    /// of the sweep.
    pub fn residual_failure(&self, family: &VFamily) -> Option<u32> {
        let d = self.cfg.degree;
        let reach = self.cfg.imax + (self.cfg.p - 1) * self.cfg.kmax + 1;
        let mut subst = self.cfg.x_substitution();
        for j in 1..=reach {
            subst.v.insert(j, family.get(j).clone());
        }
        (1..=self.cfg.imax).find(|&i| {
            let mut inner = XSeries::zero(d);
            for n in 1..=self.cfg.kmax {
                let mid = poly_substitute(&f_mid(self.cfg.p, n, i), &subst, d).expect("all indices assigned");
                inner = &inner + &(&XSeries::x(n, d) * &mid);
            }
            let rhs = &XSeries::one(d) + &(family.get(i) * &inner);
            &rhs != family.get(i)
        })
    }
}

/// `V_1 .. V_imax`, each exact through degree `D`.
pub fn solve_vi(cfg: &SolverConfig) -> VFamily {
    Solver::new(*cfg).solve()
}

/// Coefficient of `x_k V^{(k+n)(p-1)}` in the closed formula for `F_n`:
/// `sum_j (jp+1)/(np+1) C(np+1, n-j) C(kp-1, k+j)`, with `j` running while
/// both binomials are nonzero.
pub fn correction_coeff(p: u32, n: u32, k: u32) -> BigInt {
    let np1 = (n * p + 1) as u64;
    let jmax = n.min((k * p - 1).saturating_sub(k));
    let total: BigInt = (0..=jmax)
        .filter(|&j| k + j < k * p)
        .map(|j| BigInt::from(j * p + 1) * binomial(np1, (n - j) as u64) * binomial((k * p - 1) as u64, (k + j) as u64))
        .sum();
    let (q, r) = total.div_rem(&BigInt::from(np1));
    assert!(r.is_zero(), "closed-formula coefficient must be integral");
    q
}

/// `F_n` from the closed formula in `V`:
/// `C(np+1,n)/(np+1) V^{n(p-1)+1} - sum_k c_{n,k} x_k V^{(k+n)(p-1)}`.
pub fn f_from_v(cfg: &SolverConfig, n: u32) -> XSeries {
    let d = cfg.degree;
    let v = solve_v(cfg);
    let p = cfg.p;
    let lead = v.pow_u((n * (p - 1) + 1) as u64).scale(fuss_catalan(p, n));
    let mut out = lead;
    for k in 1..=cfg.kmax {
        let term = &XSeries::x(k, d) * &v.pow_u(((k + n) * (p - 1)) as u64);
        out = &out - &term.scale(correction_coeff(p, n, k));
    }
    out
}

/// Checks `F_n^{(1)} = sum_l x_l F_{n+l} + sum_{i=0}^{n} F_i F_{n-i}` at
/// `p = 3`, with every `F` evaluated on the solved `V_i` family.
pub fn f1_tutte_check(cfg: &SolverConfig, n: u32) -> Result<bool> {
    if cfg.p != 3 {
        return Err(Error::InvalidArgument(format!("Tutte identity needs p = 3, got {}", cfg.p)));
    }
    let need = 2 * (n + cfg.kmax) + 1;
    let cfg = SolverConfig::new(3, cfg.degree, cfg.kmax, cfg.imax.max(need))?;
    let family = solve_vi(&cfg);
    let d = cfg.degree;
    let f = |m: u32| family.substitute(&f_poly(3, m, 0));
    let lhs = family.substitute(&f_poly(3, n, 1))?;
    let mut rhs = XSeries::zero(d);
    for l in 1..=cfg.kmax {
        rhs = &rhs + &(&XSeries::x(l, d) * &f(n + l)?);
    }
    for i in 0..=n {
        rhs = &rhs + &(&f(i)? * &f(n - i)?);
    }
    Ok(lhs == rhs)
}
