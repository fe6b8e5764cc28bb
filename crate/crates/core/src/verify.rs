//! One-shot verification of every identity over a range of parameters.
//!
//! Each check runs its instances in parallel and reports them in a fixed
//! order, so the report never depends on the thread count.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{det_division_free, MultiPoly};
use crate::contfrac::{expand_f, expand_multicont};
use crate::eulerian;
use crate::hankel::{check_product_formula, hankel_matrix, lgv_signed_sum, nilp_unique, recover_vi_with, HankelSpec};
use crate::paths::{binomial, count_paths, f_poly, fuss_catalan};
use crate::solver::{f1_tutte_check, f_from_v, solve_vi, Solver, SolverConfig};

/// Largest `n` for the path-enumeration checks.
pub const LGV_N_MAX: i64 = 2;
/// Largest `p` for the path-enumeration checks.
pub const LGV_P_MAX: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub p_min: u32,
    pub p_max: u32,
    pub n_max: u32,
    pub order: u32,
    /// Adds 1 to the top-left entry of this one Hankel matrix.
    pub fault: Option<HankelSpec>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            p_min: 2,
            p_max: 4,
            n_max: 3,
            order: 10,
            fault: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub checks: u64,
    pub failure: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }

    pub fn total(&self) -> u64 {
        self.checks.iter().map(|c| c.checks).sum()
    }

    pub fn first_failure(&self) -> Option<(&str, &str)> {
        self.checks
            .iter()
            .find_map(|c| c.failure.as_deref().map(|f| (c.name.as_str(), f)))
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.failure {
                None => writeln!(f, "PASS {} ({} checks)", c.name, c.checks)?,
                Some(w) => writeln!(f, "FAIL {} ({} checks): {w}", c.name, c.checks)?,
            }
        }
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} total {} checks", self.total())
    }
}

/// Runs each instance, keeping the instance order for the report.
fn run<T: Sync>(name: &str, items: Vec<T>, check: impl Fn(&T) -> Result<(), String> + Sync) -> CheckReport {
    let outcomes: Vec<Result<(), String>> = items.par_iter().map(&check).collect();
    CheckReport {
        name: name.to_string(),
        checks: outcomes.len() as u64,
        failure: outcomes.into_iter().find_map(Result::err),
    }
}

fn hankel_specs(p: u32, n_max: i64) -> Vec<HankelSpec> {
    (0..=n_max)
        .flat_map(|n| (0..p).map(move |m| HankelSpec { p, m, n }))
        .collect()
}

fn det_with_fault(spec: HankelSpec, fault: Option<HankelSpec>) -> MultiPoly {
    if spec.n < 0 {
        return MultiPoly::one();
    }
    let mut mat = hankel_matrix(spec);
    if fault == Some(spec) {
        let bumped = mat.get(0, 0) + &MultiPoly::one();
        mat.set(0, 0, bumped);
    }
    det_division_free(&mat, &MultiPoly::one()).expect("square")
}

/// `(r+1)/(np+r+1) C(np+r+1, n)`.
fn ballot_general(p: u32, n: u32, r: u32) -> BigInt {
    let m = (n * p + r + 1) as u64;
    binomial(m, n as u64) * BigInt::from(r + 1) / BigInt::from(m)
}

pub fn verify_all(cfg: &VerifyConfig) -> VerifyReport {
    let ps: Vec<u32> = (cfg.p_min.max(2)..=cfg.p_max).collect();
    let n_max = cfg.n_max;
    let mut report = VerifyReport::default();

    let items: Vec<(u32, u32)> = ps.iter().flat_map(|&p| (0..=n_max).map(move |n| (p, n))).collect();
    report.checks.push(run("path_counts", items.clone(), |&(p, n)| {
        for r in 0..p {
            let (got, want) = (count_paths(p, n, r), ballot_general(p, n, r));
            if got != want {
                return Err(format!("p={p} n={n} r={r}: {got} paths, expected {want}"));
            }
        }
        if count_paths(p, n, 0) != fuss_catalan(p, n) {
            return Err(format!("p={p} n={n}: excursion count differs from C(np+1,n)/(np+1)"));
        }
        Ok(())
    }));

    report.checks.push(run("first_passage", ps.clone(), |&p| {
        for r in 0..p {
            let series = expand_f(p, r, 0, n_max as usize);
            for n in 0..=n_max {
                if *series.coeff(n as usize) != f_poly(p, n, r) {
                    return Err(format!("p={p} r={r} n={n}"));
                }
            }
        }
        Ok(())
    }));

    report.checks.push(run("multicontinued_fraction", ps.clone(), |&p| {
        let series = expand_multicont(p, n_max as usize);
        for n in 0..=n_max {
            if *series.coeff(n as usize) != f_poly(p, n, 0) {
                return Err(format!("p={p} n={n}"));
            }
        }
        Ok(())
    }));

    let specs: Vec<HankelSpec> = ps.iter().flat_map(|&p| hankel_specs(p, n_max as i64)).collect();
    let dets: Vec<MultiPoly> = specs.par_iter().map(|&s| det_with_fault(s, cfg.fault)).collect();
    let det_table: HashMap<HankelSpec, MultiPoly> = specs.iter().copied().zip(dets).collect();
    report.checks.push(run("hankel_product", specs.clone(), |spec| {
        check_product_formula(*spec, &det_table[spec]).map_err(|e| format!("{spec}: {e}"))
    }));

    let recover_items: Vec<(u32, u32)> = ps
        .iter()
        .flat_map(|&p| (1..=p * n_max + p - 1).map(move |i| (p, i)))
        .collect();
    report.checks.push(run("recover_vi", recover_items, |&(p, i)| {
        let lookup = |s: HankelSpec| Ok(det_table.get(&s).cloned().unwrap_or_else(MultiPoly::one));
        match recover_vi_with(p, i, lookup) {
            Ok(v) if v == MultiPoly::v(i) => Ok(()),
            Ok(v) => Err(format!("p={p} i={i}: recovered {v}")),
            Err(e) => Err(format!("p={p} i={i}: {e}")),
        }
    }));

    let lgv_specs: Vec<HankelSpec> = specs
        .iter()
        .copied()
        .filter(|s| s.p <= LGV_P_MAX && s.n <= LGV_N_MAX)
        .collect();
    report.checks.push(run("lgv", lgv_specs, |spec| {
        let det = &det_table[spec];
        let signed = lgv_signed_sum(*spec);
        if signed != *det {
            return Err(format!("{spec}: signed path sum {signed} != determinant {det}"));
        }
        let nilp = nilp_unique(*spec).map_err(|e| format!("{spec}: {e}"))?;
        if nilp.weight != *det {
            return Err(format!("{spec}: unique family has weight {}", nilp.weight));
        }
        Ok(())
    }));

    let solver_deg = cfg.order;
    report.checks.push(run("solver", ps.clone(), |&p| {
        let imax = (n_max * (p - 1)).max(2 * p + 2);
        let scfg = SolverConfig::new(p, solver_deg, 2, imax).map_err(|e| e.to_string())?;
        let solver = Solver::new(scfg);
        let fam = solver.solve();
        if let Some(i) = solver.residual_failure(&fam) {
            return Err(format!("p={p}: V_{i} violates its recursion"));
        }
        let wide = scfg.with_index_cap(2 * scfg.index_cap).map_err(|e| e.to_string())?;
        let fam_wide = solve_vi(&wide);
        if let Some(i) = (1..=imax).find(|&i| fam.get(i) != fam_wide.get(i)) {
            return Err(format!("p={p}: V_{i} depends on the index cap"));
        }
        for n in 0..=n_max {
            let oracle = fam.substitute(&f_poly(p, n, 0)).map_err(|e| e.to_string())?;
            if oracle != f_from_v(&scfg, n) {
                return Err(format!("p={p} n={n}: closed formula for F_n disagrees"));
            }
        }
        Ok(())
    }));

    if ps.contains(&3) {
        let tutte_n: Vec<u32> = (0..=n_max.min(2)).collect();
        let order = cfg.order.min(6);
        report.checks.push(run("tutte", tutte_n, |&n| {
            let scfg = SolverConfig::new(3, order, 2, 1).map_err(|e| e.to_string())?;
            match f1_tutte_check(&scfg, n) {
                Ok(true) => Ok(()),
                Ok(false) => Err(format!("n={n}")),
                Err(e) => Err(format!("n={n}: {e}")),
            }
        }));
        report.checks.push(eulerian_checks(cfg));
    }
    report
}

fn eulerian_checks(cfg: &VerifyConfig) -> CheckReport {
    let order = cfg.order;
    let ctx = eulerian::make_context(order);
    let imax = 8.max(2 * cfg.n_max + 2);
    let fam = eulerian::v_family(imax, order);
    let mut tasks: Vec<Box<dyn Fn() -> Result<(), String> + Sync + '_>> = Vec::new();
    let (ctx, fam) = (&ctx, &fam);
    tasks.push(Box::new(move || if ctx.check_y() { Ok(()) } else { Err("y equation".into()) }));
    for i in 1..=8u32 {
        tasks.push(Box::new(move || {
            if *fam.get(i) != eulerian::v_closed(i, ctx) {
                return Err(format!("V_{i}: recursion and closed form differ"));
            }
            let diff = ctx.v.clone() - fam.get(i).clone();
            match diff.valuation() {
                Some(val) if val < i => Err(format!("V - V_{i} has order {val}")),
                _ => Ok(()),
            }
        }));
    }
    for n in 0..=cfg.n_max {
        tasks.push(Box::new(move || {
            let f = fam.substitute(&f_poly(3, n, 0)).map_err(|e| e.to_string())?;
            let f1 = fam.substitute(&f_poly(3, n, 1)).map_err(|e| e.to_string())?;
            if f != eulerian::f_closed(n, ctx) || f != eulerian::f_closed_alt(n, ctx) {
                return Err(format!("F_{n}: closed form differs"));
            }
            if f1 != eulerian::f1_closed(n, ctx) {
                return Err(format!("F1_{n}: closed form differs"));
            }
            Ok(())
        }));
    }
    let top = 3 * cfg.n_max + 3;
    for n in 1..=top {
        tasks.push(Box::new(move || {
            if eulerian::fib_chebyshev_check(n, order) {
                Ok(())
            } else {
                Err(format!("Chebyshev relation fails at n={n}"))
            }
        }));
    }
    tasks.push(Box::new(move || eulerian::verify_det3(cfg.n_max, order).map_err(|e| e.to_string())));
    run("eulerian", tasks, |t| t())
}
