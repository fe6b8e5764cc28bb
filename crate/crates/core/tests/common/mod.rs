//! Randomized property suites shared by the acceptance runner and the
//! regular test target. Every suite uses a fixed seed.

#![allow(dead_code)]

use constel::algebra::{det_division_free, poly_substitute, Matrix, Monomial, MultiPoly, Substitution, Var, XSeries};
use constel::contfrac::{expand_f, expand_multicont_depth};
use constel::eulerian;
use constel::hankel::{expected_monomial, hankel_det, hankel_matrix, permutations, HankelSpec};
use constel::paths::{count_paths, enumerate_paths, f_poly, path_sum, path_weight, Point};
use constel::solver::{Solver, SolverConfig};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};

pub const CASES: u32 = 128;

pub type Suite = (&'static str, fn() -> Result<u32, String>);

fn runner(seed: u64) -> TestRunner {
    TestRunner::new(Config {
        cases: CASES,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    })
}

fn check<S: Strategy>(seed: u64, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<u32, String> {
    runner(seed).run(&strategy, test).map(|()| CASES).map_err(|e| e.to_string())
}

fn monomial() -> impl Strategy<Value = Monomial> {
    (0u32..3, 0u32..3, 0u32..2, 0u32..2).prop_map(|(a, b, c, d)| {
        Monomial::from_pairs([(Var::V(1), a), (Var::V(2), b), (Var::X(1), c), (Var::X(2), d)])
    })
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((-4i64..=4, monomial()), 0..5)
        .prop_map(|terms| MultiPoly::from_terms(terms.into_iter().map(|(c, m)| (m, BigInt::from(c)))))
}

fn nonzero_poly() -> impl Strategy<Value = MultiPoly> {
    poly().prop_filter("nonzero divisor", |p| !p.is_zero())
}

fn series(order: u32) -> impl Strategy<Value = XSeries> {
    prop::collection::vec(-3i64..=3, (order + 1) as usize)
        .prop_map(move |c| XSeries::from_coeffs(&c, order))
}

fn without_constant(s: &XSeries) -> XSeries {
    s - &XSeries::constant(s.constant_term(), s.order())
}

fn unit_series(order: u32) -> impl Strategy<Value = XSeries> {
    (series(order), prop::bool::ANY).prop_map(move |(s, neg)| {
        let c0 = if neg { -1 } else { 1 };
        &without_constant(&s) + &XSeries::constant(c0, order)
    })
}

fn permutation_det(m: &Matrix<MultiPoly>) -> MultiPoly {
    let n = m.size().0;
    let mut total = MultiPoly::zero();
    for (perm, sign) in permutations(n) {
        let term = perm.iter().enumerate().fold(MultiPoly::one(), |acc, (i, &j)| &acc * m.get(i, j));
        total = if sign > 0 { &total + &term } else { &total - &term };
    }
    total
}

pub fn ring_laws() -> Result<u32, String> {
    check(0x5eed_0001, (poly(), poly(), poly()), |(a, b, c)| {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        Ok(())
    })
}

pub fn exact_division() -> Result<u32, String> {
    check(0x5eed_0002, (poly(), nonzero_poly()), |(a, b)| {
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
        Ok(())
    })
}

pub fn determinant_vs_permutations() -> Result<u32, String> {
    let strategy = (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, 2), n * n).prop_map(move |entries| {
            Matrix::from_fn(n, n, |i, j| {
                let [c, d] = [entries[i * n + j][0], entries[i * n + j][1]];
                &MultiPoly::constant(c) + &MultiPoly::v((i + j) as u32 % 3 + 1).scale(d)
            })
        })
    });
    check(0x5eed_0003, strategy, |m| {
        prop_assert_eq!(det_division_free(&m, &MultiPoly::one()).unwrap(), permutation_det(&m));
        Ok(())
    })
}

pub fn series_inverse() -> Result<u32, String> {
    let strategy = (0u32..=8).prop_flat_map(unit_series);
    check(0x5eed_0004, strategy, |a| {
        let order = a.order();
        prop_assert_eq!(&a * &a.inv().unwrap(), XSeries::one(order));
        Ok(())
    })
}

pub fn substitution_morphism() -> Result<u32, String> {
    let order = 5;
    let strategy = (poly(), poly(), series(order), unit_series(order), series(order));
    check(0x5eed_0005, strategy, |(a, b, s1, s2, s3)| {
        let subst = Substitution::new()
            .with_v(1, s1)
            .with_v(2, s2)
            .with_x(1, XSeries::x(1, order))
            .with_x(2, without_constant(&s3));
        let sub = |p: &MultiPoly| poly_substitute(p, &subst, order).unwrap();
        prop_assert_eq!(sub(&(&a * &b)), &sub(&a) * &sub(&b));
        prop_assert_eq!(sub(&(&a + &b)), &sub(&a) + &sub(&b));
        Ok(())
    })
}

pub fn path_sum_vs_enumeration() -> Result<u32, String> {
    let strategy = (2u32..=4, 0i64..=4, 0i64..=4, 0i64..=10);
    check(0x5eed_0006, strategy, |(p, h0, h1, len)| {
        let (start, end) = (Point::new(0, h0), Point::new(len, h1));
        let brute = enumerate_paths(p, start, end)
            .iter()
            .fold(MultiPoly::zero(), |acc, path| &acc + &path_weight(path));
        prop_assert_eq!(path_sum(p, start, end), brute);
        Ok(())
    })
}

pub fn path_polynomials() -> Result<u32, String> {
    check(0x5eed_0007, (2u32..=5, 0u32..=5), |(p, n)| {
        let f = f_poly(p, n, 0);
        prop_assert_eq!(f_poly(p, n, p - 1), f_poly(p, n + 1, 0));
        prop_assert!(f.terms().all(|(_, c)| *c > BigInt::from(0)));
        prop_assert_eq!(f.eval_ones(), count_paths(p, n, 0));
        Ok(())
    })
}

pub fn path_counts() -> Result<u32, String> {
    check(0x5eed_0008, (2u32..=5, 0u32..=6, 0u32..=4), |(p, n, r)| {
        let m = (n * p + r + 1) as u64;
        let want = constel::paths::binomial(m, n as u64) * BigInt::from(r + 1) / BigInt::from(m);
        prop_assert_eq!(count_paths(p, n, r), want);
        if p == 3 && n >= 1 {
            prop_assert_eq!(count_paths(3, n, 1), count_paths(3, n, 0) + count_paths(3, n - 1, 3));
        }
        Ok(())
    })
}

pub fn shift_covariance() -> Result<u32, String> {
    let strategy = (2u32..=4).prop_flat_map(|p| (Just(p), 0..p, 0u32..=4, 0usize..=3));
    check(0x5eed_0009, strategy, |(p, r, shift, order)| {
        let shifted = expand_f(p, r, shift, order);
        for n in 0..=order {
            prop_assert_eq!(shifted.coeff(n), &f_poly(p, n as u32, r).shift_v(shift));
        }
        Ok(())
    })
}

pub fn nesting_depth() -> Result<u32, String> {
    check(0x5eed_000a, (2u32..=4, 0usize..=4, 0usize..=4), |(p, order, extra)| {
        let deep = expand_multicont_depth(p, order, order + extra);
        for n in 0..=order {
            prop_assert_eq!(deep.coeff(n), &f_poly(p, n as u32, 0));
        }
        Ok(())
    })
}

pub fn hankel_products() -> Result<u32, String> {
    let strategy = (2u32..=4).prop_flat_map(|p| (Just(p), 0..p, -1i64..=2));
    check(0x5eed_000b, strategy, |(p, m, n)| {
        let spec = HankelSpec::new(p, m, n).unwrap();
        prop_assert_eq!(hankel_det(spec), expected_monomial(spec));
        if p == 2 && n >= 0 {
            let mat = hankel_matrix(spec);
            for i in 0..=n as usize {
                for j in 0..=n as usize {
                    prop_assert_eq!(mat.get(i, j), &f_poly(2, (i + j) as u32 + m, 0));
                }
            }
        }
        Ok(())
    })
}

pub fn solver_fixed_point() -> Result<u32, String> {
    check(0x5eed_000c, (2u32..=3, 0u32..=3, 1u32..=2, 1u32..=4), |(p, d, k, i)| {
        let solver = Solver::new(SolverConfig::new(p, d, k, i).unwrap());
        let fam = solver.solve();
        prop_assert_eq!(solver.residual_failure(&fam), None);
        let again = solver.sweep(&fam);
        for idx in 1..=i {
            prop_assert_eq!(again.get(idx), fam.get(idx));
        }
        Ok(())
    })
}

pub fn eulerian_closed_forms() -> Result<u32, String> {
    check(0x5eed_000d, (1u32..=8, 0u32..=10), |(i, order)| {
        let ctx = eulerian::make_context(order);
        let vi = eulerian::v_series(i, order);
        prop_assert_eq!(&vi, &eulerian::v_closed(i, &ctx));
        let diff = &ctx.v - &vi;
        prop_assert!(diff.valuation().is_none_or(|v| v >= i));
        prop_assert!(ctx.check_y());
        Ok(())
    })
}

pub fn fibonacci_chebyshev() -> Result<u32, String> {
    check(0x5eed_000e, (1u32..=24, 0u32..=6), |(n, order)| {
        prop_assert!(eulerian::fib_chebyshev_check(n, order));
        Ok(())
    })
}

pub const SUITES: &[Suite] = &[
    ("ring laws", ring_laws),
    ("exact division", exact_division),
    ("determinant vs permutation sum", determinant_vs_permutations),
    ("series inverse", series_inverse),
    ("substitution morphism", substitution_morphism),
    ("path sum vs enumeration", path_sum_vs_enumeration),
    ("path polynomials", path_polynomials),
    ("path counts", path_counts),
    ("shift covariance", shift_covariance),
    ("nesting depth", nesting_depth),
    ("hankel products", hankel_products),
    ("solver fixed point", solver_fixed_point),
    ("eulerian closed forms", eulerian_closed_forms),
    ("fibonacci chebyshev", fibonacci_chebyshev),
];
