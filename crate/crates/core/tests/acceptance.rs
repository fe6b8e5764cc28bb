//! Acceptance runner: one PASS/FAIL line per criterion. All comparisons are
//! exact equality (tolerance 0); wall-clock limits are part of the criterion.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use constel::algebra::{MultiPoly, XSeries};
use constel::contfrac::expand_multicont;
use constel::eulerian::{self, fib_poly};
use constel::hankel::{expected_monomial, hankel_det, lgv_signed_sum, nilp_unique, recover_vi, HankelSpec};
use constel::paths::{count_paths, f_poly, fuss_catalan};
use constel::solver::{f1_tutte_check, f_from_v, solve_vi, Solver, SolverConfig};
use num_bigint::BigInt;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome, Option<Duration>);

fn poly(s: &str) -> MultiPoly {
    s.parse().expect("fixture text")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn golden_fixtures() -> Outcome {
    let v12 = poly("V1*V2");
    let fixtures = [
        ("F_1", f_poly(3, 1, 0), v12.clone()),
        ("F_2", f_poly(3, 2, 0), &v12 * &poly("V1*V2 + V2*V3 + V3*V4")),
        (
            "F_3",
            f_poly(3, 3, 0),
            &v12 * &poly(
                "V1^2*V2^2 + 2*V1*V2^2*V3 + V2^2*V3^2 + 2*V1*V2*V3*V4 + 2*V2*V3^2*V4 \
                 + V3^2*V4^2 + V2*V3*V4*V5 + V3*V4^2*V5 + V3*V4*V5*V6",
            ),
        ),
        ("F_0^(1)", f_poly(3, 0, 1), poly("V1")),
        ("F_1^(1)", f_poly(3, 1, 1), &v12 * &poly("V1 + V3")),
        (
            "F_2^(1)",
            f_poly(3, 2, 1),
            &v12 * &poly("V1^2*V2 + 2*V1*V2*V3 + V2*V3^2 + V1*V3*V4 + V3^2*V4 + V3*V4*V5"),
        ),
    ];
    for (name, got, want) in &fixtures {
        ensure(got == want, || format!("{name}: got {got}, expected {want}"))?;
        let reparsed: MultiPoly = got.to_string().parse().map_err(|e| format!("{name}: {e}"))?;
        ensure(reparsed == *got, || format!("{name}: canonical text does not round-trip"))?;
    }
    Ok(format!("{} fixtures", fixtures.len()))
}

fn continued_fraction() -> Outcome {
    let mut checks = 0;
    for p in 2..=4 {
        let series = expand_multicont(p, 6);
        for n in 0..=6u32 {
            let want = f_poly(p, n, 0);
            ensure(*series.coeff(n as usize) == want, || format!("p={p} n={n}"))?;
            checks += 1;
        }
    }
    Ok(format!("{checks} coefficients"))
}

fn hankel_products() -> Outcome {
    let mut checks = 0;
    for p in 2..=4u32 {
        for m in 0..p {
            for n in 0..=3i64 {
                let spec = HankelSpec::new(p, m, n).unwrap();
                let (det, want) = (hankel_det(spec), expected_monomial(spec));
                ensure(det == want, || format!("{spec}: got {det}, expected {want}"))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} determinants"))
}

fn inversion() -> Outcome {
    let mut checks = 0;
    for p in 2..=4u32 {
        for i in 1..=2 * p + 2 {
            let got = recover_vi(p, i).map_err(|e| format!("p={p} i={i}: {e}"))?;
            ensure(got == MultiPoly::v(i), || format!("p={p} i={i}: recovered {got}"))?;
            checks += 1;
        }
    }
    Ok(format!("{checks} indices"))
}

fn lgv() -> Outcome {
    let mut checks = 0;
    for p in 2..=3u32 {
        for m in 0..p {
            for n in 0..=2i64 {
                let spec = HankelSpec::new(p, m, n).unwrap();
                let det = hankel_det(spec);
                let signed = lgv_signed_sum(spec);
                ensure(signed == det, || format!("{spec}: signed sum {signed} != {det}"))?;
                let nilp = nilp_unique(spec).map_err(|e| format!("{spec}: {e}"))?;
                ensure(nilp.count == 1 && nilp.weight == expected_monomial(spec), || {
                    format!("{spec}: {} families, weight {}", nilp.count, nilp.weight)
                })?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} configurations"))
}

fn path_counts() -> Outcome {
    let mut checks = 0;
    for p in 2..=5u32 {
        for n in 0..=6u32 {
            let (got, want) = (count_paths(p, n, 0), fuss_catalan(p, n));
            ensure(got == want, || format!("p={p} n={n}: {got} != {want}"))?;
            checks += 1;
        }
    }
    for n in 0..=6u32 {
        for r in 0..=2u32 {
            let (got, want) = (count_paths(3, n, r), eulerian::ballot(n as i64, r));
            ensure(got == want, || format!("p=3 n={n} r={r}: {got} != {want}"))?;
            checks += 1;
        }
        let rhs = eulerian::ballot(n as i64, 0)
            + if n >= 1 { count_paths(3, n - 1, 3) } else { BigInt::from(0) };
        ensure(eulerian::ballot(n as i64, 1) == rhs, || format!("p_{n}^(1) decomposition"))?;
        checks += 1;
    }
    Ok(format!("{checks} counts"))
}

fn solver() -> Outcome {
    let cfg = SolverConfig::new(3, 4, 2, 6).map_err(|e| e.to_string())?;
    let solver = Solver::new(cfg);
    let fam = solver.solve();
    if let Some(i) = solver.residual_failure(&fam) {
        return Err(format!("V_{i} fails its recursion"));
    }
    let wide = solve_vi(&cfg.with_index_cap(2 * cfg.index_cap).map_err(|e| e.to_string())?);
    for i in 1..=cfg.imax {
        ensure(fam.get(i) == wide.get(i), || format!("V_{i} changes when the index cap doubles"))?;
    }
    for n in 0..=3 {
        let oracle = fam.substitute(&f_poly(3, n, 0)).map_err(|e| e.to_string())?;
        ensure(oracle == f_from_v(&cfg, n), || format!("closed formula for F_{n}"))?;
    }
    for n in 0..=2 {
        let ok = f1_tutte_check(&cfg, n).map_err(|e| e.to_string())?;
        ensure(ok, || format!("Tutte identity at n={n}"))?;
    }
    Ok(format!("index cap {}", cfg.index_cap))
}

fn eulerian_suite() -> Outcome {
    let ctx16 = eulerian::make_context(16);
    ensure(ctx16.check_y(), || "y equation at order 16".into())?;
    let fam16 = eulerian::v_family(16, 16);
    for i in 1..=8 {
        ensure(*fam16.get(i) == eulerian::v_closed(i, &ctx16), || format!("V_{i} closed form"))?;
    }
    for i in 1..=16 {
        let diff = &ctx16.v - fam16.get(i);
        ensure(diff.valuation().is_none_or(|v| v >= i), || format!("V - V_{i} order"))?;
    }

    let order = 12;
    let ctx = eulerian::make_context(order);
    let fam = eulerian::v_family(2 * 4 + 2, order);
    for n in 0..=4 {
        let f = fam.substitute(&f_poly(3, n, 0)).map_err(|e| e.to_string())?;
        let f1 = fam.substitute(&f_poly(3, n, 1)).map_err(|e| e.to_string())?;
        ensure(f == eulerian::f_closed(n, &ctx), || format!("F_{n} closed form"))?;
        ensure(f1 == eulerian::f1_closed(n, &ctx), || format!("F_{n}^(1) closed form"))?;
    }
    for n in 0..=5 {
        ensure(eulerian::f_closed_alt(n, &ctx) == eulerian::f_closed(n, &ctx), || format!("alternate F_{n}"))?;
    }
    let x = XSeries::x(1, order);
    for n in 0..=4 {
        let mut rhs = &x * &eulerian::f_closed(n + 1, &ctx);
        for i in 0..=n {
            rhs = &rhs + &(&eulerian::f_closed(i, &ctx) * &eulerian::f_closed(n - i, &ctx));
        }
        ensure(eulerian::f1_closed(n, &ctx) == rhs, || format!("F_{n}^(1) convolution"))?;
    }

    let ts: Vec<XSeries> = (1..=15).map(|n| eulerian::t_n(n, &ctx).unwrap()).collect();
    let one_minus_xv = ctx.one_minus_xv();
    for n in 1..=12u32 {
        let t = |k: u32| &ts[k as usize - 1];
        ensure(*t(n) == fib_poly(n).eval(&ctx.xv), || format!("T_{n} != phi_{n}(xV)"))?;
        let rec = &(&one_minus_xv * t(n + 1)) - &(&ctx.xv * t(n));
        ensure(*t(n + 3) == rec, || format!("T recurrence at n={n}"))?;
    }
    for n in 1..=12 {
        ensure(eulerian::fib_chebyshev_check(n, order), || format!("Chebyshev relation n={n}"))?;
    }
    eulerian::verify_det3(3, 12).map_err(|e| format!("verify_det3(3, 12): {e}"))?;
    Ok("orders 12 and 16".into())
}

fn properties() -> Outcome {
    let mut cases = 0;
    for (name, suite) in common::SUITES {
        cases += suite().map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} suites, {cases} cases", common::SUITES.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "golden path polynomials", golden_fixtures, Some(Duration::from_secs(1))),
        (2, "continued fraction = path sums", continued_fraction, Some(Duration::from_secs(30))),
        (3, "Hankel product formula", hankel_products, Some(Duration::from_secs(120))),
        (4, "recovery of V_i", inversion, None),
        (5, "LGV and unique NILP", lgv, None),
        (6, "path counts", path_counts, None),
        (7, "series solver", solver, None),
        (8, "Eulerian triangulations", eulerian_suite, Some(Duration::from_secs(120))),
        (9, "property suites", properties, None),
    ];
    let mut failed = 0;
    for (id, name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        let limit_text = limit.map(|l| format!(", limit {l:?}")).unwrap_or_default();
        match outcome {
            Ok(detail) => println!("PASS criterion {id}: {name} [exact, {detail}, {elapsed:.2?}{limit_text}]"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {id}: {name} [exact, {elapsed:.2?}{limit_text}] {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
