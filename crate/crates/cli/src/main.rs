use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use constel::contfrac::{expand_f, expand_multicont};
use constel::eulerian::{self, make_context};
use constel::hankel::{expected_monomial, hankel_det, lgv_signed_sum, nilp_search, recover_vi, HankelSpec};
use constel::paths::f_poly;
use constel::verify::{verify_all, VerifyConfig};
use constel::{MultiPoly, XSeries};

/// Exact computations with p-paths, multicontinued fractions and Hankel
/// determinants.
#[derive(Parser)]
#[command(name = "constel", version)]
struct Cli {
    /// Print JSON instead of canonical text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct PArg {
    /// Path parameter, at least 2.
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    p: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Path polynomial F_n^{(r)}.
    Fn {
        #[command(flatten)]
        p: PArg,
        #[arg(long)]
        n: u32,
        /// Starting height, 0 <= r <= p-1.
        #[arg(long, default_value_t = 0)]
        r: u32,
    },
    /// Coefficients of F^{(r)} in the rise marker t.
    Contfrac {
        #[command(flatten)]
        p: PArg,
        #[arg(long)]
        order: u32,
        #[arg(long, default_value_t = 0)]
        r: u32,
        /// Rename every V_i to V_{i+shift}.
        #[arg(long, default_value_t = 0)]
        shift: u32,
    },
    /// Hankel determinant H(p, m, n).
    Hankel {
        #[command(flatten)]
        p: PArg,
        #[arg(long)]
        m: u32,
        #[arg(long, allow_negative_numbers = true, value_parser = clap::value_parser!(i64).range(-1..))]
        n: i64,
    },
    /// Recover V_i from determinants of the F data.
    Invert {
        #[command(flatten)]
        p: PArg,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        i: u32,
    },
    /// Compare the LGV signed path sum and the non-intersecting families with H(p, m, n).
    Lgv {
        #[command(flatten)]
        p: PArg,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: i64,
    },
    /// Series of the Eulerian triangulation specialization.
    EulerSeries {
        #[arg(long, value_enum, default_value_t = EulerKind::Vi)]
        kind: EulerKind,
        /// Index of V_i.
        #[arg(long, default_value_t = 1)]
        i: u32,
        /// Index of F_n, F_n^{(1)} or T_n.
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long)]
        order: u32,
    },
    /// Check the Eulerian determinant formulas and the T_n recurrence.
    EulerVerify {
        #[arg(long, default_value_t = 3)]
        kmax: u32,
        #[arg(long, default_value_t = 12)]
        order: u32,
    },
    /// Run every identity check over a parameter range.
    VerifyAll {
        #[arg(long, default_value_t = 2)]
        p_min: u32,
        #[arg(long, default_value_t = 4)]
        p_max: u32,
        #[arg(long, default_value_t = 3)]
        n_max: u32,
        #[arg(long, default_value_t = 10)]
        order: u32,
        /// Corrupt the top-left entry of H(p, m, n), given as P,M,N.
        #[arg(long, hide = true, value_parser = parse_fault)]
        inject_fault: Option<HankelSpec>,
    },
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum EulerKind {
    /// V = 1 + 2xV^2
    V,
    /// y = xV (1+y)^2
    Y,
    /// V_i from the recursion
    Vi,
    /// V_i from the closed form in V and y
    ViClosed,
    /// F_n in closed form
    F,
    /// F_n^{(1)} in closed form
    F1,
    /// normalized determinant T_n
    T,
}

fn parse_fault(s: &str) -> Result<HankelSpec, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [p, m, n] = parts.as_slice() else {
        return Err("expected P,M,N".into());
    };
    let num = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"));
    let (p, m, n) = (num(p)?, num(m)?, num(n)?);
    if p < 0 || m < 0 {
        return Err("P and M must be non-negative".into());
    }
    HankelSpec::new(p as u32, m as u32, n).map_err(|e| e.to_string())
}

struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, ok: true }
    }
}

fn usage_error(flag: &str, msg: String) -> ! {
    Cli::command()
        .error(ErrorKind::ValueValidation, format!("invalid value for '{flag}': {msg}"))
        .exit()
}

fn check_below_p(flag: &str, value: u32, p: u32) {
    if value >= p {
        usage_error(flag, format!("{value} is not in 0..={}", p - 1));
    }
}

fn hankel_spec(p: u32, m: u32, n: i64) -> HankelSpec {
    check_below_p("--m", m, p);
    HankelSpec::new(p, m, n).unwrap_or_else(|e| usage_error("--n", e.to_string()))
}

fn poly_json(command: &str, params: Value, result: &MultiPoly) -> Value {
    json!({ "command": command, "params": params, "result": result })
}

fn run(command: Command) -> Output {
    match command {
        Command::Fn { p: PArg { p }, n, r } => {
            check_below_p("--r", r, p);
            let f = f_poly(p, n, r);
            Output::ok(f.to_string(), poly_json("fn", json!({"p": p, "n": n, "r": r}), &f))
        }
        Command::Contfrac { p: PArg { p }, order, r, shift } => {
            check_below_p("--r", r, p);
            let series = if r == 0 && shift == 0 {
                expand_multicont(p, order as usize)
            } else {
                expand_f(p, r, shift, order as usize)
            };
            let text = series
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| format!("t^{k}: {c}"))
                .collect::<Vec<_>>()
                .join("\n");
            let json = json!({
                "command": "contfrac",
                "params": {"p": p, "order": order, "r": r, "shift": shift},
                "result": series,
            });
            Output::ok(text, json)
        }
        Command::Hankel { p: PArg { p }, m, n } => {
            let spec = hankel_spec(p, m, n);
            let det = hankel_det(spec);
            let ok = det == expected_monomial(spec);
            let json = poly_json("hankel", json!({"p": p, "m": m, "n": n}), &det);
            Output { text: det.to_string(), json, ok }
        }
        Command::Invert { p: PArg { p }, i } => match recover_vi(p, i) {
            Ok(v) => {
                let ok = v == MultiPoly::v(i);
                let json = poly_json("invert", json!({"p": p, "i": i}), &v);
                Output { text: v.to_string(), json, ok }
            }
            Err(e) => Output {
                text: format!("FAIL {e}"),
                json: json!({"command": "invert", "params": {"p": p, "i": i}, "error": e.to_string()}),
                ok: false,
            },
        },
        Command::Lgv { p: PArg { p }, m, n } => {
            let spec = hankel_spec(p, m, n);
            let det = hankel_det(spec);
            let signed = lgv_signed_sum(spec);
            let nilp = nilp_search(spec);
            let ok = signed == det && nilp.count == 1 && nilp.weight == det;
            let text = format!(
                "determinant: {det}\nsigned_path_sum: {signed}\nnonintersecting_families: {}\nfamily_weight: {}",
                nilp.count, nilp.weight
            );
            let json = json!({
                "command": "lgv",
                "params": {"p": p, "m": m, "n": n},
                "determinant": det,
                "signed_path_sum": signed,
                "nonintersecting_families": nilp.count,
                "family_weight": nilp.weight,
            });
            Output { text, json, ok }
        }
        Command::EulerSeries { kind, i, n, order } => {
            let ctx = make_context(order);
            let series: XSeries = match kind {
                EulerKind::V => ctx.v.clone(),
                EulerKind::Y => ctx.y.clone(),
                EulerKind::Vi => eulerian::v_series(i, order),
                EulerKind::ViClosed => {
                    if i == 0 {
                        usage_error("--i", "the closed form needs i >= 1".into());
                    }
                    eulerian::v_closed(i, &ctx)
                }
                EulerKind::F => eulerian::f_closed(n, &ctx),
                EulerKind::F1 => eulerian::f1_closed(n, &ctx),
                EulerKind::T => {
                    if n == 0 {
                        usage_error("--n", "T_n needs n >= 1".into());
                    }
                    eulerian::t_n(n, &ctx).expect("V has constant term 1")
                }
            };
            let kind_name = kind.to_possible_value().expect("not skipped").get_name().to_string();
            let json = json!({
                "command": "euler-series",
                "params": {"kind": kind_name, "i": i, "n": n, "order": order},
                "result": series,
            });
            Output::ok(series.to_string(), json)
        }
        Command::EulerVerify { kmax, order } => {
            let outcome = eulerian::verify_det3(kmax, order);
            let top = 3 * kmax + 3;
            let text = match &outcome {
                Ok(()) => format!("PASS T_n = phi_n(xV) for 1 <= n <= {top} and the T_n recurrence, order {order}"),
                Err(w) => format!("FAIL {w}"),
            };
            let json = json!({
                "command": "euler-verify",
                "params": {"kmax": kmax, "order": order},
                "passed": outcome.is_ok(),
                "failure": outcome.as_ref().err().map(ToString::to_string),
            });
            Output { text, json, ok: outcome.is_ok() }
        }
        Command::VerifyAll { p_min, p_max, n_max, order, inject_fault } => {
            let report = verify_all(&VerifyConfig { p_min, p_max, n_max, order, fault: inject_fault });
            let json = json!({
                "command": "verify-all",
                "params": {"p_min": p_min, "p_max": p_max, "n_max": n_max, "order": order},
                "passed": report.passed(),
                "total_checks": report.total(),
                "checks": report.checks,
            });
            Output { text: report.to_string(), json, ok: report.passed() }
        }
    }
}

fn configure_threads() {
    let Ok(raw) = std::env::var("CONSTEL_THREADS") else {
        return;
    };
    match raw.trim().parse::<usize>() {
        Ok(n) if n >= 1 => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                eprintln!("warning: CONSTEL_THREADS ignored: {e}");
            }
        }
        _ => eprintln!("warning: CONSTEL_THREADS={raw:?} is not a positive integer, ignored"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let out = run(cli.command);
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&out.json).expect("JSON values serialize"));
    } else {
        println!("{}", out.text);
    }
    if out.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
