//! Generalized Hankel determinants of the `F_n^{(r)}` data.
//!
//! For `m` in `[0, p-1]` and `n >= 0` the matrix has entry
//! `F^{(r_{i+m})}_{q_{i+m}+j}` at `(i, j)`, where `q_k, r_k` are quotient and
//! remainder of `k` by `p - 1`. Its determinant is the monomial
//! `prod_{i=0}^{n} prod_{j=1}^{ip+m} V_j`, and ratios of such determinants
//! give back every `V_i`. The monomial comes from the unique family of
//! non-intersecting paths between the sources `A_k = (-p q_k - r_k, r_k)`
//! and the sinks `B_j = (jp, 0)`.

use std::collections::HashSet;
use std::fmt;

use crate::algebra::{det_division_free, MultiPoly, PolyMatrix};
use crate::error::{Error, Result};
use crate::paths::{enumerate_paths, f_poly, path_weight, PPath, Point};

/// Index data `(p, m, n)` of a determinant. `n = -1` is the empty
/// determinant, equal to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HankelSpec {
    pub p: u32,
    pub m: u32,
    pub n: i64,
}

impl HankelSpec {
    pub fn new(p: u32, m: u32, n: i64) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidArgument(format!("p = {p}, need p >= 2")));
        }
        if m >= p {
            return Err(Error::InvalidArgument(format!("m = {m}, need 0 <= m <= p-1 = {}", p - 1)));
        }
        if n < -1 {
            return Err(Error::InvalidArgument(format!("n = {n}, need n >= -1")));
        }
        Ok(HankelSpec { p, m, n })
    }

    /// Matrix dimension `n + 1`.
    pub fn size(&self) -> usize {
        (self.n + 1) as usize
    }
}

impl fmt::Display for HankelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p,m,n)=({},{},{})", self.p, self.m, self.n)
    }
}

/// Quotient and remainder of `k` by `p - 1`.
pub fn qr(k: u32, p: u32) -> (u32, u32) {
    assert!(p >= 2, "p must be at least 2");
    (k / (p - 1), k % (p - 1))
}

/// Source `A_k = (-p q_k - r_k, r_k)`.
pub fn source(p: u32, k: u32) -> Point {
    let (q, r) = qr(k, p);
    Point::new(-((p * q + r) as i64), r as i64)
}

/// Sink `B_j = (jp, 0)`.
pub fn sink(p: u32, j: u32) -> Point {
    Point::new((j * p) as i64, 0)
}

pub fn hankel_matrix(spec: HankelSpec) -> PolyMatrix {
    let size = spec.size();
    let rows: Vec<(u32, u32)> = (0..size).map(|i| qr(i as u32 + spec.m, spec.p)).collect();
    PolyMatrix::from_fn(size, size, |i, j| {
        let (q, r) = rows[i];
        f_poly(spec.p, q + j as u32, r)
    })
}

pub fn hankel_det(spec: HankelSpec) -> MultiPoly {
    if spec.n < 0 {
        return MultiPoly::one();
    }
    det_division_free(&hankel_matrix(spec), &MultiPoly::one()).expect("Hankel matrices are square")
}

/// `prod_{i=0}^{n} prod_{j=1}^{ip+m} V_j`; 1 for `n = -1`.
pub fn expected_monomial(spec: HankelSpec) -> MultiPoly {
    (0..=spec.n.max(-1))
        .map(|i| MultiPoly::v_range_product(1, i as u32 * spec.p + spec.m))
        .fold(MultiPoly::one(), |acc, f| &acc * &f)
}

/// Checks a determinant value against the monomial product formula.
pub fn check_product_formula(spec: HankelSpec, det: &MultiPoly) -> Result<()> {
    let expected = expected_monomial(spec);
    if *det == expected {
        Ok(())
    } else {
        Err(Error::IdentityViolation {
            context: format!("Hankel determinant {spec}: got {det}, expected {expected}"),
        })
    }
}

/// Computes the determinant and checks it against the product formula.
pub fn verify_hankel(spec: HankelSpec) -> Result<MultiPoly> {
    let det = hankel_det(spec);
    check_product_formula(spec, &det)?;
    Ok(det)
}

/// Recovers `V_i` from determinant values alone. With `i = pn + m`:
///
/// ```text
/// V_i = H(m,n) H(m-1,n-1) / (H(m,n-1) H(m-1,n))          m >= 1
/// V_i = H(0,n) H(p-1,n-2) / (H(0,n-1) H(p-1,n-1))        m = 0
/// ```
pub fn recover_vi(p: u32, i: u32) -> Result<MultiPoly> {
    recover_vi_with(p, i, |spec| Ok(hankel_det(spec)))
}

/// [`recover_vi`] with a caller-supplied determinant source.
pub fn recover_vi_with(p: u32, i: u32, mut det: impl FnMut(HankelSpec) -> Result<MultiPoly>) -> Result<MultiPoly> {
    if p < 2 || i < 1 {
        return Err(Error::InvalidArgument(format!("need p >= 2 and i >= 1, got p={p}, i={i}")));
    }
    let n = (i / p) as i64;
    let m = i % p;
    let mut h = |m: u32, n: i64| -> Result<MultiPoly> { det(HankelSpec::new(p, m, n)?) };
    let (num, den) = if m >= 1 {
        (&h(m, n)? * &h(m - 1, n - 1)?, &h(m, n - 1)? * &h(m - 1, n)?)
    } else {
        (&h(0, n)? * &h(p - 1, n - 2)?, &h(0, n - 1)? * &h(p - 1, n - 1)?)
    };
    num.exact_div(&den).map_err(|_| Error::IdentityViolation {
        context: format!("recovering V{i} at p={p}: {num} is not divisible by {den}"),
    })
}

/// Sum of path weights from `from` to `to`, by explicit enumeration.
fn enumerated_sum(p: u32, from: Point, to: Point) -> MultiPoly {
    let mut acc = MultiPoly::zero();
    for path in enumerate_paths(p, from, to) {
        acc += &path_weight(&path);
    }
    acc
}

/// Signed sum over bijections `sigma` of `prod_i W(A_{m+i} -> B_{sigma(i)})`,
/// with every path-sum `W` obtained by enumerating paths on the lattice.
pub fn lgv_signed_sum(spec: HankelSpec) -> MultiPoly {
    if spec.n < 0 {
        return MultiPoly::one();
    }
    let size = spec.size();
    let weights: Vec<Vec<MultiPoly>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| enumerated_sum(spec.p, source(spec.p, spec.m + i as u32), sink(spec.p, j as u32)))
                .collect()
        })
        .collect();
    let mut total = MultiPoly::zero();
    for (perm, sign) in permutations(size) {
        let term = perm
            .iter()
            .enumerate()
            .fold(MultiPoly::one(), |acc, (i, &j)| &acc * &weights[i][j]);
        if sign > 0 {
            total += &term;
        } else {
            total -= &term;
        }
    }
    total
}

/// All permutations of `0..n` with their signs, in lexicographic order.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, i32)>) {
        if current.len() == n {
            let inversions = (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .filter(|&(a, b)| current[a] > current[b])
                .count();
            out.push((current.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for k in 0..n {
            if !used[k] {
                used[k] = true;
                current.push(k);
                rec(n, current, used, out);
                current.pop();
                used[k] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}

/// Outcome of the exhaustive non-intersecting path search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpReport {
    pub count: usize,
    pub weight: MultiPoly,
    /// Path `i` of the first configuration found, for each `i`.
    pub paths: Vec<PPath>,
}

/// Enumerates every vertex-disjoint family of paths `A_{m+i} -> B_i`,
/// `i = 0..=n`. Fails unless there is exactly one, it passes through
/// `(-m, m+ip)` on path `i`, and its weight is the product monomial.
pub fn nilp_unique(spec: HankelSpec) -> Result<NilpReport> {
    let report = nilp_search(spec);
    if report.count != 1 {
        return Err(Error::NonUniqueNilp {
            count: report.count,
            context: spec.to_string(),
        });
    }
    for (i, path) in report.paths.iter().enumerate() {
        let through = Point::new(-(spec.m as i64), (spec.m + i as u32 * spec.p) as i64);
        if !path.vertices().any(|v| v == through) {
            return Err(Error::IdentityViolation {
                context: format!("NILP path {i} at {spec} misses {through}"),
            });
        }
    }
    check_product_formula(spec, &report.weight)?;
    Ok(report)
}

/// Exhaustive search without the uniqueness check.
pub fn nilp_search(spec: HankelSpec) -> NilpReport {
    let mut report = NilpReport {
        count: 0,
        weight: MultiPoly::zero(),
        paths: Vec::new(),
    };
    if spec.n < 0 {
        report.count = 1;
        report.weight = MultiPoly::one();
        return report;
    }
    let candidates: Vec<Vec<(PPath, HashSet<Point>)>> = (0..spec.size())
        .map(|i| {
            enumerate_paths(spec.p, source(spec.p, spec.m + i as u32), sink(spec.p, i as u32))
                .into_iter()
                .map(|path| {
                    let vertices = path.vertices().collect();
                    (path, vertices)
                })
                .collect()
        })
        .collect();
    let mut chosen: Vec<usize> = Vec::new();
    let mut occupied: HashSet<Point> = HashSet::new();
    search(&candidates, &mut chosen, &mut occupied, &mut report);
    report
}

fn search(
    candidates: &[Vec<(PPath, HashSet<Point>)>],
    chosen: &mut Vec<usize>,
    occupied: &mut HashSet<Point>,
    report: &mut NilpReport,
) {
    let level = chosen.len();
    if level == candidates.len() {
        let weight = chosen
            .iter()
            .enumerate()
            .fold(MultiPoly::one(), |acc, (i, &k)| &acc * &path_weight(&candidates[i][k].0));
        if report.count == 0 {
            report.paths = chosen.iter().enumerate().map(|(i, &k)| candidates[i][k].0.clone()).collect();
        }
        report.count += 1;
        report.weight += &weight;
        return;
    }
    for (k, (_, vertices)) in candidates[level].iter().enumerate() {
        if vertices.iter().any(|v| occupied.contains(v)) {
            continue;
        }
        occupied.extend(vertices.iter().copied());
        chosen.push(k);
        search(candidates, chosen, occupied, report);
        chosen.pop();
        for v in vertices {
            occupied.remove(v);
        }
    }
}
