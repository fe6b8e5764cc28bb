//! p-paths: lattice paths with rises `(1, p-1)` and falls `(1, -1)` that
//! never go below height zero. A fall starting at height `h` carries the
//! weight `V_h`; a path's weight is the product over its falls.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{Monomial, MultiPoly, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Rise,
    Fall,
}

/// A lattice point `(column, height)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub col: i64,
    pub height: i64,
}

impl Point {
    pub const fn new(col: i64, height: i64) -> Self {
        Point { col, height }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.col, self.height)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPath {
    p: u32,
    start: Point,
    steps: Vec<Step>,
}

impl PPath {
    /// Checks that the walk stays at nonnegative height.
    pub fn new(p: u32, start: Point, steps: Vec<Step>) -> Option<Self> {
        assert!(p >= 2, "p-paths need p >= 2");
        let path = PPath { p, start, steps };
        if start.height < 0 || path.vertices().any(|pt| pt.height < 0) {
            return None;
        }
        Some(path)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn start(&self) -> Point {
        self.start
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn end(&self) -> Point {
        self.vertices().last().unwrap_or(self.start)
    }

    /// Every visited point, the start included.
    pub fn vertices(&self) -> impl Iterator<Item = Point> + '_ {
        let rise = self.p as i64 - 1;
        std::iter::once(self.start).chain(self.steps.iter().scan(self.start, move |pt, step| {
            pt.col += 1;
            pt.height += match step {
                Step::Rise => rise,
                Step::Fall => -1,
            };
            Some(*pt)
        }))
    }

    /// Starting heights of the falls, in path order.
    pub fn fall_heights(&self) -> Vec<i64> {
        self.vertices()
            .zip(&self.steps)
            .filter(|(_, s)| **s == Step::Fall)
            .map(|(pt, _)| pt.height)
            .collect()
    }
}

/// Monomial weight of a path: `V_h` for every fall starting at height `h`.
pub fn path_weight(path: &PPath) -> MultiPoly {
    let mono = Monomial::from_pairs(path.fall_heights().into_iter().map(|h| (Var::V(h as u32), 1)));
    MultiPoly::term(1, mono)
}

/// Whether a path with `steps` remaining can go from height `from` to `to`.
fn reachable(p: u32, steps: i64, from: i64, to: i64) -> bool {
    let climb = steps + to - from;
    let p = p as i64;
    steps >= 0 && climb >= 0 && climb <= p * steps && climb % p == 0
}

/// All p-paths from `start` to `end`, depth first with rises explored
/// before falls. Infeasible endpoints give an empty list.
pub fn enumerate_paths(p: u32, start: Point, end: Point) -> Vec<PPath> {
    assert!(p >= 2, "p-paths need p >= 2");
    let mut out = Vec::new();
    let len = end.col - start.col;
    if start.height < 0 || end.height < 0 || !reachable(p, len, start.height, end.height) {
        return out;
    }
    let mut steps = Vec::with_capacity(len as usize);
    walk(p, start.height, len, end.height, &mut steps, &mut |steps| {
        out.push(PPath {
            p,
            start,
            steps: steps.to_vec(),
        })
    });
    out
}

fn walk(p: u32, height: i64, left: i64, target: i64, steps: &mut Vec<Step>, emit: &mut dyn FnMut(&[Step])) {
    if left == 0 {
        emit(steps);
        return;
    }
    let rise = height + p as i64 - 1;
    if reachable(p, left - 1, rise, target) {
        steps.push(Step::Rise);
        walk(p, rise, left - 1, target, steps, emit);
        steps.pop();
    }
    if height >= 1 && reachable(p, left - 1, height - 1, target) {
        steps.push(Step::Fall);
        walk(p, height - 1, left - 1, target, steps, emit);
        steps.pop();
    }
}

/// Weighted sum over all p-paths from `start` to `end`, aggregated column
/// by column without materializing the paths.
pub fn path_sum(p: u32, start: Point, end: Point) -> MultiPoly {
    transfer(p, start, end, MultiPoly::one(), |w, h| w.mul_monomial(&Monomial::var(Var::V(h as u32))), |a, b| {
        *a += &b
    })
    .unwrap_or_default()
}

/// Number of p-paths from `start` to `end`.
pub fn path_count(p: u32, start: Point, end: Point) -> BigInt {
    transfer(p, start, end, BigInt::one(), |w, _| w.clone(), |a, b| *a += b).unwrap_or_else(BigInt::zero)
}

/// Column-by-column sum over all p-paths from `start` to `end` in any
/// weight ring: `fall(w, h)` extends a partial weight `w` by a fall from
/// height `h`. `None` when no path exists.
pub fn transfer<W: Clone>(
    p: u32,
    start: Point,
    end: Point,
    one: W,
    fall: impl Fn(&W, i64) -> W,
    accumulate: impl Fn(&mut W, W),
) -> Option<W> {
    assert!(p >= 2, "p-paths need p >= 2");
    let len = end.col - start.col;
    if start.height < 0 || end.height < 0 || !reachable(p, len, start.height, end.height) {
        return None;
    }
    let rise = p as i64 - 1;
    let mut layer: BTreeMap<i64, W> = BTreeMap::from([(start.height, one)]);
    for left in (0..len).rev() {
        let mut next: BTreeMap<i64, W> = BTreeMap::new();
        let mut push = |h: i64, w: W| match next.get_mut(&h) {
            Some(acc) => accumulate(acc, w),
            None => {
                next.insert(h, w);
            }
        };
        for (h, w) in layer {
            if reachable(p, left, h + rise, end.height) {
                push(h + rise, w.clone());
            }
            if h >= 1 && reachable(p, left, h - 1, end.height) {
                push(h - 1, fall(&w, h));
            }
        }
        layer = next;
    }
    layer.remove(&end.height)
}

/// `F_n^{(r)}`: the weighted sum of p-paths from `(-r, r)` to `(np, 0)`.
/// With `r = 0` this is `F_n`, the sum over p-excursions of length `np`.
pub fn f_poly(p: u32, n: u32, r: u32) -> MultiPoly {
    path_sum(p, Point::new(-(r as i64), r as i64), Point::new((n * p) as i64, 0))
}

/// `F_n^{(i-1;i)}`: the weighted sum of p-paths from `(0, i-1)` to
/// `(np-1, i)`.
pub fn f_mid(p: u32, n: u32, i: u32) -> MultiPoly {
    assert!(n >= 1 && i >= 1, "f_mid needs n >= 1 and i >= 1");
    path_sum(p, Point::new(0, i as i64 - 1), Point::new((n * p) as i64 - 1, i as i64))
}

/// Number of p-paths from `(-r, r)` to `(np, 0)`. Any `r >= 0` is accepted.
pub fn count_paths(p: u32, n: u32, r: u32) -> BigInt {
    path_count(p, Point::new(-(r as i64), r as i64), Point::new((n * p) as i64, 0))
}

/// `C(n, k)` as a big integer; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Number of p-excursions of length `np`: `C(np+1, n) / (np+1)`.
pub fn fuss_catalan(p: u32, n: u32) -> BigInt {
    let m = n as u64 * p as u64 + 1;
    binomial(m, n as u64) / BigInt::from(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(p: u32, start: Point, end: Point) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        for path in enumerate_paths(p, start, end) {
            acc += &path_weight(&path);
        }
        acc
    }

    fn poly(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn enumerate_examples() {
        use Step::*;
        let paths = enumerate_paths(3, Point::new(0, 0), Point::new(3, 0));
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].steps(), &[Rise, Fall, Fall]);
        let empty = enumerate_paths(3, Point::new(0, 0), Point::new(0, 0));
        assert_eq!(empty.len(), 1);
        assert!(empty[0].steps().is_empty());
        assert!(enumerate_paths(3, Point::new(0, 0), Point::new(1, 0)).is_empty());
        assert!(enumerate_paths(3, Point::new(0, 0), Point::new(-3, 0)).is_empty());
    }

    #[test]
    fn enumeration_order_puts_rises_first() {
        let paths = enumerate_paths(3, Point::new(0, 0), Point::new(6, 0));
        assert_eq!(paths.len(), 3);
        assert_eq!(paths[0].steps()[..2], [Step::Rise, Step::Rise]);
        let mut sorted = paths.clone();
        sorted.sort_by(|a, b| a.steps().cmp(b.steps()));
        assert_eq!(sorted, paths);
    }

    #[test]
    fn weight_examples() {
        use Step::*;
        let p = PPath::new(3, Point::new(0, 0), vec![Rise, Fall, Fall]).unwrap();
        assert_eq!(path_weight(&p), poly("V1*V2"));
        let empty = PPath::new(3, Point::new(0, 0), vec![]).unwrap();
        assert_eq!(path_weight(&empty), MultiPoly::one());
        let tall = PPath::new(3, Point::new(0, 0), vec![Rise, Rise, Fall, Fall, Fall, Fall]).unwrap();
        assert_eq!(tall.vertices().map(|v| v.height).collect::<Vec<_>>(), vec![0, 2, 4, 3, 2, 1, 0]);
        assert_eq!(path_weight(&tall), poly("V1*V2*V3*V4"));
        assert!(PPath::new(3, Point::new(0, 0), vec![Fall]).is_none());
    }

    #[test]
    fn f_poly_examples() {
        assert_eq!(f_poly(3, 1, 0), poly("V1*V2"));
        assert_eq!(f_poly(3, 0, 1), poly("V1"));
        assert_eq!(f_poly(3, 1, 1), poly("V1^2*V2 + V1*V2*V3"));
        for p in 2..6 {
            assert_eq!(f_poly(p, 0, 0), MultiPoly::one());
        }
    }

    #[test]
    fn f_mid_examples() {
        assert_eq!(f_mid(3, 1, 2), poly("V1 + V3"));
        assert_eq!(f_mid(3, 1, 1), poly("V2"));
        // One step from height 0 to height 1 at p = 2: a single rise.
        assert_eq!(f_mid(2, 1, 1), brute(2, Point::new(0, 0), Point::new(1, 1)));
        assert_eq!(f_mid(2, 1, 1), MultiPoly::one());
        assert_eq!(f_mid(2, 2, 3), poly("V2 + V3 + V4"));
    }

    #[test]
    fn dp_agrees_with_enumeration() {
        for p in 2..=5u32 {
            for n in 0..=4u32 {
                for r in 0..=p {
                    let start = Point::new(-(r as i64), r as i64);
                    let end = Point::new((n * p) as i64, 0);
                    assert_eq!(f_poly(p, n, r), brute(p, start, end), "p={p} n={n} r={r}");
                }
            }
            for n in 1..=3u32 {
                for i in 1..=5u32 {
                    let start = Point::new(0, i as i64 - 1);
                    let end = Point::new((n * p) as i64 - 1, i as i64);
                    assert_eq!(f_mid(p, n, i), brute(p, start, end));
                }
            }
        }
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_paths(3, 3, 0), BigInt::from(12));
        assert_eq!(count_paths(3, 1, 1), BigInt::from(2));
        assert_eq!(count_paths(3, 0, 0), BigInt::from(1));
        assert_eq!(f_poly(3, 3, 0).eval_ones(), BigInt::from(12));
    }

    #[test]
    fn shifted_superscript_is_next_excursion() {
        for p in 2..=5u32 {
            for n in 0..=5u32 {
                assert_eq!(f_poly(p, n, p - 1), f_poly(p, n + 1, 0), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn excursion_counts_are_fuss_catalan() {
        for p in 2..=5u32 {
            for n in 0..=6u32 {
                assert_eq!(count_paths(p, n, 0), fuss_catalan(p, n));
            }
        }
    }

    #[test]
    fn coefficients_are_positive() {
        for p in 2..=4u32 {
            for n in 0..=4u32 {
                for r in 0..p {
                    assert!(f_poly(p, n, r).terms().all(|(_, c)| c > &BigInt::zero()));
                }
            }
        }
    }

    #[test]
    fn every_vertex_respects_congruence() {
        for path in enumerate_paths(4, Point::new(-2, 2), Point::new(8, 0)) {
            let s = path.start();
            for v in path.vertices() {
                assert_eq!((v.col + v.height - s.col - s.height).rem_euclid(4), 0);
                assert!(v.height >= 0);
            }
        }
    }
}
