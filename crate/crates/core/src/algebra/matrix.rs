use std::collections::HashMap;
use std::ops::Index;

use super::poly::MultiPoly;
use super::ring::Ring;
use crate::error::{Error, Result};

/// Dense row-major matrix over a commutative ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

pub type PolyMatrix = Matrix<MultiPoly>;

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix rows");
        Matrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    pub fn size(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.entries[i * self.cols + j]
    }
}

/// Largest size for which the memoized cofactor expansion is used.
pub const COFACTOR_LIMIT: usize = 6;

/// Exact determinant using ring operations only.
///
/// `one` is the value returned for the empty matrix. Sizes up to
/// [`COFACTOR_LIMIT`] use Laplace expansion with memoized minors; larger
/// matrices go through Berkowitz's characteristic-polynomial algorithm.
pub fn det_division_free<T: Ring>(m: &Matrix<T>, one: &T) -> Result<T> {
    let (rows, cols) = m.size();
    if rows != cols {
        return Err(Error::NonSquare { rows, cols });
    }
    if rows <= COFACTOR_LIMIT {
        Ok(det_cofactor(m, one))
    } else {
        Ok(det_berkowitz(m, one))
    }
}

/// Laplace expansion along successive top rows; the minor on the bottom
/// `|S|` rows and column set `S` is computed once per subset `S`.
pub fn det_cofactor<T: Ring>(m: &Matrix<T>, one: &T) -> T {
    let n = m.rows;
    assert_eq!(n, m.cols);
    assert!(n < 64, "cofactor expansion indexes columns by a u64 mask");
    if n == 0 {
        return one.clone();
    }
    let mut minors: HashMap<u64, T> = HashMap::new();
    minors.insert(0, one.clone());
    for size in 1..=n {
        let row = n - size;
        for mask in subsets_of_size(n, size) {
            let mut acc = one.zero_like();
            for (pos, col) in (0..n).filter(|c| mask >> c & 1 == 1).enumerate() {
                let entry = m.get(row, col);
                if entry.is_zero() {
                    continue;
                }
                let sub = &minors[&(mask & !(1u64 << col))];
                if sub.is_zero() {
                    continue;
                }
                let prod = entry.mul_ref(sub);
                acc = if pos % 2 == 0 { acc.add_ref(&prod) } else { acc.sub_ref(&prod) };
            }
            minors.insert(mask, acc);
        }
    }
    minors.remove(&((1u64 << n) - 1)).expect("full minor computed")
}

fn subsets_of_size(n: usize, size: usize) -> Vec<u64> {
    (0u64..1 << n).filter(|m| m.count_ones() as usize == size).collect()
}

/// Berkowitz's algorithm: builds the characteristic polynomial of each
/// leading principal submatrix by Toeplitz-matrix products. O(n^4) ring
/// multiplications and no divisions.
pub fn det_berkowitz<T: Ring>(m: &Matrix<T>, one: &T) -> T {
    let n = m.rows;
    assert_eq!(n, m.cols);
    if n == 0 {
        return one.clone();
    }
    let zero = one.zero_like();
    // Coefficients of the characteristic polynomial, highest degree first.
    let mut charpoly = vec![one.clone(), m.get(0, 0).neg_ref()];
    for r in 1..n {
        let mut toeplitz = vec![one.clone(), m.get(r, r).neg_ref()];
        let mut col: Vec<T> = (0..r).map(|i| m.get(i, r).clone()).collect();
        for k in 0..r {
            let dot = (0..r).fold(zero.clone(), |acc, j| acc.add_ref(&m.get(r, j).mul_ref(&col[j])));
            toeplitz.push(dot.neg_ref());
            if k + 1 < r {
                col = (0..r)
                    .map(|i| (0..r).fold(zero.clone(), |acc, j| acc.add_ref(&m.get(i, j).mul_ref(&col[j]))))
                    .collect();
            }
        }
        charpoly = (0..r + 2)
            .map(|i| {
                (0..=i.min(r)).fold(zero.clone(), |acc, j| acc.add_ref(&toeplitz[i - j].mul_ref(&charpoly[j])))
            })
            .collect();
    }
    let last = charpoly.pop().expect("nonempty");
    if n.is_multiple_of(2) {
        last
    } else {
        last.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn small_determinants() {
        let one = MultiPoly::one();
        let m1 = PolyMatrix::from_rows(vec![vec![MultiPoly::one()]]);
        assert_eq!(det_division_free(&m1, &one).unwrap(), one);
        let m2 = PolyMatrix::from_rows(vec![
            vec![p("1"), p("V1*V2")],
            vec![p("V1"), p("V1^2*V2 + V1*V2*V3")],
        ]);
        assert_eq!(det_division_free(&m2, &one).unwrap(), p("V1*V2*V3"));
        let id = PolyMatrix::from_fn(3, 3, |i, j| if i == j { one.clone() } else { MultiPoly::zero() });
        assert_eq!(det_division_free(&id, &one).unwrap(), one);
        let empty = PolyMatrix::from_rows(vec![]);
        assert_eq!(det_division_free(&empty, &one).unwrap(), one);
    }

    #[test]
    fn non_square() {
        let m = PolyMatrix::from_fn(2, 3, |_, _| MultiPoly::one());
        assert_eq!(
            det_division_free(&m, &MultiPoly::one()),
            Err(Error::NonSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn berkowitz_matches_cofactor_on_symbolic_matrix() {
        let m = PolyMatrix::from_fn(5, 5, |i, j| {
            let k = (i * 5 + j) as u32;
            &MultiPoly::v(k % 4 + 1) + &MultiPoly::constant((k * 7 % 5) as i64 - 2)
        });
        let one = MultiPoly::one();
        assert_eq!(det_berkowitz(&m, &one), det_cofactor(&m, &one));
    }
}
