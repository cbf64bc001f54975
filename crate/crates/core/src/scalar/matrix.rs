//! Dense matrices over [`GaussRat`].

use std::fmt;
use std::ops::{Index, IndexMut};

use super::{GaussRat, ScalarError};

/// Row-major dense matrix with exact entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussRat>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<GaussRat>) -> Result<Self, ScalarError> {
        if entries.len() != rows * cols {
            return Err(ScalarError::Shape {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(ExactMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![GaussRat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GaussRat::one();
        }
        m
    }

    pub fn diagonal(diag: &[GaussRat]) -> Self {
        let mut m = ExactMatrix::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    /// Builds from nested rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<GaussRat>>) -> Result<Self, ScalarError> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(ScalarError::Shape {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        ExactMatrix::new(nrows, cols, entries)
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| GaussRat::from_int(x)).collect())
            .collect();
        ExactMatrix::from_rows(rows).expect("ragged integer rows")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<GaussRat>]) -> Result<Self, ScalarError> {
        Ok(ExactMatrix::from_rows(cols.to_vec())?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[GaussRat] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[GaussRat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<GaussRat> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<GaussRat>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GaussRat::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = ExactMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn trace(&self) -> GaussRat {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .sum()
    }

    pub fn scale(&self, s: &GaussRat) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * s).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&GaussRat, &GaussRat) -> GaussRat) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix shape mismatch"
        );
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += &(a * b);
                    }
                }
            }
        }
        out
    }

    /// `AB − BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn mul_vec(&self, v: &[GaussRat]) -> Vec<GaussRat> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Gauss–Jordan elimination to reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].inv().expect("nonzero pivot");
            for c in col..m.cols {
                m[(row, c)] = &m[(row, c)] * &inv;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    let delta = &factor * &m[(row, c)];
                    m[(r, c)] -= &delta;
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { matrix: m, pivots }
    }

    /// Rank by fraction-free (Bareiss) forward elimination.
    pub fn rank(&self) -> usize {
        self.bareiss().1
    }

    /// Fraction-free forward elimination. Returns the eliminated matrix,
    /// the rank, and the parity of row swaps.
    fn bareiss(&self) -> (ExactMatrix, usize, bool) {
        let mut m = self.clone();
        let mut prev = GaussRat::one();
        let mut row = 0;
        let mut odd = false;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            if p != row {
                m.swap_rows(row, p);
                odd = !odd;
            }
            let pivot = m[(row, col)].clone();
            for r in row + 1..m.rows {
                let lead = m[(r, col)].clone();
                for c in col + 1..m.cols {
                    let num = &(&pivot * &m[(r, c)]) - &(&lead * &m[(row, c)]);
                    m[(r, c)] = &num / &prev;
                }
                m[(r, col)] = GaussRat::zero();
            }
            prev = pivot;
            row += 1;
        }
        (m, row, odd)
    }

    /// Rank together with a basis of the right nullspace `{v : M v = 0}`.
    pub fn rank_nullspace(&self) -> (usize, Vec<Vec<GaussRat>>) {
        let Rref { matrix, pivots } = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![GaussRat::zero(); self.cols];
            v[free] = GaussRat::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&matrix[(r, free)];
            }
            basis.push(v);
        }
        (pivots.len(), basis)
    }

    pub fn nullspace(&self) -> Vec<Vec<GaussRat>> {
        self.rank_nullspace().1
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> Result<GaussRat, ScalarError> {
        self.require_square()?;
        if self.rows == 0 {
            return Ok(GaussRat::one());
        }
        let (m, rank, odd) = self.bareiss();
        if rank < self.rows {
            return Ok(GaussRat::zero());
        }
        let d = m[(self.rows - 1, self.cols - 1)].clone();
        Ok(if odd { -d } else { d })
    }

    /// Determinant by Laplace expansion along the first row. Exponential;
    /// meant for small matrices and cross-checks.
    pub fn det_cofactor(&self) -> Result<GaussRat, ScalarError> {
        self.require_square()?;
        Ok(cofactor_expand(self, 0, &mut (0..self.cols).collect()))
    }

    /// Solves `M x = b`, returning one solution if the system is consistent.
    pub fn solve(&self, b: &[GaussRat]) -> Option<Vec<GaussRat>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut aug = ExactMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, self.cols)] = b[r].clone();
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![GaussRat::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Result<Self, ScalarError> {
        self.require_square()?;
        let n = self.rows;
        let mut aug = ExactMatrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = GaussRat::one();
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(ScalarError::Singular);
        }
        let mut inv = ExactMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = matrix[(r, n + c)].clone();
            }
        }
        Ok(inv)
    }

    fn require_square(&self) -> Result<(), ScalarError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(ScalarError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

fn cofactor_expand(m: &ExactMatrix, row: usize, cols: &mut Vec<usize>) -> GaussRat {
    if cols.is_empty() {
        return GaussRat::one();
    }
    let mut acc = GaussRat::zero();
    for pos in 0..cols.len() {
        let c = cols.remove(pos);
        let a = &m[(row, c)];
        if !a.is_zero() {
            let term = a * &cofactor_expand(m, row + 1, cols);
            if pos % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        cols.insert(pos, c);
    }
    acc
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = GaussRat;
    fn index(&self, (r, c): (usize, usize)) -> &GaussRat {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of range"
        );
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut GaussRat {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of range"
        );
        &mut self.entries[r * self.cols + c]
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussRat {
        GaussRat::complex(re, im)
    }

    #[test]
    fn identity_has_full_rank() {
        let (rank, null) = ExactMatrix::identity(3).rank_nullspace();
        assert_eq!(rank, 3);
        assert!(null.is_empty());
    }

    #[test]
    fn zero_matrix_nullspace_is_everything() {
        let (rank, null) = ExactMatrix::zeros(2, 3).rank_nullspace();
        assert_eq!(rank, 0);
        assert_eq!(null.len(), 3);
    }

    #[test]
    fn hermitian_rank_one() {
        let m =
            ExactMatrix::from_rows(vec![vec![g(1, 0), g(0, 1)], vec![g(0, -1), g(1, 0)]]).unwrap();
        let (rank, null) = m.rank_nullspace();
        assert_eq!(rank, 1);
        assert_eq!(null.len(), 1);
        assert!(m.mul_vec(&null[0]).iter().all(GaussRat::is_zero));
        // spanned by (-i, 1)
        let v = &null[0];
        let ratio = &v[0] / &v[1];
        assert_eq!(ratio, g(0, -1));
    }

    #[test]
    fn small_determinants() {
        assert_eq!(ExactMatrix::identity(4).det().unwrap(), GaussRat::one());
        let swap = ExactMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.det().unwrap(), GaussRat::from_int(-1));
        assert_eq!(swap.det_cofactor().unwrap(), GaussRat::from_int(-1));
        assert!(matches!(
            ExactMatrix::zeros(2, 3).det(),
            Err(ScalarError::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn inverse_and_solve() {
        let m = ExactMatrix::from_ints(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), ExactMatrix::identity(2));
        let x = m
            .solve(&[GaussRat::from_int(3), GaussRat::from_int(2)])
            .unwrap();
        assert_eq!(x, vec![GaussRat::one(), GaussRat::one()]);
        let sing = ExactMatrix::from_ints(&[&[1, 2], &[2, 4]]);
        assert_eq!(sing.inverse(), Err(ScalarError::Singular));
        assert!(sing.solve(&[GaussRat::one(), GaussRat::one()]).is_none());
    }

    #[test]
    fn shape_is_checked() {
        assert!(ExactMatrix::new(2, 2, vec![GaussRat::one(); 3]).is_err());
    }
}
