//! Dense matrices over an exact [`Field`] and the handful of eliminations the
//! representation engine needs: rank, kernel, column basis, basis extension
//! and inversion. Zero-sized matrices are valid everywhere.

use crate::field::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>, // row-major
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Self { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut entry: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(entry(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: E) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |r, c| self.get(r, cols[c]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(rows.len(), self.cols, |r, c| self.get(rows[r], c).clone())
    }

    pub fn from_columns(rows: usize, columns: &[Vec<E>]) -> Self {
        Self::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
    }

    /// Horizontal concatenation; all blocks must share the row count.
    pub fn hstack(rows: usize, blocks: &[&Matrix<E>]) -> Self {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for b in blocks {
                assert_eq!(b.rows, rows, "hstack row mismatch");
                out.extend_from_slice(b.row(r));
            }
        }
        Self { rows, cols, data: out }
    }

    /// Vertical concatenation; all blocks must share the column count.
    pub fn vstack(cols: usize, blocks: &[&Matrix<E>]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&b.data);
        }
        Self { rows, cols, data }
    }

    /// Block-diagonal sum.
    pub fn block_diag(zero: &E, blocks: &[&Matrix<E>]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::filled(rows, cols, zero.clone());
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    m.set(r0 + r, c0 + c, b.get(r, c).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }
}

pub fn zeros<F: Field>(f: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    Matrix::filled(rows, cols, f.zero())
}

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    Matrix::from_fn(n, n, |r, c| if r == c { f.one() } else { f.zero() })
}

pub fn mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "matrix product shape mismatch");
    let mut out = zeros(f, a.rows, b.cols);
    for r in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(r, k);
            if f.is_zero(x) {
                continue;
            }
            for c in 0..b.cols {
                let y = b.get(k, c);
                if f.is_zero(y) {
                    continue;
                }
                let acc = f.add(out.get(r, c), &f.mul(x, y));
                out.set(r, c, acc);
            }
        }
    }
    out
}

pub fn add<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.shape(), b.shape());
    Matrix::from_fn(a.rows, a.cols, |r, c| f.add(a.get(r, c), b.get(r, c)))
}

pub fn sub<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.shape(), b.shape());
    Matrix::from_fn(a.rows, a.cols, |r, c| f.sub(a.get(r, c), b.get(r, c)))
}

pub fn scale<F: Field>(f: &F, s: &F::Elem, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    Matrix::from_fn(a.rows, a.cols, |r, c| f.mul(s, a.get(r, c)))
}

pub fn is_zero<F: Field>(f: &F, a: &Matrix<F::Elem>) -> bool {
    a.data.iter().all(|x| f.is_zero(x))
}

/// Reduced row echelon form and the pivot column of each nonzero row.
pub fn rref<F: Field>(f: &F, a: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| !f.is_zero(m.get(r, col))) else {
            continue;
        };
        if p != row {
            for c in 0..m.cols {
                m.data.swap(p * m.cols + c, row * m.cols + c);
            }
        }
        let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
        for c in col..m.cols {
            let v = f.mul(m.get(row, c), &inv);
            m.set(row, c, v);
        }
        for r in 0..m.rows {
            if r == row {
                continue;
            }
            let factor = m.get(r, col).clone();
            if f.is_zero(&factor) {
                continue;
            }
            for c in col..m.cols {
                let v = f.sub(m.get(r, c), &f.mul(&factor, m.get(row, c)));
                m.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (m, pivots)
}

pub fn rank<F: Field>(f: &F, a: &Matrix<F::Elem>) -> usize {
    rref(f, a).1.len()
}

/// Basis of the null space `{x : a x = 0}`, one basis vector per column.
pub fn kernel<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let (r, pivots) = rref(f, a);
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = zeros(f, a.cols, free.len());
    for (k, &fc) in free.iter().enumerate() {
        basis.set(fc, k, f.one());
        for (row, &pc) in pivots.iter().enumerate() {
            basis.set(pc, k, f.neg(r.get(row, fc)));
        }
    }
    basis
}

/// Indices of a maximal linearly independent set of columns, greedily from
/// the left.
pub fn independent_columns<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Vec<usize> {
    rref(f, a).1
}

/// A basis of the column space, as a subset of the columns of `a`.
pub fn column_basis<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    a.select_columns(&independent_columns(f, a))
}

/// Extends the independent columns of `a` (an `n × k` matrix) with standard
/// basis vectors to an invertible `n × n` matrix whose first `k` columns are
/// `a`. Returns the matrix and the indices of the standard vectors used.
pub fn extend_to_basis<F: Field>(f: &F, a: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let n = a.rows;
    let id = identity(f, n);
    let stacked = Matrix::hstack(n, &[a, &id]);
    let pivots = independent_columns(f, &stacked);
    assert!(
        pivots.iter().take(a.cols).eq((0..a.cols).collect::<Vec<_>>().iter()),
        "extend_to_basis requires independent columns"
    );
    let added: Vec<usize> = pivots.iter().filter(|&&p| p >= a.cols).map(|&p| p - a.cols).collect();
    let basis = stacked.select_columns(&pivots);
    (basis, added)
}

pub fn inverse<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    if a.rows != a.cols {
        return None;
    }
    let n = a.rows;
    let aug = Matrix::hstack(n, &[a, &identity(f, n)]);
    let (r, pivots) = rref(f, &aug);
    if pivots.iter().take_while(|&&p| p < n).count() < n {
        return None;
    }
    Some(Matrix::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
}

pub fn is_invertible<F: Field>(f: &F, a: &Matrix<F::Elem>) -> bool {
    a.rows == a.cols && rank(f, a) == a.rows
}
