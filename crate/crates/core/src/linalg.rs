//! Exact integer matrices and the Matrix-Tree oracle.

use std::ops::{Index, IndexMut};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::model::GraphRealization;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        IntegerMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flat_map(|row| row.iter().cloned().map(Into::into)).collect(),
        }
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

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| &self[(i, j)]).sum()).collect()
    }

    /// The matrix with row `row` and column `col` removed.
    pub fn minor(&self, row: usize, col: usize) -> IntegerMatrix {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != row) {
            for j in (0..self.cols).filter(|&j| j != col) {
                data.push(self[(i, j)].clone());
            }
        }
        IntegerMatrix { rows: self.rows - 1, cols: self.cols - 1, data }
    }
}

impl Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// `L = D − A` of a realized bicirculant graph.
pub fn laplacian(g: &GraphRealization) -> IntegerMatrix {
    let size = g.vertex_count();
    let mut l = IntegerMatrix::zeros(size, size);
    for u in 0..size {
        let mut degree = 0i64;
        for v in g.neighbors(u) {
            l[(u, v)] = BigInt::from(-1);
            degree += 1;
        }
        l[(u, u)] = BigInt::from(degree);
    }
    l
}

/// Determinant by one-step fraction-free (Bareiss) elimination.
///
/// Pivots are the first nonzero entry in the column; every division is exact.
pub fn det_fraction_free(m: &IntegerMatrix) -> BigInt {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let size = m.rows();
    if size == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..size - 1 {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..size).find(|&i| !a[(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..size {
                a.data.swap(k * size + j, p * size + j);
            }
            sign = !sign;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                debug_assert!((&num % &prev).is_zero(), "inexact Bareiss division");
                a[(i, j)] = num / &prev;
            }
            a[(i, k)] = BigInt::zero();
        }
        prev = a[(k, k)].clone();
    }
    let det = a[(size - 1, size - 1)].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// Spanning-tree count as the cofactor of `L` obtained by deleting the last
/// row and column.
pub fn tree_count_oracle(g: &GraphRealization) -> BigUint {
    let l = laplacian(g);
    let last = l.rows() - 1;
    let det = det_fraction_free(&l.minor(last, last));
    debug_assert!(!det.is_negative(), "Laplacian cofactor is negative");
    det.to_biguint().expect("Laplacian cofactor is nonnegative")
}
