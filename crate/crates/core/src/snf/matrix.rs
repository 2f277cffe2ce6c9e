use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::SnfError;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        IntMatrix {
            rows: rows.len(),
            cols: cols.len(),
            data: rows
                .iter()
                .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
                .collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Panics on a shape mismatch.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub(crate) fn swap_rows(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub(crate) fn swap_cols(&mut self, i: usize, j: usize) {
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    pub(crate) fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for c in 0..self.cols {
            let s = self.get(src, c);
            if !s.is_zero() {
                let v = self.get(dst, c) - q * s;
                self.set(dst, c, v);
            }
        }
    }

    pub(crate) fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for r in 0..self.rows {
            let s = self.get(r, src);
            if !s.is_zero() {
                let v = self.get(r, dst) - q * s;
                self.set(r, dst, v);
            }
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -self.get(i, c);
            self.set(i, c, v);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(m: &IntMatrix) -> Result<BigInt, SnfError> {
    if m.rows != m.cols {
        return Err(SnfError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a.get(k, k).is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                return Ok(BigInt::zero());
            };
            a.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                a.set(i, j, v);
            }
        }
        prev = a.get(k, k).clone();
    }
    Ok(if n == 0 {
        BigInt::one()
    } else {
        sign * a.get(n - 1, n - 1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leibniz(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * leibniz(&minor)
            })
            .sum()
    }

    proptest::proptest! {
        #[test]
        fn bareiss_matches_cofactor(n in 0usize..6, seed in proptest::collection::vec(-5i64..=5, 25)) {
            let rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| seed[i * 5 + j]).collect()).collect();
            proptest::prop_assert_eq!(determinant(&IntMatrix::from_i64(&rows)).unwrap(), BigInt::from(leibniz(&rows)));
        }
    }

    #[test]
    fn shape_checks() {
        assert!(matches!(
            determinant(&IntMatrix::zeros(2, 3)),
            Err(SnfError::NotSquare { .. })
        ));
        let a = IntMatrix::from_i64(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(a.mul(&IntMatrix::identity(2)), a);
        assert_eq!(a.transpose(), IntMatrix::from_i64(&[vec![1, 3], vec![2, 4]]));
    }
}
