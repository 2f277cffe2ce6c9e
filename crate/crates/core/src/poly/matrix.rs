use std::collections::HashMap;

use super::{MonomialOrder, PolyError, Polynomial};

/// A dense rectangular matrix of polynomials.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
    order: MonomialOrder,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, order: MonomialOrder) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![Polynomial::zero(order); rows * cols],
            order,
        }
    }

    /// Row-major entries; panics if the count does not match.
    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Polynomial>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        let order = entries.first().map(|p| p.order()).unwrap_or_default();
        PolyMatrix {
            rows,
            cols,
            entries,
            order,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = PolyMatrix::zeros(self.cols, self.rows, self.order);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// The submatrix on the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        PolyMatrix {
            rows: rows.len(),
            cols: cols.len(),
            entries,
            order: self.order,
        }
    }
}

impl std::fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        f.debug_list().entries(rows).finish()
    }
}

/// Minors of one matrix, computed by Laplace expansion along the sparsest
/// row and memoised on (row set, column set). Sharing a cache across many
/// minors of the same matrix reuses every common sub-minor.
pub struct MinorCache<'a> {
    m: &'a PolyMatrix,
    memo: HashMap<(u32, u32), Polynomial>,
}

impl<'a> MinorCache<'a> {
    pub fn new(m: &'a PolyMatrix) -> Self {
        assert!(
            m.rows <= 32 && m.cols <= 32,
            "minor cache supports at most 32 rows and columns"
        );
        MinorCache {
            m,
            memo: HashMap::new(),
        }
    }

    /// `det M[rows; cols]` with rows and columns taken in increasing order.
    pub fn minor(&mut self, rows: &[usize], cols: &[usize]) -> Polynomial {
        assert_eq!(rows.len(), cols.len(), "minor needs as many rows as columns");
        let rm = rows.iter().fold(0u32, |a, &r| a | 1 << r);
        let cm = cols.iter().fold(0u32, |a, &c| a | 1 << c);
        assert_eq!(rm.count_ones() as usize, rows.len(), "repeated row index");
        assert_eq!(cm.count_ones() as usize, cols.len(), "repeated column index");
        self.det(rm, cm)
    }

    pub fn minor_masks(&mut self, rows: u32, cols: u32) -> Polynomial {
        self.det(rows, cols)
    }

    fn det(&mut self, rm: u32, cm: u32) -> Polynomial {
        match rm.count_ones() {
            0 => return Polynomial::one(self.m.order),
            1 => {
                return self
                    .m
                    .get(rm.trailing_zeros() as usize, cm.trailing_zeros() as usize)
                    .clone()
            }
            _ => {}
        }
        if let Some(p) = self.memo.get(&(rm, cm)) {
            return p.clone();
        }
        let cols: Vec<usize> = bits(cm).collect();
        let row = bits(rm)
            .min_by_key(|&r| cols.iter().filter(|&&c| !self.m.get(r, c).is_zero()).count())
            .unwrap();
        let row_pos = (rm & ((1u32 << row) - 1)).count_ones() as usize;
        let mut acc = Polynomial::zero(self.m.order);
        for (col_pos, &c) in cols.iter().enumerate() {
            let e = self.m.get(row, c);
            if e.is_zero() {
                continue;
            }
            let sub = self.det(rm & !(1 << row), cm & !(1 << c));
            if sub.is_zero() {
                continue;
            }
            let term = e * &sub;
            acc = if (row_pos + col_pos).is_multiple_of(2) {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        self.memo.insert((rm, cm), acc.clone());
        acc
    }
}

fn bits(mut m: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

/// Exact determinant of a square polynomial matrix.
pub fn det_symbolic(m: &PolyMatrix) -> Result<Polynomial, PolyError> {
    if m.rows != m.cols {
        return Err(PolyError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let all: Vec<usize> = (0..m.rows).collect();
    Ok(MinorCache::new(m).minor(&all, &all))
}

/// Determinant by permutation expansion; test oracle only.
#[cfg(test)]
pub(crate) fn permutation_det(m: &PolyMatrix) -> Polynomial {
    let n = m.rows;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut acc = Polynomial::zero(m.order);
    fn rec(m: &PolyMatrix, p: &mut Vec<usize>, k: usize, sign: i64, acc: &mut Polynomial) {
        if k == p.len() {
            let mut t = Polynomial::constant(sign, m.order);
            for (i, &j) in p.iter().enumerate() {
                t = &t * m.get(i, j);
            }
            *acc = &*acc + &t;
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(m, p, k + 1, if i == k { sign } else { -sign }, acc);
            p.swap(k, i);
        }
    }
    rec(m, &mut perm, 0, 1, &mut acc);
    acc
}
