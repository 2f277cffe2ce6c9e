//! Integer Laplacians, Smith normal form and critical groups.

mod matrix;

pub use matrix::{determinant, IntMatrix};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SnfError {
    #[error("base vertex {s} out of range for a graph on {n} vertices")]
    BaseVertex { s: usize, n: usize },
    #[error("graph is disconnected; its reduced Laplacian is singular")]
    Disconnected,
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
}

/// The Smith diagonal `d1 | d2 | ...`, trailing zeros for rank-deficient
/// input. Units are kept in the data and hidden by `Display`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvariantFactors {
    diag: Vec<BigInt>,
}

// numbers when they fit in u64, decimal strings otherwise
impl Serialize for InvariantFactors {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.diag.len()))?;
        for d in &self.diag {
            match u64::try_from(d) {
                Ok(x) => seq.serialize_element(&x)?,
                Err(_) => seq.serialize_element(&d.to_string())?,
            }
        }
        seq.end()
    }
}

impl InvariantFactors {
    /// Sorts into divisibility order. Panics if the entries do not form a
    /// chain once sorted, which callers use only for hand-written multisets.
    pub fn from_multiset(mut d: Vec<BigInt>) -> Self {
        for x in d.iter_mut() {
            *x = x.abs();
        }
        d.sort_by(|a, b| match (a.is_zero(), b.is_zero()) {
            (true, true) => std::cmp::Ordering::Equal,
            (true, false) => std::cmp::Ordering::Greater,
            (false, true) => std::cmp::Ordering::Less,
            _ => a.cmp(b),
        });
        let f = InvariantFactors { diag: d };
        assert!(f.is_chain(), "not a divisibility chain: {:?}", f.diag);
        f
    }

    pub fn from_u64(d: &[u64]) -> Self {
        Self::from_multiset(d.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn as_slice(&self) -> &[BigInt] {
        &self.diag
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of entries equal to `k`.
    pub fn count_equal(&self, k: u64) -> usize {
        let k = BigInt::from(k);
        self.diag.iter().filter(|d| **d == k).count()
    }

    pub fn product(&self) -> BigInt {
        self.diag.iter().product()
    }

    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }

    /// `d_i | d_{i+1}` along the nonzero prefix, and zeros only at the end.
    pub fn is_chain(&self) -> bool {
        let r = self.rank();
        self.diag[r..].iter().all(|d| d.is_zero())
            && self.diag[..r].iter().all(|d| d.is_positive())
            && self.diag[..r].windows(2).all(|w| w[1].is_multiple_of(&w[0]))
    }

    /// Entries as `u64`, for tests and small reports.
    pub fn to_u64(&self) -> Option<Vec<u64>> {
        self.diag.iter().map(|d| u64::try_from(d).ok()).collect()
    }
}

impl fmt::Display for InvariantFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .diag
            .iter()
            .filter(|d| !d.is_one())
            .map(|d| if d.is_zero() { "Z".to_string() } else { format!("Z_{d}") })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// `U * M * V = diag(factors)` with `U`, `V` unimodular.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub factors: InvariantFactors,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

struct Reducer {
    a: IntMatrix,
    u: Option<IntMatrix>,
    v: Option<IntMatrix>,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap_rows(i, j);
            if let Some(u) = &mut self.u {
                u.swap_rows(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap_cols(i, j);
            if let Some(v) = &mut self.v {
                v.swap_cols(i, j);
            }
        }
    }

    // row[dst] -= q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.row_axpy(dst, src, q);
        if let Some(u) = &mut self.u {
            u.row_axpy(dst, src, q);
        }
    }

    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.col_axpy(dst, src, q);
        if let Some(v) = &mut self.v {
            v.col_axpy(dst, src, q);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(u) = &mut self.u {
            u.negate_row(i);
        }
    }

    /// Smallest nonzero |entry| in the trailing block from `t`, first by
    /// position on ties.
    fn smallest(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a.get(bi, bj).magnitude() <= x.magnitude() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let r = self.a.rows().min(self.a.cols());
        for t in 0..r {
            let Some((pi, pj)) = self.smallest(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..self.a.rows() {
                    if !self.a.get(i, t).is_zero() {
                        let q = self.a.get(i, t).div_floor(self.a.get(t, t));
                        self.row_axpy(i, t, &q);
                        dirty |= !self.a.get(i, t).is_zero();
                    }
                }
                for j in t + 1..self.a.cols() {
                    if !self.a.get(t, j).is_zero() {
                        let q = self.a.get(t, j).div_floor(self.a.get(t, t));
                        self.col_axpy(j, t, &q);
                        dirty |= !self.a.get(t, j).is_zero();
                    }
                }
                if dirty {
                    // a remainder is now smaller than the pivot
                    let (bi, bj) = self.smallest_in_cross(t);
                    self.swap_rows(t, bi);
                    self.swap_cols(t, bj);
                    continue;
                }
                // pivot must divide the rest of the block
                let p = self.a.get(t, t).clone();
                let bad = (t + 1..self.a.rows())
                    .find(|&i| (t + 1..self.a.cols()).any(|j| !self.a.get(i, j).is_multiple_of(&p)));
                match bad {
                    Some(i) => self.row_axpy(t, i, &BigInt::from(-1)),
                    None => break,
                }
            }
            if self.a.get(t, t).is_negative() {
                self.negate_row(t);
            }
        }
    }

    fn smallest_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let mut key = self.a.get(t, t).magnitude().clone();
        for i in t + 1..self.a.rows() {
            let x = self.a.get(i, t);
            if !x.is_zero() && *x.magnitude() < key {
                key = x.magnitude().clone();
                best = (i, t);
            }
        }
        for j in t + 1..self.a.cols() {
            let x = self.a.get(t, j);
            if !x.is_zero() && *x.magnitude() < key {
                key = x.magnitude().clone();
                best = (t, j);
            }
        }
        best
    }

    fn diagonal(&self) -> InvariantFactors {
        let r = self.a.rows().min(self.a.cols());
        InvariantFactors {
            diag: (0..r).map(|i| self.a.get(i, i).clone()).collect(),
        }
    }
}

/// Smith normal form by elementary row and column operations, always
/// pivoting on the smallest nonzero entry.
pub fn smith_normal_form(m: &IntMatrix) -> InvariantFactors {
    let mut r = Reducer {
        a: m.clone(),
        u: None,
        v: None,
    };
    r.run();
    r.diagonal()
}

/// As `smith_normal_form`, also returning the transforms.
pub fn smith_normal_form_with_transforms(m: &IntMatrix) -> SmithForm {
    let mut r = Reducer {
        a: m.clone(),
        u: Some(IntMatrix::identity(m.rows())),
        v: Some(IntMatrix::identity(m.cols())),
    };
    r.run();
    SmithForm {
        factors: r.diagonal(),
        u: r.u.unwrap(),
        v: r.v.unwrap(),
    }
}

/// Degree matrix minus adjacency (multiplicities included).
pub fn integer_laplacian(g: &Graph) -> IntMatrix {
    let n = g.order();
    let mut m = IntMatrix::zeros(n, n);
    for u in 0..n {
        m.set(u, u, BigInt::from(g.degree(u)));
        for v in 0..n {
            if u != v {
                m.set(u, v, -BigInt::from(g.multiplicity(u, v)));
            }
        }
    }
    m
}

/// The Laplacian with row and column `s` removed.
pub fn reduced_laplacian(g: &Graph, s: usize) -> Result<IntMatrix, SnfError> {
    let n = g.order();
    if s >= n {
        return Err(SnfError::BaseVertex { s, n });
    }
    let keep: Vec<usize> = (0..n).filter(|&u| u != s).collect();
    Ok(integer_laplacian(g).submatrix(&keep, &keep))
}

/// `K(G)`, the cokernel of the reduced Laplacian.
#[derive(Debug, Clone, Serialize)]
pub struct CriticalGroup {
    pub factors: InvariantFactors,
    pub base: usize,
    #[serde(skip)]
    pub graph: Graph,
}

impl CriticalGroup {
    /// `f_k`: the number of invariant factors equal to `k`.
    pub fn f_count(&self, k: u64) -> usize {
        self.factors.count_equal(k)
    }

    /// The group order, which is the number of spanning trees.
    pub fn order(&self) -> BigInt {
        self.factors.product()
    }
}

impl fmt::Display for CriticalGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.factors.fmt(f)
    }
}

/// Critical group with the last vertex as base.
pub fn critical_group(g: &Graph) -> Result<CriticalGroup, SnfError> {
    critical_group_at(g, g.order().saturating_sub(1))
}

pub fn critical_group_at(g: &Graph, s: usize) -> Result<CriticalGroup, SnfError> {
    if g.order() == 0 {
        return Err(SnfError::BaseVertex { s, n: 0 });
    }
    let m = reduced_laplacian(g, s)?;
    if !g.is_connected() {
        return Err(SnfError::Disconnected);
    }
    Ok(CriticalGroup {
        factors: smith_normal_form(&m),
        base: s,
        graph: g.clone(),
    })
}

/// `f_k(G)`.
pub fn f_count(g: &Graph, k: u64) -> Result<usize, SnfError> {
    Ok(critical_group(g)?.f_count(k))
}

/// `d1 * ... * dk` equals the gcd of all k-minors; returns that gcd for
/// each `k` in `1..=min(rows, cols)`, by brute force.
pub fn determinantal_divisors(m: &IntMatrix) -> Vec<BigInt> {
    let r = m.rows().min(m.cols());
    (1..=r)
        .map(|k| {
            let rows = crate::critical::subsets(m.rows(), k);
            let cols = crate::critical::subsets(m.cols(), k);
            let mut g = BigInt::zero();
            for ri in &rows {
                for ci in &cols {
                    g = g.gcd(&determinant(&m.submatrix(ri, ci)).unwrap());
                    if g.is_one() {
                        return g;
                    }
                }
            }
            g
        })
        .collect()
}
