//! Generalized Laplacians, their minors, critical ideals and the algebraic
//! co-rank.

mod forb;

pub use forb::{forb_search, GammaCache};

use std::collections::HashSet;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{families, Graph};
use crate::ideal::{decide_triviality, Budget, Ideal, IdealError, Triviality};
use crate::poly::{MinorCache, MonomialOrder, PolyMatrix, Polynomial, MAX_VARS};

/// Largest order accepted by `algebraic_corank`.
pub const MAX_GAMMA_ORDER: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriticalError {
    #[error("k = {k} is outside 1..={n}")]
    IndexOutOfRange { k: usize, n: usize },
    #[error("graph has {n} vertices; at most {max} are supported here")]
    TooLarge { n: usize, max: usize },
    #[error("while deciding I_{k}: {source}")]
    Budget { k: usize, source: IdealError },
    #[error("inconsistent co-rank: {0}")]
    Inconsistent(String),
}

/// `L(G, X)`: `x_u` on the diagonal and `-m_uv` off it.
#[derive(Clone)]
pub struct GeneralizedLaplacian {
    graph: Graph,
    matrix: PolyMatrix,
    names: Vec<String>,
}

impl GeneralizedLaplacian {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    /// Variable names: vertex labels when present, else `x1, x2, ...`.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }
}

impl std::fmt::Debug for GeneralizedLaplacian {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n = self.order();
        let rows: Vec<Vec<String>> = (0..n)
            .map(|i| (0..n).map(|j| self.matrix.get(i, j).render(&self.names)).collect())
            .collect();
        f.debug_list().entries(rows).finish()
    }
}

pub const ORDER: MonomialOrder = MonomialOrder::DegRevLex;

pub fn generalized_laplacian(g: &Graph) -> GeneralizedLaplacian {
    let n = g.order();
    assert!(
        n <= MAX_VARS,
        "generalized Laplacian supports at most {MAX_VARS} vertices"
    );
    let mut m = PolyMatrix::zeros(n, n, ORDER);
    for u in 0..n {
        m.set(u, u, Polynomial::var(u, ORDER));
        for v in 0..n {
            if u != v && g.multiplicity(u, v) > 0 {
                m.set(u, v, Polynomial::constant(-(g.multiplicity(u, v) as i64), ORDER));
            }
        }
    }
    let names = match g.labels() {
        Some(l) => l.to_vec(),
        None => (1..=n).map(|i| format!("x{i}")).collect(),
    };
    GeneralizedLaplacian {
        graph: g.clone(),
        matrix: m,
        names,
    }
}

/// All `k`-subsets of `0..n` as sorted index vectors, lexicographically.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// The distinct nonzero `k`-minors of a generalized Laplacian, each with
/// the first submatrix that produced it.
pub struct MinorScan {
    pub generators: Vec<Polynomial>,
    pub positions: Vec<(Vec<usize>, Vec<usize>)>,
    /// Set when the scan stopped at a `±1` minor.
    pub unit: Option<(Vec<usize>, Vec<usize>)>,
}

/// Computes `det L[I; J]` for `|I| = |J| = k` and `I <= J` (the matrix is
/// symmetric), dropping zeros and duplicates up to sign. With
/// `stop_at_unit`, returns as soon as a `±1` minor appears.
pub fn scan_minors(l: &GeneralizedLaplacian, k: usize, stop_at_unit: bool) -> Result<MinorScan, CriticalError> {
    let n = l.order();
    if k < 1 || k > n {
        return Err(CriticalError::IndexOutOfRange { k, n });
    }
    let subs = subsets(n, k);
    let mut cache = MinorCache::new(&l.matrix);
    let mut seen: HashSet<Polynomial> = HashSet::new();
    let mut scan = MinorScan {
        generators: Vec::new(),
        positions: Vec::new(),
        unit: None,
    };
    for a in 0..subs.len() {
        for b in a..subs.len() {
            let d = cache.minor(&subs[a], &subs[b]);
            if d.is_zero() {
                continue;
            }
            let d = d.normalize_sign();
            if d.is_unit() && scan.unit.is_none() {
                scan.unit = Some((subs[a].clone(), subs[b].clone()));
                if stop_at_unit {
                    return Ok(scan);
                }
            }
            if seen.insert(d.clone()) {
                scan.generators.push(d);
                scan.positions.push((subs[a].clone(), subs[b].clone()));
            }
        }
    }
    let mut idx: Vec<usize> = (0..scan.generators.len()).collect();
    idx.sort_by(|&i, &j| scan.generators[i].cmp_terms(&scan.generators[j]));
    scan.generators = idx.iter().map(|&i| scan.generators[i].clone()).collect();
    scan.positions = idx.iter().map(|&i| scan.positions[i].clone()).collect();
    Ok(scan)
}

/// Distinct nonzero `k`-minors up to sign, positive leading coefficient,
/// in a deterministic order.
pub fn k_minors(l: &GeneralizedLaplacian, k: usize) -> Result<Vec<Polynomial>, CriticalError> {
    Ok(scan_minors(l, k, false)?.generators)
}

/// A `k`-square submatrix with determinant `±1`, if any.
pub fn find_unit_minor(l: &GeneralizedLaplacian, k: usize) -> Result<Option<(Vec<usize>, Vec<usize>)>, CriticalError> {
    Ok(scan_minors(l, k, true)?.unit)
}

/// `I_k(G, X)`.
#[derive(Debug, Clone)]
pub struct CriticalIdeal {
    pub k: i64,
    pub ideal: Ideal,
    pub names: Vec<String>,
}

/// The `k`-th critical ideal: `<1>` for `k < 1`, `<0>` for `k > n`, else
/// generated by the `k`-minors.
pub fn critical_ideal(g: &Graph, k: i64) -> CriticalIdeal {
    let l = generalized_laplacian(g);
    let n = g.order() as i64;
    let ideal = if k < 1 {
        Ideal::unit(ORDER)
    } else if k > n {
        Ideal::zero(ORDER)
    } else {
        Ideal::new(k_minors(&l, k as usize).expect("index in range"), ORDER)
    };
    CriticalIdeal {
        k,
        ideal,
        names: l.names,
    }
}

/// Evidence that the last trivial critical ideal contains `1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CorankWitness {
    /// `det L[rows; cols] = ±1` (0-based indices).
    UnitMinor {
        k: usize,
        rows: Vec<usize>,
        cols: Vec<usize>,
    },
    /// The constant `k`-minors have gcd 1.
    ConstantGcd { k: usize },
    /// No single minor is a unit; a Gröbner basis of the minors contains one.
    GroebnerUnit { k: usize, pairs: u64 },
}

impl CorankWitness {
    /// Recomputes the evidence from scratch.
    pub fn verify(&self, g: &Graph) -> bool {
        let l = generalized_laplacian(g);
        match self {
            CorankWitness::UnitMinor { k, rows, cols } => {
                rows.len() == *k && MinorCache::new(l.matrix()).minor(rows, cols).is_unit()
            }
            CorankWitness::ConstantGcd { k } | CorankWitness::GroebnerUnit { k, .. } => {
                crate::ideal::is_trivial(&critical_ideal(g, *k as i64).ideal).unwrap_or(false)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexStatus {
    pub k: usize,
    pub trivial: bool,
    pub generators: usize,
    pub decided_by: Triviality,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorankResult {
    pub gamma: usize,
    /// Status of `I_1, ..., I_{gamma+1}` (the last entry is the first
    /// non-trivial ideal, absent when every ideal is trivial).
    pub indices: Vec<IndexStatus>,
    pub witness: Option<CorankWitness>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CorankResult {
    pub fn trivial_indices(&self) -> Vec<usize> {
        (1..=self.gamma).collect()
    }
}

/// Decides whether `I_k(G)` is trivial, scanning for a unit minor first.
pub fn decide_index(
    l: &GeneralizedLaplacian,
    k: usize,
    budget: Budget,
) -> Result<(IndexStatus, Option<CorankWitness>), CriticalError> {
    let scan = scan_minors(l, k, true)?;
    if let Some((rows, cols)) = scan.unit {
        let status = IndexStatus {
            k,
            trivial: true,
            generators: 0,
            decided_by: Triviality::UnitGenerator { index: 0 },
        };
        return Ok((status, Some(CorankWitness::UnitMinor { k, rows, cols })));
    }
    let ideal = Ideal::new(scan.generators, ORDER);
    let t = decide_triviality(&ideal, budget).map_err(|source| CriticalError::Budget { k, source })?;
    let witness = match &t {
        Triviality::ConstantGcd => Some(CorankWitness::ConstantGcd { k }),
        Triviality::GroebnerUnit { pairs } => Some(CorankWitness::GroebnerUnit { k, pairs: *pairs }),
        _ => None,
    };
    Ok((
        IndexStatus {
            k,
            trivial: t.is_trivial(),
            generators: ideal.generators().len(),
            decided_by: t,
        },
        witness,
    ))
}

/// `γ(G)`, stopping at the first non-trivial critical ideal (the ideals are
/// nested, so all later ones are non-trivial too). With `cap`, stops once
/// `γ > cap` is established and reports `cap + 1`.
pub fn algebraic_corank_capped(g: &Graph, cap: Option<usize>, budget: Budget) -> Result<CorankResult, CriticalError> {
    let n = g.order();
    if n > MAX_GAMMA_ORDER {
        return Err(CriticalError::TooLarge {
            n,
            max: MAX_GAMMA_ORDER,
        });
    }
    let start = Instant::now();
    let l = generalized_laplacian(g);
    let mut indices = Vec::new();
    let mut witness = None;
    let mut gamma = 0;
    for k in 1..=n {
        let (status, w) = decide_index(&l, k, budget)?;
        let trivial = status.trivial;
        indices.push(status);
        if !trivial {
            break;
        }
        gamma = k;
        witness = w;
        if cap.is_some_and(|c| gamma > c) {
            break;
        }
    }
    Ok(CorankResult {
        gamma,
        indices,
        witness,
        elapsed: start.elapsed(),
    })
}

pub fn algebraic_corank(g: &Graph) -> Result<CorankResult, CriticalError> {
    algebraic_corank_capped(g, None, Budget::from_env())
}

pub fn gamma(g: &Graph) -> Result<usize, CriticalError> {
    Ok(algebraic_corank(g)?.gamma)
}

/// `γ` as the sum over connected components.
pub fn gamma_by_components(g: &Graph) -> Result<usize, CriticalError> {
    g.connected_components().iter().map(gamma).sum()
}

/// `γ(G - v) < γ(G)` for every vertex `v`. Disconnected deletions are
/// computed on the whole Laplacian and checked against the component sum.
pub fn is_gamma_critical(g: &Graph) -> Result<bool, CriticalError> {
    let whole = gamma(g)?;
    for v in 0..g.order() {
        let h = g.delete_vertex(v);
        let direct = gamma(&h)?;
        if !h.is_connected() {
            let summed = gamma_by_components(&h)?;
            if summed != direct {
                return Err(CriticalError::Inconsistent(format!(
                    "deleting vertex {v}: direct {direct}, component sum {summed}"
                )));
            }
        }
        if direct >= whole {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `γ(G + H) = γ(G) + γ(H)`, with `G + H` computed directly.
pub fn gamma_disjoint_sum_check(g: &Graph, h: &Graph) -> Result<bool, CriticalError> {
    Ok(gamma(&families::disjoint_union(g, h))? == gamma(g)? + gamma(h)?)
}

/// Generators of `I_i(G + H)` from the product formula
/// `sum_j I_j(G) * I_{i-j}(H)`, with the variables of `H` shifted past
/// those of `G`.
pub fn disjoint_union_generators(g: &Graph, h: &Graph, i: i64) -> Ideal {
    let shift: Vec<usize> = (0..h.order()).map(|v| v + g.order()).collect();
    let mut gens = Vec::new();
    for j in 0..=i {
        let a = critical_ideal(g, j).ideal;
        let b = critical_ideal(h, i - j).ideal;
        for p in a.generators() {
            for q in b.generators() {
                gens.push(p * &q.rename(&shift));
            }
        }
    }
    Ideal::new(gens, ORDER)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::graph::{f2_patterns, is_isomorphic};
    use crate::ideal::{equal, is_trivial};
    use crate::poly::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &[], ORDER).unwrap()
    }

    fn strs(v: &[Polynomial]) -> Vec<String> {
        v.iter().map(|q| q.to_string()).collect()
    }

    #[test]
    fn laplacian_of_k2() {
        let l = generalized_laplacian(&complete(2));
        assert_eq!(format!("{l:?}"), r#"[["x1", "-1"], ["-1", "x2"]]"#);
        assert!(l.matrix().is_symmetric());
    }

    #[test]
    fn laplacian_of_p4() {
        let l = generalized_laplacian(&path(4));
        assert_eq!(
            format!("{l:?}"),
            r#"[["x1", "-1", "0", "0"], ["-1", "x2", "-1", "0"], ["0", "-1", "x3", "-1"], ["0", "0", "-1", "x4"]]"#
        );
    }

    #[test]
    fn laplacian_of_example_graph() {
        let l = generalized_laplacian(&unit_free_corank5_example());
        let expected = [
            "x1 -1 -1 0 0 -1 -1",
            "-1 x2 -1 0 0 0 -1",
            "-1 -1 x3 -1 0 -1 -1",
            "0 0 -1 x4 -1 -1 -1",
            "0 0 0 -1 x5 -1 -1",
            "-1 0 -1 -1 -1 x6 -1",
            "-1 -1 -1 -1 -1 -1 x7",
        ];
        for (i, row) in expected.iter().enumerate() {
            let got: Vec<String> = (0..7).map(|j| l.matrix().get(i, j).to_string()).collect();
            assert_eq!(got.join(" "), *row);
        }
    }

    #[test]
    fn two_minors_of_complete_graphs() {
        let m = k_minors(&generalized_laplacian(&complete(4)), 2).unwrap();
        let mut expect: Vec<Polynomial> = Vec::new();
        for i in 0..4 {
            expect.push(&Polynomial::var(i, ORDER) + &Polynomial::one(ORDER));
            for j in i + 1..4 {
                expect.push(&(&Polynomial::var(i, ORDER) * &Polynomial::var(j, ORDER)) - &Polynomial::one(ORDER));
            }
        }
        let got: HashSet<String> = strs(&m).into_iter().collect();
        let want: HashSet<String> = strs(&expect).into_iter().collect();
        assert_eq!(got, want);
    }

    #[test]
    fn one_minors_of_trivial_graph() {
        let m = k_minors(&generalized_laplacian(&trivial(3)), 1).unwrap();
        assert_eq!(strs(&m), vec!["x3", "x2", "x1"]);
    }

    #[test]
    fn index_range() {
        let l = generalized_laplacian(&path(3));
        assert!(k_minors(&l, 0).is_err());
        assert!(k_minors(&l, 4).is_err());
    }

    #[test]
    fn critical_ideals_of_complete_graphs() {
        let i = critical_ideal(&complete(4), 2).ideal;
        let e = Ideal::new(
            (0..4)
                .map(|u| &Polynomial::var(u, ORDER) + &Polynomial::one(ORDER))
                .collect(),
            ORDER,
        );
        assert!(equal(&i, &e).unwrap());
        let i2 = critical_ideal(&complete(2), 2).ideal;
        assert_eq!(strs(i2.generators()), vec!["x1*x2 - 1"]);
        assert!(is_trivial(&critical_ideal(&path(3), 0).ideal).unwrap());
        assert!(is_trivial(&critical_ideal(&path(3), -2).ideal).unwrap());
        assert!(critical_ideal(&path(3), 4).ideal.is_zero_ideal());
    }

    #[test]
    fn gamma_small_cases() {
        for n in 2..=6 {
            assert_eq!(gamma(&complete(n)).unwrap(), 1, "K{n}");
        }
        for n in 2..=7 {
            assert_eq!(gamma(&path(n)).unwrap(), n - 1, "P{n}");
        }
        let k1 = algebraic_corank(&trivial(1)).unwrap();
        assert_eq!(k1.gamma, 0);
        assert_eq!(k1.indices.len(), 1);
        assert_eq!(critical_ideal(&trivial(1), 1).ideal.generators(), &[p("x1")]);
        for (name, g) in f2_patterns().iter() {
            assert_eq!(gamma(g).unwrap(), 3, "{name}");
        }
        assert_eq!(gamma(&Graph::new(0)).unwrap(), 0);
    }

    #[test]
    fn example_graph_needs_groebner() {
        let g = unit_free_corank5_example();
        let r = algebraic_corank(&g).unwrap();
        assert_eq!(r.gamma, 5);
        assert!(
            matches!(r.witness, Some(CorankWitness::GroebnerUnit { k: 5, .. })),
            "{:?}",
            r.witness
        );
        assert!(r.witness.as_ref().unwrap().verify(&g));
        let l = generalized_laplacian(&g);
        assert_eq!(find_unit_minor(&l, 5).unwrap(), None);
        // values from an independent cofactor expansion of the same matrix
        let mut c = MinorCache::new(l.matrix());
        assert_eq!(c.minor(&[0, 1, 2, 3, 4], &[1, 2, 4, 5, 6]), p("-x3*x5 - x3 - x5 - 1"));
        assert_eq!(
            c.minor(&[0, 1, 2, 4, 5], &[1, 3, 4, 5, 6]),
            p("x2*x5*x6 + x2*x5 + x5*x6 - 1")
        );
        assert_eq!(c.minor(&[0, 1, 2, 4, 5], &[2, 3, 4, 5, 6]), p("x3*x5 + x3 + x5"));
        assert_eq!(k_minors(&l, 5).unwrap().len(), 226);
    }

    #[test]
    fn criticality() {
        assert!(is_gamma_critical(&path(4)).unwrap());
        assert!(is_gamma_critical(&path(5)).unwrap());
        // K4 minus an edge has γ = 2, but deleting a degree-3 vertex leaves
        // P3, which also has γ = 2
        let k4m1 = matching_removed(4, 1).unwrap();
        assert_eq!(gamma(&k4m1).unwrap(), 2);
        assert!(!is_gamma_critical(&k4m1).unwrap());
        let k6m2 = matching_removed(6, 2).unwrap();
        assert_eq!(gamma(&k6m2).unwrap(), 3);
        assert!(is_gamma_critical(&k6m2).unwrap());
        assert!(!is_gamma_critical(&complete(3)).unwrap());
    }

    #[test]
    fn disjoint_sums() {
        assert_eq!(gamma(&disjoint_union(&path(2), &path(2))).unwrap(), 2);
        assert!(gamma_disjoint_sum_check(&path(2), &path(2)).unwrap());
        assert!(gamma_disjoint_sum_check(&trivial(1), &path(4)).unwrap());
        assert_eq!(gamma(&disjoint_union(&trivial(1), &path(4))).unwrap(), 3);
        assert_eq!(gamma(&disjoint_union(&path(3), &path(2))).unwrap(), 3);
    }

    #[test]
    fn product_formula_matches_direct_ideal() {
        let (g, h) = (path(3), complete(2));
        let u = disjoint_union(&g, &h);
        for i in 0..=5 {
            let direct = critical_ideal(&u, i).ideal;
            let formula = disjoint_union_generators(&g, &h, i);
            assert!(equal(&direct, &formula).unwrap(), "i={i}");
        }
    }

    #[test]
    fn minors_invariant_under_relabelling() {
        let g = f2_patterns().get("Gab").unwrap().clone();
        let perm = [3, 0, 4, 1, 2];
        let h = g.permuted(&perm);
        assert!(is_isomorphic(&g, &h));
        for k in 1..=5 {
            let a: HashSet<Polynomial> = k_minors(&generalized_laplacian(&g), k)
                .unwrap()
                .iter()
                .map(|q| q.rename(&perm).normalize_sign())
                .collect();
            let b: HashSet<Polynomial> = k_minors(&generalized_laplacian(&h), k).unwrap().into_iter().collect();
            assert_eq!(a, b, "k={k}");
        }
    }
}
