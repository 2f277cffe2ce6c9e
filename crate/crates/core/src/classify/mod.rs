//! Recognisers for `Γ≤1`, `Γ≤2`, `𝒢1` and `𝒢2`.
//!
//! `G` is an induced subgraph of `K_{m,n,o}` iff its complement is a disjoint
//! union of at most three cliques, and of `T_n ∨ (K_m + K_o)` iff its
//! complement is a clique plus an induced subgraph of `K_{m,o}`. Induced
//! subgraphs of either family stay in the family, so every recognised graph
//! is an exact member for some parameters.

mod g2;

pub use g2::{g2_clauses, in_g2, in_g2_with, ClauseSet, G2Clause, G2Verdict};

use serde::Serialize;
use thiserror::Error;

use crate::critical::{gamma_by_components, CriticalError, MAX_GAMMA_ORDER};
use crate::graph::{emit_graph6, f2_patterns, families, Graph, GraphError};
use crate::snf::{critical_group, InvariantFactors};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("needs at least two vertices")]
    TooSmall,
    #[error(transparent)]
    Critical(#[from] CriticalError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Complete,
    Tripartite,
    TJoinCliques,
    None,
}

/// How `G` sits in one of the two families. `witness` lists the vertex
/// blocks in the family constructor's layout: the three parts for
/// `tripartite(m,n,o)`, the `K_m`, `T_n`, `K_o` blocks for
/// `t-join-cliques(n,m,o)`, a single block for `complete`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyMembership {
    pub family: FamilyKind,
    pub parameters: Vec<usize>,
    pub witness: Vec<Vec<usize>>,
}

impl FamilyMembership {
    pub fn none() -> Self {
        FamilyMembership {
            family: FamilyKind::None,
            parameters: Vec::new(),
            witness: Vec::new(),
        }
    }

    pub fn is_member(&self) -> bool {
        self.family != FamilyKind::None
    }

    /// The family graph for these parameters, in constructor layout.
    pub fn build(&self) -> Option<Graph> {
        let p = &self.parameters;
        match self.family {
            FamilyKind::Complete => Some(families::complete(p[0])),
            FamilyKind::Tripartite => Some(families::complete_multipartite(&[p[0], p[1], p[2]])),
            FamilyKind::TJoinCliques => Some(families::t_join_cliques(p[0], p[1], p[2])),
            FamilyKind::None => None,
        }
    }

    /// Inducing `g` on the witness blocks reproduces the family graph.
    pub fn revalidate(&self, g: &Graph) -> bool {
        let Some(h) = self.build() else {
            return self.witness.is_empty();
        };
        let order: Vec<usize> = self.witness.iter().flatten().copied().collect();
        let sizes: Vec<usize> = self.witness.iter().map(|b| b.len()).collect();
        let expect_sizes: Vec<usize> = match self.family {
            FamilyKind::Complete => vec![self.parameters[0]],
            FamilyKind::Tripartite => self.parameters.clone(),
            // constructor layout is K_m, T_n, K_o
            _ => vec![self.parameters[1], self.parameters[0], self.parameters[2]],
        };
        let mut sorted = order.clone();
        sorted.sort_unstable();
        sizes == expect_sizes && sorted == (0..g.order()).collect::<Vec<_>>() && g.induced(&order).edges() == h.edges()
    }
}

enum Piece {
    Clique(Vec<usize>),
    // both sides non-empty
    Biclique(Vec<usize>, Vec<usize>),
    Other,
}

fn pieces(g: &Graph) -> Result<Vec<Piece>, GraphError> {
    let c = g.complement()?;
    Ok(c.component_vertex_sets()
        .into_iter()
        .map(|comp| {
            let clique = comp.iter().all(|&u| comp.iter().all(|&v| u == v || c.has_edge(u, v)));
            if clique {
                return Piece::Clique(comp);
            }
            // comp is connected in c, so the side of each vertex is forced
            let (a, b): (Vec<usize>, Vec<usize>) = {
                let first = comp[0];
                comp.iter().partition(|&&v| v == first || !c.has_edge(first, v))
            };
            let complete = a.iter().all(|&u| b.iter().all(|&v| c.has_edge(u, v)))
                && a.iter().all(|&u| a.iter().all(|&v| !c.has_edge(u, v)))
                && b.iter().all(|&u| b.iter().all(|&v| !c.has_edge(u, v)));
            if complete {
                Piece::Biclique(a, b)
            } else {
                Piece::Other
            }
        })
        .collect())
}

/// Every exact parameterisation of `g` in the two families, tripartite
/// first, in a fixed order and without duplicates.
pub fn parameterizations(g: &Graph) -> Result<Vec<FamilyMembership>, GraphError> {
    let ps = pieces(g)?;
    let mut out: Vec<FamilyMembership> = Vec::new();
    let mut push = |f: FamilyMembership| {
        if !out.iter().any(|o| o.family == f.family && o.parameters == f.parameters) {
            out.push(f);
        }
    };
    if ps.iter().any(|p| matches!(p, Piece::Other)) {
        return Ok(Vec::new());
    }
    let cliques: Vec<&Vec<usize>> = ps
        .iter()
        .filter_map(|p| if let Piece::Clique(c) = p { Some(c) } else { None })
        .collect();
    let bicliques: Vec<(&Vec<usize>, &Vec<usize>)> = ps
        .iter()
        .filter_map(|p| {
            if let Piece::Biclique(a, b) = p {
                Some((a, b))
            } else {
                None
            }
        })
        .collect();

    if bicliques.is_empty() && cliques.len() <= 3 {
        let mut parts: Vec<Vec<usize>> = cliques.iter().map(|c| (*c).clone()).collect();
        parts.resize(3, Vec::new());
        parts.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        push(FamilyMembership {
            family: FamilyKind::Tripartite,
            parameters: parts.iter().map(|p| p.len()).collect(),
            witness: parts,
        });
    }

    // T_n ∨ (K_m + K_o): complement is K_n + K_{m,o}; one clique piece (or
    // none) plays K_n and what is left must be an induced K_{m,o}
    let mut t_options: Vec<(Vec<usize>, Vec<usize>, Vec<usize>)> = Vec::new();
    let choices: Vec<Option<usize>> = std::iter::once(None).chain((0..cliques.len()).map(Some)).collect();
    for choice in choices {
        let y: Vec<usize> = choice.map(|i| cliques[i].clone()).unwrap_or_default();
        let rest: Vec<&Vec<usize>> = cliques
            .iter()
            .enumerate()
            .filter(|&(i, _)| Some(i) != choice)
            .map(|(_, c)| *c)
            .collect();
        match (bicliques.as_slice(), rest.as_slice()) {
            ([], rest) if rest.iter().all(|c| c.len() == 1) => {
                let x: Vec<usize> = rest.iter().map(|c| c[0]).collect();
                t_options.push((x, y, Vec::new()));
            }
            ([], [c]) if c.len() == 2 => t_options.push((vec![c[0]], y, vec![c[1]])),
            ([(a, b)], []) => t_options.push(((*a).clone(), y, (*b).clone())),
            _ => {}
        }
    }
    for (mut x, y, mut z) in t_options {
        if x.len() < z.len() || (x.len() == z.len() && x > z) {
            std::mem::swap(&mut x, &mut z);
        }
        x.sort_unstable();
        z.sort_unstable();
        let mut y = y;
        y.sort_unstable();
        push(FamilyMembership {
            family: FamilyKind::TJoinCliques,
            parameters: vec![y.len(), x.len(), z.len()],
            witness: vec![x, y, z],
        });
    }
    out.sort_by(|a, b| a.family.cmp(&b.family).then(a.parameters.cmp(&b.parameters).reverse()));
    Ok(out)
}

/// `γ(G) ≤ 1` for connected `G`: exactly when `G` is complete.
pub fn in_gamma_le1(g: &Graph) -> Result<bool, ClassifyError> {
    g.require_simple()?;
    if !g.is_connected() {
        return Err(ClassifyError::Disconnected);
    }
    Ok(g.is_complete())
}

/// `γ(G) ≤ 1` for any simple `G`: a clique plus isolated vertices.
pub fn in_gamma_le1_any(g: &Graph) -> Result<bool, ClassifyError> {
    g.require_simple()?;
    let comps = g.connected_components();
    let big: Vec<&Graph> = comps.iter().filter(|c| c.order() > 1).collect();
    Ok(big.len() <= 1 && big.iter().all(|c| c.is_complete()))
}

/// Family membership for `Γ≤2`; complete graphs are reported as such.
pub fn in_gamma_le2_structural(g: &Graph) -> Result<FamilyMembership, ClassifyError> {
    g.require_simple()?;
    if g.is_complete() {
        return Ok(FamilyMembership {
            family: FamilyKind::Complete,
            parameters: vec![g.order()],
            witness: vec![(0..g.order()).collect()],
        });
    }
    Ok(parameterizations(g)?
        .into_iter()
        .next()
        .unwrap_or_else(FamilyMembership::none))
}

/// `γ(G) ≤ 2` for any simple `G`, components allowed. Isolated vertices
/// contribute nothing and every other component at least one, so either a
/// single non-trivial component lies in `Γ≤2` or there are two and both are
/// cliques.
pub fn in_gamma_le2_any(g: &Graph) -> Result<bool, ClassifyError> {
    g.require_simple()?;
    let comps = g.connected_components();
    let big: Vec<&Graph> = comps.iter().filter(|c| c.order() > 1).collect();
    Ok(match big.as_slice() {
        [] => true,
        [c] => in_gamma_le2_structural(c)?.is_member(),
        [a, b] => a.is_complete() && b.is_complete(),
        _ => false,
    })
}

/// `f1(G) = 1`, i.e. `G` complete.
pub fn in_g1(g: &Graph) -> Result<bool, ClassifyError> {
    g.require_simple()?;
    if g.order() < 2 {
        return Err(ClassifyError::TooSmall);
    }
    if !g.is_connected() {
        return Err(ClassifyError::Disconnected);
    }
    Ok(g.is_complete())
}

/// One graph's full classification.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub graph6: String,
    pub gamma: Option<usize>,
    pub invariant_factors: Option<InvariantFactors>,
    pub family: FamilyKind,
    pub parameters: Vec<usize>,
    pub g2_clause: Option<G2Clause>,
    pub connected: bool,
    pub gamma_le1: bool,
    pub gamma_le2: bool,
    pub forbidden_hit: Option<String>,
    pub g1: Option<bool>,
    pub g2: Option<bool>,
}

/// `γ` is summed over components, and left out when a component has more
/// than `MAX_GAMMA_ORDER` vertices.
pub fn classify(g: &Graph) -> Result<ClassificationReport, ClassifyError> {
    g.require_simple()?;
    let connected = g.is_connected();
    let membership = if connected {
        in_gamma_le2_structural(g)?
    } else {
        FamilyMembership::none()
    };
    let gamma = if g.connected_components().iter().all(|c| c.order() <= MAX_GAMMA_ORDER) {
        Some(gamma_by_components(g)?)
    } else {
        None
    };
    let (invariant_factors, g1, verdict) = if connected {
        let k = critical_group(g).expect("connected");
        let g1 = (g.order() >= 2).then(|| g.is_complete());
        (Some(k.factors), g1, Some(in_g2(g)?))
    } else {
        (None, None, None)
    };
    Ok(ClassificationReport {
        graph6: emit_graph6(g)?,
        gamma,
        invariant_factors,
        family: membership.family,
        parameters: membership.parameters,
        g2_clause: verdict.as_ref().and_then(|v| v.clause.clone()),
        connected,
        gamma_le1: in_gamma_le1_any(g)?,
        gamma_le2: in_gamma_le2_any(g)?,
        forbidden_hit: f2_patterns().first_hit(g).map(str::to_string),
        g1,
        g2: verdict.map(|v| v.member),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::critical::gamma;
    use crate::graph::families::*;
    use crate::graph::{enumerate_all, enumerate_connected, f2_patterns};
    use crate::snf::f_count;

    fn tri(m: usize, n: usize, o: usize) -> Graph {
        complete_multipartite(&[m, n, o])
    }

    #[test]
    fn gamma_le1() {
        assert!(in_gamma_le1(&complete(5)).unwrap());
        assert!(!in_gamma_le1(&path(3)).unwrap());
        assert!(!in_gamma_le1(&cycle(4)).unwrap());
        assert_eq!(in_gamma_le1(&trivial(2)), Err(ClassifyError::Disconnected));
        assert!(in_gamma_le1_any(&disjoint_union(&complete(4), &trivial(3))).unwrap());
        assert!(!in_gamma_le1_any(&disjoint_union(&complete(2), &complete(2))).unwrap());
    }

    #[test]
    fn structural_examples() {
        let c4 = in_gamma_le2_structural(&cycle(4)).unwrap();
        assert_eq!(
            (c4.family, c4.parameters.clone()),
            (FamilyKind::Tripartite, vec![2, 2, 0])
        );
        assert!(c4.revalidate(&cycle(4)));
        let gaa = f2_patterns().get("Gaa").unwrap().clone();
        assert_eq!(in_gamma_le2_structural(&gaa).unwrap(), FamilyMembership::none());
        let g = cone(&disjoint_union(&complete(2), &complete(3)));
        let m = in_gamma_le2_structural(&g).unwrap();
        assert_eq!(
            (m.family, m.parameters.clone()),
            (FamilyKind::TJoinCliques, vec![1, 3, 2])
        );
        assert!(m.revalidate(&g));
        assert_eq!(gamma(&g).unwrap(), 2);
        let k5 = in_gamma_le2_structural(&complete(5)).unwrap();
        assert_eq!(k5.family, FamilyKind::Complete);
        assert!(k5.revalidate(&complete(5)));
        let mut multi = complete(3);
        multi.set_multiplicity(0, 1, 2).unwrap();
        assert!(matches!(
            in_gamma_le2_structural(&multi),
            Err(ClassifyError::Graph(GraphError::NotSimple))
        ));
    }

    #[test]
    fn parameterizations_of_family_graphs_round_trip() {
        for m in 0..=4 {
            for n in 0..=4 {
                for o in 0..=4 {
                    for g in [tri(m, n, o), t_join_cliques(n, m, o)] {
                        if g.order() == 0 {
                            continue;
                        }
                        let ps = parameterizations(&g).unwrap();
                        assert!(!ps.is_empty(), "{g:?}");
                        for p in &ps {
                            assert!(p.revalidate(&g), "{p:?} on {g:?}");
                        }
                    }
                }
            }
        }
        // a complete graph is T_1 ∨ K_{n-1} and, up to three vertices, tripartite
        let ps = parameterizations(&complete(3)).unwrap();
        let fams: Vec<(FamilyKind, Vec<usize>)> = ps.into_iter().map(|p| (p.family, p.parameters)).collect();
        assert!(fams.contains(&(FamilyKind::Tripartite, vec![1, 1, 1])));
        assert!(fams.contains(&(FamilyKind::TJoinCliques, vec![1, 2, 0])));
    }

    #[test]
    fn any_variant() {
        assert!(!in_gamma_le2_any(&disjoint_union(&path(3), &complete(2))).unwrap());
        let three = disjoint_union(&complete(2), &disjoint_union(&complete(2), &complete(2)));
        assert!(!in_gamma_le2_any(&three).unwrap());
        assert!(in_gamma_le2_any(&disjoint_union(&complete(4), &trivial(5))).unwrap());
        assert!(in_gamma_le2_any(&disjoint_union(&complete(3), &complete(2))).unwrap());
        assert!(!in_gamma_le2_any(&path(4)).unwrap());
    }

    #[test]
    fn g1() {
        assert!(in_g1(&complete(7)).unwrap());
        assert!(!in_g1(&tri(2, 2, 0)).unwrap());
        assert_eq!(in_g1(&complete(1)), Err(ClassifyError::TooSmall));
    }

    #[test]
    fn routes_agree_up_to_six() {
        let f2 = f2_patterns();
        for n in 1..=6 {
            for g in enumerate_connected(n).unwrap() {
                let s = in_gamma_le2_structural(&g).unwrap();
                let free = f2.first_hit(&g).is_none();
                let le2 = gamma(&g).unwrap() <= 2;
                assert_eq!(s.is_member(), free, "{g:?}");
                assert_eq!(free, le2, "{g:?}");
                assert!(s.revalidate(&g));
                if n >= 2 {
                    assert_eq!(in_g1(&g).unwrap(), f_count(&g, 1).unwrap() == 1);
                }
            }
        }
    }

    #[test]
    fn any_variant_matches_component_sum() {
        for n in 1..=6 {
            for g in enumerate_all(n).unwrap() {
                let le2 = gamma_by_components(&g).unwrap() <= 2;
                assert_eq!(in_gamma_le2_any(&g).unwrap(), le2, "{g:?}");
                let le1 = gamma_by_components(&g).unwrap() <= 1;
                assert_eq!(in_gamma_le1_any(&g).unwrap(), le1, "{g:?}");
            }
        }
    }

    #[test]
    fn report() {
        let r = classify(&tri(2, 2, 2)).unwrap();
        assert_eq!(r.family, FamilyKind::Tripartite);
        assert_eq!(r.parameters, vec![2, 2, 2]);
        assert_eq!(r.gamma, Some(2));
        assert_eq!(r.g2, Some(true));
        assert_eq!(r.g2_clause.as_ref().unwrap().family, FamilyKind::Tripartite);
        let r = classify(&path(4)).unwrap();
        assert!(!r.gamma_le2);
        assert_eq!(r.forbidden_hit.as_deref(), Some("P4"));
        let r = classify(&disjoint_union(&complete(4), &trivial(5))).unwrap();
        assert!(r.gamma_le2);
        assert_eq!(r.gamma, Some(1));
        let json = serde_json::to_string(&classify(&complete(4)).unwrap()).unwrap();
        assert!(
            json.starts_with(
                r#"{"graph6":"C~","gamma":1,"invariant_factors":[1,4,4],"family":"complete","parameters":[4]"#
            ),
            "{json}"
        );
    }
}
