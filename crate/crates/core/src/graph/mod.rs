//! Undirected graphs with edge multiplicities, the standard constructions,
//! graph6 / edge-list I/O, induced-subgraph search and isomorphism-free
//! enumeration of small connected graphs.

mod canon;
mod enumerate;
pub mod families;
mod graph6;
mod induced;
mod patterns;

pub use canon::{canonical_code, is_isomorphic, CanonicalCode, MAX_CANON_ORDER};
pub use enumerate::{enumerate_all, enumerate_connected, GraphClassIterator, MAX_ENUM_ORDER};
pub use graph6::{emit_graph6, parse_edge_list, parse_graph6};
pub use induced::{contains_induced, find_induced};
pub use patterns::{f2_patterns, PatternSet};

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("operation requires a simple graph")]
    NotSimple,
}

/// A finite undirected graph without loops. Parallel edges are stored as a
/// multiplicity; `0` means non-adjacent.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    mult: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            mult: vec![0; n * n],
            labels: None,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::Argument(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Display name of vertex `u`: its label, or the 1-based index.
    pub fn vertex_name(&self, u: usize) -> String {
        match &self.labels {
            Some(l) => l[u].clone(),
            None => (u + 1).to_string(),
        }
    }

    fn check(&self, u: usize) -> Result<(), GraphError> {
        if u >= self.n {
            Err(GraphError::VertexOutOfRange {
                vertex: u,
                order: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u32 {
        self.mult[u * self.n + v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.multiplicity(u, v) > 0
    }

    /// Adds one copy of the edge `uv`.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let m = self.multiplicity_checked(u, v)?;
        self.set_multiplicity(u, v, m + 1)
    }

    fn multiplicity_checked(&self, u: usize, v: usize) -> Result<u32, GraphError> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.multiplicity(u, v))
    }

    pub fn set_multiplicity(&mut self, u: usize, v: usize, m: u32) -> Result<(), GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(GraphError::Argument(format!("loop at vertex {u}")));
        }
        self.mult[u * self.n + v] = m;
        self.mult[v * self.n + u] = m;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.set_multiplicity(u, v, 0)
    }

    pub fn is_simple(&self) -> bool {
        self.mult.iter().all(|&m| m <= 1)
    }

    pub fn require_simple(&self) -> Result<(), GraphError> {
        if self.is_simple() {
            Ok(())
        } else {
            Err(GraphError::NotSimple)
        }
    }

    /// Degree counted with multiplicity.
    pub fn degree(&self, u: usize) -> u32 {
        self.mult[u * self.n..(u + 1) * self.n].iter().sum()
    }

    pub fn degrees(&self) -> Vec<u32> {
        (0..self.n).map(|u| self.degree(u)).collect()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.has_edge(u, v))
    }

    /// Edges `(u, v, multiplicity)` with `u < v`, in row-major order.
    pub fn edges(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                let m = self.multiplicity(u, v);
                if m > 0 {
                    out.push((u, v, m));
                }
            }
        }
        out
    }

    /// Number of edges counted with multiplicity.
    pub fn edge_count(&self) -> usize {
        self.edges().iter().map(|e| e.2 as usize).sum()
    }

    /// Neighbourhood bitmasks; only meaningful for `n <= 64`.
    pub fn adjacency_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "bitmask view needs at most 64 vertices");
        (0..self.n)
            .map(|u| self.neighbors(u).fold(0u64, |acc, v| acc | (1 << v)))
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        (0..self.n).all(|u| (0..self.n).all(|v| u == v || self.multiplicity(u, v) == 1))
    }

    pub fn complement(&self) -> Result<Graph, GraphError> {
        self.require_simple()?;
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.set_multiplicity(u, v, 1)?;
                }
            }
        }
        g.labels = self.labels.clone();
        Ok(g)
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex.
    pub fn component_vertex_sets(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = vec![s];
            while let Some(u) = stack.pop() {
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn connected_components(&self) -> Vec<Graph> {
        self.component_vertex_sets().iter().map(|c| self.induced(c)).collect()
    }

    /// The null graph is not connected; `K_1` is.
    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.component_vertex_sets().len() == 1
    }

    /// `G[U]`, with vertices renumbered in the order given.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let k = vertices.len();
        let mut g = Graph::new(k);
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate() {
                if a != b {
                    g.mult[a * k + b] = self.multiplicity(u, v);
                }
            }
        }
        if let Some(l) = &self.labels {
            g.labels = Some(vertices.iter().map(|&u| l[u].clone()).collect());
        }
        g
    }

    pub fn delete_vertex(&self, v: usize) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced(&keep)
    }

    /// Relabels so that old vertex `u` becomes `perm[u]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            for v in 0..self.n {
                g.mult[perm[u] * self.n + perm[v]] = self.multiplicity(u, v);
            }
        }
        g
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v, m)) in self.edges().into_iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if m == 1 {
                write!(f, "{u}-{v}")?;
            } else {
                write!(f, "{u}-{v}x{m}")?;
            }
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    #[test]
    fn complement_is_involution() {
        let g = path(5);
        assert_eq!(g.complement().unwrap().complement().unwrap(), g);
    }

    #[test]
    fn complement_rejects_multigraph() {
        let mut g = Graph::new(2);
        g.add_edge(0, 1).unwrap();
        g.add_edge(0, 1).unwrap();
        assert_eq!(g.complement(), Err(GraphError::NotSimple));
    }

    #[test]
    fn complement_of_tripartite_is_cliques() {
        let g = complete_multipartite(&[3, 2, 1]);
        let c = g.complement().unwrap();
        let comps = c.connected_components();
        let mut sizes: Vec<usize> = comps.iter().map(|h| h.order()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert!(comps.iter().all(|h| h.is_complete()));
    }

    #[test]
    fn disjoint_union_is_disconnected() {
        let g = disjoint_union(&complete(2), &complete(2));
        assert!(!g.is_connected());
        assert_eq!(g.connected_components().len(), 2);
    }

    #[test]
    fn loops_are_rejected() {
        let mut g = Graph::new(3);
        assert!(g.add_edge(1, 1).is_err());
        assert!(matches!(
            g.add_edge(0, 3),
            Err(GraphError::VertexOutOfRange { vertex: 3, order: 3 })
        ));
    }

    #[test]
    fn degree_counts_multiplicity() {
        let mut g = Graph::new(3);
        g.add_edge(0, 1).unwrap();
        g.add_edge(0, 1).unwrap();
        g.add_edge(0, 2).unwrap();
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.edge_count(), 3);
        assert!(!g.is_simple());
    }
}
