use std::collections::HashMap;
use std::sync::OnceLock;

use super::{canonical_code, CanonicalCode, Graph, GraphError};

pub const MAX_ENUM_ORDER: usize = 8;

static LEVELS: [OnceLock<Vec<(CanonicalCode, Graph)>>; MAX_ENUM_ORDER + 1] =
    [const { OnceLock::new() }; MAX_ENUM_ORDER + 1];

/// All graphs on `n` vertices up to isomorphism, ordered by canonical code.
/// Built by adding a vertex with every possible neighbourhood to each class
/// on `n - 1` vertices and deduplicating canonically.
fn level(n: usize) -> &'static [(CanonicalCode, Graph)] {
    LEVELS[n].get_or_init(|| {
        if n <= 1 {
            let g = Graph::new(n);
            return vec![(canonical_code(&g), g)];
        }
        let mut seen: HashMap<CanonicalCode, Graph> = HashMap::new();
        for (_, base) in level(n - 1) {
            for subset in 0u32..(1 << (n - 1)) {
                let mut g = Graph::new(n);
                for (u, v, _) in base.edges() {
                    g.set_multiplicity(u, v, 1).unwrap();
                }
                for u in 0..n - 1 {
                    if subset >> u & 1 == 1 {
                        g.set_multiplicity(u, n - 1, 1).unwrap();
                    }
                }
                seen.entry(canonical_code(&g)).or_insert(g);
            }
        }
        let mut out: Vec<(CanonicalCode, Graph)> = seen.into_iter().collect();
        out.sort_by_key(|(c, _)| *c);
        out
    })
}

fn check_order(n: usize) -> Result<(), GraphError> {
    if !(1..=MAX_ENUM_ORDER).contains(&n) {
        return Err(GraphError::Argument(format!(
            "enumeration supports 1..={MAX_ENUM_ORDER} vertices, got {n}"
        )));
    }
    Ok(())
}

/// One representative per isomorphism class of connected simple graphs on
/// a fixed number of vertices.
#[derive(Debug, Clone)]
pub struct GraphClassIterator {
    n: usize,
    classes: std::slice::Iter<'static, (CanonicalCode, Graph)>,
    connected_only: bool,
}

impl GraphClassIterator {
    pub fn order(&self) -> usize {
        self.n
    }
}

impl Iterator for GraphClassIterator {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        for (_, g) in self.classes.by_ref() {
            if !self.connected_only || g.is_connected() {
                return Some(g.clone());
            }
        }
        None
    }
}

pub fn enumerate_connected(n: usize) -> Result<GraphClassIterator, GraphError> {
    check_order(n)?;
    Ok(GraphClassIterator {
        n,
        classes: level(n).iter(),
        connected_only: true,
    })
}

/// Every isomorphism class on `n` vertices, connected or not.
pub fn enumerate_all(n: usize) -> Result<GraphClassIterator, GraphError> {
    check_order(n)?;
    Ok(GraphClassIterator {
        n,
        classes: level(n).iter(),
        connected_only: false,
    })
}
