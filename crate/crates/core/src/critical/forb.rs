use std::collections::HashMap;
use std::sync::Mutex;

use rayon::prelude::*;

use super::{gamma, CriticalError};
use crate::graph::{canonical_code, enumerate_connected, CanonicalCode, Graph, MAX_CANON_ORDER};

/// `γ` memoised by canonical form, shareable across threads.
#[derive(Default)]
pub struct GammaCache {
    map: Mutex<HashMap<CanonicalCode, usize>>,
}

impl GammaCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn gamma(&self, g: &Graph) -> Result<usize, CriticalError> {
        if g.order() > MAX_CANON_ORDER || !g.is_simple() {
            return gamma(g);
        }
        let code = canonical_code(g);
        if let Some(&v) = self.map.lock().unwrap().get(&code) {
            return Ok(v);
        }
        let v = gamma(g)?;
        self.map.lock().unwrap().insert(code, v);
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.map.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Connected graphs on at most `n_max` vertices (one per isomorphism class)
/// with `γ = k + 1` whose every vertex-deleted subgraph has `γ <= k`, i.e.
/// the minimal forbidden induced subgraphs for `γ <= k` up to that order.
/// Candidates are checked in parallel on the current rayon pool.
pub fn forb_search(k: usize, n_max: usize, cache: &GammaCache) -> Result<Vec<Graph>, CriticalError> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        let candidates: Vec<Graph> = enumerate_connected(n)
            .map_err(|e| CriticalError::Inconsistent(e.to_string()))?
            .collect();
        let hits: Vec<Option<Graph>> = candidates
            .into_par_iter()
            .map(|g| -> Result<Option<Graph>, CriticalError> {
                if cache.gamma(&g)? != k + 1 {
                    return Ok(None);
                }
                for v in 0..g.order() {
                    if cache.gamma(&g.delete_vertex(v))? > k {
                        return Ok(None);
                    }
                }
                Ok(Some(g))
            })
            .collect::<Result<_, _>>()?;
        out.extend(hits.into_iter().flatten());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::graph::is_isomorphic;

    #[test]
    fn small_forbidden_sets() {
        let cache = GammaCache::new();
        let f0 = forb_search(0, 4, &cache).unwrap();
        assert_eq!(f0.len(), 1);
        assert!(is_isomorphic(&f0[0], &path(2)));
        let f1 = forb_search(1, 5, &cache).unwrap();
        assert_eq!(f1.len(), 1);
        assert!(is_isomorphic(&f1[0], &path(3)));
    }
}
