//! Standard graph constructions.
//!
//! Block-structured families lay their vertices out block by block, in the
//! order of the parameters' roles: `complete_multipartite(&[m, n, o])` puts
//! the `m`-part first, and `t_join_cliques(n, m, o)` uses the order
//! `K_m`-block, `T_n`-block, `K_o`-block.

use super::{Graph, GraphError};

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.set_multiplicity(u, v, 1).unwrap();
        }
    }
    g
}

/// The edgeless graph `T_n`.
pub fn trivial(n: usize) -> Graph {
    Graph::new(n)
}

pub fn path(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 1..n {
        g.set_multiplicity(u - 1, u, 1).unwrap();
    }
    g
}

pub fn cycle(n: usize) -> Graph {
    let mut g = path(n);
    if n >= 3 {
        g.set_multiplicity(0, n - 1, 1).unwrap();
    }
    g
}

/// `S_k = c(T_k)`, with the centre as the last vertex.
pub fn star(k: usize) -> Graph {
    cone(&trivial(k))
}

/// `K_n` minus the matching `{v1v2, v3v4, ..., v(2k-1)v(2k)}`.
pub fn matching_removed(n: usize, k: usize) -> Result<Graph, GraphError> {
    if n < 2 * k {
        return Err(GraphError::Argument(format!("K_{n} has no matching with {k} edges")));
    }
    let mut g = complete(n);
    for i in 0..k {
        g.remove_edge(2 * i, 2 * i + 1)?;
    }
    Ok(g)
}

/// Complete multipartite graph; empty parts are allowed.
pub fn complete_multipartite(parts: &[usize]) -> Graph {
    let n: usize = parts.iter().sum();
    let mut block = Vec::with_capacity(n);
    for (b, &p) in parts.iter().enumerate() {
        block.extend(std::iter::repeat_n(b, p));
    }
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if block[u] != block[v] {
                g.set_multiplicity(u, v, 1).unwrap();
            }
        }
    }
    g
}

/// `G + H`: the vertices of `G` come first.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let (a, b) = (g.order(), h.order());
    let mut out = Graph::new(a + b);
    for u in 0..a {
        for v in 0..a {
            if u != v {
                out.mult[u * (a + b) + v] = g.multiplicity(u, v);
            }
        }
    }
    for u in 0..b {
        for v in 0..b {
            if u != v {
                out.mult[(a + u) * (a + b) + a + v] = h.multiplicity(u, v);
            }
        }
    }
    out
}

/// `G ∨ H`: disjoint union plus every edge between the two sides.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let mut out = disjoint_union(g, h);
    let a = g.order();
    for u in 0..a {
        for v in a..a + h.order() {
            out.set_multiplicity(u, v, 1).unwrap();
        }
    }
    out
}

/// `c(G)`: `G` plus an apex adjacent to every vertex; the apex is last.
pub fn cone(g: &Graph) -> Graph {
    join(g, &trivial(1))
}

/// `T_n ∨ (K_m + K_o)`, laid out as `K_m`-block, `T_n`-block, `K_o`-block.
pub fn t_join_cliques(n: usize, m: usize, o: usize) -> Graph {
    let total = m + n + o;
    let mut g = Graph::new(total);
    let x = 0..m;
    let y = m..m + n;
    let z = m + n..total;
    for u in 0..total {
        for v in u + 1..total {
            let edge = (x.contains(&u) && x.contains(&v))
                || (z.contains(&u) && z.contains(&v))
                || y.contains(&u) != y.contains(&v);
            if edge {
                g.set_multiplicity(u, v, 1).unwrap();
            }
        }
    }
    g
}

/// The seven-vertex graph whose γ = 5 is certified only by a combination of
/// 5-minors (no single 5-minor is a unit). Vertices are `v1..v7` → `0..6`.
pub fn unit_free_corank5_example() -> Graph {
    let edges = [
        (1, 2),
        (1, 3),
        (1, 6),
        (1, 7),
        (2, 3),
        (2, 7),
        (3, 4),
        (3, 6),
        (3, 7),
        (4, 5),
        (4, 6),
        (4, 7),
        (5, 6),
        (5, 7),
        (6, 7),
    ];
    let e: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
    Graph::from_edges(7, &e).unwrap()
}
