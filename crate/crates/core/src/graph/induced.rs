use super::Graph;

struct Matcher<'a> {
    g: &'a [u64],
    h: &'a [u64],
    g_deg: Vec<u32>,
    h_deg: Vec<u32>,
    h_order: Vec<usize>,
    image: Vec<usize>,
    used: u64,
}

impl Matcher<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.h_order.len() {
            return true;
        }
        let hv = self.h_order[depth];
        for gv in 0..self.g.len() {
            if self.used >> gv & 1 == 1 || self.g_deg[gv] < self.h_deg[hv] {
                continue;
            }
            let consistent = self.h_order[..depth].iter().all(|&hw| {
                let gw = self.image[hw];
                (self.h[hv] >> hw & 1) == (self.g[gv] >> gw & 1)
            });
            if !consistent {
                continue;
            }
            self.image[hv] = gv;
            self.used |= 1 << gv;
            if self.extend(depth + 1) {
                return true;
            }
            self.used &= !(1 << gv);
        }
        false
    }
}

/// Visit order for the pattern: breadth-first from a maximum-degree vertex of
/// each component, so every vertex after the first in a component has an
/// already-placed neighbour constraining it.
fn pattern_order(h: &[u64]) -> Vec<usize> {
    let n = h.len();
    let mut order = Vec::with_capacity(n);
    let mut placed = 0u64;
    while order.len() < n {
        let start = (0..n)
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| (h[v].count_ones(), std::cmp::Reverse(v)))
            .unwrap();
        placed |= 1 << start;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for v in 0..n {
                if h[u] >> v & 1 == 1 && placed >> v & 1 == 0 {
                    placed |= 1 << v;
                    queue.push_back(v);
                }
            }
        }
    }
    order
}

/// An induced copy of `h` in `g`: `result[v]` is the vertex of `g` playing
/// pattern vertex `v`. Both graphs must be simple with at most 64 vertices.
pub fn find_induced(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    assert!(g.is_simple() && h.is_simple(), "induced search needs simple graphs");
    if h.order() > g.order() {
        return None;
    }
    let gm = g.adjacency_masks();
    let hm = h.adjacency_masks();
    let mut m = Matcher {
        g_deg: gm.iter().map(|x| x.count_ones()).collect(),
        h_deg: hm.iter().map(|x| x.count_ones()).collect(),
        h_order: pattern_order(&hm),
        image: vec![usize::MAX; h.order()],
        used: 0,
        g: &gm,
        h: &hm,
    };
    if m.extend(0) {
        Some(m.image)
    } else {
        None
    }
}

pub fn contains_induced(g: &Graph, h: &Graph) -> bool {
    find_induced(g, h).is_some()
}
