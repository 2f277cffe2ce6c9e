use super::{find_induced, Graph};

/// Largest order for which `canonical_code` fits its 64-bit code.
pub const MAX_CANON_ORDER: usize = 11;

/// Isomorphism-invariant code of a simple graph: the upper-triangle
/// adjacency bits, in graph6 column order, of the relabelling that
/// maximises them among relabellings respecting the refined degree
/// partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    pub order: u8,
    pub bits: u64,
}

fn refine(masks: &[u64]) -> Vec<Vec<usize>> {
    let n = masks.len();
    let mut color: Vec<usize> = masks.iter().map(|m| m.count_ones() as usize).collect();
    let mut ncolors = {
        let mut c = color.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    };
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|u| {
                let mut nb: Vec<usize> = (0..n).filter(|&v| masks[u] >> v & 1 == 1).map(|v| color[v]).collect();
                nb.sort_unstable();
                (color[u], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        color = sigs.iter().map(|s| distinct.binary_search(s).unwrap()).collect();
        if distinct.len() == ncolors {
            break;
        }
        ncolors = distinct.len();
    }
    let mut cells = vec![Vec::new(); ncolors];
    for u in 0..n {
        cells[color[u]].push(u);
    }
    cells
}

struct Search<'a> {
    masks: &'a [u64],
    cell_of_pos: Vec<usize>,
    cells: Vec<Vec<usize>>,
    total_bits: u32,
    order: Vec<usize>,
    used: u64,
    best: Option<u64>,
}

impl Search<'_> {
    fn run(&mut self, pos: usize, prefix: u64) {
        let n = self.masks.len();
        if pos == n {
            if self.best.is_none_or(|b| prefix > b) {
                self.best = Some(prefix);
            }
            return;
        }
        let cell = self.cell_of_pos[pos];
        for idx in 0..self.cells[cell].len() {
            let v = self.cells[cell][idx];
            if self.used >> v & 1 == 1 {
                continue;
            }
            let mut code = prefix;
            for i in 0..pos {
                code = (code << 1) | (self.masks[self.order[i]] >> v & 1);
            }
            if let Some(b) = self.best {
                let len = (pos * (pos + 1) / 2) as u32;
                let shift = self.total_bits - len;
                let best_prefix = if shift >= 64 { 0 } else { b >> shift };
                if code < best_prefix {
                    continue;
                }
            }
            self.order.push(v);
            self.used |= 1 << v;
            self.run(pos + 1, code);
            self.used &= !(1 << v);
            self.order.pop();
        }
    }
}

/// Canonical code of a simple graph with at most `MAX_CANON_ORDER` vertices.
pub fn canonical_code(g: &Graph) -> CanonicalCode {
    let n = g.order();
    assert!(
        n <= MAX_CANON_ORDER,
        "canonical_code supports at most {MAX_CANON_ORDER} vertices"
    );
    assert!(g.is_simple(), "canonical_code needs a simple graph");
    let masks = g.adjacency_masks();
    let cells = refine(&masks);
    let mut cell_of_pos = Vec::with_capacity(n);
    for (c, cell) in cells.iter().enumerate() {
        cell_of_pos.extend(std::iter::repeat_n(c, cell.len()));
    }
    let mut s = Search {
        masks: &masks,
        cell_of_pos,
        cells,
        total_bits: (n * n.saturating_sub(1) / 2) as u32,
        order: Vec::with_capacity(n),
        used: 0,
        best: None,
    };
    s.run(0, 0);
    CanonicalCode {
        order: n as u8,
        bits: s.best.unwrap_or(0),
    }
}

/// Isomorphism test for simple graphs.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut dg = g.degrees();
    let mut dh = h.degrees();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return false;
    }
    if g.order() <= MAX_CANON_ORDER {
        canonical_code(g) == canonical_code(h)
    } else {
        find_induced(g, h).is_some()
    }
}
