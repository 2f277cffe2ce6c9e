use super::Graph;

/// A named list of forbidden induced subgraphs.
#[derive(Debug, Clone)]
pub struct PatternSet {
    patterns: Vec<(String, Graph)>,
}

impl PatternSet {
    pub fn new(patterns: Vec<(String, Graph)>) -> Self {
        PatternSet { patterns }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Graph)> {
        self.patterns.iter().map(|(n, g)| (n.as_str(), g))
    }

    pub fn get(&self, name: &str) -> Option<&Graph> {
        self.patterns.iter().find(|(n, _)| n == name).map(|(_, g)| g)
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// Name of the first pattern occurring as an induced subgraph of `g`.
    pub fn first_hit(&self, g: &Graph) -> Option<&str> {
        self.iter().find(|(_, h)| super::contains_induced(g, h)).map(|(n, _)| n)
    }
}

fn from_one_based(n: usize, edges: &[(usize, usize)]) -> Graph {
    let e: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
    Graph::from_edges(n, &e).unwrap()
}

/// The five minimal graphs with exactly three trivial critical ideals:
/// `P4`, `K5∖S2`, `K6∖M2`, `Gaa`, `Gab`. Edge sets follow the vertex
/// numbering of their generalized Laplacians (1-based in the tables below).
pub fn f2_patterns() -> PatternSet {
    PatternSet::new(vec![
        ("P4".into(), from_one_based(4, &[(1, 2), (2, 3), (3, 4)])),
        (
            "K5∖S2".into(),
            from_one_based(5, &[(1, 3), (1, 4), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)]),
        ),
        (
            "K6∖M2".into(),
            from_one_based(
                6,
                &[
                    (1, 3),
                    (1, 4),
                    (1, 5),
                    (1, 6),
                    (2, 3),
                    (2, 4),
                    (2, 5),
                    (2, 6),
                    (3, 4),
                    (3, 5),
                    (4, 5),
                    (4, 6),
                    (5, 6),
                ],
            ),
        ),
        (
            "Gaa".into(),
            from_one_based(5, &[(1, 4), (2, 3), (2, 4), (3, 4), (4, 5)]),
        ),
        (
            "Gab".into(),
            from_one_based(5, &[(1, 2), (1, 4), (2, 3), (2, 4), (3, 4), (4, 5)]),
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::graph::is_isomorphic;

    #[test]
    fn sizes_and_degrees() {
        let p = f2_patterns();
        let orders: Vec<usize> = p.iter().map(|(_, g)| g.order()).collect();
        assert_eq!(orders, vec![4, 5, 6, 5, 5]);
        assert_eq!(p.get("P4").unwrap().degrees(), vec![1, 2, 2, 1]);
        assert_eq!(p.get("Gaa").unwrap().degrees(), vec![1, 2, 2, 4, 1]);
        assert_eq!(p.get("K6∖M2").unwrap().edge_count(), 13);
        assert!(p.iter().all(|(_, g)| g.is_connected() && g.is_simple()));
    }

    #[test]
    fn match_constructions() {
        let p = f2_patterns();
        assert_eq!(*p.get("P4").unwrap(), path(4));
        assert_eq!(
            *p.get("K6∖M2").unwrap(),
            matching_removed(6, 2).unwrap().permuted(&[0, 1, 2, 5, 3, 4])
        );
        assert!(is_isomorphic(p.get("K6∖M2").unwrap(), &matching_removed(6, 2).unwrap()));
        // K5 minus the two edges of a 2-star
        let mut k5s2 = complete(5);
        k5s2.remove_edge(0, 1).unwrap();
        k5s2.remove_edge(0, 4).unwrap();
        assert_eq!(*p.get("K5∖S2").unwrap(), k5s2);
        // Gab is a diamond with a pendant on a degree-3 vertex, as drawn
        let drawn = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4)]).unwrap();
        assert!(is_isomorphic(p.get("Gab").unwrap(), &drawn));
    }
}
