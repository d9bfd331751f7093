//! The deterministic graph corpus: every graph on at most five vertices up
//! to isomorphism, plus a few named graphs.

use std::collections::BTreeSet;

use crate::graph::{to_graph6, Graph};

/// A corpus graph with a stable identifier (its graph6 string, or a name).
#[derive(Clone, Debug)]
pub struct Entry {
    pub id: String,
    pub graph: Graph,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    /// All non-isomorphic graphs on `0..=5` vertices, by order then edge count.
    pub small: Vec<Entry>,
    /// `C5`, `P4`, the Petersen graph and `K3,3`.
    pub named: Vec<Entry>,
}

impl Corpus {
    pub fn standard() -> Self {
        Corpus {
            small: small_graphs(5)
                .into_iter()
                .map(|g| Entry {
                    id: format!("g6:{}", to_graph6(&g)),
                    graph: g,
                })
                .collect(),
            named: [
                ("C5", Graph::cycle(5)),
                ("P4", Graph::path(4)),
                ("Petersen", Graph::petersen()),
                ("K3,3", Graph::complete_bipartite(3, 3)),
            ]
            .into_iter()
            .map(|(id, graph)| Entry {
                id: id.to_string(),
                graph,
            })
            .collect(),
        }
    }

    pub fn all(&self) -> impl Iterator<Item = &Entry> {
        self.small.iter().chain(&self.named)
    }
}

fn edge_mask(g: &Graph, perm: &[usize]) -> u32 {
    let n = g.order();
    let mut bit = 0;
    let mut mask = 0;
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(perm[i], perm[j]) {
                mask |= 1 << bit;
            }
            bit += 1;
        }
    }
    mask
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative per isomorphism class of graphs on at most `max_order`
/// vertices (`max_order ≤ 6`), ordered by vertex count, edge count, and then
/// canonical form.
pub fn small_graphs(max_order: usize) -> Vec<Graph> {
    assert!(max_order <= 6, "exhaustive enumeration limited to 6 vertices");
    let mut out = Vec::new();
    for n in 0..=max_order {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let perms = permutations(n);
        let mut seen = BTreeSet::new();
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(n, &edges).expect("valid edges");
            let canonical = perms.iter().map(|p| edge_mask(&g, p)).max().unwrap_or(0);
            if seen.insert((edges.len(), canonical)) {
                out.push((n, edges.len(), canonical, g));
            }
        }
    }
    out.sort_by_key(|(n, e, c, _)| (*n, *e, *c));
    out.into_iter().map(|(.., g)| g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_per_order() {
        let graphs = small_graphs(5);
        let count = |n| graphs.iter().filter(|g| g.order() == n).count();
        assert_eq!([0, 1, 2, 3, 4, 5].map(count), [1, 1, 2, 4, 11, 34]);
        assert_eq!(graphs.len(), 53);
    }

    #[test]
    fn representatives_are_pairwise_non_isomorphic() {
        let graphs = small_graphs(4);
        for (i, g) in graphs.iter().enumerate() {
            for h in &graphs[i + 1..] {
                assert!(!crate::graph::is_isomorphic(g, h).unwrap());
            }
        }
    }
}
