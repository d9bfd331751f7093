//! Finite simple undirected graphs with dense bitset adjacency.
//!
//! Graphs are values: every operation returns a new graph. Vertex labels are
//! structured so that products and type graphs keep enough information to
//! address vertices by the tuple or sequence they stand for.

mod homomorphism;
mod io;
mod label;
mod named;
mod products;
mod small;

pub use homomorphism::{
    exists_cohomomorphism, exists_cohomomorphism_with_guard, is_cohomomorphism, transitive_cover,
    transitive_cover_size, AutomorphismSampler, CoordinatePermutations, ExplicitGroup,
    ProductCoordinatePermutations, TransitiveCover, VertexMap,
};
pub use io::{from_graph6, from_json, to_graph6, to_json, GraphJson};
pub use label::Label;
pub use products::{
    costrong_product, disjoint_union, g_join, join, lexicographic_product, strong_power,
    strong_product,
};
pub use small::{chromatic_number_small, clique_number_small, is_isomorphic, is_perfect};

use crate::error::{Error, Result};

/// Finite simple undirected graph on an ordered, labeled vertex set.
///
/// Equality is label-sensitive: two graphs are equal when they have the same
/// labels in the same order and the same edges.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    labels: Vec<Label>,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices labeled `0..n`.
    pub fn empty(n: usize) -> Self {
        Self::with_labels((0..n).map(Label::Index).collect())
    }

    /// Edgeless graph on the given labels.
    pub fn with_labels(labels: Vec<Label>) -> Self {
        let words = words_for(labels.len());
        Graph {
            rows: vec![0; words * labels.len()],
            labels,
            words,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::Domain(format!("loop at vertex {u}")));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    /// Builds a graph from labels and a symmetric adjacency predicate.
    pub fn from_fn(labels: Vec<Label>, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::with_labels(labels);
        let n = g.order();
        for u in 0..n {
            for v in (u + 1)..n {
                if adjacent(u, v) {
                    g.set_edge(u, v, true);
                }
            }
        }
        g
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &Label {
        &self.labels[v]
    }

    /// Replaces the labels, keeping the edges.
    pub fn relabeled(&self, labels: Vec<Label>) -> Result<Self> {
        if labels.len() != self.order() {
            return Err(Error::Shape(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.order()
            )));
        }
        Ok(Graph {
            labels,
            words: self.words,
            rows: self.rows.clone(),
        })
    }

    /// Same edges with labels `0..n`.
    pub fn with_index_labels(&self) -> Self {
        Graph {
            labels: (0..self.order()).map(Label::Index).collect(),
            words: self.words,
            rows: self.rows.clone(),
        }
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// `u == v` or `{u, v}` is an edge.
    #[inline]
    pub fn adjacent_or_equal(&self, u: usize, v: usize) -> bool {
        u == v || self.has_edge(u, v)
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        debug_assert_ne!(u, v);
        let (w, b) = (self.words, 1u64 << (v % 64));
        let (w2, b2) = (self.words, 1u64 << (u % 64));
        if present {
            self.rows[u * w + v / 64] |= b;
            self.rows[v * w2 + u / 64] |= b2;
        } else {
            self.rows[u * w + v / 64] &= !b;
            self.rows[v * w2 + u / 64] &= !b2;
        }
    }

    /// Adjacency row of `v` as bitset words.
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.order()).filter(move |&u| self.has_edge(v, u))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.order();
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..n {
            for v in (u + 1)..n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Unordered pairs of distinct vertices that are not edges.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let n = self.order();
        let mut out = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn complement(&self) -> Self {
        Graph::from_fn(self.labels.clone(), |u, v| !self.has_edge(u, v))
    }

    /// `G[S]` with the labels of `S`, in the order given.
    pub fn induced_subgraph(&self, subset: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.order()];
        for &v in subset {
            self.check_vertex(v)?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::DuplicateVertex(v));
            }
        }
        let labels = subset.iter().map(|&v| self.labels[v].clone()).collect();
        Ok(Graph::from_fn(labels, |i, j| {
            self.has_edge(subset[i], subset[j])
        }))
    }

    /// Edge-wise intersection of two graphs on the same vertex set.
    pub fn intersection(&self, other: &Graph) -> Result<Self> {
        self.same_vertex_set(other)?;
        Ok(Graph::from_fn(self.labels.clone(), |u, v| {
            self.has_edge(u, v) && other.has_edge(u, v)
        }))
    }

    /// Edge-wise union of two graphs on the same vertex set.
    pub fn union_edges(&self, other: &Graph) -> Result<Self> {
        self.same_vertex_set(other)?;
        Ok(Graph::from_fn(self.labels.clone(), |u, v| {
            self.has_edge(u, v) || other.has_edge(u, v)
        }))
    }

    /// `E(self) ⊆ E(other)` on identical vertex sets.
    pub fn is_edge_subset_of(&self, other: &Graph) -> bool {
        self.labels == other.labels
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(a, b)| a & !b == 0)
    }

    /// Applies a vertex permutation: vertex `v` moves to position `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.order();
        if perm.len() != n {
            return Err(Error::Shape(format!("permutation of length {} for {n} vertices", perm.len())));
        }
        let mut inverse = vec![usize::MAX; n];
        for (v, &p) in perm.iter().enumerate() {
            self.check_vertex(p)?;
            if inverse[p] != usize::MAX {
                return Err(Error::DuplicateVertex(p));
            }
            inverse[p] = v;
        }
        let labels = inverse.iter().map(|&v| self.labels[v].clone()).collect();
        Ok(Graph::from_fn(labels, |i, j| self.has_edge(inverse[i], inverse[j])))
    }

    /// Whether `perm` maps edges to edges and non-edges to non-edges.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        let n = self.order();
        if perm.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut hit[p], true) {
                return false;
            }
        }
        (0..n).all(|u| ((u + 1)..n).all(|v| self.has_edge(u, v) == self.has_edge(perm[u], perm[v])))
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            })
        }
    }

    fn same_vertex_set(&self, other: &Graph) -> Result<()> {
        if self.labels != other.labels {
            return Err(Error::Shape("graphs have different vertex sets".into()));
        }
        Ok(())
    }

    // Named families.

    pub fn complete(n: usize) -> Self {
        Graph::from_fn((0..n).map(Label::Index).collect(), |_, _| true)
    }

    pub fn cycle(n: usize) -> Self {
        named::cycle(n)
    }

    pub fn path(n: usize) -> Self {
        named::path(n)
    }

    pub fn complete_bipartite(m: usize, n: usize) -> Self {
        named::complete_bipartite(m, n)
    }

    pub fn petersen() -> Self {
        named::petersen()
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.order(), self.edges())
    }
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_of_complete_is_edgeless() {
        let k3 = Graph::complete(3);
        assert_eq!(k3.complement(), Graph::empty(3));
    }

    #[test]
    fn complement_is_involution() {
        let c5 = Graph::cycle(5);
        assert_eq!(c5.complement().complement(), c5);
    }

    #[test]
    fn c5_is_self_complementary() {
        // brute force over all 5! relabelings
        let c5 = Graph::cycle(5);
        assert!(is_isomorphic(&c5, &c5.complement()).unwrap());
    }

    #[test]
    fn induced_path_in_c5() {
        let p = Graph::cycle(5).induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!(p.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(p.labels(), &[Label::Index(0), Label::Index(1), Label::Index(2)]);
    }

    #[test]
    fn induced_subgraph_of_everything_is_identity() {
        let g = Graph::petersen();
        let all: Vec<usize> = (0..g.order()).collect();
        assert_eq!(g.induced_subgraph(&all).unwrap(), g);
    }

    #[test]
    fn induced_subgraph_rejects_bad_vertices() {
        let g = Graph::cycle(4);
        assert_eq!(
            g.induced_subgraph(&[0, 7]),
            Err(Error::VertexOutOfRange { vertex: 7, order: 4 })
        );
        assert_eq!(g.induced_subgraph(&[1, 1]), Err(Error::DuplicateVertex(1)));
    }

    #[test]
    fn wide_graph_bitsets() {
        let g = Graph::cycle(130);
        assert_eq!(g.edge_count(), 130);
        assert!(g.has_edge(129, 0));
        assert!(g.has_edge(64, 63));
        assert!(!g.has_edge(64, 62));
        assert_eq!(g.complement().edge_count(), 130 * 129 / 2 - 130);
    }

    #[test]
    fn permuting_by_automorphism_fixes_edges() {
        let c5 = Graph::cycle(5);
        let rot = [1, 2, 3, 4, 0];
        assert!(c5.is_automorphism(&rot));
        assert_eq!(c5.permuted(&rot).unwrap().edges(), c5.edges());
        assert!(!c5.is_automorphism(&[1, 0, 2, 3, 4]));
    }
}
