//! Graph products and joins. Product vertices are ordered row-major:
//! `(g, h)` sits at index `g * |V(H)| + h` and carries `Label::Pair`.

use super::{Graph, Label};
use crate::error::{Error, Result};

fn pair_labels(g: &Graph, h: &Graph) -> Vec<Label> {
    let mut labels = Vec::with_capacity(g.order() * h.order());
    for a in g.labels() {
        for b in h.labels() {
            labels.push(Label::pair(a.clone(), b.clone()));
        }
    }
    labels
}

fn tagged_labels(g: &Graph, h: &Graph) -> Vec<Label> {
    g.labels()
        .iter()
        .cloned()
        .map(Label::left)
        .chain(h.labels().iter().cloned().map(Label::right))
        .collect()
}

/// `G ⊔ H`; left vertices first.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let n = g.order();
    Graph::from_fn(tagged_labels(g, h), |u, v| {
        if v < n {
            g.has_edge(u, v)
        } else if u >= n {
            h.has_edge(u - n, v - n)
        } else {
            false
        }
    })
}

/// `G + H`: the disjoint union plus every cross edge.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let n = g.order();
    Graph::from_fn(tagged_labels(g, h), |u, v| {
        if v < n {
            g.has_edge(u, v)
        } else if u >= n {
            h.has_edge(u - n, v - n)
        } else {
            true
        }
    })
}

/// `G ⊠ H`: distinct pairs that are adjacent-or-equal in both coordinates.
pub fn strong_product(g: &Graph, h: &Graph) -> Graph {
    let m = h.order();
    Graph::from_fn(pair_labels(g, h), |u, v| {
        g.adjacent_or_equal(u / m, v / m) && h.adjacent_or_equal(u % m, v % m)
    })
}

/// `G * H`, the complement of `Ḡ ⊠ H̄`: adjacent in at least one coordinate.
pub fn costrong_product(g: &Graph, h: &Graph) -> Graph {
    let m = h.order();
    Graph::from_fn(pair_labels(g, h), |u, v| {
        g.has_edge(u / m, v / m) || h.has_edge(u % m, v % m)
    })
}

/// `G ∘ H`: adjacent in `G`, or equal in `G` and adjacent in `H`.
pub fn lexicographic_product(g: &Graph, h: &Graph) -> Graph {
    let m = h.order();
    Graph::from_fn(pair_labels(g, h), |u, v| {
        let (a, b) = (u / m, v / m);
        g.has_edge(a, b) || (a == b && h.has_edge(u % m, v % m))
    })
}

/// `G^{⊠n}`; `n = 0` gives `K_1`.
pub fn strong_power(g: &Graph, n: usize) -> Graph {
    match n {
        0 => Graph::empty(1),
        _ => {
            let mut acc = g.clone();
            for _ in 1..n {
                acc = strong_product(&acc, g);
            }
            acc
        }
    }
}

/// The `G`-join `G ∘ (H_v)`: vertex `(v, h)` for `h ∈ V(H_v)`, adjacent when
/// the outer vertices are adjacent in `G`, or they coincide and the inner
/// ones are adjacent in `H_v`.
pub fn g_join(g: &Graph, parts: &[Graph]) -> Result<Graph> {
    if parts.len() != g.order() {
        return Err(Error::MissingPart {
            expected: g.order(),
            got: parts.len(),
        });
    }
    let mut owner = Vec::new();
    let mut labels = Vec::new();
    for (v, part) in parts.iter().enumerate() {
        for (i, l) in part.labels().iter().enumerate() {
            owner.push((v, i));
            labels.push(Label::pair(g.label(v).clone(), l.clone()));
        }
    }
    Ok(Graph::from_fn(labels, |x, y| {
        let ((v, i), (w, j)) = (owner[x], owner[y]);
        g.has_edge(v, w) || (v == w && parts[v].has_edge(i, j))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_of_two_points_is_edgeless_pair() {
        let g = disjoint_union(&Graph::complete(1), &Graph::complete(1));
        assert_eq!(g.order(), 2);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn join_of_two_cocliques_is_c4() {
        let g = join(&Graph::empty(2), &Graph::empty(2)).with_index_labels();
        // vertices 0,1 | 2,3 ; C_4 = 0-2-1-3-0
        assert_eq!(g.edges(), vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert!(super::super::is_isomorphic(&g, &Graph::cycle(4)).unwrap());
    }

    #[test]
    fn join_edge_count() {
        let g = join(&Graph::cycle(5), &Graph::complete(3));
        assert_eq!(g.order(), 8);
        assert_eq!(g.edge_count(), 5 + 3 + 15);
    }

    #[test]
    fn strong_product_units() {
        let c5 = Graph::cycle(5);
        let p = strong_product(&Graph::complete(1), &c5);
        assert_eq!(p.with_index_labels(), c5);
        let e = strong_product(&Graph::empty(2), &Graph::empty(3));
        assert_eq!(e.edge_count(), 0);
        assert_eq!(e.order(), 6);
    }

    #[test]
    fn costrong_matches_definition() {
        let g = Graph::path(3);
        let h = Graph::cycle(4);
        let literal = strong_product(&g.complement(), &h.complement()).complement();
        assert_eq!(costrong_product(&g, &h), literal);
    }

    #[test]
    fn lexicographic_complement_identity_on_c5() {
        let c5 = Graph::cycle(5);
        let lhs = lexicographic_product(&c5, &c5).complement();
        let rhs = lexicographic_product(&c5.complement(), &c5.complement());
        assert_eq!(lhs.order(), 25);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_chain_on_c5_p3() {
        let (g, h) = (Graph::cycle(5), Graph::path(3));
        let s = strong_product(&g, &h);
        let l = lexicographic_product(&g, &h);
        let c = costrong_product(&g, &h);
        assert!(s.is_edge_subset_of(&l));
        assert!(l.is_edge_subset_of(&c));
    }

    #[test]
    fn g_join_specializations() {
        let h1 = Graph::cycle(4);
        let h2 = Graph::path(3);
        let parts = [h1.clone(), h2.clone()];
        let u = g_join(&Graph::empty(2), &parts).unwrap();
        assert_eq!(u.with_index_labels(), disjoint_union(&h1, &h2).with_index_labels());
        let j = g_join(&Graph::complete(2), &parts).unwrap();
        assert_eq!(j.with_index_labels(), join(&h1, &h2).with_index_labels());
    }

    #[test]
    fn g_join_substitution_into_path() {
        // K_2 substituted into the middle vertex of 0-1-2
        let parts = [Graph::complete(1), Graph::complete(2), Graph::complete(1)];
        let g = g_join(&Graph::path(3), &parts).unwrap();
        // vertices: (0,0)=0, (1,0)=1, (1,1)=2, (2,0)=3
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn g_join_constant_family_is_lexicographic() {
        let g = Graph::cycle(5);
        let h = Graph::path(3);
        let parts = vec![h.clone(); 5];
        assert_eq!(g_join(&g, &parts).unwrap(), lexicographic_product(&g, &h));
    }

    #[test]
    fn g_join_missing_part() {
        assert_eq!(
            g_join(&Graph::cycle(5), &[Graph::complete(1)]),
            Err(Error::MissingPart { expected: 5, got: 1 })
        );
    }
}
