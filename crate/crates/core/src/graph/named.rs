use super::{Graph, Label};

pub(super) fn cycle(n: usize) -> Graph {
    Graph::from_fn(index_labels(n), |u, v| {
        n >= 3 && (v == u + 1 || (u == 0 && v == n - 1))
    })
}

pub(super) fn path(n: usize) -> Graph {
    Graph::from_fn(index_labels(n), |u, v| v == u + 1)
}

pub(super) fn complete_bipartite(m: usize, n: usize) -> Graph {
    Graph::from_fn(index_labels(m + n), |u, v| (u < m) != (v < m))
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i ~ i+5`.
pub(super) fn petersen() -> Graph {
    Graph::from_fn(index_labels(10), |u, v| {
        if v < 5 {
            (v + 5 - u) % 5 == 1 || (u + 5 - v) % 5 == 1
        } else if u >= 5 {
            let (a, b) = (u - 5, v - 5);
            (b + 5 - a) % 5 == 2 || (a + 5 - b) % 5 == 2
        } else {
            v == u + 5
        }
    })
}

fn index_labels(n: usize) -> Vec<Label> {
    (0..n).map(Label::Index).collect()
}
