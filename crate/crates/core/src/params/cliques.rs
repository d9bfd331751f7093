//! Exact clique, independence and coloring computations by branch and bound.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const ALPHA_GUARD: usize = 256;
pub const CHROMATIC_GUARD: usize = 40;
pub const ENUMERATION_GUARD: usize = 128;

fn guard(g: &Graph, what: &'static str, limit: usize) -> Result<()> {
    if g.order() > limit {
        return Err(Error::SizeGuard {
            what,
            size: g.order(),
            limit,
        });
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Self {
        let mut b = Self::empty(n);
        for v in 0..n {
            b.insert(v);
        }
        b
    }

    fn insert(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }

    fn remove(&mut self, v: usize) {
        self.0[v / 64] &= !(1 << (v % 64));
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn and(&self, other: &[u64]) -> Bits {
        Bits(self.0.iter().zip(other).map(|(a, b)| a & b).collect())
    }

    fn and_not(&self, other: &[u64]) -> Bits {
        Bits(self.0.iter().zip(other).map(|(a, b)| a & !b).collect())
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }
}

/// Neighborhood bitsets, sized to `n`.
fn rows(g: &Graph) -> Vec<Vec<u64>> {
    (0..g.order())
        .map(|v| {
            let mut b = Bits::empty(g.order());
            for u in g.neighbors(v) {
                b.insert(u);
            }
            b.0
        })
        .collect()
}

/// A maximum clique, by branch and bound with greedy-coloring bounds.
pub fn maximum_clique(g: &Graph) -> Result<Vec<usize>> {
    guard(g, "maximum clique", ALPHA_GUARD)?;
    let adj = rows(g);
    let mut best = Vec::new();
    let mut current = Vec::new();
    expand(&adj, &mut current, Bits::full(g.order()), &mut best);
    best.sort_unstable();
    Ok(best)
}

fn expand(adj: &[Vec<u64>], current: &mut Vec<usize>, mut p: Bits, best: &mut Vec<usize>) {
    let order = color_order(adj, &p);
    for &(v, color) in order.iter().rev() {
        if current.len() + color <= best.len() {
            return;
        }
        current.push(v);
        let next = p.and(&adj[v]);
        if next.is_empty() {
            if current.len() > best.len() {
                *best = current.clone();
            }
        } else {
            expand(adj, current, next, best);
        }
        current.pop();
        p.remove(v);
    }
}

/// Greedy sequential coloring of `p`; returns vertices in nondecreasing
/// color order with their (1-based) colors.
fn color_order(adj: &[Vec<u64>], p: &Bits) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(p.len());
    let mut uncolored = p.clone();
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut q = uncolored.clone();
        while let Some(v) = q.first() {
            q.remove(v);
            q = q.and_not(&adj[v]);
            uncolored.remove(v);
            out.push((v, color));
        }
    }
    out
}

pub fn clique_number(g: &Graph) -> Result<usize> {
    Ok(maximum_clique(g)?.len())
}

pub fn maximum_independent_set(g: &Graph) -> Result<Vec<usize>> {
    guard(g, "independence number", ALPHA_GUARD)?;
    maximum_clique(&g.complement())
}

/// `α(G)`; `0` on the empty graph.
pub fn independence_number(g: &Graph) -> Result<usize> {
    Ok(maximum_independent_set(g)?.len())
}

/// All maximal cliques (Bron–Kerbosch with pivoting), each sorted, in
/// lexicographic order. The empty graph has the single maximal clique `∅`.
pub fn maximal_cliques(g: &Graph) -> Result<Vec<Vec<usize>>> {
    guard(g, "maximal clique enumeration", ENUMERATION_GUARD)?;
    let adj = rows(g);
    let mut out = Vec::new();
    bron_kerbosch(&adj, &mut Vec::new(), Bits::full(g.order()), Bits::empty(g.order()), &mut out);
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    Ok(out)
}

fn bron_kerbosch(adj: &[Vec<u64>], r: &mut Vec<usize>, mut p: Bits, mut x: Bits, out: &mut Vec<Vec<usize>>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&u| p.and(&adj[u]).len())
        .expect("p is nonempty");
    let candidates: Vec<usize> = p.and_not(&adj[pivot]).iter().collect();
    for v in candidates {
        r.push(v);
        bron_kerbosch(adj, r, p.and(&adj[v]), x.and(&adj[v]), out);
        r.pop();
        p.remove(v);
        x.insert(v);
    }
}

pub fn maximal_independent_sets(g: &Graph) -> Result<Vec<Vec<usize>>> {
    guard(g, "maximal independent set enumeration", ENUMERATION_GUARD)?;
    maximal_cliques(&g.complement())
}

/// Exact chromatic number by DSATUR branch and bound.
pub fn chromatic_number(g: &Graph) -> Result<usize> {
    guard(g, "chromatic number", CHROMATIC_GUARD)?;
    let n = g.order();
    if n == 0 {
        return Ok(0);
    }
    let alpha = independence_number(g)?;
    let lower = clique_number(g)?.max(n.div_ceil(alpha));
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut state = Dsatur {
        adj: &adj,
        colors: vec![usize::MAX; n],
        saturation: vec![0u64; n],
        sat_count: vec![vec![0u8; n + 1]; n],
        best: n + 1,
        lower,
    };
    // the first complete branch is the greedy DSATUR coloring
    state.search(0);
    Ok(state.best)
}

struct Dsatur<'a> {
    adj: &'a [Vec<usize>],
    colors: Vec<usize>,
    saturation: Vec<u64>,
    sat_count: Vec<Vec<u8>>,
    best: usize,
    lower: usize,
}

impl Dsatur<'_> {
    fn pick(&self) -> Option<usize> {
        (0..self.colors.len())
            .filter(|&v| self.colors[v] == usize::MAX)
            .max_by_key(|&v| {
                let uncolored_degree = self.adj[v]
                    .iter()
                    .filter(|&&u| self.colors[u] == usize::MAX)
                    .count();
                (self.saturation[v].count_ones(), uncolored_degree, usize::MAX - v)
            })
    }

    fn set(&mut self, v: usize, c: usize, on: bool) {
        self.colors[v] = if on { c } else { usize::MAX };
        for i in 0..self.adj[v].len() {
            let u = self.adj[v][i];
            let cnt = &mut self.sat_count[u][c];
            if on {
                *cnt += 1;
                self.saturation[u] |= 1 << c;
            } else {
                *cnt -= 1;
                if *cnt == 0 {
                    self.saturation[u] &= !(1 << c);
                }
            }
        }
    }

    /// Returns `true` once the lower bound is met (search can stop).
    fn search(&mut self, used: usize) -> bool {
        if used >= self.best {
            return false;
        }
        let Some(v) = self.pick() else {
            self.best = used;
            return used <= self.lower;
        };
        for c in 0..=used.min(63) {
            if self.saturation[v] >> c & 1 == 1 {
                continue;
            }
            let next_used = used.max(c + 1);
            if next_used >= self.best {
                continue;
            }
            self.set(v, c, true);
            let done = self.search(next_used);
            self.set(v, c, false);
            if done {
                return true;
            }
        }
        false
    }
}

/// `χ̄(G) = χ(Ḡ)`: fewest cliques covering `V(G)`.
pub fn clique_cover_number(g: &Graph) -> Result<usize> {
    guard(g, "clique cover number", CHROMATIC_GUARD)?;
    chromatic_number(&g.complement())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{chromatic_number_small, clique_number_small, strong_product};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut edges = vec![];
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn agrees_with_subset_dp() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
        for _ in 0..60 {
            let n = rng.gen_range(0..=10);
            let p = rng.gen_range(0.1..0.9);
            let g = random_graph(&mut rng, n, p);
            assert_eq!(clique_number(&g).unwrap(), clique_number_small(&g).unwrap());
            assert_eq!(chromatic_number(&g).unwrap(), chromatic_number_small(&g).unwrap(), "{g:?}");
        }
    }

    #[test]
    fn five_cycle_and_its_square() {
        let c5 = Graph::cycle(5);
        assert_eq!(independence_number(&c5).unwrap(), 2);
        assert_eq!(clique_cover_number(&c5).unwrap(), 3);
        let sq = strong_product(&c5, &c5);
        assert_eq!(independence_number(&sq).unwrap(), 5);
        assert_eq!(chromatic_number(&sq).unwrap(), 5);
        assert_eq!(independence_number(&Graph::empty(0)).unwrap(), 0);
    }

    #[test]
    fn maximal_sets() {
        assert_eq!(maximal_cliques(&Graph::cycle(5)).unwrap().len(), 5);
        assert_eq!(maximal_independent_sets(&Graph::cycle(5)).unwrap().len(), 5);
        assert_eq!(maximal_independent_sets(&Graph::empty(3)).unwrap(), vec![vec![0, 1, 2]]);
        assert_eq!(maximal_cliques(&Graph::empty(0)).unwrap(), vec![Vec::<usize>::new()]);
        assert_eq!(maximal_cliques(&Graph::petersen()).unwrap().len(), 15);
    }

    #[test]
    fn guards() {
        assert!(chromatic_number(&Graph::empty(41)).is_err());
        assert!(independence_number(&Graph::empty(257)).is_err());
    }
}
