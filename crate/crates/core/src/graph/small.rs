//! Brute-force decisions on very small graphs (subset bitmask DP and
//! permutation search).

use super::Graph;
use crate::error::{Error, Result};

const PERFECT_GUARD: usize = 12;
const ISO_GUARD: usize = 8;

fn masks(g: &Graph) -> Vec<u32> {
    (0..g.order())
        .map(|v| g.neighbors(v).fold(0u32, |m, u| m | 1 << u))
        .collect()
}

/// For every vertex subset (as a bitmask): whether it is independent.
fn independent_table(adj: &[u32]) -> Vec<bool> {
    let n = adj.len();
    let mut table = vec![true; 1 << n];
    for mask in 1usize..(1 << n) {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        table[mask] = table[rest] && adj[v] & rest as u32 == 0;
    }
    table
}

fn check_guard(g: &Graph, what: &'static str, limit: usize) -> Result<()> {
    if g.order() > limit {
        Err(Error::SizeGuard {
            what,
            size: g.order(),
            limit,
        })
    } else {
        Ok(())
    }
}

/// Largest clique size, by subset enumeration (≤ 12 vertices).
pub fn clique_number_small(g: &Graph) -> Result<usize> {
    check_guard(g, "clique number", PERFECT_GUARD)?;
    let co = masks(&g.complement());
    let table = independent_table(&co);
    Ok((0..table.len())
        .filter(|&m| table[m])
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0))
}

/// Chromatic number by subset DP (≤ 12 vertices).
pub fn chromatic_number_small(g: &Graph) -> Result<usize> {
    check_guard(g, "chromatic number", PERFECT_GUARD)?;
    let table = independent_table(&masks(g));
    Ok(chromatic_table(&table, g.order())[(1 << g.order()) - 1] as usize)
}

/// `chi[mask]` for every subset.
fn chromatic_table(independent: &[bool], n: usize) -> Vec<u8> {
    let full = 1usize << n;
    let mut chi = vec![u8::MAX; full];
    chi[0] = 0;
    for mask in 1..full {
        let low = mask & mask.wrapping_neg();
        // color classes containing the lowest vertex
        let rest = mask ^ low;
        let mut sub = rest;
        loop {
            let class = sub | low;
            if independent[class] {
                let c = chi[mask ^ class].saturating_add(1);
                if c < chi[mask] {
                    chi[mask] = c;
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    chi
}

/// Whether every induced subgraph has clique number equal to chromatic
/// number, checked over all `2^n` subsets (≤ 12 vertices).
pub fn is_perfect(g: &Graph) -> Result<bool> {
    check_guard(g, "perfection test", PERFECT_GUARD)?;
    let n = g.order();
    let independent = independent_table(&masks(g));
    let cliques = independent_table(&masks(&g.complement()));
    let chi = chromatic_table(&independent, n);
    // omega[mask] = largest clique inside mask
    let mut omega = vec![0u8; 1 << n];
    for mask in 1usize..(1 << n) {
        omega[mask] = if cliques[mask] {
            mask.count_ones() as u8
        } else {
            let mut best = 0;
            let mut m = mask;
            while m != 0 {
                let bit = m & m.wrapping_neg();
                best = best.max(omega[mask ^ bit]);
                m ^= bit;
            }
            best
        };
    }
    Ok((0..1usize << n).all(|m| omega[m] == chi[m]))
}

/// Label-blind isomorphism test by permutation search (≤ 8 vertices).
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    check_guard(g, "isomorphism test", ISO_GUARD)?;
    check_guard(h, "isomorphism test", ISO_GUARD)?;
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    let mut dg: Vec<usize> = (0..g.order()).map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = (0..h.order()).map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return Ok(false);
    }
    let mut image = Vec::with_capacity(g.order());
    let mut used = vec![false; h.order()];
    Ok(extend_iso(g, h, &mut image, &mut used))
}

fn extend_iso(g: &Graph, h: &Graph, image: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let v = image.len();
    if v == g.order() {
        return true;
    }
    for t in 0..h.order() {
        if used[t] || g.degree(v) != h.degree(t) {
            continue;
        }
        if (0..v).all(|u| g.has_edge(u, v) == h.has_edge(image[u], t)) {
            used[t] = true;
            image.push(t);
            if extend_iso(g, h, image, used) {
                return true;
            }
            image.pop();
            used[t] = false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_p4_is_perfect() {
        assert!(is_perfect(&Graph::path(4)).unwrap());
    }

    #[test]
    fn odd_hole_is_not_perfect() {
        let c5 = Graph::cycle(5);
        assert_eq!(clique_number_small(&c5).unwrap(), 2);
        assert_eq!(chromatic_number_small(&c5).unwrap(), 3);
        assert!(!is_perfect(&c5).unwrap());
        assert!(!is_perfect(&c5.complement()).unwrap());
        assert!(!is_perfect(&Graph::petersen()).unwrap());
    }

    #[test]
    fn bipartite_graphs_are_perfect() {
        assert!(is_perfect(&Graph::complete_bipartite(3, 3)).unwrap());
        assert!(is_perfect(&Graph::cycle(8)).unwrap());
        assert!(is_perfect(&Graph::path(8)).unwrap());
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(chromatic_number_small(&Graph::petersen()).unwrap(), 3);
        assert_eq!(chromatic_number_small(&Graph::complete(6)).unwrap(), 6);
        assert_eq!(chromatic_number_small(&Graph::empty(0)).unwrap(), 0);
        assert_eq!(clique_number_small(&Graph::empty(0)).unwrap(), 0);
    }

    #[test]
    fn isomorphism_guard() {
        assert!(is_isomorphic(&Graph::cycle(9), &Graph::cycle(9)).is_err());
        assert!(!is_isomorphic(&Graph::path(4), &Graph::complete_bipartite(1, 3)).unwrap());
    }
}
