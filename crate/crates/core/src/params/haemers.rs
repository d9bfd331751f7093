use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numeric::GFMatrix;

/// Checks that `M` fits `G` (nonzero diagonal, zero on every non-adjacent
/// pair of distinct vertices) and returns its rank, an upper bound on `α(G)`.
pub fn haemers_rank_certificate(g: &Graph, m: &GFMatrix) -> Result<usize> {
    let n = g.order();
    if m.rows() != n || m.cols() != n {
        return Err(Error::Shape(format!(
            "{}×{} matrix for a graph on {n} vertices",
            m.rows(),
            m.cols()
        )));
    }
    for u in 0..n {
        if m.get(u, u) == 0 {
            return Err(Error::FitViolation {
                row: u,
                col: u,
                reason: "diagonal entry is zero",
            });
        }
        for v in 0..n {
            if u != v && !g.has_edge(u, v) && m.get(u, v) != 0 {
                return Err(Error::FitViolation {
                    row: u,
                    col: v,
                    reason: "nonzero entry on a non-adjacent pair",
                });
            }
        }
    }
    Ok(m.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::cliques::independence_number;

    #[test]
    fn trivial_certificates() {
        for g in [Graph::cycle(5), Graph::petersen(), Graph::empty(4)] {
            let id = GFMatrix::identity(2, g.order()).unwrap();
            assert_eq!(haemers_rank_certificate(&g, &id).unwrap(), g.order());
        }
        let ones = GFMatrix::new(2, 4, 4, &[1; 16]).unwrap();
        assert_eq!(haemers_rank_certificate(&Graph::complete(4), &ones).unwrap(), 1);
    }

    #[test]
    fn five_cycle_certificates_over_gf2() {
        let c5 = Graph::cycle(5);
        // I + A is invertible over GF(2): x^4 + x + 1 is coprime to x^5 + 1
        let entries: Vec<i64> = (0..25)
            .map(|k| {
                let (u, v) = (k / 5, k % 5);
                (u == v || c5.has_edge(u, v)) as i64
            })
            .collect();
        let m = GFMatrix::new(2, 5, 5, &entries).unwrap();
        assert_eq!(haemers_rank_certificate(&c5, &m).unwrap(), 5);
        // two disjoint edges plus a vertex: rank 3, tight with the clique cover
        let blocks = GFMatrix::from_rows(
            2,
            &[
                vec![1, 1, 0, 0, 0],
                vec![1, 1, 0, 0, 0],
                vec![0, 0, 1, 1, 0],
                vec![0, 0, 1, 1, 0],
                vec![0, 0, 0, 0, 1],
            ],
        )
        .unwrap();
        let r = haemers_rank_certificate(&c5, &blocks).unwrap();
        assert_eq!(r, 3);
        assert!(r >= independence_number(&c5).unwrap());
    }

    #[test]
    fn fit_violations_name_the_entry() {
        let ones = GFMatrix::new(2, 5, 5, &[1; 25]).unwrap();
        assert_eq!(
            haemers_rank_certificate(&Graph::cycle(5), &ones),
            Err(Error::FitViolation {
                row: 0,
                col: 2,
                reason: "nonzero entry on a non-adjacent pair"
            })
        );
        let zero = GFMatrix::new(3, 2, 2, &[0; 4]).unwrap();
        assert!(matches!(
            haemers_rank_certificate(&Graph::complete(2), &zero),
            Err(Error::FitViolation { row: 0, col: 0, .. })
        ));
    }
}
