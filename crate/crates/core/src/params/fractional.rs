use num::{BigRational, One, Zero};

use super::cliques::maximal_cliques;
use super::value::ParamValue;
use crate::error::Result;
use crate::graph::Graph;
use crate::numeric::maximize;

/// Optimal primal/dual pair of the fractional clique cover LP.
#[derive(Clone, Debug, PartialEq)]
pub struct CliqueCoverLp {
    pub value: BigRational,
    /// Maximal cliques of `G`.
    pub cliques: Vec<Vec<usize>>,
    /// Optimal cover weights, one per clique.
    pub cover: Vec<BigRational>,
    /// Optimal vertex weights of the dual packing `Σ_{v∈C} x_v ≤ 1`.
    pub packing: Vec<BigRational>,
}

/// Solves `min Σ y_C s.t. Σ_{C∋v} y_C ≥ 1` over maximal cliques, exactly,
/// through its dual packing LP.
pub fn fractional_clique_cover_lp(g: &Graph) -> Result<CliqueCoverLp> {
    let cliques = maximal_cliques(g)?;
    let n = g.order();
    let rows: Vec<Vec<BigRational>> = cliques
        .iter()
        .map(|c| {
            let mut row = vec![BigRational::zero(); n];
            for &v in c {
                row[v] = BigRational::one();
            }
            row
        })
        .collect();
    let sol = maximize(&vec![BigRational::one(); n], &rows, &vec![BigRational::one(); rows.len()])?;
    Ok(CliqueCoverLp {
        value: sol.value,
        cliques,
        cover: sol.dual,
        packing: sol.primal,
    })
}

/// `χ̄_f(G)` as an exact rational; `0` on the empty graph.
pub fn fractional_clique_cover(g: &Graph) -> Result<ParamValue> {
    Ok(ParamValue::Rational(fractional_clique_cover_lp(g)?.value))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(fractional_clique_cover(&Graph::cycle(5)).unwrap(), ParamValue::ratio(5, 2));
        for n in 1..=8 {
            assert_eq!(fractional_clique_cover(&Graph::complete(n)).unwrap(), ParamValue::integer(1));
            assert_eq!(fractional_clique_cover(&Graph::empty(n)).unwrap(), ParamValue::integer(n as i64));
        }
        assert_eq!(fractional_clique_cover(&Graph::empty(0)).unwrap(), ParamValue::integer(0));
        assert_eq!(fractional_clique_cover(&Graph::petersen()).unwrap(), ParamValue::integer(5));
    }

    #[test]
    fn cover_certificate_is_feasible() {
        let lp = fractional_clique_cover_lp(&Graph::cycle(7)).unwrap();
        assert_eq!(lp.value, BigRational::new(7.into(), 2.into()));
        let total: BigRational = lp.cover.iter().sum();
        assert_eq!(total, lp.value);
        for v in 0..7 {
            let covered: BigRational = lp
                .cliques
                .iter()
                .zip(&lp.cover)
                .filter(|(c, _)| c.contains(&v))
                .map(|(_, y)| y.clone())
                .sum();
            assert!(covered >= BigRational::one());
        }
    }
}
