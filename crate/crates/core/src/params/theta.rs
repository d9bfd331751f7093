use nalgebra::{DMatrix, DVector};

use super::value::ParamValue;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numeric::{SdpProblem, SdpSettings, SparseSym};

pub const THETA_GUARD: usize = 130;
/// Tolerance reported on theta values.
pub const THETA_TOL: f64 = 1e-7;

#[derive(Clone, Debug)]
pub struct ThetaSolution {
    pub value: f64,
    pub primal: f64,
    pub dual: f64,
    pub iterations: usize,
    /// Optimal `B` on the support of the weights (in support order).
    pub matrix: DMatrix<f64>,
    pub support: Vec<usize>,
}

/// Weighted theta: `max Σ √(w_i w_j) B_ij` over `B ⪰ 0`, `tr B = 1`,
/// `B_ij = 0` on edges. Zero-weight vertices are dropped before solving.
pub fn theta_sdp(g: &Graph, weights: Option<&[f64]>) -> Result<ThetaSolution> {
    if g.order() > THETA_GUARD {
        return Err(Error::SizeGuard {
            what: "theta SDP",
            size: g.order(),
            limit: THETA_GUARD,
        });
    }
    let w: Vec<f64> = match weights {
        Some(w) if w.len() != g.order() => {
            return Err(Error::Shape(format!(
                "{} weights for a graph on {} vertices",
                w.len(),
                g.order()
            )))
        }
        Some(w) if w.iter().any(|&x| !(x >= 0.0) || !x.is_finite()) => {
            return Err(Error::Domain("theta weights must be finite and nonnegative".into()))
        }
        Some(w) => w.to_vec(),
        None => vec![1.0; g.order()],
    };
    let support: Vec<usize> = (0..g.order()).filter(|&v| w[v] > 0.0).collect();
    let n = support.len();
    if n == 0 {
        return Ok(ThetaSolution {
            value: 0.0,
            primal: 0.0,
            dual: 0.0,
            iterations: 0,
            matrix: DMatrix::zeros(0, 0),
            support,
        });
    }
    let root: Vec<f64> = support.iter().map(|&v| w[v].sqrt()).collect();
    let c = DMatrix::from_fn(n, n, |i, j| -root[i] * root[j]);
    let mut constraints = vec![SparseSym::identity(n)];
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(support[i], support[j]) {
                constraints.push(SparseSym::symmetric_unit(i, j, 1.0));
            }
        }
    }
    let mut b = DVector::zeros(constraints.len());
    b[0] = 1.0;
    let mut y0 = DVector::zeros(constraints.len());
    y0[0] = -(root.iter().map(|r| r * r).sum::<f64>() + 1.0);
    let problem = SdpProblem { c, constraints, b };
    let sol = problem.solve(DMatrix::identity(n, n) / n as f64, y0, &SdpSettings::default())?;
    Ok(ThetaSolution {
        value: -sol.primal,
        primal: -sol.primal,
        dual: -sol.dual,
        iterations: sol.iterations,
        matrix: sol.x,
        support,
    })
}

/// `ϑ(G, w)` (unweighted when `weights` is `None`), as a float value with
/// tolerance [`THETA_TOL`].
pub fn lovasz_theta(g: &Graph, weights: Option<&[f64]>) -> Result<ParamValue> {
    let s = theta_sdp(g, weights)?;
    Ok(ParamValue::float(s.value, THETA_TOL * s.value.abs().max(1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_values() {
        let c5 = lovasz_theta(&Graph::cycle(5), None).unwrap().to_f64();
        assert!((c5 - 5f64.sqrt()).abs() < 1e-6, "{c5}");
        for n in 1..=6 {
            let k = lovasz_theta(&Graph::complete(n), None).unwrap().to_f64();
            assert!((k - 1.0).abs() < 1e-6);
            let e = lovasz_theta(&Graph::empty(n), None).unwrap().to_f64();
            assert!((e - n as f64).abs() < 1e-6);
        }
        let p = lovasz_theta(&Graph::petersen(), None).unwrap().to_f64();
        assert!((p - 4.0).abs() < 1e-6, "{p}");
        assert_eq!(lovasz_theta(&Graph::empty(0), None).unwrap().to_f64(), 0.0);
    }

    #[test]
    fn weighted_values() {
        // independent vertices: sum of weights; clique: max weight
        let w = [0.5, 2.0, 1.5];
        let e = theta_sdp(&Graph::empty(3), Some(&w)).unwrap().value;
        assert!((e - 4.0).abs() < 1e-6);
        let k = theta_sdp(&Graph::complete(3), Some(&w)).unwrap().value;
        assert!((k - 2.0).abs() < 1e-6);
        let z = theta_sdp(&Graph::cycle(5), Some(&[0.0, 0.0, 1.0, 0.0, 1.0])).unwrap().value;
        assert!((z - 2.0).abs() < 1e-6);
        assert!(theta_sdp(&Graph::cycle(5), Some(&[1.0; 4])).is_err());
        assert!(theta_sdp(&Graph::cycle(3), Some(&[1.0, -1.0, 1.0])).is_err());
    }
}
