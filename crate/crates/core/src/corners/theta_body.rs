//! The theta body through its lifted description
//! `TH(G) = {x : ∃ Y ⪰ 0, Y_00 = 1, Y_0i = Y_ii = x_i, Y_ij = 0 for ij ∈ E(G)}`,
//! optimized by a log-det barrier method.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use super::CornerOracle;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numeric::SparseSym;
use crate::params::theta_sdp;

pub const MEMBERSHIP_SLACK: f64 = 1e-7;

#[derive(Clone, Debug)]
pub struct ThetaBody {
    graph: Graph,
    /// `A_k` for the variables `x_1..x_n` followed by the free entries on
    /// non-adjacent pairs.
    basis: Vec<SparseSym>,
    pairs: Vec<(usize, usize)>,
}

/// Objective of a barrier solve over the lifted variables.
enum Objective<'a> {
    /// `max ⟨w, x⟩`.
    Linear(&'a [f64]),
    /// `min -Σ P_i ln x_i`.
    Entropy(&'a [f64]),
}

#[derive(Clone, Debug)]
pub struct BarrierResult {
    /// Objective value at the returned point (natural units for entropy).
    pub value: f64,
    pub x: Vec<f64>,
    /// Certified bound on the suboptimality of `value`.
    pub gap: f64,
    pub newton_steps: usize,
}

impl ThetaBody {
    pub fn new(graph: &Graph) -> Self {
        let n = graph.order();
        let mut basis: Vec<SparseSym> = (1..=n)
            .map(|i| {
                let mut a = SparseSym::symmetric_unit(0, i, 1.0);
                a.add(i, i, 1.0);
                a
            })
            .collect();
        let pairs = graph.non_edges();
        basis.extend(pairs.iter().map(|&(i, j)| SparseSym::symmetric_unit(i + 1, j + 1, 1.0)));
        ThetaBody {
            graph: graph.clone(),
            basis,
            pairs,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    fn order(&self) -> usize {
        self.graph.order()
    }

    fn lifted(&self, v: &[f64]) -> DMatrix<f64> {
        let n = self.order();
        let mut y = DMatrix::zeros(n + 1, n + 1);
        y[(0, 0)] = 1.0;
        for (i, &x) in v[..n].iter().enumerate() {
            y[(0, i + 1)] = x;
            y[(i + 1, 0)] = x;
            y[(i + 1, i + 1)] = x;
        }
        for (k, &(i, j)) in self.pairs.iter().enumerate() {
            y[(i + 1, j + 1)] = v[n + k];
            y[(j + 1, i + 1)] = v[n + k];
        }
        y
    }

    fn solve(&self, objective: Objective<'_>) -> Result<BarrierResult> {
        let n = self.order();
        let dim = self.basis.len();
        let nu = (n + 1) as f64;
        let (weights, linear) = match objective {
            Objective::Linear(w) => (w, true),
            Objective::Entropy(p) => (p, false),
        };
        let f = |v: &[f64]| -> f64 {
            if linear {
                -weights.iter().zip(v).map(|(w, x)| w * x).sum::<f64>()
            } else {
                weights
                    .iter()
                    .zip(v)
                    .filter(|(p, _)| **p > 0.0)
                    .map(|(p, x)| -p * x.ln())
                    .sum()
            }
        };
        let mut v = vec![0.0; dim];
        for x in v.iter_mut().take(n) {
            *x = 0.5 / n as f64;
        }
        let scale: f64 = weights.iter().map(|w| w.abs()).sum::<f64>().max(1e-300);
        let mut t = 1.0 / scale;
        let target = 1e-11;
        let mut steps = 0;
        loop {
            // centering
            for _ in 0..200 {
                let y = self.lifted(&v);
                let s = y
                    .clone()
                    .cholesky()
                    .ok_or_else(|| Error::Numerical("theta-body iterate left the cone".into()))?
                    .inverse();
                let mut grad = DVector::zeros(dim);
                let mut hess = DMatrix::zeros(dim, dim);
                for k in 0..dim {
                    grad[k] = -self.basis[k].dot(&s);
                    for l in k..dim {
                        let h = self.basis[k].congruence_dot(&s, &self.basis[l]);
                        hess[(k, l)] = h;
                        hess[(l, k)] = h;
                    }
                }
                for i in 0..n {
                    if linear {
                        grad[i] -= t * weights[i];
                    } else if weights[i] > 0.0 {
                        grad[i] -= t * weights[i] / v[i];
                        hess[(i, i)] += t * weights[i] / (v[i] * v[i]);
                    }
                }
                let step = -newton_solve(hess, &grad)?;
                let decrement = -grad.dot(&step);
                steps += 1;
                if decrement < 1e-12 {
                    break;
                }
                let phi = |v: &[f64]| -> Option<f64> {
                    let chol = self.lifted(v).cholesky()?;
                    let logdet: f64 = chol.l().diagonal().iter().map(|d| 2.0 * d.ln()).sum();
                    let fv = f(v);
                    fv.is_finite().then_some(t * fv - logdet)
                };
                let current = phi(&v).ok_or_else(|| Error::Numerical("barrier undefined".into()))?;
                let mut alpha = 1.0;
                loop {
                    let trial: Vec<f64> = v.iter().zip(step.iter()).map(|(a, d)| a + alpha * d).collect();
                    if let Some(val) = phi(&trial) {
                        if val <= current - 0.25 * alpha * decrement {
                            v = trial;
                            break;
                        }
                    }
                    alpha *= 0.5;
                    if alpha < 1e-14 {
                        break;
                    }
                }
                if alpha < 1e-14 || decrement < 1e-10 {
                    break;
                }
            }
            let gap = nu / t;
            if gap <= target * (1.0 + f(&v).abs()) {
                let value = if linear { -f(&v) } else { f(&v) };
                return Ok(BarrierResult {
                    value,
                    x: v[..n].to_vec(),
                    gap,
                    newton_steps: steps,
                });
            }
            t *= 8.0;
            if steps > 20_000 {
                return Err(Error::NotConverged {
                    iterations: steps,
                    primal: f(&v),
                    dual: f(&v) - gap,
                });
            }
        }
    }

    /// `max_{x ∈ TH(G)} ⟨w, x⟩` and a maximizer.
    pub fn maximize(&self, w: &[f64]) -> Result<BarrierResult> {
        self.check_len(w)?;
        if w.iter().all(|&x| x == 0.0) {
            return Ok(BarrierResult {
                value: 0.0,
                x: vec![0.0; self.order()],
                gap: 0.0,
                newton_steps: 0,
            });
        }
        self.solve(Objective::Linear(w))
    }

    /// `min_{x ∈ TH(G)} -Σ P_i ln x_i` (natural log) and a minimizer.
    pub fn min_log_loss(&self, p: &[f64]) -> Result<BarrierResult> {
        self.check_len(p)?;
        self.solve(Objective::Entropy(p))
    }

    fn check_len(&self, w: &[f64]) -> Result<()> {
        if w.len() != self.order() {
            return Err(Error::Shape(format!(
                "vector of length {} for a corner of dimension {}",
                w.len(),
                self.order()
            )));
        }
        if w.iter().any(|x| !(*x >= 0.0) || !x.is_finite()) {
            return Err(Error::Domain("direction must be finite and nonnegative".into()));
        }
        Ok(())
    }
}

/// Solves `H d = g`. Near faces where the lifted matrix loses rank the
/// Hessian is ill-conditioned like `t²`; a small ridge then keeps the step a
/// descent direction, and the line search does the rest.
fn newton_solve(hess: DMatrix<f64>, grad: &DVector<f64>) -> Result<DVector<f64>> {
    if let Some(chol) = hess.clone().cholesky() {
        return Ok(chol.solve(grad));
    }
    let scale = hess.diagonal().iter().cloned().fold(0.0, f64::max).max(1e-300);
    for ridge in [1e-15, 1e-13, 1e-11, 1e-9, 1e-7] {
        let mut h = hess.clone();
        for i in 0..h.nrows() {
            h[(i, i)] += ridge * scale;
        }
        if let Some(chol) = h.cholesky() {
            return Ok(chol.solve(grad));
        }
    }
    Err(Error::Numerical("singular barrier Hessian".into()))
}

impl CornerOracle for ThetaBody {
    fn dim(&self) -> usize {
        self.order()
    }

    fn contains(&self, a: &[f64], tol: f64) -> Result<bool> {
        if a.len() != self.order() {
            return Err(Error::Shape("point of wrong dimension".into()));
        }
        if a.iter().any(|&x| x < -tol) {
            return Ok(false);
        }
        let clipped: Vec<f64> = a.iter().map(|x| x.max(0.0)).collect();
        let value = theta_sdp(&self.graph.complement(), Some(&clipped))?.value;
        Ok(value <= 1.0 + MEMBERSHIP_SLACK + tol)
    }

    fn support(&self, w: &[f64]) -> Result<(f64, Vec<f64>)> {
        let r = self.maximize(w)?;
        Ok((r.value, r.x))
    }

    fn entropy_nats(&self, p: &[f64]) -> Option<Result<(f64, Vec<f64>)>> {
        Some(self.min_log_loss(p).map(|r| (r.value, r.x)))
    }

    fn antiblocker(&self) -> Option<Arc<dyn CornerOracle>> {
        Some(Arc::new(ThetaBody::new(&self.graph.complement())))
    }

    fn describe(&self) -> String {
        format!("theta body of a graph on {} vertices", self.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn support_is_weighted_theta() {
        let th = ThetaBody::new(&Graph::cycle(5));
        let r = th.maximize(&[1.0; 5]).unwrap();
        assert!((r.value - 5f64.sqrt()).abs() < 1e-7, "{}", r.value);
        let w = [0.3, 1.0, 2.0, 0.5, 0.7];
        let sdp = theta_sdp(&Graph::cycle(5), Some(&w)).unwrap().value;
        assert!((th.maximize(&w).unwrap().value - sdp).abs() < 1e-6);
    }

    #[test]
    fn complete_graph_body_is_simplex() {
        let th = ThetaBody::new(&Graph::complete(3));
        let r = th.maximize(&[1.0, 2.0, 3.0]).unwrap();
        assert!((r.value - 3.0).abs() < 1e-7);
        let e = ThetaBody::new(&Graph::empty(3)).maximize(&[1.0, 2.0, 3.0]).unwrap();
        assert!((e.value - 6.0).abs() < 1e-7);
        // uniform distribution on the simplex: log loss ln 3
        let l = th.min_log_loss(&[1.0 / 3.0; 3]).unwrap();
        assert!((l.value - 3f64.ln()).abs() < 1e-8);
    }

    #[test]
    fn membership() {
        let th = ThetaBody::new(&Graph::cycle(5));
        for v in 0..5 {
            let mut e = vec![0.0; 5];
            e[v] = 1.0;
            assert!(th.contains(&e, 0.0).unwrap());
        }
        assert!(!th.contains(&[0.5; 5], 0.0).unwrap());
        let s = 1.0 / 5f64.sqrt();
        assert!(th.contains(&[s; 5], 1e-6).unwrap());
        assert!(!th.contains(&[s + 0.01; 5], 0.0).unwrap());
    }
}
