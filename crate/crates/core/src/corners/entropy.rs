//! `H_A(P) = min_{a ∈ A} -Σ P_x log a_x`.
//!
//! Generator corners are solved by a barrier method over the mixing weights
//! of the generators; oracle corners by column generation (Frank–Wolfe with a
//! fully corrective step), reusing the same barrier solve on the collected
//! atoms. Every result carries a lower bound from the support function:
//! for `a ∈ A` and `M = max_{s∈A} Σ P_x s_x / a_x`, Jensen gives
//! `H_A(P) ≥ -Σ P log a - log M`.

use std::f64::consts::LN_2;

use nalgebra::{DMatrix, DVector};

use super::{ConvexCorner, CornerOracle, Representation};
use crate::error::{Error, Result};

/// Target width of the certified interval, in bits.
pub const ENTROPY_TOL: f64 = 1e-9;
const MAX_COLUMNS: usize = 2000;

#[derive(Clone, Debug)]
pub struct EntropyResult {
    /// Upper bound `-Σ P log a` attained by `point`, in bits.
    pub bits: f64,
    /// Certified lower bound, in bits.
    pub lower_bits: f64,
    /// Near-optimal point of the corner (only meaningful on `supp P`).
    pub point: Vec<f64>,
    pub iterations: usize,
}

impl EntropyResult {
    pub fn gap(&self) -> f64 {
        self.bits - self.lower_bits
    }
}

fn check_distribution(d: usize, p: &[f64]) -> Result<()> {
    if p.len() != d {
        return Err(Error::Shape(format!("distribution of length {} on a corner of dimension {d}", p.len())));
    }
    if p.iter().any(|&x| !(x >= 0.0) || !x.is_finite()) {
        return Err(Error::InvalidDistribution("negative or non-finite probability".into()));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidDistribution(format!("probabilities sum to {total}")));
    }
    Ok(())
}

fn log_loss(p: &[f64], a: &[f64]) -> f64 {
    p.iter()
        .zip(a)
        .filter(|(p, _)| **p > 0.0)
        .map(|(p, a)| -p * a.ln())
        .sum()
}

/// `H_A(P)` in bits with a certified lower bound.
pub fn entropy(corner: &ConvexCorner, p: &[f64]) -> Result<EntropyResult> {
    check_distribution(corner.dim(), p)?;
    match corner.representation() {
        Representation::Generators(_) => {
            let gens = corner.generators_f64().expect("generator corner");
            generator_entropy(&gens, p)
        }
        Representation::Oracle(o) => oracle_entropy(o.as_ref(), p),
    }
}

/// Lower bound (bits) on `H_A(P)` certified by the point `a ∈ A`.
pub fn entropy_certificate(corner: &ConvexCorner, p: &[f64], a: &[f64]) -> Result<f64> {
    check_distribution(corner.dim(), p)?;
    let w = ratio(p, a);
    let m = super::support(corner, &w)?.0;
    Ok((log_loss(p, a) - m.ln()) / LN_2)
}

fn ratio(p: &[f64], a: &[f64]) -> Vec<f64> {
    p.iter()
        .zip(a)
        .map(|(&p, &a)| if p > 0.0 { p / a } else { 0.0 })
        .collect()
}

fn generator_entropy(gens: &[Vec<f64>], p: &[f64]) -> Result<EntropyResult> {
    let support: Vec<usize> = (0..p.len()).filter(|&x| p[x] > 0.0).collect();
    let atoms: Vec<Vec<f64>> = gens.iter().map(|g| support.iter().map(|&x| g[x]).collect()).collect();
    let q: Vec<f64> = support.iter().map(|&x| p[x]).collect();
    let mix = mixture(&atoms, &q)?;
    let mut point = vec![0.0; p.len()];
    for (k, &x) in support.iter().enumerate() {
        point[x] = mix.a[k];
    }
    let w = ratio(&q, &mix.a);
    let m = atoms
        .iter()
        .map(|g| g.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>())
        .fold(f64::NEG_INFINITY, f64::max);
    let value = log_loss(&q, &mix.a);
    Ok(EntropyResult {
        bits: value / LN_2,
        lower_bits: (value - m.max(1.0).ln()) / LN_2,
        point,
        iterations: mix.steps,
    })
}

pub(super) fn oracle_entropy(oracle: &dyn CornerOracle, p: &[f64]) -> Result<EntropyResult> {
    if let Some(r) = oracle.entropy_nats(p) {
        let (nats, point) = r?;
        return Ok(EntropyResult {
            bits: nats / LN_2,
            lower_bits: nats / LN_2,
            point,
            iterations: 0,
        });
    }
    let d = p.len();
    let support: Vec<usize> = (0..d).filter(|&x| p[x] > 0.0).collect();
    let q: Vec<f64> = support.iter().map(|&x| p[x]).collect();
    let restrict = |s: &[f64]| -> Vec<f64> { support.iter().map(|&x| s[x].max(0.0)).collect() };
    let mut atoms = Vec::new();
    for &x in &support {
        let mut e = vec![0.0; d];
        e[x] = 1.0;
        atoms.push(restrict(&oracle.support(&e)?.1));
    }
    let mut steps = 0;
    for _ in 0..MAX_COLUMNS {
        let mix = mixture(&atoms, &q)?;
        steps += mix.steps;
        let mut w = vec![0.0; d];
        for (k, &x) in support.iter().enumerate() {
            w[x] = q[k] / mix.a[k];
        }
        let (m, s) = oracle.support(&w)?;
        let value = log_loss(&q, &mix.a);
        let certificate = m.max(1.0).ln();
        if certificate / LN_2 <= ENTROPY_TOL {
            let mut point = vec![0.0; d];
            for (k, &x) in support.iter().enumerate() {
                point[x] = mix.a[k];
            }
            return Ok(EntropyResult {
                bits: value / LN_2,
                lower_bits: (value - certificate) / LN_2,
                point,
                iterations: steps,
            });
        }
        atoms.push(restrict(&s));
    }
    Err(Error::NotConverged {
        iterations: MAX_COLUMNS,
        primal: f64::NAN,
        dual: f64::NAN,
    })
}

struct Mixture {
    a: Vec<f64>,
    steps: usize,
}

/// Minimizes `-Σ q_x ln (Σ_k λ_k g_kx)` over the simplex of weights `λ` by a
/// log-barrier Newton method with the equality constraint eliminated.
fn mixture(atoms: &[Vec<f64>], q: &[f64]) -> Result<Mixture> {
    let d = q.len();
    // drop duplicate and dominated atoms; they never help
    let mut pool: Vec<&Vec<f64>> = atoms.iter().filter(|g| g.iter().any(|&x| x > 0.0)).collect();
    pool.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    pool.dedup();
    let dominated = |g: &Vec<f64>, h: &Vec<f64>| g != h && g.iter().zip(h.iter()).all(|(a, b)| a <= b);
    let gens: Vec<&Vec<f64>> = pool
        .iter()
        .filter(|g| !pool.iter().any(|h| dominated(g, h)))
        .copied()
        .collect();
    let m = gens.len();
    if m == 0 || (0..d).any(|x| gens.iter().all(|g| g[x] <= 0.0)) {
        return Err(Error::DegenerateCorner("a coordinate in the support of P vanishes on the corner".into()));
    }
    let point = |lambda: &[f64]| -> Vec<f64> {
        (0..d).map(|x| gens.iter().zip(lambda).map(|(g, l)| l * g[x]).sum()).collect()
    };
    if m == 1 {
        return Ok(Mixture {
            a: gens[0].clone(),
            steps: 0,
        });
    }
    let mut lambda = vec![1.0 / m as f64; m];
    let mut t = 1.0;
    let mut steps = 0;
    let nu = m as f64;
    loop {
        for _ in 0..100 {
            let a = point(&lambda);
            let mut grad = DVector::zeros(m);
            let mut hess = DMatrix::zeros(m, m);
            let r: Vec<f64> = (0..d).map(|x| q[x] / a[x]).collect();
            for k in 0..m {
                grad[k] = -t * (0..d).map(|x| r[x] * gens[k][x]).sum::<f64>() - 1.0 / lambda[k];
                for l in k..m {
                    let h: f64 = t * (0..d).map(|x| r[x] / a[x] * gens[k][x] * gens[l][x]).sum::<f64>();
                    hess[(k, l)] = h;
                    hess[(l, k)] = h;
                }
                hess[(k, k)] += 1.0 / (lambda[k] * lambda[k]);
            }
            let ones = DVector::from_element(m, 1.0);
            let (hg, h1) = match hess.clone().cholesky() {
                Some(c) => (c.solve(&grad), c.solve(&ones)),
                None => {
                    let lu = hess.lu();
                    match (lu.solve(&grad), lu.solve(&ones)) {
                        (Some(a), Some(b)) => (a, b),
                        _ => break,
                    }
                }
            };
            let mu = -ones.dot(&hg) / ones.dot(&h1);
            let step = -(hg + h1 * mu);
            let decrement = -grad.dot(&step);
            steps += 1;
            if !decrement.is_finite() || decrement < 1e-14 {
                break;
            }
            let phi = |l: &[f64]| -> f64 {
                let a = point(l);
                t * log_loss(q, &a) - l.iter().map(|x| x.ln()).sum::<f64>()
            };
            let mut alpha: f64 = 1.0;
            for k in 0..m {
                if step[k] < 0.0 {
                    alpha = alpha.min(-0.99 * lambda[k] / step[k]);
                }
            }
            let current = phi(&lambda);
            let mut accepted = false;
            while alpha > 1e-16 {
                let trial: Vec<f64> = (0..m).map(|k| lambda[k] + alpha * step[k]).collect();
                let val = phi(&trial);
                if val.is_finite() && val <= current - 0.25 * alpha * decrement {
                    lambda = trial;
                    accepted = true;
                    break;
                }
                alpha *= 0.5;
            }
            if !accepted || decrement < 1e-11 {
                break;
            }
        }
        if nu / t < 1e-12 || t > 1e15 {
            break;
        }
        t *= 10.0;
    }
    let total: f64 = lambda.iter().sum();
    let lambda: Vec<f64> = lambda.iter().map(|l| l / total).collect();
    Ok(Mixture {
        a: point(&lambda),
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corners::{theta_body, vertex_packing};
    use crate::graph::Graph;
    use crate::types::entropy_bits;

    #[test]
    fn unit_corner_and_cube() {
        let p = [0.1, 0.2, 0.3, 0.4];
        let s = entropy(&ConvexCorner::unit_corner(4), &p).unwrap();
        assert!((s.bits - entropy_bits(&p)).abs() < 1e-8, "{}", s.bits);
        assert!(s.gap() < 1e-8);
        let c = entropy(&ConvexCorner::unit_cube(4), &p).unwrap();
        assert!(c.bits.abs() < 1e-12);
    }

    #[test]
    fn vertex_packing_of_cycle_complement() {
        let vp = vertex_packing(&Graph::cycle(5).complement()).unwrap();
        let r = entropy(&vp, &[0.2; 5]).unwrap();
        assert!((r.bits - 2.5f64.log2()).abs() < 1e-8, "{}", r.bits);
    }

    #[test]
    fn point_mass_has_zero_entropy() {
        let vp = vertex_packing(&Graph::petersen()).unwrap();
        let mut p = [0.0; 10];
        p[3] = 1.0;
        assert!(entropy(&vp, &p).unwrap().bits.abs() < 1e-12);
    }

    #[test]
    fn theta_body_entropy_is_half_log_five() {
        let th = theta_body(&Graph::cycle(5)).unwrap();
        let r = entropy(&th, &[0.2; 5]).unwrap();
        assert!((r.bits - 0.5 * 5f64.log2()).abs() < 1e-7, "{}", r.bits);
    }

    #[test]
    fn column_generation_matches_generators() {
        // wrap a generator corner as a plain oracle
        #[derive(Debug)]
        struct Plain(ConvexCorner);
        impl CornerOracle for Plain {
            fn dim(&self) -> usize {
                self.0.dim()
            }
            fn contains(&self, a: &[f64], tol: f64) -> Result<bool> {
                crate::corners::contains(&self.0, a, tol)
            }
            fn support(&self, w: &[f64]) -> Result<(f64, Vec<f64>)> {
                crate::corners::support(&self.0, w)
            }
            fn describe(&self) -> String {
                "plain".into()
            }
        }
        let vp = vertex_packing(&Graph::path(4)).unwrap();
        let p = [0.1, 0.4, 0.3, 0.2];
        let direct = entropy(&vp, &p).unwrap();
        let wrapped = ConvexCorner::from_oracle(vp.ground().to_vec(), std::sync::Arc::new(Plain(vp))).unwrap();
        let fw = entropy(&wrapped, &p).unwrap();
        assert!((direct.bits - fw.bits).abs() < 1e-7, "{} {}", direct.bits, fw.bits);
    }

    #[test]
    fn rejects_bad_distributions() {
        let s = ConvexCorner::unit_corner(2);
        assert!(entropy(&s, &[0.5, 0.6]).is_err());
        assert!(entropy(&s, &[1.0]).is_err());
    }
}
