//! Maximizing concave refinements over the probability simplex.
//!
//! Every refinement here is the entropy of a corner or an affine
//! combination of such, so its one-homogeneous extension is concave and
//! `-log a*` (with `a*` an optimal corner point) is a supergradient. That
//! makes `max_x g_x` a global upper bound at every iterate, which is used as
//! the stopping certificate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::corners::{entropy, ConvexCorner};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::params::{ParamValue, SpectralPoint};
use crate::types::entropy_bits;

pub const RESTARTS: usize = 20;
const MAX_ITER: usize = 2000;
const CERT_TOL: f64 = 1e-6;
/// Mass mixed into every iterate to keep it in the open simplex.
const FLOOR: f64 = 1e-13;

/// A concave function on the simplex with supergradients (both in bits).
pub trait Refinement: Send + Sync {
    fn dim(&self) -> usize;
    /// Value and a supergradient `g` of the homogeneous extension, so that
    /// `⟨P, g⟩` equals the value.
    fn evaluate(&self, p: &[f64]) -> Result<(f64, Vec<f64>)>;
}

/// `P ↦ H_A(P)`.
pub struct CornerRefinement {
    pub corner: ConvexCorner,
}

impl Refinement for CornerRefinement {
    fn dim(&self) -> usize {
        self.corner.dim()
    }

    fn evaluate(&self, p: &[f64]) -> Result<(f64, Vec<f64>)> {
        let r = entropy(&self.corner, p)?;
        let g = r.point.iter().map(|&a| -a.max(1e-300).log2()).collect();
        Ok((r.bits, g))
    }
}

/// `P ↦ H(P) - H_A(P)` for the corner `A` of the complement.
pub struct Complementary {
    pub complement_corner: ConvexCorner,
}

impl Refinement for Complementary {
    fn dim(&self) -> usize {
        self.complement_corner.dim()
    }

    fn evaluate(&self, p: &[f64]) -> Result<(f64, Vec<f64>)> {
        let r = entropy(&self.complement_corner, p)?;
        let g = p
            .iter()
            .zip(&r.point)
            .map(|(&p, &a)| (a.max(1e-300) / p.max(1e-300)).log2())
            .collect();
        Ok((entropy_bits(p) - r.bits, g))
    }
}

/// `(1 - λ) F_0 + λ F_1`.
pub struct Combined<'a> {
    pub f0: &'a dyn Refinement,
    pub f1: &'a dyn Refinement,
    pub lambda: f64,
}

impl Refinement for Combined<'_> {
    fn dim(&self) -> usize {
        self.f0.dim()
    }

    fn evaluate(&self, p: &[f64]) -> Result<(f64, Vec<f64>)> {
        let l = self.lambda;
        let (v0, g0) = if l < 1.0 { self.f0.evaluate(p)? } else { (0.0, vec![0.0; p.len()]) };
        let (v1, g1) = if l > 0.0 { self.f1.evaluate(p)? } else { (0.0, vec![0.0; p.len()]) };
        let g = g0.iter().zip(&g1).map(|(a, b)| (1.0 - l) * a + l * b).collect();
        Ok(((1.0 - l) * v0 + l * v1, g))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Maximum {
    /// Best value found (a lower bound on the maximum), bits.
    pub bits: f64,
    /// Smallest certified upper bound, bits.
    pub upper_bits: f64,
    pub argmax: Vec<f64>,
    /// Starting points used (uniform first).
    pub starts: usize,
    pub iterations: usize,
}

fn floored(p: &[f64]) -> Vec<f64> {
    let u = 1.0 / p.len() as f64;
    let mut q: Vec<f64> = p.iter().map(|&x| (1.0 - FLOOR) * x + FLOOR * u).collect();
    let total: f64 = q.iter().sum();
    q.iter_mut().for_each(|x| *x /= total);
    q
}

struct Ascent {
    value: f64,
    upper: f64,
    p: Vec<f64>,
    iterations: usize,
}

/// Exponentiated-gradient ascent with an adaptive step, stopped by the
/// supergradient certificate.
fn ascend(r: &dyn Refinement, start: Vec<f64>) -> Result<Ascent> {
    let mut p = floored(&start);
    let (mut value, mut g) = r.evaluate(&p)?;
    let mut upper = g.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut eta = 1.0;
    let mut iterations = 0;
    while iterations < MAX_ITER && upper - value > CERT_TOL && eta > 1e-12 {
        iterations += 1;
        let top = g.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let mut trial: Vec<f64> = p
            .iter()
            .zip(&g)
            .map(|(&x, &gx)| x * (eta * (gx - top) * std::f64::consts::LN_2).exp())
            .collect();
        let total: f64 = trial.iter().sum();
        trial.iter_mut().for_each(|x| *x /= total);
        let trial = floored(&trial);
        let (v, tg) = r.evaluate(&trial)?;
        if v > value {
            p = trial;
            value = v;
            g = tg;
            upper = upper.min(g.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
            eta *= 2.0;
        } else {
            eta /= 4.0;
        }
    }
    Ok(Ascent {
        value,
        upper,
        p,
        iterations,
    })
}

/// `max_P F(P)`: the uniform start, then up to [`RESTARTS`] seeded random
/// starts until the best value meets the best certificate.
pub fn maximize_refinement(r: &dyn Refinement, seed: u64) -> Result<Maximum> {
    let d = r.dim();
    if d == 0 {
        return Err(Error::Domain("no distributions on an empty ground set".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<Maximum> = None;
    for start in 0..=RESTARTS {
        let p0 = if start == 0 {
            vec![1.0 / d as f64; d]
        } else {
            let e: Vec<f64> = (0..d).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
            let s: f64 = e.iter().sum();
            e.iter().map(|x| x / s).collect()
        };
        let a = ascend(r, p0)?;
        let m = best.get_or_insert_with(|| Maximum {
            bits: f64::NEG_INFINITY,
            upper_bits: f64::INFINITY,
            argmax: Vec::new(),
            starts: 0,
            iterations: 0,
        });
        m.starts += 1;
        m.iterations += a.iterations;
        m.upper_bits = m.upper_bits.min(a.upper);
        if a.value > m.bits {
            m.bits = a.value;
            m.argmax = a.p;
        }
        if m.upper_bits - m.bits <= CERT_TOL {
            break;
        }
    }
    Ok(best.expect("at least one start"))
}

fn corner_of(f: &dyn SpectralPoint, g: &Graph) -> Result<ConvexCorner> {
    f.corner(g)
        .ok_or_else(|| Error::Unsupported(format!("{} has no corner construction", f.name())))?
}

/// `F*(G, P) = H(P) - F(Ḡ, P)` in bits.
pub fn complementary_refinement(f: &dyn SpectralPoint, g: &Graph, p: &[f64]) -> Result<f64> {
    let r = Complementary {
        complement_corner: corner_of(f, &g.complement())?,
    };
    Ok(r.evaluate(p)?.0)
}

/// `f*(G) = max_P 2^{F*(G, P)}`.
pub fn f_star(f: &dyn SpectralPoint, g: &Graph, seed: u64) -> Result<(ParamValue, Maximum)> {
    if g.order() == 0 {
        return Ok((ParamValue::integer(0), empty_maximum()));
    }
    let r = Complementary {
        complement_corner: corner_of(f, &g.complement())?,
    };
    let m = maximize_refinement(&r, seed)?;
    Ok((to_value(&m), m))
}

/// `f_λ(G) = max_P 2^{(1-λ) F_0(G,P) + λ F_1(G,P)}` for two spectral points
/// with corners.
pub fn combine_lambda(
    f0: &dyn SpectralPoint,
    f1: &dyn SpectralPoint,
    lambda: f64,
    g: &Graph,
    seed: u64,
) -> Result<(ParamValue, Maximum)> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::Domain(format!("λ = {lambda} outside [0, 1]")));
    }
    if g.order() == 0 {
        return Ok((ParamValue::integer(0), empty_maximum()));
    }
    let r0 = CornerRefinement {
        corner: corner_of(f0, g)?,
    };
    let r1 = CornerRefinement {
        corner: corner_of(f1, g)?,
    };
    let m = maximize_refinement(
        &Combined {
            f0: &r0,
            f1: &r1,
            lambda,
        },
        seed,
    )?;
    Ok((to_value(&m), m))
}

fn empty_maximum() -> Maximum {
    Maximum {
        bits: f64::NEG_INFINITY,
        upper_bits: f64::NEG_INFINITY,
        argmax: Vec::new(),
        starts: 0,
        iterations: 0,
    }
}

fn to_value(m: &Maximum) -> ParamValue {
    let lo = m.bits.exp2();
    let hi = m.upper_bits.exp2();
    ParamValue::float(lo, (hi - lo).max(0.0) + 1e-9 * lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corners::vertex_packing;
    use crate::params::{FractionalCliqueCover, Theta};

    #[test]
    fn maximum_of_corner_entropy_is_the_parameter() {
        // max_P H_{VP(Ḡ)}(P) = log χ̄_f(G)
        for g in [Graph::cycle(5), Graph::path(4), Graph::cycle(7), Graph::complete_bipartite(2, 3)] {
            let r = CornerRefinement {
                corner: vertex_packing(&g.complement()).unwrap(),
            };
            let m = maximize_refinement(&r, 7).unwrap();
            let exact = crate::params::fractional_clique_cover(&g).unwrap().to_f64().log2();
            assert!((m.bits - exact).abs() < 1e-5, "{} vs {exact}", m.bits);
            assert!(m.upper_bits >= exact - 1e-9);
        }
    }

    #[test]
    fn complementary_function_of_fractional_cover_is_alpha() {
        for (g, alpha) in [(Graph::cycle(5), 2.0), (Graph::empty(4), 4.0), (Graph::path(4), 2.0)] {
            let (v, _) = f_star(&FractionalCliqueCover, &g, 1).unwrap();
            assert!((v.to_f64() - alpha).abs() < 1e-3, "{v}");
        }
    }

    #[test]
    fn theta_is_self_complementary_on_the_cycle() {
        let u = [0.2; 5];
        let fs = complementary_refinement(&Theta, &Graph::cycle(5), &u).unwrap();
        assert!((fs - 0.5 * 5f64.log2()).abs() < 1e-6);
    }

    #[test]
    fn lambda_endpoints() {
        let c5 = Graph::cycle(5);
        let (v0, _) = combine_lambda(&FractionalCliqueCover, &Theta, 0.0, &c5, 3).unwrap();
        assert!((v0.to_f64() - 2.5).abs() < 1e-4);
        let (v1, _) = combine_lambda(&FractionalCliqueCover, &Theta, 1.0, &c5, 3).unwrap();
        assert!((v1.to_f64() - 5f64.sqrt()).abs() < 1e-4);
        let (vh, _) = combine_lambda(&FractionalCliqueCover, &Theta, 0.5, &c5, 3).unwrap();
        assert!((vh.to_f64() - (2.5 * 5f64.sqrt()).sqrt()).abs() < 1e-4);
    }
}
