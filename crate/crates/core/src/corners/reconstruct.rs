//! Recovering a corner from its entropy function. The homogeneous extension
//! `F̃(x) = |x| F(x/|x|)` is concave with supergradient `-log a*(P)` at `P`,
//! where `a*(P)` attains `H_A(P)`; sampling it on a grid and taking the
//! down-closed hull of the points `2^{-∇F̃(P)}` gives an inner approximation.

use num::BigRational;

use super::ConvexCorner;
use crate::error::{Error, Result};
use crate::graph::Label;

const MAX_DIM: usize = 3;
/// Allowed violation of `⟨P, -log a_Q⟩ ≥ F(P)` across grid points, in bits.
const SANDWICH_SLACK: f64 = 1e-4;

fn compositions(d: usize, total: usize) -> Vec<Vec<usize>> {
    if d == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|k| {
            compositions(d - 1, total - k).into_iter().map(move |mut rest| {
                rest.insert(0, k);
                rest
            })
        })
        .collect()
}

/// Generator approximation of the corner whose entropy function (in bits)
/// is `f`, from the grid of distributions with denominator `steps`.
pub fn corner_from_entropy<F>(ground: Vec<Label>, f: F, steps: usize) -> Result<ConvexCorner>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let d = ground.len();
    if d == 0 || d > MAX_DIM {
        return Err(Error::SizeGuard {
            what: "corner reconstruction dimension",
            size: d,
            limit: MAX_DIM,
        });
    }
    if steps < d {
        return Err(Error::Domain(format!("grid resolution 1/{steps} has no interior points")));
    }
    let grid: Vec<Vec<f64>> = compositions(d, steps)
        .into_iter()
        .map(|c| c.iter().map(|&k| k as f64 / steps as f64).collect())
        .collect();
    let h = (0.25 / steps as f64).min(1e-3);
    let homogeneous = |x: &[f64]| -> Result<f64> {
        let s: f64 = x.iter().sum();
        let p: Vec<f64> = x.iter().map(|v| v / s).collect();
        Ok(s * f(&p)?)
    };
    let mut points = Vec::new();
    for p in grid.iter().filter(|p| p.iter().all(|&v| v > 0.0)) {
        let mut a = Vec::with_capacity(d);
        for x in 0..d {
            let mut up = p.clone();
            up[x] += h;
            let mut down = p.clone();
            down[x] -= h;
            let grad = (homogeneous(&up)? - homogeneous(&down)?) / (2.0 * h);
            a.push(2f64.powf(-grad).min(1e6));
        }
        points.push(a);
    }
    // every recovered point must respect the entropy lower bound everywhere
    let values: Vec<f64> = grid.iter().map(|p| f(p)).collect::<Result<_>>()?;
    for a in &points {
        for (p, &fp) in grid.iter().zip(&values) {
            let loss: f64 = p.iter().zip(a).filter(|(p, _)| **p > 0.0).map(|(p, a)| -p * a.log2()).sum();
            if loss < fp - SANDWICH_SLACK {
                return Err(Error::Domain(format!(
                    "non-monotone sandwich at P = {p:?}: {loss} < {fp}; the function is not an entropy function or the grid is too coarse"
                )));
            }
        }
    }
    let gens = points
        .iter()
        .map(|a| {
            a.iter()
                .map(|&v| BigRational::from_float(v).expect("finite"))
                .collect()
        })
        .collect();
    Ok(ConvexCorner::from_generators(ground, gens)?.pruned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corners::{entropy, hausdorff_distance, vertex_packing};
    use crate::graph::Graph;
    use crate::types::entropy_bits;

    fn ground(d: usize) -> Vec<Label> {
        (0..d).map(Label::Index).collect()
    }

    #[test]
    fn recovers_simplex_and_cube() {
        let s = corner_from_entropy(ground(2), |p| Ok(entropy_bits(p)), 64).unwrap();
        let d = hausdorff_distance(&s, &ConvexCorner::unit_corner(2), 1000).unwrap();
        assert!(d < 0.02, "{d}");
        let c = corner_from_entropy(ground(3), |_| Ok(0.0), 16).unwrap();
        assert!(hausdorff_distance(&c, &ConvexCorner::unit_cube(3), 1000).unwrap() < 1e-9);
    }

    #[test]
    fn recovers_path_packing() {
        let vp = vertex_packing(&Graph::path(3)).unwrap();
        let back = corner_from_entropy(ground(3), |p| Ok(entropy(&vp, p)?.bits), 64).unwrap();
        let d = hausdorff_distance(&back, &vp, 1000).unwrap();
        assert!(d < 0.05, "{d}");
    }

    #[test]
    fn rejects_non_entropy_functions() {
        // -H is convex, not concave: Gibbs' inequality breaks the sandwich
        let r = corner_from_entropy(ground(2), |p| Ok(-entropy_bits(p)), 16);
        assert!(r.is_err());
        assert!(corner_from_entropy(ground(4), |_| Ok(0.0), 8).is_err());
    }
}
