//! `A* = {b ≥ 0 : ⟨a, b⟩ ≤ 1 for all a ∈ A}`.

use std::f64::consts::LN_2;
use std::sync::Arc;

use num::{BigRational, One, Signed, Zero};

use super::entropy::oracle_entropy;
use super::{maximal_points, ConvexCorner, CornerOracle, Representation, MEMBERSHIP_SLACK};
use crate::error::{Error, Result};

/// Largest number of candidate vertex bases examined when enumerating the
/// vertices of an antiblocker.
pub const ANTIBLOCKER_GUARD: u128 = 2_000_000;

/// The antiblocker. Generator corners get their exact vertices; oracle
/// corners use a closed form when the oracle knows one, and otherwise a
/// membership-only oracle.
pub fn antiblocker(corner: &ConvexCorner) -> Result<ConvexCorner> {
    match corner.representation() {
        Representation::Generators(gens) => {
            let verts = vertices(gens, corner.dim())?;
            ConvexCorner::from_generators(corner.ground().to_vec(), verts)
        }
        Representation::Oracle(o) => {
            let dual: Arc<dyn CornerOracle> = match o.antiblocker() {
                Some(d) => d,
                None => Arc::new(AntiblockerOracle { inner: o.clone() }),
            };
            ConvexCorner::from_oracle(corner.ground().to_vec(), dual)
        }
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Maximal vertices of `{b ≥ 0 : ⟨g, b⟩ ≤ 1}` by checking every basis of
/// `d` tight constraints.
fn vertices(gens: &[Vec<BigRational>], d: usize) -> Result<Vec<Vec<BigRational>>> {
    let rows = d + gens.len();
    let count = binomial(rows as u128, d as u128);
    if count > ANTIBLOCKER_GUARD {
        return Err(Error::SizeGuard {
            what: "antiblocker vertex enumeration",
            size: count.min(usize::MAX as u128) as usize,
            limit: ANTIBLOCKER_GUARD as usize,
        });
    }
    // constraint r < d is b_r ≥ 0, otherwise generator r - d
    let one = BigRational::one();
    let row = |r: usize| -> Vec<BigRational> {
        if r < d {
            (0..d).map(|j| if j == r { one.clone() } else { BigRational::zero() }).collect()
        } else {
            gens[r - d].clone()
        }
    };
    let rhs = |r: usize| if r < d { BigRational::zero() } else { one.clone() };
    let mut found = Vec::new();
    let mut pick: Vec<usize> = (0..d).collect();
    loop {
        let a: Vec<Vec<BigRational>> = pick.iter().map(|&r| row(r)).collect();
        let b: Vec<BigRational> = pick.iter().map(|&r| rhs(r)).collect();
        if let Some(x) = solve(a, b) {
            let feasible = x.iter().all(|v| !v.is_negative())
                && gens
                    .iter()
                    .all(|g| g.iter().zip(&x).map(|(p, q)| p * q).sum::<BigRational>() <= one);
            if feasible {
                found.push(x);
            }
        }
        // next combination
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(maximal_points(found));
            }
            i -= 1;
            if pick[i] < rows - d + i {
                pick[i] += 1;
                for j in i + 1..d {
                    pick[j] = pick[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Unique solution of a square system, if any.
fn solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].recip();
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] * &inv;
                for c in col..n {
                    let delta = &f * &a[col][c];
                    a[r][c] -= delta;
                }
                let delta = &f * &b[col];
                b[r] -= delta;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Antiblocker of an oracle corner without a closed form: membership via the
/// inner support function, entropy via `H(P) = H_A(P) + H_{A*}(P)`.
#[derive(Debug)]
struct AntiblockerOracle {
    inner: Arc<dyn CornerOracle>,
}

impl CornerOracle for AntiblockerOracle {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn contains(&self, b: &[f64], tol: f64) -> Result<bool> {
        if b.iter().any(|&x| x < -tol) {
            return Ok(false);
        }
        let clipped: Vec<f64> = b.iter().map(|x| x.max(0.0)).collect();
        Ok(self.inner.support(&clipped)?.0 <= 1.0 + MEMBERSHIP_SLACK + tol)
    }

    fn support(&self, _w: &[f64]) -> Result<(f64, Vec<f64>)> {
        Err(Error::Unsupported(
            "linear maximization over the antiblocker of an oracle corner".into(),
        ))
    }

    fn entropy_nats(&self, p: &[f64]) -> Option<Result<(f64, Vec<f64>)>> {
        // optimal points of dual corners satisfy a_x b_x = P_x
        let shannon: f64 = p.iter().filter(|&&x| x > 0.0).map(|x| -x * x.ln()).sum();
        Some(oracle_entropy(self.inner.as_ref(), p).map(|r| {
            let b = p
                .iter()
                .zip(&r.point)
                .map(|(&p, &a)| if p > 0.0 { p / a } else { 0.0 })
                .collect();
            (shannon - r.bits * LN_2, b)
        }))
    }

    fn antiblocker(&self) -> Option<Arc<dyn CornerOracle>> {
        Some(self.inner.clone())
    }

    fn describe(&self) -> String {
        format!("antiblocker of {}", self.inner.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corners::{entropy, hausdorff_distance, theta_body, vertex_packing};
    use crate::graph::Graph;

    #[test]
    fn simplex_and_cube_are_dual() {
        let s = ConvexCorner::unit_corner(3);
        let c = antiblocker(&s).unwrap();
        assert_eq!(c.generators(), ConvexCorner::unit_cube(3).generators());
        let back = antiblocker(&c).unwrap();
        assert!(hausdorff_distance(&back, &s, 500).unwrap() < 1e-12);
        assert_eq!(back.generators().unwrap().len(), 3);
    }

    #[test]
    fn involution_on_cycle_packing() {
        let vp = vertex_packing(&Graph::cycle(5)).unwrap();
        let twice = antiblocker(&antiblocker(&vp).unwrap()).unwrap();
        assert!(hausdorff_distance(&vp, &twice, 1000).unwrap() < 1e-9);
    }

    #[test]
    fn perfect_graph_duality() {
        let p4 = Graph::path(4);
        let dual = antiblocker(&vertex_packing(&p4).unwrap()).unwrap();
        let vp = vertex_packing(&p4.complement()).unwrap();
        assert!(hausdorff_distance(&dual, &vp, 1000).unwrap() < 1e-9);
    }

    #[test]
    fn oracle_antiblockers() {
        let th = theta_body(&Graph::cycle(5)).unwrap();
        let dual = antiblocker(&th).unwrap();
        let u = [0.2; 5];
        let sum = entropy(&th, &u).unwrap().bits + entropy(&dual, &u).unwrap().bits;
        assert!((sum - 5f64.log2()).abs() < 1e-6, "{sum}");
    }
}
