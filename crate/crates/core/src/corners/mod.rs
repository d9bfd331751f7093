//! Convex corners: compact convex down-closed subsets of the nonnegative
//! orthant with nonempty interior, their entropy functionals and the
//! operations relating them.

mod antiblocker;
mod entropy;
mod geometry;
mod reconstruct;
mod theta_body;

use std::fmt;
use std::sync::Arc;

use num::{BigRational, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use antiblocker::{antiblocker, ANTIBLOCKER_GUARD};
pub use entropy::{entropy, entropy_certificate, EntropyResult, ENTROPY_TOL};
pub use geometry::{contains, contains_exact, gauge_exact, halton_directions, hausdorff_distance, support};
pub use reconstruct::corner_from_entropy;
pub use theta_body::{BarrierResult, ThetaBody, MEMBERSHIP_SLACK};

use crate::error::{Error, Result};
use crate::graph::{Graph, Label};
use crate::params::maximal_independent_sets;
use crate::types::parse_rational;

/// Membership and linear maximization for corners without a finite
/// description.
pub trait CornerOracle: Send + Sync + fmt::Debug {
    fn dim(&self) -> usize;

    /// Whether `a` lies in the corner, up to `tol`.
    fn contains(&self, a: &[f64], tol: f64) -> Result<bool>;

    /// `max ⟨w, x⟩` over the corner for `w ≥ 0`, with a maximizer.
    fn support(&self, w: &[f64]) -> Result<(f64, Vec<f64>)>;

    /// A specialized solver for `min -Σ P ln a` (natural log), if any,
    /// returning the value and a minimizer.
    fn entropy_nats(&self, _p: &[f64]) -> Option<Result<(f64, Vec<f64>)>> {
        None
    }

    /// A closed-form antiblocker, if known.
    fn antiblocker(&self) -> Option<Arc<dyn CornerOracle>> {
        None
    }

    fn describe(&self) -> String;
}

#[derive(Clone, Debug)]
pub enum Representation {
    /// Down-closure of the convex hull of finitely many points.
    Generators(Vec<Vec<BigRational>>),
    Oracle(Arc<dyn CornerOracle>),
}

#[derive(Clone, Debug)]
pub struct ConvexCorner {
    ground: Vec<Label>,
    repr: Representation,
}

impl ConvexCorner {
    /// Down-closed hull of `generators`. Every coordinate must be positive in
    /// some generator (nonempty interior).
    pub fn from_generators(ground: Vec<Label>, generators: Vec<Vec<BigRational>>) -> Result<Self> {
        let d = ground.len();
        if generators.iter().any(|g| g.len() != d) {
            return Err(Error::Shape(format!("generators must have {d} coordinates")));
        }
        if generators.iter().flatten().any(Signed::is_negative) {
            return Err(Error::DegenerateCorner("negative generator coordinate".into()));
        }
        if let Some(x) = (0..d).find(|&x| generators.iter().all(|g| g[x].is_zero())) {
            return Err(Error::DegenerateCorner(format!(
                "coordinate {} is zero on every generator (empty interior)",
                ground[x]
            )));
        }
        Ok(ConvexCorner {
            ground,
            repr: Representation::Generators(generators),
        })
    }

    pub fn from_oracle(ground: Vec<Label>, oracle: Arc<dyn CornerOracle>) -> Result<Self> {
        if oracle.dim() != ground.len() {
            return Err(Error::Shape("oracle dimension differs from ground set".into()));
        }
        Ok(ConvexCorner {
            ground,
            repr: Representation::Oracle(oracle),
        })
    }

    /// `{a ≥ 0 : Σ a ≤ 1}` on `0..d`.
    pub fn unit_corner(d: usize) -> Self {
        let gens = (0..d)
            .map(|i| (0..d).map(|j| rat(i == j)).collect())
            .collect();
        Self::from_generators(indexed(d), gens).expect("unit vectors span")
    }

    /// `[0,1]^d`.
    pub fn unit_cube(d: usize) -> Self {
        Self::from_generators(indexed(d), vec![vec![BigRational::one(); d]])
            .expect("all-ones is interior")
    }

    pub fn ground(&self) -> &[Label] {
        &self.ground
    }

    pub fn dim(&self) -> usize {
        self.ground.len()
    }

    pub fn representation(&self) -> &Representation {
        &self.repr
    }

    pub fn generators(&self) -> Option<&[Vec<BigRational>]> {
        match &self.repr {
            Representation::Generators(g) => Some(g),
            Representation::Oracle(_) => None,
        }
    }

    pub fn generators_f64(&self) -> Option<Vec<Vec<f64>>> {
        self.generators().map(|gs| {
            gs.iter()
                .map(|g| g.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect())
                .collect()
        })
    }

    pub fn oracle(&self) -> Option<&Arc<dyn CornerOracle>> {
        match &self.repr {
            Representation::Oracle(o) => Some(o),
            Representation::Generators(_) => None,
        }
    }

    /// The corner with redundant generators removed: duplicates and points
    /// dominated coordinatewise by another generator.
    pub fn pruned(&self) -> Self {
        match &self.repr {
            Representation::Generators(gs) => ConvexCorner {
                ground: self.ground.clone(),
                repr: Representation::Generators(maximal_points(gs.clone())),
            },
            Representation::Oracle(_) => self.clone(),
        }
    }

    /// `{"ground": [...], "generators": [["1/2", ...], ...]}`; oracle corners
    /// have no finite serialization.
    pub fn to_json(&self) -> Result<String> {
        let gens = self
            .generators()
            .ok_or_else(|| Error::Unsupported("oracle corners are not serializable".into()))?;
        let j = CornerJson {
            ground: self.ground.clone(),
            generators: gens
                .iter()
                .map(|g| g.iter().map(|x| x.to_string()).collect())
                .collect(),
        };
        Ok(serde_json::to_string(&j).expect("corner serializes"))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: CornerJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("corner JSON: {e}")))?;
        let gens = j
            .generators
            .iter()
            .map(|g| g.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_generators(j.ground, gens)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CornerJson {
    pub ground: Vec<Label>,
    pub generators: Vec<Vec<String>>,
}

fn rat(b: bool) -> BigRational {
    if b {
        BigRational::one()
    } else {
        BigRational::zero()
    }
}

fn indexed(d: usize) -> Vec<Label> {
    (0..d).map(Label::Index).collect()
}

/// Sorted, deduplicated points not dominated by another point.
pub(crate) fn maximal_points(mut points: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    points.sort();
    points.dedup();
    let dominated = |p: &Vec<BigRational>, q: &Vec<BigRational>| p != q && p.iter().zip(q).all(|(a, b)| a <= b);
    let keep: Vec<bool> = points
        .iter()
        .map(|p| !points.iter().any(|q| dominated(p, q)))
        .collect();
    points
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect()
}

/// `VP(G)`: generated by the characteristic vectors of the maximal
/// independent sets.
pub fn vertex_packing(g: &Graph) -> Result<ConvexCorner> {
    let n = g.order();
    let gens = maximal_independent_sets(g)?
        .into_iter()
        .map(|s| (0..n).map(|v| rat(s.contains(&v))).collect())
        .collect();
    ConvexCorner::from_generators(g.labels().to_vec(), gens)
}

/// `TH(G)` as an oracle corner.
pub fn theta_body(g: &Graph) -> Result<ConvexCorner> {
    ConvexCorner::from_oracle(g.labels().to_vec(), Arc::new(ThetaBody::new(g)))
}

/// `A ⊗ B` on `X × Y` (row-major, paired labels), for generator corners.
pub fn tensor_product(a: &ConvexCorner, b: &ConvexCorner) -> Result<ConvexCorner> {
    let (ga, gb) = match (a.generators(), b.generators()) {
        (Some(x), Some(y)) => (x, y),
        _ => {
            return Err(Error::Unsupported(
                "tensor products need generator corners".into(),
            ))
        }
    };
    let ground = a
        .ground
        .iter()
        .flat_map(|x| b.ground.iter().map(move |y| Label::pair(x.clone(), y.clone())))
        .collect();
    let gens = ga
        .iter()
        .flat_map(|g| {
            gb.iter()
                .map(move |h| g.iter().flat_map(|x| h.iter().map(move |y| x * y)).collect())
        })
        .collect();
    Ok(ConvexCorner::from_generators(ground, gens)?.pruned())
}

/// `A ⊕ B` on `X ⊔ Y` (left labels first).
pub fn direct_sum(a: &ConvexCorner, b: &ConvexCorner) -> Result<ConvexCorner> {
    let (ga, gb) = match (a.generators(), b.generators()) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(Error::Unsupported("direct sums need generator corners".into())),
    };
    let ground = a
        .ground
        .iter()
        .cloned()
        .map(Label::left)
        .chain(b.ground.iter().cloned().map(Label::right))
        .collect();
    let zeros_a = vec![BigRational::zero(); a.dim()];
    let zeros_b = vec![BigRational::zero(); b.dim()];
    let gens = ga
        .iter()
        .map(|g| g.iter().chain(&zeros_b).cloned().collect())
        .chain(gb.iter().map(|h| zeros_a.iter().chain(h).cloned().collect()))
        .collect();
    ConvexCorner::from_generators(ground, gens)
}

/// `f^*(B) = {a ≥ 0 : ∃ b ∈ B, a_x ≤ b_{f(x)}}` for `f: X → Y` given as
/// `map[x] = f(x)`, with `ground` labelling `X`.
pub fn pullback(map: &[usize], ground: Vec<Label>, b: &ConvexCorner) -> Result<ConvexCorner> {
    if map.len() != ground.len() {
        return Err(Error::Shape("map length differs from ground set".into()));
    }
    if let Some(&y) = map.iter().find(|&&y| y >= b.dim()) {
        return Err(Error::VertexOutOfRange {
            vertex: y,
            order: b.dim(),
        });
    }
    match &b.repr {
        Representation::Generators(gs) => {
            let gens = gs
                .iter()
                .map(|g| map.iter().map(|&y| g[y].clone()).collect())
                .collect();
            ConvexCorner::from_generators(ground, gens)
        }
        Representation::Oracle(o) => ConvexCorner::from_oracle(
            ground,
            Arc::new(PullbackOracle {
                map: map.to_vec(),
                inner: o.clone(),
            }),
        ),
    }
}

#[derive(Debug)]
struct PullbackOracle {
    map: Vec<usize>,
    inner: Arc<dyn CornerOracle>,
}

impl CornerOracle for PullbackOracle {
    fn dim(&self) -> usize {
        self.map.len()
    }

    fn contains(&self, a: &[f64], tol: f64) -> Result<bool> {
        if a.iter().any(|&x| x < -tol) {
            return Ok(false);
        }
        let mut b = vec![0.0f64; self.inner.dim()];
        for (x, &y) in self.map.iter().enumerate() {
            b[y] = b[y].max(a[x]);
        }
        self.inner.contains(&b, tol)
    }

    fn support(&self, w: &[f64]) -> Result<(f64, Vec<f64>)> {
        let mut pushed = vec![0.0; self.inner.dim()];
        for (x, &y) in self.map.iter().enumerate() {
            pushed[y] += w[x];
        }
        let (value, b) = self.inner.support(&pushed)?;
        Ok((value, self.map.iter().map(|&y| b[y]).collect()))
    }

    fn describe(&self) -> String {
        format!("pullback of {}", self.inner.describe())
    }
}
