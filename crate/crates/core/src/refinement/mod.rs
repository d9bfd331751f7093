//! Probabilistic refinements `F(G, P)`: lower estimates from type graphs,
//! exact values from convex corners, their complements and combinations.

mod example;
mod optimize;

use rayon::prelude::*;
use serde::Serialize;

pub use example::{
    combined_upper_bound, reproduce_incomparable_example, ExampleReport, ExampleValue, GraphExpr,
    Provenance,
};
pub use optimize::{
    combine_lambda, complementary_refinement, f_star, maximize_refinement, Combined,
    Complementary, CornerRefinement, Maximum, Refinement,
};

use crate::corners::{entropy, ConvexCorner};
use crate::error::{Error, Result};
use crate::graph::{strong_power, to_graph6, Graph};
use crate::params::{chromatic_number, independence_number, SpectralPoint, CHROMATIC_GUARD};
use crate::types::{binary_entropy, type_graph, NType, TypeGraphSpec};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Method {
    Fekete { k_max: u64 },
    Corner,
    FixtureArithmetic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Lower,
    Upper,
    ExactWithinTolerance,
}

/// One step of a Fekete trace.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TracePoint {
    pub k: u64,
    /// Block length `k·m` of the type graph.
    pub n: u64,
    pub vertices: usize,
    /// `(1/km) log f(type graph)`.
    pub bits: f64,
    /// Running maximum of `bits`, the certified lower bound after step `k`.
    pub best: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RefinementEstimate {
    /// graph6 encoding of the base graph.
    pub graph: String,
    pub param: String,
    pub distribution: Vec<f64>,
    pub method: Method,
    pub bits: f64,
    pub direction: Direction,
    pub trace: Vec<TracePoint>,
}

/// `max_{k ≤ k_max} (1/km) log f(G^{⊠km}[T_{kP}])` for an `m`-type `P`: a
/// lower bound on `F(G, P)` by superadditivity. The raw per-`k` values are
/// kept in the trace.
pub fn fekete_estimate(
    f: &dyn SpectralPoint,
    g: &Graph,
    p: &NType,
    k_max: u64,
) -> Result<RefinementEstimate> {
    if k_max == 0 {
        return Err(Error::Domain("k_max must be at least 1".into()));
    }
    if p.alphabet_size() != g.order() {
        return Err(Error::Shape(format!(
            "type over {} symbols for a graph on {} vertices",
            p.alphabet_size(),
            g.order()
        )));
    }
    let m = p.n();
    let steps: Vec<(u64, usize, f64)> = (1..=k_max)
        .into_par_iter()
        .map(|k| {
            let spec = TypeGraphSpec::exact(g.clone(), p.scaled(k))?;
            let t = type_graph(&spec)?;
            let value = f.evaluate(&t)?.to_f64();
            Ok((k, t.order(), value.max(1.0).log2() / (k * m) as f64))
        })
        .collect::<Result<_>>()?;
    let mut best = f64::NEG_INFINITY;
    let trace: Vec<TracePoint> = steps
        .into_iter()
        .map(|(k, vertices, bits)| {
            best = best.max(bits);
            TracePoint {
                k,
                n: k * m,
                vertices,
                bits,
                best,
            }
        })
        .collect();
    Ok(RefinementEstimate {
        graph: to_graph6(g),
        param: f.name().to_string(),
        distribution: p.probabilities(),
        method: Method::Fekete { k_max },
        bits: best,
        direction: Direction::Lower,
        trace,
    })
}

/// `F(G, P) = H_{C_f(G)}(P)` in bits, for a corner on `V(G)`.
pub fn refinement_via_corner(corner: &ConvexCorner, p: &[f64]) -> Result<f64> {
    Ok(entropy(corner, p)?.bits.max(0.0))
}

/// Corner-based refinement of a spectral point, packaged as an estimate.
pub fn corner_estimate(f: &dyn SpectralPoint, g: &Graph, p: &[f64]) -> Result<RefinementEstimate> {
    let corner = f
        .corner(g)
        .ok_or_else(|| Error::Unsupported(format!("{} has no corner construction", f.name())))??;
    Ok(RefinementEstimate {
        graph: to_graph6(g),
        param: f.name().to_string(),
        distribution: p.to_vec(),
        method: Method::Corner,
        bits: refinement_via_corner(&corner, p)?,
        direction: Direction::ExactWithinTolerance,
        trace: Vec::new(),
    })
}

/// `(δ/2) log(|V|-1) + h(δ/2) + 2(1 - h((2+δ)/4))` for `δ = ‖P - Q‖₁`.
pub fn continuity_bound(vertex_count: usize, l1_distance: f64) -> Result<f64> {
    if !(0.0..=2.0 + 1e-12).contains(&l1_distance) {
        return Err(Error::Domain(format!("L1 distance {l1_distance} outside [0, 2]")));
    }
    let d = l1_distance.min(2.0);
    let spread = if vertex_count > 1 {
        d / 2.0 * ((vertex_count - 1) as f64).log2()
    } else {
        0.0
    };
    Ok(spread + binary_entropy(d / 2.0) + 2.0 * (1.0 - binary_entropy((2.0 + d) / 4.0)))
}

/// `(1/km) log α(G^{⊠km}[T_{kP}])`, a lower bound on the capacity within
/// the type class of `P`.
pub fn capacity_within_type_lower(g: &Graph, p: &NType, k: u64) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let t = type_graph(&TypeGraphSpec::exact(g.clone(), p.scaled(k))?)?;
    let alpha = independence_number(&t)?;
    Ok((alpha.max(1) as f64).log2() / (k * p.n()) as f64)
}

/// `(1/n) log χ(G^{⊠n})`, an upper bound on the Witsenhausen rate since
/// `log χ` is subadditive under the strong product.
pub fn witsenhausen_upper(g: &Graph, n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let size = (g.order() as u128).checked_pow(n).unwrap_or(u128::MAX);
    if size > CHROMATIC_GUARD as u128 {
        return Err(Error::SizeGuard {
            what: "strong power for the Witsenhausen bound",
            size: size.min(usize::MAX as u128) as usize,
            limit: CHROMATIC_GUARD,
        });
    }
    let chi = chromatic_number(&strong_power(g, n as usize))?;
    Ok((chi.max(1) as f64).log2() / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corners::vertex_packing;
    use crate::params::{FractionalCliqueCover, Theta};

    #[test]
    fn fekete_on_two_isolated_vertices() {
        let p = NType::indexed(vec![1, 1]).unwrap();
        let est = fekete_estimate(&FractionalCliqueCover, &Graph::empty(2), &p, 3).unwrap();
        assert_eq!(est.trace.len(), 3);
        // type graphs are edgeless: (1/2k) log C(2k, k)
        let expected = [2f64.log2() / 2.0, 6f64.log2() / 4.0, 20f64.log2() / 6.0];
        for (t, e) in est.trace.iter().zip(expected) {
            assert!((t.bits - e).abs() < 1e-12);
        }
        assert!((est.bits - 20f64.log2() / 6.0).abs() < 1e-12);
        assert!(est.bits < 1.0);
    }

    #[test]
    fn fekete_on_complete_graphs_is_zero() {
        let p = NType::indexed(vec![1, 1]).unwrap();
        let est = fekete_estimate(&Theta, &Graph::complete(2), &p, 3).unwrap();
        assert!(est.trace.iter().all(|t| t.bits.abs() < 1e-6));
    }

    #[test]
    fn fekete_theta_on_the_cycle() {
        let p = NType::indexed(vec![1; 5]).unwrap();
        let est = fekete_estimate(&Theta, &Graph::cycle(5), &p, 1).unwrap();
        assert!(est.bits <= 0.5 * 5f64.log2() + 1e-4, "{}", est.bits);
    }

    #[test]
    fn corner_values() {
        let u = [0.2; 5];
        let th = corner_estimate(&Theta, &Graph::cycle(5), &u).unwrap();
        assert!((th.bits - 0.5 * 5f64.log2()).abs() < 1e-6);
        let e = corner_estimate(&FractionalCliqueCover, &Graph::empty(4), &[0.25; 4]).unwrap();
        assert!((e.bits - 2.0).abs() < 1e-8);
        let vp = vertex_packing(&Graph::cycle(5)).unwrap();
        assert!(refinement_via_corner(&vp, &[0.0, 0.0, 1.0, 0.0, 0.0]).unwrap().abs() < 1e-12);
    }

    #[test]
    fn continuity_examples() {
        assert!(continuity_bound(5, 0.0).unwrap().abs() < 1e-12);
        assert!((continuity_bound(2, 2.0).unwrap() - 2.0).abs() < 1e-12);
        assert!((continuity_bound(5, 0.2).unwrap() - 0.6834).abs() < 1e-3);
        assert!(continuity_bound(3, 2.5).is_err());
    }

    #[test]
    fn capacity_and_rate_bounds() {
        assert!((witsenhausen_upper(&Graph::complete(4), 1).unwrap() - 2.0).abs() < 1e-12);
        // χ(C5 ⊠ C5) = 5
        assert!((witsenhausen_upper(&Graph::cycle(5), 2).unwrap() - 0.5 * 5f64.log2()).abs() < 1e-12);
        let p = NType::indexed(vec![1, 1, 1, 1, 1]).unwrap();
        let c = capacity_within_type_lower(&Graph::cycle(5), &p, 1).unwrap();
        assert!(c <= 0.5 * 5f64.log2() + 1e-9);
        assert!(c > 0.0);
    }
}
