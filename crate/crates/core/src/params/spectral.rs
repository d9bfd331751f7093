//! Graph parameters packaged with their evaluation tolerance, corner
//! construction and bundled literature values.

use super::cliques::independence_number;
use super::fixtures::fixture;
use super::fractional::fractional_clique_cover;
use super::theta::lovasz_theta;
use super::value::ParamValue;
use crate::corners::{theta_body, vertex_packing, ConvexCorner};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub trait SpectralPoint: Send + Sync {
    /// Short identifier (`"theta"`, `"chibar_f"`, ...), also the fixture key.
    fn name(&self) -> &'static str;

    fn evaluate(&self, g: &Graph) -> Result<ParamValue>;

    /// Absolute tolerance of [`evaluate`](Self::evaluate); `0` for exact
    /// evaluators.
    fn tolerance(&self) -> f64;

    /// Whether the parameter is known to lie in the asymptotic spectrum.
    fn is_spectral(&self) -> bool {
        true
    }

    /// Whether the parameter is known to be multiplicative under the
    /// lexicographic product.
    fn lex_multiplicative(&self) -> bool {
        false
    }

    /// The convex corner `C_f(G)` whose entropy is the refinement, if known.
    fn corner(&self, _g: &Graph) -> Option<Result<ConvexCorner>> {
        None
    }

    fn fixture(&self, graph_id: &str) -> Option<ParamValue> {
        fixture(self.name(), graph_id).ok().map(|f| f.value.clone())
    }
}

/// `χ̄_f`, with corner `VP(Ḡ)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct FractionalCliqueCover;

impl SpectralPoint for FractionalCliqueCover {
    fn name(&self) -> &'static str {
        "chibar_f"
    }
    fn evaluate(&self, g: &Graph) -> Result<ParamValue> {
        fractional_clique_cover(g)
    }
    fn tolerance(&self) -> f64 {
        0.0
    }
    fn lex_multiplicative(&self) -> bool {
        true
    }
    fn corner(&self, g: &Graph) -> Option<Result<ConvexCorner>> {
        Some(vertex_packing(&g.complement()))
    }
}

/// Lovász `ϑ`, with corner `TH(Ḡ)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Theta;

impl SpectralPoint for Theta {
    fn name(&self) -> &'static str {
        "theta"
    }
    fn evaluate(&self, g: &Graph) -> Result<ParamValue> {
        lovasz_theta(g, None)
    }
    fn tolerance(&self) -> f64 {
        1e-4
    }
    fn lex_multiplicative(&self) -> bool {
        true
    }
    fn corner(&self, g: &Graph) -> Option<Result<ConvexCorner>> {
        Some(theta_body(&g.complement()))
    }
}

/// The independence number: monotone and normalized, additive under
/// disjoint union, but only supermultiplicative under the strong product.
/// Used as a negative control.
#[derive(Clone, Copy, Debug, Default)]
pub struct IndependenceNumber;

impl SpectralPoint for IndependenceNumber {
    fn name(&self) -> &'static str {
        "alpha"
    }
    fn evaluate(&self, g: &Graph) -> Result<ParamValue> {
        Ok(ParamValue::integer(independence_number(g)? as i64))
    }
    fn tolerance(&self) -> f64 {
        0.0
    }
    fn is_spectral(&self) -> bool {
        false
    }
}

/// The fractional Haemers bound over `GF(2)`: bundled values only.
#[derive(Clone, Copy, Debug, Default)]
pub struct HaemersF2;

impl SpectralPoint for HaemersF2 {
    fn name(&self) -> &'static str {
        "haemersF2"
    }
    fn evaluate(&self, _g: &Graph) -> Result<ParamValue> {
        Err(Error::Unsupported(
            "the fractional Haemers bound is available only as a bundled value".into(),
        ))
    }
    fn tolerance(&self) -> f64 {
        0.0
    }
}

/// Looks a parameter up by name (`alpha`, `theta`, `chibar_f`, `haemersF2`).
pub fn spectral_point(name: &str) -> Result<Box<dyn SpectralPoint>> {
    match name {
        "alpha" => Ok(Box::new(IndependenceNumber)),
        "theta" => Ok(Box::new(Theta)),
        "chibar_f" | "fcc" => Ok(Box::new(FractionalCliqueCover)),
        "haemersF2" => Ok(Box::new(HaemersF2)),
        other => Err(Error::Parse(format!(
            "unknown parameter {other:?} (expected alpha, theta, chibar_f or haemersF2)"
        ))),
    }
}
