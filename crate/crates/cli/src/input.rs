//! Reading graphs, distributions and corners from the command line.

use std::fs;
use std::path::Path;

use num::{BigRational, Zero};
use spectrum_core::corners::ConvexCorner;
use spectrum_core::graph::{from_graph6, from_json, Graph};
use spectrum_core::params::named_graph;
use spectrum_core::types::ExactDist;

/// A parsed graph and how it was named on the command line.
pub struct GraphInput {
    pub graph: Graph,
    /// Set for named graphs, which may have bundled parameter values.
    pub name: Option<String>,
}

fn read(path: &str) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
}

/// `g6:<graph6>`, a graph name such as `C5` or `Petersen`, or a file with a
/// JSON edge list or a graph6 line.
pub fn graph(spec: &str) -> Result<GraphInput, String> {
    if let Some(code) = spec.strip_prefix("g6:") {
        let graph = from_graph6(code).map_err(|e| format!("--graph {spec}: {e}"))?;
        return Ok(GraphInput { graph, name: None });
    }
    if !Path::new(spec).exists() {
        return match named_graph(spec) {
            Ok(graph) => Ok(GraphInput {
                graph,
                name: Some(spec.to_string()),
            }),
            Err(e) => Err(format!("--graph {spec}: not a file, and {e}")),
        };
    }
    let text = read(spec)?;
    let trimmed = text.trim_start();
    let graph = if trimmed.starts_with('{') {
        from_json(trimmed)
    } else {
        let line = trimmed.lines().next().unwrap_or("");
        from_graph6(line.trim())
    }
    .map_err(|e| format!("{spec}: {e}"))?;
    Ok(GraphInput { graph, name: None })
}

/// A distribution over the vertices of `g`, as floats in vertex order:
/// `uniform`, inline JSON, or a JSON file `{"labels": [...], "weights": [...]}`.
/// Labels must name vertices of `g`; unlisted vertices get weight zero.
pub fn distribution(spec: Option<&str>, g: &Graph) -> Result<(Vec<f64>, ExactDist), String> {
    let n = g.order();
    let spec = match spec {
        None | Some("uniform") => {
            if n == 0 {
                return Err("no distributions on the empty graph".into());
            }
            let labels = g.labels().to_vec();
            let d = ExactDist::uniform(labels).map_err(|e| e.to_string())?;
            return Ok((vec![1.0 / n as f64; n], d));
        }
        Some(s) => s,
    };
    let (origin, text) = if spec.trim_start().starts_with('{') {
        ("--dist".to_string(), spec.to_string())
    } else {
        (spec.to_string(), read(spec)?)
    };
    let d = ExactDist::from_json(&text).map_err(|e| format!("{origin}: {e}"))?;
    let mut p = vec![0.0; n];
    let mut exact = vec![BigRational::zero(); n];
    for ((label, w), wf) in d.labels().iter().zip(d.weights()).zip(d.to_f64()) {
        let v = g.index_of(label).ok_or_else(|| format!("{origin}: label {label} is not a vertex"))?;
        p[v] += wf;
        exact[v] += w;
    }
    let aligned = ExactDist::new(g.labels().to_vec(), exact).map_err(|e| format!("{origin}: {e}"))?;
    Ok((p, aligned))
}

/// A corner from a JSON file `{"ground": [...], "generators": [[...], ...]}`.
pub fn corner(path: &str) -> Result<ConvexCorner, String> {
    ConvexCorner::from_json(&read(path)?).map_err(|e| format!("{path}: {e}"))
}
