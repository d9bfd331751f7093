use super::johnson::johnson_type_graph;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Parses graph names: `K5`, `Kbar4` (or `E4`), `C5`, `P4`, `K3,3`,
/// `Petersen`, `J2_12` (the graph `J^2_{12}`).
pub fn named_graph(name: &str) -> Result<Graph> {
    let bad = || Error::Parse(format!("unknown graph name {name:?}"));
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    if name.eq_ignore_ascii_case("petersen") {
        return Ok(Graph::petersen());
    }
    if let Some(rest) = name.strip_prefix("Kbar").or_else(|| name.strip_prefix('E')) {
        return Ok(Graph::empty(num(rest)?));
    }
    if let Some(rest) = name.strip_prefix('K') {
        return match rest.split_once(',') {
            Some((m, n)) => Ok(Graph::complete_bipartite(num(m)?, num(n)?)),
            None => Ok(Graph::complete(num(rest)?)),
        };
    }
    if let Some(rest) = name.strip_prefix('C') {
        let n = num(rest)?;
        if n < 3 {
            return Err(Error::Domain(format!("cycle needs at least 3 vertices: {name}")));
        }
        return Ok(Graph::cycle(n));
    }
    if let Some(rest) = name.strip_prefix('P') {
        return Ok(Graph::path(num(rest)?));
    }
    if let Some((p, n)) = name.strip_prefix('J').and_then(|r| r.split_once('_')) {
        return johnson_type_graph(num(n)? as u32, num(p)? as u32);
    }
    Err(bad())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        assert_eq!(named_graph("C5").unwrap(), Graph::cycle(5));
        assert_eq!(named_graph("Kbar3").unwrap(), Graph::empty(3));
        assert_eq!(named_graph("E0").unwrap(), Graph::empty(0));
        assert_eq!(named_graph("K3,3").unwrap(), Graph::complete_bipartite(3, 3));
        assert_eq!(named_graph("K4").unwrap(), Graph::complete(4));
        assert_eq!(named_graph("petersen").unwrap(), Graph::petersen());
        assert_eq!(named_graph("J2_12").unwrap().order(), 220);
        assert!(named_graph("C2").is_err());
        assert!(named_graph("Q3").is_err());
    }
}
