//! graph6 and JSON edge-list formats.

use serde::{Deserialize, Serialize};

use super::{Graph, Label};
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

/// Parses a graph6 string (an optional `>>graph6<<` header is accepted).
pub fn from_graph6(text: &str) -> Result<Graph> {
    let text = text.trim();
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse(format!("graph6: byte outside 63..=126 in {text:?}")));
    }
    let (n, rest) = match bytes {
        [] => return Err(Error::Parse("graph6: empty string".into())),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::Parse("graph6: truncated size".into()));
            }
            (sextets(&rest[..6]), &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::Parse("graph6: truncated size".into()));
            }
            (sextets(&rest[..3]), &rest[3..])
        }
        [b, rest @ ..] => ((b - 63) as usize, rest),
    };
    let bits_needed = n * n.saturating_sub(1) / 2;
    if rest.len() != bits_needed.div_ceil(6) {
        return Err(Error::Parse(format!(
            "graph6: expected {} data bytes for n={n}, found {}",
            bits_needed.div_ceil(6),
            rest.len()
        )));
    }
    let bit = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.set_edge(i, j, true);
            }
            k += 1;
        }
    }
    Ok(g)
}

fn sextets(bytes: &[u8]) -> usize {
    bytes.iter().fold(0, |acc, &b| acc << 6 | (b - 63) as usize)
}

/// Encodes the graph in graph6 (labels are dropped).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// `{"n": 5, "edges": [[0,1],...], "labels": [...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Label>>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        let default_labels = g
            .labels()
            .iter()
            .enumerate()
            .all(|(i, l)| *l == Label::Index(i));
        GraphJson {
            n: g.order(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            labels: (!default_labels).then(|| g.labels().to_vec()),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Graph> {
        let edges: Vec<(usize, usize)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        let g = Graph::from_edges(j.n, &edges)?;
        match j.labels {
            Some(labels) => {
                let mut sorted = labels.clone();
                sorted.sort();
                sorted.dedup();
                if sorted.len() != labels.len() {
                    return Err(Error::Parse("graph JSON: duplicate vertex labels".into()));
                }
                g.relabeled(labels)
            }
            None => Ok(g),
        }
    }
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("graph JSON serializes")
}

pub fn from_json(text: &str) -> Result<Graph> {
    let j: GraphJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("graph JSON: {e}")))?;
    Graph::try_from(j)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_graph6_strings() {
        // a-c, a-e, b-d, d-e
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(from_graph6("DQc").unwrap(), g);
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert_eq!(from_graph6("@").unwrap(), Graph::empty(1));
        assert_eq!(from_graph6(">>graph6<<A_").unwrap(), Graph::complete(2));
    }

    #[test]
    fn long_size_prefix() {
        let g = Graph::cycle(70);
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn malformed_graph6() {
        assert!(from_graph6("").is_err());
        assert!(from_graph6("D").is_err());
        assert!(from_graph6("D\u{7f}c").is_err());
    }

    #[test]
    fn json_round_trip_keeps_labels() {
        let g = super::super::strong_product(&Graph::path(2), &Graph::cycle(3));
        let s = to_json(&g);
        assert_eq!(from_json(&s).unwrap(), g);
        let plain = to_json(&Graph::cycle(4));
        assert_eq!(plain, r#"{"n":4,"edges":[[0,1],[0,3],[1,2],[2,3]]}"#);
    }

    #[test]
    fn json_rejects_bad_edges() {
        assert!(from_json(r#"{"n":2,"edges":[[0,2]]}"#).is_err());
        assert!(from_json(r#"{"n":2,"edges":[[1,1]]}"#).is_err());
        assert!(from_json(r#"{"n":2,"edges":[],"labels":["a","a"]}"#).is_err());
    }
}
