//! Text formats for matroids and graphs.
//!
//! Matroid JSON: `{"n":4,"bases":[[0,1],[0,2]]}` with 0-indexed, sorted bases.
//! Graph edge list: a line `n m`, then `m` lines `u v`; edge `i` becomes
//! matroid element `i`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matroid::Matroid;

#[derive(Debug, Serialize, Deserialize)]
struct MatroidJson {
    n: usize,
    bases: Vec<Vec<usize>>,
}

pub fn matroid_from_json(text: &str) -> Result<Matroid> {
    let raw: MatroidJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Matroid::from_basis_lists(raw.n, &raw.bases)
}

/// Compact JSON with bases in canonical order; parsing it back and
/// serializing again reproduces the same bytes.
pub fn matroid_to_json(m: &Matroid) -> String {
    let raw = MatroidJson { n: m.ground_size(), bases: m.basis_lists() };
    serde_json::to_string(&raw).expect("plain data serializes")
}

pub fn graph_from_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let parse_pair = |line: &str| -> Result<(usize, usize)> {
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("not a number: `{t}`"))))
            .collect::<Result<_>>()?;
        match nums[..] {
            [a, b] => Ok((a, b)),
            _ => Err(Error::Parse(format!("expected two numbers, got `{line}`"))),
        }
    };
    let header = lines.next().ok_or_else(|| Error::Parse("empty edge list".into()))?;
    let (n, m) = parse_pair(header)?;
    let edges: Vec<(usize, usize)> = lines.map(parse_pair).collect::<Result<_>>()?;
    if edges.len() != m {
        return Err(Error::Parse(format!("header announces {m} edges, found {}", edges.len())));
    }
    Graph::new(n, edges)
}

pub fn graph_to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn json_round_trip_is_byte_identical() {
        let text = r#"{"n":4,"bases":[[0,1],[0,2],[0,3],[1,2],[1,3]]}"#;
        let m = matroid_from_json(text).unwrap();
        assert_eq!(m.bases().len(), 5);
        assert_eq!(matroid_to_json(&m), text);
        for (_, m) in catalog::excluded_minors() {
            let s = matroid_to_json(&m);
            assert_eq!(matroid_to_json(&matroid_from_json(&s).unwrap()), s);
        }
    }

    #[test]
    fn json_accepts_spacing_and_rejects_bad_input() {
        let m = matroid_from_json(r#"{"n": 2, "bases": [[1], [0]]}"#).unwrap();
        assert_eq!(matroid_to_json(&m), r#"{"n":2,"bases":[[0],[1]]}"#);
        assert!(matches!(matroid_from_json("{\"n\":2}"), Err(Error::Parse(_))));
        assert!(matches!(matroid_from_json(r#"{"n":2,"bases":[[0],[0,1]]}"#), Err(Error::MixedCardinality(..))));
    }

    #[test]
    fn edge_list_round_trip() {
        let text = "4 5\n0 1\n1 2\n2 3\n3 0\n0 2\n";
        let g = graph_from_edge_list(text).unwrap();
        assert_eq!(g.edge_count(), 5);
        assert_eq!(graph_to_edge_list(&g), text);
        assert_eq!(g.graphic_matroid().rank(), 3);
        assert!(graph_from_edge_list("3 2\n0 1\n").is_err());
        assert!(graph_from_edge_list("3 1\n0 7\n").is_err());
        assert!(graph_from_edge_list("3 1\n0 x\n").is_err());
    }
}
