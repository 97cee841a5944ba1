use std::path::Path;

use matroid_theta::{catalog, io, Matroid, Result};

/// Where a matroid argument came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InputKind {
    Catalog,
    Json,
    EdgeList,
}

/// A file holding matroid JSON or a graph edge list, otherwise a catalog name.
pub fn resolve(arg: &str) -> Result<(Matroid, InputKind)> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| matroid_theta::Error::Parse(e.to_string()))?;
        return parse_text(&text);
    }
    catalog::catalog(arg).map(|m| (m, InputKind::Catalog))
}

pub fn parse_text(text: &str) -> Result<(Matroid, InputKind)> {
    if text.trim_start().starts_with('{') {
        io::matroid_from_json(text).map(|m| (m, InputKind::Json))
    } else {
        io::graph_from_edge_list(text).map(|g| (g.graphic_matroid(), InputKind::EdgeList))
    }
}
