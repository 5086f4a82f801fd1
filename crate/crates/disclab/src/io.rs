//! File-level interchange: JSON schemas for graphs, colourings, forced edge
//! sets, and clique-cycle metadata, plus DOT export.
//!
//! Round trips are bit-exact: parsing what `write_*` produced gives back an
//! equal value. Parse failures carry the file path and, for malformed JSON,
//! the line and column from the parser.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::colouring::{ColouringJson, EdgeColouring};
use crate::error::{Error, Result};
use crate::generators::CliqueCycle;
use crate::graph::{Graph, GraphJson};

/// Reads any of the JSON schemas in this module from a file, tagging parse
/// errors with the path (and position, for syntax errors).
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Writes a value as pretty JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    let json: GraphJson = read_json(path)?;
    Graph::from_json(&json).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn write_graph(path: &Path, g: &Graph) -> Result<()> {
    write_json(path, &g.to_json())
}

/// Reads a colouring and validates it against the graph it belongs to
/// (length must match the edge count, colours must lie in 1..=r).
pub fn read_colouring(path: &Path, g: &Graph) -> Result<EdgeColouring> {
    let json: ColouringJson = read_json(path)?;
    let f = EdgeColouring::from_json(&json)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    f.check_against(g)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok(f)
}

pub fn write_colouring(path: &Path, f: &EdgeColouring) -> Result<()> {
    write_json(path, &f.to_json())
}

/// A bare list of vertex pairs: `[[0,1],[2,3]]`. Used for forced edge sets.
pub fn read_edge_list(path: &Path) -> Result<Vec<(usize, usize)>> {
    read_json(path)
}

pub fn write_dot(path: &Path, g: &Graph, f: Option<&EdgeColouring>) -> Result<()> {
    std::fs::write(path, g.to_dot(f))?;
    Ok(())
}

/// On-disk form of a clique-cycle construction; carries the clique vertex
/// sets so downstream tools can recover the canonical colouring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueCycleMeta {
    pub r: usize,
    pub k: usize,
    pub sizes: Vec<usize>,
    pub cliques: Vec<Vec<usize>>,
}

impl CliqueCycleMeta {
    pub fn of(cc: &CliqueCycle) -> Self {
        CliqueCycleMeta {
            r: cc.r,
            k: cc.k,
            sizes: cc.sizes.clone(),
            cliques: cc.cliques.clone(),
        }
    }
}
