//! JSON file formats.
//!
//! * poset: `{"elements": [...], "relations": [["x", "y"], ...]}`, relations
//!   are `x < y` generators (closed and reduced on load);
//! * embedding: `{"rotations": {"v": ["u1", ...]}, "outer_face": ["v1", ...]}`,
//!   with `outer_face` a list of walks when the graph is disconnected;
//! * graph: `{"vertices": [...], "edges": [["u", "v"], ...]}`;
//! * pairs: `[["a", "b"], ...]` or `{"x0": .., "y0": .., "pairs": [...]}`.
//!
//! Syntax errors carry the line and column reported by the parser.

use std::collections::BTreeMap;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::planar::Embedding;
use crate::poset::Poset;

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub elements: Vec<String>,
    #[serde(default)]
    pub relations: Vec<(String, String)>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum OuterFace {
    One(Vec<String>),
    Many(Vec<Vec<String>>),
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingFile {
    pub rotations: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer_face: Option<OuterFace>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PairsFile {
    Bare(Vec<(String, String)>),
    Wrapped(PairsSpec),
}

/// Pairs with the optional exposing elements `x0`, `y0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize, Serialize)]
pub struct PairsSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y0: Option<String>,
    pub pairs: Vec<(String, String)>,
}

/// Parses with a `line L, column C` prefix on failure.
pub fn from_json<T: DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text)
        .map_err(|e| Error::Input(format!("{what}: line {}, column {}: {}", e.line(), e.column(), strip_position(&e))))
}

fn strip_position(e: &serde_json::Error) -> String {
    let s = e.to_string();
    match s.rfind(" at line ") {
        Some(i) => s[..i].to_string(),
        None => s,
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

pub fn parse_poset(text: &str) -> Result<Poset> {
    let f: PosetFile = from_json(text, "poset")?;
    Poset::from_relations(&f.elements, &f.relations)
}

/// Cover relations only, so the file is canonical.
pub fn poset_file(p: &Poset) -> PosetFile {
    PosetFile { elements: p.ids().to_vec(), relations: p.cover_ids() }
}

pub fn poset_json(p: &Poset) -> String {
    pretty(&poset_file(p))
}

/// A graph file, or a poset file read as its cover graph.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let v: Value = from_json(text, "graph")?;
    if v.get("elements").is_some() {
        return Ok(parse_poset(text)?.cover_graph());
    }
    let f: GraphFile = from_json(text, "graph")?;
    Graph::from_edges(&f.vertices, &f.edges)
}

pub fn graph_json(g: &Graph) -> String {
    pretty(&GraphFile { vertices: g.ids().to_vec(), edges: g.edge_ids() })
}

/// Of `graph`, whose vertex ids the file refers to. Without `outer_face`
/// the longest face of each component is exterior.
pub fn parse_embedding(text: &str, graph: Graph) -> Result<Embedding> {
    let f: EmbeddingFile = from_json(text, "embedding")?;
    let mut e = Embedding::from_id_rotations(graph, &f.rotations)?;
    let walks = match f.outer_face {
        None => Vec::new(),
        Some(OuterFace::One(w)) if w.is_empty() => Vec::new(),
        Some(OuterFace::One(w)) => vec![w],
        Some(OuterFace::Many(ws)) => ws,
    };
    for w in walks {
        e = e.with_outer_ids(&w)?;
    }
    Ok(e)
}

pub fn embedding_file(e: &Embedding) -> EmbeddingFile {
    let g = e.graph();
    let walks: Vec<Vec<String>> = (0..e.components().len())
        .map(|c| e.exterior_walk(c).into_iter().map(|v| g.id(v).to_string()).collect())
        .collect();
    let outer_face = if walks.len() == 1 { OuterFace::One(walks.into_iter().next().unwrap()) } else { OuterFace::Many(walks) };
    let rotations = e.rotation_ids().into_iter().filter(|(_, r)| !r.is_empty()).collect();
    EmbeddingFile { rotations, outer_face: Some(outer_face) }
}

pub fn embedding_json(e: &Embedding) -> String {
    pretty(&embedding_file(e))
}

pub fn parse_pairs(text: &str) -> Result<PairsSpec> {
    Ok(match from_json::<PairsFile>(text, "pairs")? {
        PairsFile::Bare(pairs) => PairsSpec { pairs, ..Default::default() },
        PairsFile::Wrapped(spec) => spec,
    })
}

pub fn load_poset(path: &Path) -> Result<Poset> {
    parse_poset(&read_text(path)?).map_err(|e| prefix(path, e))
}

pub fn load_embedding(path: &Path, graph: Graph) -> Result<Embedding> {
    parse_embedding(&read_text(path)?, graph).map_err(|e| prefix(path, e))
}

fn prefix(path: &Path, e: Error) -> Error {
    match e {
        Error::Input(m) => Error::Input(format!("{}: {m}", path.display())),
        other => other,
    }
}

/// Two-space indented JSON with a trailing newline.
pub fn pretty<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
