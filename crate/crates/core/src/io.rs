//! Flat-file formats: graphs (line records or JSON) and witness documents.
//!
//! Graph text format, one record per line, `#` starts a comment:
//!
//! ```text
//! v <id> <genus>
//! e <id> <tail> <head>
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cochain::OneCochain;
use crate::criterion::{check_junior_ghost, evaluate_checks, Checks, CriterionError, GhostWitness, SupportPolicy, Twist, Verdict};
use crate::graph::{Edge, EdgeId, GraphError, Multigraph, StableGraph, Vertex};
use crate::residue::{Age, Level, ResidueError};

/// Stable diagnostic codes, one per kind of ingestion failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagnosticCode {
    UnknownRecord,
    FieldCount,
    BadInteger,
    Syntax,
    NoVertices,
    DuplicateVertex,
    DuplicateEdge,
    DanglingEndpoint,
    Disconnected,
    Unstable,
}

impl DiagnosticCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagnosticCode::UnknownRecord => "G001",
            DiagnosticCode::FieldCount => "G002",
            DiagnosticCode::BadInteger => "G003",
            DiagnosticCode::Syntax => "G004",
            DiagnosticCode::NoVertices => "G010",
            DiagnosticCode::DuplicateVertex => "G011",
            DiagnosticCode::DuplicateEdge => "G012",
            DiagnosticCode::DanglingEndpoint => "G013",
            DiagnosticCode::Disconnected => "G014",
            DiagnosticCode::Unstable => "G015",
        }
    }
}

impl fmt::Display for DiagnosticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub code: DiagnosticCode,
    /// 1-based line of the offending record, when one can be named.
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "{} line {l}: {}", self.code, self.message),
            None => write!(f, "{}: {}", self.code, self.message),
        }
    }
}

impl std::error::Error for ParseError {}

fn perr(code: DiagnosticCode, line: Option<usize>, message: impl Into<String>) -> ParseError {
    ParseError {
        code,
        line,
        message: message.into(),
    }
}

/// JSON shape of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl From<&StableGraph> for GraphDocument {
    fn from(g: &StableGraph) -> Self {
        GraphDocument {
            vertices: g.vertices().to_vec(),
            edges: g.edges().to_vec(),
        }
    }
}

/// Source lines of each record, for diagnostics raised after parsing.
#[derive(Default)]
struct Lines {
    vertex: HashMap<u32, usize>,
    edge: HashMap<u32, usize>,
}

/// Parse either format; input whose first non-blank character is `{` is JSON.
pub fn parse_graph(input: &str) -> Result<StableGraph, ParseError> {
    if input.trim_start().starts_with('{') {
        parse_graph_json(input)
    } else {
        parse_graph_text(input)
    }
}

pub fn parse_graph_json(input: &str) -> Result<StableGraph, ParseError> {
    let doc: GraphDocument =
        serde_json::from_str(input).map_err(|e| perr(DiagnosticCode::Syntax, Some(e.line()), e.to_string()))?;
    build(doc, &Lines::default())
}

pub fn parse_graph_text(input: &str) -> Result<StableGraph, ParseError> {
    let mut doc = GraphDocument {
        vertices: Vec::new(),
        edges: Vec::new(),
    };
    let mut lines = Lines::default();
    for (i, raw) in input.lines().enumerate() {
        let n = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = body.split_whitespace().collect();
        let Some(&kind) = fields.first() else { continue };
        let int = |s: &str, what: &str| -> Result<u32, ParseError> {
            s.parse()
                .map_err(|_| perr(DiagnosticCode::BadInteger, Some(n), format!("{what} {s:?} is not a non-negative integer")))
        };
        match kind {
            "v" => {
                if fields.len() != 3 {
                    return Err(perr(DiagnosticCode::FieldCount, Some(n), "expected `v <id> <genus>`"));
                }
                let v = Vertex {
                    id: int(fields[1], "vertex id")?,
                    genus: int(fields[2], "genus")?,
                };
                lines.vertex.entry(v.id).or_insert(n);
                if doc.vertices.iter().any(|w| w.id == v.id) {
                    return Err(perr(DiagnosticCode::DuplicateVertex, Some(n), format!("duplicate vertex id {}", v.id)));
                }
                doc.vertices.push(v);
            }
            "e" => {
                if fields.len() != 4 {
                    return Err(perr(DiagnosticCode::FieldCount, Some(n), "expected `e <id> <tail> <head>`"));
                }
                let e = Edge {
                    id: int(fields[1], "edge id")?,
                    tail: int(fields[2], "tail")?,
                    head: int(fields[3], "head")?,
                };
                if doc.edges.iter().any(|f| f.id == e.id) {
                    return Err(perr(DiagnosticCode::DuplicateEdge, Some(n), format!("duplicate edge id {}", e.id)));
                }
                lines.edge.insert(e.id, n);
                doc.edges.push(e);
            }
            other => {
                return Err(perr(DiagnosticCode::UnknownRecord, Some(n), format!("unknown record type {other:?}")));
            }
        }
    }
    build(doc, &lines)
}

fn build(doc: GraphDocument, lines: &Lines) -> Result<StableGraph, ParseError> {
    let graph = Multigraph::new(doc.vertices, doc.edges).map_err(|e| graph_error(e, lines))?;
    StableGraph::try_from(graph).map_err(|e| graph_error(e, lines))
}

fn graph_error(e: GraphError, lines: &Lines) -> ParseError {
    let msg = e.to_string();
    match e {
        GraphError::NoVertices => perr(DiagnosticCode::NoVertices, None, msg),
        GraphError::DuplicateVertex(v) => perr(DiagnosticCode::DuplicateVertex, lines.vertex.get(&v).copied(), msg),
        GraphError::DuplicateEdge(id) => perr(DiagnosticCode::DuplicateEdge, lines.edge.get(&id).copied(), msg),
        GraphError::DanglingEndpoint { edge, .. } => {
            perr(DiagnosticCode::DanglingEndpoint, lines.edge.get(&edge).copied(), msg)
        }
        GraphError::Disconnected => perr(DiagnosticCode::Disconnected, None, msg),
        GraphError::Unstable { vertex, .. } => perr(DiagnosticCode::Unstable, lines.vertex.get(&vertex).copied(), msg),
        GraphError::BadTree(_) => perr(DiagnosticCode::Syntax, None, msg),
    }
}

pub fn render_graph_text(g: &StableGraph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        out.push_str(&format!("v {} {}\n", v.id, v.genus));
    }
    for e in g.edges() {
        out.push_str(&format!("e {} {} {}\n", e.id, e.tail, e.head));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("json: {0}")]
    Json(String),
    #[error("graph: {0}")]
    Graph(#[from] ParseError),
    #[error(transparent)]
    Level(#[from] ResidueError),
    #[error("{map} has no value for edge {edge}")]
    MissingEdge { map: &'static str, edge: EdgeId },
    #[error("{map} names edge {edge}, which is not in the graph")]
    UnknownEdge { map: &'static str, edge: EdgeId },
    #[error(transparent)]
    Criterion(#[from] CriterionError),
    #[error("stored {field} does not match recomputation")]
    Mismatch { field: &'static str },
    #[error("document does not describe a junior ghost: {0}")]
    Rejected(String),
}

/// Serialized witness. `M` and `a` are keyed by edge id and read on the
/// (tail, head) orientation stored with the graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDocument {
    pub level: u64,
    pub graph: GraphDocument,
    #[serde(rename = "M")]
    pub m: BTreeMap<EdgeId, u64>,
    pub a: BTreeMap<EdgeId, u64>,
    pub age: Age,
    pub support: Vec<EdgeId>,
    pub codimension: usize,
    pub checks: Checks,
}

impl WitnessDocument {
    pub fn from_witness(w: &GhostWitness) -> Self {
        let ids = w.graph.edges().iter().map(|e| e.id);
        WitnessDocument {
            level: w.level.get(),
            graph: GraphDocument::from(&w.graph),
            m: ids.clone().zip(w.multiplicity.raw()).collect(),
            a: ids.zip(w.twist.raw()).collect(),
            age: w.age,
            support: w.support.clone(),
            codimension: w.codimension,
            checks: w.checks,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn parse(input: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(input).map_err(|e| DocumentError::Json(e.to_string()))
    }

    /// Rebuild the witness and re-run the criterion. Every stored field must
    /// agree with the recomputation.
    pub fn verify(&self) -> Result<GhostWitness, DocumentError> {
        let graph = build(self.graph.clone(), &Lines::default())?;
        let level = Level::new(self.level)?;
        let m = values(&graph, &self.m, "M")?;
        let a = values(&graph, &self.a, "a")?;
        let m = OneCochain::from_values(&graph, level, &m).map_err(CriterionError::from)?;
        let a = Twist::from_values(&graph, level, &a)?;
        let checks = evaluate_checks(&graph, &m, &a)?;
        if checks != self.checks {
            return Err(DocumentError::Mismatch { field: "checks" });
        }
        let w = match check_junior_ghost(&graph, &m, &a, SupportPolicy::Any)? {
            Verdict::Witness(w) => *w,
            Verdict::Rejected(r) => return Err(DocumentError::Rejected(r.to_string())),
        };
        if !w.age.is_identical(self.age) {
            return Err(DocumentError::Mismatch { field: "age" });
        }
        if w.support != self.support {
            return Err(DocumentError::Mismatch { field: "support" });
        }
        if w.codimension != self.codimension {
            return Err(DocumentError::Mismatch { field: "codimension" });
        }
        Ok(w)
    }
}

fn values(graph: &StableGraph, map: &BTreeMap<EdgeId, u64>, name: &'static str) -> Result<Vec<i64>, DocumentError> {
    if let Some(&edge) = map.keys().find(|id| graph.edge_index(**id).is_none()) {
        return Err(DocumentError::UnknownEdge { map: name, edge });
    }
    graph
        .edges()
        .iter()
        .map(|e| {
            map.get(&e.id)
                .map(|&v| v as i64)
                .ok_or(DocumentError::MissingEdge { map: name, edge: e.id })
        })
        .collect()
}
