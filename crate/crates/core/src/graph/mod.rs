//! Undirected labeled multigraphs and their structural analysis.
//!
//! The [`Graph`] type permits loops and parallel edges; thresholding only
//! ever produces simple graphs, but topological reduction (smoothing) does
//! not, so multigraph support lives in the base type from the start.

mod homeo;
mod iso;
mod moore;
pub mod named;
mod paths;

pub use homeo::{homeomorphic_to_complete, homeomorphic_to_moore, smooth, Reduction};
pub use iso::{is_isomorphic, is_isomorphic_with_cap, DEFAULT_ISO_CAP};
pub use moore::{moore_certificate, MooreCertificate};
pub use paths::{
    diameter, geodetic_index, girth, is_geodetic, path_count_table, PathCountTable,
};

use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use thiserror::Error;

/// Errors produced by graph construction and graph operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    /// Constructed graphs must have at least one vertex.
    #[error("graph must have at least one vertex")]
    NoVertices,
    /// An edge referenced a vertex index outside the graph.
    #[error("edge ({0}, {1}) references a vertex outside the graph")]
    InvalidEdge(usize, usize),
    /// Label list and vertex count disagree, or labels are duplicated.
    #[error("invalid vertex labels: {0}")]
    InvalidLabels(String),
    /// The operation requires a connected graph.
    #[error("operation requires a connected graph")]
    DisconnectedGraph,
    /// The operation requires a simple graph (no loops or parallel edges).
    #[error("operation requires a simple graph (no loops or parallel edges)")]
    NonSimpleGraph,
    /// Exact isomorphism search is capped; larger graphs are rejected rather
    /// than answered heuristically.
    #[error("graph has {vertices} vertices, above the exact isomorphism cap of {cap}")]
    SizeCapExceeded { vertices: usize, cap: usize },
}

/// An undirected labeled multigraph.
///
/// Vertices are indexed `0..n` and carry opaque string labels. Edges form a
/// multiset of unordered pairs; loops and parallel edges are permitted and
/// the `simple` flag tracks their absence. Edge pairs are stored normalized
/// (`u <= v`) and sorted, so two graphs compare equal iff they have the same
/// labels and the same edge multiset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
    simple: bool,
}

/// Adjacency-list JSON form: `{"vertices":[...], "edges":[[i,j],...]}`.
#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson {
            vertices: g.labels,
            edges: g.edges,
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;

    fn try_from(j: GraphJson) -> Result<Self, Self::Error> {
        Graph::new(j.vertices, j.edges)
    }
}

impl Graph {
    /// Builds a graph from vertex labels and an edge multiset.
    ///
    /// Edges are normalized to `(min, max)` and sorted. Fails when the label
    /// list is empty or an edge endpoint is out of range.
    pub fn new(
        labels: Vec<String>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self, GraphError> {
        if labels.is_empty() {
            return Err(GraphError::NoVertices);
        }
        let n = labels.len();
        let mut norm: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::InvalidEdge(u, v));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        let has_loop = norm.iter().any(|&(u, v)| u == v);
        let has_parallel = norm.windows(2).any(|w| w[0] == w[1]);
        Ok(Graph {
            labels,
            edges: norm,
            simple: !has_loop && !has_parallel,
        })
    }

    /// Builds a graph on `n` vertices labeled `"0".."n-1"`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Graph::new(labels, edges.to_vec())
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edge multiset, normalized (`u <= v`) and sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    /// True iff the graph has no loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        self.simple
    }

    /// Number of edges between `u` and `v` (order-insensitive).
    pub fn edge_multiplicity(&self, u: usize, v: usize) -> usize {
        let key = (u.min(v), u.max(v));
        let start = self.edges.partition_point(|&e| e < key);
        self.edges[start..].iter().take_while(|&&e| e == key).count()
    }

    /// Vertex degree; a loop contributes 2.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    /// Distinct neighbors of `v`, sorted; contains `v` itself iff a loop exists.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Adjacency lists of distinct neighbors (loops included once).
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            if u != v {
                adj[v].push(u);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let adj = self.adjacency();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut visited = 1usize;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    visited += 1;
                    stack.push(w);
                }
            }
        }
        visited == n
    }

    /// Induced subgraph on `vertices` (deduplicated, sorted). Labels are
    /// preserved; returned indices follow the sorted vertex order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph, GraphError> {
        let mut verts: Vec<usize> = vertices.to_vec();
        verts.sort_unstable();
        verts.dedup();
        if verts.is_empty() {
            return Err(GraphError::NoVertices);
        }
        if let Some(&v) = verts.iter().find(|&&v| v >= self.vertex_count()) {
            return Err(GraphError::InvalidEdge(v, v));
        }
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in verts.iter().enumerate() {
            index[v] = i;
        }
        let labels = verts.iter().map(|&v| self.labels[v].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]))
            .collect();
        Graph::new(labels, edges)
    }

    /// DOT serialization: undirected, vertex labels preserved, parallel
    /// edges repeated, loops as self-edges.
    pub fn to_dot(&self) -> String {
        self.to_dot_with_attrs(|_| None)
    }

    /// DOT serialization with optional extra per-vertex attributes
    /// (e.g. cluster fill colors).
    pub fn to_dot_with_attrs<F>(&self, extra: F) -> String
    where
        F: Fn(usize) -> Option<String>,
    {
        let mut out = String::from("graph {\n");
        for v in 0..self.vertex_count() {
            let attrs = match extra(v) {
                Some(a) => format!("label=\"{}\", {}", dot_escape(&self.labels[v]), a),
                None => format!("label=\"{}\"", dot_escape(&self.labels[v])),
            };
            let _ = writeln!(out, "  {} [{}];", v, attrs);
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "  {} -- {};", u, v);
        }
        out.push_str("}\n");
        out
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
