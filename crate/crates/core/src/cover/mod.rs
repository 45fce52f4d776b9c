//! Clique enumeration, the cover functional J, and cover search.
//!
//! A cover is a set of complete subgraphs of a threshold graph, pairwise
//! edge-disjoint (covering mode) or vertex-disjoint (partition mode). Its
//! quality is J = sum over cliques of (total edge weight) / (vertex count);
//! the search picks the cover maximizing J. With unit weights J counts
//! edges / |K|, which favors K_2 covers — that is the functional's own
//! behavior, not corrected here.

mod cluster;
mod search;

pub use cluster::{
    base_cluster_system, base_cluster_system_with, classify_cluster_structure,
    condensation_center, ClusterSystem, StructureReport,
};
pub use search::{
    exact_best_cover, exact_best_cover_with, exact_best_covers_with, greedy_cover,
};

use crate::graph::{Graph, GraphError};
use crate::matrix::{CorrelationMatrix, DistanceMatrix, MatrixError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// Errors from clique enumeration, cover search, and clustering.
#[derive(Debug, Error)]
pub enum CoverError {
    #[error("maximal clique enumeration exceeded the cap of {cap}")]
    CliqueCountCapExceeded { cap: usize },
    #[error("graph has {edges} edges, above the exact cover cap of {cap}")]
    ExactCapExceeded { edges: usize, cap: usize },
    #[error("no weight defined for edge ({i}, {j})")]
    MissingWeight { i: usize, j: usize },
    #[error("cluster does not induce a connected subgraph")]
    DisconnectedCluster,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Caps on the exact searches; both configurable, exceeded caps error
/// rather than degrade silently.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverConfig {
    /// Largest edge count handled by the exact cover search.
    pub exact_edge_cap: usize,
    /// Largest number of maximal cliques the enumerator will report.
    pub clique_cap: usize,
}

impl Default for CoverConfig {
    fn default() -> Self {
        CoverConfig {
            exact_edge_cap: 24,
            clique_cap: 1_000_000,
        }
    }
}

/// A complete subgraph, stored as a sorted vertex set of size >= 2.
///
/// Singletons are not cliques here; isolated or uncovered vertices become
/// singleton clusters downstream instead.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Clique {
    vertices: Vec<usize>,
}

impl Clique {
    /// Builds a clique from a vertex set; sorts and deduplicates.
    /// Adjacency in the host graph is the caller's contract.
    pub fn new(vertices: Vec<usize>) -> Self {
        let mut v = vertices;
        v.sort_unstable();
        v.dedup();
        debug_assert!(v.len() >= 2, "cliques have at least two vertices");
        Clique { vertices: v }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The implied edge set: all vertex pairs, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let v = &self.vertices;
        (0..v.len()).flat_map(move |i| ((i + 1)..v.len()).map(move |j| (v[i], v[j])))
    }

    pub fn edge_count(&self) -> usize {
        self.len() * (self.len() - 1) / 2
    }
}

/// How cliques of a cover may overlap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Disjointness {
    /// No two cliques share an edge; every edge must be covered.
    EdgeDisjoint,
    /// No two cliques share a vertex; edges between cliques stay uncovered.
    VertexDisjoint,
}

/// Kind of edge weighting for the functional J.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightKind {
    /// Every edge weighs 1.
    Unit,
    /// Weight derived from the source matrix: delta - d_ij for distances,
    /// |r_ij| for correlations.
    Similarity,
    /// Caller-supplied edge-weight table.
    Custom,
}

/// A weight function over host-graph edges.
///
/// `Unit` needs no table. `Similarity` must be resolved against the source
/// matrix before use (the pipeline entry points do this); an unresolved
/// similarity function reports `MissingWeight` on lookup.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightFunction {
    kind: WeightKind,
    table: Option<BTreeMap<(usize, usize), f64>>,
}

impl WeightFunction {
    pub fn unit() -> Self {
        WeightFunction {
            kind: WeightKind::Unit,
            table: None,
        }
    }

    /// Similarity weighting, to be resolved against the pipeline's matrix.
    pub fn similarity() -> Self {
        WeightFunction {
            kind: WeightKind::Similarity,
            table: None,
        }
    }

    /// Similarity weights delta - d_ij over all object pairs.
    pub fn similarity_from_distance(d: &DistanceMatrix, delta: f64) -> Self {
        let mut table = BTreeMap::new();
        for i in 0..d.len() {
            for j in (i + 1)..d.len() {
                table.insert((i, j), delta - d.get(i, j));
            }
        }
        WeightFunction {
            kind: WeightKind::Similarity,
            table: Some(table),
        }
    }

    /// Similarity weights |r_ij| over all variable pairs.
    pub fn similarity_from_correlation(r: &CorrelationMatrix) -> Self {
        let mut table = BTreeMap::new();
        for i in 0..r.len() {
            for j in (i + 1)..r.len() {
                table.insert((i, j), r.get(i, j).abs());
            }
        }
        WeightFunction {
            kind: WeightKind::Similarity,
            table: Some(table),
        }
    }

    /// Explicit edge-weight table; keys are normalized to (min, max).
    pub fn custom(weights: impl IntoIterator<Item = ((usize, usize), f64)>) -> Self {
        let table = weights
            .into_iter()
            .map(|((u, v), w)| ((u.min(v), u.max(v)), w))
            .collect();
        WeightFunction {
            kind: WeightKind::Custom,
            table: Some(table),
        }
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    /// Weight of edge {i, j}, if defined.
    pub fn weight(&self, i: usize, j: usize) -> Option<f64> {
        match self.kind {
            WeightKind::Unit => Some(1.0),
            _ => self
                .table
                .as_ref()
                .and_then(|t| t.get(&(i.min(j), i.max(j))).copied()),
        }
    }

    /// Resolves a bare `Similarity` kind against a distance matrix;
    /// other kinds pass through unchanged.
    pub fn resolved_for_distance(&self, d: &DistanceMatrix, delta: f64) -> WeightFunction {
        if self.kind == WeightKind::Similarity && self.table.is_none() {
            WeightFunction::similarity_from_distance(d, delta)
        } else {
            self.clone()
        }
    }

    /// Resolves a bare `Similarity` kind against a correlation matrix.
    pub fn resolved_for_correlation(&self, r: &CorrelationMatrix) -> WeightFunction {
        if self.kind == WeightKind::Similarity && self.table.is_none() {
            WeightFunction::similarity_from_correlation(r)
        } else {
            self.clone()
        }
    }
}

/// A cover of (part of) a graph by complete subgraphs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cover {
    /// Cliques in canonical order (each sorted, list sorted).
    pub cliques: Vec<Clique>,
    pub disjointness: Disjointness,
    /// Value of the functional J on this cover.
    pub value: f64,
    /// Host-graph edges not inside any clique (always empty in
    /// edge-disjoint mode).
    pub uncovered_edges: Vec<(usize, usize)>,
}

/// The functional J: sum over cliques of (total edge weight) / |K|.
///
/// Summation order is canonical (clique list order, sorted edges within a
/// clique), so recomputation reproduces stored values bit for bit.
pub fn cover_value(cliques: &[Clique], w: &WeightFunction) -> Result<f64, CoverError> {
    let mut total = 0.0;
    for clique in cliques {
        let mut sum = 0.0;
        for (i, j) in clique.edges() {
            sum += w.weight(i, j).ok_or(CoverError::MissingWeight { i, j })?;
        }
        total += sum / clique.len() as f64;
    }
    Ok(total)
}

/// All maximal cliques with at least 2 vertices, each sorted internally,
/// the list sorted lexicographically. Bron–Kerbosch with pivoting.
pub fn maximal_cliques(g: &Graph) -> Result<Vec<Clique>, CoverError> {
    maximal_cliques_with(g, &CoverConfig::default())
}

/// As [`maximal_cliques`] with an explicit clique-count cap.
pub fn maximal_cliques_with(g: &Graph, cfg: &CoverConfig) -> Result<Vec<Clique>, CoverError> {
    if !g.is_simple() {
        return Err(GraphError::NonSimpleGraph.into());
    }
    let n = g.vertex_count();
    let adj: Vec<Vec<bool>> = {
        let mut a = vec![vec![false; n]; n];
        for &(u, v) in g.edges() {
            a[u][v] = true;
            a[v][u] = true;
        }
        a
    };
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut r = Vec::new();
    let p: Vec<usize> = (0..n).collect();
    let x = Vec::new();
    bron_kerbosch(&adj, &mut r, p, x, &mut out, cfg.clique_cap)?;
    let mut cliques: Vec<Clique> = out
        .into_iter()
        .filter(|c| c.len() >= 2)
        .map(Clique::new)
        .collect();
    cliques.sort();
    Ok(cliques)
}

fn bron_kerbosch(
    adj: &[Vec<bool>],
    r: &mut Vec<usize>,
    p: Vec<usize>,
    x: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) -> Result<(), CoverError> {
    if p.is_empty() && x.is_empty() {
        if out.len() >= cap {
            return Err(CoverError::CliqueCountCapExceeded { cap });
        }
        out.push(r.clone());
        return Ok(());
    }
    // Pivot with the most neighbors in P.
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| p.iter().filter(|&&v| adj[u][v]).count())
        .expect("p or x is nonempty");
    let candidates: Vec<usize> = p.iter().copied().filter(|&v| !adj[pivot][v]).collect();
    let mut p = p;
    let mut x = x;
    for v in candidates {
        let next_p: Vec<usize> = p.iter().copied().filter(|&u| adj[v][u]).collect();
        let next_x: Vec<usize> = x.iter().copied().filter(|&u| adj[v][u]).collect();
        r.push(v);
        bron_kerbosch(adj, r, next_p, next_x, out, cap)?;
        r.pop();
        p.retain(|&u| u != v);
        x.push(v);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn complete_graph_is_one_maximal_clique() {
        let cliques = maximal_cliques(&named::complete(4)).unwrap();
        assert_eq!(cliques.len(), 1);
        assert_eq!(cliques[0].vertices(), &[0, 1, 2, 3]);
    }

    #[test]
    fn four_cycle_cliques_are_its_edges() {
        let cliques = maximal_cliques(&named::cycle(4)).unwrap();
        let vertex_sets: Vec<&[usize]> = cliques.iter().map(|c| c.vertices()).collect();
        assert_eq!(vertex_sets, vec![&[0, 1], &[0, 3], &[1, 2], &[2, 3]]);
    }

    #[test]
    fn clique_cap_is_enforced() {
        let cfg = CoverConfig {
            clique_cap: 2,
            ..CoverConfig::default()
        };
        let err = maximal_cliques_with(&named::cycle(4), &cfg).unwrap_err();
        assert!(matches!(err, CoverError::CliqueCountCapExceeded { cap: 2 }));
    }

    #[test]
    fn cover_value_matches_hand_computation() {
        let unit = WeightFunction::unit();
        // Single K_3 under unit weights: 3 edges / 3 vertices.
        let k3 = vec![Clique::new(vec![0, 1, 2])];
        assert_eq!(cover_value(&k3, &unit).unwrap(), 1.0);
        // K_3's edges as three K_2: 3 * (1/2).
        let split = vec![
            Clique::new(vec![0, 1]),
            Clique::new(vec![0, 2]),
            Clique::new(vec![1, 2]),
        ];
        assert_eq!(cover_value(&split, &unit).unwrap(), 1.5);
        // K_4 as one clique with all weights 0.9: 6 * 0.9 / 4.
        let w = WeightFunction::custom(
            [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
                .into_iter()
                .map(|e| (e, 0.9)),
        );
        let k4 = vec![Clique::new(vec![0, 1, 2, 3])];
        assert!((cover_value(&k4, &w).unwrap() - 1.35).abs() < 1e-12);
    }

    #[test]
    fn missing_weight_is_an_error() {
        let w = WeightFunction::custom([((0, 1), 1.0)]);
        let cliques = vec![Clique::new(vec![0, 1, 2])];
        assert!(matches!(
            cover_value(&cliques, &w).unwrap_err(),
            CoverError::MissingWeight { .. }
        ));
        // An unresolved similarity function has no table yet.
        let bare = WeightFunction::similarity();
        assert!(matches!(
            cover_value(&cliques, &bare).unwrap_err(),
            CoverError::MissingWeight { .. }
        ));
    }

    #[test]
    fn similarity_weights_follow_the_source_matrix() {
        let d = crate::matrix::DistanceMatrix::new(
            vec!["0".into(), "1".into()],
            vec![vec![0.0, 0.3], vec![0.3, 0.0]],
        )
        .unwrap();
        let w = WeightFunction::similarity_from_distance(&d, 0.5);
        assert!((w.weight(0, 1).unwrap() - 0.2).abs() < 1e-12);
    }

    #[test]
    fn non_simple_graph_rejected() {
        let g = Graph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        assert!(matches!(
            maximal_cliques(&g).unwrap_err(),
            CoverError::Graph(GraphError::NonSimpleGraph)
        ));
    }
}
