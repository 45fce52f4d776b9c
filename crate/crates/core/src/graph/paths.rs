//! Shortest-path counting and the geodetic index.
//!
//! A graph is geodetic when every vertex pair is joined by exactly one
//! shortest path; the geodetic index is the maximum number of shortest
//! paths over all pairs, so geodetic means index 1 and k-geodetic means
//! index at most k.

use super::{Graph, GraphError};
use std::collections::VecDeque;

/// Hop distances and shortest-path counts for every vertex pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCountTable {
    /// `dist[i][j]` = hop count of a shortest i–j path.
    pub dist: Vec<Vec<usize>>,
    /// `count[i][j]` = number of distinct shortest i–j paths; `count[i][i] = 1`.
    pub count: Vec<Vec<u64>>,
}

/// BFS layering with path-count accumulation from every source.
///
/// Requires a connected simple graph.
pub fn path_count_table(g: &Graph) -> Result<PathCountTable, GraphError> {
    if !g.is_simple() {
        return Err(GraphError::NonSimpleGraph);
    }
    if !g.is_connected() {
        return Err(GraphError::DisconnectedGraph);
    }
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut dist = vec![vec![0usize; n]; n];
    let mut count = vec![vec![0u64; n]; n];
    for s in 0..n {
        let (d, c) = bfs_count(&adj, s);
        dist[s] = d;
        count[s] = c;
    }
    Ok(PathCountTable { dist, count })
}

fn bfs_count(adj: &[Vec<usize>], source: usize) -> (Vec<usize>, Vec<u64>) {
    let n = adj.len();
    let mut dist = vec![usize::MAX; n];
    let mut count = vec![0u64; n];
    dist[source] = 0;
    count[source] = 1;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                count[w] = count[v];
                queue.push_back(w);
            } else if dist[w] == dist[v] + 1 {
                count[w] += count[v];
            }
        }
    }
    (dist, count)
}

/// Maximum shortest-path count over all vertex pairs.
///
/// The graph is geodetic iff the result is 1 and k-geodetic iff it is at
/// most k. A single-vertex graph has index 1 (vacuously geodetic).
pub fn geodetic_index(g: &Graph) -> Result<u64, GraphError> {
    let table = path_count_table(g)?;
    let n = g.vertex_count();
    let mut max = 1u64;
    for i in 0..n {
        for j in (i + 1)..n {
            max = max.max(table.count[i][j]);
        }
    }
    Ok(max)
}

/// True iff every vertex pair is joined by exactly one shortest path.
pub fn is_geodetic(g: &Graph) -> Result<bool, GraphError> {
    Ok(geodetic_index(g)? == 1)
}

/// Maximum hop distance over all vertex pairs of a connected simple graph.
pub fn diameter(g: &Graph) -> Result<usize, GraphError> {
    let table = path_count_table(g)?;
    Ok(table
        .dist
        .iter()
        .flat_map(|row| row.iter().copied())
        .max()
        .unwrap_or(0))
}

/// Length of the shortest cycle; `None` for forests.
///
/// Multigraphs are handled naturally: a loop is a 1-cycle and a parallel
/// pair a 2-cycle.
pub fn girth(g: &Graph) -> Option<usize> {
    if g.edges().iter().any(|&(u, v)| u == v) {
        return Some(1);
    }
    if g.edges().windows(2).any(|w| w[0] == w[1]) {
        return Some(2);
    }
    // Simple graph: shortest cycle through edge (u, v) is 1 + dist(u, v)
    // in the graph with that edge removed.
    let n = g.vertex_count();
    let mut best: Option<usize> = None;
    for (skip, &(u, v)) in g.edges().iter().enumerate() {
        let mut adj = vec![Vec::new(); n];
        for (i, &(a, b)) in g.edges().iter().enumerate() {
            if i != skip {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        if let Some(d) = bfs_distance(&adj, u, v) {
            let cycle = d + 1;
            if best.map_or(true, |b| cycle < b) {
                best = Some(cycle);
            }
        }
    }
    best
}

fn bfs_distance(adj: &[Vec<usize>], from: usize, to: usize) -> Option<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[from] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            return Some(dist[v]);
        }
        for &w in &adj[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    None
}
