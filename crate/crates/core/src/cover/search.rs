//! Exact (branch-and-bound) and greedy cover search.
//!
//! The exact search enumerates covers by complete subgraphs under the
//! chosen disjointness mode and keeps every J-maximal cover; ties are
//! resolved by the lexicographically least clique list. Cover values are
//! always recomputed through [`cover_value`]'s canonical summation order,
//! so reported optima and ties are reproducible bit for bit.

use super::{
    cover_value, maximal_cliques_with, Clique, Cover, CoverConfig, CoverError, Disjointness,
    WeightFunction,
};
use crate::graph::{Graph, GraphError};

/// Hard ceiling on the exact search: edge bitmasks are 128 bits wide and
/// vertex masks need at most 2 bits per edge.
const MASK_EDGE_LIMIT: usize = 64;

/// Globally J-maximal cover with default caps. See [`exact_best_cover_with`].
pub fn exact_best_cover(
    g: &Graph,
    w: &WeightFunction,
    mode: Disjointness,
) -> Result<Cover, CoverError> {
    exact_best_cover_with(g, w, mode, &CoverConfig::default())
}

/// Globally J-maximal cover among all covers by complete subgraphs under
/// the disjointness mode; the lexicographically least clique list is
/// returned when several covers tie.
///
/// Edge-disjoint mode requires every edge covered; vertex-disjoint mode is
/// a packing whose leftover edges are reported as uncovered.
pub fn exact_best_cover_with(
    g: &Graph,
    w: &WeightFunction,
    mode: Disjointness,
    cfg: &CoverConfig,
) -> Result<Cover, CoverError> {
    let mut all = exact_best_covers_with(g, w, mode, cfg)?;
    Ok(all.swap_remove(0))
}

/// Every J-maximal cover (the full tie set), sorted by clique list.
pub fn exact_best_covers_with(
    g: &Graph,
    w: &WeightFunction,
    mode: Disjointness,
    cfg: &CoverConfig,
) -> Result<Vec<Cover>, CoverError> {
    if !g.is_simple() {
        return Err(GraphError::NonSimpleGraph.into());
    }
    let cap = cfg.exact_edge_cap.min(MASK_EDGE_LIMIT);
    if g.edge_count() > cap {
        return Err(CoverError::ExactCapExceeded {
            edges: g.edge_count(),
            cap,
        });
    }
    let weights = edge_weights(g, w)?;
    let universe = clique_universe(g);
    let infos: Vec<CliqueInfo> = universe
        .iter()
        .map(|c| CliqueInfo::build(c, g, &weights))
        .collect();

    let leaves = match mode {
        Disjointness::EdgeDisjoint => search_edge_disjoint(g, &infos, &weights),
        Disjointness::VertexDisjoint => search_vertex_disjoint(g, &infos, &weights),
    };

    // Canonical re-evaluation and exact tie filtering.
    let mut scored: Vec<(Vec<Clique>, f64)> = Vec::with_capacity(leaves.len());
    for indices in leaves {
        let mut cliques: Vec<Clique> = indices.iter().map(|&i| universe[i].clone()).collect();
        cliques.sort();
        let value = cover_value(&cliques, w)?;
        scored.push((cliques, value));
    }
    let best = scored
        .iter()
        .map(|&(_, v)| v)
        .fold(f64::NEG_INFINITY, f64::max);
    let best = if scored.is_empty() { 0.0 } else { best };
    let mut optima: Vec<Vec<Clique>> = scored
        .into_iter()
        .filter(|&(_, v)| v == best)
        .map(|(c, _)| c)
        .collect();
    optima.sort();
    optima.dedup();
    if optima.is_empty() {
        // Graph without edges: the empty cover.
        optima.push(Vec::new());
    }
    optima
        .into_iter()
        .map(|cliques| {
            let value = cover_value(&cliques, w)?;
            let uncovered = uncovered_edges(g, &cliques);
            Ok(Cover {
                cliques,
                disjointness: mode,
                value,
                uncovered_edges: uncovered,
            })
        })
        .collect()
}

/// Greedy cover: repeatedly take the maximal clique of the residual graph
/// with the largest marginal W/|K|, remove its edges (or vertices), and
/// stop when no edges remain. Ties go to the lexicographically least
/// clique. Its value never exceeds the exact optimum.
pub fn greedy_cover(
    g: &Graph,
    w: &WeightFunction,
    mode: Disjointness,
) -> Result<Cover, CoverError> {
    if !g.is_simple() {
        return Err(GraphError::NonSimpleGraph.into());
    }
    let weights = edge_weights(g, w)?;
    let uncapped = CoverConfig {
        clique_cap: usize::MAX,
        ..CoverConfig::default()
    };
    let n = g.vertex_count();
    let mut chosen: Vec<Clique> = Vec::new();
    let mut covered = vec![false; g.edge_count()];
    let mut used_vertex = vec![false; n];
    loop {
        // Residual graph on the original vertex set.
        let residual_edges: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .enumerate()
            .filter(|&(i, &(u, v))| match mode {
                Disjointness::EdgeDisjoint => !covered[i],
                Disjointness::VertexDisjoint => !used_vertex[u] && !used_vertex[v],
            })
            .map(|(_, &e)| e)
            .collect();
        if residual_edges.is_empty() {
            break;
        }
        let residual = Graph::from_edges(n, &residual_edges).expect("residual is well formed");
        let candidates = maximal_cliques_with(&residual, &uncapped)?;
        let mut best: Option<(&Clique, f64)> = None;
        for clique in &candidates {
            let sum: f64 = clique
                .edges()
                .map(|(i, j)| weights[&(i, j)])
                .sum();
            let marginal = sum / clique.len() as f64;
            match best {
                Some((_, m)) if marginal <= m => {}
                _ => best = Some((clique, marginal)),
            }
        }
        let (clique, _) = best.expect("residual has edges, so a clique exists");
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            if clique.vertices().contains(&u) && clique.vertices().contains(&v) {
                covered[i] = true;
            }
        }
        for &v in clique.vertices() {
            used_vertex[v] = true;
        }
        chosen.push(clique.clone());
    }
    chosen.sort();
    let value = cover_value(&chosen, w)?;
    let uncovered = uncovered_edges(g, &chosen);
    Ok(Cover {
        cliques: chosen,
        disjointness: mode,
        value,
        uncovered_edges: uncovered,
    })
}

fn edge_weights(
    g: &Graph,
    w: &WeightFunction,
) -> Result<std::collections::BTreeMap<(usize, usize), f64>, CoverError> {
    let mut map = std::collections::BTreeMap::new();
    for &(u, v) in g.edges() {
        let weight = w
            .weight(u, v)
            .ok_or(CoverError::MissingWeight { i: u, j: v })?;
        if !weight.is_finite() {
            return Err(CoverError::MissingWeight { i: u, j: v });
        }
        map.insert((u, v), weight);
    }
    Ok(map)
}

/// All cliques on >= 2 vertices, by ascending-vertex extension.
fn clique_universe(g: &Graph) -> Vec<Clique> {
    let n = g.vertex_count();
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in g.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    for v in 0..n {
        current.push(v);
        let candidates: Vec<usize> = ((v + 1)..n).filter(|&u| adj[v][u]).collect();
        extend_cliques(&adj, &mut current, &candidates, &mut out);
        current.pop();
    }
    out.sort();
    out
}

fn extend_cliques(
    adj: &[Vec<bool>],
    current: &mut Vec<usize>,
    candidates: &[usize],
    out: &mut Vec<Clique>,
) {
    if current.len() >= 2 {
        out.push(Clique::new(current.clone()));
    }
    for (i, &u) in candidates.iter().enumerate() {
        let next: Vec<usize> = candidates[(i + 1)..]
            .iter()
            .copied()
            .filter(|&x| adj[u][x])
            .collect();
        current.push(u);
        extend_cliques(adj, current, &next, out);
        current.pop();
    }
}

struct CliqueInfo {
    min_vertex: usize,
    edge_mask: u128,
    vertex_mask: u128,
    contribution: f64,
}

impl CliqueInfo {
    fn build(
        clique: &Clique,
        g: &Graph,
        weights: &std::collections::BTreeMap<(usize, usize), f64>,
    ) -> Self {
        let edge_index: std::collections::BTreeMap<(usize, usize), usize> = g
            .edges()
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i))
            .collect();
        let mut edge_mask = 0u128;
        let mut sum = 0.0;
        for (u, v) in clique.edges() {
            edge_mask |= 1u128 << edge_index[&(u, v)];
            sum += weights[&(u, v)];
        }
        let mut vertex_mask = 0u128;
        for &v in clique.vertices() {
            vertex_mask |= 1u128 << v;
        }
        CliqueInfo {
            min_vertex: clique.vertices()[0],
            edge_mask,
            vertex_mask,
            contribution: sum / clique.len() as f64,
        }
    }
}

/// Near-optimal leaf pool: keeps every leaf within `slack` of the running
/// best incremental value, so exact ties survive pruning.
struct LeafPool {
    leaves: Vec<(Vec<usize>, f64)>,
    best: f64,
}

impl LeafPool {
    fn new() -> Self {
        LeafPool {
            leaves: Vec::new(),
            best: f64::NEG_INFINITY,
        }
    }

    fn slack(&self) -> f64 {
        1e-9 * (1.0 + self.best.abs())
    }

    fn admit(&mut self, cliques: Vec<usize>, value: f64) {
        if value > self.best {
            self.best = value;
        }
        if value >= self.best - self.slack() {
            self.leaves.push((cliques, value));
            if self.leaves.len() > 4096 {
                let cutoff = self.best - self.slack();
                self.leaves.retain(|&(_, v)| v >= cutoff);
            }
        }
    }

    fn prunable(&self, upper_bound: f64) -> bool {
        upper_bound < self.best - self.slack()
    }

    fn into_leaves(self) -> Vec<Vec<usize>> {
        let cutoff = self.best - self.slack();
        self.leaves
            .into_iter()
            .filter(|&(_, v)| v >= cutoff)
            .map(|(c, _)| c)
            .collect()
    }
}

fn search_edge_disjoint(
    g: &Graph,
    infos: &[CliqueInfo],
    weights: &std::collections::BTreeMap<(usize, usize), f64>,
) -> Vec<Vec<usize>> {
    let m = g.edge_count();
    if m == 0 {
        return vec![Vec::new()];
    }
    let max_clique = infos
        .iter()
        .map(|c| c.vertex_mask.count_ones() as usize)
        .max()
        .unwrap_or(2);
    // Optimistic per-edge contribution: w/2 for nonnegative weights, w/s_max
    // for negative ones (they must be covered by something).
    let edge_opt: Vec<f64> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let w = weights[&(u, v)];
            if w >= 0.0 {
                w / 2.0
            } else {
                w / max_clique as f64
            }
        })
        .collect();
    let mut by_edge: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (ci, info) in infos.iter().enumerate() {
        let mut mask = info.edge_mask;
        while mask != 0 {
            let e = mask.trailing_zeros() as usize;
            by_edge[e].push(ci);
            mask &= mask - 1;
        }
    }
    let total_opt: f64 = edge_opt.iter().sum();
    let mut pool = LeafPool::new();
    let mut chosen = Vec::new();
    recurse_edges(
        0,
        0u128,
        0.0,
        total_opt,
        &mut chosen,
        infos,
        &by_edge,
        &edge_opt,
        m,
        &mut pool,
    );
    pool.into_leaves()
}

#[allow(clippy::too_many_arguments)]
fn recurse_edges(
    lowest: usize,
    covered: u128,
    value: f64,
    remaining_opt: f64,
    chosen: &mut Vec<usize>,
    infos: &[CliqueInfo],
    by_edge: &[Vec<usize>],
    edge_opt: &[f64],
    m: usize,
    pool: &mut LeafPool,
) {
    let mut e = lowest;
    while e < m && covered & (1u128 << e) != 0 {
        e += 1;
    }
    if e == m {
        pool.admit(chosen.clone(), value);
        return;
    }
    if pool.prunable(value + remaining_opt) {
        return;
    }
    for &ci in &by_edge[e] {
        let info = &infos[ci];
        if info.edge_mask & covered != 0 {
            continue;
        }
        let mut spent = 0.0;
        let mut mask = info.edge_mask;
        while mask != 0 {
            let idx = mask.trailing_zeros() as usize;
            spent += edge_opt[idx];
            mask &= mask - 1;
        }
        chosen.push(ci);
        recurse_edges(
            e,
            covered | info.edge_mask,
            value + info.contribution,
            remaining_opt - spent,
            chosen,
            infos,
            by_edge,
            edge_opt,
            m,
            pool,
        );
        chosen.pop();
    }
}

fn search_vertex_disjoint(
    g: &Graph,
    infos: &[CliqueInfo],
    weights: &std::collections::BTreeMap<(usize, usize), f64>,
) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    if g.edge_count() == 0 {
        return vec![Vec::new()];
    }
    let mut by_min: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (ci, info) in infos.iter().enumerate() {
        by_min[info.min_vertex].push(ci);
    }
    let mut pool = LeafPool::new();
    let mut chosen = Vec::new();
    recurse_vertices(0, 0u128, 0.0, &mut chosen, g, infos, &by_min, weights, &mut pool);
    pool.into_leaves()
}

#[allow(clippy::too_many_arguments)]
fn recurse_vertices(
    v: usize,
    used: u128,
    value: f64,
    chosen: &mut Vec<usize>,
    g: &Graph,
    infos: &[CliqueInfo],
    by_min: &[Vec<usize>],
    weights: &std::collections::BTreeMap<(usize, usize), f64>,
    pool: &mut LeafPool,
) {
    let n = g.vertex_count();
    if v == n {
        pool.admit(chosen.clone(), value);
        return;
    }
    // Optimistic remainder: each still-packable edge at w/2 when positive.
    let bound: f64 = g
        .edges()
        .iter()
        .filter(|&&(a, b)| a >= v && used & (1u128 << a) == 0 && used & (1u128 << b) == 0)
        .map(|&(a, b)| (weights[&(a, b)]).max(0.0) / 2.0)
        .sum();
    if pool.prunable(value + bound) {
        return;
    }
    // Option 1: leave v unclustered.
    recurse_vertices(v + 1, used, value, chosen, g, infos, by_min, weights, pool);
    // Option 2: open a clique whose least vertex is v.
    if used & (1u128 << v) == 0 {
        for &ci in &by_min[v] {
            let info = &infos[ci];
            if info.vertex_mask & used != 0 {
                continue;
            }
            chosen.push(ci);
            recurse_vertices(
                v + 1,
                used | info.vertex_mask,
                value + info.contribution,
                chosen,
                g,
                infos,
                by_min,
                weights,
                pool,
            );
            chosen.pop();
        }
    }
}

fn uncovered_edges(g: &Graph, cliques: &[Clique]) -> Vec<(usize, usize)> {
    g.edges()
        .iter()
        .copied()
        .filter(|&(u, v)| {
            !cliques.iter().any(|c| {
                c.vertices().binary_search(&u).is_ok() && c.vertices().binary_search(&v).is_ok()
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn triangle_splits_into_edges_under_unit_weights() {
        let g = named::complete(3);
        let cover = exact_best_cover(&g, &WeightFunction::unit(), Disjointness::EdgeDisjoint)
            .unwrap();
        assert_eq!(cover.value, 1.5);
        assert_eq!(cover.cliques.len(), 3);
        assert!(cover.uncovered_edges.is_empty());
    }

    #[test]
    fn triangle_with_high_similarity_still_prefers_edges() {
        let g = named::complete(3);
        let w = WeightFunction::custom(
            [(0usize, 1usize), (0, 2), (1, 2)].into_iter().map(|e| (e, 0.99)),
        );
        let cover = exact_best_cover(&g, &w, Disjointness::EdgeDisjoint).unwrap();
        assert!((cover.value - 1.485).abs() < 1e-12);
        assert_eq!(cover.cliques.len(), 3);
    }

    #[test]
    fn shared_vertex_triangles_vertex_disjoint() {
        // Triangles {0,1,2} and {2,3,4} share vertex 2.
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
        let cover = exact_best_cover(&g, &WeightFunction::unit(), Disjointness::VertexDisjoint)
            .unwrap();
        assert!((cover.value - 1.5).abs() < 1e-12);
        // Two optima tie at 1.5; the lexicographically least clique list wins.
        let sets: Vec<&[usize]> = cover.cliques.iter().map(|c| c.vertices()).collect();
        assert_eq!(sets, vec![&[0, 1][..], &[2, 3, 4][..]]);
        let ties = exact_best_covers_with(
            &g,
            &WeightFunction::unit(),
            Disjointness::VertexDisjoint,
            &CoverConfig::default(),
        )
        .unwrap();
        assert_eq!(ties.len(), 2);
    }

    #[test]
    fn greedy_never_beats_exact() {
        let g = named::complete(4);
        let w = WeightFunction::unit();
        let exact = exact_best_cover(&g, &w, Disjointness::EdgeDisjoint).unwrap();
        let greedy = greedy_cover(&g, &w, Disjointness::EdgeDisjoint).unwrap();
        assert!(greedy.value <= exact.value + 1e-12);
        // Edge-disjoint covers account for every edge exactly once.
        let covered: usize = exact.cliques.iter().map(|c| c.edge_count()).sum();
        assert_eq!(covered, g.edge_count());
    }

    #[test]
    fn greedy_on_edgeless_and_cycle_graphs() {
        let empty = Graph::from_edges(3, &[]).unwrap();
        let cover = greedy_cover(&empty, &WeightFunction::unit(), Disjointness::EdgeDisjoint)
            .unwrap();
        assert_eq!(cover.value, 0.0);
        assert!(cover.cliques.is_empty());

        let c5 = named::cycle(5);
        let cover = greedy_cover(&c5, &WeightFunction::unit(), Disjointness::EdgeDisjoint)
            .unwrap();
        assert_eq!(cover.cliques.len(), 5);
        assert!((cover.value - 2.5).abs() < 1e-12);
    }

    #[test]
    fn exact_cap_is_enforced() {
        let g = named::complete(8); // 28 edges > default cap of 24
        let err = exact_best_cover(&g, &WeightFunction::unit(), Disjointness::EdgeDisjoint)
            .unwrap_err();
        assert!(matches!(err, CoverError::ExactCapExceeded { edges: 28, cap: 24 }));
    }

    #[test]
    fn value_scales_linearly_with_weights() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)]).unwrap();
        let w1 = WeightFunction::custom(
            g.edges().iter().map(|&e| (e, 0.7)),
        );
        let w3 = WeightFunction::custom(
            g.edges().iter().map(|&e| (e, 2.1)),
        );
        let c1 = exact_best_cover(&g, &w1, Disjointness::EdgeDisjoint).unwrap();
        let c3 = exact_best_cover(&g, &w3, Disjointness::EdgeDisjoint).unwrap();
        assert!((c3.value - 3.0 * c1.value).abs() < 1e-9);
        assert_eq!(c1.cliques, c3.cliques);
    }
}
