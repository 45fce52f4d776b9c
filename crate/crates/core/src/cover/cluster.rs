//! Base cluster systems and structural characterization of clusters.
//!
//! The base system of clusters of level delta is the partition of objects
//! induced by the J-maximizing vertex-disjoint cover of the threshold
//! graph, with uncovered and isolated objects as singleton clusters and a
//! condensation center (medoid) per cluster.

use super::search::{exact_best_cover_with, greedy_cover};
use super::{CoverConfig, CoverError, Disjointness, WeightFunction};
use crate::graph::{
    diameter, geodetic_index, homeomorphic_to_complete, homeomorphic_to_moore, smooth, Graph,
    MooreCertificate, Reduction,
};
use crate::matrix::{threshold_distance, DistanceMatrix, ThresholdConfig};
use serde::Serialize;

/// A partition of all objects into clusters with one center each.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterSystem {
    /// Vertex sets, sorted by least member; singletons included.
    pub clusters: Vec<Vec<usize>>,
    /// Condensation center of each cluster.
    pub centers: Vec<usize>,
    /// The threshold level delta this system was built at.
    pub level: f64,
    /// J value of the underlying cover.
    pub value: f64,
}

/// Structural characterization of one cluster's induced subgraph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureReport {
    pub geodetic_index: u64,
    pub diameter: usize,
    pub homeomorphic_to_complete: Option<usize>,
    pub homeomorphic_to_moore: Option<MooreCertificate>,
    /// True when the cluster reduces to K_1 or K_2 (path-like), too small
    /// for the homeomorphism targets.
    pub degenerate: bool,
}

/// The medoid: the member minimizing mean distance to the other members,
/// ties to the earliest member in the matrix's label order. Singleton
/// clusters return their only member.
///
/// The cluster must be nonempty and indexed within the matrix.
pub fn condensation_center(cluster: &[usize], d: &DistanceMatrix) -> usize {
    assert!(!cluster.is_empty(), "cluster must be nonempty");
    let mut members = cluster.to_vec();
    members.sort_unstable();
    let mut best = members[0];
    let mut best_sum = f64::INFINITY;
    for &m in &members {
        let sum: f64 = members.iter().filter(|&&o| o != m).map(|&o| d.get(m, o)).sum();
        if sum < best_sum {
            best_sum = sum;
            best = m;
        }
    }
    best
}

/// Builds G_delta, covers it vertex-disjointly (exactly when within the
/// edge cap, greedily otherwise), and returns the induced partition with
/// condensation centers. Default caps.
pub fn base_cluster_system(
    d: &DistanceMatrix,
    cfg: &ThresholdConfig,
    w: &WeightFunction,
) -> Result<ClusterSystem, CoverError> {
    base_cluster_system_with(d, cfg, w, &CoverConfig::default())
}

/// As [`base_cluster_system`] with explicit caps.
pub fn base_cluster_system_with(
    d: &DistanceMatrix,
    cfg: &ThresholdConfig,
    w: &WeightFunction,
    caps: &CoverConfig,
) -> Result<ClusterSystem, CoverError> {
    let g = threshold_distance(d, cfg)?;
    let w = w.resolved_for_distance(d, cfg.delta);
    let cover = if g.edge_count() <= caps.exact_edge_cap.min(64) {
        exact_best_cover_with(&g, &w, Disjointness::VertexDisjoint, caps)?
    } else {
        greedy_cover(&g, &w, Disjointness::VertexDisjoint)?
    };
    let mut in_cluster = vec![false; g.vertex_count()];
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for clique in &cover.cliques {
        for &v in clique.vertices() {
            in_cluster[v] = true;
        }
        clusters.push(clique.vertices().to_vec());
    }
    for v in 0..g.vertex_count() {
        if !in_cluster[v] {
            clusters.push(vec![v]);
        }
    }
    clusters.sort_by_key(|c| c[0]);
    let centers = clusters
        .iter()
        .map(|c| condensation_center(c, d))
        .collect();
    Ok(ClusterSystem {
        clusters,
        centers,
        level: cfg.delta,
        value: cover.value,
    })
}

/// Characterizes the subgraph a cluster induces in the host graph:
/// geodetic index, diameter, and homeomorphism-class membership.
pub fn classify_cluster_structure(
    cluster: &[usize],
    g: &Graph,
) -> Result<StructureReport, CoverError> {
    let induced = g.induced_subgraph(cluster)?;
    if !induced.is_connected() {
        return Err(CoverError::DisconnectedCluster);
    }
    let reduction = smooth(&induced);
    let degenerate = matches!(
        crate::graph::classify_reduction(&reduction),
        Reduction::Degenerate
    );
    Ok(StructureReport {
        geodetic_index: geodetic_index(&induced)?,
        diameter: diameter(&induced)?,
        homeomorphic_to_complete: homeomorphic_to_complete(&induced),
        homeomorphic_to_moore: homeomorphic_to_moore(&induced),
        degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::matrix::{distance_matrix, Metric, ObservationTable};

    fn points(coords: &[&[f64]]) -> DistanceMatrix {
        let table = ObservationTable::new(
            (0..coords[0].len()).map(|i| format!("c{i}")).collect(),
            coords.iter().map(|r| r.to_vec()).collect(),
        )
        .unwrap();
        distance_matrix(&table, Metric::Euclidean).unwrap()
    }

    #[test]
    fn medoid_of_skewed_line() {
        let d = points(&[&[0.0], &[1.0], &[10.0]]);
        assert_eq!(condensation_center(&[0, 1, 2], &d), 1);
        assert_eq!(condensation_center(&[2], &d), 2);
    }

    #[test]
    fn tight_triple_plus_outlier() {
        let d = points(&[&[0.0], &[0.1], &[0.2], &[100.0]]);
        let cfg = ThresholdConfig::distance(0.5).unwrap();
        let system = base_cluster_system(&d, &cfg, &WeightFunction::similarity()).unwrap();
        assert_eq!(system.clusters, vec![vec![0, 1, 2], vec![3]]);
        assert_eq!(system.centers, vec![1, 3]);
        assert_eq!(system.level, 0.5);
    }

    #[test]
    fn all_far_points_become_singletons() {
        let d = points(&[&[0.0], &[10.0], &[20.0]]);
        let cfg = ThresholdConfig::distance(1.0).unwrap();
        let system = base_cluster_system(&d, &cfg, &WeightFunction::unit()).unwrap();
        assert_eq!(system.clusters, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(system.value, 0.0);
    }

    #[test]
    fn clusters_partition_the_objects() {
        let d = points(&[&[0.0], &[0.1], &[0.2], &[5.0], &[5.1], &[9.0]]);
        let cfg = ThresholdConfig::distance(0.5).unwrap();
        let system = base_cluster_system(&d, &cfg, &WeightFunction::similarity()).unwrap();
        let mut all: Vec<usize> = system.clusters.iter().flatten().copied().collect();
        all.sort_unstable();
        assert_eq!(all, vec![0, 1, 2, 3, 4, 5]);
        for (cluster, center) in system.clusters.iter().zip(&system.centers) {
            assert!(cluster.contains(center));
        }
    }

    #[test]
    fn structure_of_complete_and_cycle_clusters() {
        let k5 = named::complete(5);
        let report = classify_cluster_structure(&[0, 1, 2, 3, 4], &k5).unwrap();
        assert_eq!(report.geodetic_index, 1);
        assert_eq!(report.homeomorphic_to_complete, Some(5));
        let cert = report.homeomorphic_to_moore.unwrap();
        assert_eq!((cert.degree, cert.diameter), (4, 1));
        assert!(!report.degenerate);

        let c4 = named::cycle(4);
        let report = classify_cluster_structure(&[0, 1, 2, 3], &c4).unwrap();
        assert_eq!(report.geodetic_index, 2);
        assert_eq!(report.homeomorphic_to_complete, None);
        assert_eq!(report.homeomorphic_to_moore, None);
    }

    #[test]
    fn disconnected_cluster_is_an_error() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            classify_cluster_structure(&[0, 1, 2], &g),
            Err(CoverError::DisconnectedCluster)
        ));
    }
}
