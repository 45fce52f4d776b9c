//! Well-known small graphs used throughout the test suites and docs.

use super::Graph;

/// Complete graph on `n` vertices (n >= 1).
pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((i, j));
        }
    }
    Graph::from_edges(n, &edges).expect("complete graph is well formed")
}

/// Cycle on `n` vertices (n >= 3).
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least 3 vertices");
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).expect("cycle is well formed")
}

/// Path on `n` vertices (n >= 1).
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).expect("path is well formed")
}

/// The Petersen graph: 10 vertices, 3-regular, girth 5, diameter 2.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5)); // outer pentagon
        edges.push((i, i + 5)); // spokes
        edges.push((i + 5, (i + 2) % 5 + 5)); // inner pentagram
    }
    Graph::from_edges(10, &edges).expect("petersen graph is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn petersen_is_three_regular_on_ten_vertices() {
        let g = petersen();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.edge_count(), 15);
        assert!((0..10).all(|v| g.degree(v) == 3));
        assert!(g.is_simple());
        assert!(g.is_connected());
    }

    #[test]
    fn complete_and_cycle_counts() {
        assert_eq!(complete(4).edge_count(), 6);
        assert_eq!(cycle(5).edge_count(), 5);
        assert_eq!(path(5).edge_count(), 4);
    }
}
