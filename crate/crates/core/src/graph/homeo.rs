//! Topological reduction (smoothing) and homeomorphism-class tests.
//!
//! Smoothing suppresses degree-2 vertices until none remain; two graphs are
//! homeomorphic iff their reductions are isomorphic. The reduction runs to a
//! fixed point on multigraphs, so every cycle collapses to a single looped
//! vertex — that special shape is how cycle subdivisions are recognized.

use super::moore::{moore_certificate, MooreCertificate};
use super::Graph;

/// Shape of a smoothed graph, used to classify homeomorphism targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reduction {
    /// Reduction is a simple complete graph on `n >= 3` vertices.
    Complete(usize),
    /// Reduction is a single vertex with one loop: the input was a cycle
    /// (or a subdivision of one).
    Cycle,
    /// Reduction has at most two vertices and is simple (K_1 or K_2): the
    /// input was a path-like tree, too small to classify as a target.
    Degenerate,
    /// Anything else.
    Other,
}

/// Repeatedly replaces any loop-free degree-2 vertex by an edge between its
/// neighbors until no such vertex remains.
///
/// Neighbors may coincide (producing a loop) and parallel edges may arise.
/// The lowest-index eligible vertex is suppressed first, so the result is
/// deterministic; it is unique up to isomorphism regardless of order.
pub fn smooth(g: &Graph) -> Graph {
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    loop {
        let mut victim = None;
        for v in 0..n {
            if !alive[v] {
                continue;
            }
            let mut incident = Vec::new();
            let mut has_loop = false;
            for (i, &(a, b)) in edges.iter().enumerate() {
                if a == v && b == v {
                    has_loop = true;
                    break;
                }
                if a == v || b == v {
                    incident.push(i);
                }
            }
            if !has_loop && incident.len() == 2 {
                victim = Some((v, incident));
                break;
            }
        }
        let Some((v, incident)) = victim else { break };
        let other = |i: usize| -> usize {
            let (a, b) = edges[i];
            if a == v {
                b
            } else {
                a
            }
        };
        let (x, y) = (other(incident[0]), other(incident[1]));
        // Remove the higher index first so the lower stays valid.
        edges.remove(incident[1]);
        edges.remove(incident[0]);
        edges.push((x.min(y), x.max(y)));
        alive[v] = false;
    }
    let survivors: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in survivors.iter().enumerate() {
        index[v] = i;
    }
    let labels = survivors.iter().map(|&v| g.label(v).to_string()).collect();
    let mapped = edges.iter().map(|&(a, b)| (index[a], index[b])).collect();
    Graph::new(labels, mapped).expect("smoothing preserves well-formedness")
}

/// Classifies an already-smoothed graph.
pub(crate) fn classify_reduction(r: &Graph) -> Reduction {
    let n = r.vertex_count();
    if n == 1 && r.edge_count() == 1 && r.edges()[0] == (0, 0) {
        return Reduction::Cycle;
    }
    if n <= 2 && r.is_simple() {
        return Reduction::Degenerate;
    }
    if n >= 3 && r.is_simple() && r.edge_count() == n * (n - 1) / 2 {
        let complete = (0..n).all(|u| ((u + 1)..n).all(|v| r.edge_multiplicity(u, v) == 1));
        if complete {
            return Reduction::Complete(n);
        }
    }
    Reduction::Other
}

/// If the smoothed graph is K_n for some n >= 3, returns n.
///
/// Paths and single edges reduce to K_2 or smaller and are treated as
/// degenerate rather than "homeomorphic to K_2"; cycle subdivisions reduce
/// to a looped vertex, which is not simple, and also return `None`.
pub fn homeomorphic_to_complete(g: &Graph) -> Option<usize> {
    match classify_reduction(&smooth(g)) {
        Reduction::Complete(n) => Some(n),
        _ => None,
    }
}

/// Canonical certificate reported for cycle subdivisions: C_5 is the Moore
/// representative of the cycle homeomorphism class.
const CYCLE_MOORE: MooreCertificate = MooreCertificate {
    degree: 2,
    diameter: 2,
    order: 5,
};

/// If the smoothed graph is a Moore graph (or the input is a cycle
/// subdivision of length >= 5), returns the certificate of the target.
///
/// Cycles collapse to a looped vertex under smoothing, so they are routed
/// through a length check instead of an isomorphism test: any cycle on at
/// least 5 vertices reports the C_5 certificate, while C_3 and C_4 are too
/// short to be subdivisions of it and report nothing. Reductions smaller
/// than 3 vertices are degenerate and report nothing.
pub fn homeomorphic_to_moore(g: &Graph) -> Option<MooreCertificate> {
    let r = smooth(g);
    match classify_reduction(&r) {
        Reduction::Cycle => {
            if g.vertex_count() >= 5 {
                Some(CYCLE_MOORE)
            } else {
                None
            }
        }
        Reduction::Degenerate => None,
        _ => {
            if r.is_simple() && r.vertex_count() >= 3 {
                moore_certificate(&r).ok().flatten()
            } else {
                None
            }
        }
    }
}
