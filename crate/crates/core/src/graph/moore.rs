//! Moore graph detection.
//!
//! A Moore graph is a k-regular graph of diameter d whose order meets the
//! Moore bound n = 1 + k * sum_{i=0..d-1} (k-1)^i with equality; for d >= 2
//! this forces girth 2d+1, and complete graphs are the d = 1 case.

use super::{diameter, girth, Graph, GraphError};
use serde::{Deserialize, Serialize};

/// Witness that a graph attains the Moore bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MooreCertificate {
    /// Regular degree.
    #[serde(rename = "k")]
    pub degree: usize,
    /// Diameter.
    #[serde(rename = "d")]
    pub diameter: usize,
    /// Order, equal to the Moore bound for (k, d).
    #[serde(rename = "n")]
    pub order: usize,
}

/// The Moore bound 1 + k * sum_{i=0..d-1} (k-1)^i.
pub(crate) fn moore_bound(degree: usize, diam: usize) -> usize {
    let mut sum = 0usize;
    let mut term = 1usize;
    for _ in 0..diam {
        sum += term;
        term = term.saturating_mul(degree.saturating_sub(1));
    }
    1 + degree.saturating_mul(sum)
}

/// Returns a certificate iff the graph is k-regular with diameter d, order
/// equal to the Moore bound, and (d = 1 or girth = 2d+1).
///
/// Within connected simple graphs this accepts exactly the complete graphs
/// K_n (n >= 2), the odd cycles, and (at order 10) the Petersen graph.
pub fn moore_certificate(g: &Graph) -> Result<Option<MooreCertificate>, GraphError> {
    if !g.is_simple() {
        return Err(GraphError::NonSimpleGraph);
    }
    if !g.is_connected() {
        return Err(GraphError::DisconnectedGraph);
    }
    let n = g.vertex_count();
    let k = g.degree(0);
    if (1..n).any(|v| g.degree(v) != k) {
        return Ok(None);
    }
    let d = diameter(g)?;
    if n != moore_bound(k, d) {
        return Ok(None);
    }
    if d != 1 && girth(g) != Some(2 * d + 1) {
        return Ok(None);
    }
    Ok(Some(MooreCertificate {
        degree: k,
        diameter: d,
        order: n,
    }))
}
