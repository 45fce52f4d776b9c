//! Distance and correlation matrices and the threshold-graph rules.
//!
//! Distances use the non-strict rule (edge iff d <= delta) and correlations
//! the strict absolute-value rule (edge iff |r| > delta); the asymmetry is
//! kept exactly as defined rather than unified.

use crate::graph::Graph;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance used when validating symmetry, diagonals, and entry ranges.
const VALIDATION_TOL: f64 = 1e-9;

/// Errors from matrix construction, validation, and thresholding.
#[derive(Debug, Error)]
pub enum MatrixError {
    #[error("observation table has missing or non-finite values (row {row}, column {column})")]
    MissingValues { row: usize, column: String },
    #[error("need at least 2 objects, got {0}")]
    TooFewObjects(usize),
    #[error("need at least 3 observations, got {0}")]
    TooFewObservations(usize),
    #[error("column {0} has zero sample variance; its correlations are undefined")]
    ZeroVarianceColumn(String),
    #[error("observation table must be rectangular with at least one column")]
    MalformedTable,
    #[error("matrix is not square: {rows} rows, {columns} columns")]
    NotSquare { rows: usize, columns: usize },
    #[error("matrix violates {property} at ({i}, {j})")]
    InvalidEntry {
        property: &'static str,
        i: usize,
        j: usize,
    },
    #[error("threshold delta must satisfy {0}")]
    InvalidDelta(&'static str),
    #[error("threshold config mode {expected} required, got {got}")]
    ModeMismatch {
        expected: &'static str,
        got: &'static str,
    },
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed input: {0}")]
    Malformed(String),
}

/// A rectangular table of numeric observations: rows are objects,
/// columns are named variables.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservationTable {
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl ObservationTable {
    pub fn new(columns: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self, MatrixError> {
        if columns.is_empty() || rows.iter().any(|r| r.len() != columns.len()) {
            return Err(MatrixError::MalformedTable);
        }
        Ok(ObservationTable { columns, rows })
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    /// Values of one column across all rows.
    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    fn check_finite(&self) -> Result<(), MatrixError> {
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if !x.is_finite() {
                    return Err(MatrixError::MissingValues {
                        row: i,
                        column: self.columns[j].clone(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Metric used for pairwise object distances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Euclidean,
    Manhattan,
}

impl Metric {
    fn apply(&self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            Metric::Euclidean => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt(),
            Metric::Manhattan => a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum(),
        }
    }
}

/// Symmetric matrix of pairwise object distances with zero diagonal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceMatrix {
    labels: Vec<String>,
    entries: Vec<Vec<f64>>,
}

impl DistanceMatrix {
    /// Validates symmetry (to 1e-9), zero diagonal, finiteness, and
    /// nonnegativity; stores the symmetrized entries.
    pub fn new(labels: Vec<String>, entries: Vec<Vec<f64>>) -> Result<Self, MatrixError> {
        let k = labels.len();
        if entries.len() != k || entries.iter().any(|r| r.len() != k) {
            return Err(MatrixError::NotSquare {
                rows: entries.len(),
                columns: entries.first().map_or(0, |r| r.len()),
            });
        }
        let mut m = entries;
        for i in 0..k {
            for j in 0..k {
                let x = m[i][j];
                if !x.is_finite() {
                    return Err(MatrixError::InvalidEntry {
                        property: "finiteness",
                        i,
                        j,
                    });
                }
                if x < -VALIDATION_TOL {
                    return Err(MatrixError::InvalidEntry {
                        property: "nonnegativity",
                        i,
                        j,
                    });
                }
            }
            if m[i][i].abs() > VALIDATION_TOL {
                return Err(MatrixError::InvalidEntry {
                    property: "zero diagonal",
                    i,
                    j: i,
                });
            }
            m[i][i] = 0.0;
        }
        for i in 0..k {
            for j in (i + 1)..k {
                let scale = m[i][j].abs().max(1.0);
                if (m[i][j] - m[j][i]).abs() > VALIDATION_TOL * scale {
                    return Err(MatrixError::InvalidEntry {
                        property: "symmetry",
                        i,
                        j,
                    });
                }
                let avg = 0.5 * (m[i][j] + m[j][i]);
                m[i][j] = avg.max(0.0);
                m[j][i] = m[i][j];
            }
        }
        Ok(DistanceMatrix { labels, entries: m })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn entries(&self) -> &[Vec<f64>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i][j]
    }

    pub fn max_entry(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .copied()
            .fold(0.0, f64::max)
    }
}

/// Symmetric matrix of Pearson correlations with unit diagonal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationMatrix {
    labels: Vec<String>,
    entries: Vec<Vec<f64>>,
}

impl CorrelationMatrix {
    /// Validates symmetry, unit diagonal, and entries in [-1, 1]
    /// (all to 1e-9); clamps and symmetrizes within tolerance.
    pub fn new(labels: Vec<String>, entries: Vec<Vec<f64>>) -> Result<Self, MatrixError> {
        let n = labels.len();
        if entries.len() != n || entries.iter().any(|r| r.len() != n) {
            return Err(MatrixError::NotSquare {
                rows: entries.len(),
                columns: entries.first().map_or(0, |r| r.len()),
            });
        }
        let mut m = entries;
        for i in 0..n {
            for j in 0..n {
                let x = m[i][j];
                if !x.is_finite() || x.abs() > 1.0 + VALIDATION_TOL {
                    return Err(MatrixError::InvalidEntry {
                        property: "range [-1, 1]",
                        i,
                        j,
                    });
                }
            }
            if (m[i][i] - 1.0).abs() > VALIDATION_TOL {
                return Err(MatrixError::InvalidEntry {
                    property: "unit diagonal",
                    i,
                    j: i,
                });
            }
            m[i][i] = 1.0;
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if (m[i][j] - m[j][i]).abs() > VALIDATION_TOL {
                    return Err(MatrixError::InvalidEntry {
                        property: "symmetry",
                        i,
                        j,
                    });
                }
                let avg = (0.5 * (m[i][j] + m[j][i])).clamp(-1.0, 1.0);
                m[i][j] = avg;
                m[j][i] = avg;
            }
        }
        Ok(CorrelationMatrix { labels, entries: m })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn entries(&self) -> &[Vec<f64>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i][j]
    }

    /// Pearson correlations over a list of equal-length columns.
    ///
    /// Requires at least 3 observations and nonzero variance in every
    /// column; an undefined coefficient is an error, not a silent zero.
    pub fn from_columns(
        labels: Vec<String>,
        columns: &[Vec<f64>],
    ) -> Result<Self, MatrixError> {
        let n = columns.len();
        if n == 0 || labels.len() != n {
            return Err(MatrixError::MalformedTable);
        }
        let rows = columns[0].len();
        if columns.iter().any(|c| c.len() != rows) {
            return Err(MatrixError::MalformedTable);
        }
        if rows < 3 {
            return Err(MatrixError::TooFewObservations(rows));
        }
        let means: Vec<f64> = columns
            .iter()
            .map(|c| c.iter().sum::<f64>() / rows as f64)
            .collect();
        let centered: Vec<Vec<f64>> = columns
            .iter()
            .zip(&means)
            .map(|(c, &m)| c.iter().map(|&x| x - m).collect())
            .collect();
        let norms: Vec<f64> = centered
            .iter()
            .map(|c| c.iter().map(|x| x * x).sum::<f64>().sqrt())
            .collect();
        for (j, &norm) in norms.iter().enumerate() {
            if norm == 0.0 {
                return Err(MatrixError::ZeroVarianceColumn(labels[j].clone()));
            }
        }
        let mut entries = vec![vec![0.0; n]; n];
        for i in 0..n {
            entries[i][i] = 1.0;
            for j in (i + 1)..n {
                let dot: f64 = centered[i].iter().zip(&centered[j]).map(|(a, b)| a * b).sum();
                let r = (dot / (norms[i] * norms[j])).clamp(-1.0, 1.0);
                entries[i][j] = r;
                entries[j][i] = r;
            }
        }
        Ok(CorrelationMatrix { labels, entries })
    }
}

/// Whether a threshold applies to distances or correlations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThresholdMode {
    Distance,
    Correlation,
}

impl ThresholdMode {
    fn name(&self) -> &'static str {
        match self {
            ThresholdMode::Distance => "distance",
            ThresholdMode::Correlation => "correlation",
        }
    }
}

/// A threshold level delta together with the rule it feeds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdConfig {
    pub delta: f64,
    pub mode: ThresholdMode,
}

impl ThresholdConfig {
    pub fn distance(delta: f64) -> Result<Self, MatrixError> {
        if !(delta >= 0.0) || !delta.is_finite() {
            return Err(MatrixError::InvalidDelta("delta >= 0"));
        }
        Ok(ThresholdConfig {
            delta,
            mode: ThresholdMode::Distance,
        })
    }

    pub fn correlation(delta: f64) -> Result<Self, MatrixError> {
        if !(delta >= 0.0) || delta >= 1.0 {
            return Err(MatrixError::InvalidDelta("0 <= delta < 1"));
        }
        Ok(ThresholdConfig {
            delta,
            mode: ThresholdMode::Correlation,
        })
    }
}

/// Pairwise distances between rows-as-objects under the chosen metric.
///
/// Object labels are the row indices rendered as strings.
pub fn distance_matrix(
    data: &ObservationTable,
    metric: Metric,
) -> Result<DistanceMatrix, MatrixError> {
    if data.row_count() < 2 {
        return Err(MatrixError::TooFewObjects(data.row_count()));
    }
    data.check_finite()?;
    let k = data.row_count();
    let labels: Vec<String> = (0..k).map(|i| i.to_string()).collect();
    let mut entries = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in (i + 1)..k {
            let d = metric.apply(&data.rows()[i], &data.rows()[j]);
            entries[i][j] = d;
            entries[j][i] = d;
        }
    }
    Ok(DistanceMatrix { labels, entries })
}

/// Pearson correlation over columns-as-variables.
pub fn correlation_matrix(data: &ObservationTable) -> Result<CorrelationMatrix, MatrixError> {
    if data.row_count() < 3 {
        return Err(MatrixError::TooFewObservations(data.row_count()));
    }
    data.check_finite()?;
    let columns: Vec<Vec<f64>> = (0..data.column_count()).map(|j| data.column(j)).collect();
    CorrelationMatrix::from_columns(data.columns().to_vec(), &columns)
}

/// Threshold graph G_delta: edge {i, j} present iff d_ij <= delta
/// (non-strict, as defined). Always simple.
pub fn threshold_distance(
    d: &DistanceMatrix,
    cfg: &ThresholdConfig,
) -> Result<Graph, MatrixError> {
    if cfg.mode != ThresholdMode::Distance {
        return Err(MatrixError::ModeMismatch {
            expected: "distance",
            got: cfg.mode.name(),
        });
    }
    let k = d.len();
    let mut edges = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            if d.get(i, j) <= cfg.delta {
                edges.push((i, j));
            }
        }
    }
    Ok(Graph::new(d.labels.clone(), edges).expect("threshold graph is well formed"))
}

/// Threshold graph R_delta: edge {i, j} present iff |r_ij| > delta
/// (strict, as defined). The diagonal is ignored. Always simple.
pub fn threshold_correlation(
    r: &CorrelationMatrix,
    cfg: &ThresholdConfig,
) -> Result<Graph, MatrixError> {
    if cfg.mode != ThresholdMode::Correlation {
        return Err(MatrixError::ModeMismatch {
            expected: "correlation",
            got: cfg.mode.name(),
        });
    }
    let n = r.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if r.get(i, j).abs() > cfg.delta {
                edges.push((i, j));
            }
        }
    }
    Ok(Graph::new(r.labels.clone(), edges).expect("threshold graph is well formed"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(columns: &[&str], rows: &[&[f64]]) -> ObservationTable {
        ObservationTable::new(
            columns.iter().map(|s| s.to_string()).collect(),
            rows.iter().map(|r| r.to_vec()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn euclidean_three_four_five() {
        let t = table(&["x", "y"], &[&[0.0, 0.0], &[3.0, 4.0]]);
        let d = distance_matrix(&t, Metric::Euclidean).unwrap();
        assert_eq!(d.get(0, 1), 5.0);
        let m = distance_matrix(&t, Metric::Manhattan).unwrap();
        assert_eq!(m.get(0, 1), 7.0);
    }

    #[test]
    fn identical_rows_have_zero_distance() {
        let t = table(&["x"], &[&[2.5], &[2.5]]);
        let d = distance_matrix(&t, Metric::Euclidean).unwrap();
        assert_eq!(d.get(0, 1), 0.0);
    }

    #[test]
    fn distance_errors() {
        let t = table(&["x"], &[&[1.0]]);
        assert!(matches!(
            distance_matrix(&t, Metric::Euclidean),
            Err(MatrixError::TooFewObjects(1))
        ));
        let t = table(&["x"], &[&[1.0], &[f64::NAN]]);
        assert!(matches!(
            distance_matrix(&t, Metric::Euclidean),
            Err(MatrixError::MissingValues { row: 1, .. })
        ));
    }

    #[test]
    fn correlation_of_column_with_itself_and_negation() {
        let t = table(
            &["a", "b", "c"],
            &[&[1.0, 1.0, -1.0], &[2.0, 2.0, -2.0], &[4.0, 4.0, -4.0]],
        );
        let r = correlation_matrix(&t).unwrap();
        assert!((r.get(0, 1) - 1.0).abs() < 1e-12);
        assert!((r.get(0, 2) + 1.0).abs() < 1e-12);
        assert_eq!(r.get(0, 0), 1.0);
    }

    #[test]
    fn correlation_errors() {
        let t = table(&["a"], &[&[1.0], &[2.0]]);
        assert!(matches!(
            correlation_matrix(&t),
            Err(MatrixError::TooFewObservations(2))
        ));
        let t = table(&["a", "flat"], &[&[1.0, 3.0], &[2.0, 3.0], &[5.0, 3.0]]);
        match correlation_matrix(&t) {
            Err(MatrixError::ZeroVarianceColumn(name)) => assert_eq!(name, "flat"),
            other => panic!("expected ZeroVarianceColumn, got {other:?}"),
        }
    }

    #[test]
    fn distance_threshold_is_non_strict() {
        let d = DistanceMatrix::new(
            vec!["0".into(), "1".into()],
            vec![vec![0.0, 0.5], vec![0.5, 0.0]],
        )
        .unwrap();
        let g = threshold_distance(&d, &ThresholdConfig::distance(0.5).unwrap()).unwrap();
        assert_eq!(g.edge_count(), 1); // d = delta keeps the edge
        let g = threshold_distance(&d, &ThresholdConfig::distance(0.3).unwrap()).unwrap();
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn correlation_threshold_is_strict_on_absolute_value() {
        let r = CorrelationMatrix::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![1.0, 0.95, -0.95],
                vec![0.95, 1.0, 0.9],
                vec![-0.95, 0.9, 1.0],
            ],
        )
        .unwrap();
        let cfg = ThresholdConfig::correlation(0.9).unwrap();
        let g = threshold_correlation(&r, &cfg).unwrap();
        // |0.95| > 0.9 and |-0.95| > 0.9, but 0.9 > 0.9 is false.
        assert_eq!(g.edges(), &[(0, 1), (0, 2)]);
        assert!(g.is_simple());
    }

    #[test]
    fn three_close_points_form_a_triangle() {
        let t = table(&["x"], &[&[0.0], &[0.1], &[0.2]]);
        let d = distance_matrix(&t, Metric::Euclidean).unwrap();
        let g = threshold_distance(&d, &ThresholdConfig::distance(0.5).unwrap()).unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn delta_validation() {
        assert!(ThresholdConfig::distance(-1.0).is_err());
        assert!(ThresholdConfig::correlation(1.0).is_err());
        assert!(ThresholdConfig::correlation(0.0).is_ok());
    }

    #[test]
    fn matrix_validation_rejects_bad_input() {
        let bad = DistanceMatrix::new(
            vec!["0".into(), "1".into()],
            vec![vec![0.0, 1.0], vec![2.0, 0.0]],
        );
        assert!(matches!(bad, Err(MatrixError::InvalidEntry { .. })));
        let bad = CorrelationMatrix::new(
            vec!["0".into(), "1".into()],
            vec![vec![1.0, 1.5], vec![1.5, 1.0]],
        );
        assert!(matches!(bad, Err(MatrixError::InvalidEntry { .. })));
    }

    #[test]
    fn matrix_json_shape() {
        let d = DistanceMatrix::new(
            vec!["a".into(), "b".into()],
            vec![vec![0.0, 1.0], vec![1.0, 0.0]],
        )
        .unwrap();
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, r#"{"labels":["a","b"],"entries":[[0.0,1.0],[1.0,0.0]]}"#);
    }
}
