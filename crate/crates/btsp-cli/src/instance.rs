//! Instance and graph file schemas.
//!
//! An instance file holds either planar points plus a metric or an
//! explicit symmetric matrix, together with a coloring ("even-odd" or
//! explicit blue/red sets). A graph file holds a bipartite edge list
//! for the reduction command.

use serde::Deserialize;

use btsp::{
    BipartiteGraph, Coloring, DistanceMatrix, Entry, Fixture, Metric, PointSet, ScalarKind,
};

use crate::json::{num, J};
use crate::CmdError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub points: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    pub metric: Option<String>,
    #[serde(default)]
    pub matrix: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub coloring: Option<ColoringSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum ColoringSpec {
    Named(String),
    Explicit { blue: Vec<usize>, red: Vec<usize> },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub k: usize,
    pub edges: Vec<[usize; 2]>,
}

/// A fully validated instance ready for the library.
#[derive(Debug)]
pub struct LoadedInstance {
    pub name: Option<String>,
    pub points: Option<PointSet>,
    pub metric: Option<Metric>,
    pub matrix: DistanceMatrix,
    pub coloring: Coloring,
}

pub fn parse_metric(name: &str) -> Result<Metric, CmdError> {
    match name {
        "euclidean" => Ok(Metric::Euclidean),
        "euclidean-rounded" => Ok(Metric::EuclideanRounded),
        "rectilinear" => Ok(Metric::Rectilinear),
        other => Err(CmdError::Input(format!(
            "unknown metric '{}' (expected euclidean, euclidean-rounded, or rectilinear)",
            other
        ))),
    }
}

pub fn metric_name(metric: Metric) -> &'static str {
    match metric {
        Metric::Euclidean => "euclidean",
        Metric::EuclideanRounded => "euclidean-rounded",
        Metric::Rectilinear => "rectilinear",
    }
}

impl LoadedInstance {
    pub fn from_fixture(fixture: Fixture) -> Self {
        Self {
            name: Some(fixture.name().to_string()),
            points: Some(fixture.points()),
            metric: Some(fixture.metric()),
            matrix: fixture.matrix(),
            coloring: Coloring::even_odd(12).expect("fixtures have 12 cities"),
        }
    }

    pub fn from_file(raw: &str) -> Result<Self, CmdError> {
        let file: InstanceFile = serde_json::from_str(raw)
            .map_err(|e| CmdError::Input(format!("malformed instance file: {}", e)))?;
        let (matrix, points, metric) = match (&file.points, &file.matrix) {
            (Some(_), Some(_)) => {
                return Err(CmdError::Input(
                    "instance file must contain exactly one of 'points' and 'matrix', not both"
                        .into(),
                ))
            }
            (None, None) => {
                return Err(CmdError::Input(
                    "instance file must contain 'points' or 'matrix'".into(),
                ))
            }
            (Some(points), None) => {
                let metric = match &file.metric {
                    Some(name) => parse_metric(name)?,
                    None => Metric::Euclidean,
                };
                let set = PointSet::new(points.iter().map(|p| (p[0], p[1])).collect())
                    .map_err(|e| CmdError::Input(e.to_string()))?;
                (
                    DistanceMatrix::from_points(&set, metric),
                    Some(set),
                    Some(metric),
                )
            }
            (None, Some(rows)) => {
                if file.metric.is_some() {
                    return Err(CmdError::Input(
                        "'metric' applies only to point instances".into(),
                    ));
                }
                let m = DistanceMatrix::from_rows(rows, 1e-9)
                    .map_err(|e| CmdError::Input(e.to_string()))?;
                (m, None, None)
            }
        };
        let n = matrix.n();
        let coloring = match &file.coloring {
            None => Coloring::even_odd(n),
            Some(ColoringSpec::Named(name)) if name == "even-odd" => Coloring::even_odd(n),
            Some(ColoringSpec::Named(other)) => {
                return Err(CmdError::Input(format!(
                    "unknown coloring '{}' (expected \"even-odd\" or explicit sets)",
                    other
                )))
            }
            Some(ColoringSpec::Explicit { blue, red }) => Coloring::new(blue.clone(), red.clone()),
        }
        .map_err(|e| CmdError::Input(e.to_string()))?;
        if coloring.n() != n {
            return Err(CmdError::Input(format!(
                "coloring covers {} cities but the instance has {}",
                coloring.n(),
                n
            )));
        }
        Ok(Self {
            name: file.name,
            points,
            metric,
            matrix,
            coloring,
        })
    }

    /// Deterministic instance-file JSON for this instance. Point
    /// instances serialize their points and metric; matrix instances
    /// their matrix. The coloring serializes as "even-odd" when it is
    /// exactly that, explicitly otherwise.
    pub fn to_json(&self) -> J {
        let mut pairs: Vec<(&'static str, J)> = Vec::new();
        if let Some(name) = &self.name {
            pairs.push(("name", J::Str(name.clone())));
        }
        match (&self.points, self.metric) {
            (Some(points), Some(metric)) => {
                let coord_kind = if points
                    .points()
                    .iter()
                    .all(|&(x, y)| x.fract() == 0.0 && y.fract() == 0.0)
                {
                    ScalarKind::ExactInteger
                } else {
                    ScalarKind::Floating
                };
                pairs.push((
                    "points",
                    J::Arr(
                        points
                            .points()
                            .iter()
                            .map(|&(x, y)| J::Arr(vec![num(x, coord_kind), num(y, coord_kind)]))
                            .collect(),
                    ),
                ));
                pairs.push(("metric", J::Str(metric_name(metric).into())));
            }
            _ => {
                pairs.push(("matrix", matrix_to_json(&self.matrix)));
            }
        }
        pairs.push(("coloring", coloring_to_json(&self.coloring)));
        J::Obj(pairs)
    }
}

pub fn matrix_to_json(m: &DistanceMatrix) -> J {
    let n = m.n();
    J::Arr(
        (1..=n)
            .map(|i| {
                J::Arr(
                    (1..=n)
                        .map(|j| {
                            if i == j {
                                return num(0.0, m.kind());
                            }
                            match m.get(i, j) {
                                Entry::Finite(v) => num(v, m.kind()),
                                Entry::Forbidden => J::Str("forbidden".into()),
                            }
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn coloring_to_json(c: &Coloring) -> J {
    if c.is_even_odd() {
        J::Str("even-odd".into())
    } else {
        J::Obj(vec![
            (
                "blue",
                J::Arr(c.blue().iter().map(|&x| J::Int(x as i64)).collect()),
            ),
            (
                "red",
                J::Arr(c.red().iter().map(|&x| J::Int(x as i64)).collect()),
            ),
        ])
    }
}

pub fn load_graph(raw: &str) -> Result<BipartiteGraph, CmdError> {
    let file: GraphFile = serde_json::from_str(raw)
        .map_err(|e| CmdError::Input(format!("malformed graph file: {}", e)))?;
    let edges: Vec<(usize, usize)> = file.edges.iter().map(|e| (e[0], e[1])).collect();
    BipartiteGraph::from_edges(file.k, &edges).map_err(|e| CmdError::Input(e.to_string()))
}
