//! Command implementations. Each returns the stdout payload and the
//! process exit code, or a classified error: domain-negative outcomes
//! exit 1, usage and input problems exit 2.

use std::fs;
use std::path::Path;

use btsp::{
    apply_permutations, brute_force_btsp, check_relaxed_van_der_veen, check_van_der_veen,
    extract_a, improve_to_pyramidal, recognize, reduce_graph, solve_pyramidal_btsp, BipartiteGraph,
    Coloring, DistanceMatrix, Entry, PointSet, ScalarKind, Tour, ViolationReport,
};

use crate::instance::{coloring_to_json, matrix_to_json, LoadedInstance};
use crate::json::{num, to_string, J};
use crate::svg;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CmdError {
    /// Negative domain outcome (infeasible, unsolvable, oversized).
    Domain(String),
    /// Malformed file, unknown flag value, or inconsistent input.
    Input(String),
}

impl CmdError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CmdError::Domain(_) => 1,
            CmdError::Input(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CmdError::Domain(m) | CmdError::Input(m) => m,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmdOutput {
    pub stdout: String,
    pub code: i32,
}

fn ok(stdout: String) -> Result<CmdOutput, CmdError> {
    Ok(CmdOutput { stdout, code: 0 })
}

fn report_json(family: &str, report: &ViolationReport, kind: ScalarKind) -> J {
    J::Obj(vec![
        ("family", J::Str(family.into())),
        ("tolerance", num(report.tolerance, kind)),
        ("total", J::Int(report.total_checked as i64)),
        ("violated_count", J::Int(report.violations.len() as i64)),
        (
            "violations",
            J::Arr(
                report
                    .violations
                    .iter()
                    .map(|v| {
                        J::Obj(vec![
                            ("i", J::Int(v.indices[0] as i64)),
                            ("j", J::Int(v.indices[1] as i64)),
                            ("m", J::Int(v.indices[2] as i64)),
                            ("slack", num(v.slack, kind)),
                        ])
                    })
                    .collect(),
            ),
        ),
    ])
}

pub fn cmd_check(
    instance: &LoadedInstance,
    relaxed: bool,
    tolerance: f64,
) -> Result<CmdOutput, CmdError> {
    let c = &instance.matrix;
    let (family, report) = if relaxed {
        (
            "relaxed-van-der-veen",
            check_relaxed_van_der_veen(c, tolerance),
        )
    } else {
        ("van-der-veen", check_van_der_veen(c, tolerance))
    };
    let report = report.map_err(|e| CmdError::Input(e.to_string()))?;
    let code = if report.is_clean() { 0 } else { 1 };
    Ok(CmdOutput {
        stdout: to_string(&report_json(family, &report, c.kind())) + "\n",
        code,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Pyramidal,
    Brute,
}

impl Algorithm {
    fn name(self) -> &'static str {
        match self {
            Algorithm::Pyramidal => "pyramidal",
            Algorithm::Brute => "brute",
        }
    }
}

pub fn cmd_solve(instance: &LoadedInstance, algorithm: Algorithm) -> Result<CmdOutput, CmdError> {
    let c = &instance.matrix;
    let col = &instance.coloring;
    let (tour, length) = match algorithm {
        Algorithm::Pyramidal => solve_pyramidal_btsp(c, col),
        Algorithm::Brute => brute_force_btsp(c, col),
    }
    .map_err(|e| CmdError::Domain(e.to_string()))?;
    let json = J::Obj(vec![
        ("algorithm", J::Str(algorithm.name().into())),
        ("length", num(length, c.kind())),
        ("tour", tour_json(&tour)),
    ]);
    ok(to_string(&json) + "\n")
}

fn tour_json(t: &Tour) -> J {
    J::Arr(t.sequence().iter().map(|&c| J::Int(c as i64)).collect())
}

fn perm_json(p: &[usize]) -> J {
    J::Arr(p.iter().map(|&x| J::Int(x as i64)).collect())
}

pub fn cmd_recognize(
    instance: &LoadedInstance,
    tolerance: f64,
    apply: Option<&Path>,
) -> Result<CmdOutput, CmdError> {
    let c = &instance.matrix;
    let a = extract_a(c).map_err(|e| CmdError::Input(e.to_string()))?;
    let Some(result) = recognize(&a, tolerance) else {
        return Ok(CmdOutput {
            stdout: to_string(&J::Obj(vec![("found", J::Bool(false))])) + "\n",
            code: 1,
        });
    };
    debug_assert!(btsp::check_a_system(
        &apply_permutations(&a, &result.gamma, &result.delta).expect("verified permutations"),
        tolerance
    )
    .is_clean());

    if let Some(path) = apply {
        let relabeled = relabel_instance(instance, &result.gamma, &result.delta);
        let payload = to_string(&relabeled.to_json()) + "\n";
        fs::write(path, payload).map_err(|e| {
            CmdError::Input(format!("cannot write {}: {}", path.display(), e))
        })?;
    }

    let json = J::Obj(vec![
        ("found", J::Bool(true)),
        ("gamma", perm_json(&result.gamma)),
        ("delta", perm_json(&result.delta)),
    ]);
    ok(to_string(&json) + "\n")
}

/// Applies the row order to odd cities and the column order to even
/// cities, permuting points when the instance has them and the matrix
/// otherwise.
fn relabel_instance(
    instance: &LoadedInstance,
    gamma: &[usize],
    delta: &[usize],
) -> LoadedInstance {
    let n = instance.matrix.n();
    let mut relabeling = vec![0usize; n];
    for i in 1..=n / 2 {
        relabeling[2 * i - 2] = 2 * gamma[i - 1] - 1;
        relabeling[2 * i - 1] = 2 * delta[i - 1];
    }
    match (&instance.points, instance.metric) {
        (Some(points), Some(metric)) => {
            let permuted: Vec<(f64, f64)> = relabeling
                .iter()
                .map(|&old| points.point(old))
                .collect();
            let set = PointSet::new(permuted).expect("relabeled coordinates stay finite");
            let matrix = DistanceMatrix::from_points(&set, metric);
            LoadedInstance {
                name: instance.name.clone(),
                points: Some(set),
                metric: Some(metric),
                matrix,
                coloring: Coloring::even_odd(n).expect("even city count"),
            }
        }
        _ => {
            let matrix = DistanceMatrix::symmetric_from_fn(n, instance.matrix.kind(), |u, v| {
                instance.matrix.get(relabeling[u - 1], relabeling[v - 1])
            });
            LoadedInstance {
                name: instance.name.clone(),
                points: None,
                metric: None,
                matrix,
                coloring: Coloring::even_odd(n).expect("even city count"),
            }
        }
    }
}

pub fn cmd_reduce(graph: &BipartiteGraph) -> Result<CmdOutput, CmdError> {
    let (matrix, coloring) = reduce_graph(graph);
    let json = J::Obj(vec![
        ("matrix", matrix_to_json(&matrix)),
        ("coloring", coloring_to_json(&coloring)),
    ]);
    ok(to_string(&json) + "\n")
}

pub fn parse_tour(spec: &str, n: usize) -> Result<Tour, CmdError> {
    let cities: Vec<usize> = spec
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|e| CmdError::Input(format!("bad tour '{}': {}", spec, e)))?;
    if cities.len() != n {
        return Err(CmdError::Input(format!(
            "tour has {} cities, instance has {}",
            cities.len(),
            n
        )));
    }
    Tour::new(cities).map_err(|e| CmdError::Input(e.to_string()))
}

pub fn cmd_improve(instance: &LoadedInstance, tour_spec: &str) -> Result<CmdOutput, CmdError> {
    let c = &instance.matrix;
    let col = &instance.coloring;
    let tour = parse_tour(tour_spec, c.n())?;
    let length_before = match btsp::tour_length(c, &tour) {
        Entry::Finite(v) => v,
        Entry::Forbidden => {
            return Err(CmdError::Domain("tour crosses a masked edge".into()))
        }
    };
    let (out, records) =
        improve_to_pyramidal(c, col, &tour).map_err(|e| CmdError::Domain(e.to_string()))?;
    let length_after = match btsp::tour_length(c, &out) {
        Entry::Finite(v) => v,
        Entry::Forbidden => unreachable!("improved tour uses allowed edges"),
    };
    let kind = c.kind();
    let json = J::Obj(vec![
        ("length_before", num(length_before, kind)),
        ("length_after", num(length_after, kind)),
        ("tour", tour_json(&out)),
        (
            "steps",
            J::Arr(
                records
                    .iter()
                    .map(|r| {
                        J::Obj(vec![
                            ("j", J::Int(r.j as i64)),
                            ("l", J::Int(r.l as i64)),
                            ("m", J::Int(r.m as i64)),
                            ("length_before", num(r.length_before, kind)),
                            ("length_after", num(r.length_after, kind)),
                            ("delta", num(r.delta(), kind)),
                        ])
                    })
                    .collect(),
            ),
        ),
    ]);
    ok(to_string(&json) + "\n")
}

pub fn cmd_render(
    instance: &LoadedInstance,
    tour_spec: Option<&str>,
    out_path: &Path,
) -> Result<CmdOutput, CmdError> {
    let Some(points) = &instance.points else {
        return Err(CmdError::Domain("no coordinates to render".into()));
    };
    let tour = tour_spec
        .map(|s| parse_tour(s, points.len()))
        .transpose()?;
    let svg = svg::render(points, &instance.coloring, tour.as_ref());
    fs::write(out_path, svg)
        .map_err(|e| CmdError::Input(format!("cannot write {}: {}", out_path.display(), e)))?;
    ok(String::new())
}
