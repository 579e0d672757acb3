//! Valley-elimination tour improvement: turns any feasible bipartite
//! tour into a pyramidal feasible tour by repeatedly removing the
//! minimal valley above city 1. Each step changes the length by exactly
//! the four-point value of the reconnected quadruple, so on relaxed
//! Van der Veen matrices no step ever lengthens the tour.

use crate::error::Error;
use crate::matrix::{delta, DistanceMatrix, Entry};
use crate::tour::{is_feasible_bipartite, tour_length, valleys, Coloring, Tour};

/// Audit record of one elimination step. `j + 1` was the minimal valley
/// above 1 before the step; `l` is the successor of `j` (after the
/// orientation choice) and `m` the successor of `j + 1`. The length
/// delta equals `c[j+1][j] + c[l][m] - c[j][l] - c[j+1][m]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ImproveStepRecord {
    pub j: usize,
    pub l: usize,
    pub m: usize,
    pub length_before: f64,
    pub length_after: f64,
}

impl ImproveStepRecord {
    pub fn delta(&self) -> f64 {
        self.length_after - self.length_before
    }
}

/// The smallest valley greater than 1, or `None` when the tour is
/// already pyramidal.
pub fn minimal_valley_above_one(t: &Tour) -> Option<usize> {
    valleys(t).into_iter().find(|&v| v > 1)
}

fn finite_length(c: &DistanceMatrix, t: &Tour) -> Result<f64, Error> {
    match tour_length(c, t) {
        Entry::Finite(v) => Ok(v),
        Entry::Forbidden => Err(Error::InfeasibleTour),
    }
}

/// Performs one elimination of the minimal valley above 1.
///
/// The tour (or its inversion, when the successor of `j` is below `j`)
/// is cut at the edges `(j, l)` and `(j+1, m)`, the segment from `l` to
/// `j+1` is reversed, and the edges `(j, j+1)` and `(l, m)` close the
/// tour again. The result stays bipartite-feasible and its minimal
/// valley above 1 is strictly larger.
pub fn improve_step(
    c: &DistanceMatrix,
    col: &Coloring,
    t: &Tour,
) -> Result<(Tour, ImproveStepRecord), Error> {
    if !col.is_even_odd() {
        return Err(Error::RequiresEvenOdd);
    }
    if !is_feasible_bipartite(t, col) {
        return Err(Error::InfeasibleTour);
    }
    let valley = minimal_valley_above_one(t).ok_or(Error::AlreadyPyramidal)?;
    let j = valley - 1;
    let length_before = finite_length(c, t)?;

    let n = t.n();
    let succ = t.successor(j);
    let pred = t.predecessor(j);
    // When j+1 is the minimal valley above 1, city j cannot be a peak: a
    // peak at j would close too many edges inside 1..=j for the fragments
    // of a single cycle.
    assert!(
        succ > j || pred > j,
        "both neighbors of {} are below it while {} is the minimal valley",
        j,
        valley
    );

    let mut work: Vec<usize> = t.sequence().to_vec();
    if succ < j {
        work[1..].reverse();
    }
    let pos_j = work.iter().position(|&x| x == j).expect("city in tour");
    work.rotate_left(pos_j);
    let l = work[1];
    debug_assert!(l > j);
    let pos_v = work
        .iter()
        .position(|&x| x == valley)
        .expect("valley in tour");
    let m = work[(pos_v + 1) % n];
    work[1..=pos_v].reverse();
    let out = Tour::new(work)?;
    debug_assert!(is_feasible_bipartite(&out, col));

    let length_after = finite_length(c, &out)?;
    debug_assert!({
        let d = delta(c, valley, l, j, m).expect("step edges are finite").value;
        (length_after - length_before - d).abs() < 1e-9 * (1.0 + length_before.abs())
    });
    Ok((
        out,
        ImproveStepRecord {
            j,
            l,
            m,
            length_before,
            length_after,
        },
    ))
}

/// Applies elimination steps until the tour is pyramidal. Terminates in
/// fewer than n steps because the minimal valley strictly increases.
pub fn improve_to_pyramidal(
    c: &DistanceMatrix,
    col: &Coloring,
    t: &Tour,
) -> Result<(Tour, Vec<ImproveStepRecord>), Error> {
    if !col.is_even_odd() {
        return Err(Error::RequiresEvenOdd);
    }
    if !is_feasible_bipartite(t, col) {
        return Err(Error::InfeasibleTour);
    }
    let mut cur = t.clone();
    let mut records = Vec::new();
    let mut last_valley = 1;
    while let Some(v) = minimal_valley_above_one(&cur) {
        assert!(v > last_valley, "minimal valley must strictly increase");
        last_valley = v;
        let (next, rec) = improve_step(c, col, &cur)?;
        records.push(rec);
        cur = next;
        assert!(records.len() <= t.n(), "too many elimination steps");
    }
    Ok((cur, records))
}
