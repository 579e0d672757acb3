//! Recognition of reduced matrices that satisfy the blue-red inequality
//! system after independent row and column renumberings.
//!
//! The procedure tries every row as the first row, then alternately
//! fixes one column and one row by a greedy dominance scan on the
//! residual matrix. Every produced permutation pair is post-verified
//! with the checker before it is returned, so the output is certified.
//! Total running time is O(k^4).

use crate::conditions::{check_a_system, effective_tolerance, ReducedMatrix};
use crate::error::Error;
use crate::matrix::DistanceMatrix;

/// Residual matrix after subtracting a fixed row or column; the
/// subtracted line is identically zero.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedMatrix {
    k: usize,
    entries: Vec<f64>,
}

impl NormalizedMatrix {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i - 1) * self.k + (j - 1)]
    }

    pub fn row(&self, i: usize) -> Vec<f64> {
        (1..=self.k).map(|j| self.get(i, j)).collect()
    }
}

/// Subtracts row `r` from every row: out[s][t] = a[s][t] - a[r][t].
pub fn normalize_rows(a: &ReducedMatrix, r: usize) -> NormalizedMatrix {
    let k = a.k();
    let mut entries = Vec::with_capacity(k * k);
    for s in 1..=k {
        for t in 1..=k {
            entries.push(a.get(s, t) - a.get(r, t));
        }
    }
    NormalizedMatrix { k, entries }
}

/// Subtracts column `c` from every column: out[s][t] = a[s][t] - a[s][c].
pub fn normalize_cols(a: &ReducedMatrix, c: usize) -> NormalizedMatrix {
    let k = a.k();
    let mut entries = Vec::with_capacity(k * k);
    for s in 1..=k {
        for t in 1..=k {
            entries.push(a.get(s, t) - a.get(s, c));
        }
    }
    NormalizedMatrix { k, entries }
}

/// Outcome of one greedy selection: the chosen index and how many
/// indices qualified (ties are interchangeable up to constant shifts).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Selection {
    pub index: usize,
    pub tie_count: usize,
}

/// Picks a column `c` of `cols` such that, in the residual matrix with
/// row `fixed_row` subtracted, every row of `rows` attains its maximum
/// over `cols` at `c` (within `tol`). Smallest qualifying index wins.
pub fn select_next_column(
    a: &ReducedMatrix,
    fixed_row: usize,
    rows: &[usize],
    cols: &[usize],
    tol: f64,
) -> Option<Selection> {
    scan(cols, rows, tol, |t, s| a.get(s, t) - a.get(fixed_row, t))
}

/// Picks a row `r` of `rows` such that, in the residual matrix with
/// column `fixed_col` subtracted, every column of `cols` attains its
/// maximum over `rows` at `r` (within `tol`). Smallest qualifying index
/// wins.
pub fn select_next_row(
    a: &ReducedMatrix,
    fixed_col: usize,
    rows: &[usize],
    cols: &[usize],
    tol: f64,
) -> Option<Selection> {
    scan(rows, cols, tol, |r, m| a.get(r, m) - a.get(r, fixed_col))
}

/// Shared dominance scan: a candidate of `candidates` qualifies iff for
/// every line of `lines` its residual attains that line's maximum over
/// all candidates, within `tol`.
fn scan<F>(candidates: &[usize], lines: &[usize], tol: f64, residual: F) -> Option<Selection>
where
    F: Fn(usize, usize) -> f64,
{
    if candidates.is_empty() {
        return None;
    }
    let mut qualifies = vec![true; candidates.len()];
    for &line in lines {
        let mut max = f64::NEG_INFINITY;
        for &cand in candidates {
            max = max.max(residual(cand, line));
        }
        for (q, &cand) in qualifies.iter_mut().zip(candidates) {
            if *q && residual(cand, line) < max - tol {
                *q = false;
            }
        }
    }
    let tie_count = qualifies.iter().filter(|&&q| q).count();
    candidates
        .iter()
        .zip(&qualifies)
        .find(|(_, &q)| q)
        .map(|(&index, _)| Selection { index, tie_count })
}

/// Whether a selection step fixed a row or a column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionKind {
    Row,
    Column,
}

/// One entry of the recognition trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionRecord {
    pub kind: SelectionKind,
    pub position: usize,
    pub chosen: usize,
    pub tie_count: usize,
}

/// A certified pair of permutations: the permuted matrix
/// `a[gamma(i)][delta(j)]` passes the checker with zero violations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecognitionResult {
    /// Row order: output row i holds input row gamma[i-1].
    pub gamma: Vec<usize>,
    /// Column order: output column j holds input column delta[j-1].
    pub delta: Vec<usize>,
    /// The first-row candidate that succeeded.
    pub candidate: usize,
    pub trace: Vec<SelectionRecord>,
}

fn try_candidate(a: &ReducedMatrix, g: usize, tol: f64) -> Option<RecognitionResult> {
    let k = a.k();
    let mut gamma = vec![g];
    let mut delta: Vec<usize> = Vec::with_capacity(k);
    let mut rows: Vec<usize> = (1..=k).filter(|&r| r != g).collect();
    let mut cols: Vec<usize> = (1..=k).collect();
    let mut trace = vec![SelectionRecord {
        kind: SelectionKind::Row,
        position: 1,
        chosen: g,
        tie_count: k,
    }];
    for pos in 1..=k {
        let col = select_next_column(a, gamma[pos - 1], &rows, &cols, tol)?;
        trace.push(SelectionRecord {
            kind: SelectionKind::Column,
            position: pos,
            chosen: col.index,
            tie_count: col.tie_count,
        });
        delta.push(col.index);
        cols.retain(|&c| c != col.index);
        if pos == k {
            break;
        }
        let row = select_next_row(a, delta[pos - 1], &rows, &cols, tol)?;
        trace.push(SelectionRecord {
            kind: SelectionKind::Row,
            position: pos + 1,
            chosen: row.index,
            tie_count: row.tie_count,
        });
        gamma.push(row.index);
        rows.retain(|&r| r != row.index);
    }
    Some(RecognitionResult {
        gamma,
        delta,
        candidate: g,
        trace,
    })
}

/// Decides whether row and column permutations exist that bring `a`
/// into the class accepted by the checker, and returns a certified pair
/// if so. The smallest successful first-row candidate wins. Returns
/// `None` only after all k candidates fail.
pub fn recognize(a: &ReducedMatrix, tol: f64) -> Option<RecognitionResult> {
    let tol = effective_tolerance(a.kind(), tol);
    for g in 1..=a.k() {
        if let Some(result) = try_candidate(a, g, tol) {
            let permuted = apply_permutations(a, &result.gamma, &result.delta)
                .expect("constructed orders are permutations");
            if check_a_system(&permuted, tol).is_clean() {
                return Some(result);
            }
        }
    }
    None
}

fn validate_permutation(p: &[usize], k: usize) -> Result<(), Error> {
    if p.len() != k {
        return Err(Error::InvalidPermutation { k });
    }
    let mut seen = vec![false; k + 1];
    for &x in p {
        if x < 1 || x > k || seen[x] {
            return Err(Error::InvalidPermutation { k });
        }
        seen[x] = true;
    }
    Ok(())
}

/// Reorders rows by `gamma` and columns by `delta`:
/// out[i][j] = a[gamma(i)][delta(j)].
pub fn apply_permutations(
    a: &ReducedMatrix,
    gamma: &[usize],
    delta: &[usize],
) -> Result<ReducedMatrix, Error> {
    let k = a.k();
    validate_permutation(gamma, k)?;
    validate_permutation(delta, k)?;
    Ok(ReducedMatrix::from_fn(k, a.kind(), |i, j| {
        a.get(gamma[i - 1], delta[j - 1])
    }))
}

/// A full-instance recognition outcome: the relabeled matrix and the
/// city relabeling, with `relabeling[new - 1] = old`.
#[derive(Debug, Clone, PartialEq)]
pub struct RelabeledInstance {
    pub matrix: DistanceMatrix,
    pub relabeling: Vec<usize>,
}

/// Lifts reduced-matrix recognition to the full even-odd instance: the
/// row order renumbers odd cities and the column order renumbers even
/// cities, producing a relabeled matrix whose reduced matrix passes the
/// checker.
pub fn recognize_full(c: &DistanceMatrix, tol: f64) -> Result<Option<RelabeledInstance>, Error> {
    let n = c.n();
    if n % 2 != 0 {
        return Err(Error::OddCityCount { n });
    }
    let a = crate::conditions::extract_a(c)?;
    let Some(result) = recognize(&a, tol) else {
        return Ok(None);
    };
    let mut relabeling = vec![0usize; n];
    for i in 1..=n / 2 {
        relabeling[2 * i - 2] = 2 * result.gamma[i - 1] - 1;
        relabeling[2 * i - 1] = 2 * result.delta[i - 1];
    }
    let matrix = DistanceMatrix::symmetric_from_fn(n, c.kind(), |u, v| {
        c.get(relabeling[u - 1], relabeling[v - 1])
    });
    Ok(Some(RelabeledInstance { matrix, relabeling }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditions::extract_a;
    use crate::fixtures::Fixture;
    use crate::matrix::ScalarKind;

    fn fig4_a() -> ReducedMatrix {
        extract_a(&Fixture::Fig4.matrix()).unwrap()
    }

    #[test]
    fn first_residual_matrix_matches_published_rows() {
        let a = fig4_a();
        let norm = normalize_rows(&a, 1);
        assert_eq!(norm.row(1), vec![0.0; 6]);
        assert_eq!(norm.row(2), vec![-2.0, -12.0, -10.0, -12.0, -12.0, -12.0]);
    }

    #[test]
    fn first_column_selection_is_column_one() {
        let a = fig4_a();
        let rows: Vec<usize> = (2..=6).collect();
        let cols: Vec<usize> = (1..=6).collect();
        let sel = select_next_column(&a, 1, &rows, &cols, 0.0).unwrap();
        assert_eq!(sel.index, 1);
        assert_eq!(sel.tie_count, 1);
    }

    #[test]
    fn second_row_selection_is_row_two() {
        let a = fig4_a();
        let rows: Vec<usize> = (2..=6).collect();
        let cols: Vec<usize> = (2..=6).collect();
        let sel = select_next_row(&a, 1, &rows, &cols, 0.0).unwrap();
        assert_eq!(sel.index, 2);
    }

    #[test]
    fn row_selection_follows_a_shuffle() {
        // Shuffling the rows must shift the selected row accordingly.
        let a = fig4_a();
        let shuffle = [4usize, 2, 6, 1, 3, 5];
        let rows_src = a.rows();
        let shuffled = ReducedMatrix::from_rows(
            &shuffle.iter().map(|&r| rows_src[r - 1].clone()).collect::<Vec<_>>(),
        )
        .unwrap();
        let expected = shuffle.iter().position(|&r| r == 2).unwrap() + 1;
        let rows: Vec<usize> = (1..=6).filter(|&r| shuffle[r - 1] != 1).collect();
        let cols: Vec<usize> = (2..=6).collect();
        let sel = select_next_row(&shuffled, 1, &rows, &cols, 0.0).unwrap();
        assert_eq!(sel.index, expected);
    }

    #[test]
    fn all_constant_matrix_returns_smallest_with_full_ties() {
        let a = ReducedMatrix::from_fn(4, ScalarKind::ExactInteger, |_, _| 9.0);
        let rows: Vec<usize> = (2..=4).collect();
        let cols: Vec<usize> = (1..=4).collect();
        let sel = select_next_column(&a, 1, &rows, &cols, 0.0).unwrap();
        assert_eq!(sel.index, 1);
        assert_eq!(sel.tie_count, 4);
        let sel = select_next_row(&a, 1, &rows, &cols, 0.0).unwrap();
        assert_eq!(sel.index, 2);
        assert_eq!(sel.tie_count, 3);
    }

    #[test]
    fn columns_differing_by_a_constant_both_qualify() {
        // Column 2 equals column 1 plus 3 everywhere, so both dominate.
        let base = fig4_a();
        let a = ReducedMatrix::from_fn(6, base.kind(), |i, j| {
            if j == 2 {
                base.get(i, 1) + 3.0
            } else {
                base.get(i, j)
            }
        });
        let rows: Vec<usize> = (2..=6).collect();
        let cols: Vec<usize> = (1..=6).collect();
        let sel = select_next_column(&a, 1, &rows, &cols, 0.0).unwrap();
        assert_eq!(sel.index, 1);
        assert_eq!(sel.tie_count, 2);
    }

    #[test]
    fn fig4_recognizes_as_identity() {
        let a = fig4_a();
        let result = recognize(&a, 0.0).unwrap();
        assert_eq!(result.gamma, vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(result.delta, vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(result.candidate, 1);
    }

    #[test]
    fn k1_is_trivially_recognizable() {
        let a = ReducedMatrix::from_rows(&[vec![42.0]]).unwrap();
        let result = recognize(&a, 0.0).unwrap();
        assert_eq!(result.gamma, vec![1]);
        assert_eq!(result.delta, vec![1]);
    }

    #[test]
    fn apply_permutations_round_trips() {
        let a = fig4_a();
        let gamma = vec![3, 1, 2, 6, 5, 4];
        let delta = vec![2, 4, 1, 3, 6, 5];
        let permuted = apply_permutations(&a, &gamma, &delta).unwrap();
        let mut inv_g = vec![0; 6];
        let mut inv_d = vec![0; 6];
        for (i, &g) in gamma.iter().enumerate() {
            inv_g[g - 1] = i + 1;
        }
        for (j, &d) in delta.iter().enumerate() {
            inv_d[d - 1] = j + 1;
        }
        let back = apply_permutations(&permuted, &inv_g, &inv_d).unwrap();
        assert_eq!(back, a);

        let id = vec![1, 2, 3, 4, 5, 6];
        assert_eq!(apply_permutations(&a, &id, &id).unwrap(), a);
        assert!(apply_permutations(&a, &[1, 1, 2, 3, 4, 5], &id).is_err());
    }

    #[test]
    fn recognize_full_on_fig4_is_identity() {
        let c = Fixture::Fig4.matrix();
        let rec = recognize_full(&c, 0.0).unwrap().unwrap();
        assert_eq!(rec.relabeling, (1..=12).collect::<Vec<_>>());
        assert_eq!(rec.matrix, c);
    }

    #[test]
    fn recognize_full_on_two_cities() {
        use crate::matrix::Entry;
        let c = DistanceMatrix::symmetric_from_fn(2, ScalarKind::ExactInteger, |_, _| {
            Entry::Finite(3.0)
        });
        let rec = recognize_full(&c, 0.0).unwrap().unwrap();
        assert_eq!(rec.relabeling, vec![1, 2]);
    }
}
