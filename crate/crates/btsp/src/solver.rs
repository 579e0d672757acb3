//! Exact O(n^2) dynamic program for the shortest bipartite pyramidal
//! tour under the even-odd coloring.
//!
//! Bipartite feasibility is enforced by masking same-parity edges, which
//! keeps the classic two-path recurrence intact while restricting the
//! search to feasible tours. On (relaxed) Van der Veen matrices the
//! result is a global BTSP optimum.

use crate::error::Error;
use crate::matrix::{DistanceMatrix, Entry};
use crate::tour::{Coloring, Tour};

/// Filled DP table for inspection. `value(i, j)` with `i < j` is the
/// minimum total length of two vertex-disjoint paths from city 1 to `i`
/// and from city 1 to `j` jointly covering cities 1..=j, using only
/// allowed edges; `Forbidden` if no such pair of paths exists.
#[derive(Debug, Clone)]
pub struct DpState {
    n: usize,
    // row-major over pairs (i, j), i < j, packed triangularly
    values: Vec<f64>,
    preds: Vec<Option<usize>>,
}

impl DpState {
    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(1 <= i && i < j && j <= self.n);
        (j - 1) * (j - 2) / 2 + (i - 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self, i: usize, j: usize) -> Entry {
        let v = self.values[self.idx(i, j)];
        if v.is_finite() {
            Entry::Finite(v)
        } else {
            Entry::Forbidden
        }
    }

    /// The predecessor city `l` chosen in the corner state `(j-1, j)`.
    pub fn predecessor(&self, j: usize) -> Option<usize> {
        self.preds[j]
    }
}

fn masked_cost(c: &DistanceMatrix, u: usize, v: usize) -> f64 {
    if (u % 2) == (v % 2) {
        return f64::INFINITY;
    }
    let r = c.raw(u, v);
    if r.is_nan() {
        f64::INFINITY
    } else {
        r
    }
}

fn check_inputs(c: &DistanceMatrix, col: &Coloring) -> Result<(), Error> {
    if !col.is_even_odd() {
        return Err(Error::RequiresEvenOdd);
    }
    let n = c.n();
    if n % 2 != 0 {
        return Err(Error::OddCityCount { n });
    }
    if n < 4 {
        return Err(Error::TooFewCities { n, min: 4 });
    }
    if col.n() != n {
        return Err(Error::InvalidColoring(format!(
            "coloring covers {} cities, matrix has {}",
            col.n(),
            n
        )));
    }
    Ok(())
}

/// Returns the filled DP table for the instance.
pub fn dp_trace(c: &DistanceMatrix, col: &Coloring) -> Result<DpState, Error> {
    check_inputs(c, col)?;
    let n = c.n();
    let mut state = DpState {
        n,
        values: vec![f64::INFINITY; n * (n - 1) / 2],
        preds: vec![None; n + 1],
    };
    let base = state.idx(1, 2);
    state.values[base] = masked_cost(c, 1, 2);
    for j in 3..=n {
        let step = masked_cost(c, j - 1, j);
        for i in 1..(j - 1) {
            let v = state.values[state.idx(i, j - 1)] + step;
            let at = state.idx(i, j);
            state.values[at] = v;
        }
        let (best, arg) = corner_minimum(c, j, |l| state.values[state.idx(l, j - 1)]);
        let at = state.idx(j - 1, j);
        state.values[at] = best;
        state.preds[j] = arg;
    }
    Ok(state)
}

/// Minimum over l < j-1 of E(l, j-1) + c[l][j]. Ties resolve to the
/// largest candidate l, which pins the reconstruction deterministically.
/// Only opposite-parity l can contribute; the scan strides over them
/// reading row j of the symmetric matrix, so it stays contiguous.
fn corner_minimum<F>(c: &DistanceMatrix, j: usize, value_at: F) -> (f64, Option<usize>)
where
    F: Fn(usize) -> f64,
{
    let mut best = f64::INFINITY;
    let mut arg = None;
    let start = if j % 2 == 0 { 1 } else { 2 };
    let mut l = start;
    while l < j - 1 {
        let cost = c.raw(j, l);
        let v = value_at(l) + cost;
        // NaN (masked) fails the comparison and is skipped
        if v <= best {
            best = v;
            arg = Some(l);
        }
        l += 2;
    }
    if best.is_finite() {
        (best, arg)
    } else {
        (f64::INFINITY, None)
    }
}

/// Solves the even-odd bipartite pyramidal problem exactly, returning
/// the optimal tour in canonical form together with its length.
///
/// Runs in O(n^2) time and O(n) working memory.
pub fn solve_pyramidal_btsp(c: &DistanceMatrix, col: &Coloring) -> Result<(Tour, f64), Error> {
    check_inputs(c, col)?;
    let n = c.n();
    // prev[i] = E(i, j-1); cur[i] = E(i, j)
    let mut prev = vec![f64::INFINITY; n + 1];
    let mut cur = vec![f64::INFINITY; n + 1];
    let mut preds: Vec<Option<usize>> = vec![None; n + 1];
    prev[1] = masked_cost(c, 1, 2);
    for j in 3..=n {
        let step = masked_cost(c, j - 1, j);
        for i in 1..(j - 1) {
            cur[i] = prev[i] + step;
        }
        let (best, arg) = corner_minimum(c, j, |l| prev[l]);
        cur[j - 1] = best;
        preds[j] = arg;
        std::mem::swap(&mut prev, &mut cur);
    }
    let total = prev[n - 1] + masked_cost(c, n - 1, n);
    if !total.is_finite() {
        return Err(Error::NoFeasiblePyramidalTour);
    }
    let tour = reconstruct(n, &preds)?;
    Ok((tour, total))
}

/// Rebuilds the optimal tour from the per-corner predecessor choices.
/// The two monotone chains from city 1 are grown from the top down; the
/// chain through city n becomes the descending branch of the pyramid.
fn reconstruct(n: usize, preds: &[Option<usize>]) -> Result<Tour, Error> {
    use std::collections::VecDeque;
    let mut tail_j = VecDeque::from([n]);
    let mut tail_i = VecDeque::from([n - 1]);
    let mut i = n - 1;
    let mut j = n;
    while j > 2 {
        if i < j - 1 {
            tail_j.push_front(j - 1);
            j -= 1;
        } else {
            let l = preds[j].ok_or(Error::NoFeasiblePyramidalTour)?;
            tail_j.push_front(l);
            std::mem::swap(&mut tail_i, &mut tail_j);
            i = l;
            j -= 1;
        }
    }
    debug_assert_eq!(i, 1);
    debug_assert_eq!(tail_i[0], 1);
    debug_assert_eq!(tail_j[0], 2);
    let mut seq = Vec::with_capacity(n);
    seq.push(1);
    seq.extend(&tail_j);
    seq.extend(tail_i.iter().skip(1).rev());
    Tour::new(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::Fixture;
    use crate::matrix::{ScalarKind};
    use crate::tour::{is_feasible_bipartite, is_pyramidal, tour_length};

    #[test]
    fn unit_square_n4() {
        let c = DistanceMatrix::symmetric_from_fn(4, ScalarKind::ExactInteger, |_, _| {
            Entry::Finite(1.0)
        });
        let col = Coloring::even_odd(4).unwrap();
        let (t, len) = solve_pyramidal_btsp(&c, &col).unwrap();
        assert_eq!(t.sequence(), &[1, 2, 3, 4]);
        assert_eq!(len, 4.0);
    }

    #[test]
    fn fig4_optimum_matches_published_tour() {
        let c = Fixture::Fig4.matrix();
        let col = Coloring::even_odd(12).unwrap();
        let (t, len) = solve_pyramidal_btsp(&c, &col).unwrap();
        assert_eq!(t.sequence(), &[1, 2, 3, 4, 5, 8, 9, 12, 11, 10, 7, 6]);
        assert_eq!(len, 276.0);
        assert!(is_pyramidal(&t));
        assert!(is_feasible_bipartite(&t, &col));
        assert_eq!(tour_length(&c, &t), Entry::Finite(276.0));
    }

    #[test]
    fn refuses_non_even_odd_coloring() {
        let c = Fixture::Fig4.matrix();
        let block = Coloring::new((1..=6).collect(), (7..=12).collect()).unwrap();
        assert_eq!(
            solve_pyramidal_btsp(&c, &block),
            Err(Error::RequiresEvenOdd)
        );
    }

    #[test]
    fn refuses_odd_city_count() {
        assert!(Coloring::even_odd(5).is_err());
    }

    #[test]
    fn trace_base_case_and_answer_agree_with_solver() {
        let c = Fixture::Fig4.matrix();
        let col = Coloring::even_odd(12).unwrap();
        let state = dp_trace(&c, &col).unwrap();
        assert_eq!(state.value(1, 2), c.get(1, 2));
        let answer = state.value(11, 12).finite().unwrap() + c.finite(11, 12).unwrap();
        assert_eq!(answer, 276.0);
    }

    #[test]
    fn trace_masks_forced_same_parity_edges() {
        // With i < j-1 the chain must use edge (j-1, j); when that edge
        // is same-parity it is masked, so the whole column is forbidden.
        let c = DistanceMatrix::symmetric_from_fn(6, ScalarKind::ExactInteger, |_, _| {
            Entry::Finite(1.0)
        });
        let col = Coloring::even_odd(6).unwrap();
        let state = dp_trace(&c, &col).unwrap();
        // E(1, 3) needs edge (2, 3): allowed. E(2, 3) needs edge (1, 3): masked.
        assert_eq!(state.value(2, 3), Entry::Forbidden);
        assert_eq!(state.value(1, 3), Entry::Finite(2.0));
    }

    #[test]
    fn output_is_always_pyramidal_and_feasible() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let col6 = Coloring::even_odd(6).unwrap();
        let col8 = Coloring::even_odd(8).unwrap();
        for _ in 0..200 {
            let n = if rng.random_bool(0.5) { 6 } else { 8 };
            let c = DistanceMatrix::symmetric_from_fn(n, ScalarKind::ExactInteger, |_, _| {
                Entry::Finite(rng.random_range(0..50) as f64)
            });
            let col = if n == 6 { &col6 } else { &col8 };
            let (t, len) = solve_pyramidal_btsp(&c, col).unwrap();
            assert!(is_pyramidal(&t));
            assert!(is_feasible_bipartite(&t, col));
            assert_eq!(tour_length(&c, &t), Entry::Finite(len));
        }
    }
}
