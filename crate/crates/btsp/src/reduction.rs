//! Hardness-reduction instances (bipartite graph to Van der Veen
//! matrix), exhaustive brute-force oracles, and sound generators of
//! Van der Veen instances. The oracles are the ground truth the rest of
//! the test suite is checked against.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::matrix::{DistanceMatrix, Entry, ScalarKind};
use crate::tour::{Color, Coloring, Tour};

/// Largest half-size the exhaustive procedures accept by default.
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 7;

/// A bipartite graph between left cities 1..=k and right cities
/// k+1..=2k, stored as a k x k adjacency table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    k: usize,
    adj: Vec<bool>,
}

impl BipartiteGraph {
    /// Graph with no edges.
    pub fn empty(k: usize) -> Self {
        Self {
            k,
            adj: vec![false; k * k],
        }
    }

    /// Complete bipartite graph.
    pub fn complete(k: usize) -> Self {
        Self {
            k,
            adj: vec![true; k * k],
        }
    }

    /// Builds from an edge list with left endpoints in 1..=k and right
    /// endpoints in k+1..=2k.
    pub fn from_edges(k: usize, edges: &[(usize, usize)]) -> Result<Self, Error> {
        let mut g = Self::empty(k);
        for &(i, j) in edges {
            if i < 1 || i > k || j <= k || j > 2 * k {
                return Err(Error::InvalidEdge { i, j, k });
            }
            g.adj[(i - 1) * k + (j - k - 1)] = true;
        }
        Ok(g)
    }

    /// Builds from the raw k x k adjacency table.
    pub fn from_adjacency(adj: Vec<Vec<bool>>) -> Result<Self, Error> {
        let k = adj.len();
        for (r, row) in adj.iter().enumerate() {
            if row.len() != k {
                return Err(Error::NotSquare {
                    row: r + 1,
                    len: row.len(),
                    n: k,
                });
            }
        }
        Ok(Self {
            k,
            adj: adj.into_iter().flatten().collect(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Edge between left city `i` (1..=k) and right city `j` (k+1..=2k).
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        debug_assert!(i >= 1 && i <= self.k && j > self.k && j <= 2 * self.k);
        self.adj[(i - 1) * self.k + (j - self.k - 1)]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.k {
            for j in (self.k + 1)..=(2 * self.k) {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Builds the 2k x 2k exact-integer Van der Veen matrix of a bipartite
/// graph: cross entries are 0 on edges and 1 on non-edges, entries
/// inside the left block are -(k+1)+j for i < j <= k, and entries
/// inside the right block are -i for the smaller local index i. The
/// coloring is the block partition {1..k} / {k+1..2k}.
///
/// The graph has a Hamiltonian cycle iff the optimal BTSP length on the
/// returned instance is 0.
pub fn reduce_graph(g: &BipartiteGraph) -> (DistanceMatrix, Coloring) {
    let k = g.k();
    let n = 2 * k;
    let c = DistanceMatrix::symmetric_from_fn(n, ScalarKind::ExactInteger, |i, j| {
        // i < j by construction
        let v = if j <= k {
            -((k as f64) + 1.0) + j as f64
        } else if i > k {
            -((i - k) as f64)
        } else if g.has_edge(i, j) {
            0.0
        } else {
            1.0
        };
        Entry::Finite(v)
    });
    let coloring = Coloring::new((1..=k).collect(), ((k + 1)..=n).collect())
        .expect("block partition is valid");
    (c, coloring)
}

/// Visits the canonical sequence of every bipartite tour exactly once:
/// city 1 first, colors alternating, and the orientation fixed by
/// second element < last element. There are (k-1)! * k! / 2 of them.
fn for_each_bipartite_tour<F>(col: &Coloring, mut visit: F)
where
    F: FnMut(&[usize]),
{
    let n = col.n();
    let k = col.k();
    let (same, other): (&[usize], &[usize]) = match col.color_of(1) {
        Color::Blue => (col.blue(), col.red()),
        Color::Red => (col.red(), col.blue()),
    };
    let same_rest: Vec<usize> = same.iter().copied().filter(|&c| c != 1).collect();
    let mut other_perm: Vec<usize> = other.to_vec();
    let mut seq = vec![0usize; n];
    seq[0] = 1;
    loop {
        // canonical orientation: the tour starts 1, other_perm[0], ...
        // and ends with other_perm[k-1]; skip the mirrored half.
        if other_perm[0] < other_perm[k - 1] {
            let mut same_perm = same_rest.clone();
            loop {
                for i in 0..k {
                    seq[2 * i + 1] = other_perm[i];
                    if i + 1 < k {
                        seq[2 * i + 2] = same_perm[i];
                    }
                }
                visit(&seq);
                if !next_permutation(&mut same_perm) {
                    break;
                }
            }
        }
        if !next_permutation(&mut other_perm) {
            break;
        }
    }
}

/// Lexicographic successor permutation; false when already the last.
fn next_permutation(arr: &mut [usize]) -> bool {
    if arr.len() <= 1 {
        return false;
    }
    let mut i = arr.len() - 1;
    while i > 0 && arr[i - 1] >= arr[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = arr.len() - 1;
    while arr[j] <= arr[i - 1] {
        j -= 1;
    }
    arr.swap(i - 1, j);
    arr[i..].reverse();
    true
}

fn check_cap(k: usize, cap: usize) -> Result<(), Error> {
    if k > cap {
        return Err(Error::BruteForceCap { k, cap });
    }
    Ok(())
}

/// Exhaustive BTSP optimum over all canonical bipartite tours, with the
/// default size cap. Ties break to the lexicographically smallest
/// canonical sequence.
pub fn brute_force_btsp(c: &DistanceMatrix, col: &Coloring) -> Result<(Tour, f64), Error> {
    brute_force_btsp_capped(c, col, DEFAULT_BRUTE_FORCE_CAP)
}

/// Exhaustive BTSP optimum with an explicit size cap.
pub fn brute_force_btsp_capped(
    c: &DistanceMatrix,
    col: &Coloring,
    cap: usize,
) -> Result<(Tour, f64), Error> {
    let k = col.k();
    check_cap(k, cap)?;
    if col.n() != c.n() {
        return Err(Error::InvalidColoring(format!(
            "coloring covers {} cities, matrix has {}",
            col.n(),
            c.n()
        )));
    }
    if c.n() < 4 {
        return Err(Error::TooFewCities { n: c.n(), min: 4 });
    }
    // every bipartite tour uses only cross-color edges
    for &b in col.blue() {
        for &r in col.red() {
            c.finite(b, r)?;
        }
    }
    let n = c.n();
    let mut best: Option<(f64, Vec<usize>)> = None;
    for_each_bipartite_tour(col, |seq| {
        let mut len = 0.0;
        for i in 0..n {
            len += match c.get(seq[i], seq[(i + 1) % n]) {
                Entry::Finite(v) => v,
                Entry::Forbidden => unreachable!("cross entries checked finite"),
            };
        }
        let better = match &best {
            None => true,
            Some((bl, bs)) => len < *bl || (len == *bl && seq < bs.as_slice()),
        };
        if better {
            best = Some((len, seq.to_vec()));
        }
    });
    let (len, seq) = best.expect("at least one bipartite tour exists");
    Ok((Tour::new(seq)?, len))
}

/// Number of canonical bipartite tours the brute force enumerates.
pub fn count_bipartite_tours(col: &Coloring) -> usize {
    let mut count = 0usize;
    for_each_bipartite_tour(col, |_| count += 1);
    count
}

/// Exact backtracking test for a Hamiltonian cycle in the bipartite
/// graph, independent of the reduction and the tour machinery.
pub fn has_hamiltonian_cycle(g: &BipartiteGraph) -> Result<bool, Error> {
    has_hamiltonian_cycle_capped(g, DEFAULT_BRUTE_FORCE_CAP)
}

pub fn has_hamiltonian_cycle_capped(g: &BipartiteGraph, cap: usize) -> Result<bool, Error> {
    let k = g.k();
    check_cap(k, cap)?;
    if k == 0 {
        return Ok(false);
    }
    if k == 1 {
        // a 2-cycle is not a simple Hamiltonian cycle
        return Ok(false);
    }
    // alternate left/right starting from left vertex 1
    let mut used_left = vec![false; k + 1];
    let mut used_right = vec![false; k + 1];
    used_left[1] = true;
    fn extend(
        g: &BipartiteGraph,
        at_left: usize,
        depth: usize,
        used_left: &mut [bool],
        used_right: &mut [bool],
    ) -> bool {
        let k = g.k();
        if depth == k {
            return true;
        }
        for r in 1..=k {
            if used_right[r] || !g.has_edge(at_left, k + r) {
                continue;
            }
            // the last right vertex must close back to left vertex 1
            used_right[r] = true;
            let closes = depth == k - 1 && g.has_edge(1, k + r);
            if closes {
                used_right[r] = false;
                return true;
            }
            if depth < k - 1 {
                for l in 2..=k {
                    if used_left[l] || !g.has_edge(l, k + r) {
                        continue;
                    }
                    used_left[l] = true;
                    if extend(g, l, depth + 1, used_left, used_right) {
                        used_left[l] = false;
                        used_right[r] = false;
                        return true;
                    }
                    used_left[l] = false;
                }
            }
            used_right[r] = false;
        }
        false
    }
    Ok(extend(g, 1, 0, &mut used_left, &mut used_right))
}

/// Generates an exact-integer Van der Veen instance from sorted points
/// on a line (c[i][j] = |p_i - p_j|) with the even-odd coloring.
/// Coincident points are allowed; every output passes the full
/// Van der Veen check with zero violations.
pub fn generate_line_instance(k: usize, seed: u64) -> (DistanceMatrix, Coloring) {
    let n = 2 * k;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(n);
    let mut p: i64 = 0;
    for _ in 0..n {
        points.push(p);
        p += rng.random_range(0..=9);
    }
    let c = DistanceMatrix::symmetric_from_fn(n, ScalarKind::ExactInteger, |i, j| {
        Entry::Finite((points[j - 1] - points[i - 1]).abs() as f64)
    });
    let coloring = Coloring::even_odd(n).expect("n = 2k is even");
    (c, coloring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditions::check_van_der_veen;

    #[test]
    fn reduction_fillers_for_k2() {
        let (c, col) = reduce_graph(&BipartiteGraph::complete(2));
        assert_eq!(c.get(1, 2), Entry::Finite(-1.0));
        assert_eq!(c.get(3, 4), Entry::Finite(-1.0));
        for i in 1..=2 {
            for j in 3..=4 {
                assert_eq!(c.get(i, j), Entry::Finite(0.0));
            }
        }
        assert!(!col.is_even_odd());
        assert_eq!(col.blue(), &[1, 2]);
    }

    #[test]
    fn complete_graph_reduces_to_zero_optimum() {
        for k in 2..=4 {
            let (c, col) = reduce_graph(&BipartiteGraph::complete(k));
            let (_, len) = brute_force_btsp(&c, &col).unwrap();
            assert_eq!(len, 0.0);
            assert!(has_hamiltonian_cycle(&BipartiteGraph::complete(k)).unwrap());
        }
    }

    #[test]
    fn perfect_matching_only_graph_has_no_cycle() {
        for k in 2..=4 {
            let edges: Vec<(usize, usize)> = (1..=k).map(|i| (i, k + i)).collect();
            let g = BipartiteGraph::from_edges(k, &edges).unwrap();
            assert!(!has_hamiltonian_cycle(&g).unwrap());
        }
    }

    #[test]
    fn k2_brute_force_visits_single_canonical_tour() {
        let col = Coloring::even_odd(4).unwrap();
        assert_eq!(count_bipartite_tours(&col), 1);
        let c = DistanceMatrix::symmetric_from_fn(4, ScalarKind::ExactInteger, |i, j| {
            Entry::Finite((i + j) as f64)
        });
        let (t, _) = brute_force_btsp(&c, &col).unwrap();
        assert_eq!(t.sequence(), &[1, 2, 3, 4]);
    }

    #[test]
    fn tour_counts_match_closed_form() {
        fn fact(x: usize) -> usize {
            (1..=x).product::<usize>().max(1)
        }
        for k in 2..=5 {
            let col = Coloring::even_odd(2 * k).unwrap();
            assert_eq!(count_bipartite_tours(&col), fact(k - 1) * fact(k) / 2);
        }
        // block colorings enumerate the same count
        let block = Coloring::new((1..=4).collect(), (5..=8).collect()).unwrap();
        assert_eq!(count_bipartite_tours(&block), fact(3) * fact(4) / 2);
    }

    #[test]
    fn cap_is_enforced() {
        let col = Coloring::even_odd(16).unwrap();
        let c = DistanceMatrix::symmetric_from_fn(16, ScalarKind::ExactInteger, |_, _| {
            Entry::Finite(1.0)
        });
        assert!(matches!(
            brute_force_btsp(&c, &col),
            Err(Error::BruteForceCap { k: 8, cap: 7 })
        ));
    }

    #[test]
    fn line_instances_are_van_der_veen() {
        for seed in 0..20 {
            let (c, _) = generate_line_instance(3 + (seed as usize % 4), seed);
            let rep = check_van_der_veen(&c, 0.0).unwrap();
            assert!(rep.is_clean());
        }
    }

    #[test]
    fn coincident_points_count_as_satisfied() {
        let c = DistanceMatrix::symmetric_from_fn(6, ScalarKind::ExactInteger, |i, j| {
            let p = [0i64, 2, 2, 5, 5, 9];
            Entry::Finite((p[j - 1] - p[i - 1]).abs() as f64)
        });
        assert!(check_van_der_veen(&c, 0.0).unwrap().is_clean());
    }

    #[test]
    fn random_graphs_cross_validate_cycle_and_reduction() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..40 {
            let k = rng.random_range(2..=5);
            let mut adj = vec![vec![false; k]; k];
            for row in adj.iter_mut() {
                for cell in row.iter_mut() {
                    *cell = rng.random_bool(0.5);
                }
            }
            let g = BipartiteGraph::from_adjacency(adj).unwrap();
            let (c, col) = reduce_graph(&g);
            let (_, len) = brute_force_btsp(&c, &col).unwrap();
            assert_eq!(
                has_hamiltonian_cycle(&g).unwrap(),
                len == 0.0,
                "graph {:?}",
                g.edges()
            );
        }
    }
}
