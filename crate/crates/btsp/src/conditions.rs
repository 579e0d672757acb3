//! Checkers for the Van der Veen inequalities, their parity-restricted
//! relaxation, and the equivalent system on the reduced blue-red matrix,
//! all with exhaustive violation reporting.

use crate::error::Error;
use crate::matrix::{DistanceMatrix, ScalarKind};

/// One failed inequality: the defining index tuple and its slack
/// (lhs - rhs, positive means violated).
///
/// For the Van der Veen family the tuple is `(i, j, m)` of
/// `c[i][j] + c[j+1][m] <= c[i][m] + c[j+1][j]`; for the relaxed family
/// it is `(j, l, m)` of `c[j+1][j] + c[l][m] <= c[j][l] + c[j+1][m]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub indices: [usize; 3],
    pub slack: f64,
}

/// Exhaustive check result: every violating tuple, sorted
/// lexicographically, plus the tolerance that was actually applied.
#[derive(Debug, Clone, PartialEq)]
pub struct ViolationReport {
    pub tolerance: f64,
    pub total_checked: usize,
    pub violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn contains(&self, indices: [usize; 3]) -> bool {
        self.violations.iter().any(|v| v.indices == indices)
    }
}

/// Exact-integer matrices are compared exactly: their tolerance is
/// forced to zero regardless of the requested one.
pub fn effective_tolerance(kind: ScalarKind, tol: f64) -> f64 {
    match kind {
        ScalarKind::ExactInteger => 0.0,
        ScalarKind::Floating => tol,
    }
}

/// Closed-form size of the Van der Veen family for n cities.
pub fn van_der_veen_total(n: usize) -> usize {
    if n < 4 {
        return 0;
    }
    (2..=n - 2).map(|j| (j - 1) * (n - j - 1)).sum()
}

/// Checks `c[i][j] + c[j+1][m] <= c[i][m] + c[j+1][j]` over all triples
/// `1 <= i < j < j+1 < m <= n`, reporting every violation with slack
/// greater than the tolerance. Ties within the tolerance count as
/// satisfied.
pub fn check_van_der_veen(c: &DistanceMatrix, tol: f64) -> Result<ViolationReport, Error> {
    let n = c.n();
    let tol = effective_tolerance(c.kind(), tol);
    let mut violations = Vec::new();
    let mut total = 0;
    for i in 1..=n {
        for j in (i + 1)..=n {
            if j + 1 >= n {
                break;
            }
            for m in (j + 2)..=n {
                total += 1;
                let slack =
                    c.finite(i, j)? + c.finite(j + 1, m)? - c.finite(i, m)? - c.finite(j + 1, j)?;
                if slack > tol {
                    violations.push(Violation {
                        indices: [i, j, m],
                        slack,
                    });
                }
            }
        }
    }
    debug_assert_eq!(total, van_der_veen_total(n));
    Ok(ViolationReport {
        tolerance: tol,
        total_checked: total,
        violations,
    })
}

/// Checks the parity-restricted relaxation
/// `c[j+1][j] + c[l][m] - c[j][l] - c[j+1][m] <= 0` over triples with
/// `j+1 < l, m <= n`, `l` of the parity of `j+1` and `m` of the parity
/// of `j`. Only entries of the blue-red submatrix are touched.
pub fn check_relaxed_van_der_veen(c: &DistanceMatrix, tol: f64) -> Result<ViolationReport, Error> {
    let n = c.n();
    if n % 2 != 0 {
        return Err(Error::OddCityCount { n });
    }
    let tol = effective_tolerance(c.kind(), tol);
    let mut violations = Vec::new();
    let mut total = 0;
    for j in 1..n.saturating_sub(1) {
        for l in (j + 2)..=n {
            if (l % 2) != ((j + 1) % 2) {
                continue;
            }
            for m in (j + 2)..=n {
                if (m % 2) != (j % 2) {
                    continue;
                }
                total += 1;
                let slack =
                    c.finite(j + 1, j)? + c.finite(l, m)? - c.finite(j, l)? - c.finite(j + 1, m)?;
                if slack > tol {
                    violations.push(Violation {
                        indices: [j, l, m],
                        slack,
                    });
                }
            }
        }
    }
    violations.sort_by(|a, b| a.indices.cmp(&b.indices));
    Ok(ViolationReport {
        tolerance: tol,
        total_checked: total,
        violations,
    })
}

/// The k x k asymmetric matrix of blue-to-red distances,
/// `a[i][j] = c[2i-1][2j]` under the even-odd coloring.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedMatrix {
    k: usize,
    kind: ScalarKind,
    entries: Vec<f64>,
}

impl ReducedMatrix {
    /// Builds from explicit rows; entries must be finite.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, Error> {
        let k = rows.len();
        let mut integral = true;
        for (r, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::NotSquare {
                    row: r + 1,
                    len: row.len(),
                    n: k,
                });
            }
            for (cidx, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NotFinite {
                        i: r + 1,
                        j: cidx + 1,
                    });
                }
                if v.fract() != 0.0 {
                    integral = false;
                }
            }
        }
        Ok(Self {
            k,
            kind: if integral {
                ScalarKind::ExactInteger
            } else {
                ScalarKind::Floating
            },
            entries: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn from_fn<F>(k: usize, kind: ScalarKind, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> f64,
    {
        let mut entries = Vec::with_capacity(k * k);
        for i in 1..=k {
            for j in 1..=k {
                entries.push(f(i, j));
            }
        }
        Self { k, kind, entries }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn kind(&self) -> ScalarKind {
        self.kind
    }

    /// Entry at row `i`, column `j` (1-based).
    pub fn get(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i >= 1 && i <= self.k && j >= 1 && j <= self.k);
        self.entries[(i - 1) * self.k + (j - 1)]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (1..=self.k)
            .map(|i| (1..=self.k).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

/// Extracts the reduced matrix `a[i][j] = c[2i-1][2j]` from an even-n
/// distance matrix.
pub fn extract_a(c: &DistanceMatrix) -> Result<ReducedMatrix, Error> {
    let n = c.n();
    if n % 2 != 0 {
        return Err(Error::OddCityCount { n });
    }
    let k = n / 2;
    let mut entries = Vec::with_capacity(k * k);
    for i in 1..=k {
        for j in 1..=k {
            entries.push(c.finite(2 * i - 1, 2 * j)?);
        }
    }
    Ok(ReducedMatrix {
        k,
        kind: c.kind(),
        entries,
    })
}

/// Which anchor entry of the reduced matrix an inequality pivots on.
/// The three families together are equivalent to the relaxed Van der
/// Veen conditions on the full matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum AnchorFamily {
    /// `a[1][1] + a[l][m] <= a[1][m] + a[l][1]`, l, m in 2..=k.
    Corner,
    /// `a[i][i-1] + a[l][m] <= a[i][m] + a[l][i-1]`, l in i+1..=k, m in i..=k.
    Subdiagonal,
    /// `a[i][i] + a[l][m] <= a[i][m] + a[l][i]`, l, m in i+1..=k.
    Diagonal,
}

/// One failed reduced-matrix inequality: its family, the anchor
/// position `i`, the row `l` and column `m`, and the slack.
#[derive(Debug, Clone, PartialEq)]
pub struct ASystemViolation {
    pub family: AnchorFamily,
    pub i: usize,
    pub l: usize,
    pub m: usize,
    pub slack: f64,
}

impl ASystemViolation {
    /// The triple `(j, l, m)` of the corresponding relaxed Van der Veen
    /// inequality on the full even-odd matrix.
    pub fn relaxed_indices(&self) -> [usize; 3] {
        match self.family {
            AnchorFamily::Corner => [1, 2 * self.m, 2 * self.l - 1],
            AnchorFamily::Subdiagonal => [2 * self.i - 2, 2 * self.l - 1, 2 * self.m],
            AnchorFamily::Diagonal => [2 * self.i - 1, 2 * self.m, 2 * self.l - 1],
        }
    }
}

/// Exhaustive reduced-matrix check result.
#[derive(Debug, Clone, PartialEq)]
pub struct ASystemReport {
    pub tolerance: f64,
    pub total_checked: usize,
    pub violations: Vec<ASystemViolation>,
}

impl ASystemReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the three inequality families on the reduced matrix over
/// their exact index ranges. Equivalent to `check_relaxed_van_der_veen`
/// on the corresponding full matrix.
pub fn check_a_system(a: &ReducedMatrix, tol: f64) -> ASystemReport {
    let k = a.k();
    let tol = effective_tolerance(a.kind(), tol);
    let mut violations = Vec::new();
    let mut total = 0;
    let mut push = |family: AnchorFamily, i: usize, l: usize, m: usize, slack: f64| {
        if slack > tol {
            violations.push(ASystemViolation {
                family,
                i,
                l,
                m,
                slack,
            });
        }
    };
    for l in 2..=k {
        for m in 2..=k {
            total += 1;
            let slack = a.get(1, 1) + a.get(l, m) - a.get(1, m) - a.get(l, 1);
            push(AnchorFamily::Corner, 1, l, m, slack);
        }
    }
    for i in 2..k {
        for l in (i + 1)..=k {
            for m in i..=k {
                total += 1;
                let slack = a.get(i, i - 1) + a.get(l, m) - a.get(i, m) - a.get(l, i - 1);
                push(AnchorFamily::Subdiagonal, i, l, m, slack);
            }
            for m in (i + 1)..=k {
                total += 1;
                let slack = a.get(i, i) + a.get(l, m) - a.get(i, m) - a.get(l, i);
                push(AnchorFamily::Diagonal, i, l, m, slack);
            }
        }
    }
    violations.sort_by(|x, y| {
        (x.family, x.i, x.l, x.m)
            .partial_cmp(&(y.family, y.i, y.l, y.m))
            .unwrap()
    });
    ASystemReport {
        tolerance: tol,
        total_checked: total,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::Fixture;
    use crate::matrix::{DistanceMatrix, Entry};

    fn line_matrix(points: &[i64]) -> DistanceMatrix {
        DistanceMatrix::symmetric_from_fn(points.len(), ScalarKind::ExactInteger, |i, j| {
            Entry::Finite((points[j - 1] - points[i - 1]).abs() as f64)
        })
    }

    #[test]
    fn total_is_165_at_n_12() {
        assert_eq!(van_der_veen_total(12), 165);
        let c = DistanceMatrix::symmetric_from_fn(12, ScalarKind::ExactInteger, |_, _| {
            Entry::Finite(0.0)
        });
        let rep = check_van_der_veen(&c, 0.0).unwrap();
        assert_eq!(rep.total_checked, 165);
        assert!(rep.is_clean());
    }

    #[test]
    fn sorted_line_points_satisfy_all_inequalities() {
        // Independent oracle: for sorted points the slack of triple
        // (i, j, m) is exactly 2 * (p[j] - p[j+1]) <= 0.
        let p = [0i64, 3, 3, 7, 10, 11, 15, 20];
        let c = line_matrix(&p);
        let rep = check_van_der_veen(&c, 0.0).unwrap();
        assert!(rep.is_clean());
        let n = p.len();
        for i in 1..=n {
            for j in (i + 1)..=n {
                if j + 1 >= n {
                    break;
                }
                for m in (j + 2)..=n {
                    let slack = c.finite(i, j).unwrap() + c.finite(j + 1, m).unwrap()
                        - c.finite(i, m).unwrap()
                        - c.finite(j + 1, j).unwrap();
                    assert_eq!(slack, 2.0 * (p[j - 1] - p[j]) as f64);
                    assert!(slack <= 0.0);
                }
            }
        }
    }

    #[test]
    fn instance_b_relaxed_is_clean_but_full_is_not() {
        let b = Fixture::InstanceB.matrix();
        let full = check_van_der_veen(&b, 1e-9).unwrap();
        assert!(!full.is_clean());
        let relaxed = check_relaxed_van_der_veen(&b, 1e-9).unwrap();
        assert!(relaxed.is_clean());
        assert_eq!(relaxed.total_checked, 95);
    }

    #[test]
    fn relaxed_is_error_on_odd_n() {
        let c = DistanceMatrix::symmetric_from_fn(5, ScalarKind::ExactInteger, |_, _| {
            Entry::Finite(1.0)
        });
        assert!(matches!(
            check_relaxed_van_der_veen(&c, 0.0),
            Err(Error::OddCityCount { .. })
        ));
    }

    #[test]
    fn checkers_error_on_masked_entries() {
        let c = DistanceMatrix::symmetric_from_fn(6, ScalarKind::ExactInteger, |i, j| {
            if (i, j) == (2, 5) {
                Entry::Forbidden
            } else {
                Entry::Finite(1.0)
            }
        });
        assert!(check_van_der_veen(&c, 0.0).is_err());
        assert!(check_relaxed_van_der_veen(&c, 0.0).is_err());
    }

    #[test]
    fn extract_a_matches_printed_matrix() {
        let c = Fixture::Fig4.matrix();
        let a = extract_a(&c).unwrap();
        assert_eq!(a.k(), 6);
        let first: Vec<f64> = (1..=6).map(|j| a.get(1, j)).collect();
        assert_eq!(first, vec![17.0, 39.0, 45.0, 64.0, 66.0, 72.0]);
        assert_eq!(a.get(6, 6), 6.0);
    }

    #[test]
    fn extract_a_on_two_cities() {
        let c = DistanceMatrix::symmetric_from_fn(2, ScalarKind::ExactInteger, |_, _| {
            Entry::Finite(5.0)
        });
        let a = extract_a(&c).unwrap();
        assert_eq!(a.k(), 1);
        assert_eq!(a.get(1, 1), 5.0);
    }

    #[test]
    fn a_system_clean_on_fig4_and_constant() {
        let a = extract_a(&Fixture::Fig4.matrix()).unwrap();
        let rep = check_a_system(&a, 0.0);
        assert!(rep.is_clean());
        assert_eq!(rep.total_checked, 95);

        let constant = ReducedMatrix::from_fn(5, ScalarKind::ExactInteger, |_, _| 3.0);
        assert!(check_a_system(&constant, 0.0).is_clean());
    }

    #[test]
    fn a_system_flags_swapped_rows() {
        let a = extract_a(&Fixture::Fig4.matrix()).unwrap();
        let mut rows = a.rows();
        rows.swap(0, 5);
        let swapped = ReducedMatrix::from_rows(&rows).unwrap();
        assert!(!check_a_system(&swapped, 0.0).is_clean());
    }

    #[test]
    fn exact_integer_matrices_force_zero_tolerance() {
        let c = line_matrix(&[0, 1, 2, 3]);
        let rep = check_van_der_veen(&c, 0.5).unwrap();
        assert_eq!(rep.tolerance, 0.0);
    }
}
