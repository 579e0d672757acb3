//! Planar point sets, symmetric distance matrices, and the four-point
//! delta calculus used by the condition checkers and the tour improver.
//!
//! City indices are 1-based everywhere in the public interface.

use crate::error::Error;

/// Planar coordinates backing a geometric instance.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    points: Vec<(f64, f64)>,
}

impl PointSet {
    /// Builds a point set, rejecting non-finite coordinates.
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self, Error> {
        for (idx, &(x, y)) in points.iter().enumerate() {
            if !x.is_finite() || !y.is_finite() {
                return Err(Error::InvalidPoints(format!(
                    "coordinate {} is not finite",
                    idx + 1
                )));
            }
        }
        Ok(Self { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    /// Coordinates of city `i` (1-based).
    pub fn point(&self, i: usize) -> (f64, f64) {
        self.points[i - 1]
    }
}

/// Metric used to derive a distance matrix from planar points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    /// Exact planar L2 distance.
    Euclidean,
    /// Planar L2 distance rounded to the nearest integer.
    EuclideanRounded,
    /// L1 distance |dx| + |dy|.
    Rectilinear,
}

impl Metric {
    pub fn distance(self, a: (f64, f64), b: (f64, f64)) -> f64 {
        let dx = a.0 - b.0;
        let dy = a.1 - b.1;
        match self {
            Metric::Euclidean => dx.hypot(dy),
            Metric::EuclideanRounded => dx.hypot(dy).round(),
            Metric::Rectilinear => dx.abs() + dy.abs(),
        }
    }
}

/// Whether all entries of a matrix are exact integers (stored in `f64`
/// without rounding error) or genuinely floating-point.
///
/// Exact-integer matrices are compared exactly; the condition checkers
/// force their tolerance to zero on them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarKind {
    ExactInteger,
    Floating,
}

/// A matrix cell: either a finite distance or a masked edge that no tour
/// may use. Masking is an explicit variant, never a large numeric
/// sentinel, so exact-integer instances stay exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Entry {
    Finite(f64),
    Forbidden,
}

impl Entry {
    pub fn finite(self) -> Option<f64> {
        match self {
            Entry::Finite(v) => Some(v),
            Entry::Forbidden => None,
        }
    }

    pub fn is_forbidden(self) -> bool {
        matches!(self, Entry::Forbidden)
    }
}

/// Symmetric n x n distance table. The diagonal is stored but never read
/// by any consumer in this crate.
///
/// Cells are stored as raw f64 with NaN standing for the masked
/// variant; that representation never leaves this type.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    n: usize,
    kind: ScalarKind,
    cells: Vec<f64>,
}

impl PartialEq for DistanceMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.kind == other.kind
            && self
                .cells
                .iter()
                .zip(&other.cells)
                .all(|(a, b)| a == b || (a.is_nan() && b.is_nan()))
    }
}

fn cell_to_raw(e: Entry) -> f64 {
    match e {
        Entry::Finite(v) => {
            assert!(v.is_finite(), "matrix entries must be finite or Forbidden");
            v
        }
        Entry::Forbidden => f64::NAN,
    }
}

impl DistanceMatrix {
    /// Builds a matrix from a symmetric generator over ordered pairs
    /// `i < j` (1-based). Symmetry holds by construction.
    pub fn symmetric_from_fn<F>(n: usize, kind: ScalarKind, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> Entry,
    {
        let mut cells = vec![0.0; n * n];
        for i in 1..=n {
            for j in (i + 1)..=n {
                let e = cell_to_raw(f(i, j));
                cells[(i - 1) * n + (j - 1)] = e;
                cells[(j - 1) * n + (i - 1)] = e;
            }
        }
        Self { n, kind, cells }
    }

    /// Builds the distance matrix of a point set under the given metric.
    ///
    /// Rectilinear distances on integer coordinates are exact integers,
    /// as are rounded Euclidean distances; exact Euclidean matrices are
    /// floating.
    pub fn from_points(points: &PointSet, metric: Metric) -> Self {
        let n = points.len();
        let kind = match metric {
            Metric::Euclidean => ScalarKind::Floating,
            Metric::EuclideanRounded => ScalarKind::ExactInteger,
            Metric::Rectilinear => {
                let integral = points
                    .points()
                    .iter()
                    .all(|&(x, y)| x.fract() == 0.0 && y.fract() == 0.0);
                if integral {
                    ScalarKind::ExactInteger
                } else {
                    ScalarKind::Floating
                }
            }
        };
        Self::symmetric_from_fn(n, kind, |i, j| {
            Entry::Finite(metric.distance(points.point(i), points.point(j)))
        })
    }

    /// Builds a matrix from explicit rows, validating shape, finiteness
    /// and symmetry (entries must match within `sym_tol`; the upper
    /// triangle wins, so the stored matrix is exactly symmetric).
    ///
    /// The scalar kind is inferred: exact-integer iff every entry has a
    /// zero fractional part.
    pub fn from_rows(rows: &[Vec<f64>], sym_tol: f64) -> Result<Self, Error> {
        let n = rows.len();
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare {
                    row: r + 1,
                    len: row.len(),
                    n,
                });
            }
        }
        let mut integral = true;
        for i in 0..n {
            for j in 0..n {
                let v = rows[i][j];
                if !v.is_finite() {
                    return Err(Error::NotFinite { i: i + 1, j: j + 1 });
                }
                if (rows[i][j] - rows[j][i]).abs() > sym_tol {
                    return Err(Error::NotSymmetric { i: i + 1, j: j + 1 });
                }
                if v.fract() != 0.0 {
                    integral = false;
                }
            }
        }
        let kind = if integral {
            ScalarKind::ExactInteger
        } else {
            ScalarKind::Floating
        };
        Ok(Self::symmetric_from_fn(n, kind, |i, j| {
            Entry::Finite(rows[i - 1][j - 1])
        }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> ScalarKind {
        self.kind
    }

    /// Entry for the unordered city pair `{i, j}` (1-based).
    pub fn get(&self, i: usize, j: usize) -> Entry {
        let v = self.raw(i, j);
        if v.is_nan() {
            Entry::Forbidden
        } else {
            Entry::Finite(v)
        }
    }

    /// Raw cell value; NaN encodes the masked variant. Crate-internal
    /// fast path for the solver's hot loop.
    pub(crate) fn raw(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i >= 1 && i <= self.n && j >= 1 && j <= self.n);
        self.cells[(i - 1) * self.n + (j - 1)]
    }

    /// Finite entry or an error naming the masked pair.
    pub fn finite(&self, i: usize, j: usize) -> Result<f64, Error> {
        self.get(i, j)
            .finite()
            .ok_or(Error::MaskedEntryInCheck { i, j })
    }

    pub fn has_forbidden(&self) -> bool {
        self.cells.iter().any(|v| v.is_nan())
    }

    /// True when all off-diagonal entries joining differently colored
    /// cities under the even-odd coloring are finite.
    pub fn cross_parity_finite(&self) -> bool {
        for i in 1..=self.n {
            for j in (i + 1)..=self.n {
                if (i % 2) != (j % 2) && self.get(i, j).is_forbidden() {
                    return false;
                }
            }
        }
        true
    }
}

/// The value c[i][j] + c[l][m] - c[i][m] - c[j][l] together with its
/// argument quadruple. This is exactly the length change of the
/// valley-elimination move, and the condition checkers are linear
/// inequalities on such values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaValue {
    pub value: f64,
    pub args: (usize, usize, usize, usize),
}

/// Computes the four-point value for distinct cities `(i, l, j, m)`.
///
/// Errors if any referenced entry is masked. The four indices must be
/// pairwise distinct.
pub fn delta(
    c: &DistanceMatrix,
    i: usize,
    l: usize,
    j: usize,
    m: usize,
) -> Result<DeltaValue, Error> {
    assert!(
        i != l && i != j && i != m && l != j && l != m && j != m,
        "delta arguments must be pairwise distinct"
    );
    let need = |a: usize, b: usize| c.get(a, b).finite().ok_or(Error::MaskedEntry { i: a, j: b });
    // grouped so the swap (i,l,j,m) -> (j,m,i,l) evaluates bit-identically
    let value = (need(i, j)? + need(l, m)?) - (need(i, m)? + need(j, l)?);
    Ok(DeltaValue {
        value,
        args: (i, l, j, m),
    })
}
